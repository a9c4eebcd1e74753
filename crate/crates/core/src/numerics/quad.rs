use crate::error::{Error, Result};

/// Default absolute tolerance for analytic integrals.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Result of a quadrature or a series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub converged: bool,
}

impl QuadOutcome {
    /// Converts a non-converged outcome into [`Error::NonConvergence`].
    pub fn into_result(self, op: &'static str) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence {
                op,
                estimate: self.value,
                error: self.abs_error_estimate,
            })
        }
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_299_766_930,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// How a piece of the integration range is mapped onto a finite `t` interval.
#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    /// x = a + t², dx = 2t dt
    SqrtLeft(f64),
    /// x = b - t², dx = 2t dt
    SqrtRight(f64),
    /// x = a + t/(1-t), dx = dt/(1-t)²
    Tail(f64),
    /// x = a + (t/(1-t))², dx = 2t/(1-t)³ dt
    SquareTail(f64),
}

impl Map {
    #[inline]
    fn eval<F: Fn(f64) -> f64>(self, f: &F, t: f64) -> f64 {
        match self {
            Map::Identity => f(t),
            Map::SqrtLeft(a) => 2.0 * t * f(a + t * t),
            Map::SqrtRight(b) => 2.0 * t * f(b - t * t),
            Map::Tail(a) => {
                let s = 1.0 - t;
                let v = f(a + t / s);
                if v == 0.0 {
                    0.0
                } else {
                    v / (s * s)
                }
            }
            Map::SquareTail(a) => {
                let s = 1.0 - t;
                let r = t / s;
                let v = f(a + r * r);
                if v == 0.0 {
                    0.0
                } else {
                    2.0 * r * v / (s * s)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    map: Map,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

fn gk21<F: Fn(f64) -> f64>(f: &F, map: Map, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = map.eval(f, center);
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = map.eval(f, center - dx);
        let f2 = map.eval(f, center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs * abs_half, res_asc * abs_half);
    (res_k * half, err)
}

/// Globally adaptive Gauss–Kronrod integrator.
///
/// Supports semi-infinite ranges through `x = a + t/(1-t)` and optional
/// `x = a + u²` substitutions at endpoints that behave like `|x - a|^{-1/2}`.
#[derive(Debug, Clone)]
pub struct Quadrature {
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
    singular_left: bool,
    singular_right: bool,
    algebraic_tail: bool,
    breakpoints: Vec<f64>,
}

impl Quadrature {
    pub fn new(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol: 0.0,
            max_segments: 2000,
            singular_left: false,
            singular_right: false,
            algebraic_tail: false,
            breakpoints: Vec::new(),
        }
    }

    pub fn rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn max_segments(mut self, n: usize) -> Self {
        self.max_segments = n.max(1);
        self
    }

    /// Substitute `x = a + u²` near the lower limit.
    pub fn singular_left(mut self) -> Self {
        self.singular_left = true;
        self
    }

    /// Substitute `x = b - u²` near the (finite) upper limit.
    pub fn singular_right(mut self) -> Self {
        self.singular_right = true;
        self
    }

    /// Use `x = a + (t/(1-t))²` on an infinite last piece; suited to tails
    /// decaying like `x^{-3/2}`, which the default map leaves singular.
    pub fn algebraic_tail(mut self) -> Self {
        self.algebraic_tail = true;
        self
    }

    /// Interior points where the integrand has kinks or jumps.
    pub fn breakpoints(mut self, points: &[f64]) -> Self {
        self.breakpoints = points.to_vec();
        self
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> QuadOutcome {
        if a.is_nan() || b.is_nan() || a == f64::NEG_INFINITY || a == f64::INFINITY {
            return QuadOutcome {
                value: f64::NAN,
                abs_error_estimate: f64::INFINITY,
                converged: false,
            };
        }
        if a == b {
            return QuadOutcome {
                value: 0.0,
                abs_error_estimate: 0.0,
                converged: true,
            };
        }
        if b < a {
            let mut out = self.integrate(f, b, a);
            out.value = -out.value;
            return out;
        }

        let mut cuts: Vec<f64> = self
            .breakpoints
            .iter()
            .copied()
            .filter(|&p| p > a && p < b)
            .collect();
        cuts.sort_by(|x, y| x.total_cmp(y));
        cuts.dedup();
        let infinite = b.is_infinite();
        if infinite && cuts.is_empty() && self.singular_left {
            cuts.push(a + 1.0);
        }
        if !infinite && cuts.is_empty() && self.singular_left && self.singular_right {
            cuts.push(0.5 * (a + b));
        }

        let mut edges = Vec::with_capacity(cuts.len() + 2);
        edges.push(a);
        edges.extend(cuts);
        edges.push(b);
        let last = edges.len() - 2;

        let mut segments = Vec::new();
        for (i, w) in edges.windows(2).enumerate() {
            let (lo, hi) = (w[0], w[1]);
            let (map, tlo, thi) = if i == last && hi.is_infinite() {
                if self.algebraic_tail {
                    (Map::SquareTail(lo), 0.0, 1.0)
                } else {
                    (Map::Tail(lo), 0.0, 1.0)
                }
            } else if i == 0 && self.singular_left {
                (Map::SqrtLeft(lo), 0.0, (hi - lo).sqrt())
            } else if i == last && self.singular_right {
                (Map::SqrtRight(hi), 0.0, (hi - lo).sqrt())
            } else {
                (Map::Identity, lo, hi)
            };
            let (value, error) = gk21(&f, map, tlo, thi);
            segments.push(Segment {
                map,
                lo: tlo,
                hi: thi,
                value,
                error,
            });
        }
        self.refine(&f, segments)
    }

    fn refine<F: Fn(f64) -> f64>(&self, f: &F, mut segments: Vec<Segment>) -> QuadOutcome {
        // segments too narrow to split further are parked here
        let mut frozen_value = 0.0;
        let mut frozen_error = 0.0;
        loop {
            let value: f64 = frozen_value + segments.iter().map(|s| s.value).sum::<f64>();
            let error: f64 = frozen_error + segments.iter().map(|s| s.error).sum::<f64>();
            let target = self.abs_tol.max(self.rel_tol * value.abs());
            if !value.is_finite() || !error.is_finite() {
                return QuadOutcome {
                    value,
                    abs_error_estimate: f64::INFINITY,
                    converged: false,
                };
            }
            if error <= target {
                return QuadOutcome {
                    value,
                    abs_error_estimate: error,
                    converged: true,
                };
            }
            if segments.is_empty() || segments.len() + 1 > self.max_segments {
                return QuadOutcome {
                    value,
                    abs_error_estimate: error,
                    converged: false,
                };
            }
            let (idx, _) = segments
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
                .expect("non-empty");
            let seg = segments.swap_remove(idx);
            let mid = 0.5 * (seg.lo + seg.hi);
            let width = seg.hi - seg.lo;
            if width <= 4.0 * f64::EPSILON * (seg.lo.abs() + seg.hi.abs()).max(f64::MIN_POSITIVE) {
                frozen_value += seg.value;
                frozen_error += seg.error;
                continue;
            }
            for (lo, hi) in [(seg.lo, mid), (mid, seg.hi)] {
                let (value, error) = gk21(f, seg.map, lo, hi);
                segments.push(Segment {
                    map: seg.map,
                    lo,
                    hi,
                    value,
                    error,
                });
            }
        }
    }
}

/// Integrates `f` over `[a, b]` (with `b` possibly `+∞`) to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> QuadOutcome {
    Quadrature::new(tol).integrate(f, a, b)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trivial_integrals() {
        let one = integrate(|_| 1.0, 0.0, 1.0, DEFAULT_TOL);
        assert!(one.converged);
        assert!((one.value - 1.0).abs() < 1e-14);

        let e = integrate(|x: f64| (-x).exp(), 0.0, f64::INFINITY, DEFAULT_TOL);
        assert!(e.converged);
        assert!((e.value - 1.0).abs() < 1e-12);

        let g = integrate(|x: f64| 2.0 * (-x * x).exp(), 0.0, f64::INFINITY, DEFAULT_TOL);
        assert!(g.converged);
        assert!((g.value - PI.sqrt()).abs() < 1e-10);

        let h = integrate(|x: f64| x * (-x * x / 2.0).exp(), 0.0, f64::INFINITY, DEFAULT_TOL);
        assert!((h.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kronrod_rule_is_exact_for_polynomials() {
        // 21-point Kronrod integrates degree 31 exactly
        let r = integrate(|x: f64| x.powi(30), -1.0, 1.0, 1e-13);
        assert!((r.value - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn reversed_and_empty_ranges() {
        let r = integrate(|x: f64| x, 2.0, 0.0, DEFAULT_TOL);
        assert!((r.value + 2.0).abs() < 1e-14);
        let z = integrate(|x: f64| x, 1.0, 1.0, DEFAULT_TOL);
        assert_eq!(z.value, 0.0);
        assert!(z.converged);
    }

    #[test]
    fn inverse_square_root_endpoints() {
        // ∫_0^1 x^{-1/2} dx = 2
        let q = Quadrature::new(1e-12).singular_left();
        let r = q.integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0);
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-12);

        // ∫_0^1 (x(1-x))^{-1/2} dx = π
        let q = Quadrature::new(1e-12).singular_left().singular_right();
        let r = q.integrate(|x: f64| 1.0 / (x * (1.0 - x)).sqrt(), 0.0, 1.0);
        assert!(r.converged);
        assert!((r.value - PI).abs() < 1e-11);

        // ∫_0^∞ x^{-1/2} e^{-x} dx = √π
        let q = Quadrature::new(1e-12).singular_left();
        let r = q.integrate(|x: f64| (-x).exp() / x.sqrt(), 0.0, f64::INFINITY);
        assert!(r.converged);
        assert!((r.value - PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn algebraic_tails() {
        // ∫_1^∞ x^{-3/2} dx = 2
        let r = Quadrature::new(1e-12)
            .algebraic_tail()
            .integrate(|x: f64| x.powf(-1.5), 1.0, f64::INFINITY);
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-11);
        // ∫_0^∞ (1 - e^{-x}) x^{-3/2} dx = 2√π
        let r = Quadrature::new(1e-12)
            .singular_left()
            .algebraic_tail()
            .integrate(|x: f64| -(-x).exp_m1() * x.powf(-1.5), 0.0, f64::INFINITY);
        assert!(r.converged, "{r:?}");
        assert!((r.value - 2.0 * PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn breakpoints_handle_jumps() {
        let q = Quadrature::new(1e-12).breakpoints(&[0.3]);
        let r = q.integrate(|x: f64| if x > 0.3 { 1.0 } else { 0.0 }, 0.0, 1.0);
        assert!(r.converged);
        assert!((r.value - 0.7).abs() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reports_non_convergence() {
        let q = Quadrature::new(1e-14).max_segments(3);
        let r = q.integrate(|x: f64| (1.0 / x).sin(), 1e-4, 1.0);
        assert!(!r.converged);
        assert!(r.into_result("test").is_err());
    }

    #[test]
    fn converged_implies_error_within_tolerance() {
        for tol in [1e-4, 1e-8, 1e-11] {
            let r = integrate(|x: f64| (3.0 * x).cos() * (-x).exp(), 0.0, f64::INFINITY, tol);
            assert!(r.converged);
            assert!(r.abs_error_estimate <= tol);
            // ∫ cos(3x) e^{-x} = 1/10
            assert!((r.value - 0.1).abs() <= tol.max(1e-14));
        }
    }

    #[test]
    fn gauss_legendre_rules() {
        for n in [1usize, 2, 5, 20, 33] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            // exact through degree 2n - 1
            let deg = 2 * n - 2;
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((s - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "n={n}");
        }
    }
}
