use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// One-sample Kolmogorov–Smirnov distance `sup |F_n − F|`.
pub fn ks_statistic<F>(samples: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if samples.is_empty() {
        return Err(Error::Parameter("ks_statistic needs at least one sample".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let values: Vec<f64> = xs.par_iter().map(|&x| cdf(x)).collect::<Result<_>>()?;
    let mut d: f64 = 0.0;
    for (i, f) in values.iter().enumerate() {
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    Ok(d)
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Parameter("ks_two_sample needs non-empty samples".into()));
    }
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(f64::total_cmp);
    xb.sort_by(f64::total_cmp);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Sample mean and its standard error.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Pearson χ² goodness-of-fit p-value of `samples` against `cdf` on the bins
/// given by `edges`, with one extra cell collecting everything outside them.
pub fn chi_square_pvalue<F>(samples: &[f64], edges: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if edges.len() < 2 || edges.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("bin edges must be strictly increasing".into()));
    }
    if samples.is_empty() {
        return Err(Error::Parameter("chi_square_pvalue needs samples".into()));
    }
    let bins = edges.len() - 1;
    let mut counts = vec![0u64; bins + 1];
    for &x in samples {
        let k = edges.partition_point(|&e| e <= x);
        if k == 0 || k > bins {
            counts[bins] += 1;
        } else {
            counts[k - 1] += 1;
        }
    }
    let cdfs: Vec<f64> = edges.iter().map(|&e| cdf(e)).collect::<Result<_>>()?;
    let n = samples.len() as f64;
    let mut probs: Vec<f64> = cdfs.windows(2).map(|w| w[1] - w[0]).collect();
    probs.push(1.0 - (cdfs[bins] - cdfs[0]));
    let mut stat = 0.0;
    let mut cells = 0;
    for (c, p) in counts.iter().zip(&probs) {
        let expected = n * p;
        if expected > 0.0 {
            stat += (*c as f64 - expected).powi(2) / expected;
            cells += 1;
        }
    }
    let dist = ChiSquared::new((cells - 1).max(1) as f64).map_err(|e| Error::Parameter(e.to_string()))?;
    Ok(1.0 - dist.cdf(stat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RandomStream;

    fn uniform_cdf(x: f64) -> Result<f64> {
        Ok(x.clamp(0.0, 1.0))
    }

    #[test]
    fn ks_on_own_distribution() {
        let mut rng = RandomStream::new(11, 0);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| rng.draw_uniform()).collect();
        let d = ks_statistic(&xs, uniform_cdf).unwrap();
        assert!(d <= 1.63 / (n as f64).sqrt());
    }

    #[test]
    fn ks_on_constant_samples() {
        let xs = vec![0.5; 100];
        assert!(ks_statistic(&xs, uniform_cdf).unwrap() >= 0.5);
        assert!(ks_statistic(&[], uniform_cdf).is_err());
    }

    #[test]
    fn two_sample_ks() {
        let a = [0.1, 0.2, 0.3];
        assert_eq!(ks_two_sample(&a, &a).unwrap(), 0.0);
        let b = [1.1, 1.2, 1.3];
        assert_eq!(ks_two_sample(&a, &b).unwrap(), 1.0);
        let mut rng = RandomStream::new(12, 0);
        let x: Vec<f64> = (0..5000).map(|_| rng.draw_normal()).collect();
        let y: Vec<f64> = (0..5000).map(|_| rng.draw_normal()).collect();
        assert!(ks_two_sample(&x, &y).unwrap() < 0.04);
    }

    #[test]
    fn mean_and_error() {
        let (m, se) = mean_and_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert!(mean_and_stderr(&[]).0.is_nan());
    }

    #[test]
    fn chi_square_detects_mismatch() {
        let mut rng = RandomStream::new(13, 0);
        let xs: Vec<f64> = (0..20_000).map(|_| rng.draw_exponential(1.0)).collect();
        let edges: Vec<f64> = (0..=20).map(|i| 0.15 * i as f64).collect();
        let good = chi_square_pvalue(&xs, &edges, |x| Ok(-(-x).exp_m1())).unwrap();
        assert!(good > 0.001);
        let bad = chi_square_pvalue(&xs, &edges, |x| Ok(-(-1.1 * x).exp_m1())).unwrap();
        assert!(bad < 1e-6);
        assert!(chi_square_pvalue(&xs, &[1.0, 0.5], |x| Ok(x)).is_err());
    }
}
