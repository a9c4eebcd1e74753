use super::QuadOutcome;

/// Caller-declared bound on the terms of a series, used to bound the
/// remainder after truncation.
pub enum TailEnvelope<'a> {
    /// `|t(n+1)| ≤ ratio · |t(n)|` from the truncation point on, `ratio < 1`.
    Geometric { ratio: f64 },
    /// `|t(n)| ≤ coeff · n^{-exponent}` for `n ≥ 1`, `exponent > 1`.
    Power { coeff: f64, exponent: f64 },
    /// Bound on `Σ_{k ≥ n} |t(k)|` given the number `n` of summed terms.
    Explicit(&'a dyn Fn(usize) -> f64),
}

impl TailEnvelope<'_> {
    /// Remainder bound after summing `n` terms whose last term is `last`,
    /// or `None` if the envelope is not satisfied at this point.
    fn remainder(&self, n: usize, last: f64, before_last: Option<f64>) -> Option<f64> {
        match *self {
            TailEnvelope::Geometric { ratio } => {
                if !(0.0..1.0).contains(&ratio) {
                    return None;
                }
                if let Some(prev) = before_last {
                    if last.abs() > ratio * prev.abs() * (1.0 + 1e-12) {
                        return None;
                    }
                }
                Some(last.abs() * ratio / (1.0 - ratio))
            }
            TailEnvelope::Power { coeff, exponent } => {
                if exponent <= 1.0 || n < 2 {
                    return None;
                }
                let k = (n - 1) as f64;
                if last.abs() > coeff * k.powf(-exponent) * (1.0 + 1e-12) {
                    return None;
                }
                // Σ_{k ≥ n} k^{-p} ≤ ∫_{n-1}^∞ x^{-p} dx
                Some(coeff * k.powf(1.0 - exponent) / (exponent - 1.0))
            }
            TailEnvelope::Explicit(bound) => Some(bound(n)),
        }
    }
}

/// Sums `term(0) + term(1) + ...` until the envelope bounds the remainder by `tol`.
///
/// The reported error estimate is the envelope's remainder bound at the
/// stopping point. Running out of `max_terms` or never satisfying the
/// envelope yields `converged = false` with the partial sum.
pub fn sum_tail<F: Fn(usize) -> f64>(
    term: F,
    envelope: TailEnvelope<'_>,
    tol: f64,
    max_terms: usize,
) -> QuadOutcome {
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut prev: Option<f64> = None;
    let mut bound = f64::INFINITY;
    for n in 0..max_terms {
        let t = term(n);
        if !t.is_finite() {
            break;
        }
        // Kahan summation; tails like n^{-3/2} need many terms
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if let Some(r) = envelope.remainder(n + 1, t, prev) {
            bound = r;
            if r <= tol {
                return QuadOutcome {
                    value: sum,
                    abs_error_estimate: r,
                    converged: true,
                };
            }
        }
        prev = Some(t);
    }
    QuadOutcome {
        value: sum,
        abs_error_estimate: bound,
        converged: false,
    }
}
