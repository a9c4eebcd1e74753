use super::{check_gamma, chunked, McBatch};
use crate::error::{require_positive, Error, Result};
use crate::numerics::RandomStream;

const CHUNK: usize = 4096;

/// One draw of `(G_T, T − G_T, D_T − T)`.
///
/// The reflected OU path is `e^{−γt}|β(a_t)|` with `a_t = (e^{2γt} − 1)/2γ`, so its
/// zeros are those of a Brownian motion `β` seen through the clock `a`. With
/// `s = a_T`: the last zero before `s` is `g = sA` (arcsine), `|β_s|` given `g` is a
/// Brownian-meander endpoint `√(2(s−g)E)`, and the next zero comes `|β_s|²/Z²` later.
/// Mapping the three Brownian times back through `a⁻¹` gives the returned triple.
pub fn straddle_exact_one(rng: &mut RandomStream, gamma: f64, alpha: f64) -> [f64; 3] {
    let t = rng.draw_exponential(alpha);
    let a = rng.draw_arcsine();
    let e = rng.draw_exponential(1.0);
    let z = rng.draw_normal();
    let ratio = 2.0 * e / (z * z);
    let (tg, dt) = if gamma == 0.0 {
        let age = t * (1.0 - a);
        (age, age * ratio)
    } else {
        // (1 − q) with q = e^{−2γT}
        let omq = -(-2.0 * gamma * t).exp_m1();
        let x = (1.0 - a) * omq;
        (-(-x).ln_1p() / (2.0 * gamma), (x * ratio).ln_1p() / (2.0 * gamma))
    };
    [(t - tg).max(0.0), tg, dt]
}

/// `n` exact samples of the straddling excursion of the reflected OU process
/// (`gamma > 0`) or reflected Brownian motion (`gamma = 0`).
pub fn sample_straddle_exact(gamma: f64, alpha: f64, n: usize, seed: u64) -> Result<McBatch> {
    check_gamma(gamma)?;
    require_positive("sample_straddle_exact", "alpha", alpha)?;
    if n == 0 {
        return Err(Error::Parameter("sample count must be >= 1".into()));
    }
    let rows = chunked(n, CHUNK, seed, |rng| Ok(straddle_exact_one(rng, gamma, alpha)))?;
    Ok(McBatch::from_rows(alpha, gamma, seed, rows))
}
