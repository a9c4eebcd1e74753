//! Special functions, quadrature, series summation and random streams.

mod quad;
mod rng;
mod series;
mod special;

pub use quad::{gauss_legendre, integrate, QuadOutcome, Quadrature, DEFAULT_TOL};
pub use rng::RandomStream;
pub use series::{sum_tail, TailEnvelope};
pub use special::{binom_half, dawson, gamma_half_ratio, gamma_ln, laguerre_half, LaguerreHalf};
