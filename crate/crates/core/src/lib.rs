pub mod cli;
pub mod diffusion;
pub mod error;
pub mod localtime;
pub mod montecarlo;
pub mod numerics;
pub mod straddle;
pub mod verify;

pub use diffusion::{Diffusion, Model, OrnsteinUhlenbeck, ReflectedBrownian};
pub use error::{Error, Result};
pub use localtime::{InverseLocalTime, MixingMeasure};
pub use straddle::StraddleLaw;
