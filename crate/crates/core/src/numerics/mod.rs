//! Scalar arithmetic contracts and special-function primitives.

mod mag;
mod parse;
mod scalar;
mod special;

pub use mag::Mag;
pub use parse::{parse_scalar, parse_scalar_list};
pub use scalar::{format_float, Arithmetic, Ball, Scalar, DEFAULT_PRECISION};
pub use special::{gamma, gauss_2f1_at_1, hyp_pfq, pochhammer, SeriesResult, MAX_TERMS};

pub(crate) use special::{ratio_sup, ParamRange};
