//! Three-term recurrence coefficients of discrete semiclassical orthogonal
//! polynomials whose weights are of generalized hypergeometric type,
//!
//! ```text
//! ρ(x) = ∏(a_i)_x / ∏(b_j + 1)_x · z^x / x!,   x = 0, 1, 2, ...
//! ```
//!
//! Two independent routes produce `(β_n, γ_n)`:
//!
//! * [`lfreud`]: O(N) Laguerre-Freud engines (Meixner, generalized Hahn of
//!   type I, Hahn) and their closed forms;
//! * [`oracle`]: the O(N²) moment route, building the monic orthogonal
//!   polynomials from the moment functional.
//!
//! [`structure`] computes the structure-relation bands `A_k(n)`, `B_k(n)` from
//! inner products and checks every identity that ties them to the recurrence
//! coefficients. All numbers are [`Scalar`]s: exact rationals or big floats
//! carrying a rigorous error bound.

pub mod error;
pub mod lfreud;
pub mod moments;
pub mod numerics;
pub mod oracle;
pub mod poly;
pub mod structure;
pub mod weights;

pub use error::{Error, Result};
pub use moments::{MomentSequence, MomentSource};
pub use numerics::{Arithmetic, Scalar};
pub use oracle::{Method, RecurrenceTable};
pub use weights::{Convergence, PearsonData, WeightSpec};
