//! Exact expansion of the nth derivative of `exp(f(x))`.
//!
//! ```text
//! (e^f)^(n) = e^f * sum_{k partition of n} n! / (k! (s!)^k) * prod_i (f^(i))^(k_i)
//! ```
//!
//! Partitions are carried as [`MultiplicityVector`]s, coefficients are exact
//! big integers, and every route to a coefficient (closed form, order-raising
//! recursion, literal differentiation) is available so they can be checked
//! against each other.

pub mod coeff;
pub mod error;
pub mod eval;
pub mod partition;
pub mod symbolic;
pub mod verify;

pub use coeff::{coeff_closed, coeff_table_recursive, factorial, Coefficient, CoefficientTable};
pub use error::{Error, Result};
pub use eval::{
    default_step, evaluate_derivative, evaluate_derivative_exact, evaluate_sum,
    finite_difference_reference, EvaluationPoint, ExactDerivative, ExactPoint, FloatPoint, Scalar,
};
pub use partition::{
    enumerate_partitions, max_nonzero_parts, partition_count, MultiplicityVector, Partitions,
};
pub use symbolic::{expand, oracle_expand, Expansion, Format, Term};
