//! Exact arithmetic shared by the rest of the workspace: rationals with
//! 2-adic helpers, graded multivariate polynomials, truncated power series,
//! and F₂ linear algebra.

pub mod f2;
pub mod poly;
pub mod rat;
pub mod series;

pub use f2::{f2_solve, Bits, Echelon, F2Error, F2Matrix, Solve};
pub use poly::{GradedPoly, Mono, Ring, Var};
pub use rat::{alpha, int, nu2, nu2_int, rat, Rat, Valuation};
pub use series::{Coeff, SeriesError, TruncSeries1, TruncSeries2};

pub use num_bigint::BigInt;
