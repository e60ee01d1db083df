//! Dual Steenrod algebra combinatorics at p = 2: conjugates ξ̄ₙ, coactions
//! over A(n)_*, Brown-Gitler comodules, splitting maps, the HZ and bo exact
//! sequences, and the rational-generator recursion for tmf cooperations.

pub mod comodule;
pub mod export;
pub mod rational;
pub mod ses;
pub mod xi;

pub use comodule::{bg_basis, coaction, quotient_basis, Comodule, Elem, Factor, DEGREE_CAP};
pub use export::ModuleDef;
pub use rational::{rational_generators, Generator, RingTag, Summand, SummandLabel};
pub use ses::{build_sequence, ses_maps, splitting_map, splitting_partition, Family, SesReport, SteenrodError};
pub use xi::{an_basis, an_coproduct, conj_to_an, conjugate_xi, in_an, F2Poly, XiMonomial};
