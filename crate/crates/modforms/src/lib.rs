//! Two-variable modular forms for tmf cooperations: exact q-expansions,
//! 2-integrality certificates, the generator library, and the level-3 and
//! level-5 pushforwards.

pub mod forms;
pub mod level;
pub mod qexp;

pub use forms::{eval_expr, two_var_ring, ExprError, TwoVarForm};
pub use level::{leading_term3, leading_term5, psi3, psi5, Gamma05Poly, LeadingTerm, SignConvention};
pub use qexp::{is_2integral, q_expand, IntegralityCert, QExpansion2};
pub mod integral;
pub mod library;

pub use integral::{equivalent_mod_span, integralize, Integralized};
pub use library::{f_library, full_env, tilde_library};
