//! Exact boundary expressions and Hodge integrals on moduli spaces of cyclic
//! admissible covers of genus-zero curves.
//!
//! Degree 3: [`lambda1_z3`] writes λ₁ in boundary divisors and checks it on
//! every boundary curve class from [`strata`]; [`integrals_z3`] evaluates top
//! powers of λ₁. Degree 2: [`hodge_z2`] gives λ₁ and λ₂ coefficients.
//! All arithmetic is exact, see [`arith`].

pub mod arith;
pub mod cli;
pub mod error;
pub mod hodge_z2;
pub mod integrals_z3;
pub mod lambda1_z3;
pub mod strata;

pub use arith::{binomial, rat, Rational};
pub use error::{Error, Result};
pub use hodge_z2::{
    alpha_z2_lambda1, alpha_z2_lambda2_closed, alpha_z2_lambda2_composed, check_forms, lambda2_expression, ClosedForm,
    Codim2ClassZ2,
};
pub use integrals_z3::{hodge_integral, integral_table, HodgeIntegrals, IntegralKey};
pub use lambda1_z3::{alpha_z3, lambda1_expression, verify_theorem, BoundaryExpression, VerificationReport};
pub use strata::{
    classify_family, enumerate_curve_classes, enumerate_divisor_classes, pair_curve_divisor, CurveClassZ3,
    DivisorClassZ3, Family,
};
