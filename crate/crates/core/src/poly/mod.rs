//! Annihilator polynomials, vanishing spaces and the polynomial identity
//! checks built on them.

pub mod checks;
pub mod linalg;
pub mod multivariate;
pub mod univariate;
pub mod vanishing;

pub use checks::{
    b_construction_identity_checks, psi_vanishing_check, residue_product_identity,
    schwartz_zippel_report, BCheckConfig, BIdentityChecks, Coverage, PsiCheck,
    SchwartzZippelReport,
};
pub use linalg::{kernel_mod_prime, kernel_prime_power, HowellForm};
pub use multivariate::{monomial_count, monomials_up_to, Monomial, MultivariatePoly};
pub use univariate::{annihilator_poly, UnivariatePoly};
pub use vanishing::{vanishing_space, ComponentKernel, VanishingBasis, VanishingConfig};
