//! Linear PDE systems in solved form with rational-function coefficients.
//!
//! - [`poly`] and [`coefficient`]: exact polynomials and rational functions.
//! - [`expr`]: linear combinations of derivative symbols.
//! - [`system`]: solved-form equations and systems.
//! - [`reduce`]: Janet and classical normal forms.
//! - [`integrability`]: integrability conditions of complete systems.
//! - [`canonical`]: autoreduction, completion and canonical forms.
//! - [`monomial_system`]: systems `D^a phi = f_a` and their series solutions.

pub mod canonical;
pub mod coefficient;
pub mod expr;
pub mod integrability;
pub mod monomial_system;
pub mod poly;
pub mod reduce;
pub mod system;

pub use canonical::{
    autoreduce, canonicalize, canonicalize_system, complete_system, is_autoreduced, triangulate, Autoreduced,
    Canonical, RawEquation, Stage, Witness,
};
pub use coefficient::Coefficient;
pub use expr::{LinExpr, Residual};
pub use integrability::{integrability_conditions, is_completely_integrable, IntegrabilityCondition};
pub use monomial_system::{
    compatibility_conditions_monomial, initial_condition_template, monomial_template, solve_series_monomial,
    substitution_residues, CompatibilityCondition, InitialConditionTemplate, InitialData, MonomialPdeSystem,
    TemplateSlot,
};
pub use poly::{Poly, Rational};
pub use reduce::{is_principal, normal_form, normal_form_with, Reducer, Strategy};
pub use system::{differentiate_equation, Classification, PdeEquation, PdeSystem};
