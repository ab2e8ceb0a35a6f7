//! Janet's involutive division on monomials and its use for linear partial
//! differential equations, over exact rational arithmetic.
//!
//! The crate is organised bottom-up:
//!
//! - [`monomial`]: exponent vectors, divisibility, enumeration.
//! - [`janet`]: multiplicative variables, Janet divisors, completion.
//! - [`complement`]: complementary monomials and Hilbert function counts.
//! - [`order`]: degree lexicographic and weight orders on derivatives.
//! - [`pde`]: solved-form linear systems, normal forms, integrability
//!   conditions, canonical forms and series solutions of monomial systems.
//! - [`text`] and [`cli`]: the input grammar and the `janet` command.
//!
//! Runnable examples live in `examples/`, one per capability.

pub mod cli;
pub mod complement;
pub mod error;
pub mod janet;
pub mod monomial;
pub mod order;
pub mod pde;
pub mod text;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialSet, VarSet};
