//! Normal forms: rewriting principal derivatives into parametric ones.
//!
//! A principal symbol `D^b phi^s` is replaced by `Phi(u)` applied to the rhs
//! of an equation with lead `D^a phi^s`, where `b = a + u`. In Janet mode the
//! equation is the unique Janet divisor; in classical mode any lead dividing
//! `b` may be used, which is what autoreduction needs.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::janet::{self, MultTable};
use crate::monomial::Monomial;
use crate::order::DerivativeSymbol;

use super::expr::{LinExpr, Residual};
use super::system::PdeSystem;

/// Which principal symbol to rewrite next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    GreatestFirst,
    SmallestFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Janet,
    Classical,
}

/// A system prepared for repeated reduction. Substitutions are cached per
/// principal symbol.
pub struct Reducer<'a> {
    sys: &'a PdeSystem,
    tables: Vec<Option<MultTable>>,
    mode: Mode,
    cache: RefCell<HashMap<DerivativeSymbol, LinExpr>>,
}

impl<'a> Reducer<'a> {
    /// Janet reduction; the system must be complete.
    pub fn new(sys: &'a PdeSystem) -> Result<Self> {
        sys.require_complete()?;
        Ok(Self::build(sys, Mode::Janet))
    }

    /// Reduction by any classical divisor; works for every system.
    pub fn classical(sys: &'a PdeSystem) -> Self {
        Self::build(sys, Mode::Classical)
    }

    fn build(sys: &'a PdeSystem, mode: Mode) -> Self {
        Self {
            sys,
            tables: sys.mult_tables(),
            mode,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn is_principal(&self, d: &DerivativeSymbol) -> bool {
        match &self.tables[d.unknown] {
            Some(t) => t.iter().any(|(u, _)| u.divides(&d.alpha)),
            None => false,
        }
    }

    /// Lead used to rewrite `d`, with cofactor.
    fn divisor(&self, d: &DerivativeSymbol) -> Result<(DerivativeSymbol, Monomial)> {
        let table = self.tables[d.unknown].as_ref().expect("principal symbols have a table");
        let lead = match self.mode {
            Mode::Janet => table.janet_divisor(&d.alpha),
            Mode::Classical => table.iter().map(|(u, _)| u).find(|u| u.divides(&d.alpha)),
        };
        match lead {
            Some(a) => {
                let u = a.quotient(&d.alpha).expect("divisor");
                Ok((DerivativeSymbol::new(d.unknown, a.clone()), u))
            }
            None => Err(Error::NoJanetDivisor(format!("{d:?}"))),
        }
    }

    /// The expression a principal symbol is replaced by.
    fn substitution(&self, d: &DerivativeSymbol) -> Result<LinExpr> {
        if let Some(e) = self.cache.borrow().get(d) {
            return Ok(e.clone());
        }
        let (lead, u) = self.divisor(d)?;
        let rhs = self.sys.rhs(&lead).expect("lead of the system");
        let e = rhs.apply_operator(&u);
        self.cache.borrow_mut().insert(d.clone(), e.clone());
        Ok(e)
    }

    pub fn normal_form(&self, expr: &LinExpr) -> Result<Residual> {
        self.normal_form_with(expr, Strategy::GreatestFirst)
    }

    pub fn normal_form_with(&self, expr: &LinExpr, strategy: Strategy) -> Result<Residual> {
        let order = self.sys.order();
        let mut e = expr.clone();
        loop {
            let principal = e.symbols().filter(|d| self.is_principal(d));
            let pick = match strategy {
                Strategy::GreatestFirst => principal.max_by(|a, b| order.cmp(a, b)),
                Strategy::SmallestFirst => principal.min_by(|a, b| order.cmp(a, b)),
            };
            let Some(d) = pick.cloned() else {
                return Ok(e);
            };
            let c = e.take(&d).expect("symbol present");
            let sub = self.substitution(&d)?;
            e.add_scaled(&sub, &c);
        }
    }

    /// Whether `d` is an involutive multiple of some lead.
    pub fn in_involutive_cone(&self, d: &DerivativeSymbol) -> bool {
        match &self.tables[d.unknown] {
            Some(t) => t.in_involutive_cone(&d.alpha),
            None => false,
        }
    }
}

/// Janet normal form with the default greatest-first strategy.
pub fn normal_form(sys: &PdeSystem, expr: &LinExpr) -> Result<Residual> {
    Reducer::new(sys)?.normal_form(expr)
}

pub fn normal_form_with(sys: &PdeSystem, expr: &LinExpr, strategy: Strategy) -> Result<Residual> {
    Reducer::new(sys)?.normal_form_with(expr, strategy)
}

/// Whether `d` lies in the classical cone of the leads of its unknown.
pub fn is_principal(sys: &PdeSystem, d: &DerivativeSymbol) -> bool {
    janet::in_cone(&sys.leading_monomials(d.unknown), &d.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::coefficient::Coefficient;
    use crate::pde::poly::int;
    use crate::pde::system::tests::{eq, sym, system};

    #[test]
    fn examples() {
        let s = system(2, vec![eq(&[2, 0], LinExpr::zero(2)), eq(&[1, 1], LinExpr::zero(2))]);
        let nf = normal_form(&s, &LinExpr::symbol(sym(1, &[2, 1]))).unwrap();
        assert!(nf.is_zero());
        let p = LinExpr::symbol(sym(1, &[0, 3]));
        assert_eq!(normal_form(&s, &p).unwrap(), p);

        let s = system(1, vec![eq(&[1], LinExpr::symbol(sym(1, &[0])))]);
        let nf = normal_form(&s, &LinExpr::symbol(sym(1, &[2]))).unwrap();
        assert_eq!(nf, LinExpr::symbol(sym(1, &[0])));
    }

    #[test]
    fn incomplete_system_is_rejected() {
        let s = system(3, vec![eq(&[0, 2, 1], LinExpr::zero(3)), eq(&[2, 0, 3], LinExpr::zero(3))]);
        assert!(matches!(normal_form(&s, &LinExpr::zero(3)), Err(Error::NotComplete { .. })));
        let r = Reducer::classical(&s);
        assert!(r.normal_form(&LinExpr::symbol(sym(1, &[2, 2, 3]))).unwrap().is_zero());
    }

    #[test]
    fn strategies_agree() {
        // phi_xx = y*phi_y + phi, phi_xy = x*phi_x
        let n = 2;
        let mut r1 = LinExpr::term(Coefficient::from_poly(crate::pde::poly::Poly::var(n, 2)), sym(1, &[0, 1]));
        r1.add_term(sym(1, &[0, 0]), Coefficient::constant(n, int(1)));
        let r2 = LinExpr::term(Coefficient::from_poly(crate::pde::poly::Poly::var(n, 1)), sym(1, &[1, 0]));
        let s = system(n, vec![eq(&[2, 0], r1), eq(&[1, 1], r2)]);
        let mut e = LinExpr::symbol(sym(1, &[3, 2]));
        e.add_term(sym(1, &[2, 1]), Coefficient::constant(n, int(2)));
        let a = normal_form_with(&s, &e, Strategy::GreatestFirst).unwrap();
        let b = normal_form_with(&s, &e, Strategy::SmallestFirst).unwrap();
        assert_eq!(a, b);
        assert!(a.symbols().all(|d| !is_principal(&s, d)));
    }
}
