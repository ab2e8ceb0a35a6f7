//! Solved-form systems `D^a phi^r = sum c * D^b phi^s + c_0`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::janet::{self, MultTable};
use crate::monomial::{Monomial, MonomialSet};
use crate::order::{DerivativeOrder, DerivativeSymbol};

use super::expr::LinExpr;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdeEquation {
    pub lead: DerivativeSymbol,
    pub rhs: LinExpr,
}

impl PdeEquation {
    pub fn new(lead: DerivativeSymbol, rhs: LinExpr) -> Self {
        Self { lead, rhs }
    }

    /// `lead - rhs`, the expression the equation sets to zero.
    pub fn as_expr(&self) -> LinExpr {
        &LinExpr::symbol(self.lead.clone()) - &self.rhs
    }

    /// Solves `expr = 0` for its posterior-most symbol. `None` if `expr` has
    /// no derivative terms.
    pub fn solve(expr: &LinExpr, order: &DerivativeOrder) -> Option<PdeEquation> {
        let lead = expr.max_symbol(order)?.clone();
        let mut rest = expr.clone();
        let c = rest.take(&lead).expect("lead present");
        let factor = (-&c).recip().expect("stored coefficients are non-zero");
        Some(PdeEquation::new(lead, rest.scale(&factor)))
    }
}

/// `D^a phi^r` with the `x_i`-prolongation applied to both sides.
pub fn differentiate_equation(e: &PdeEquation, i: usize) -> PdeEquation {
    let n = e.lead.alpha.arity();
    PdeEquation {
        lead: e.lead.prolong(&Monomial::var(n, i)),
        rhs: e.rhs.differentiate(i),
    }
}

/// A finite solved-form system with pairwise distinct leads, every rhs
/// symbol anterior to its lead. Equations are kept sorted by lead.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdeSystem {
    n: usize,
    m: usize,
    order: DerivativeOrder,
    equations: BTreeMap<DerivativeSymbol, LinExpr>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Principal,
    Parametric,
}

impl PdeSystem {
    pub fn new(n: usize, m: usize, order: DerivativeOrder, equations: Vec<PdeEquation>) -> Result<Self> {
        let unknowns: Vec<String> = (1..=m).map(|r| format!("phi{r}")).collect();
        Self::with_names(n, m, order, equations, &unknowns)
    }

    /// As [`PdeSystem::new`], naming unknowns in diagnostics.
    pub fn with_names(
        n: usize,
        m: usize,
        order: DerivativeOrder,
        equations: Vec<PdeEquation>,
        unknowns: &[String],
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("a system needs at least one unknown".into()));
        }
        if let DerivativeOrder::Weight(w) = &order {
            if w.arity() != n || w.unknowns() != m {
                return Err(Error::WeightShape(format!(
                    "order is for {} variables and {} unknowns, system has {n} and {m}",
                    w.arity(),
                    w.unknowns()
                )));
            }
        }
        let check = |d: &DerivativeSymbol| -> Result<()> {
            if d.alpha.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: d.alpha.arity(),
                });
            }
            if d.unknown == 0 || d.unknown > m {
                return Err(Error::UnknownOutOfRange {
                    index: d.unknown,
                    count: m,
                });
            }
            Ok(())
        };
        let mut map = BTreeMap::new();
        for e in equations {
            check(&e.lead)?;
            if e.rhs.arity() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: e.rhs.arity(),
                });
            }
            for d in e.rhs.symbols() {
                check(d)?;
                if !order.is_anterior(d, &e.lead) {
                    return Err(Error::NotAnterior {
                        lead: e.lead.display_with(unknowns),
                        rhs: d.display_with(unknowns),
                    });
                }
            }
            if map.contains_key(&e.lead) {
                return Err(Error::DuplicateLead(e.lead.display_with(unknowns)));
            }
            map.insert(e.lead, e.rhs);
        }
        Ok(Self {
            n,
            m,
            order,
            equations: map,
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn unknowns(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> &DerivativeOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equations(&self) -> impl Iterator<Item = PdeEquation> + '_ {
        self.equations.iter().map(|(l, r)| PdeEquation::new(l.clone(), r.clone()))
    }

    pub fn rhs(&self, lead: &DerivativeSymbol) -> Option<&LinExpr> {
        self.equations.get(lead)
    }

    pub fn leads(&self) -> impl Iterator<Item = &DerivativeSymbol> {
        self.equations.keys()
    }

    /// The multi-indices of the leads of `phi^r`; possibly empty.
    pub fn leading_monomials(&self, r: usize) -> MonomialSet {
        let mut s = MonomialSet::new(self.n);
        for d in self.equations.keys().filter(|d| d.unknown == r) {
            s.insert(d.alpha.clone()).expect("arity checked at construction");
        }
        s
    }

    /// Unknowns that occur as a lead.
    pub fn constrained_unknowns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.equations.keys().map(|d| d.unknown).collect();
        v.dedup();
        v
    }

    pub fn classify(&self, d: &DerivativeSymbol) -> Classification {
        let u = self.leading_monomials(d.unknown);
        if janet::in_cone(&u, &d.alpha) {
            Classification::Principal
        } else {
            Classification::Parametric
        }
    }

    /// Every constrained unknown has a complete set of leading monomials.
    pub fn is_complete_system(&self) -> bool {
        self.first_incomplete().is_none()
    }

    pub(crate) fn first_incomplete(&self) -> Option<usize> {
        self.constrained_unknowns()
            .into_iter()
            .find(|&r| !janet::is_complete(&self.leading_monomials(r)).unwrap_or(false))
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        match self.first_incomplete() {
            Some(unknown) => Err(Error::NotComplete { unknown }),
            None => Ok(()),
        }
    }

    /// Janet multiplicative-variable tables, indexed by unknown (1-based;
    /// `None` for free unknowns).
    pub fn mult_tables(&self) -> Vec<Option<MultTable>> {
        (0..=self.m)
            .map(|r| {
                let u = self.leading_monomials(r);
                (r > 0 && !u.is_empty()).then(|| janet::mult_table(&u).expect("non-empty"))
            })
            .collect()
    }

    /// Same system with different equations; invariants are re-checked.
    pub fn with_equations(&self, equations: Vec<PdeEquation>) -> Result<Self> {
        Self::new(self.n, self.m, self.order.clone(), equations)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::pde::coefficient::Coefficient;
    use crate::pde::poly::tests::x;
    use crate::pde::poly::int;

    pub(crate) fn sym(r: usize, e: &[u32]) -> DerivativeSymbol {
        DerivativeSymbol::new(r, Monomial::from_slice(e))
    }

    pub(crate) fn eq(lead: &[u32], rhs: LinExpr) -> PdeEquation {
        PdeEquation::new(sym(1, lead), rhs)
    }

    pub(crate) fn system(n: usize, eqs: Vec<PdeEquation>) -> PdeSystem {
        PdeSystem::new(n, 1, DerivativeOrder::Deglex, eqs).unwrap()
    }

    #[test]
    fn leading_monomials_and_classify() {
        let s = system(2, vec![eq(&[2, 0], LinExpr::zero(2)), eq(&[1, 1], LinExpr::zero(2))]);
        assert_eq!(s.leading_monomials(1), MonomialSet::from_exponents(&[&[2, 0], &[1, 1]]));
        assert_eq!(s.classify(&sym(1, &[3, 1])), Classification::Principal);
        assert_eq!(s.classify(&sym(1, &[0, 1])), Classification::Parametric);
        assert_eq!(s.classify(&sym(1, &[0, 0])), Classification::Parametric);
        assert!(s.is_complete_system());

        let two = PdeSystem::new(
            2,
            2,
            DerivativeOrder::Deglex,
            vec![
                PdeEquation::new(sym(1, &[1, 0]), LinExpr::zero(2)),
                PdeEquation::new(sym(2, &[0, 1]), LinExpr::zero(2)),
            ],
        )
        .unwrap();
        assert_eq!(two.leading_monomials(1).len(), 1);
        assert_eq!(two.leading_monomials(2).len(), 1);
        let free = system(2, vec![]);
        assert!(free.leading_monomials(1).is_empty());
        assert!(free.is_complete_system());
    }

    #[test]
    fn completeness() {
        let s = system(2, vec![eq(&[1, 1], LinExpr::zero(2))]);
        assert!(s.is_complete_system());
        let s = system(3, vec![eq(&[0, 2, 1], LinExpr::zero(3)), eq(&[2, 0, 3], LinExpr::zero(3))]);
        assert!(!s.is_complete_system());
        assert_eq!(s.require_complete(), Err(Error::NotComplete { unknown: 1 }));
    }

    #[test]
    fn invariants() {
        let bad = PdeSystem::new(
            2,
            1,
            DerivativeOrder::Deglex,
            vec![eq(&[1, 0], LinExpr::symbol(sym(1, &[2, 0])))],
        );
        assert!(matches!(bad, Err(Error::NotAnterior { .. })));
        let dup = PdeSystem::new(
            1,
            1,
            DerivativeOrder::Deglex,
            vec![eq(&[0], LinExpr::zero(1)), eq(&[0], LinExpr::symbol(sym(1, &[0])).scale(&Coefficient::zero(1)))],
        );
        assert!(matches!(dup, Err(Error::DuplicateLead(_))));
    }

    #[test]
    fn differentiation() {
        let e = eq(&[2, 0], LinExpr::zero(2));
        assert_eq!(differentiate_equation(&e, 2), eq(&[2, 1], LinExpr::zero(2)));

        let e = eq(&[1], LinExpr::term(Coefficient::from_poly(x(1, 1)), sym(1, &[0])));
        let d = differentiate_equation(&e, 1);
        let mut rhs = LinExpr::symbol(sym(1, &[0]));
        rhs.add_term(sym(1, &[1]), Coefficient::from_poly(x(1, 1)));
        assert_eq!(d, eq(&[2], rhs));

        let c = Coefficient::constant(2, int(3));
        let e = eq(&[1, 0], LinExpr::term(c.clone(), sym(1, &[0, 0])));
        assert_eq!(differentiate_equation(&e, 2), eq(&[1, 1], LinExpr::term(c, sym(1, &[0, 1]))));
    }

    #[test]
    fn solving() {
        let mut e = LinExpr::term(Coefficient::constant(2, int(2)), sym(1, &[1, 0]));
        e.add_term(sym(1, &[0, 0]), Coefficient::constant(2, int(-4)));
        let s = PdeEquation::solve(&e, &DerivativeOrder::Deglex).unwrap();
        assert_eq!(s.lead, sym(1, &[1, 0]));
        assert_eq!(s.rhs, LinExpr::term(Coefficient::constant(2, int(2)), sym(1, &[0, 0])));
        assert!(PdeEquation::solve(&LinExpr::zero(2), &DerivativeOrder::Deglex).is_none());
    }
}
