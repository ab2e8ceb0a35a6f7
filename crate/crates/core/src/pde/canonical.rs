//! Autoreduction, completion and the canonicalization loop.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::janet;
use crate::order::{DerivativeOrder, DerivativeSymbol};

use super::expr::LinExpr;
use super::integrability::integrability_conditions;
use super::reduce::Reducer;
use super::system::{differentiate_equation, PdeEquation, PdeSystem};

/// A general linear equation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEquation {
    pub lhs: LinExpr,
    pub rhs: LinExpr,
}

impl RawEquation {
    pub fn new(lhs: LinExpr, rhs: LinExpr) -> Self {
        Self { lhs, rhs }
    }

    pub fn as_expr(&self) -> LinExpr {
        &self.lhs - &self.rhs
    }
}

impl From<PdeEquation> for RawEquation {
    fn from(e: PdeEquation) -> Self {
        RawEquation::new(LinExpr::symbol(e.lead), e.rhs)
    }
}

/// Where a contradiction surfaced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Solving the input equations; `index` counts from 1.
    Input { index: usize },
    /// Left-reducing the equation with this lead.
    Autoreduction { lead: DerivativeSymbol },
    /// The integrability condition of `source` and `x_var`.
    Integrability { source: DerivativeSymbol, var: usize },
}

/// Evidence that a system has no solution: the equation `0 = value` with a
/// non-zero right side, and where it arose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub value: LinExpr,
    pub round: usize,
    pub stage: Stage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Canonical(PdeSystem),
    Incompatible(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Autoreduced {
    System(PdeSystem),
    Incompatible(Witness),
}

/// Gaussian elimination on leads: each expression is reduced by exact
/// substitution of the equations found so far and solved for its
/// posterior-most symbol.
struct Triangle {
    order: DerivativeOrder,
    eqs: BTreeMap<DerivativeSymbol, LinExpr>,
}

impl Triangle {
    fn new(order: DerivativeOrder) -> Self {
        Self {
            order,
            eqs: BTreeMap::new(),
        }
    }

    /// Adds `expr = 0`. Returns the non-zero constant if it is inconsistent.
    fn push(&mut self, expr: LinExpr) -> Option<LinExpr> {
        let mut e = expr;
        loop {
            let hit = e.symbols().filter(|d| self.eqs.contains_key(*d)).max_by(|a, b| self.order.cmp(a, b)).cloned();
            let Some(d) = hit else { break };
            let c = e.take(&d).expect("present");
            e.add_scaled(&self.eqs[&d], &c);
        }
        if e.is_zero() {
            return None;
        }
        match PdeEquation::solve(&e, &self.order) {
            Some(s) => {
                self.eqs.insert(s.lead, s.rhs);
                None
            }
            None => Some(e),
        }
    }

    fn equations(self) -> Vec<PdeEquation> {
        self.eqs.into_iter().map(|(l, r)| PdeEquation::new(l, r)).collect()
    }
}

/// Brings raw equations to solved form with distinct leads.
pub fn triangulate(
    n: usize,
    m: usize,
    order: &DerivativeOrder,
    raw: &[RawEquation],
) -> Result<Autoreduced> {
    let mut t = Triangle::new(order.clone());
    for (k, r) in raw.iter().enumerate() {
        if let Some(value) = t.push(r.as_expr()) {
            return Ok(Autoreduced::Incompatible(Witness {
                value,
                round: 0,
                stage: Stage::Input { index: k + 1 },
            }));
        }
    }
    Ok(Autoreduced::System(PdeSystem::new(n, m, order.clone(), t.equations())?))
}

/// Left- and right-reduction.
///
/// While some lead is a proper multiple of another lead of the same
/// unknown, that equation is removed and its classical normal form with
/// respect to the others is adjoined, solved for its posterior-most symbol.
/// Then every right-hand side is reduced with respect to all other
/// equations, so no rhs symbol is principal.
pub fn autoreduce(sys: &PdeSystem) -> Result<Autoreduced> {
    let mut eqs: BTreeMap<DerivativeSymbol, LinExpr> = sys.equations().map(|e| (e.lead, e.rhs)).collect();
    loop {
        let redundant = eqs
            .keys()
            .filter(|d| {
                eqs.keys()
                    .any(|o| o != *d && o.unknown == d.unknown && o.alpha.divides(&d.alpha))
            })
            .max_by(|a, b| sys.order().cmp(a, b))
            .cloned();
        let Some(lead) = redundant else { break };
        let rhs = eqs.remove(&lead).expect("present");
        let rest = sys.with_equations(eqs.iter().map(|(l, r)| PdeEquation::new(l.clone(), r.clone())).collect())?;
        let expr = PdeEquation::new(lead.clone(), rhs).as_expr();
        let residual = Reducer::classical(&rest).normal_form(&expr)?;
        if residual.is_zero() {
            continue;
        }
        match PdeEquation::solve(&residual, sys.order()) {
            Some(e) => {
                eqs.insert(e.lead, e.rhs);
            }
            None => {
                return Ok(Autoreduced::Incompatible(Witness {
                    value: residual,
                    round: 0,
                    stage: Stage::Autoreduction { lead },
                }))
            }
        }
    }
    let left = sys.with_equations(eqs.iter().map(|(l, r)| PdeEquation::new(l.clone(), r.clone())).collect())?;
    let reducer = Reducer::classical(&left);
    let mut out = Vec::with_capacity(left.len());
    for e in left.equations() {
        let rhs = reducer.normal_form(&e.rhs)?;
        out.push(PdeEquation::new(e.lead, rhs));
    }
    Ok(Autoreduced::System(sys.with_equations(out)?))
}

/// No lead is an involutive multiple of another lead of its unknown and no
/// rhs symbol is an involutive multiple of a lead.
pub fn is_autoreduced(sys: &PdeSystem) -> bool {
    let tables = sys.mult_tables();
    let covered = |d: &DerivativeSymbol, skip: Option<&DerivativeSymbol>| {
        tables[d.unknown].as_ref().is_some_and(|t| {
            t.iter().any(|(u, mult)| {
                skip.is_none_or(|s| s.alpha != *u)
                    && u.divides(&d.alpha)
                    && u.quotient(&d.alpha).expect("divides").support().is_subset(&mult)
            })
        })
    };
    sys.equations()
        .all(|e| !covered(&e.lead, Some(&e.lead)) && e.rhs.symbols().all(|d| !covered(d, None)))
}

/// Adds the prolongations that realize the monomial completion of every
/// lead set, then brings every rhs to Janet normal form.
pub fn complete_system(sys: &PdeSystem) -> Result<PdeSystem> {
    let mut eqs: BTreeMap<DerivativeSymbol, LinExpr> = sys.equations().map(|e| (e.lead, e.rhs)).collect();
    let mut added = false;
    for r in sys.constrained_unknowns() {
        let trace = janet::complete(&sys.leading_monomials(r))?;
        for step in &trace.steps {
            let source = DerivativeSymbol::new(r, step.source.clone());
            let e = PdeEquation::new(source.clone(), eqs[&source].clone());
            let p = differentiate_equation(&e, step.var);
            eqs.insert(p.lead, p.rhs);
            added = true;
        }
    }
    if !added {
        return Ok(sys.clone());
    }
    let completed = sys.with_equations(eqs.iter().map(|(l, r)| PdeEquation::new(l.clone(), r.clone())).collect())?;
    let reducer = Reducer::new(&completed)?;
    let mut out = Vec::with_capacity(completed.len());
    for e in completed.equations() {
        let rhs = reducer.normal_form(&e.rhs)?;
        out.push(PdeEquation::new(e.lead, rhs));
    }
    sys.with_equations(out)
}

/// Upper bound on rounds of the canonicalization loop.
pub fn canonicalize_cap(sys: &PdeSystem, initial_equations: usize) -> usize {
    let per_unknown: usize = sys
        .constrained_unknowns()
        .into_iter()
        .map(|r| janet::iteration_cap(&sys.leading_monomials(r)))
        .fold(1usize, |a, c| a.saturating_mul(c.max(1)));
    per_unknown.saturating_mul(1 + initial_equations)
}

/// Solves, autoreduces, completes and adjoins non-trivial integrability
/// conditions until a fixed point or a contradiction.
pub fn canonicalize(n: usize, m: usize, order: &DerivativeOrder, raw: &[RawEquation]) -> Result<Canonical> {
    let mut sys = match triangulate(n, m, order, raw)? {
        Autoreduced::System(s) => s,
        Autoreduced::Incompatible(w) => return Ok(Canonical::Incompatible(w)),
    };
    let cap = canonicalize_cap(&sys, raw.len());
    for round in 1..=cap {
        sys = match autoreduce(&sys)? {
            Autoreduced::System(s) => s,
            Autoreduced::Incompatible(w) => return Ok(Canonical::Incompatible(Witness { round, ..w })),
        };
        sys = complete_system(&sys)?;
        let conditions = integrability_conditions(&sys)?;
        let nontrivial: Vec<_> = conditions.into_iter().filter(|c| !c.is_trivial()).collect();
        if nontrivial.is_empty() {
            return Ok(Canonical::Canonical(sys));
        }
        let mut t = Triangle::new(order.clone());
        for e in sys.equations() {
            t.eqs.insert(e.lead, e.rhs);
        }
        for c in nontrivial {
            if let Some(value) = t.push(c.residual.clone()) {
                return Ok(Canonical::Incompatible(Witness {
                    value,
                    round,
                    stage: Stage::Integrability {
                        source: c.source.clone(),
                        var: c.var,
                    },
                }));
            }
        }
        sys = sys.with_equations(t.equations())?;
    }
    Err(Error::Internal(format!("canonicalization did not stabilize within {cap} rounds")))
}

/// Canonicalizes a system already in solved form.
pub fn canonicalize_system(sys: &PdeSystem) -> Result<Canonical> {
    let raw: Vec<RawEquation> = sys.equations().map(RawEquation::from).collect();
    canonicalize(sys.arity(), sys.unknowns(), sys.order(), &raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialSet;
    use crate::pde::coefficient::Coefficient;
    use crate::pde::integrability::is_completely_integrable;
    use crate::pde::poly::int;
    use crate::pde::system::tests::{eq, sym, system};

    fn phi(e: &[u32]) -> LinExpr {
        LinExpr::symbol(sym(1, e))
    }

    fn unwrap(a: Autoreduced) -> PdeSystem {
        match a {
            Autoreduced::System(s) => s,
            Autoreduced::Incompatible(w) => panic!("incompatible: {w:?}"),
        }
    }

    #[test]
    fn autoreduce_examples() {
        let s = system(2, vec![eq(&[2, 0], LinExpr::zero(2)), eq(&[1, 1], LinExpr::zero(2))]);
        assert_eq!(unwrap(autoreduce(&s).unwrap()), s);

        // the second lead is a multiple of the first; the residual phi_x2
        // survives as a new equation
        let s = system(2, vec![eq(&[1, 0], LinExpr::zero(2)), eq(&[1, 1], phi(&[0, 1]))]);
        let r = unwrap(autoreduce(&s).unwrap());
        assert_eq!(r, system(2, vec![eq(&[1, 0], LinExpr::zero(2)), eq(&[0, 1], LinExpr::zero(2))]));
        assert!(is_autoreduced(&r));

        let s = system(2, vec![eq(&[1, 0], LinExpr::zero(2)), eq(&[1, 1], LinExpr::zero(2))]);
        let r = unwrap(autoreduce(&s).unwrap());
        assert_eq!(r, system(2, vec![eq(&[1, 0], LinExpr::zero(2))]));

        let one = Coefficient::constant(1, int(1));
        let s = system(1, vec![eq(&[0], LinExpr::constant(one.clone())), eq(&[1], LinExpr::constant(one))]);
        assert!(matches!(autoreduce(&s).unwrap(), Autoreduced::Incompatible(_)));
    }

    #[test]
    fn right_reduction() {
        let s = system(2, vec![eq(&[1, 0], phi(&[0, 0])), eq(&[0, 2], phi(&[1, 1]))]);
        let r = unwrap(autoreduce(&s).unwrap());
        assert_eq!(r.rhs(&sym(1, &[0, 2])), Some(&phi(&[0, 1])));
        assert!(is_autoreduced(&r));

        let s = system(2, vec![eq(&[0, 1], LinExpr::zero(2)), eq(&[2, 0], phi(&[0, 1]))]);
        assert!(!is_autoreduced(&s));
        let r = unwrap(autoreduce(&s).unwrap());
        assert!(r.rhs(&sym(1, &[2, 0])).unwrap().is_zero());
        assert!(is_autoreduced(&r));
    }

    #[test]
    fn completion_examples() {
        let s = system(2, vec![eq(&[2, 0], LinExpr::zero(2))]);
        assert_eq!(complete_system(&s).unwrap(), s);

        let s = system(3, vec![eq(&[0, 2, 1], LinExpr::zero(3)), eq(&[2, 0, 3], LinExpr::zero(3))]);
        let c = complete_system(&s).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(
            c.leading_monomials(1),
            MonomialSet::from_exponents(&[&[0, 2, 1], &[2, 0, 3], &[0, 2, 2], &[0, 2, 3], &[2, 1, 3]])
        );
        assert!(c.is_complete_system());
    }

    #[test]
    fn canonicalize_examples() {
        let s = system(2, vec![eq(&[2, 0], LinExpr::zero(2)), eq(&[1, 1], LinExpr::zero(2))]);
        assert_eq!(canonicalize_system(&s).unwrap(), Canonical::Canonical(s));

        let s = system(2, vec![eq(&[2, 0], phi(&[0, 0])), eq(&[1, 1], LinExpr::zero(2))]);
        let expect = system(2, vec![eq(&[2, 0], phi(&[0, 0])), eq(&[0, 1], LinExpr::zero(2))]);
        match canonicalize_system(&s).unwrap() {
            Canonical::Canonical(c) => {
                assert_eq!(c, expect);
                assert!(is_completely_integrable(&c).unwrap());
                assert!(is_autoreduced(&c));
            }
            other => panic!("{other:?}"),
        }

        let one = LinExpr::constant(Coefficient::constant(1, int(1)));
        let raw = vec![RawEquation::new(phi(&[0]), one), RawEquation::new(phi(&[0]), LinExpr::zero(1))];
        match canonicalize(1, 1, &DerivativeOrder::Deglex, &raw).unwrap() {
            Canonical::Incompatible(w) => assert!(w.value.is_constant() && !w.value.is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triangulation_solves_for_the_posterior_most_symbol() {
        // 2*phi_x1 + phi_x2 = x1 and phi_x2 = 0
        let n = 2;
        let mut lhs = phi(&[1, 0]).scale(&Coefficient::constant(n, int(2)));
        lhs.add_term(sym(1, &[0, 1]), Coefficient::one(n));
        let x1 = LinExpr::constant(Coefficient::from_poly(crate::pde::poly::Poly::var(n, 1)));
        let raw = vec![RawEquation::new(lhs, x1.clone()), RawEquation::new(phi(&[0, 1]), LinExpr::zero(n))];
        let s = unwrap(triangulate(n, 1, &DerivativeOrder::Deglex, &raw).unwrap());
        assert_eq!(s.len(), 2);
        assert_eq!(s.rhs(&sym(1, &[0, 1])).unwrap(), &(&x1 - &phi(&[1, 0]).scale(&Coefficient::constant(n, int(2)))));
    }
}
