//! Monomial systems `D^a phi = f_a`, initial conditions and truncated
//! series solutions at the origin.

use std::collections::BTreeMap;

use crate::complement::{complementary_set, Location};
use crate::error::{Error, Result};
use crate::janet::{self, mult_table};
use crate::monomial::{enumerate_up_to, Monomial, MonomialSet, VarSet};
use crate::order::{DerivativeOrder, DerivativeSymbol};

use super::coefficient::Coefficient;
use super::expr::LinExpr;
use super::poly::{Poly, Rational};
use super::system::{PdeEquation, PdeSystem};

/// `D^a phi = f_a` for `a` in a finite non-empty set, with polynomial data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPdeSystem {
    n: usize,
    rhs: BTreeMap<Monomial, Poly>,
}

impl MonomialPdeSystem {
    pub fn new(n: usize, rhs: BTreeMap<Monomial, Poly>) -> Result<Self> {
        if rhs.is_empty() {
            return Err(Error::EmptySet);
        }
        for (a, f) in &rhs {
            for k in [a.arity(), f.arity()] {
                if k != n {
                    return Err(Error::ArityMismatch { expected: n, found: k });
                }
            }
        }
        Ok(Self { n, rhs })
    }

    /// The system satisfied by `phi` on the given multi-indices.
    pub fn from_solution(alphas: &MonomialSet, phi: &Poly) -> Result<Self> {
        Self::new(alphas.arity(), alphas.iter().map(|a| (a.clone(), phi.apply_operator(a))).collect())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn rhs(&self) -> &BTreeMap<Monomial, Poly> {
        &self.rhs
    }

    pub fn leading_monomials(&self) -> MonomialSet {
        MonomialSet::from_monomials(self.n, self.rhs.keys().cloned()).expect("arity checked")
    }

    pub fn is_complete(&self) -> bool {
        janet::is_complete(&self.leading_monomials()).expect("non-empty")
    }

    pub fn max_order(&self) -> u32 {
        self.rhs.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Follows the monomial completion, setting `f_{a x_i} = d f_a / dx_i`.
    pub fn completed(&self) -> Result<Self> {
        let trace = janet::complete(&self.leading_monomials())?;
        let mut rhs = self.rhs.clone();
        for step in &trace.steps {
            let f = rhs[&step.source].derivative(step.var);
            rhs.insert(step.added.clone(), f);
        }
        Self::new(self.n, rhs)
    }

    /// The same equations as a one-unknown solved-form system.
    pub fn to_system(&self) -> PdeSystem {
        let eqs = self
            .rhs
            .iter()
            .map(|(a, f)| {
                PdeEquation::new(
                    DerivativeSymbol::new(1, a.clone()),
                    LinExpr::constant(Coefficient::from_poly(f.clone())),
                )
            })
            .collect();
        PdeSystem::new(self.n, 1, DerivativeOrder::Deglex, eqs).expect("distinct leads, constant rhs")
    }
}

/// `d f_a / dx_i = D^c f_b` where `x^b` is the Janet divisor of `x^a x_i`
/// with cofactor `x^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityCondition {
    pub var: usize,
    pub alpha: Monomial,
    pub beta: Monomial,
    pub gamma: Monomial,
    pub lhs: Poly,
    pub rhs: Poly,
    pub holds: bool,
}

pub fn compatibility_conditions_monomial(sys: &MonomialPdeSystem) -> Result<Vec<CompatibilityCondition>> {
    let u = sys.leading_monomials();
    if !janet::is_complete(&u)? {
        return Err(Error::NotComplete { unknown: 1 });
    }
    let table = mult_table(&u)?;
    let mut out = Vec::new();
    for (alpha, _) in table.iter() {
        for i in table.nonmult(alpha).expect("member").iter() {
            let target = alpha.mul_var(i);
            let beta = table.janet_divisor(&target).expect("complete set").clone();
            let gamma = beta.quotient(&target).expect("divisor");
            let lhs = sys.rhs[alpha].derivative(i);
            let rhs = sys.rhs[&beta].apply_operator(&gamma);
            out.push(CompatibilityCondition {
                var: i,
                alpha: alpha.clone(),
                beta,
                gamma,
                holds: lhs == rhs,
                lhs,
                rhs,
            });
        }
    }
    Ok(out)
}

/// One initial condition: `D^beta phi^unknown` restricted to `x_j = 0` for
/// every `x_j` outside `cmult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateSlot {
    pub unknown: usize,
    pub beta: Monomial,
    pub cmult: VarSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialConditionTemplate {
    pub n: usize,
    pub slots: Vec<TemplateSlot>,
}

impl InitialConditionTemplate {
    pub fn slot(&self, unknown: usize, beta: &Monomial) -> Option<&TemplateSlot> {
        self.slots.iter().find(|s| s.unknown == unknown && &s.beta == beta)
    }

    /// Data read off a known solution, one polynomial per unknown.
    pub fn data_from_solution(&self, phis: &[Poly]) -> InitialData {
        let values = self
            .slots
            .iter()
            .map(|s| {
                let g = phis[s.unknown - 1].apply_operator(&s.beta).restrict_to(s.cmult);
                ((s.unknown, s.beta.clone()), g)
            })
            .collect();
        InitialData { values }
    }
}

/// A polynomial for each template slot, keyed by `(unknown, beta)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InitialData {
    pub values: BTreeMap<(usize, Monomial), Poly>,
}

impl InitialData {
    pub fn check(&self, template: &InitialConditionTemplate) -> Result<()> {
        for s in &template.slots {
            let Some(g) = self.values.get(&(s.unknown, s.beta.clone())) else {
                return Err(Error::DataMismatch(format!("no data for slot {:?} of unknown {}", s.beta, s.unknown)));
            };
            if g.arity() != template.n {
                return Err(Error::ArityMismatch {
                    expected: template.n,
                    found: g.arity(),
                });
            }
            if !g.variables().is_subset(&s.cmult) {
                return Err(Error::DataMismatch(format!(
                    "data for slot {:?} of unknown {} uses variables outside its {} free variables",
                    s.beta,
                    s.unknown,
                    s.cmult.len()
                )));
            }
        }
        if self.values.len() != template.slots.len() {
            let extra = self.values.keys().find(|(r, b)| template.slot(*r, b).is_none());
            return Err(Error::DataMismatch(format!("data for unknown slot {extra:?}")));
        }
        Ok(())
    }
}

fn template_for(n: usize, r: usize, u: &MonomialSet) -> Result<Vec<TemplateSlot>> {
    if u.is_empty() {
        return Ok(vec![TemplateSlot {
            unknown: r,
            beta: Monomial::one(n),
            cmult: VarSet::all(n),
        }]);
    }
    if !janet::is_complete(u)? {
        return Err(Error::NotComplete { unknown: r });
    }
    Ok(complementary_set(u)?
        .entries()
        .iter()
        .map(|e| TemplateSlot {
            unknown: r,
            beta: e.monomial.clone(),
            cmult: e.cmult,
        })
        .collect())
}

/// Slots for every unknown; a free unknown gets the single slot `phi`
/// itself with all variables free.
pub fn initial_condition_template(sys: &PdeSystem) -> Result<InitialConditionTemplate> {
    let mut slots = Vec::new();
    for r in 1..=sys.unknowns() {
        slots.extend(template_for(sys.arity(), r, &sys.leading_monomials(r))?);
    }
    Ok(InitialConditionTemplate { n: sys.arity(), slots })
}

pub fn monomial_template(sys: &MonomialPdeSystem) -> Result<InitialConditionTemplate> {
    Ok(InitialConditionTemplate {
        n: sys.n,
        slots: template_for(sys.n, 1, &sys.leading_monomials())?,
    })
}

/// Taylor polynomial of degree `d` at the origin of the unique solution.
pub fn solve_series_monomial(sys: &MonomialPdeSystem, data: &InitialData, d: u32) -> Result<Poly> {
    let u = sys.leading_monomials();
    if !janet::is_complete(&u)? {
        return Err(Error::NotComplete { unknown: 1 });
    }
    if let Some(c) = compatibility_conditions_monomial(sys)?.into_iter().find(|c| !c.holds) {
        return Err(Error::CompatibilityFailure(format!(
            "d/dx{} f{:?} = {} but D{:?} f{:?} = {}",
            c.var, c.alpha, c.lhs, c.gamma, c.beta, c.rhs
        )));
    }
    let template = monomial_template(sys)?;
    data.check(&template)?;
    let table = mult_table(&u)?;
    let comp = complementary_set(&u)?;
    let mut out = Poly::zero(sys.n);
    for gamma in enumerate_up_to(sys.n, d).iter() {
        let value = match table.janet_divisor(gamma) {
            Some(alpha) => {
                let delta = alpha.quotient(gamma).expect("divisor");
                sys.rhs[alpha].apply_operator(&delta).constant_term()
            }
            None => match crate::complement::locate(&u, &comp, gamma)? {
                Location::InComplement { entry, cofactor } => {
                    data.values[&(1, entry)].apply_operator(&cofactor).constant_term()
                }
                Location::InCone(_) => return Err(Error::Internal(format!("{gamma:?} has no Janet divisor"))),
            },
        };
        let value: Rational = value / Rational::from_integer(gamma.factorial());
        out.add_term(gamma.clone(), value);
    }
    Ok(out)
}

/// `D^a phi - f_a` truncated to degree `d - |a|`, for every equation.
pub fn substitution_residues(sys: &MonomialPdeSystem, phi: &Poly, d: u32) -> Vec<(Monomial, Poly)> {
    sys.rhs
        .iter()
        .map(|(a, f)| {
            let keep = d.saturating_sub(a.degree());
            (a.clone(), (&phi.apply_operator(a) - f).truncate(keep))
        })
        .collect()
}
