//! Integrability conditions of complete systems.

use crate::error::Result;
use crate::monomial::Monomial;
use crate::order::DerivativeSymbol;

use super::expr::{LinExpr, Residual};
use super::reduce::Reducer;
use super::system::PdeSystem;

/// The condition coming from prolonging the equation with lead `source` by
/// the non-multiplicative variable `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityCondition {
    pub source: DerivativeSymbol,
    pub var: usize,
    /// Lead of the Janet divisor equation of `source * x_var`.
    pub divisor: DerivativeSymbol,
    pub cofactor: Monomial,
    pub residual: Residual,
}

impl IntegrabilityCondition {
    pub fn is_trivial(&self) -> bool {
        self.residual.is_zero()
    }
}

/// One condition per lead and non-multiplicative variable, in lead order
/// then variable order, including those with a zero residual.
pub fn integrability_conditions(sys: &PdeSystem) -> Result<Vec<IntegrabilityCondition>> {
    let reducer = Reducer::new(sys)?;
    let tables = sys.mult_tables();
    let n = sys.arity();
    let mut out = Vec::new();
    for e in sys.equations() {
        let table = tables[e.lead.unknown].as_ref().expect("lead has a table");
        let nonmult = table.nonmult(&e.lead.alpha).expect("lead in table");
        for i in nonmult.iter() {
            let target = e.lead.alpha.mul_var(i);
            let alpha = table.janet_divisor(&target).expect("complete system").clone();
            let cofactor = alpha.quotient(&target).expect("divisor");
            let divisor = DerivativeSymbol::new(e.lead.unknown, alpha);
            let direct = e.rhs.differentiate(i);
            let other = sys.rhs(&divisor).expect("lead").apply_operator(&cofactor);
            let residual = reducer.normal_form(&(&direct - &other))?;
            debug_assert_eq!(divisor.alpha.arity(), n);
            out.push(IntegrabilityCondition {
                source: e.lead.clone(),
                var: i,
                divisor,
                cofactor,
                residual,
            });
        }
    }
    Ok(out)
}

/// Every integrability condition is a trivial identity.
pub fn is_completely_integrable(sys: &PdeSystem) -> Result<bool> {
    Ok(integrability_conditions(sys)?.iter().all(IntegrabilityCondition::is_trivial))
}

/// The residual read as an equation `0 = residual`, solved for its
/// posterior-most symbol.
pub fn residual_equation(sys: &PdeSystem, r: &LinExpr) -> Option<super::system::PdeEquation> {
    super::system::PdeEquation::solve(r, sys.order())
}
