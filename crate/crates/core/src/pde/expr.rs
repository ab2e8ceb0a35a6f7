//! Linear differential expressions `sum c * D^b phi^s + c_0`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::monomial::{default_names, Monomial};
use crate::order::{DerivativeOrder, DerivativeSymbol};

use super::coefficient::Coefficient;

/// A finite linear combination of derivative symbols with rational-function
/// coefficients plus an inhomogeneous term. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinExpr {
    n: usize,
    terms: BTreeMap<DerivativeSymbol, Coefficient>,
    constant: Coefficient,
}

/// A normal form: a [`LinExpr`] in which every symbol is parametric.
pub type Residual = LinExpr;

impl LinExpr {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
            constant: Coefficient::zero(n),
        }
    }

    pub fn symbol(d: DerivativeSymbol) -> Self {
        let n = d.alpha.arity();
        Self::term(Coefficient::one(n), d)
    }

    pub fn term(c: Coefficient, d: DerivativeSymbol) -> Self {
        let mut e = Self::zero(c.arity());
        e.add_term(d, c);
        e
    }

    pub fn constant(c: Coefficient) -> Self {
        Self {
            n: c.arity(),
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// No derivative terms.
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DerivativeSymbol, &Coefficient)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = &DerivativeSymbol> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn inhomogeneous(&self) -> &Coefficient {
        &self.constant
    }

    pub fn coefficient(&self, d: &DerivativeSymbol) -> Option<&Coefficient> {
        self.terms.get(d)
    }

    pub fn contains(&self, d: &DerivativeSymbol) -> bool {
        self.terms.contains_key(d)
    }

    pub fn add_term(&mut self, d: DerivativeSymbol, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_constant(&mut self, c: &Coefficient) {
        self.constant = &self.constant + c;
    }

    /// Removes and returns the coefficient of `d`.
    pub fn take(&mut self, d: &DerivativeSymbol) -> Option<Coefficient> {
        self.terms.remove(d)
    }

    pub fn add_scaled(&mut self, other: &LinExpr, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        for (d, a) in &other.terms {
            self.add_term(d.clone(), a * c);
        }
        self.constant = &self.constant + &(&other.constant * c);
    }

    pub fn scale(&self, c: &Coefficient) -> LinExpr {
        let mut out = LinExpr::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// The posterior-most symbol under `order`.
    pub fn max_symbol(&self, order: &DerivativeOrder) -> Option<&DerivativeSymbol> {
        order.max(self.terms.keys())
    }

    /// Total derivative `d/dx_i` by the Leibniz rule.
    pub fn differentiate(&self, i: usize) -> LinExpr {
        let mut out = LinExpr::zero(self.n);
        let step = Monomial::var(self.n, i);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.derivative(i));
            out.add_term(d.prolong(&step), c.clone());
        }
        out.constant = self.constant.derivative(i);
        out
    }

    /// `Phi(u)` applied to the expression.
    pub fn apply_operator(&self, u: &Monomial) -> LinExpr {
        let mut out = self.clone();
        for i in 1..=self.n {
            for _ in 0..u.exp(i) {
                out = out.differentiate(i);
            }
        }
        out
    }

    /// Terms in descending order under `order`.
    pub fn terms_desc(&self, order: &DerivativeOrder) -> Vec<(&DerivativeSymbol, &Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Prints terms posterior-most first, inhomogeneous term last.
    pub fn display_with(&self, vars: &[String], unknowns: &[String], order: &DerivativeOrder) -> String {
        let mut out = String::new();
        for (d, c) in self.terms_desc(order) {
            let sym = d.display_with(unknowns);
            let negative = c.is_negative_term();
            let abs = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(&sym);
            } else {
                out.push_str(&format!("{}*{}", abs.factor_with(vars), sym));
            }
        }
        if !self.constant.is_zero() || out.is_empty() {
            let c = &self.constant;
            if out.is_empty() {
                out.push_str(&c.display_with(vars));
            } else if c.is_negative_term() {
                out.push_str(&format!(" - {}", (-c).display_with(vars)));
            } else if c.as_polynomial().is_some_and(|p| p.num_terms() == 1) {
                out.push_str(&format!(" + {}", c.display_with(vars)));
            } else {
                out.push_str(&format!(" + ({})", c.display_with(vars)));
            }
        }
        out
    }
}

impl Add for &LinExpr {
    type Output = LinExpr;

    fn add(self, rhs: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coefficient::one(self.n));
        out
    }
}

impl Sub for &LinExpr {
    type Output = LinExpr;

    fn sub(self, rhs: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &-&Coefficient::one(self.n));
        out
    }
}

impl Neg for &LinExpr {
    type Output = LinExpr;

    fn neg(self) -> LinExpr {
        self.scale(&-&Coefficient::one(self.n))
    }
}

impl std::fmt::Debug for LinExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m = self.terms.keys().map(|d| d.unknown).max().unwrap_or(1);
        let unknowns: Vec<String> = (1..=m).map(|r| format!("phi{r}")).collect();
        f.write_str(&self.display_with(&default_names(self.n), &unknowns, &DerivativeOrder::Deglex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::poly::tests::x;
    use crate::pde::poly::{int, Poly};

    fn sym(e: &[u32]) -> DerivativeSymbol {
        DerivativeSymbol::new(1, Monomial::from_slice(e))
    }

    #[test]
    fn leibniz() {
        // phi_x1 = x1 * phi, differentiated by x1
        let rhs = LinExpr::term(Coefficient::from_poly(x(1, 1)), sym(&[0]));
        let d = rhs.differentiate(1);
        let mut expect = LinExpr::symbol(sym(&[0]));
        expect.add_term(sym(&[1]), Coefficient::from_poly(x(1, 1)));
        assert_eq!(d, expect);
    }

    #[test]
    fn printing() {
        let n = 2;
        let vars = default_names(n);
        let unknowns = vec!["phi1".to_string()];
        let mut e = LinExpr::term(Coefficient::from_poly(x(n, 1)), sym(&[0, 1]));
        e.add_term(sym(&[0, 0]), Coefficient::constant(n, crate::pde::poly::rat(1, 2)));
        e.add_term(sym(&[1, 0]), Coefficient::constant(n, int(-1)));
        e.add_constant(&Coefficient::from_poly(&x(n, 2) + &Poly::one(n)));
        let s = e.display_with(&vars, &unknowns, &DerivativeOrder::Deglex);
        assert_eq!(s, "x1*D[0,1] phi1 - D[1,0] phi1 + 1/2*phi1 + (x2 + 1)");
        assert_eq!(LinExpr::zero(n).display_with(&vars, &unknowns, &DerivativeOrder::Deglex), "0");
    }
}
