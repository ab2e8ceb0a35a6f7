//! Orders on derivatives `D^a phi^r`.
//!
//! Both orders compare total differentiation order first. The degree
//! lexicographic order then compares `a_n, a_{n-1}, ..., a_1`; a weight order
//! first compares the weight vectors `Gamma_k = sum_i a_i C[k][i] + W[k][r]`
//! lexicographically. Remaining ties are broken by the degree lexicographic
//! tail and finally by the unknown index, so every order here is total.
//!
//! `Less` means anterior, `Greater` means posterior.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{cmp_deglex as deglex, enumerate_up_to, Monomial};

/// `D^alpha phi^unknown`, with `unknown` counted from 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivativeSymbol {
    pub unknown: usize,
    pub alpha: Monomial,
}

impl DerivativeSymbol {
    /// `unknown` counts from 1.
    pub fn new(unknown: usize, alpha: Monomial) -> Self {
        assert!(unknown >= 1, "unknowns are numbered from 1");
        Self { unknown, alpha }
    }

    pub fn order(&self) -> u32 {
        self.alpha.degree()
    }

    /// The derivative `D^gamma` applied to this symbol.
    pub fn prolong(&self, gamma: &Monomial) -> DerivativeSymbol {
        DerivativeSymbol {
            unknown: self.unknown,
            alpha: &self.alpha * gamma,
        }
    }

    pub fn display_with(&self, unknowns: &[String]) -> String {
        let name = &unknowns[self.unknown - 1];
        if self.alpha.is_one() {
            name.clone()
        } else {
            let parts: Vec<String> = self.alpha.exponents().iter().map(|e| e.to_string()).collect();
            format!("D[{}] {}", parts.join(","), name)
        }
    }
}

impl fmt::Debug for DerivativeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{:?}phi{}", self.alpha, self.unknown)
    }
}

/// Checked degree lexicographic comparison of two multi-indices.
pub fn cmp_deglex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    Ok(deglex(a, b))
}

/// A cote (weight) order: `s` levels of non-negative integer weights on the
/// `n` variables and the `m` unknown functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOrder {
    n: usize,
    m: usize,
    var_weights: Vec<Vec<u64>>,
    unknown_weights: Vec<Vec<u64>>,
}

impl WeightOrder {
    /// `var_weights[k][i]` is the level-`k` weight of `x_{i+1}`;
    /// `unknown_weights[k][r]` that of `phi^{r+1}`.
    pub fn new(n: usize, m: usize, var_weights: Vec<Vec<i64>>, unknown_weights: Vec<Vec<i64>>) -> Result<Self> {
        if var_weights.is_empty() {
            return Err(Error::WeightShape("at least one weight level is required".into()));
        }
        if unknown_weights.len() != var_weights.len() {
            return Err(Error::WeightShape(format!(
                "{} variable weight rows but {} unknown weight rows",
                var_weights.len(),
                unknown_weights.len()
            )));
        }
        let check = |rows: &[Vec<i64>], width: usize, what: &str| -> Result<Vec<Vec<u64>>> {
            rows.iter()
                .enumerate()
                .map(|(k, row)| {
                    if row.len() != width {
                        return Err(Error::WeightShape(format!(
                            "level {} has {} {what} weights, expected {width}",
                            k + 1,
                            row.len()
                        )));
                    }
                    row.iter()
                        .enumerate()
                        .map(|(j, &v)| {
                            u64::try_from(v).map_err(|_| Error::NegativeWeight {
                                value: v,
                                location: format!("level {}, {what} {}", k + 1, j + 1),
                            })
                        })
                        .collect()
                })
                .collect()
        };
        Ok(Self {
            n,
            m,
            var_weights: check(&var_weights, n, "variable")?,
            unknown_weights: check(&unknown_weights, m, "unknown")?,
        })
    }

    /// Weights on variables only; unknown weights are zero.
    pub fn on_variables(n: usize, m: usize, var_weights: Vec<Vec<i64>>) -> Result<Self> {
        let zeros = vec![vec![0; m]; var_weights.len()];
        Self::new(n, m, var_weights, zeros)
    }

    pub fn levels(&self) -> usize {
        self.var_weights.len()
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn unknowns(&self) -> usize {
        self.m
    }

    pub fn var_weights(&self) -> &[Vec<u64>] {
        &self.var_weights
    }

    pub fn unknown_weights(&self) -> &[Vec<u64>] {
        &self.unknown_weights
    }

    /// `(Gamma_1, ..., Gamma_s)`.
    pub fn gamma(&self, d: &DerivativeSymbol) -> Vec<u64> {
        self.var_weights
            .iter()
            .zip(&self.unknown_weights)
            .map(|(c, w)| {
                let vars: u64 = d.alpha.exponents().iter().zip(c).map(|(&a, &c)| a as u64 * c).sum();
                vars + w[d.unknown - 1]
            })
            .collect()
    }

    fn conforms(&self, d: &DerivativeSymbol) -> Result<()> {
        if d.alpha.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: d.alpha.arity(),
            });
        }
        if d.unknown == 0 || d.unknown > self.m {
            return Err(Error::UnknownOutOfRange {
                index: d.unknown,
                count: self.m,
            });
        }
        Ok(())
    }
}

pub fn cmp_weight(ord: &WeightOrder, a: &DerivativeSymbol, b: &DerivativeSymbol) -> Result<Ordering> {
    ord.conforms(a)?;
    ord.conforms(b)?;
    Ok(weight_unchecked(ord, a, b))
}

fn weight_unchecked(ord: &WeightOrder, a: &DerivativeSymbol, b: &DerivativeSymbol) -> Ordering {
    a.order()
        .cmp(&b.order())
        .then_with(|| ord.gamma(a).cmp(&ord.gamma(b)))
        .then_with(|| deglex(&a.alpha, &b.alpha))
        .then_with(|| a.unknown.cmp(&b.unknown))
}

/// The order a PDE system uses to pick leading derivatives.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum DerivativeOrder {
    #[default]
    Deglex,
    Weight(WeightOrder),
}

impl DerivativeOrder {
    /// Total comparison; symbols are assumed to conform to the system.
    pub fn cmp(&self, a: &DerivativeSymbol, b: &DerivativeSymbol) -> Ordering {
        match self {
            DerivativeOrder::Deglex => deglex(&a.alpha, &b.alpha).then_with(|| a.unknown.cmp(&b.unknown)),
            DerivativeOrder::Weight(w) => weight_unchecked(w, a, b),
        }
    }

    pub fn is_anterior(&self, a: &DerivativeSymbol, b: &DerivativeSymbol) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    /// Posterior-most of a non-empty collection.
    pub fn max<'a, I: IntoIterator<Item = &'a DerivativeSymbol>>(&self, items: I) -> Option<&'a DerivativeSymbol> {
        items.into_iter().max_by(|a, b| self.cmp(a, b))
    }
}

/// All symbols of order at most `bound` for `m` unknowns in `n` variables.
pub fn enumerate_symbols(n: usize, m: usize, bound: u32) -> Vec<DerivativeSymbol> {
    let alphas = enumerate_up_to(n, bound);
    (1..=m)
        .flat_map(|r| alphas.iter().map(move |a| DerivativeSymbol::new(r, a.clone())))
        .collect()
}

/// Exhaustively checks `a < b => a*g < b*g` over symbols and multipliers of
/// order at most `bound`.
pub fn is_multiplication_compatible(ord: &DerivativeOrder, n: usize, m: usize, bound: u32) -> bool {
    let symbols = enumerate_symbols(n, m, bound);
    let gammas = enumerate_up_to(n, bound);
    for a in &symbols {
        for b in &symbols {
            let base = ord.cmp(a, b);
            for g in gammas.iter() {
                if ord.cmp(&a.prolong(g), &b.prolong(g)) != base {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustively checks antisymmetry, totality and transitivity on symbols of
/// order at most `bound`.
pub fn is_total_order(ord: &DerivativeOrder, n: usize, m: usize, bound: u32) -> bool {
    let mut symbols = enumerate_symbols(n, m, bound);
    for a in &symbols {
        for b in &symbols {
            let ab = ord.cmp(a, b);
            if ab != ord.cmp(b, a).reverse() || (ab == Ordering::Equal) != (a == b) {
                return false;
            }
        }
    }
    // a consistent sort must be strictly increasing if the order is transitive
    symbols.sort_by(|a, b| ord.cmp(a, b));
    let sorted_ok = symbols.windows(2).all(|w| ord.cmp(&w[0], &w[1]) == Ordering::Less);
    let transitive = symbols
        .iter()
        .enumerate()
        .all(|(k, a)| symbols[k + 1..].iter().all(|b| ord.cmp(a, b) == Ordering::Less));
    sorted_ok && transitive
}

/// Lower order is always anterior.
pub fn has_degree_dominance(ord: &DerivativeOrder, n: usize, m: usize, bound: u32) -> bool {
    let symbols = enumerate_symbols(n, m, bound);
    symbols.iter().all(|a| {
        symbols
            .iter()
            .filter(|b| a.order() < b.order())
            .all(|b| ord.cmp(a, b) == Ordering::Less)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym(r: usize, e: &[u32]) -> DerivativeSymbol {
        DerivativeSymbol::new(r, Monomial::from_slice(e))
    }

    #[test]
    fn deglex_examples() {
        let m = Monomial::from_slice;
        assert_eq!(cmp_deglex(&m(&[2, 0]), &m(&[0, 1])), Ok(Ordering::Greater));
        assert_eq!(cmp_deglex(&m(&[0, 1]), &m(&[1, 0])), Ok(Ordering::Greater));
        assert_eq!(cmp_deglex(&m(&[1, 2]), &m(&[1, 2])), Ok(Ordering::Equal));
        assert!(cmp_deglex(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn weight_examples() {
        let w = WeightOrder::on_variables(2, 1, vec![vec![1, 0]]).unwrap();
        assert_eq!(cmp_weight(&w, &sym(1, &[1, 1]), &sym(1, &[0, 2])), Ok(Ordering::Greater));

        let w = WeightOrder::on_variables(2, 1, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(w.gamma(&sym(1, &[0, 1])), vec![1, 0]);
        assert_eq!(w.gamma(&sym(1, &[1, 0])), vec![0, 1]);
        assert_eq!(cmp_weight(&w, &sym(1, &[0, 1]), &sym(1, &[1, 0])), Ok(Ordering::Greater));
    }

    #[test]
    fn zero_weights_reduce_to_deglex() {
        let w = DerivativeOrder::Weight(WeightOrder::new(3, 2, vec![vec![0; 3]], vec![vec![0; 2]]).unwrap());
        for a in enumerate_symbols(3, 2, 3) {
            for b in enumerate_symbols(3, 2, 3) {
                assert_eq!(w.cmp(&a, &b), DerivativeOrder::Deglex.cmp(&a, &b));
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            WeightOrder::on_variables(2, 1, vec![vec![1, -1]]),
            Err(Error::NegativeWeight { value: -1, .. })
        ));
        assert!(matches!(
            WeightOrder::on_variables(2, 1, vec![vec![1]]),
            Err(Error::WeightShape(_))
        ));
        assert!(matches!(WeightOrder::on_variables(2, 1, vec![]), Err(Error::WeightShape(_))));
        let w = WeightOrder::on_variables(2, 1, vec![vec![1, 0]]).unwrap();
        assert!(cmp_weight(&w, &sym(2, &[1, 0]), &sym(1, &[1, 0])).is_err());
        assert!(cmp_weight(&w, &sym(1, &[1, 0, 0]), &sym(1, &[1, 0])).is_err());
    }

    #[test]
    fn deglex_contracts() {
        let d = DerivativeOrder::Deglex;
        assert!(is_multiplication_compatible(&d, 3, 1, 4));
        assert!(is_total_order(&d, 3, 2, 3));
        assert!(has_degree_dominance(&d, 3, 2, 3));
        let a = sym(1, &[1, 2, 0]);
        assert_eq!(d.cmp(&a, &a), Ordering::Equal);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn weight_orders_are_admissible(
            n in 1usize..=3,
            m in 1usize..=2,
            s in 1usize..=3,
            seed in proptest::collection::vec(0i64..4, 18),
        ) {
            let c: Vec<Vec<i64>> = (0..s).map(|k| (0..n).map(|i| seed[k * 3 + i]).collect()).collect();
            let w: Vec<Vec<i64>> = (0..s).map(|k| (0..m).map(|r| seed[9 + k * 3 + r]).collect()).collect();
            let ord = DerivativeOrder::Weight(WeightOrder::new(n, m, c, w).unwrap());
            prop_assert!(is_total_order(&ord, n, m, 3));
            prop_assert!(has_degree_dominance(&ord, n, m, 3));
            prop_assert!(is_multiplication_compatible(&ord, n, m, 2));
        }
    }
}
