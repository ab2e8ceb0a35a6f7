//! Complementary monomials: a finite family of monomials, each with its own
//! multiplicative variables, whose involutive cones partition the monomials
//! outside `cone(U)`.
//!
//! Level `n` holds `x_n^b` for `b <= deg_n(U)` with empty class `[b]`; these
//! are multiplicative in `x_1, ..., x_{n-1}`. For `i < n`, every non-empty
//! class `[a_{i+1}, ..., a_n]` contributes `x_i^b * x_{i+1}^{a_{i+1}} ... x_n^{a_n}`
//! for each `b` below the class maximum whose refined class is empty. Such an
//! entry is multiplicative in `x_1, ..., x_{i-1}` together with the variables
//! among `x_{i+1}, ..., x_n` that are multiplicative for its class.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::janet::{complete, in_cone, is_complete};
use crate::monomial::{Monomial, MonomialSet, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementEntry {
    pub monomial: Monomial,
    pub level: usize,
    #[serde(serialize_with = "serialize_vars")]
    pub cmult: VarSet,
}

fn serialize_vars<S: serde::Serializer>(v: &VarSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter())
}

impl ComplementEntry {
    /// Whether `w` lies in `monomial * M(cmult)`; returns the cofactor.
    pub fn cofactor(&self, w: &Monomial) -> Option<Monomial> {
        if !self.monomial.divides(w) {
            return None;
        }
        let q = self.monomial.quotient(w).ok()?;
        q.support().is_subset(&self.cmult).then_some(q)
    }

    /// Number of monomials of total degree `d` in `monomial * M(cmult)`.
    pub fn count_in_degree(&self, d: u32) -> u64 {
        let e = self.monomial.degree();
        if d < e {
            return 0;
        }
        let rest = (d - e) as u64;
        let k = self.cmult.len() as u64;
        if k == 0 {
            return u64::from(rest == 0);
        }
        binomial(rest + k - 1, k - 1)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementSet {
    arity: usize,
    entries: Vec<ComplementEntry>,
}

impl ComplementSet {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Entries in ascending monomial order.
    pub fn entries(&self) -> &[ComplementEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, v: &Monomial) -> Option<&ComplementEntry> {
        self.entries
            .binary_search_by(|e| e.monomial.cmp(v))
            .ok()
            .map(|k| &self.entries[k])
    }

    /// Every entry whose involutive cone contains `w`, with cofactors.
    pub fn covering(&self, w: &Monomial) -> Vec<(&ComplementEntry, Monomial)> {
        self.entries
            .iter()
            .filter_map(|e| e.cofactor(w).map(|q| (e, q)))
            .collect()
    }
}

/// Exponents of `x_{i+1}, ..., x_n` of every member, grouped into classes.
fn classes(u: &MonomialSet, i: usize) -> BTreeMap<Vec<u32>, Vec<&Monomial>> {
    let mut out: BTreeMap<Vec<u32>, Vec<&Monomial>> = BTreeMap::new();
    for m in u.iter() {
        out.entry(m.exponents()[i..].to_vec()).or_default().push(m);
    }
    out
}

/// Multiplicative variables among `x_{i+1}, ..., x_n` of the class with the
/// given suffix `(a_{i+1}, ..., a_n)`.
fn class_mult(u: &MonomialSet, i: usize, suffix: &[u32]) -> VarSet {
    let n = u.arity();
    let mut mult = VarSet::empty();
    let top = u.iter().map(|m| m.exp(n)).max().unwrap_or(0);
    if suffix[n - i - 1] == top {
        mult.insert(n);
    }
    for j in (i + 1)..n {
        // class of x_j is fixed by a_{j+1}, ..., a_n
        let tail = &suffix[j - i..];
        let class_max = u
            .iter()
            .filter(|m| m.exponents()[j..] == *tail)
            .map(|m| m.exp(j))
            .max()
            .unwrap_or(0);
        if suffix[j - i - 1] == class_max {
            mult.insert(j);
        }
    }
    mult
}

/// Complementary monomials of `U`.
///
/// The level construction only partitions the complement of the cone when
/// it is applied to a complete set, so an incomplete `U` is replaced by its
/// Janet completion first; both have the same cone.
pub fn complementary_set(u: &MonomialSet) -> Result<ComplementSet> {
    if is_complete(u)? {
        complement_formula(u)
    } else {
        complement_formula(&complete(u)?.result)
    }
}

/// The level construction applied to `U` exactly as given.
///
/// For an incomplete `U` the result can overlap `cone(U)`: with
/// `U = {x3*x2^2, x3^3*x1^2}` the entry `x3^2` covers `x3^2*x2^2`.
pub fn complement_formula(u: &MonomialSet) -> Result<ComplementSet> {
    u.ensure_non_empty()?;
    let n = u.arity();
    let mut entries = Vec::new();

    let deg_n = u.deg_i(n)?;
    let present: BTreeSet<u32> = u.iter().map(|m| m.exp(n)).collect();
    for b in 0..=deg_n {
        if !present.contains(&b) {
            let mut e = vec![0; n];
            e[n - 1] = b;
            entries.push(ComplementEntry {
                monomial: Monomial::new(e)?,
                level: n,
                cmult: VarSet::range(1, n - 1),
            });
        }
    }

    for i in 1..n {
        for (suffix, members) in classes(u, i) {
            let top = members.iter().map(|m| m.exp(i)).max().unwrap_or(0);
            let seen: BTreeSet<u32> = members.iter().map(|m| m.exp(i)).collect();
            let mult = VarSet::range(1, i - 1).union(class_mult(u, i, &suffix));
            for b in (0..top).filter(|b| !seen.contains(b)) {
                let mut e = vec![0; n];
                e[i - 1] = b;
                e[i..].copy_from_slice(&suffix);
                entries.push(ComplementEntry {
                    monomial: Monomial::new(e)?,
                    level: i,
                    cmult: mult,
                });
            }
        }
    }

    entries.sort_by(|a, b| a.monomial.cmp(&b.monomial));
    if entries.windows(2).any(|w| w[0].monomial == w[1].monomial) {
        return Err(Error::Internal("complementary monomials are not distinct".into()));
    }
    Ok(ComplementSet { arity: n, entries })
}

/// Which side of `M = cone(U) ⊔ cone_J(∁U)` a monomial falls on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    InCone(Monomial),
    InComplement { entry: Monomial, cofactor: Monomial },
}

pub fn locate(u: &MonomialSet, comp: &ComplementSet, w: &Monomial) -> Result<Location> {
    let divisor = u.iter().find(|v| v.divides(w));
    let cover = comp.covering(w);
    match (divisor, cover.as_slice()) {
        (Some(d), []) => Ok(Location::InCone(d.clone())),
        (None, [(e, q)]) => Ok(Location::InComplement {
            entry: e.monomial.clone(),
            cofactor: q.clone(),
        }),
        (d, c) => Err(Error::Internal(format!(
            "partition violated at {w:?}: cone divisor {:?}, {} complementary covers",
            d,
            c.len()
        ))),
    }
}

/// Number of monomials of degree `d` outside `cone(U)`, counted over the
/// complementary decomposition.
pub fn hilbert_function(u: &MonomialSet, d: u32) -> Result<u64> {
    let comp = complementary_set(u)?;
    Ok(hilbert_from(&comp, d))
}

pub fn hilbert_from(comp: &ComplementSet, d: u32) -> u64 {
    comp.entries.iter().map(|e| e.count_in_degree(d)).sum()
}

/// A violation of the partition property for one monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionViolation {
    pub set: MonomialSet,
    pub monomial: Monomial,
    pub in_cone: bool,
    pub covers: usize,
}

/// Checks every monomial up to `bound` against the partition.
pub fn check_partition(u: &MonomialSet, bound: u32) -> Result<Option<PartitionViolation>> {
    let comp = complementary_set(u)?;
    for w in crate::monomial::enumerate_up_to(u.arity(), bound).iter() {
        let inside = in_cone(u, w);
        let covers = comp.covering(w).len();
        if usize::from(inside) + covers != 1 {
            return Ok(Some(PartitionViolation {
                set: u.clone(),
                monomial: w.clone(),
                in_cone: inside,
                covers,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{enumerate_degree, enumerate_up_to};
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_slice(e)
    }

    fn vars(v: &[usize]) -> VarSet {
        v.iter().copied().collect()
    }

    fn summary(c: &ComplementSet) -> Vec<(Monomial, usize, VarSet)> {
        c.entries()
            .iter()
            .map(|e| (e.monomial.clone(), e.level, e.cmult))
            .collect()
    }

    fn brute_hilbert(u: &MonomialSet, d: u32) -> u64 {
        enumerate_degree(u.arity(), d)
            .iter()
            .filter(|w| !in_cone(u, w))
            .count() as u64
    }

    #[test]
    fn identity_has_empty_complement() {
        let c = complementary_set(&MonomialSet::from_exponents(&[&[0, 0, 0]])).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn complement_of_xy() {
        let c = complementary_set(&MonomialSet::from_exponents(&[&[1, 1]])).unwrap();
        assert_eq!(
            summary(&c),
            vec![(m(&[0, 0]), 2, vars(&[1])), (m(&[0, 1]), 1, vars(&[2]))]
        );
    }

    #[test]
    fn complement_of_x2_xy() {
        let c = complementary_set(&MonomialSet::from_exponents(&[&[2, 0], &[1, 1]])).unwrap();
        assert_eq!(
            summary(&c),
            vec![
                (m(&[0, 0]), 1, VarSet::empty()),
                (m(&[1, 0]), 1, VarSet::empty()),
                (m(&[0, 1]), 1, vars(&[2])),
            ]
        );
    }

    #[test]
    fn locate_examples() {
        let u = MonomialSet::from_exponents(&[&[1, 1]]);
        let c = complementary_set(&u).unwrap();
        assert_eq!(
            locate(&u, &c, &m(&[3, 0])).unwrap(),
            Location::InComplement {
                entry: m(&[0, 0]),
                cofactor: m(&[3, 0])
            }
        );
        assert_eq!(locate(&u, &c, &m(&[2, 5])).unwrap(), Location::InCone(m(&[1, 1])));
        assert_eq!(
            locate(&u, &c, &m(&[0, 4])).unwrap(),
            Location::InComplement {
                entry: m(&[0, 1]),
                cofactor: m(&[0, 3])
            }
        );
    }

    #[test]
    fn hilbert_examples() {
        let u = MonomialSet::from_exponents(&[&[1, 1]]);
        assert_eq!(hilbert_function(&u, 0), Ok(1));
        assert_eq!(hilbert_function(&u, 1), Ok(2));
        assert_eq!(hilbert_function(&u, 5), Ok(2));
        let id = MonomialSet::from_exponents(&[&[0, 0, 0]]);
        for d in 0..6 {
            assert_eq!(hilbert_function(&id, d), Ok(0));
        }
        let u = MonomialSet::from_exponents(&[&[2, 0], &[1, 1]]);
        assert_eq!(hilbert_function(&u, 0), Ok(1));
        assert_eq!(hilbert_function(&u, 1), Ok(2));
        for d in 2..10 {
            assert_eq!(hilbert_function(&u, d), Ok(1));
        }
    }

    #[test]
    fn worked_example_partition() {
        let u = MonomialSet::from_exponents(&[&[0, 2, 1], &[2, 0, 3]]);
        assert_eq!(check_partition(&u, u.max_degree() + 6).unwrap(), None);
    }

    #[test]
    fn raw_formula_needs_a_complete_set() {
        let u = MonomialSet::from_exponents(&[&[0, 2, 1], &[2, 0, 3]]);
        let raw = complement_formula(&u).unwrap();
        let w = m(&[0, 2, 2]);
        assert!(in_cone(&u, &w));
        assert_eq!(raw.covering(&w).len(), 1);
        let fixed = complementary_set(&u).unwrap();
        assert!(fixed.covering(&w).is_empty());
        assert_eq!(fixed, complement_formula(&complete(&u).unwrap().result).unwrap());
    }

    #[test]
    fn empty_is_rejected() {
        assert_eq!(complementary_set(&MonomialSet::new(2)).unwrap_err(), Error::EmptySet);
    }

    fn arb_set() -> impl Strategy<Value = MonomialSet> {
        (1usize..=4).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u32..=3, n), 1..=6).prop_map(move |rows| {
                MonomialSet::from_monomials(n, rows.into_iter().map(|r| Monomial::new(r).unwrap())).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn partition_holds(u in arb_set()) {
            prop_assert_eq!(check_partition(&u, u.max_degree() + 6).unwrap(), None);
        }

        #[test]
        fn entries_stay_in_the_degree_box(u in arb_set()) {
            let c = complementary_set(&u).unwrap();
            for e in c.entries() {
                for i in 1..=u.arity() {
                    prop_assert!(e.monomial.exp(i) <= u.deg_i(i).unwrap());
                }
                prop_assert!(!e.cmult.contains(e.level));
            }
        }

        #[test]
        fn hilbert_matches_brute_force(u in arb_set()) {
            let n = u.arity() as u64;
            for d in 0..=8u32 {
                let h = hilbert_function(&u, d).unwrap();
                prop_assert_eq!(h, brute_hilbert(&u, d));
                let inside = enumerate_degree(u.arity(), d).iter().filter(|w| in_cone(&u, w)).count() as u64;
                prop_assert_eq!(h + inside, binomial(n + d as u64 - 1, n - 1));
            }
        }

        #[test]
        fn hilbert_is_eventually_polynomial(u in arb_set()) {
            // the n-th finite difference vanishes past n * deg(U)
            let n = u.arity();
            let start = n as u32 * u.max_degree() + 1;
            let values: Vec<i128> = (start..start + n as u32 + 4)
                .map(|d| hilbert_function(&u, d).unwrap() as i128)
                .collect();
            let mut diffs = values;
            for _ in 0..n {
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            }
            prop_assert!(diffs.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn locate_agrees_with_enumeration() {
        let u = MonomialSet::from_exponents(&[&[0, 2, 1], &[2, 0, 3], &[1, 1, 1]]);
        let c = complementary_set(&u).unwrap();
        for w in enumerate_up_to(3, 8).iter() {
            let loc = locate(&u, &c, w).unwrap();
            assert_eq!(matches!(loc, Location::InCone(_)), in_cone(&u, w));
        }
    }
}
