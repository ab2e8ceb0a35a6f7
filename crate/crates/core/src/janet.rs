//! Janet's multiplicative variables, involutive division and the completion
//! procedure on finite monomial sets.
//!
//! For `u` in `U`, `x_n` is multiplicative when `deg_n(u) = deg_n(U)`, and
//! `x_i` (`i < n`) is multiplicative when `deg_i(u)` is maximal among the
//! members of `U` that agree with `u` on `x_{i+1}, ..., x_n` (the class
//! `[a_{i+1}, ..., a_n]` of `u`). A Janet divisor of `w` is a `u` in `U`
//! whose cofactor `w / u` only involves multiplicative variables of `u`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialSet, VarSet};

/// Members of `U` whose exponents of `x_{i+1}, ..., x_n` equal `suffix`,
/// where `i = n - suffix.len()`.
pub fn janet_class(u: &MonomialSet, suffix: &[u32]) -> Result<MonomialSet> {
    let n = u.arity();
    if suffix.len() >= n {
        return Err(Error::IndexOutOfRange { index: 0, arity: n });
    }
    let start = n - suffix.len();
    let members = u
        .iter()
        .filter(|v| v.exponents()[start..] == *suffix)
        .cloned();
    MonomialSet::from_monomials(n, members)
}

/// Multiplicative variables of every member of a finite set.
#[derive(Clone, PartialEq, Eq)]
pub struct MultTable {
    arity: usize,
    entries: BTreeMap<Monomial, VarSet>,
}

impl MultTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mult(&self, u: &Monomial) -> Option<VarSet> {
        self.entries.get(u).copied()
    }

    pub fn nonmult(&self, u: &Monomial) -> Option<VarSet> {
        self.mult(u).map(|s| s.complement(self.arity))
    }

    /// `(u, mult(u))` in ascending monomial order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, VarSet)> {
        self.entries.iter().map(|(u, s)| (u, *s))
    }

    /// Whether `u` is a Janet divisor of `w` in this table.
    pub fn is_janet_divisor(&self, u: &Monomial, w: &Monomial) -> bool {
        match self.entries.get(u) {
            Some(mult) => u.divides(w) && quotient_support(u, w).is_subset(mult),
            None => false,
        }
    }

    pub fn janet_divisor(&self, w: &Monomial) -> Option<&Monomial> {
        self.entries
            .iter()
            .find(|(u, mult)| u.divides(w) && quotient_support(u, w).is_subset(mult))
            .map(|(u, _)| u)
    }

    /// All Janet divisors of `w`. Janet cones are disjoint, so this has at
    /// most one element; tests use it to check exactly that.
    pub fn janet_divisors(&self, w: &Monomial) -> Vec<&Monomial> {
        self.entries
            .iter()
            .filter(|(u, mult)| u.divides(w) && quotient_support(u, w).is_subset(mult))
            .map(|(u, _)| u)
            .collect()
    }

    pub fn in_involutive_cone(&self, w: &Monomial) -> bool {
        self.janet_divisor(w).is_some()
    }
}

impl std::fmt::Debug for MultTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

fn quotient_support(u: &Monomial, w: &Monomial) -> VarSet {
    u.exponents()
        .iter()
        .zip(w.exponents())
        .enumerate()
        .filter(|(_, (a, b))| b > a)
        .map(|(k, _)| k + 1)
        .collect()
}

pub fn mult_table(u: &MonomialSet) -> Result<MultTable> {
    u.ensure_non_empty()?;
    let n = u.arity();
    let deg_n = u.deg_i(n)?;
    let members: Vec<&Monomial> = u.iter().collect();
    let mut entries = BTreeMap::new();
    for &m in &members {
        let mut mult = VarSet::empty();
        if m.exp(n) == deg_n {
            mult.insert(n);
        }
        for i in 1..n {
            let suffix = &m.exponents()[i..];
            let class_max = members
                .iter()
                .filter(|v| v.exponents()[i..] == *suffix)
                .map(|v| v.exp(i))
                .max()
                .unwrap_or(0);
            if m.exp(i) == class_max {
                mult.insert(i);
            }
        }
        entries.insert(m.clone(), mult);
    }
    Ok(MultTable { arity: n, entries })
}

pub fn janet_divisor<'a>(u: &MonomialSet, table: &'a MultTable, w: &Monomial) -> Option<&'a Monomial> {
    debug_assert_eq!(u.len(), table.len());
    table.janet_divisor(w)
}

pub fn in_involutive_cone(table: &MultTable, w: &Monomial) -> bool {
    table.in_involutive_cone(w)
}

/// Classical cone membership: some member divides `w`.
pub fn in_cone(u: &MonomialSet, w: &Monomial) -> bool {
    u.iter().any(|v| v.divides(w))
}

/// The classical cone of `U` up to degree `d`, built variable by variable:
/// the slice at `x_n^k` is the cone, in `x_1, ..., x_{n-1}`, of the members
/// with `deg_n <= min(k, deg_n(U))` stripped of their `x_n` part.
pub fn cone_inductive(u: &MonomialSet, d: u32) -> Result<MonomialSet> {
    u.ensure_non_empty()?;
    let gens: Vec<Vec<u32>> = u.iter().map(|m| m.exponents().to_vec()).collect();
    let members = cone_rec(&gens, u.arity(), d)
        .into_iter()
        .map(|e| Monomial::new(e).expect("arity preserved"));
    MonomialSet::from_monomials(u.arity(), members)
}

fn cone_rec(gens: &[Vec<u32>], k: usize, d: u32) -> Vec<Vec<u32>> {
    if gens.is_empty() {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let top = gens.iter().map(|g| g[k - 1]).max().unwrap_or(0);
    let mut out = Vec::new();
    for t in 0..=d {
        let level = t.min(top);
        let slice: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| g[k - 1] <= level)
            .map(|g| g[..k - 1].to_vec())
            .collect();
        for mut head in cone_rec(&slice, k - 1, d - t) {
            head.push(t);
            out.push(head);
        }
    }
    out
}

pub fn is_complete(u: &MonomialSet) -> Result<bool> {
    let table = mult_table(u)?;
    Ok(first_uncovered(u, &table).is_none())
}

fn uncovered_products<'a>(
    u: &'a MonomialSet,
    table: &'a MultTable,
) -> impl Iterator<Item = CompletionStep> + 'a {
    table.iter().flat_map(move |(m, mult)| {
        mult.complement(u.arity())
            .to_vec()
            .into_iter()
            .filter_map(move |i| {
                let w = m.mul_var(i);
                if u.contains(&w) || table.in_involutive_cone(&w) {
                    None
                } else {
                    Some(CompletionStep {
                        added: w,
                        source: m.clone(),
                        var: i,
                    })
                }
            })
    })
}

fn first_uncovered(u: &MonomialSet, table: &MultTable) -> Option<CompletionStep> {
    // ties on the product keep the first source in ascending order
    uncovered_products(u, table).reduce(|best, s| if s.added < best.added { s } else { best })
}

/// One addition `source * x_var` made by the completion procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionStep {
    pub added: Monomial,
    pub source: Monomial,
    pub var: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionTrace {
    pub initial: MonomialSet,
    pub steps: Vec<CompletionStep>,
    pub result: MonomialSet,
}

impl CompletionTrace {
    /// The initial set followed by the set after each step.
    pub fn intermediate_sets(&self) -> Vec<MonomialSet> {
        let mut sets = vec![self.initial.clone()];
        let mut cur = self.initial.clone();
        for step in &self.steps {
            cur.insert(step.added.clone()).expect("arity preserved");
            sets.push(cur.clone());
        }
        sets
    }
}

/// Step bound for [`complete`]: `10 * (deg(U) + 1)^n`.
pub fn iteration_cap(u: &MonomialSet) -> usize {
    let base = u.max_degree() as usize + 1;
    base.checked_pow(u.arity() as u32)
        .and_then(|p| p.checked_mul(10))
        .unwrap_or(usize::MAX)
}

/// Janet's completion: repeatedly add the smallest product `u * x_i`
/// (`x_i` non-multiplicative for `u`) that has no Janet divisor.
///
/// Every added product stays inside the box `deg_j <= deg_j(U)`, so at most
/// `prod_j (deg_j(U) + 1)` steps can happen.
pub fn complete(u: &MonomialSet) -> Result<CompletionTrace> {
    u.ensure_non_empty()?;
    let cap = iteration_cap(u);
    let mut cur = u.clone();
    let mut steps = Vec::new();
    loop {
        let table = mult_table(&cur)?;
        let Some(step) = first_uncovered(&cur, &table) else {
            break;
        };
        if steps.len() >= cap {
            return Err(Error::Internal(format!(
                "completion exceeded {cap} steps on a set of {} monomials",
                u.len()
            )));
        }
        cur.insert(step.added.clone())?;
        steps.push(step);
    }
    Ok(CompletionTrace {
        initial: u.clone(),
        steps,
        result: cur,
    })
}
