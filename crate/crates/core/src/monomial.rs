//! Exponent-vector monomials `x1^a1 * ... * xn^an`.
//!
//! Variables are indexed from 1. A monomial also stands for the differential
//! operator `D^a = d^|a| / dx1^a1 ... dxn^an`, which is how the PDE layer uses
//! it.
//!
//! Monomials are ordered by degree first and then by the first non-zero
//! difference among `a_n - b_n, a_{n-1} - b_{n-1}, ..., a_1 - b_1`. Every
//! sorted collection in this crate iterates in that order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported number of variables; [`VarSet`] is a 64-bit mask.
pub const MAX_ARITY: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() || exps.len() > MAX_ARITY {
            return Err(Error::BadArity {
                got: exps.len(),
                max: MAX_ARITY,
            });
        }
        Ok(Self { exps })
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn from_slice(exps: &[u32]) -> Self {
        Self::new(exps.to_vec()).expect("valid arity")
    }

    pub fn one(arity: usize) -> Self {
        assert!((1..=MAX_ARITY).contains(&arity), "bad arity {arity}");
        Self {
            exps: vec![0; arity],
        }
    }

    /// The monomial `x_i`.
    pub fn var(arity: usize, i: usize) -> Self {
        let mut m = Self::one(arity);
        m.exps[i - 1] = 1;
        m
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `deg_i(u)`, 1-based.
    pub fn deg_i(&self, i: usize) -> Result<u32> {
        self.check_index(i)?;
        Ok(self.exps[i - 1])
    }

    /// Unchecked 1-based exponent access.
    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.arity() {
            return Err(Error::IndexOutOfRange {
                index: i,
                arity: self.arity(),
            });
        }
        Ok(())
    }

    fn check_arity(&self, other: &Monomial) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(())
    }

    /// `self | w` for the classical division.
    pub fn divides(&self, w: &Monomial) -> bool {
        self.arity() == w.arity() && self.exps.iter().zip(&w.exps).all(|(a, b)| a <= b)
    }

    /// `w / self`.
    pub fn quotient(&self, w: &Monomial) -> Result<Monomial> {
        self.check_arity(w)?;
        if !self.divides(w) {
            return Err(Error::NotADivisor {
                divisor: self.clone(),
                dividend: w.clone(),
            });
        }
        Ok(Monomial {
            exps: w.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        Ok(self * other)
    }

    /// `self * x_i`.
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i - 1] += 1;
        m
    }

    /// Variables with a non-zero exponent.
    pub fn support(&self) -> VarSet {
        let mut s = VarSet::empty();
        for (k, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                s.insert(k + 1);
            }
        }
        s
    }

    /// Least common multiple.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// `prod_i a_i!`, the factorial of the multi-index.
    pub fn factorial(&self) -> num_bigint::BigInt {
        let mut acc = num_bigint::BigInt::from(1u32);
        for &e in &self.exps {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    /// The bracket form `[a1,a2,...,an]`.
    pub fn to_record(&self) -> String {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Textual form using the given variable names, highest index first.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for i in (1..=self.arity()).rev() {
            let e = self.exp(i);
            match e {
                0 => {}
                1 => parts.push(names[i - 1].clone()),
                _ => parts.push(format!("{}^{}", names[i - 1], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl std::ops::Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), rhs.arity());
        Monomial {
            exps: self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Degree, then the first non-zero difference scanning from `x_n` down to `x_1`.
pub fn cmp_deglex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.exps.iter().rev().cmp(b.exps.iter().rev()))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then_with(|| cmp_deglex(self, other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.arity())))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

/// `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// A set of variable indices, stored as a bit mask (bit `i-1` for `x_i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub const fn empty() -> Self {
        VarSet(0)
    }

    /// `{x_1, ..., x_n}`.
    pub fn all(n: usize) -> Self {
        Self::range(1, n)
    }

    /// `{x_lo, ..., x_hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        let mut s = Self::empty();
        for i in lo..=hi {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << (i - 1));
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= 64 && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    /// Complement inside `{x_1, ..., x_n}`.
    pub fn complement(self, n: usize) -> VarSet {
        VarSet(!self.0 & Self::all(n).0)
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        (1..=64).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<&str> = self.iter().rev().map(|i| names[i - 1].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VarSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| format!("x{i}"))).finish()
    }
}

/// A finite set of monomials sharing one arity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    arity: usize,
    members: BTreeSet<Monomial>,
}

impl MonomialSet {
    pub fn new(arity: usize) -> Self {
        Self {
            arity,
            members: BTreeSet::new(),
        }
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(arity: usize, items: I) -> Result<Self> {
        let mut set = Self::new(arity);
        for m in items {
            set.insert(m)?;
        }
        Ok(set)
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn from_exponents(rows: &[&[u32]]) -> Self {
        let arity = rows.first().map(|r| r.len()).expect("at least one row");
        Self::from_monomials(arity, rows.iter().map(|r| Monomial::from_slice(r))).expect("same arity")
    }

    /// Returns whether the monomial was newly inserted.
    pub fn insert(&mut self, m: Monomial) -> Result<bool> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: m.arity(),
            });
        }
        Ok(self.members.insert(m))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }

    /// Ascending order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.members.iter()
    }

    pub fn ensure_non_empty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }

    /// `deg_i(U)`: the largest exponent of `x_i` over the set.
    pub fn deg_i(&self, i: usize) -> Result<u32> {
        self.ensure_non_empty()?;
        if i == 0 || i > self.arity {
            return Err(Error::IndexOutOfRange {
                index: i,
                arity: self.arity,
            });
        }
        Ok(self.members.iter().map(|u| u.exp(i)).max().unwrap_or(0))
    }

    /// Largest total degree of a member; 0 for the empty set.
    pub fn max_degree(&self) -> u32 {
        self.members.iter().map(Monomial::degree).max().unwrap_or(0)
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a Monomial;
    type IntoIter = std::collections::btree_set::Iter<'a, Monomial>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// All monomials in `n` variables of degree at most `d`, in ascending order.
pub fn enumerate_up_to(n: usize, d: u32) -> MonomialSet {
    let mut set = MonomialSet::new(n);
    for k in 0..=d {
        for m in enumerate_degree(n, k) {
            set.members.insert(m);
        }
    }
    set
}

/// All monomials in `n` variables of degree exactly `d`.
pub fn enumerate_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fill(&mut exps, 0, d, &mut out);
    out.sort();
    out
}

/// A random set of between 1 and `max_len` monomials, each of degree
/// between 1 and `max_deg`.
pub fn random_set<R: rand::Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize, max_deg: u32) -> MonomialSet {
    let mut set = MonomialSet::new(n);
    let len = rng.gen_range(1..=max_len.max(1));
    for _ in 0..len {
        let d = rng.gen_range(1..=max_deg.max(1));
        let mut exps = vec![0u32; n];
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        set.members.insert(Monomial { exps });
    }
    set
}

fn fill(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        out.push(Monomial { exps: exps.clone() });
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e;
        fill(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}
