//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
//! ascending in the degree lexicographic order and the leading term is the
//! last entry. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::{default_names, Monomial, VarSet};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(c, Monomial::one(n))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let n = m.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { n, terms }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(n, i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(n: usize, items: I) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in items {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.n))
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Variables that occur with a non-zero exponent.
    pub fn variables(&self) -> VarSet {
        self.terms.keys().fold(VarSet::empty(), |s, m| s.union(m.support()))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.arity(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k * m, v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `d/dx_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut exps = m.exponents().to_vec();
                exps[i - 1] -= 1;
                out.add_term(Monomial::new(exps).unwrap(), c * BigInt::from(e));
            }
        }
        out
    }

    /// `D^gamma`.
    pub fn apply_operator(&self, gamma: &Monomial) -> Poly {
        let mut out = self.clone();
        for i in 1..=self.n {
            for _ in 0..gamma.exp(i) {
                out = out.derivative(i);
            }
        }
        out
    }

    /// Sets every variable outside `keep` to zero.
    pub fn restrict_to(&self, keep: VarSet) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.support().is_subset(&keep))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `x_i^0, x_i^1, ...` as polynomials free of `x_i`.
    fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.n); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            let k = std::mem::take(&mut exps[i - 1]) as usize;
            out[k].add_term(Monomial::new(exps).unwrap(), c.clone());
        }
        out
    }

    fn leading_coefficient_in(&self, i: usize) -> Poly {
        self.coefficients_in(i).pop().unwrap_or_else(|| Poly::zero(self.n))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let mut q = Poly::zero(self.n);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading() {
            let m = dm.quotient(rm).ok()?;
            let c = rc / dc;
            let t = Poly::term(c, m);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    fn div_exact_or_panic(&self, d: &Poly) -> Poly {
        self.div_exact(d).expect("exact polynomial division")
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.n);
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    let va = a.variables();
    let vb = b.variables();
    if va == vb && va.len() == 1 {
        let v = va.iter().next().expect("one variable");
        return modular::univariate_gcd(a, b, v);
    }
    if let Some(v) = vb.iter().find(|v| !va.contains(*v)) {
        return gcd(a, &content_in(b, v));
    }
    if let Some(v) = va.iter().find(|v| !vb.contains(*v)) {
        return gcd(&content_in(a, v), b);
    }
    if modular::coprime(a, b) {
        return Poly::one(a.n);
    }
    let v = va
        .iter()
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact_or_panic(&ca);
    let pb = b.div_exact_or_panic(&cb);
    let c = gcd(&ca, &cb);
    if modular::coprime(&pa, &pb) {
        return c;
    }
    let (mut p, mut q) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    loop {
        let r = pseudo_remainder(&p, &q, v);
        if r.is_zero() {
            break;
        }
        p = q;
        q = primitive_part(&r, v).monic();
    }
    (&c * &q).monic()
}

/// The gcd when one side is a single term: the largest monomial dividing
/// every term of both.
fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let exps = a
        .terms
        .keys()
        .chain(b.terms.keys())
        .map(|m| m.exponents().to_vec())
        .reduce(|acc, e| acc.iter().zip(&e).map(|(x, y)| *x.min(y)).collect())
        .expect("non-zero");
    Poly::term(Rational::one(), Monomial::new(exps).expect("arity preserved"))
}

/// Arithmetic modulo word-sized primes: a coprimality test and a univariate
/// gcd by Chinese remaindering.
mod modular {
    use num_bigint::BigInt;
    use num_integer::{Integer, Roots};
    use num_traits::{One, Signed, ToPrimitive, Zero};

    use super::{Monomial, Poly, Rational};

    const P: u64 = 2_147_483_647;

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn residue(c: &BigInt, p: u64) -> u64 {
        c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced")
    }

    fn reduce(c: &Rational, p: u64) -> Option<u64> {
        let den = residue(c.denom(), p);
        (den != 0).then(|| mul(residue(c.numer(), p), inv(den, p), p))
    }

    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Coefficients in `x_v`, lowest first, of `a` with the other
    /// variables set to `point`.
    fn specialize(a: &Poly, v: usize, point: &[u64]) -> Option<Vec<u64>> {
        let mut out = vec![0u64; a.degree_in(v) as usize + 1];
        for (m, c) in a.terms() {
            let mut t = reduce(c, P)?;
            for (j, &e) in m.exponents().iter().enumerate() {
                if j + 1 != v {
                    t = mul(t, pow(point[j], e as u64, P), P);
                }
            }
            let k = m.exp(v) as usize;
            out[k] = (out[k] + t) % P;
        }
        trim(&mut out);
        Some(out)
    }

    /// Monic gcd of two univariate polynomials over `Z/p`, `b` non-zero.
    fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        while !b.is_empty() {
            let lb = inv(*b.last().expect("non-empty"), p);
            while a.len() >= b.len() {
                let q = mul(*a.last().expect("non-empty"), lb, p);
                let shift = a.len() - b.len();
                for (k, &c) in b.iter().enumerate() {
                    a[k + shift] = (a[k + shift] + p - mul(q, c, p)) % p;
                }
                trim(&mut a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        let l = inv(*a.last().expect("non-zero gcd"), p);
        a.iter().map(|&c| mul(c, l, p)).collect()
    }

    /// True only if `a` and `b` certainly have no common factor of positive
    /// degree.
    ///
    /// A common factor of degree `k` in `x_v` survives as a common factor of
    /// degree `k` after reduction, as long as the leading coefficient of `a`
    /// in `x_v` does not vanish.
    pub(super) fn coprime(a: &Poly, b: &Poly) -> bool {
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            (seed >> 33) % (P - 2) + 2
        };
        'vars: for v in a.variables().iter() {
            for _ in 0..3 {
                let point: Vec<u64> = (0..a.arity()).map(|_| next()).collect();
                let (Some(sa), Some(sb)) = (specialize(a, v, &point), specialize(b, v, &point)) else {
                    return false;
                };
                if sa.len() != a.degree_in(v) as usize + 1 || sb.is_empty() {
                    continue;
                }
                if gcd_mod(sa, sb, P).len() == 1 {
                    continue 'vars;
                }
                return false;
            }
            return false;
        }
        true
    }

    fn is_prime(p: u64) -> bool {
        p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
    }

    /// The largest primes below `P`, descending.
    fn primes() -> &'static [u64] {
        static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
        PRIMES.get_or_init(|| (2..P).rev().filter(|&p| is_prime(p)).take(256).collect())
    }

    /// Integer multiple of `a` as coefficients in `x_v`, lowest first.
    fn integer_coefficients(a: &Poly, v: usize) -> Vec<BigInt> {
        let scale = a.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let mut out = vec![BigInt::zero(); a.degree_in(v) as usize + 1];
        for (m, c) in a.terms() {
            out[m.exp(v) as usize] = (c * &scale).to_integer();
        }
        out
    }

    /// The fraction `n/d` with `n = u mod m` and `|n|, d <= sqrt(m/2)`.
    fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Rational> {
        let bound = Roots::sqrt(&(m / BigInt::from(2)));
        let (mut r0, mut r1) = (m.clone(), u.clone());
        let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
        while r1 > bound {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            let s2 = &s0 - &q * &s1;
            (r0, r1, s0, s1) = (r1, r2, s1, s2);
        }
        if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
            return None;
        }
        Some(Rational::new(r1, s1))
    }

    /// Monic gcd of two non-zero polynomials in the single variable `x_v`.
    pub(super) fn univariate_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
        let n = a.arity();
        let ia = integer_coefficients(a, v);
        let ib = integer_coefficients(b, v);
        let lc = ia.last().expect("non-zero") * ib.last().expect("non-zero");
        let to_poly = |coeffs: &[Rational]| {
            Poly::from_terms(
                n,
                coeffs.iter().enumerate().map(|(k, c)| {
                    let mut e = vec![0; n];
                    e[v - 1] = k as u32;
                    (Monomial::new(e).expect("arity"), c.clone())
                }),
            )
        };
        let mut best = usize::MAX;
        let mut modulus = BigInt::one();
        let mut acc: Vec<BigInt> = Vec::new();
        let mut last: Option<Vec<Rational>> = None;
        for &p in primes() {
            if residue(&lc, p) == 0 {
                continue;
            }
            let mut ra: Vec<u64> = ia.iter().map(|c| residue(c, p)).collect();
            let mut rb: Vec<u64> = ib.iter().map(|c| residue(c, p)).collect();
            trim(&mut ra);
            trim(&mut rb);
            let g = gcd_mod(ra, rb, p);
            let d = g.len() - 1;
            if d == 0 {
                return Poly::one(n);
            }
            if d > best {
                continue;
            }
            if d < best {
                best = d;
                modulus = BigInt::one();
                acc = vec![BigInt::zero(); d + 1];
                last = None;
            }
            // combine x = acc (mod modulus) with x = g (mod p)
            let pb = BigInt::from(p);
            let m_inv = inv(residue(&modulus, p), p);
            for (x, &r) in acc.iter_mut().zip(&g) {
                let t = mul((r + p - residue(x, p)) % p, m_inv, p);
                *x += &modulus * BigInt::from(t);
            }
            modulus *= &pb;
            let candidate: Option<Vec<Rational>> =
                acc.iter().map(|x| rational_reconstruction(x, &modulus)).collect();
            let Some(candidate) = candidate else { continue };
            if last.as_ref() == Some(&candidate) {
                let g = to_poly(&candidate);
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return g;
                }
            }
            last = Some(candidate);
        }
        // 256 word-sized primes bound coefficients far beyond any reachable size
        unreachable!("modular gcd did not stabilize")
    }
}

/// Monic gcd of the coefficients of `a` viewed as a polynomial in `x_v`.
fn content_in(a: &Poly, v: usize) -> Poly {
    a.coefficients_in(v)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Poly::zero(a.n), |g, c| if g.is_one() { g } else { gcd(&g, c) })
}

fn primitive_part(a: &Poly, v: usize) -> Poly {
    a.div_exact_or_panic(&content_in(a, v))
}

fn pseudo_remainder(p: &Poly, q: &Poly, v: usize) -> Poly {
    let dq = q.degree_in(v);
    let lc = q.leading_coefficient_in(v);
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(v) >= dq {
        let dr = r.degree_in(v);
        let lr = r.leading_coefficient_in(v);
        let mut shift = vec![0; p.n];
        shift[v - 1] = dr - dq;
        let shift = Monomial::new(shift).unwrap();
        r = &(&lc * &r) - &(&lr * &q.mul_monomial(&shift));
    }
    r
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a * b, x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Poly {
    /// Terms in descending order joined by ` + ` and ` - `; `0` when empty.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms_desc().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&m.display_with(names));
            } else {
                out.push_str(&format!("{}*{}", format_rational(&abs), m.display_with(names)));
            }
        }
        out
    }

    /// Whether the polynomial prints as a single non-negative term.
    pub fn is_atomic(&self) -> bool {
        match self.leading() {
            None => true,
            Some((_, c)) => self.terms.len() == 1 && !c.is_negative(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.n)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
