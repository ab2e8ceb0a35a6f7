//! Rational functions `p/q` in `x_1, ..., x_n` over the rationals.
//!
//! Values are always normalized: the fraction is in lowest terms and the
//! denominator has leading coefficient 1, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{gcd, Poly, Rational};
use crate::error::{Error, Result};
use crate::monomial::default_names;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    num: Poly,
    den: Poly,
}

impl Coefficient {
    pub fn zero(n: usize) -> Self {
        Self::from_poly(Poly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(Poly::one(n))
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(n, c))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.arity();
        Self {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let n = num.arity();
        if num.is_zero() {
            return Self::zero(n);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        Self::monic_denominator(num, den)
    }

    fn monic_denominator(num: Poly, den: Poly) -> Self {
        let lc = den.leading().map(|(_, c)| c.clone()).expect("non-zero denominator");
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_polynomial().and_then(Poly::as_constant)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity());
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &Coefficient) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.arity()).checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `d/dx_i` by the quotient rule.
    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(i));
        }
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return Self::normalized(self.num.derivative(i), self.den.clone());
        }
        // the result's denominator divides den * den / gcd(den, den')
        let g = gcd(&self.den, &dd);
        let den_g = self.den.div_exact(&g).expect("gcd divides");
        let dd_g = dd.div_exact(&g).expect("gcd divides");
        let top = &(&self.num.derivative(i) * &den_g) - &(&self.num * &dd_g);
        Self::normalized(top, &self.den * &den_g)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.display_with(names);
        }
        let num = self.num.display_with(names);
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        format!("{num}/({})", self.den.display_with(names))
    }

    /// Prints as a factor in front of a derivative: no parentheses for a
    /// single positive term, parentheses otherwise.
    pub fn factor_with(&self, names: &[String]) -> String {
        if self.den.is_one() && self.num.is_atomic() {
            self.num.display_with(names)
        } else {
            format!("({})", self.display_with(names))
        }
    }

    /// Whether this is a single polynomial term with a negative scalar.
    pub fn is_negative_term(&self) -> bool {
        self.den.is_one()
            && self.num.num_terms() == 1
            && self.num.leading().is_some_and(|(_, c)| c < &Rational::zero())
    }
}

/// Removes the common factor of `a` and `b`.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        return (a.clone(), b.clone());
    }
    (a.div_exact(&g).expect("gcd divides"), b.div_exact(&g).expect("gcd divides"))
}

impl Add for &Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: &Coefficient) -> Coefficient {
        if self.den == rhs.den {
            if self.den.is_one() {
                return Coefficient::from_poly(&self.num + &rhs.num);
            }
            return Coefficient::normalized(&self.num + &rhs.num, self.den.clone());
        }
        // with g = gcd(b, d), only g can share a factor with the numerator
        let g = gcd(&self.den, &rhs.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return Coefficient::zero(self.arity());
        }
        let (num, g) = cancel(&num, &g);
        Coefficient::monic_denominator(num, &(&b * &d) * &g)
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: &Coefficient) -> Coefficient {
        if self.den.is_one() && rhs.den.is_one() {
            return Coefficient::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return Coefficient::zero(self.arity());
        }
        // both factors are already reduced, so only cross terms can cancel
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Coefficient::monic_denominator(&a * &c, &b * &d)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.arity())))
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coefficient({self})")
    }
}

impl From<Poly> for Coefficient {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}
