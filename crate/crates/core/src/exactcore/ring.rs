//! Minimal commutative ring and field interfaces shared by the exact containers.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};

/// A commutative ring with unit containing the rationals.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

pub trait Field: Ring {
    /// `None` exactly for zero.
    fn recip(&self) -> Option<Self>;

    fn divide(&self, other: &Self) -> Self {
        self.times(&other.recip().expect("division by zero"))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Rational {
    fn recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| num_rational::Ratio::recip(self))
    }
}

/// Element `a + b·√c` of a quadratic extension of ℚ.
///
/// `c == 0` marks an element known to be rational (then `b == 0`). Elements
/// from different extensions must not be mixed.
#[derive(Clone, Debug)]
pub struct Quad {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Quad {
    pub fn rational(a: Rational) -> Self {
        Quad { a, b: Zero::zero(), c: Zero::zero() }
    }

    /// `a + b√c`; `c` must not be a rational square.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        if Zero::is_zero(&b) {
            return Quad::rational(a);
        }
        Quad { a, b, c }
    }

    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    fn join(&self, other: &Self) -> Rational {
        match (Zero::is_zero(&self.c), Zero::is_zero(&other.c)) {
            (true, _) => other.c.clone(),
            (false, true) => self.c.clone(),
            (false, false) => {
                assert_eq!(self.c, other.c, "mixed quadratic extensions");
                self.c.clone()
            }
        }
    }

    fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.c
    }
}

impl PartialEq for Quad {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", fmt_rational(&self.a))
        } else {
            write!(f, "{} + {}*sqrt({})", fmt_rational(&self.a), fmt_rational(&self.b), fmt_rational(&self.c))
        }
    }
}

impl Ring for Quad {
    fn zero() -> Self {
        Quad::rational(Zero::zero())
    }
    fn one() -> Self {
        Quad::rational(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn plus(&self, other: &Self) -> Self {
        let c = self.join(other);
        Quad::new(&self.a + &other.a, &self.b + &other.b, c)
    }
    fn minus(&self, other: &Self) -> Self {
        let c = self.join(other);
        Quad::new(&self.a - &other.a, &self.b - &other.b, c)
    }
    fn times(&self, other: &Self) -> Self {
        let c = self.join(other);
        let a = &self.a * &other.a + &self.b * &other.b * &c;
        let b = &self.a * &other.b + &self.b * &other.a;
        Quad::new(a, b, c)
    }
    fn negate(&self) -> Self {
        Quad { a: -&self.a, b: -&self.b, c: self.c.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        Quad::rational(q.clone())
    }
}

impl Field for Quad {
    fn recip(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.norm();
        let conj = self.conj();
        Some(Quad::new(&conj.a / &n, &conj.b / &n, self.c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rational::{q, qi};

    #[test]
    fn quad_arithmetic() {
        let s = Quad::new(qi(0), qi(1), qi(2));
        assert_eq!(s.times(&s), Quad::rational(qi(2)));
        let x = Quad::new(qi(1), qi(1), qi(2));
        let inv = x.recip().unwrap();
        assert_eq!(x.times(&inv), Quad::one());
        assert_eq!(inv, Quad::new(qi(-1), qi(1), qi(2)));
        assert_eq!(x.minus(&x), Quad::zero());
        assert_eq!(Quad::from_rational(&q(1, 2)).plus(&Quad::one()), Quad::rational(q(3, 2)));
    }
}
