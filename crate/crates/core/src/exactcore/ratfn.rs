use super::poly::Poly;
use super::rational::Rational;
use super::ring::{Field, Ring};

/// Element of the fraction field `F(t)`, kept reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFn<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let num = num.divrem(&g).0;
        let den = den.divrem(&g).0;
        let lc = den.lead().unwrap().recip().unwrap();
        RatFn { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }
}

impl<F: Field> Ring for RatFn<F> {
    fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFn::new(self.num.plus(&other.num), self.den.clone());
        }
        RatFn::new(
            self.num.times(&other.den).plus(&other.num.times(&self.den)),
            self.den.times(&other.den),
        )
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFn::zero();
        }
        RatFn::new(self.num.times(&other.num), self.den.times(&other.den))
    }
    fn negate(&self) -> Self {
        RatFn { num: self.num.negate(), den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        RatFn::from_poly(Poly::from_rational(q))
    }
}

impl<F: Field> Field for RatFn<F> {
    fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| RatFn::new(self.den.clone(), self.num.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rational::qi;

    #[test]
    fn reduces() {
        let t = Poly::<Rational>::t();
        let one = Poly::<Rational>::one();
        let a = RatFn::new(t.times(&t), t.scale(&qi(2)));
        assert_eq!(a, RatFn::new(t.scale(&qi(1)), Poly::constant(qi(2))));
        let b = RatFn::new(one.clone(), t.clone());
        let s = a.plus(&b);
        assert_eq!(s.times(&RatFn::from_poly(t.scale(&qi(2)))), RatFn::from_poly(t.times(&t).plus(&Poly::constant(qi(2)))));
        assert_eq!(b.recip().unwrap(), RatFn::from_poly(t));
    }
}
