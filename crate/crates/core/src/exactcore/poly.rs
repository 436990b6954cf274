use std::fmt;

use super::rational::{fmt_rational, parse_rational, rational_sqrt, Rational};
use super::ring::{Field, Ring};
use super::ExactError;

/// Dense univariate polynomial in the affine coordinate `t`, ascending coefficients.
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn t() -> Self {
        Poly::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial sent to `-1`.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.times(x).plus(c))
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.times(self))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).plus(&other.coeff(k))).collect())
    }
    fn minus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).minus(&other.coeff(k))).collect())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Poly::new(v)
    }
    fn negate(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.negate()).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(R::from_rational(q))
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.lead().unwrap().recip().unwrap();
        let mut r = self.coeffs.clone();
        let mut quo = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = r[top].times(&inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let k = top - dd + j;
                    r[k] = r[k].minus(&c.times(dc));
                }
            }
            quo[top - dd] = c;
            r.pop();
        }
        (Poly::new(quo), Poly::new(r))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip().unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.times(&F::from_int(k as i64)))
                .collect(),
        )
    }
}

impl Poly<Rational> {
    /// Square root in ℚ[t] with positive leading coefficient, if `self` is a square.
    pub fn sqrt(&self) -> Option<Self> {
        let n = self.degree()?;
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let lead = rational_sqrt(self.lead().unwrap())?;
        let two_lead = &lead + &lead;
        let mut b = vec![Rational::zero(); m + 1];
        b[m] = lead;
        // Match coefficients of t^{m+k} for k = m-1 down to 0.
        for k in (0..m).rev() {
            let mut acc = self.coeff(m + k);
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc -= &b[i] * &b[j];
                }
            }
            b[k] = acc / &two_lead;
        }
        let root = Poly::new(b);
        (root.times(&root) == *self).then_some(root)
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let body = fmt_rational(&abs);
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    if abs != Rational::one() {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A section of `O(bound)` on P¹: a polynomial of degree at most `bound`.
///
/// A negative bound forces the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedPoly {
    poly: Poly<Rational>,
    bound: i64,
}

impl BoundedPoly {
    pub fn new(poly: Poly<Rational>, bound: i64) -> Result<Self, ExactError> {
        if !poly.is_zero() && poly.deg_i64() > bound {
            return Err(ExactError::BoundExceeded { degree: poly.deg_i64(), bound });
        }
        Ok(BoundedPoly { poly, bound })
    }

    pub fn zero(bound: i64) -> Self {
        BoundedPoly { poly: Poly::zero(), bound }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>, bound: i64) -> Result<Self, ExactError> {
        BoundedPoly::new(Poly::new(coeffs), bound)
    }

    pub fn poly(&self) -> &Poly<Rational> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<Rational> {
        self.poly
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Order of vanishing at ∞ as a form of degree `bound`; `None` for zero.
    pub fn order_at_infinity(&self) -> Option<i64> {
        (!self.poly.is_zero()).then(|| self.bound - self.poly.deg_i64())
    }

    /// Homogeneous coefficients `[x^n, x^{n-1}y, ..., y^n]` with `t = y/x`, reading ascending in `t`.
    pub fn homogeneous_coeffs(&self) -> Vec<Rational> {
        (0..=self.bound.max(-1)).map(|k| self.poly.coeff(k as usize)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.poly.coeffs().iter().map(fmt_rational).collect()
    }

    pub fn from_strings(items: &[String], bound: i64) -> Result<Self, ExactError> {
        let coeffs = items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        BoundedPoly::from_coeffs(coeffs, bound)
    }

    pub fn with_bound(&self, bound: i64) -> Result<Self, ExactError> {
        BoundedPoly::new(self.poly.clone(), bound)
    }
}

impl fmt::Display for BoundedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Product `H⁰(O(a)) ⊗ H⁰(O(b)) → H⁰(O(a+b))`.
pub fn poly_mul(a: &BoundedPoly, b: &BoundedPoly) -> BoundedPoly {
    BoundedPoly { poly: a.poly.times(&b.poly), bound: a.bound + b.bound }
}

/// Square root as a section of `O(bound/2)`, positive leading coefficient.
pub fn poly_sqrt(a: &BoundedPoly) -> Option<BoundedPoly> {
    let root = a.poly.sqrt()?;
    if a.bound % 2 != 0 {
        return None;
    }
    Some(BoundedPoly { poly: root, bound: a.bound / 2 })
}
