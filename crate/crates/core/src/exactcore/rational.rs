use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"`. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n) || !valid(d) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ExactError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"n/d"` string, or `"n"` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn exact_int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_int_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// The rational `k`-th root of `x` if one exists (the positive one for even `k`).
pub fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    assert!(k >= 1);
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let n = exact_int_root(x.numer(), k)?;
    let d = exact_int_root(x.denom(), k)?;
    Some(Rational::new(n, d))
}

pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    rational_root(x, 2)
}

pub fn pow_i(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Reduces `x` modulo `k`-th powers of primes found by trial division below `limit`.
/// Returns `(reduced, scale)` with `x = reduced * scale^k`.
pub(crate) fn strip_powers(x: &Rational, k: u32, limit: u64) -> (Rational, Rational) {
    let mut scale = Rational::one();
    let mut num = x.numer().abs();
    let mut den = x.denom().clone();
    let mut p = 2u64;
    while p < limit {
        let bp = BigInt::from(p);
        let pk = num_traits::pow(bp.clone(), k as usize);
        if num < bp && den < bp {
            break;
        }
        while num.is_multiple_of(&pk) {
            num /= &pk;
            scale *= Rational::from_integer(bp.clone());
        }
        while den.is_multiple_of(&pk) {
            den /= &pk;
            scale /= Rational::from_integer(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(r) = exact_int_root(&num, k) {
        scale *= Rational::from_integer(r);
        num = BigInt::one();
    }
    if let Some(r) = exact_int_root(&den, k) {
        scale /= Rational::from_integer(r);
        den = BigInt::one();
    }
    let sign = if x.is_negative() { -BigInt::one() } else { BigInt::one() };
    (Rational::new(sign * num, den), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), qi(-4));
        assert_eq!(parse_rational(" 7 / -14 ").unwrap(), q(-1, 2));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(rational_sqrt(&q(4, 9)), Some(q(2, 3)));
        assert_eq!(rational_sqrt(&qi(2)), None);
        assert_eq!(rational_sqrt(&qi(-4)), None);
        assert_eq!(rational_root(&qi(-8), 3), Some(qi(-2)));
    }

    #[test]
    fn strip() {
        let (r, s) = strip_powers(&q(72, 5), 2, 1000);
        assert_eq!(r, q(2, 5));
        assert_eq!(s, qi(6));
        let (r, s) = strip_powers(&q(-1, 12), 2, 1000);
        assert_eq!(&r * &s * &s, q(-1, 12));
        assert_eq!(r, q(-1, 3));
    }

    #[test]
    fn display() {
        assert_eq!(fmt_rational(&q(-3, 4)), "-3/4");
        assert_eq!(fmt_rational(&qi(5)), "5");
    }
}
