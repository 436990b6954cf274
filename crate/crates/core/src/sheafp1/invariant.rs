use crate::exactcore::rational::{rational_sqrt, strip_powers};
use crate::exactcore::{primitive_vector, Poly, Quad, Rational, Ring};

use super::{BundleP1, SheafError, SheafMap, Subsheaf};

/// A rational `φ`-invariant line `L` with `φ|_L = eigenvalue`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenLine {
    pub subsheaf: Subsheaf,
    pub eigenvalue: Poly<Rational>,
}

/// Two Galois-conjugate invariant lines defined over `ℚ(√radicand)`; the
/// second is the conjugate of `vector`. Neither is a subsheaf over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateLines {
    pub radicand: Rational,
    pub degree: i64,
    pub vector: Vec<Poly<Quad>>,
    pub eigenvalue: Poly<Quad>,
}

/// All `φ`-invariant saturated line subsheaves of a rank-2 bundle.
#[derive(Clone, Debug, PartialEq)]
pub enum InvariantLines {
    /// `φ = scalar · id`.
    AllLineSubbundlesInvariant { scalar: Poly<Rational> },
    /// Finitely many rational lines, possibly none.
    Lines(Vec<EigenLine>),
    ConjugatePair(ConjugateLines),
}

impl InvariantLines {
    /// The rational invariant lines; empty for the central and conjugate cases.
    pub fn rational_lines(&self) -> &[EigenLine] {
        match self {
            InvariantLines::Lines(v) => v,
            _ => &[],
        }
    }
}

pub fn invariant_line_subbundles(phi: &SheafMap) -> Result<InvariantLines, SheafError> {
    if !phi.is_endomorphism() {
        return Err(SheafError::Shape("φ must be an endomorphism".into()));
    }
    let e = phi.source();
    if e.rank() != 2 {
        return Err(SheafError::Rank { expected: 2, actual: e.rank() });
    }
    let (p11, p12, p21, p22) = (phi.entry(0, 0), phi.entry(0, 1), phi.entry(1, 0), phi.entry(1, 1));
    if p12.is_zero() && p21.is_zero() && p11 == p22 {
        return Ok(InvariantLines::AllLineSubbundlesInvariant { scalar: p11.clone() });
    }
    let tr = p11.plus(p22);
    let diff = p11.minus(p22);
    let disc = diff.times(&diff).plus(&p12.times(p21).scale(&Rational::from_int(4)));
    let half = Rational::new(1.into(), 2.into());
    let eigenline = |lambda: Poly<Rational>| -> EigenLine {
        let v = eigenvector(p11, p12, p21, p22, &lambda);
        EigenLine { subsheaf: Subsheaf::line_through(e, &v).expect("nonzero eigenvector"), eigenvalue: lambda }
    };
    if disc.is_zero() {
        return Ok(InvariantLines::Lines(vec![eigenline(tr.scale(&half))]));
    }
    let lc = disc.lead().unwrap().clone();
    let Some(s) = disc.scale(&lc.recip()).sqrt() else {
        return Ok(InvariantLines::Lines(Vec::new()));
    };
    if let Some(root) = rational_sqrt(&lc) {
        let sq = s.scale(&root);
        let plus = tr.plus(&sq).scale(&half);
        let minus = tr.minus(&sq).scale(&half);
        return Ok(InvariantLines::Lines(vec![eigenline(plus), eigenline(minus)]));
    }
    // √lc = (scale / den)·√radicand with an integer radicand.
    let den = Rational::from_integer(lc.denom().clone());
    let (radicand, scale) = strip_powers(&(&lc * &den * &den), 2, 1 << 16);
    let k = scale / den;
    let lift = |p: &Poly<Rational>| p.map(|c| Quad::rational(c.clone()));
    let sq = s.map(|c| Quad::new(Rational::zero(), c * &k, radicand.clone()));
    let lambda = lift(&tr).plus(&sq).scale(&Quad::rational(half));
    let v = eigenvector(&lift(p11), &lift(p12), &lift(p21), &lift(p22), &lambda);
    let v = primitive_vector(&v);
    let degree = quad_line_degree(e, &v);
    Ok(InvariantLines::ConjugatePair(ConjugateLines { radicand, degree, vector: v, eigenvalue: lambda }))
}

/// `(φ₁₂, λ − φ₁₁)`, or `(λ − φ₂₂, φ₂₁)` when the first vanishes.
fn eigenvector<R: Ring>(p11: &Poly<R>, p12: &Poly<R>, p21: &Poly<R>, p22: &Poly<R>, lambda: &Poly<R>) -> Vec<Poly<R>> {
    let first = vec![p12.clone(), lambda.minus(p11)];
    if first.iter().any(|p| !p.is_zero()) {
        return first;
    }
    vec![lambda.minus(p22), p21.clone()]
}

fn quad_line_degree(e: &BundleP1, v: &[Poly<Quad>]) -> i64 {
    e.splitting()
        .iter()
        .zip(v)
        .filter(|(_, p)| !p.is_zero())
        .map(|(a, p)| a - p.deg_i64())
        .min()
        .expect("nonzero vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rational::qi;
    use crate::exactcore::Mat;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    fn phi(e: &[i64], ell: i64, rows: [[&[i64]; 2]; 2]) -> SheafMap {
        let e = BundleP1::new(e.to_vec()).unwrap();
        let m = Mat::from_rows(rows.iter().map(|r| r.iter().map(|c| p(c)).collect()).collect());
        SheafMap::new(e.clone(), e, ell, m).unwrap()
    }

    #[test]
    fn nilpotent_has_one_line() {
        let f = phi(&[0, 0], 0, [[&[], &[1]], [&[], &[]]]);
        let InvariantLines::Lines(lines) = invariant_line_subbundles(&f).unwrap() else { panic!() };
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].subsheaf.vector().unwrap(), vec![p(&[1]), p(&[])]);
        assert!(lines[0].subsheaf.is_invariant(&f));
    }

    #[test]
    fn diagonal_has_coordinate_lines() {
        let f = phi(&[0, 0], 1, [[&[1], &[]], [&[], &[0, 1]]]);
        let InvariantLines::Lines(lines) = invariant_line_subbundles(&f).unwrap() else { panic!() };
        assert_eq!(lines.len(), 2);
        let mut vs: Vec<_> = lines.iter().map(|l| l.subsheaf.vector().unwrap()).collect();
        vs.sort_by_key(|v| v[0].is_zero());
        assert_eq!(vs, vec![vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]]);
        assert!(lines.iter().all(|l| l.subsheaf.is_invariant(&f)));
    }

    #[test]
    fn non_square_discriminant_has_no_lines() {
        // Δ = 4t.
        let f = phi(&[0, 0], 1, [[&[], &[1]], [&[0, 1], &[]]]);
        assert_eq!(invariant_line_subbundles(&f).unwrap(), InvariantLines::Lines(Vec::new()));
    }

    #[test]
    fn irrational_constant_gives_conjugate_pair() {
        // Δ = 8: eigenvalues ±√2.
        let f = phi(&[0, 0], 0, [[&[], &[1]], [&[2], &[]]]);
        let InvariantLines::ConjugatePair(c) = invariant_line_subbundles(&f).unwrap() else { panic!() };
        assert_eq!(c.radicand, qi(2));
        assert_eq!(c.degree, 0);
        assert_eq!(c.eigenvalue.coeff(0), Quad::new(qi(0), qi(1), qi(2)));
    }

    #[test]
    fn scalar_is_central() {
        let f = phi(&[1, 0], 1, [[&[0, 1], &[]], [&[], &[0, 1]]]);
        assert!(matches!(invariant_line_subbundles(&f).unwrap(), InvariantLines::AllLineSubbundlesInvariant { .. }));
    }
}
