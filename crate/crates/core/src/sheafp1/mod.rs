//! Vector bundles on P¹ as splitting types and maps between them as bounded
//! polynomial matrices in the affine coordinate `t`.

mod invariant;
mod subsheaf;

use std::cmp::Ordering;
use std::fmt;

use crate::exactcore::{ExactError, Mat, Poly, PolyMatrix, Rational, Ring};

pub use invariant::{invariant_line_subbundles, ConjugateLines, EigenLine, InvariantLines};
pub use subsheaf::{
    image_and_kernel, kernel_filtration, saturate, saturate_columns, saturation_degree_from_minors, sections_in, ImageKernel,
    Subsheaf,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    #[error("invalid splitting type: {0}")]
    Splitting(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("the map is zero")]
    ZeroMap,
    #[error("operation needs rank {expected}, got {actual}")]
    Rank { expected: usize, actual: usize },
    #[error("twist {0} is negative")]
    NegativeTwist(i64),
}

/// `O(a₁) ⊕ … ⊕ O(a_r)` with `a₁ ≥ … ≥ a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleP1 {
    splitting: Vec<i64>,
}

impl BundleP1 {
    pub fn new(splitting: Vec<i64>) -> Result<Self, SheafError> {
        if splitting.is_empty() {
            return Err(SheafError::Splitting("empty splitting type".into()));
        }
        if splitting.windows(2).any(|w| w[0] < w[1]) {
            return Err(SheafError::Splitting(format!("{splitting:?} is not descending")));
        }
        Ok(BundleP1 { splitting })
    }

    /// Sorts the degrees into descending order.
    pub fn from_degrees(mut degrees: Vec<i64>) -> Result<Self, SheafError> {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        BundleP1::new(degrees)
    }

    pub fn line(a: i64) -> Self {
        BundleP1 { splitting: vec![a] }
    }

    pub fn splitting(&self) -> &[i64] {
        &self.splitting
    }

    pub fn rank(&self) -> usize {
        self.splitting.len()
    }

    pub fn degree(&self) -> i64 {
        self.splitting.iter().sum()
    }

    pub fn slope(&self) -> Rational {
        Rational::new(self.degree().into(), (self.rank() as i64).into())
    }

    pub fn hilbert(&self) -> HilbertPoly {
        HilbertPoly::of(self.rank(), self.degree())
    }

    /// `h⁰(E(n))`.
    pub fn h0(&self, n: i64) -> i64 {
        self.splitting.iter().map(|a| (a + n + 1).max(0)).sum()
    }
}

impl fmt::Display for BundleP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.splitting.iter().map(|a| format!("O({a})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `χ(E(n)) = d + r(n+1)`.
pub fn hilbert_poly(e: &BundleP1, n: i64) -> Rational {
    Rational::from_integer((e.degree() + e.rank() as i64 * (n + 1)).into())
}

/// `(μ_max, μ_min) = (a₁, a_r)`.
pub fn mu_max_min(e: &BundleP1) -> (i64, i64) {
    (e.splitting[0], *e.splitting.last().unwrap())
}

/// A degree-one polynomial `lead·n + constant`, ordered lexicographically from the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoly {
    pub lead: Rational,
    pub constant: Rational,
}

impl HilbertPoly {
    pub fn of(rank: usize, degree: i64) -> Self {
        let r = Rational::from_integer((rank as i64).into());
        HilbertPoly { lead: r.clone(), constant: Rational::from_integer(degree.into()) + r }
    }

    pub fn constant(c: Rational) -> Self {
        HilbertPoly { lead: Rational::zero(), constant: c }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HilbertPoly { lead: &self.lead * c, constant: &self.constant * c }
    }

    pub fn plus(&self, o: &Self) -> Self {
        HilbertPoly { lead: &self.lead + &o.lead, constant: &self.constant + &o.constant }
    }

    pub fn minus(&self, o: &Self) -> Self {
        HilbertPoly { lead: &self.lead - &o.lead, constant: &self.constant - &o.constant }
    }

    pub fn eval(&self, n: i64) -> Rational {
        &self.lead * Rational::from_integer(n.into()) + &self.constant
    }
}

impl PartialOrd for HilbertPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HilbertPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lead.cmp(&other.lead).then_with(|| self.constant.cmp(&other.constant))
    }
}

/// A map `source → target ⊗ O(twist)`; entry `(i,j)` is a section of
/// `O(target_i + twist − source_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SheafMap {
    source: BundleP1,
    target: BundleP1,
    twist: i64,
    entries: PolyMatrix,
}

impl SheafMap {
    pub fn new(source: BundleP1, target: BundleP1, twist: i64, m: Mat<Poly<Rational>>) -> Result<Self, SheafError> {
        if twist < 0 {
            return Err(SheafError::NegativeTwist(twist));
        }
        if m.rows() != target.rank() || m.cols() != source.rank() {
            return Err(SheafError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let entries = PolyMatrix::new(m, |i, j| target.splitting[i] + twist - source.splitting[j])?;
        Ok(SheafMap { source, target, twist, entries })
    }

    pub fn zero(source: BundleP1, target: BundleP1, twist: i64) -> Self {
        let m = Mat::zeros(target.rank(), source.rank());
        SheafMap::new(source, target, twist, m).expect("zero respects every bound")
    }

    /// `t^0`-coefficients only: a constant matrix, checked against the bounds.
    pub fn constant(source: BundleP1, target: BundleP1, twist: i64, m: &Mat<Rational>) -> Result<Self, SheafError> {
        SheafMap::new(source, target, twist, m.map(|x| Poly::constant(x.clone())))
    }

    pub fn source(&self) -> &BundleP1 {
        &self.source
    }

    pub fn target(&self) -> &BundleP1 {
        &self.target
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn matrix(&self) -> &Mat<Poly<Rational>> {
        self.entries.mat()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<Rational> {
        self.entries.mat().get(i, j)
    }

    pub fn bound(&self, i: usize, j: usize) -> i64 {
        self.entries.bound(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// Constant scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        let m = self.matrix().map(|p| p.scale(c));
        SheafMap::new(self.source.clone(), self.target.clone(), self.twist, m).expect("scaling keeps bounds")
    }

    /// `self ∘ first`, twists adding.
    pub fn compose(&self, first: &SheafMap) -> Result<SheafMap, SheafError> {
        if first.target != self.source {
            return Err(SheafError::Shape(format!("cannot compose {} -> {} after {}", self.source, self.target, first.target)));
        }
        let m = self.matrix().mul(first.matrix());
        SheafMap::new(first.source.clone(), self.target.clone(), self.twist + first.twist, m)
    }

    /// Applies the map to a column of sections.
    pub fn apply(&self, v: &[Poly<Rational>]) -> Vec<Poly<Rational>> {
        self.matrix().mul(&Mat::column(v.to_vec())).col(0)
    }
}

/// The `k`-fold twisted self-composition `φ_k: E → E ⊗ O(kℓ)`.
pub fn compose_twisted(phi: &SheafMap, k: u32) -> Result<SheafMap, SheafError> {
    if !phi.is_endomorphism() {
        return Err(SheafError::Shape("compose_twisted needs an endomorphism".into()));
    }
    assert!(k >= 1);
    let m = phi.matrix().pow(k);
    SheafMap::new(phi.source.clone(), phi.target.clone(), phi.twist * k as i64, m)
}
