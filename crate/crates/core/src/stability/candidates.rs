use crate::exactcore::{kernel_over_fraction_field, Mat, Poly, Rational, Ring};
use crate::sheafp1::{
    compose_twisted, image_and_kernel, invariant_line_subbundles, kernel_filtration, saturate_columns, BundleP1,
    ConjugateLines, InvariantLines, SheafMap, Subsheaf,
};

use super::{conjugate_candidate, subsheaf_candidate, FramedHitchinPair, StabilityError};

#[derive(Clone, Debug, PartialEq)]
pub enum CandidateKind {
    Subsheaf(Subsheaf),
    /// A Galois-conjugate pair of lines, each tested once.
    Conjugate(ConjugateLines),
}

/// A saturated φ-invariant subsheaf that can bound stability.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub kind: CandidateKind,
    pub rank: usize,
    pub degree: i64,
    pub in_kernel: bool,
}

impl Candidate {
    pub fn subsheaf(&self) -> Option<&Subsheaf> {
        match &self.kind {
            CandidateKind::Subsheaf(s) => Some(s),
            CandidateKind::Conjugate(_) => None,
        }
    }

    /// `h⁰(F(n))` from the splitting type.
    pub fn h0(&self, n: i64) -> i64 {
        match &self.kind {
            CandidateKind::Subsheaf(s) => s.splitting().h0(n),
            CandidateKind::Conjugate(c) => (c.degree + n + 1).max(0),
        }
    }
}

/// Invariant subsheaves sufficient to decide every inequality.
///
/// For rank ≤ 2 the list dominates all invariant subsheaves: every other one
/// has the same rank and no larger degree than a listed one in the same
/// kernel class. For rank ≥ 3 only polynomial expressions in `φ` are used.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidates {
    pub list: Vec<Candidate>,
    pub complete: bool,
}

pub fn invariant_candidates(pair: &FramedHitchinPair) -> Result<Candidates, StabilityError> {
    let e = pair.e();
    let psi = pair.psi();
    match e.rank() {
        1 => Ok(Candidates { list: Vec::new(), complete: true }),
        2 => rank_two(pair),
        _ => {
            let mut list: Vec<Candidate> = Vec::new();
            let push = |s: Subsheaf, list: &mut Vec<Candidate>| {
                if s.rank() < e.rank() && !list.iter().any(|c| c.subsheaf().is_some_and(|t| t.same_subbundle(&s))) {
                    list.push(subsheaf_candidate(s, psi));
                }
            };
            for s in kernel_filtration(pair.phi())? {
                push(s, &mut list);
            }
            for k in 1..e.rank() as u32 {
                let pk = compose_twisted(pair.phi(), k)?;
                if pk.is_zero() {
                    break;
                }
                let cols: Vec<Vec<Poly<Rational>>> = (0..e.rank()).map(|j| pk.matrix().col(j)).collect();
                push(saturate_columns(e, &cols), &mut list);
            }
            if let Some(k) = largest_invariant_in_kernel(pair) {
                push(k, &mut list);
            }
            Ok(Candidates { list, complete: false })
        }
    }
}

fn rank_two(pair: &FramedHitchinPair) -> Result<Candidates, StabilityError> {
    let e = pair.e();
    let psi = pair.psi();
    let mut list = Vec::new();
    match invariant_line_subbundles(pair.phi())? {
        InvariantLines::Lines(lines) => {
            list.extend(lines.into_iter().map(|l| subsheaf_candidate(l.subsheaf, psi)));
        }
        InvariantLines::ConjugatePair(c) => list.push(conjugate_candidate(c, psi.is_zero())),
        InvariantLines::AllLineSubbundlesInvariant { .. } => {
            let kernel = kernel_line(psi, e)?;
            let top = top_line(e, kernel.as_ref());
            list.push(subsheaf_candidate(top.clone(), psi));
            if let Some(k) = kernel {
                if !k.same_subbundle(&top) {
                    list.push(subsheaf_candidate(k, psi));
                }
            }
        }
    }
    Ok(Candidates { list, complete: true })
}

/// `ker ψ` when it is a line.
fn kernel_line(psi: &SheafMap, e: &BundleP1) -> Result<Option<Subsheaf>, StabilityError> {
    if psi.is_zero() {
        return Ok(None);
    }
    let ik = image_and_kernel(psi)?;
    Ok(ik.kernel.filter(|k| k.rank() == 1 && e.rank() == 2))
}

/// A line of maximal degree `a₁`, avoiding `avoid` when there is a choice.
fn top_line(e: &BundleP1, avoid: Option<&Subsheaf>) -> Subsheaf {
    let one = Poly::<Rational>::one();
    let zero = Poly::<Rational>::zero();
    let e1 = Subsheaf::line_through(e, &[one.clone(), zero.clone()]).expect("nonzero");
    let a = e.splitting();
    if a[0] > a[1] {
        return e1;
    }
    match avoid {
        Some(k) if k.same_subbundle(&e1) => Subsheaf::line_through(e, &[zero, one]).expect("nonzero"),
        _ => e1,
    }
}

/// The largest `φ`-invariant subsheaf of `ker ψ`, if nonzero and proper.
fn largest_invariant_in_kernel(pair: &FramedHitchinPair) -> Option<Subsheaf> {
    let e = pair.e();
    if pair.psi().is_zero() {
        return None;
    }
    let phi = pair.phi().matrix();
    // Rows cutting out the current subspace; start from ψ.
    let mut rows: Vec<Vec<Poly<Rational>>> = (0..pair.psi().matrix().rows()).map(|i| pair.psi().matrix().row(i)).collect();
    let mut dim = usize::MAX;
    loop {
        let n = Mat::from_rows(rows.clone());
        let basis = kernel_over_fraction_field(&n);
        if basis.is_empty() {
            return None;
        }
        if basis.len() == dim {
            return Some(saturate_columns(e, &basis));
        }
        dim = basis.len();
        let ann = kernel_over_fraction_field(&Mat::from_fn(e.rank(), basis.len(), |i, j| basis[j][i].clone()).transpose());
        let ann = Mat::from_rows(ann);
        let pulled = ann.mul(phi);
        rows = (0..ann.rows()).map(|i| ann.row(i)).chain((0..pulled.rows()).map(|i| pulled.row(i))).collect();
    }
}
