//! Oriented framed Hitchin pairs `(E, ε, δ, φ, ψ)` with `ψ = 0` allowed.
//!
//! On P¹, `N[E] ≅ O(d)` so the orientation `δ` is a scalar and is an
//! isomorphism exactly when nonzero.

mod hitchin;
mod walls;

use std::fmt;

use crate::exactcore::{Rational, Ring};
use crate::sheafp1::{HilbertPoly, InvariantLines, SheafMap, Subsheaf};
use crate::stability::{
    invariant_candidates, Candidate, CandidateKind, Candidates, Completeness, FramedHitchinPair, StabilityError, Status,
};

pub use hitchin::{
    fixed_point_component, hitchin_coefficients, hitchin_map, hitchin_trace_vector, sigma_from_linearization,
    FirstAction, FixedPointTags, HitchinPoint, LinearizationTag, SecondAction,
};
pub use walls::{
    realize_wall, sigma_infinity, walls_for_family, walls_for_pair, ChamberDecomposition, Interval, TypeData, Wall,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrientedError {
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("the oriented pair is not semistable")]
    NotSemistable,
    #[error("{0}")]
    Invalid(String),
    #[error("the Hitchin point is zero (ε = 0 and φ nilpotent)")]
    ZeroVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientedFHP {
    pub pair: FramedHitchinPair,
    pub delta: Rational,
}

impl OrientedFHP {
    pub fn new(pair: FramedHitchinPair, delta: Rational) -> Self {
        OrientedFHP { pair, delta }
    }

    pub fn delta_is_iso(&self) -> bool {
        !self.delta.is_zero()
    }
}

/// The maximal-slope `φ`-invariant subsheaf of `ker ψ`; on ties the larger one.
///
/// With `ψ = 0` the whole bundle competes. Returns the candidate and whether
/// the enumeration was complete.
pub fn k_max(pair: &FramedHitchinPair) -> Result<(Option<Candidate>, Completeness), StabilityError> {
    let cands = invariant_candidates(pair)?;
    Ok((k_max_from(pair, &cands), completeness(&cands)))
}

fn completeness(c: &Candidates) -> Completeness {
    if c.complete {
        Completeness::Complete
    } else {
        Completeness::IncompleteOverQ
    }
}

fn k_max_from(pair: &FramedHitchinPair, cands: &Candidates) -> Option<Candidate> {
    let mut pool: Vec<Candidate> = cands.list.iter().filter(|c| c.in_kernel).cloned().collect();
    if pair.psi().is_zero() {
        pool.push(Candidate {
            kind: CandidateKind::Subsheaf(Subsheaf::whole(pair.e())),
            rank: pair.rank(),
            degree: pair.degree(),
            in_kernel: true,
        });
    }
    let reduced = |c: &Candidate| HilbertPoly::of(c.rank, c.degree).scale(&Rational::new(1.into(), (c.rank as i64).into()));
    pool.into_iter().fold(None, |best: Option<Candidate>, c| match best {
        None => Some(c),
        Some(b) => match reduced(&c).cmp(&reduced(&b)) {
            std::cmp::Ordering::Greater => Some(c),
            std::cmp::Ordering::Equal if c.rank > b.rank => Some(c),
            _ => Some(b),
        },
    })
}

/// `P(E) − (r/rk K)·P(K)`, computed in `n`; its `n`-coefficient cancels.
pub fn sigma_of_candidate(pair: &FramedHitchinPair, k: &Candidate) -> Rational {
    let ratio = Rational::new((pair.rank() as i64).into(), (k.rank as i64).into());
    let s = pair.e().hilbert().minus(&HilbertPoly::of(k.rank, k.degree).scale(&ratio));
    assert!(s.lead.is_zero(), "σ_K must not depend on n on a curve");
    s.constant
}

pub fn sigma_of(pair: &FramedHitchinPair) -> Result<Option<Rational>, StabilityError> {
    Ok(k_max(pair)?.0.map(|k| sigma_of_candidate(pair, &k)))
}

/// Which clause of the classification applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrientedCase {
    /// No `φ`-invariant subsheaf inside `ker ψ`.
    NoInvariantInKernel,
    /// `δ ≠ 0` and `(E, ε, φ)` is a (semi)stable Hitchin pair.
    HitchinPair,
    /// `ψ ≠ 0`, `δ ≠ 0`, and σ-(semi)stable for some `σ > 0`.
    SigmaFramed,
    /// `ψ ≠ 0`, `δ ≠ 0`, polystable of the form `(K, ε, φ_K, 0) ⊕ (G, ε, φ_G, ψ)`.
    SplitPolystable,
}

impl fmt::Display for OrientedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrientedCase::NoInvariantInKernel => "no_invariant_in_kernel",
            OrientedCase::HitchinPair => "hitchin_pair",
            OrientedCase::SigmaFramed => "sigma_framed",
            OrientedCase::SplitPolystable => "split_polystable",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientedVerdict {
    pub semistable: Option<OrientedCase>,
    pub stable: Option<OrientedCase>,
    /// `σ_{E,φ,ψ}` when `K_max` exists.
    pub sigma: Option<Rational>,
    pub completeness: Completeness,
}

impl OrientedVerdict {
    pub fn is_semistable(&self) -> bool {
        self.semistable.is_some()
    }

    pub fn is_stable(&self) -> bool {
        self.stable.is_some()
    }
}

pub fn classify_oriented(o: &OrientedFHP) -> Result<OrientedVerdict, OrientedError> {
    let pair = &o.pair;
    let (r, d) = (pair.rank(), pair.degree());
    let cands = invariant_candidates(pair)?;
    let completeness = completeness(&cands);
    let Some(kmax) = k_max_from(pair, &cands) else {
        return Ok(OrientedVerdict {
            semistable: Some(OrientedCase::NoInvariantInKernel),
            stable: Some(OrientedCase::NoInvariantInKernel),
            sigma: None,
            completeness,
        });
    };
    let sigma = sigma_of_candidate(pair, &kmax);
    let framed = !pair.psi().is_zero();
    let mut verdict = OrientedVerdict { semistable: None, stable: None, sigma: Some(sigma.clone()), completeness };
    if !o.delta_is_iso() {
        return Ok(verdict);
    }
    let unframed = pair.with_psi(SheafMap::zero(pair.e().clone(), pair.h().clone(), 0))?;
    let hitchin = invariant_candidates(&unframed)?.verdict_at(r, d, &Rational::zero());
    let positive = sigma > Rational::zero();
    let at_sigma = cands.verdict_at(r, d, &sigma);
    if hitchin.is_semistable() {
        verdict.semistable = Some(OrientedCase::HitchinPair);
    } else if framed && positive && at_sigma.is_semistable() {
        verdict.semistable = Some(OrientedCase::SigmaFramed);
    }
    if hitchin.status == Status::Stable {
        verdict.stable = Some(OrientedCase::HitchinPair);
    } else if framed && stable_somewhere(&cands, r, d) {
        verdict.stable = Some(OrientedCase::SigmaFramed);
    } else if framed
        && positive
        && at_sigma.is_semistable()
        && has_invariant_complement(pair, &kmax)
        && summands_admissible(pair)
    {
        verdict.stable = Some(OrientedCase::SplitPolystable);
    }
    Ok(verdict)
}

/// Chamber search: stability holds on open intervals between breakpoints.
fn stable_somewhere(cands: &Candidates, r: usize, d: i64) -> bool {
    let mut points: Vec<Rational> = cands.breakpoints(r, d).into_iter().filter(|b| *b > Rational::zero()).collect();
    points.insert(0, Rational::zero());
    let mut reps: Vec<Rational> =
        points.windows(2).map(|w| (&w[0] + &w[1]) / Rational::from_int(2)).collect();
    reps.push(points.last().unwrap() + Rational::one());
    reps.iter().any(|s| cands.verdict_at(r, d, s).status == Status::Stable)
}

/// For `E = K ⊕ G` split by `φ`, `det φ = φ_K·φ_G`, so both summands avoid
/// the nilpotent exclusion iff `ε ≠ 0` or `det φ ≠ 0`.
fn summands_admissible(pair: &FramedHitchinPair) -> bool {
    !pair.epsilon().is_zero() || !pair.phi().matrix().det().expect("square").is_zero()
}

/// `E = K ⊕ G` with `G` a `φ`-invariant line; rank 2 only.
fn has_invariant_complement(pair: &FramedHitchinPair, k: &Candidate) -> bool {
    let Some(ks) = k.subsheaf() else { return false };
    if pair.rank() != 2 || ks.rank() != 1 {
        return false;
    }
    let a = pair.e().splitting();
    match crate::sheafp1::invariant_line_subbundles(pair.phi()) {
        Ok(InvariantLines::AllLineSubbundlesInvariant { .. }) => ks.degree() == a[0] || ks.degree() == a[1],
        Ok(InvariantLines::Lines(lines)) => lines
            .iter()
            .any(|l| !l.subsheaf.same_subbundle(ks) && l.subsheaf.degree() + ks.degree() == pair.degree()),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{qi, Mat};
    use crate::sheafp1::BundleP1;

    fn m(rows: &[&[i64]]) -> Mat<Rational> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    fn pair(e: &[i64], h: i64, eps: i64, phi: &[&[i64]], psi: &[&[i64]]) -> FramedHitchinPair {
        FramedHitchinPair::constant(&BundleP1::new(e.to_vec()).unwrap(), &BundleP1::line(h), 0, qi(eps), &m(phi), &m(psi))
            .unwrap()
    }

    #[test]
    fn k_max_examples() {
        let p = pair(&[1, 0], 0, 1, &[&[0, 0], &[0, 0]], &[&[0, 0]]);
        let (k, _) = k_max(&p).unwrap();
        let k = k.unwrap();
        assert_eq!((k.rank, k.degree), (1, 1));
        assert_eq!(sigma_of(&p).unwrap(), Some(qi(-1)));
        let p = pair(&[0, 0], 0, 1, &[&[0, 1], &[0, 0]], &[&[1, 0]]);
        assert!(k_max(&p).unwrap().0.is_none());
        let p = pair(&[0, 0], 0, 1, &[&[0, 0], &[1, 0]], &[&[1, 0]]);
        let k = k_max(&p).unwrap().0.unwrap();
        assert_eq!(k.subsheaf().unwrap().vector().unwrap()[0], crate::exactcore::Poly::zero());
        assert_eq!(sigma_of(&p).unwrap(), Some(qi(0)));
    }

    #[test]
    fn sigma_of_examples() {
        let p = pair(&[0, 0], 0, 1, &[&[0, 0], &[0, 0]], &[&[1, 0]]);
        assert_eq!(sigma_of(&p).unwrap(), Some(qi(0)));
        let p = pair(&[0, -1], 0, 1, &[&[0, 0], &[0, 0]], &[&[1, 0]]);
        assert_eq!(sigma_of(&p).unwrap(), Some(qi(1)));
    }

    #[test]
    fn classify_examples() {
        let c = OrientedFHP::new(pair(&[0, 0], 0, 1, &[&[0, 1], &[0, 0]], &[&[1, 0]]), qi(3));
        let v = classify_oriented(&c).unwrap();
        assert_eq!(v.semistable, Some(OrientedCase::NoInvariantInKernel));
        assert_eq!(v.stable, Some(OrientedCase::NoInvariantInKernel));
        let c = OrientedFHP::new(pair(&[1, 0], 0, 1, &[&[0, 0], &[0, 0]], &[&[0, 0]]), qi(1));
        assert!(!classify_oriented(&c).unwrap().is_semistable());
        for eps in [0, 1, -2] {
            let c = OrientedFHP::new(pair(&[0, 0], 0, eps, &[&[0, 0], &[0, 0]], &[&[0, 0]]), qi(1));
            let v = classify_oriented(&c).unwrap();
            assert!(v.is_semistable() && !v.is_stable());
        }
    }

    #[test]
    fn split_pair_is_stable() {
        // E = O(0) ⊕ O(−1), ψ projecting to the first summand: σ_K = 1 > 0.
        let c = OrientedFHP::new(pair(&[0, -1], 0, 1, &[&[0, 0], &[0, 0]], &[&[1, 0]]), qi(1));
        let v = classify_oriented(&c).unwrap();
        assert!(v.is_semistable());
        assert!(v.is_stable());
    }
}
