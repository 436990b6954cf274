use std::fmt;

use crate::exactcore::{BoundedPoly, Poly, Rational, Ring};
use crate::matinv::{char_vector, normalize_weighted, CharVector, MatrixTuple, WeightedPoint, WeightedRep};
use crate::stability::{jordan_holder, FramedHitchinPair, SigmaParam};

use super::{classify_oriented, walls_for_pair, OrientedError, OrientedFHP};

/// `(ε; e₁, …, e_r)` with `e_i ∈ H⁰(O(iℓ))` the signed characteristic coefficients.
pub fn hitchin_coefficients(pair: &FramedHitchinPair) -> (Rational, Vec<BoundedPoly>) {
    let cp = pair.phi().matrix().charpoly().expect("square");
    let r = pair.rank();
    let ell = pair.ell();
    let coeffs = (1..=r)
        .map(|i| {
            let c = &cp[r - i];
            let e = if i % 2 == 0 { c.clone() } else { c.negate() };
            BoundedPoly::new(e, i as i64 * ell).expect("e_i is a section of O(iℓ)")
        })
        .collect();
    (pair.epsilon().clone(), coeffs)
}

/// A point of the weighted projective space: `ε` has weight 1 and every
/// coefficient of `e_i` weight `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HitchinPoint {
    pub raw: WeightedPoint,
    pub normalized: WeightedRep,
}

pub fn hitchin_map(pair: &FramedHitchinPair) -> Result<HitchinPoint, OrientedError> {
    let (eps, coeffs) = hitchin_coefficients(pair);
    let mut values = vec![eps];
    let mut weights = vec![1];
    for (i, e) in coeffs.iter().enumerate() {
        for c in e.homogeneous_coeffs() {
            values.push(c);
            weights.push(i as u32 + 1);
        }
    }
    let raw = WeightedPoint { values, weights };
    let normalized = normalize_weighted(&raw).map_err(|_| OrientedError::ZeroVector)?;
    Ok(HitchinPoint { raw, normalized })
}

/// The trace-word variant: `(ε; T_{x^k})` for `k ≤ r²`.
pub fn hitchin_trace_vector(pair: &FramedHitchinPair) -> CharVector<Poly<Rational>> {
    let tuple = MatrixTuple::new(vec![pair.phi().matrix().clone()]).expect("square");
    char_vector(&tuple, Poly::constant(pair.epsilon().clone())).expect("one letter")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearizationTag {
    /// `e = 0`: the Hitchin-pair quotient.
    HitchinQuotient,
    Interior,
    /// `e = k`: no invariant subsheaf in the kernel.
    InfinityQuotient,
}

/// `σ = (p/2)·(e/k)`.
pub fn sigma_from_linearization(p: i64, e: i64, k: i64) -> Result<(Rational, LinearizationTag), OrientedError> {
    if k <= 0 || e < 0 || e > k {
        return Err(OrientedError::Invalid(format!("need k > 0 and 0 ≤ e ≤ k, got e = {e}, k = {k}")));
    }
    let sigma = Rational::new(p.into(), 2.into()) * Rational::new(e.into(), k.into());
    let tag = match e {
        0 => LinearizationTag::HitchinQuotient,
        e if e == k => LinearizationTag::InfinityQuotient,
        _ => LinearizationTag::Interior,
    };
    Ok((sigma, tag))
}

/// Fixed loci of `(ε, φ) ↦ (zε, zφ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstAction {
    PhiZero,
    EpsilonNonzero,
    Neither,
}

/// Fixed loci of `(δ, ψ) ↦ (w^r δ, wψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecondAction {
    PsiZero,
    DeltaZero,
    /// `(E', ε, φ', 0) ⊕ (E'', ε, φ'', ψ)` at the wall `sigma`, 1-based among the pair's walls.
    Split { sigma: Rational, wall_index: usize },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointTags {
    pub first: FirstAction,
    pub second: SecondAction,
}

impl fmt::Display for FixedPointTags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = match self.first {
            FirstAction::PhiZero => "phi=0".to_string(),
            FirstAction::EpsilonNonzero => "epsilon!=0".to_string(),
            FirstAction::Neither => "none".to_string(),
        };
        let second = match &self.second {
            SecondAction::PsiZero => "psi=0".to_string(),
            SecondAction::DeltaZero => "delta=0".to_string(),
            SecondAction::Split { sigma, wall_index } => {
                format!("split at wall {wall_index} (sigma = {})", crate::exactcore::fmt_rational(sigma))
            }
            SecondAction::None => "none".to_string(),
        };
        write!(f, "first action: {first}; second action: {second}")
    }
}

pub fn fixed_point_component(o: &OrientedFHP) -> Result<FixedPointTags, OrientedError> {
    let verdict = classify_oriented(o)?;
    if !verdict.is_semistable() {
        return Err(OrientedError::NotSemistable);
    }
    let pair = &o.pair;
    let first = if pair.phi().is_zero() {
        FirstAction::PhiZero
    } else if !pair.epsilon().is_zero() {
        FirstAction::EpsilonNonzero
    } else {
        FirstAction::Neither
    };
    let second = if pair.psi().is_zero() {
        SecondAction::PsiZero
    } else if !o.delta_is_iso() {
        SecondAction::DeltaZero
    } else {
        split_tag(pair, verdict.sigma.as_ref())?
    };
    Ok(FixedPointTags { first, second })
}

/// Split when the pair is equivalent to its graded object at the pinned σ and
/// that object has a framing-free summand.
fn split_tag(pair: &FramedHitchinPair, sigma: Option<&Rational>) -> Result<SecondAction, OrientedError> {
    let Some(s) = sigma.filter(|s| **s > Rational::zero()) else { return Ok(SecondAction::None) };
    let param = SigmaParam::new(s.clone())?;
    let Ok(jh) = jordan_holder(pair, &param) else { return Ok(SecondAction::None) };
    if jh.is_trivial() || !jh.graded.iter().any(|g| g.psi().is_zero()) {
        return Ok(SecondAction::None);
    }
    if !crate::stability::equivalent_pairs(pair, &jh.assembled()) {
        return Ok(SecondAction::None);
    }
    let (walls, _) = walls_for_pair(pair, s)?;
    let wall_index = walls.walls.iter().position(|w| &w.sigma == s).map_or(0, |i| i + 1);
    Ok(SecondAction::Split { sigma: s.clone(), wall_index })
}
