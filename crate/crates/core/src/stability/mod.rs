//! σ-stability of framed Hitchin pairs `(E, ε, φ, ψ)` on P¹.
//!
//! On a curve σ is a positive rational constant. Inequalities are still
//! compared as reduced Hilbert polynomials so the polynomial order is kept.
//! The core checks accept any rational σ, because wall and chamber
//! computations need σ ≤ 0 as well.

mod candidates;
mod graded;
mod oracle;

use std::cmp::Ordering;
use std::fmt;

use crate::exactcore::{Mat, Poly, Rational, Ring};
use crate::sheafp1::{compose_twisted, BundleP1, ConjugateLines, HilbertPoly, SheafError, SheafMap, Subsheaf};

pub use candidates::{invariant_candidates, Candidate, CandidateKind, Candidates};
pub use oracle::brute_force_lines;
pub use graded::{equivalent_pairs, jordan_holder, jordan_holder_with, s_equivalent, JHFiltration, TieBreak};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StabilityError {
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error("σ must be positive, got {0}")]
    NonPositiveSigma(Rational),
    #[error("invariant subsheaf enumeration is incomplete for rank {rank}")]
    IncompleteEnumeration { rank: usize, verdict: Box<StabilityVerdict> },
    #[error("the pair is not σ-semistable")]
    NotSemistable,
    #[error("E(n) is not globally generated for n = {0}")]
    NotGloballyGenerated(i64),
    #[error("{0}")]
    Unsupported(String),
}

/// A positive rational stability parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SigmaParam(Rational);

impl SigmaParam {
    pub fn new(value: Rational) -> Result<Self, StabilityError> {
        if value <= Rational::zero() {
            return Err(StabilityError::NonPositiveSigma(value));
        }
        Ok(SigmaParam(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// `(E, ε, φ, ψ)` with `φ: E → E ⊗ O(ℓ)` and `ψ: E → H`.
///
/// `ψ = 0` and `ε = 0` with nilpotent `φ` are representable; the latter is
/// excluded by [`sigma_semistable`], the former is how oriented pairs and
/// graded pieces are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct FramedHitchinPair {
    epsilon: Rational,
    phi: SheafMap,
    psi: SheafMap,
}

impl FramedHitchinPair {
    pub fn new(epsilon: Rational, phi: SheafMap, psi: SheafMap) -> Result<Self, StabilityError> {
        if !phi.is_endomorphism() {
            return Err(SheafError::Shape("φ must map E to E ⊗ L".into()).into());
        }
        if psi.source() != phi.source() {
            return Err(SheafError::Shape("ψ must be defined on E".into()).into());
        }
        if psi.twist() != 0 {
            return Err(SheafError::Shape("ψ is untwisted".into()).into());
        }
        Ok(FramedHitchinPair { epsilon, phi, psi })
    }

    /// Constant matrices on `E`, `H` with twist `ℓ`.
    pub fn constant(
        e: &BundleP1,
        h: &BundleP1,
        ell: i64,
        epsilon: Rational,
        phi: &Mat<Rational>,
        psi: &Mat<Rational>,
    ) -> Result<Self, StabilityError> {
        let phi = SheafMap::constant(e.clone(), e.clone(), ell, phi)?;
        let psi = SheafMap::constant(e.clone(), h.clone(), 0, psi)?;
        FramedHitchinPair::new(epsilon, phi, psi)
    }

    pub fn e(&self) -> &BundleP1 {
        self.phi.source()
    }

    pub fn h(&self) -> &BundleP1 {
        self.psi.target()
    }

    pub fn ell(&self) -> i64 {
        self.phi.twist()
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn phi(&self) -> &SheafMap {
        &self.phi
    }

    pub fn psi(&self) -> &SheafMap {
        &self.psi
    }

    pub fn rank(&self) -> usize {
        self.e().rank()
    }

    pub fn degree(&self) -> i64 {
        self.e().degree()
    }

    /// `φ_r = 0`.
    pub fn phi_nilpotent(&self) -> bool {
        compose_twisted(&self.phi, self.rank() as u32).expect("endomorphism").is_zero()
    }

    /// `ε = 0` with nilpotent `φ`: outside the framed-pair type.
    pub fn is_excluded(&self) -> bool {
        self.epsilon.is_zero() && self.phi_nilpotent()
    }

    /// `(zε, zφ, ψ)`.
    pub fn rescaled(&self, z: &Rational) -> Self {
        FramedHitchinPair { epsilon: &self.epsilon * z, phi: self.phi.scale(z), psi: self.psi.clone() }
    }

    pub fn with_psi(&self, psi: SheafMap) -> Result<Self, StabilityError> {
        FramedHitchinPair::new(self.epsilon.clone(), self.phi.clone(), psi)
    }

    pub fn with_phi(&self, phi: SheafMap) -> Result<Self, StabilityError> {
        FramedHitchinPair::new(self.epsilon.clone(), phi, self.psi.clone())
    }

    pub fn with_epsilon(&self, epsilon: Rational) -> Self {
        FramedHitchinPair { epsilon, ..self.clone() }
    }

    /// Transport along an automorphism `ρ` of `E` given with its inverse:
    /// `(ε, ρφρ⁻¹, ψρ⁻¹)`.
    pub fn transported(&self, rho: &Mat<Poly<Rational>>, rho_inv: &Mat<Poly<Rational>>) -> Result<Self, StabilityError> {
        let e = self.e().clone();
        let ell = self.ell();
        let phi = SheafMap::new(e.clone(), e.clone(), ell, rho.mul(self.phi.matrix()).mul(rho_inv))?;
        let psi = SheafMap::new(e, self.h().clone(), 0, self.psi.matrix().mul(rho_inv))?;
        FramedHitchinPair::new(self.epsilon.clone(), phi, psi)
    }
}

impl fmt::Display for FramedHitchinPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = |m: &Mat<Poly<Rational>>| {
            (0..m.rows())
                .map(|i| format!("[{}]", m.row(i).iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "E = {}, H = {}, l = {}, eps = {}, phi = {}, psi = {}",
            self.e(),
            self.h(),
            self.ell(),
            crate::exactcore::fmt_rational(&self.epsilon),
            rows(self.phi.matrix()),
            rows(self.psi.matrix())
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Stable,
    SemistableNotStable,
    Unstable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Stable => "stable",
            Status::SemistableNotStable => "semistable_not_stable",
            Status::Unstable => "unstable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completeness {
    Complete,
    IncompleteOverQ,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Complete => "complete",
            Completeness::IncompleteOverQ => "incomplete_over_Q",
        })
    }
}

/// `General`: `P_F/f − σ/f ≤ P_E/r − σ/r`. `KernelPsi`: `P_F/f ≤ P_E/r − σ/r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inequality {
    General,
    KernelPsi,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Inequality::General => "general",
            Inequality::KernelPsi => "kernel_psi",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    Violated(Inequality),
    Equality(Inequality),
    /// `ε = 0` and `φ` nilpotent.
    ExcludedNilpotent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// `None` only for [`Failure::ExcludedNilpotent`].
    pub candidate: Option<Candidate>,
    pub failure: Failure,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.candidate, &self.failure) {
            (_, Failure::ExcludedNilpotent) => f.write_str("epsilon = 0 with nilpotent phi"),
            (Some(c), Failure::Violated(i)) => write!(f, "{c} violates the {i} inequality"),
            (Some(c), Failure::Equality(i)) => write!(f, "{c} attains equality in the {i} inequality"),
            (None, _) => unreachable!("subsheaf witnesses carry their candidate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub status: Status,
    /// Violations when unstable, equalities when properly semistable.
    pub witnesses: Vec<Witness>,
    pub completeness: Completeness,
}

impl StabilityVerdict {
    pub fn is_semistable(&self) -> bool {
        self.status != Status::Unstable
    }

    pub fn is_stable(&self) -> bool {
        self.status == Status::Stable
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Compares the two sides of an inequality for a subsheaf of rank `f`, degree `e`.
pub fn compare_inequality(pair_rank: usize, pair_degree: i64, f: usize, e: i64, sigma: &Rational, which: Inequality) -> Ordering {
    let fr = rat(f as i64);
    let rr = rat(pair_rank as i64);
    let mut lhs = HilbertPoly::of(f, e).scale(&fr.recip());
    if which == Inequality::General {
        lhs = lhs.minus(&HilbertPoly::constant(sigma / &fr));
    }
    let rhs = HilbertPoly::of(pair_rank, pair_degree).scale(&rr.recip()).minus(&HilbertPoly::constant(sigma / &rr));
    lhs.cmp(&rhs)
}

/// Section-count version: `h/f (− σ̄/f) vs χ/r − σ̄/r`.
fn compare_sectional(chi: i64, r: usize, h: i64, f: usize, sigma: &Rational, which: Inequality) -> Ordering {
    let fr = rat(f as i64);
    let rr = rat(r as i64);
    let mut lhs = rat(h) / &fr;
    if which == Inequality::General {
        lhs -= sigma / &fr;
    }
    lhs.cmp(&(rat(chi) / &rr - sigma / &rr))
}

fn assess(cands: &Candidates, cmp: impl Fn(&Candidate, Inequality) -> Ordering) -> StabilityVerdict {
    let mut violated = Vec::new();
    let mut tight = Vec::new();
    for c in &cands.list {
        let checks: &[Inequality] =
            if c.in_kernel { &[Inequality::KernelPsi, Inequality::General] } else { &[Inequality::General] };
        let mut worst: Option<Failure> = None;
        for &ineq in checks {
            match cmp(c, ineq) {
                Ordering::Greater => {
                    worst = Some(Failure::Violated(ineq));
                    break;
                }
                Ordering::Equal if worst.is_none() => worst = Some(Failure::Equality(ineq)),
                _ => {}
            }
        }
        match worst {
            Some(f @ Failure::Violated(_)) => violated.push(Witness { candidate: Some(c.clone()), failure: f }),
            Some(f) => tight.push(Witness { candidate: Some(c.clone()), failure: f }),
            None => {}
        }
    }
    let completeness = if cands.complete { Completeness::Complete } else { Completeness::IncompleteOverQ };
    let (status, witnesses) = if !violated.is_empty() {
        (Status::Unstable, violated)
    } else if !tight.is_empty() {
        (Status::SemistableNotStable, tight)
    } else {
        (Status::Stable, Vec::new())
    };
    StabilityVerdict { status, witnesses, completeness }
}

fn excluded_verdict(cands: &Candidates) -> StabilityVerdict {
    StabilityVerdict {
        status: Status::Unstable,
        witnesses: vec![Witness { candidate: None, failure: Failure::ExcludedNilpotent }],
        completeness: if cands.complete { Completeness::Complete } else { Completeness::IncompleteOverQ },
    }
}

impl Candidates {
    /// Verdict at any rational σ, without the nilpotent exclusion.
    pub fn verdict_at(&self, rank: usize, degree: i64, sigma: &Rational) -> StabilityVerdict {
        assess(self, |c, ineq| compare_inequality(rank, degree, c.rank, c.degree, sigma, ineq))
    }

    /// Values of σ where some candidate turns an inequality into equality:
    /// `L_F = (e/f − d/r)/(1/f − 1/r)` for every candidate and
    /// `σ_K = d − r·e/f` for those inside `ker ψ`.
    pub fn breakpoints(&self, rank: usize, degree: i64) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for c in &self.list {
            out.push(general_breakpoint(rank, degree, c.rank, c.degree));
            if c.in_kernel {
                out.push(kernel_breakpoint(rank, degree, c.rank, c.degree));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The closed set of σ (over all rationals) where the general and kernel
    /// inequalities hold: `[max L_F, min σ_K]`, either end possibly open-ended.
    pub fn semistable_interval(&self, rank: usize, degree: i64) -> (Option<Rational>, Option<Rational>) {
        let lower = self.list.iter().map(|c| general_breakpoint(rank, degree, c.rank, c.degree)).max();
        let upper =
            self.list.iter().filter(|c| c.in_kernel).map(|c| kernel_breakpoint(rank, degree, c.rank, c.degree)).min();
        (lower, upper)
    }
}

/// `L_F = (e/f − d/r)/(1/f − 1/r)`.
pub fn general_breakpoint(r: usize, d: i64, f: usize, e: i64) -> Rational {
    let (fr, rr) = (rat(f as i64), rat(r as i64));
    (rat(e) / &fr - rat(d) / &rr) / (fr.recip() - rr.recip())
}

/// `σ_K = d − r·e/f`.
pub fn kernel_breakpoint(r: usize, d: i64, f: usize, e: i64) -> Rational {
    rat(d) - rat(r as i64) * rat(e) / rat(f as i64)
}

/// σ-(semi)stability; rank ≤ 2 is decided completely.
pub fn sigma_semistable(pair: &FramedHitchinPair, sigma: &SigmaParam, strict: bool) -> Result<StabilityVerdict, StabilityError> {
    let cands = invariant_candidates(pair)?;
    let verdict = if pair.is_excluded() {
        excluded_verdict(&cands)
    } else {
        cands.verdict_at(pair.rank(), pair.degree(), sigma.value())
    };
    if strict && !cands.complete {
        return Err(StabilityError::IncompleteEnumeration { rank: pair.rank(), verdict: Box::new(verdict) });
    }
    Ok(verdict)
}

/// Re-evaluates a reported witness against its inequality at σ.
pub fn recheck_witness(pair: &FramedHitchinPair, w: &Witness, sigma: &Rational) -> Option<Ordering> {
    let c = w.candidate.as_ref()?;
    let ineq = match w.failure {
        Failure::Violated(i) | Failure::Equality(i) => i,
        Failure::ExcludedNilpotent => return None,
    };
    Some(compare_inequality(pair.rank(), pair.degree(), c.rank, c.degree, sigma, ineq))
}

/// `(ψ ⊗ id_L) ∘ φ = 0`, i.e. `Im φ ⊆ ker ψ ⊗ L`.
pub fn star_condition(pair: &FramedHitchinPair) -> bool {
    let holds = pair.psi.matrix().mul(pair.phi.matrix()).is_zero();
    if holds && !pair.psi.is_zero() && pair.psi.matrix().rows() > 0 {
        if let Ok(ik) = crate::sheafp1::image_and_kernel(&pair.psi) {
            if let Some(k) = ik.kernel {
                debug_assert!(k.is_invariant(&pair.phi));
            }
        }
    }
    holds
}

/// `(2m₀ − d, −d − 2·deg D + 2m₀)`.
pub fn lemma_obs_bounds(d: i64, m0: i64, deg_d: i64) -> (Rational, Rational) {
    assert!(deg_d >= 0);
    (rat(2 * m0 - d), rat(-d - 2 * deg_d + 2 * m0))
}

/// `max{μ + C, μ + (r−1)²/r · ℓ}` and whether `μ_max(E) = a₁` stays below it.
pub fn mu_max_bound(pair: &FramedHitchinPair, c: &Rational) -> (Rational, bool) {
    assert!(*c >= Rational::zero());
    let r = pair.rank() as i64;
    let mu = pair.e().slope();
    let bound = std::cmp::max(&mu + c, &mu + rat((r - 1) * (r - 1)) / rat(r) * rat(pair.ell()));
    let holds = rat(pair.e().splitting()[0]) <= bound;
    (bound, holds)
}

/// σ̄-sectional (semi)stability with `V = H⁰(E(n))`.
pub fn sectional_semistable(pair: &FramedHitchinPair, sigma_bar: &SigmaParam, n: i64) -> Result<StabilityVerdict, StabilityError> {
    let e = pair.e();
    if *e.splitting().last().unwrap() + n < 0 {
        return Err(StabilityError::NotGloballyGenerated(n));
    }
    let cands = invariant_candidates(pair)?;
    if pair.is_excluded() {
        return Ok(excluded_verdict(&cands));
    }
    let chi = e.h0(n);
    debug_assert_eq!(chi, e.degree() + e.rank() as i64 * (n + 1));
    Ok(assess(&cands, |c, ineq| compare_sectional(chi, e.rank(), c.h0(n), c.rank, sigma_bar.value(), ineq)))
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CandidateKind::Subsheaf(s) => write!(f, "{s}"),
            CandidateKind::Conjugate(c) => write!(f, "conjugate lines of degree {} over Q(sqrt({}))", c.degree, c.radicand),
        }
    }
}

pub(crate) fn conjugate_candidate(lines: ConjugateLines, in_kernel: bool) -> Candidate {
    Candidate { rank: 1, degree: lines.degree, in_kernel, kind: CandidateKind::Conjugate(lines) }
}

pub(crate) fn subsheaf_candidate(s: Subsheaf, psi: &SheafMap) -> Candidate {
    Candidate { rank: s.rank(), degree: s.degree(), in_kernel: s.is_in_kernel_of(psi), kind: CandidateKind::Subsheaf(s) }
}
