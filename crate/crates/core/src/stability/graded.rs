//! Jordan–Hölder filtrations, associated graded objects and equivalence of pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactcore::rational::rational_root;
use crate::exactcore::{Mat, Poly, Rational, Ring};
use crate::sheafp1::{BundleP1, SheafMap, Subsheaf};

use super::{sigma_semistable, Candidate, CandidateKind, Failure, FramedHitchinPair, SigmaParam, StabilityError, Status};

/// Order among equality witnesses of maximal rank and degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Smallest canonical key.
    Canonical,
    /// Largest canonical key.
    Reversed,
}

/// `E = E₀ ⊃ E₁ ⊃ … ⊃ E_m ⊃ 0` and its graded pieces, each of rank one
/// unless the pair is stable.
#[derive(Clone, Debug, PartialEq)]
pub struct JHFiltration {
    pub steps: Vec<Subsheaf>,
    pub graded: Vec<FramedHitchinPair>,
}

impl JHFiltration {
    pub fn is_trivial(&self) -> bool {
        self.graded.len() == 1
    }

    /// The graded object as one pair with block-diagonal `φ`.
    pub fn assembled(&self) -> FramedHitchinPair {
        if self.is_trivial() {
            return self.graded[0].clone();
        }
        let mut pieces: Vec<&FramedHitchinPair> = self.graded.iter().collect();
        pieces.sort_by_key(|p| std::cmp::Reverse(p.degree()));
        let first = pieces[0];
        let e = BundleP1::new(pieces.iter().map(|p| p.degree()).collect()).expect("sorted");
        let h = first.h().clone();
        let r = pieces.len();
        let phi = Mat::from_fn(r, r, |i, j| if i == j { pieces[i].phi().entry(0, 0).clone() } else { Poly::zero() });
        let psi = Mat::from_fn(h.rank(), r, |k, j| pieces[j].psi().entry(k, 0).clone());
        let phi = SheafMap::new(e.clone(), e.clone(), first.ell(), phi).expect("diagonal respects bounds");
        let psi = SheafMap::new(e, h, 0, psi).expect("columns respect bounds");
        FramedHitchinPair::new(first.epsilon().clone(), phi, psi).expect("well formed")
    }
}

pub fn jordan_holder(pair: &FramedHitchinPair, sigma: &SigmaParam) -> Result<JHFiltration, StabilityError> {
    jordan_holder_with(pair, sigma, TieBreak::Canonical)
}

pub fn jordan_holder_with(pair: &FramedHitchinPair, sigma: &SigmaParam, order: TieBreak) -> Result<JHFiltration, StabilityError> {
    let verdict = sigma_semistable(pair, sigma, true)?;
    let trivial = || JHFiltration { steps: vec![Subsheaf::whole(pair.e())], graded: vec![pair.clone()] };
    match verdict.status {
        Status::Unstable => return Err(StabilityError::NotSemistable),
        Status::Stable => return Ok(trivial()),
        Status::SemistableNotStable => {}
    }
    if pair.rank() != 2 {
        return Err(StabilityError::Unsupported("Jordan–Hölder filtrations are built for rank 2".into()));
    }
    let mut tight: Vec<(&Candidate, Subsheaf)> = verdict
        .witnesses
        .iter()
        .filter(|w| matches!(w.failure, Failure::Equality(_)))
        .filter_map(|w| {
            let c = w.candidate.as_ref()?;
            match &c.kind {
                CandidateKind::Subsheaf(s) => Some((c, s.clone())),
                CandidateKind::Conjugate(_) => None,
            }
        })
        .collect();
    if tight.is_empty() {
        return Err(StabilityError::Unsupported("equality is attained only by lines defined over an extension".into()));
    }
    tight.sort_by(|(a, sa), (b, sb)| {
        b.rank.cmp(&a.rank).then(b.degree.cmp(&a.degree)).then_with(|| sa.canonical_key().cmp(&sb.canonical_key()))
    });
    let (rank, degree) = (tight[0].0.rank, tight[0].0.degree);
    let top: Vec<_> = tight.iter().filter(|(c, _)| c.rank == rank && c.degree == degree).collect();
    let (cand, f) = match order {
        TieBreak::Canonical => top[0],
        TieBreak::Reversed => top[top.len() - 1],
    };
    let graded = split_along_line(pair, f, cand.in_kernel);
    Ok(JHFiltration { steps: vec![Subsheaf::whole(pair.e()), f.clone()], graded })
}

/// `(F, ε, μ, ψ|_F or 0) ⊕ (E/F, ε, tr φ − μ, 0 or ψ̄)` for an invariant line `F`.
fn split_along_line(pair: &FramedHitchinPair, f: &Subsheaf, in_kernel: bool) -> Vec<FramedHitchinPair> {
    let v = f.vector().expect("line");
    let phi = pair.phi();
    let image = phi.apply(&v);
    let i = v.iter().position(|p| !p.is_zero()).expect("nonzero");
    let mu = image[i].exact_div(&v[i]).expect("invariant line");
    let rest = phi.matrix().trace().expect("square").minus(&mu);
    let ell = pair.ell();
    let h = pair.h().clone();
    let (deg_f, deg_q) = (f.degree(), pair.degree() - f.degree());
    let line_f = BundleP1::line(deg_f);
    let line_q = BundleP1::line(deg_q);
    let psi = pair.psi().matrix();
    let psi_f = if in_kernel {
        Mat::zeros(h.rank(), 1)
    } else {
        Mat::column((0..h.rank()).map(|k| psi.row(k).iter().zip(&v).fold(Poly::zero(), |a: Poly<Rational>, (x, y)| a.plus(&x.times(y)))).collect())
    };
    // ψ = ψ̄ ∘ q with q(x) = v₁x₂ − v₂x₁.
    let psi_q = if in_kernel {
        Mat::column(
            (0..h.rank())
                .map(|k| {
                    if !v[0].is_zero() {
                        psi.get(k, 1).exact_div(&v[0]).expect("ψ factors through E/F")
                    } else {
                        psi.get(k, 0).exact_div(&v[1]).expect("ψ factors through E/F").negate()
                    }
                })
                .collect(),
        )
    } else {
        Mat::zeros(h.rank(), 1)
    };
    let make = |line: &BundleP1, lambda: Poly<Rational>, psi: Mat<Poly<Rational>>| {
        let phi = SheafMap::new(line.clone(), line.clone(), ell, Mat::column(vec![lambda])).expect("eigenvalue in O(ℓ)");
        let psi = SheafMap::new(line.clone(), h.clone(), 0, psi).expect("induced framing respects bounds");
        FramedHitchinPair::new(pair.epsilon().clone(), phi, psi).expect("well formed")
    };
    vec![make(&line_f, mu, psi_f), make(&line_q, rest, psi_q)]
}

/// S-equivalence: equivalent associated graded objects.
pub fn s_equivalent(a: &FramedHitchinPair, b: &FramedHitchinPair, sigma: &SigmaParam) -> Result<bool, StabilityError> {
    let ga = jordan_holder(a, sigma)?.assembled();
    let gb = jordan_holder(b, sigma)?.assembled();
    Ok(equivalent_pairs(&ga, &gb))
}

/// Whether `(ε', φ', ψ') = (zε, zρφρ⁻¹, λψρ⁻¹)` for an automorphism `ρ` and
/// rational `z`, `λ` (the `λ` is absorbed into `ρ`).
///
/// With `ε = 0`, `z` is read off ratios of characteristic coefficients and
/// only rational candidates are tried. The determinant of the solution family
/// is tested at seeded random points.
pub fn equivalent_pairs(p: &FramedHitchinPair, q: &FramedHitchinPair) -> bool {
    if p.e() != q.e() || p.h() != q.h() || p.ell() != q.ell() {
        return false;
    }
    if p.epsilon().is_zero() != q.epsilon().is_zero() {
        return false;
    }
    let zs: Vec<Rational> = if !p.epsilon().is_zero() {
        vec![q.epsilon() / p.epsilon()]
    } else {
        scaling_candidates(p.phi(), q.phi())
    };
    zs.iter().any(|z| intertwiner_exists(p, q, z))
}

fn scaling_candidates(a: &SheafMap, b: &SheafMap) -> Vec<Rational> {
    let ca = a.matrix().charpoly().expect("square");
    let cb = b.matrix().charpoly().expect("square");
    let r = ca.len() - 1;
    // Coefficient of λ^{r−i} scales by z^i.
    for i in 1..=r {
        let (x, y) = (&ca[r - i], &cb[r - i]);
        if x.is_zero() != y.is_zero() {
            return Vec::new();
        }
        if x.is_zero() {
            continue;
        }
        let Some(ratio) = y.exact_div(x) else { return Vec::new() };
        if ratio.deg_i64() != 0 {
            return Vec::new();
        }
        let ratio = ratio.coeff(0);
        if i % 2 == 1 {
            // Odd roots are unique and keep the sign.
            let negative = ratio < Rational::zero();
            let magnitude = if negative { -ratio } else { ratio };
            return match rational_root(&magnitude, i as u32) {
                Some(root) if negative => vec![-root],
                Some(root) => vec![root],
                None => Vec::new(),
            };
        }
        return match rational_root(&ratio, i as u32) {
            Some(root) => vec![root.clone(), -root],
            None => Vec::new(),
        };
    }
    vec![Rational::one(), -Rational::one()]
}

/// Solves `φ_q ρ = z ρ φ_p`, `ψ_q ρ = ψ_p` for `ρ` with entries in
/// `H⁰(O(a_i − a_j))`, then looks for an invertible solution.
fn intertwiner_exists(p: &FramedHitchinPair, q: &FramedHitchinPair, z: &Rational) -> bool {
    let a = p.e().splitting().to_vec();
    let r = a.len();
    let hs = p.h().splitting().to_vec();
    let ell = p.ell();
    let mut unknowns: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..=(a[i] - a[j]).max(-1) {
                unknowns.push((i, j, k as usize));
            }
        }
    }
    let phi_len = |i: usize, j: usize| (a[i] + ell - a[j] + 1).max(0) as usize;
    let psi_len = |k: usize, j: usize| (hs[k] - a[j] + 1).max(0) as usize;
    let flatten = |phi_part: &Mat<Poly<Rational>>, psi_part: &Mat<Poly<Rational>>| -> Vec<Rational> {
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..phi_len(i, j) {
                    out.push(phi_part.get(i, j).coeff(k));
                }
            }
        }
        for k in 0..hs.len() {
            for j in 0..r {
                for c in 0..psi_len(k, j) {
                    out.push(psi_part.get(k, j).coeff(c));
                }
            }
        }
        out
    };
    let zp = Poly::constant(z.clone());
    let linear = |rho: &Mat<Poly<Rational>>| {
        let phi_part = q.phi().matrix().mul(rho).sub(&rho.mul(p.phi().matrix()).map(|x| x.times(&zp)));
        let psi_part = q.psi().matrix().mul(rho);
        flatten(&phi_part, &psi_part)
    };
    let rho_of = |x: &[Rational]| {
        let mut rho = Mat::<Poly<Rational>>::zeros(r, r);
        for (u, &(i, j, k)) in unknowns.iter().enumerate() {
            if !x[u].is_zero() {
                let cur = rho.get(i, j).plus(&Poly::monomial(x[u].clone(), k));
                rho.set(i, j, cur);
            }
        }
        rho
    };
    let columns: Vec<Vec<Rational>> = (0..unknowns.len())
        .map(|u| {
            let mut x = vec![Rational::zero(); unknowns.len()];
            x[u] = Rational::one();
            linear(&rho_of(&x))
        })
        .collect();
    let target = flatten(&Mat::zeros(r, r), p.psi().matrix());
    if unknowns.is_empty() {
        return false;
    }
    let system = Mat::from_fn(target.len(), unknowns.len(), |row, col| columns[col][row].clone());
    let Some(x0) = system.solve(&target) else { return false };
    let kernel = system.kernel();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..12 {
        let mut x = x0.clone();
        if attempt > 0 {
            for n in &kernel {
                let c = Rational::from_integer(rng.gen_range(-1000i64..=1000).into());
                for (xi, ni) in x.iter_mut().zip(n) {
                    *xi += &c * ni;
                }
            }
        }
        let det = rho_of(&x).det().expect("square");
        if !det.is_zero() {
            return true;
        }
    }
    false
}
