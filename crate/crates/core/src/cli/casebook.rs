//! Scripted scenarios reproducing the worked examples. Every assertion becomes
//! a report line; a failing line is an answer, not an error.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactcore::{fmt_rational, q, Mat, Poly, Rational, Ring};
use crate::matinv::invariant_monomials;
use crate::oriented::hitchin_coefficients;
use crate::sheafp1::{image_and_kernel, BundleP1, SheafMap};
use crate::stability::{lemma_obs_bounds, sigma_semistable, FramedHitchinPair, SigmaParam, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseLine {
    pub outcome: Outcome,
    pub name: String,
    pub detail: String,
}

impl fmt::Display for CaseLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Info => "INFO",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn line(ok: bool, name: &str, detail: String) -> CaseLine {
    CaseLine { outcome: if ok { Outcome::Pass } else { Outcome::Fail }, name: name.into(), detail }
}

fn info(name: &str, detail: String) -> CaseLine {
    CaseLine { outcome: Outcome::Info, name: name.into(), detail }
}

fn qi(n: i64) -> Rational {
    Rational::from_int(n)
}

fn trivial_rank_two() -> BundleP1 {
    BundleP1::new(vec![0, 0]).expect("descending")
}

/// `E = O ⊕ O`, `H = L = O`, constant entries.
pub fn ex1_pair(eps: &Rational, phi: [&Rational; 4], psi: [&Rational; 2]) -> FramedHitchinPair {
    let m = Mat::from_rows(vec![vec![phi[0].clone(), phi[1].clone()], vec![phi[2].clone(), phi[3].clone()]]);
    let p = Mat::from_rows(vec![vec![psi[0].clone(), psi[1].clone()]]);
    FramedHitchinPair::constant(&trivial_rank_two(), &BundleP1::line(0), 0, eps.clone(), &m, &p).expect("valid shape")
}

/// `det(v, φv)` for `v = (s₂, −s₁)` spanning `ker ψ`; zero iff `ker ψ` is `φ`-invariant.
pub fn kernel_residual(l: [&Rational; 4], s: [&Rational; 2]) -> Rational {
    let [l11, l12, l21, l22] = l;
    let [s1, s2] = s;
    s1 * s2 * (l11 - l22) - l12 * s1 * s1 + l21 * s2 * s2
}

/// The expansion `s₁s₂(l₁₁+l₂₂) − s₂²l₂₁ − s₁²l₁₂` as printed with the example.
pub fn printed_d(l: [&Rational; 4], s: [&Rational; 2]) -> Rational {
    let [l11, l12, l21, l22] = l;
    let [s1, s2] = s;
    s1 * s2 * (l11 + l22) - s2 * s2 * l21 - s1 * s1 * l12
}

fn module_kernel_invariant(pair: &FramedHitchinPair) -> bool {
    image_and_kernel(pair.psi())
        .ok()
        .and_then(|ik| ik.kernel)
        .is_some_and(|k| k.is_invariant(pair.phi()))
}

pub fn ex1(grid: i64) -> Vec<CaseLine> {
    let vals: Vec<Rational> = (-grid..=grid).map(qi).collect();
    let sigma = SigmaParam::new(qi(1)).expect("positive");
    let (mut total, mut agree, mut stable_when_ss, mut semistable) = (0u64, 0u64, 0u64, 0u64);
    let mut first_disagreement = None;
    let (mut residual_agree, mut d_total) = (0u64, 0u64);
    let mut residuals = Vec::new();
    for e in &vals {
        for l11 in &vals {
            for l12 in &vals {
                for l21 in &vals {
                    for l22 in &vals {
                        for s1 in &vals {
                            for s2 in &vals {
                                if s1.is_zero() && s2.is_zero() {
                                    continue;
                                }
                                let l = [l11, l12, l21, l22];
                                let s = [s1, s2];
                                let pair = ex1_pair(e, l, s);
                                let v = sigma_semistable(&pair, &sigma, false).expect("rank 2 is complete");
                                let r = kernel_residual(l, s);
                                let tr = l11 + l22;
                                let det = l11 * l22 - l12 * l21;
                                let expect = !r.is_zero() && (!e.is_zero() || !tr.is_zero() || !det.is_zero());
                                total += 1;
                                if v.is_semistable() == expect {
                                    agree += 1;
                                } else if first_disagreement.is_none() {
                                    first_disagreement = Some(pair.to_string());
                                }
                                if v.is_semistable() {
                                    semistable += 1;
                                    stable_when_ss += u64::from(v.status == Status::Stable);
                                }
                                if e.is_zero() {
                                    // The residual checks do not involve ε; one ε slice suffices.
                                    d_total += 1;
                                    residual_agree += u64::from(r.is_zero() == module_kernel_invariant(&pair));
                                    residuals.push((printed_d(l, s), r, pair.to_string()));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = vec![line(
        agree == total,
        "ex1 closed form",
        format!(
            "{agree}/{total} agree with [ker psi not invariant and (epsilon != 0 or phi not nilpotent)] at sigma = 1{}",
            first_disagreement.map(|p| format!("; first disagreement {p}")).unwrap_or_default()
        ),
    )];
    out.push(line(
        stable_when_ss == semistable,
        "ex1 semistable implies stable",
        format!("{stable_when_ss}/{semistable} semistable instances are stable"),
    ));
    out.extend(ex1_fibers(grid));
    out.push(line(
        residual_agree == d_total,
        "ex1 kernel residual",
        format!(
            "s1 s2 (l11 - l22) - l12 s1^2 + l21 s2^2 vanishes exactly when ker psi is invariant: {residual_agree}/{d_total}"
        ),
    ));
    // The unit is the most frequent ratio D / residual; the check is whether it fits every point.
    let mut ratios: Vec<Rational> = residuals.iter().filter(|(_, r, _)| !r.is_zero()).map(|(d, r, _)| d / r).collect();
    ratios.sort();
    let c = ratios
        .chunk_by(|a, b| a == b)
        .max_by_key(|g| g.len())
        .map_or_else(Rational::one, |g| g[0].clone());
    let mismatches: Vec<_> = residuals.iter().filter(|(d, r, _)| *d != &c * r).collect();
    let d_mismatch = mismatches.len();
    let detail = match mismatches.first().cloned() {
        None => format!("D = {} * residual on all {d_total} points", fmt_rational(&c)),
        Some((d, r, p)) => format!(
            "D != {} * residual on {d_mismatch}/{d_total} points; first: {p} has D = {}, residual = {}",
            fmt_rational(&c),
            fmt_rational(d),
            fmt_rational(r)
        ),
    };
    out.push(line(d_mismatch == 0, "ex1 printed D formula", detail));
    out
}

/// Fiber representatives map to the expected Hitchin points.
fn ex1_fibers(grid: i64) -> Vec<CaseLine> {
    let vals: Vec<Rational> = (-grid..=grid).map(qi).collect();
    let one = qi(1);
    let zero = qi(0);
    let sigma = SigmaParam::new(one.clone()).expect("positive");
    let (mut checked, mut ok) = (0u64, 0u64);
    for l0 in &vals {
        for l1 in &vals {
            for l2 in &vals {
                if l0.is_zero() && l1.is_zero() && l2.is_zero() {
                    continue;
                }
                let (pair, expect) = if l1 != l2 {
                    (ex1_pair(l0, [l1, &zero, &zero, l2], [&one, &one]), [l1 + l2, l1 * l2])
                } else {
                    (ex1_pair(l0, [l1, &one, &zero, l1], [&one, &zero]), [l1 * qi(2), l1 * l1])
                };
                let (eps, e) = hitchin_coefficients(&pair);
                let ss = sigma_semistable(&pair, &sigma, false).expect("rank 2").is_semistable();
                checked += 1;
                ok += u64::from(
                    ss && eps == *l0 && e[0].poly() == &Poly::constant(expect[0].clone())
                        && e[1].poly() == &Poly::constant(expect[1].clone()),
                );
            }
        }
    }
    vec![line(ok == checked, "ex1 fibers", format!("{ok}/{checked} representatives are semistable with the expected Hitchin point"))]
}

/// `(l₀, l₁₁, l₁₂, l₂₁, l₂₂, s₁, s₂, s₃)`.
pub type MasterPoint = [Rational; 8];

/// Hilbert–Mumford check with `λ(t) = diag(t, t⁻¹)` in a basis `(v, w)`: the
/// limit vanishes iff `l₀ = s₃ = 0`, `φ` is strictly upper triangular and
/// `ψ(v) = 0`. The line `v` must be `ker φ`, `ker ψ`, or arbitrary when both vanish.
pub fn master_nullform(p: &MasterPoint) -> bool {
    if !p[0].is_zero() || !p[7].is_zero() {
        return false;
    }
    let phi = Mat::from_rows(vec![vec![p[1].clone(), p[2].clone()], vec![p[3].clone(), p[4].clone()]]);
    let psi = Mat::from_rows(vec![vec![p[5].clone(), p[6].clone()]]);
    let mut lines = phi.kernel();
    lines.extend(psi.kernel());
    lines.push(vec![qi(1), qi(0)]);
    lines.iter().filter(|v| v.iter().any(|x| !x.is_zero())).any(|v| {
        let w = if v[0].is_zero() { vec![qi(1), qi(0)] } else { vec![qi(0), qi(1)] };
        let b = Mat::from_rows(vec![vec![v[0].clone(), w[0].clone()], vec![v[1].clone(), w[1].clone()]]);
        let binv = b.inverse().expect("independent columns");
        let moved = binv.mul(&phi).mul(&b);
        let framed = psi.mul(&b);
        moved.get(0, 0).is_zero() && moved.get(1, 1).is_zero() && moved.get(1, 0).is_zero() && framed.get(0, 0).is_zero()
    })
}

/// `H₀..H₄` with `H₃` the kernel residual.
pub fn master_h(p: &MasterPoint) -> [Rational; 5] {
    let l = [&p[1], &p[2], &p[3], &p[4]];
    [
        p[0].clone(),
        &p[1] + &p[4],
        &p[1] * &p[4] - &p[2] * &p[3],
        kernel_residual(l, [&p[5], &p[6]]),
        p[7].clone(),
    ]
}

/// A mix of uniform points, nullforms by construction, one-coordinate perturbations
/// of those, and nilpotent `φ` with a random `ψ`.
pub fn master_samples(n: usize, seed: u64) -> Vec<MasterPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| qi(rng.gen_range(-2..=2));
    (0..n)
        .map(|k| {
            if k % 4 == 0 {
                return std::array::from_fn(|_| small(&mut rng));
            }
            let (x, y) = (small(&mut rng), small(&mut rng));
            let (c, s) = (small(&mut rng), small(&mut rng));
            // φ = c·v·(−y, x) kills v = (x, y) and maps into it; ψ = s·(−y, x) kills v.
            let mut p: MasterPoint = [
                qi(0),
                -&c * &x * &y,
                &c * &x * &x,
                -&c * &y * &y,
                &c * &x * &y,
                -&s * &y,
                &s * &x,
                qi(0),
            ];
            match k % 4 {
                2 => {
                    let i = rng.gen_range(0..8);
                    p[i] += small(&mut rng);
                }
                3 => {
                    // Nilpotent φ with an unrelated framing.
                    p[5] = small(&mut rng);
                    p[6] = small(&mut rng);
                }
                _ => {}
            }
            p
        })
        .collect()
}

/// Exponents `(a, b)` with `H(z·l, w·s) = zᵃ wᵇ H(l, s)`, read off at `z = 2`, `w = 3`.
fn bidegree(h: usize, p: &MasterPoint) -> Option<(u32, u32)> {
    // ε and φ scale by z, ψ by w, and δ by w² since it pairs with det E.
    let scaled: MasterPoint = std::array::from_fn(|i| match i {
        0..=4 => &p[i] * qi(2),
        5 | 6 => &p[i] * qi(3),
        _ => &p[i] * qi(9),
    });
    let (a, b) = (&master_h(&scaled)[h], &master_h(p)[h]);
    if b.is_zero() {
        return None;
    }
    let ratio = a / b;
    (0..8u32).flat_map(|i| (0..8u32).map(move |j| (i, j))).find(|&(i, j)| {
        ratio == qi(2i64.pow(i)) * qi(3i64.pow(j))
    })
}

pub fn master(samples: usize, seed: u64) -> Vec<CaseLine> {
    let pts = master_samples(samples, seed);
    let mut agree = 0;
    let mut nullforms = 0;
    let mut printed_mismatch = 0;
    let mut first_printed = None;
    for p in &pts {
        let direct = master_nullform(p);
        let common_zero = master_h(p).iter().all(Ring::is_zero);
        nullforms += usize::from(direct);
        agree += usize::from(direct == common_zero);
        let l = [&p[1], &p[2], &p[3], &p[4]];
        let mut printed = master_h(p);
        printed[3] = printed_d(l, [&p[5], &p[6]]);
        if printed.iter().all(Ring::is_zero) != direct {
            printed_mismatch += 1;
            first_printed.get_or_insert_with(|| p.iter().map(fmt_rational).collect::<Vec<_>>().join(", "));
        }
    }
    let mut out = vec![line(
        agree == pts.len(),
        "master nullforms",
        format!("{agree}/{} sampled points agree ({nullforms} nullforms) with the common zeros of H0..H4", pts.len()),
    )];
    out.push(info(
        "master printed D",
        format!(
            "with H3 := printed D the common zeros differ from the nullforms on {printed_mismatch}/{} points{}",
            pts.len(),
            first_printed.map(|s| format!("; first ({s})")).unwrap_or_default()
        ),
    ));
    let monos = invariant_monomials(&[1, 1, 2, -2], 3);
    let names = ["H0", "H1", "H2", "H3"];
    let render = |e: &Vec<u32>| {
        e.iter()
            .zip(names)
            .filter(|(k, _)| **k > 0)
            .map(|(k, n)| if *k == 1 { n.to_string() } else { format!("{n}^{k}") })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let pattern = [vec![2, 0, 0, 1], vec![0, 2, 0, 1], vec![0, 0, 1, 1]];
    out.push(line(
        pattern.iter().all(|p| monos.contains(p)),
        "master invariant monomials",
        format!(
            "weights (1, 1, 2, -2), degree <= 3: {{{}}}; expected g0 H3, g1 H3, g2 H3 with g0 = H0^2, g1 = H1^2, g2 = H2",
            monos.iter().map(render).collect::<Vec<_>>().join(", ")
        ),
    ));
    let generic: MasterPoint = [qi(1), qi(2), qi(3), qi(5), qi(7), qi(1), qi(2), qi(3)];
    let weights: Vec<String> = (0..5)
        .map(|h| match bidegree(h, &generic) {
            Some((a, b)) => format!("H{h}: ({a}, {b})"),
            None => format!("H{h}: ?"),
        })
        .collect();
    out.push(info(
        "master weights",
        format!(
            "bidegrees in ((epsilon, phi), (psi, delta)): {}; the stated weights 1, 1, 2, -2 for H0..H3 do not match these",
            weights.join(", ")
        ),
    ));
    out
}

fn random_poly(rng: &mut ChaCha8Rng, degree: i64) -> Poly<Rational> {
    if degree < 0 {
        return Poly::zero();
    }
    Poly::new((0..=degree).map(|_| qi(rng.gen_range(-2..=2))).collect())
}

/// A random rank-2 pair of type `(d, 2, O, O(m₀), *)`: `φ` factors through `ker ψ`.
pub fn random_star_pair(rng: &mut ChaCha8Rng, d: i64, m0: i64) -> Option<FramedHitchinPair> {
    let a1 = d.div_euclid(2) + d.rem_euclid(2) + rng.gen_range(0..=2);
    let a = [a1, d - a1];
    let e = BundleP1::new(a.to_vec()).ok()?;
    let h = BundleP1::line(m0);
    let psi_m = Mat::from_rows(vec![a.iter().map(|&aj| random_poly(rng, m0 - aj)).collect()]);
    let psi = SheafMap::new(e.clone(), h, 0, psi_m).ok()?;
    if psi.is_zero() {
        return None;
    }
    let k = image_and_kernel(&psi).ok()?.kernel?;
    let v = k.vector()?;
    let w: Vec<Poly<Rational>> = a.iter().map(|&aj| random_poly(rng, k.degree() - aj)).collect();
    let phi_m = Mat::from_fn(2, 2, |i, j| v[i].times(&w[j]));
    let phi = SheafMap::new(e.clone(), e, 0, phi_m).ok()?;
    let eps = qi(rng.gen_range(0..=1));
    FramedHitchinPair::new(eps, phi, psi).ok()
}

pub fn obs(types: &[(i64, i64)], per_type: usize, seed: u64) -> Vec<CaseLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sampled, mut above_ss) = (0, 0);
    let (mut ss_cases, mut framed_ok) = (0, 0);
    let mut first_bad = None;
    for &(d, m0) in types {
        let mut made = 0;
        let mut attempts = 0;
        while made < per_type && attempts < 50 * per_type {
            attempts += 1;
            let Some(pair) = random_star_pair(&mut rng, d, m0) else { continue };
            made += 1;
            sampled += 1;
            let deg_d = m0 - image_and_kernel(pair.psi()).expect("psi != 0").image_degree;
            let (cap, sigma_prime) = lemma_obs_bounds(d, m0, deg_d);
            // Every σ > 0 exceeds a negative bound; 1/7 stands in for it then.
            let above = std::cmp::max(&cap + q(1, 7), q(1, 7));
            if sigma_semistable(&pair, &SigmaParam::new(above).expect("positive"), false).expect("rank 2").is_semistable() {
                above_ss += 1;
                first_bad.get_or_insert_with(|| pair.to_string());
            }
            let steps = (2 * (2 * m0 - d)).max(0);
            let ss_somewhere = (1..=steps).any(|k| {
                let s = SigmaParam::new(q(k, 2)).expect("positive");
                sigma_semistable(&pair, &s, false).expect("rank 2").is_semistable()
            });
            if ss_somewhere {
                ss_cases += 1;
                // A framed module is the pair with φ = 0; ε = 1 keeps it out of the nilpotent exclusion.
                let module = pair
                    .with_phi(SheafMap::zero(pair.e().clone(), pair.e().clone(), 0))
                    .expect("same shape")
                    .with_epsilon(qi(1));
                let ok = sigma_prime > Rational::zero()
                    && sigma_semistable(&module, &SigmaParam::new(sigma_prime).expect("positive"), false)
                        .expect("rank 2")
                        .is_semistable();
                framed_ok += usize::from(ok);
            }
        }
    }
    vec![
        line(
            above_ss == 0,
            "obs i",
            format!(
                "{above_ss}/{sampled} sampled *-pairs are semistable at sigma = max(2 m0 - d, 0) + 1/7{}",
                first_bad.map(|p| format!("; first {p}")).unwrap_or_default()
            ),
        ),
        line(
            framed_ok == ss_cases,
            "obs ii",
            format!("{framed_ok}/{ss_cases} semistable *-pairs give a framed module semistable at sigma' = -d - 2 deg D + 2 m0"),
        ),
    ]
}

pub fn counterexample(sigmas: &[Rational]) -> Vec<CaseLine> {
    let (one, zero) = (qi(1), qi(0));
    let pair = ex1_pair(&one, [&zero, &one, &zero, &zero], [&one, &zero]);
    sigmas
        .iter()
        .map(|s| {
            let v = sigma_semistable(&pair, &SigmaParam::new(s.clone()).expect("positive"), false).expect("rank 2");
            line(v.status == Status::Stable, "counterexample", format!("sigma = {}: {}", fmt_rational(s), v.status))
        })
        .collect()
}

pub fn counterexample_sigmas() -> Vec<Rational> {
    vec![q(1, 2), qi(1), qi(10), qi(1000)]
}

pub fn obs_types() -> Vec<(i64, i64)> {
    (-2..=2).flat_map(|d| (0..=3).map(move |m0| (d, m0))).collect()
}
