//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{rng, sparse_poly};
use framed_hitchin::cli::casebook::{self, Outcome};
use framed_hitchin::exactcore::{q, qi, Mat, Poly, Rational, Ring};
use framed_hitchin::matinv::{
    char_vector, find_destabilizing_subgroup, fit_trace_word, is_nilpotent_tuple, r2u2_invariants, r2u2_jacobian,
    same_weighted_class, word_list, MatrixTuple, WeightedPoint,
};
use framed_hitchin::oriented::{hitchin_map, realize_wall, walls_for_pair, TypeData};
use framed_hitchin::sheafp1::{image_and_kernel, BundleP1, SheafMap};
use framed_hitchin::stability::{
    equivalent_pairs, jordan_holder_with, lemma_obs_bounds, mu_max_bound, s_equivalent, sectional_semistable,
    sigma_semistable, FramedHitchinPair, SigmaParam, Status, TieBreak,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Ctx {
    /// `(checked, violations)` for the μ_max bound over semistable instances.
    bound: (u64, u64),
    first_bound_violation: Option<String>,
    /// Properly semistable `(pair, σ)` found by suites 2 and 8.
    proper: Vec<(FramedHitchinPair, Rational)>,
}

impl Ctx {
    fn record(&mut self, pair: &FramedHitchinPair, sigma: &Rational, status: Status) {
        if status == Status::Unstable {
            return;
        }
        self.bound.0 += 1;
        if !mu_max_bound(pair, sigma).1 {
            self.bound.1 += 1;
            self.first_bound_violation.get_or_insert_with(|| format!("{pair} at sigma = {sigma}"));
        }
    }

    fn status(&mut self, pair: &FramedHitchinPair, sigma: &Rational) -> Status {
        let s = sigma_semistable(pair, &SigmaParam::new(sigma.clone()).unwrap(), false).unwrap().status;
        self.record(pair, sigma, s);
        s
    }
}

type Outcome_ = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome_ {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome_ {
    let took = start.elapsed();
    check(took <= limit, format!("{detail}; {:.2}s of {}s", took.as_secs_f64(), limit.as_secs()))
}

fn ex1_pair(eps: &Rational, l: [&Rational; 4], s: [&Rational; 2]) -> FramedHitchinPair {
    casebook::ex1_pair(eps, l, s)
}

/// `ker ψ` is spanned by `v = (s₂, −s₁)`; it is invariant iff `v ∧ φv = 0`.
fn kernel_invariant(l: [&Rational; 4], s: [&Rational; 2]) -> bool {
    let v = [s[1].clone(), -s[0].clone()];
    let phiv = [l[0] * &v[0] + l[1] * &v[1], l[2] * &v[0] + l[3] * &v[1]];
    (&v[0] * &phiv[1] - &v[1] * &phiv[0]).is_zero()
}

fn residual(l: [&Rational; 4], s: [&Rational; 2]) -> Rational {
    let v = [s[1].clone(), -s[0].clone()];
    let phiv = [l[0] * &v[0] + l[1] * &v[1], l[2] * &v[0] + l[3] * &v[1]];
    &v[0] * &phiv[1] - &v[1] * &phiv[0]
}

fn grid() -> Vec<Rational> {
    (-2..=2).map(qi).collect()
}

fn for_ex1_grid(mut f: impl FnMut(&Rational, [&Rational; 4], [&Rational; 2])) {
    let g = grid();
    for e in &g {
        for a in &g {
            for b in &g {
                for c in &g {
                    for d in &g {
                        for s1 in &g {
                            for s2 in &g {
                                if !(s1.is_zero() && s2.is_zero()) {
                                    f(e, [a, b, c, d], [s1, s2]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn c1_counterexample(ctx: &mut Ctx) -> Outcome_ {
    let start = Instant::now();
    let (one, zero) = (qi(1), qi(0));
    let pair = ex1_pair(&one, [&zero, &one, &zero, &zero], [&one, &zero]);
    let mut all = true;
    let mut seen = Vec::new();
    for s in [q(1, 2), qi(1), qi(10), qi(1000)] {
        let st = ctx.status(&pair, &s);
        all &= st == Status::Stable;
        seen.push(format!("{s}: {st}"));
    }
    if !all {
        return Err(seen.join(", "));
    }
    within(Duration::from_secs(1), start, format!("stable at {}", seen.join(", ")))
}

fn c2_ex1_closed_form(ctx: &mut Ctx) -> Outcome_ {
    let start = Instant::now();
    let sigma = qi(1);
    let (mut total, mut agree) = (0u64, 0u64);
    let mut first = None;
    for_ex1_grid(|e, l, s| {
        let pair = ex1_pair(e, l, s);
        let st = ctx.status(&pair, &sigma);
        let tr = l[0] + l[3];
        let det = l[0] * l[3] - l[1] * l[2];
        let expect = !kernel_invariant(l, s) && (!e.is_zero() || !tr.is_zero() || !det.is_zero());
        total += 1;
        if (st != Status::Unstable) == expect {
            agree += 1;
        } else {
            first.get_or_insert_with(|| pair.to_string());
        }
        if st == Status::SemistableNotStable {
            ctx.proper.push((pair, sigma.clone()));
        }
    });
    if agree != total {
        return Err(format!("{agree}/{total} agree; first disagreement {}", first.unwrap()));
    }
    within(Duration::from_secs(120), start, format!("{agree}/{total} instances agree"))
}

fn c3_d_formula(_: &mut Ctx) -> Outcome_ {
    let mut pts = Vec::new();
    for_ex1_grid(|e, l, s| {
        if e.is_zero() {
            let [l11, l12, l21, l22] = l;
            let [s1, s2] = s;
            let d = s1 * s2 * (l11 + l22) - s2 * s2 * l21 - s1 * s1 * l12;
            pts.push((d, residual(l, s), format!("phi = [[{l11}, {l12}], [{l21}, {l22}]], psi = ({s1}, {s2})")));
        }
    });
    // The unit is recorded once: the most frequent ratio D / residual, so mismatches are as few as possible.
    let mut ratios = std::collections::BTreeMap::<Rational, usize>::new();
    for (d, r, _) in pts.iter().filter(|(_, r, _)| !r.is_zero()) {
        *ratios.entry(d / r).or_default() += 1;
    }
    let unit = ratios.into_iter().max_by_key(|(_, n)| *n).map(|(u, _)| u).unwrap();
    let bad: Vec<_> = pts.iter().filter(|(d, r, _)| *d != &unit * r).collect();
    match bad.first() {
        None => Ok(format!("D = {unit} * residual on all {} points", pts.len())),
        Some((d, r, w)) => Err(format!(
            "D != {unit} * residual on {}/{} points; e.g. {w}: D = {d}, residual = {r}",
            bad.len(),
            pts.len()
        )),
    }
}

fn random_rational(r: &mut ChaCha8Rng) -> Rational {
    q(r.gen_range(-9..=9), r.gen_range(1..=5))
}

fn c4_fibers(ctx: &mut Ctx) -> Outcome_ {
    let mut r = rng(4);
    let (one, zero) = (qi(1), qi(0));
    let mut ok = 0;
    let mut first = None;
    for _ in 0..50 {
        let l0 = random_rational(&mut r);
        let mut l1 = random_rational(&mut r);
        // (0; 0, 0) is not a point of the weighted projective space.
        if l0.is_zero() && l1.is_zero() {
            l1 = qi(1);
        }
        let mut l2 = random_rational(&mut r);
        if l2 == l1 {
            l2 += qi(1);
        }
        let generic = ex1_pair(&l0, [&l1, &zero, &zero, &l2], [&one, &one]);
        let diag = ex1_pair(&l0, [&l1, &one, &zero, &l1], [&one, &zero]);
        let expect_generic = WeightedPoint { values: vec![l0.clone(), &l1 + &l2, &l1 * &l2], weights: vec![1, 1, 2] };
        let expect_diag = WeightedPoint { values: vec![l0.clone(), &l1 * qi(2), &l1 * &l1], weights: vec![1, 1, 2] };
        let mut good = true;
        for (p, expect) in [(generic, expect_generic), (diag, expect_diag)] {
            good &= ctx.status(&p, &qi(1)) != Status::Unstable;
            good &= hitchin_map(&p).is_ok_and(|h| h.raw == expect && same_weighted_class(&h.raw, &expect));
            if !good {
                first.get_or_insert_with(|| p.to_string());
            }
        }
        ok += usize::from(good);
    }
    check(ok == 50, format!("{ok}/50 samples{}", first.map(|p| format!("; first failure {p}")).unwrap_or_default()))
}

/// A pair of type `(d, 2, O, O(m₀), *)`: `φ` maps into `ker ψ`.
fn star_pair(r: &mut ChaCha8Rng, d: i64, m0: i64) -> Option<FramedHitchinPair> {
    let a1 = d.div_euclid(2) + d.rem_euclid(2) + r.gen_range(0..=2);
    let a = [a1, d - a1];
    let e = BundleP1::new(a.to_vec()).ok()?;
    let psi = Mat::from_rows(vec![a.iter().map(|&aj| sparse_poly(r, m0 - aj)).collect()]);
    let psi = SheafMap::new(e.clone(), BundleP1::line(m0), 0, psi).ok()?;
    if psi.is_zero() {
        return None;
    }
    // (ψ₂, −ψ₁) spans ker ψ up to saturation, so φ = (ψ₂, −ψ₁)ᵀ·w has ψφ = 0.
    let v = [psi.entry(0, 1).clone(), psi.entry(0, 0).negate()];
    let g = v[0].gcd(&v[1]);
    let v = [v[0].exact_div(&g).unwrap(), v[1].exact_div(&g).unwrap()];
    // The saturated line is O(k) with k the largest twist keeping every v_i a section.
    let k = (0..2).filter(|&i| !v[i].is_zero()).map(|i| a[i] - v[i].deg_i64()).min()?;
    let w: Vec<Poly<Rational>> = a.iter().map(|&aj| sparse_poly(r, k - aj)).collect();
    let phi = Mat::from_fn(2, 2, |i, j| v[i].times(&w[j]));
    let phi = SheafMap::new(e.clone(), e, 0, phi).ok()?;
    FramedHitchinPair::new(qi(r.gen_range(0..=1)), phi, psi).ok()
}

fn c5_star_pairs(ctx: &mut Ctx) -> Outcome_ {
    let start = Instant::now();
    let mut r = rng(5);
    let types: Vec<(i64, i64)> = (-2..=2).flat_map(|d| (0..=3).map(move |m| (d, m))).collect();
    let (mut sampled, mut above, mut ss, mut module_ok) = (0, 0, 0, 0);
    let mut first = None;
    for &(d, m0) in &types {
        let mut made = 0;
        while made < 10 {
            let Some(p) = star_pair(&mut r, d, m0) else { continue };
            assert!(p.psi().matrix().mul(p.phi().matrix()).is_zero(), "not a *-pair");
            made += 1;
            sampled += 1;
            let deg_d = m0 - image_and_kernel(p.psi()).unwrap().image_degree;
            let (cap, sigma_prime) = lemma_obs_bounds(d, m0, deg_d);
            // A negative bound is exceeded by every σ > 0; 1/7 stands in then.
            let s = std::cmp::max(&cap + q(1, 7), q(1, 7));
            if ctx.status(&p, &s) != Status::Unstable {
                above += 1;
                first.get_or_insert_with(|| p.to_string());
            }
            let mut semistable_somewhere = false;
            for k in 1..=(2 * (2 * m0 - d)).max(0) {
                semistable_somewhere |= ctx.status(&p, &q(k, 2)) != Status::Unstable;
            }
            if semistable_somewhere {
                ss += 1;
                let module = p
                    .with_phi(SheafMap::zero(p.e().clone(), p.e().clone(), 0))
                    .unwrap()
                    .with_epsilon(qi(1));
                if sigma_prime > Rational::zero() && ctx.status(&module, &sigma_prime) != Status::Unstable {
                    module_ok += 1;
                }
            }
        }
    }
    if above > 0 || module_ok != ss {
        return Err(format!(
            "{above}/{sampled} semistable above the bound{}; {module_ok}/{ss} framed modules semistable at sigma'",
            first.map(|p| format!(" (first {p})")).unwrap_or_default()
        ));
    }
    within(
        Duration::from_secs(60),
        start,
        format!("0/{sampled} semistable above 2m0 - d; {module_ok}/{ss} framed modules semistable at sigma'"),
    )
}

/// Nilpotent pair of 2×2 matrices: a common kernel vector whose span contains both images.
fn nilpotent_by_hand(a: &Mat<Rational>, b: &Mat<Rational>) -> bool {
    let mut candidates = a.kernel();
    candidates.extend(b.kernel());
    if a.is_zero() && b.is_zero() {
        return true;
    }
    candidates.iter().any(|v| {
        let kills = |m: &Mat<Rational>| (0..2).all(|i| (m.get(i, 0) * &v[0] + m.get(i, 1) * &v[1]).is_zero());
        let into = |m: &Mat<Rational>| {
            (0..2).all(|j| (m.get(0, j) * &v[1] - m.get(1, j) * &v[0]).is_zero())
        };
        kills(a) && kills(b) && into(a) && into(b)
    })
}

fn c6_nullcone(_: &mut Ctx) -> Outcome_ {
    let start = Instant::now();
    let vals = [qi(-1), qi(0), qi(1)];
    let (mut total, mut agree, mut nilpotent) = (0, 0, 0);
    let mut first = None;
    for code in 0..3usize.pow(8) {
        let mut c = code;
        let mut e = Vec::with_capacity(8);
        for _ in 0..8 {
            e.push(vals[c % 3].clone());
            c /= 3;
        }
        let a = Mat::from_rows(vec![vec![e[0].clone(), e[1].clone()], vec![e[2].clone(), e[3].clone()]]);
        let b = Mat::from_rows(vec![vec![e[4].clone(), e[5].clone()], vec![e[6].clone(), e[7].clone()]]);
        let by_hand = nilpotent_by_hand(&a, &b);
        let t = MatrixTuple::new(vec![a, b]).unwrap();
        let nil = is_nilpotent_tuple(&t);
        let cv_zero = char_vector(&t, qi(0)).unwrap().is_zero();
        let ops = find_destabilizing_subgroup(&t).is_some();
        total += 1;
        nilpotent += usize::from(nil);
        if nil == cv_zero && cv_zero == ops && ops == by_hand {
            agree += 1;
        } else {
            first.get_or_insert(code);
        }
    }
    if agree != total {
        return Err(format!("{agree}/{total} agree; first disagreement at code {}", first.unwrap()));
    }
    within(Duration::from_secs(300), start, format!("{agree}/{total} pairs agree on all routes ({nilpotent} nilpotent)"))
}

fn random_tuple(r: &mut ChaCha8Rng) -> MatrixTuple<Rational> {
    let mut m = || Mat::from_fn(2, 2, |_, _| random_rational(r));
    MatrixTuple::new(vec![m(), m()]).unwrap()
}

fn c7_generators(_: &mut Ctx) -> Outcome_ {
    let mut r = rng(7);
    let fit_samples: Vec<_> = (0..40).map(|_| random_tuple(&mut r)).collect();
    let fresh: Vec<_> = (0..200).map(|_| random_tuple(&mut r)).collect();
    let words = word_list(2, 2).unwrap();
    let mut reproduced = 0;
    let mut failed = Vec::new();
    for w in &words {
        let Some(poly) = fit_trace_word(w, &fit_samples).unwrap() else {
            failed.push(format!("{:?} (no fit)", w.letters()));
            continue;
        };
        let ok = fresh.iter().all(|t| {
            let gens = r2u2_invariants(t).unwrap();
            poly.eval(&gens) == framed_hitchin::matinv::eval_word(t, w).unwrap().trace().unwrap()
        });
        if ok {
            reproduced += 1;
        } else {
            failed.push(format!("{:?}", w.letters()));
        }
    }
    let jac = r2u2_jacobian(&random_tuple(&mut r)).unwrap().rank();
    check(
        failed.is_empty() && jac == 5,
        format!("{reproduced}/{} words reproduced on 200 fresh tuples; Jacobian rank {jac}{}", words.len(), if failed.is_empty() { String::new() } else { format!("; failed {failed:?}") }),
    )
}

/// Rank 2 with `a₁ ≤ m₀`, so that with `C = m₀` every breakpoint lies below `σ_∞ = 2m₀ − d`.
fn chamber_instance(r: &mut ChaCha8Rng) -> FramedHitchinPair {
    loop {
        let a1 = r.gen_range(-1..=2);
        let a2 = a1 - r.gen_range(0..=2);
        let m0 = a1 + r.gen_range(0..=1);
        let ell = r.gen_range(0..=1);
        let e = BundleP1::new(vec![a1, a2]).unwrap();
        let a = [a1, a2];
        let phi = Mat::from_fn(2, 2, |i, j| sparse_poly(r, a[i] + ell - a[j]));
        let psi = Mat::from_fn(1, 2, |_, j| sparse_poly(r, m0 - a[j]));
        let psi = SheafMap::new(e.clone(), BundleP1::line(m0), 0, psi).unwrap();
        if psi.is_zero() {
            continue;
        }
        let phi = SheafMap::new(e.clone(), e, ell, phi).unwrap();
        return FramedHitchinPair::new(qi(r.gen_range(0..=1)), phi, psi).unwrap();
    }
}

fn c8_chambers(ctx: &mut Ctx) -> Outcome_ {
    let start = Instant::now();
    let mut r = rng(8);
    let (mut intervals, mut walls, mut realized, mut own) = (0, 0, 0, 0);
    let mut problems = Vec::new();
    for _ in 0..100 {
        let p = chamber_instance(&mut r);
        let c = qi(p.h().degree());
        let (dec, complete) = walls_for_pair(&p, &c).unwrap();
        if !complete {
            problems.push(format!("incomplete for {p}"));
        }
        for iv in &dec.intervals {
            let hi = iv.upper.clone().unwrap_or_else(|| &iv.lower + qi(3));
            let width = &hi - &iv.lower;
            let s1 = &iv.lower + &width / qi(4);
            let s2 = &iv.lower + &width * q(3, 4);
            intervals += 1;
            if ctx.status(&p, &s1) != ctx.status(&p, &s2) {
                problems.push(format!("{p}: verdict changes inside ({}, {hi})", iv.lower));
            }
        }
        let t = TypeData::of(&p);
        for w in &dec.walls {
            walls += 1;
            match realize_wall(&t, &w.sigma) {
                Some(q) if ctx.status(&q, &w.sigma) == Status::SemistableNotStable => {
                    realized += 1;
                    ctx.proper.push((q, w.sigma.clone()));
                }
                _ => problems.push(format!("wall {} of {p} not realized", w.sigma)),
            }
            if ctx.status(&p, &w.sigma) == Status::SemistableNotStable {
                own += 1;
                ctx.proper.push((p.clone(), w.sigma.clone()));
            }
        }
    }
    if !problems.is_empty() {
        return Err(format!("{} problems; first: {}", problems.len(), problems[0]));
    }
    within(
        Duration::from_secs(120),
        start,
        format!("{intervals} intervals constant; {realized}/{walls} walls realized ({own} properly semistable at their own wall)"),
    )
}

fn c9_boundedness(ctx: &mut Ctx) -> Outcome_ {
    let (checked, bad) = ctx.bound;
    check(
        bad == 0 && checked > 0,
        format!(
            "{}/{checked} semistable instances from suites 1-8 satisfy mu_max(E) <= max(mu + sigma, mu + (r-1)^2/r * l){}",
            checked - bad,
            ctx.first_bound_violation.as_ref().map(|s| format!("; first violation {s}")).unwrap_or_default()
        ),
    )
}

fn c10_jordan_holder(ctx: &mut Ctx) -> Outcome_ {
    let mut problems = Vec::new();
    let mut nontrivial = 0;
    for (p, s) in &ctx.proper {
        let sigma = SigmaParam::new(s.clone()).unwrap();
        let (canon, rev) = match (
            jordan_holder_with(p, &sigma, TieBreak::Canonical),
            jordan_holder_with(p, &sigma, TieBreak::Reversed),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                problems.push(format!("{p}: {:?} / {:?}", a.err(), b.err()));
                continue;
            }
        };
        nontrivial += usize::from(!canon.is_trivial());
        let gr = canon.assembled();
        let again = jordan_holder_with(&gr, &sigma, TieBreak::Canonical).map(|j| j.assembled());
        if !again.as_ref().is_ok_and(|g| equivalent_pairs(g, &gr)) {
            problems.push(format!("{p}: gr is not idempotent"));
        }
        if !s_equivalent(&gr, &rev.assembled(), &sigma).unwrap_or(false) {
            problems.push(format!("{p}: tie-break orders disagree"));
        }
        let same_point = match (hitchin_map(p), hitchin_map(&gr)) {
            (Ok(a), Ok(b)) => a.normalized == b.normalized,
            (a, b) => a.is_err() && b.is_err(),
        };
        if !same_point {
            problems.push(format!("{p}: Hitchin point differs on gr"));
        }
    }
    check(
        problems.is_empty() && !ctx.proper.is_empty(),
        format!(
            "{} properly semistable instances ({nontrivial} with nontrivial filtrations){}",
            ctx.proper.len(),
            problems.first().map(|s| format!("; {} problems, first {s}", problems.len())).unwrap_or_default()
        ),
    )
}

fn c11_sectional(_: &mut Ctx) -> Outcome_ {
    let mut r = rng(11);
    let mut worst_n0 = 3;
    let mut at_eight = 0;
    let mut first = None;
    for _ in 0..50 {
        let p = chamber_instance(&mut r);
        let s = [q(1, 3), qi(1), q(5, 2)][r.gen_range(0..3)].clone();
        let param = SigmaParam::new(s.clone()).unwrap();
        let base = sigma_semistable(&p, &param, false).unwrap().status;
        let agree: Vec<bool> =
            (3..=8).map(|n| sectional_semistable(&p, &param, n).map(|v| v.status == base).unwrap_or(false)).collect();
        let n0 = (0..agree.len()).find(|&i| agree[i..].iter().all(|&x| x)).map(|i| i as i64 + 3);
        match n0 {
            Some(n) => {
                at_eight += 1;
                worst_n0 = worst_n0.max(n);
            }
            None => {
                first.get_or_insert_with(|| format!("{p} at sigma = {s}"));
            }
        }
    }
    check(
        at_eight == 50,
        format!("{at_eight}/50 agree at n = 8; empirical n0 = {worst_n0}{}", first.map(|s| format!("; first disagreement {s}")).unwrap_or_default()),
    )
}

fn c12_master(_: &mut Ctx) -> Outcome_ {
    let lines = casebook::master(1000, 12);
    let asserted: Vec<_> = lines.iter().filter(|l| l.outcome != Outcome::Info).collect();
    let reported: Vec<String> = lines.iter().filter(|l| l.outcome == Outcome::Info).map(|l| l.detail.clone()).collect();
    let failed: Vec<String> = asserted.iter().filter(|l| l.outcome == Outcome::Fail).map(|l| l.to_string()).collect();
    let detail = format!(
        "{}; reported: {}",
        asserted.iter().map(|l| l.detail.clone()).collect::<Vec<_>>().join("; "),
        reported.join("; ")
    );
    if failed.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: Vec<(&str, fn(&mut Ctx) -> Outcome_)> = vec![
        ("counterexample stable for every sigma", c1_counterexample),
        ("ex1 closed form", c2_ex1_closed_form),
        ("ex1 printed D formula", c3_d_formula),
        ("ex1 Hitchin fibers", c4_fibers),
        ("star pairs above 2m0 - d", c5_star_pairs),
        ("nullcone equivalence", c6_nullcone),
        ("trace-word generators (r = 2, u = 2)", c7_generators),
        ("chamber lemma", c8_chambers),
        ("boundedness", c9_boundedness),
        ("S-equivalence and Jordan-Hoelder", c10_jordan_holder),
        ("sectional stability", c11_sectional),
        ("casebook master", c12_master),
    ];
    let mut ctx = Ctx::default();
    let mut failures = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(|| f(&mut ctx)))
            .unwrap_or_else(|e| Err(format!("panicked: {}", e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} criteria, {failures} failed", 12);
    if failures > 0 {
        std::process::exit(1);
    }
}
