#![allow(dead_code)]

use framed_hitchin::exactcore::{qi, Mat, Poly, Rational, Ring};
use framed_hitchin::sheafp1::{BundleP1, SheafMap};
use framed_hitchin::stability::FramedHitchinPair;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn m(rows: &[&[i64]]) -> Mat<Rational> {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

pub fn constant_pair(split: &[i64], m0: i64, eps: i64, phi: &[&[i64]], psi: &[&[i64]]) -> FramedHitchinPair {
    let e = BundleP1::new(split.to_vec()).unwrap();
    FramedHitchinPair::constant(&e, &BundleP1::line(m0), 0, qi(eps), &m(phi), &m(psi)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coefficients in `{−2..2}`, each zero with probability about one half.
pub fn sparse_poly(rng: &mut ChaCha8Rng, degree: i64) -> Poly<Rational> {
    if degree < 0 {
        return Poly::zero();
    }
    Poly::new((0..=degree).map(|_| if rng.gen_bool(0.5) { qi(0) } else { qi(rng.gen_range(-2..=2)) }).collect())
}

/// A rank-2 pair on `O(a₁) ⊕ O(a₂)` with `H = O(m₀)` and twist `ℓ ∈ {0, 1}`; `ψ ≠ 0`.
pub fn random_rank_two(rng: &mut ChaCha8Rng) -> FramedHitchinPair {
    loop {
        let a1 = rng.gen_range(-1..=2);
        let a2 = a1 - rng.gen_range(0..=2);
        let ell = rng.gen_range(0..=1);
        let m0 = a1 + rng.gen_range(-1..=1);
        let e = BundleP1::new(vec![a1, a2]).unwrap();
        let a = [a1, a2];
        let phi = Mat::from_fn(2, 2, |i, j| sparse_poly(rng, a[i] + ell - a[j]));
        let psi = Mat::from_fn(1, 2, |_, j| sparse_poly(rng, m0 - a[j]));
        let phi = SheafMap::new(e.clone(), e.clone(), ell, phi).unwrap();
        let psi = SheafMap::new(e, BundleP1::line(m0), 0, psi).unwrap();
        if psi.is_zero() {
            continue;
        }
        let eps = if rng.gen_bool(0.5) { qi(1) } else { qi(0) };
        return FramedHitchinPair::new(eps, phi, psi).unwrap();
    }
}

/// `E = O(a) ⊕ O(b)`, `φ = diag(λ₁, λ₂)`, `ψ = (p, q)` into `O(m₀)`.
#[derive(Clone, Debug)]
pub struct DiagonalCase {
    pub a: i64,
    pub b: i64,
    pub m0: i64,
    pub eps: i64,
    pub lambda: [i64; 2],
    pub psi: [Poly<Rational>; 2],
    pub delta: i64,
}

impl DiagonalCase {
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        let a = rng.gen_range(-1..=1);
        let b = a - rng.gen_range(0..=2);
        let m0 = a + rng.gen_range(0..=1);
        let psi = [sparse_poly(rng, m0 - a), sparse_poly(rng, m0 - b)];
        DiagonalCase {
            a,
            b,
            m0,
            eps: rng.gen_range(0..=1),
            lambda: [rng.gen_range(0..=2), rng.gen_range(0..=2)],
            psi,
            delta: rng.gen_range(0..=1),
        }
    }

    pub fn pair(&self) -> FramedHitchinPair {
        let e = BundleP1::new(vec![self.a, self.b]).unwrap();
        let phi = Mat::from_fn(2, 2, |i, j| if i == j { Poly::constant(qi(self.lambda[i])) } else { Poly::zero() });
        let psi = Mat::from_rows(vec![self.psi.to_vec()]);
        FramedHitchinPair::new(
            qi(self.eps),
            SheafMap::new(e.clone(), e.clone(), 0, phi).unwrap(),
            SheafMap::new(e, BundleP1::line(self.m0), 0, psi).unwrap(),
        )
        .unwrap()
    }

    fn psi_zero(&self) -> bool {
        self.psi.iter().all(Ring::is_zero)
    }

    /// Degree of the kernel line: `a + b − (m₀ − deg D)` with `D` the common
    /// zeros of `p ∈ H⁰(O(m₀−a))` and `q ∈ H⁰(O(m₀−b))`, at infinity included.
    fn kernel_degree(&self) -> Option<i64> {
        let [p, q] = &self.psi;
        match (p.is_zero(), q.is_zero()) {
            (true, true) => None,
            (true, false) => Some(self.a),
            (false, true) => Some(self.b),
            (false, false) => {
                let at_infinity = (self.m0 - self.a - p.deg_i64()).min(self.m0 - self.b - q.deg_i64());
                let deg_d = p.gcd(q).deg_i64() + at_infinity;
                Some(self.a + self.b - (self.m0 - deg_d))
            }
        }
    }

    /// `(degree, in ker ψ)` for the invariant lines that matter: every invariant
    /// line of maximal degree in its class, plus the kernel line when invariant.
    pub fn invariant_lines(&self) -> Vec<(i64, bool)> {
        let [p, q] = &self.psi;
        let mut out = Vec::new();
        if self.lambda[0] != self.lambda[1] {
            out.push((self.a, p.is_zero()));
            out.push((self.b, q.is_zero()));
        } else {
            if self.a > self.b {
                out.push((self.a, p.is_zero()));
            } else {
                out.push((self.a, false));
            }
            if let Some(k) = self.kernel_degree() {
                out.push((k, true));
            }
        }
        out
    }

    /// Direct reading of the oriented definitions: `(semistable, stable)`.
    pub fn oriented_oracle(&self) -> (bool, bool) {
        let d = self.a + self.b;
        let lines = self.invariant_lines();
        let kernel: Option<(usize, i64)> = if self.psi_zero() {
            Some((2, d))
        } else {
            lines.iter().filter(|(_, k)| *k).map(|(deg, _)| (1, *deg)).max_by_key(|(_, deg)| *deg)
        };
        let Some((k_rank, k_deg)) = kernel else { return (true, true) };
        if self.delta == 0 {
            return (false, false);
        }
        // Equality in the kernel inequality for K: k_deg/k_rank = d/2 − σ/2.
        let sigma = Rational::from_int(d) - Rational::from_int(2 * k_deg) / Rational::from_int(k_rank as i64);
        if sigma < Rational::zero() {
            return (false, false);
        }
        let general = |deg: i64| Rational::from_int(deg) - &sigma - (Rational::from_int(d) - &sigma) / Rational::from_int(2);
        let semistable = lines.iter().all(|(deg, _)| general(*deg) <= Rational::zero());
        if !semistable || sigma.is_zero() {
            return (semistable, false);
        }
        if lines.iter().all(|(deg, _)| general(*deg) < Rational::zero()) {
            return (true, true);
        }
        let split = !self.psi_zero() && k_rank == 1 && self.has_complement(k_deg);
        let summands_stable = self.eps != 0 || (self.lambda[0] != 0 && self.lambda[1] != 0);
        (true, split && summands_stable)
    }

    fn has_complement(&self, k: i64) -> bool {
        if self.lambda[0] != self.lambda[1] {
            return true;
        }
        k == self.a || k == self.b
    }
}
