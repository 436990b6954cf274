//! Brute-force cross-check for rank 2 with central `φ`, where every line is
//! invariant and the fast path only inspects two of them.

use std::cmp::Ordering;

use crate::exactcore::{Poly, Rational, Ring};
use crate::sheafp1::{invariant_line_subbundles, InvariantLines, Subsheaf};

use super::{compare_inequality, FramedHitchinPair, Inequality, Status};

/// Status from every saturated line whose spanning vector has coefficients in
/// `[−bound, bound]`, for degrees from `a₁` down past the destabilizing range,
/// together with the line through `(ψ₂, −ψ₁)`. `None` unless the pair is rank 2
/// with central `φ` and `H` a line bundle.
pub fn brute_force_lines(pair: &FramedHitchinPair, sigma: &Rational, bound: i64) -> Option<Status> {
    if pair.rank() != 2 || pair.h().rank() != 1 {
        return None;
    }
    if !matches!(invariant_line_subbundles(pair.phi()).ok()?, InvariantLines::AllLineSubbundlesInvariant { .. }) {
        return None;
    }
    if pair.is_excluded() {
        return Some(Status::Unstable);
    }
    let e = pair.e();
    let (r, d) = (2, pair.degree());
    let a = e.splitting().to_vec();
    // Below d/2 − |σ|/2 − 1 no line can reach equality in either inequality.
    let floor = (Rational::from_int(d) - num_traits::Signed::abs(sigma)) / Rational::from_int(2) - Rational::one();
    let lowest: i64 = i64::try_from(&floor.floor().to_integer()).ok()?;
    let mut tight = false;
    let mut check = |line: &Subsheaf| -> bool {
        let checks: &[Inequality] = if line.is_in_kernel_of(pair.psi()) {
            &[Inequality::KernelPsi, Inequality::General]
        } else {
            &[Inequality::General]
        };
        for &ineq in checks {
            match compare_inequality(r, d, 1, line.degree(), sigma, ineq) {
                Ordering::Greater => return false,
                Ordering::Equal => tight = true,
                Ordering::Less => {}
            }
        }
        true
    };
    let psi = pair.psi().matrix();
    if !pair.psi().is_zero() {
        let kernel = [psi.get(0, 1).clone(), psi.get(0, 0).negate()];
        if !check(&Subsheaf::line_through(e, &kernel).ok()?) {
            return Some(Status::Unstable);
        }
    }
    for c in (lowest..=a[0]).rev() {
        let lens: Vec<usize> = a.iter().map(|ai| (ai - c + 1).max(0) as usize).collect();
        let total: usize = lens.iter().sum();
        if total == 0 || total > 10 {
            continue;
        }
        let span = (2 * bound + 1) as usize;
        let count = span.checked_pow(total as u32)?;
        for idx in 0..count {
            let mut x = idx;
            let mut coeffs = Vec::with_capacity(total);
            for _ in 0..total {
                coeffs.push(Rational::from_int((x % span) as i64 - bound));
                x /= span;
            }
            let (first, second) = coeffs.split_at(lens[0]);
            let v = vec![Poly::new(first.to_vec()), Poly::new(second.to_vec())];
            if v.iter().all(Ring::is_zero) {
                continue;
            }
            let line = Subsheaf::line_through(e, &v).ok()?;
            if line.degree() == c && !check(&line) {
                return Some(Status::Unstable);
            }
        }
    }
    Some(if tight { Status::SemistableNotStable } else { Status::Stable })
}
