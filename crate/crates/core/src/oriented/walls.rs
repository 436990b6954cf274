use num_integer::Integer;

use crate::exactcore::{Mat, Poly, Rational, Ring};
use crate::sheafp1::{BundleP1, SheafMap};
use crate::stability::{
    general_breakpoint, invariant_candidates, kernel_breakpoint, Candidate, FramedHitchinPair, StabilityError,
};

/// `(d, r, ℓ, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeData {
    pub d: i64,
    pub r: usize,
    pub ell: i64,
    pub h: BundleP1,
}

impl TypeData {
    pub fn of(pair: &FramedHitchinPair) -> Self {
        TypeData { d: pair.degree(), r: pair.rank(), ell: pair.ell(), h: pair.h().clone() }
    }

    /// `m₀` when `H = O(m₀)`.
    pub fn m0(&self) -> Option<i64> {
        (self.h.rank() == 1).then(|| self.h.degree())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Wall {
    pub sigma: Rational,
    /// The subsheaf producing the wall, when computed from a concrete pair.
    pub witness: Option<Candidate>,
}

/// `(lower, upper)`; `upper = None` for the unbounded last interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lower: Rational,
    pub upper: Option<Rational>,
}

impl Interval {
    pub fn contains(&self, s: &Rational) -> bool {
        *s > self.lower && self.upper.as_ref().is_none_or(|u| s < u)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChamberDecomposition {
    pub walls: Vec<Wall>,
    pub sigma_infinity: Rational,
    pub intervals: Vec<Interval>,
    pub representatives: Vec<Rational>,
}

impl ChamberDecomposition {
    fn from_walls(mut walls: Vec<Wall>, sigma_infinity: Rational) -> Self {
        walls.sort_by(|a, b| a.sigma.cmp(&b.sigma));
        walls.dedup_by(|a, b| a.sigma == b.sigma);
        let mut bounds: Vec<Rational> = vec![Rational::zero()];
        bounds.extend(walls.iter().map(|w| w.sigma.clone()));
        let mut intervals: Vec<Interval> =
            bounds.windows(2).map(|w| Interval { lower: w[0].clone(), upper: Some(w[1].clone()) }).collect();
        intervals.push(Interval { lower: bounds.last().unwrap().clone(), upper: None });
        let representatives = intervals
            .iter()
            .map(|i| match &i.upper {
                Some(u) => (&i.lower + u) / Rational::from_int(2),
                None => &i.lower + Rational::one(),
            })
            .collect();
        ChamberDecomposition { walls, sigma_infinity, intervals, representatives }
    }

    pub fn wall_values(&self) -> Vec<Rational> {
        self.walls.iter().map(|w| w.sigma.clone()).collect()
    }

    /// Index of the interval containing `s`, or `None` on a wall or `s ≤ 0`.
    pub fn chamber_of(&self, s: &Rational) -> Option<usize> {
        self.intervals.iter().position(|i| i.contains(s))
    }
}

/// `max(r(r−1)C − (r−1)d, 1)`.
pub fn sigma_infinity(r: usize, d: i64, c: &Rational) -> Rational {
    let r = r as i64;
    let raw = Rational::from_int(r * (r - 1)) * c - Rational::from_int((r - 1) * d);
    std::cmp::max(raw, Rational::one())
}

/// The upper end of the wall range: `σ_∞`, lowered to `2m₀ − d` for rank 2
/// with `H = O(m₀)`, since `ker ψ` then has degree at least `d − m₀`.
fn wall_cap(t: &TypeData, c: &Rational) -> Rational {
    let inf = sigma_infinity(t.r, t.d, c);
    match (t.r, t.m0()) {
        (2, Some(m0)) => std::cmp::min(inf, Rational::from_int(2 * m0 - t.d)),
        _ => inf,
    }
}

/// Walls `d − (r/f)·k ∈ (0, cap]` over all subsheaf ranks `f < r` and degrees `k`.
pub fn walls_for_family(t: &TypeData, c: &Rational) -> ChamberDecomposition {
    let inf = sigma_infinity(t.r, t.d, c);
    let cap = wall_cap(t, c);
    let mut walls = Vec::new();
    let r = t.r as i64;
    for f in 1..r {
        // 0 < d − r·k/f ≤ cap  ⟺  (d − cap)·f/r ≤ k < d·f/r.
        let lo = ((Rational::from_int(t.d) - &cap) * Rational::from_int(f) / Rational::from_int(r)).ceil().to_integer();
        let hi = (Rational::from_int(t.d * f) / Rational::from_int(r)).ceil().to_integer();
        let mut k = lo;
        while k < hi {
            let k64: i64 = i64::try_from(&k).expect("degree fits i64");
            let s = kernel_breakpoint(t.r, t.d, f as usize, k64);
            if s > Rational::zero() && s <= cap {
                walls.push(Wall { sigma: s, witness: None });
            }
            k += 1;
        }
    }
    ChamberDecomposition::from_walls(walls, inf)
}

/// Positive breakpoints of a concrete pair up to the cap: the `σ_K` of invariant
/// `K ⊆ ker ψ` together with the lower ends `L_F` of the general inequality.
pub fn walls_for_pair(pair: &FramedHitchinPair, c: &Rational) -> Result<(ChamberDecomposition, bool), StabilityError> {
    let t = TypeData::of(pair);
    let inf = sigma_infinity(t.r, t.d, c);
    let cap = wall_cap(&t, c);
    let cands = invariant_candidates(pair)?;
    let (r, d) = (pair.rank(), pair.degree());
    let mut walls = Vec::new();
    for b in cands.breakpoints(r, d) {
        if b > Rational::zero() && b <= cap {
            let witness = cands
                .list
                .iter()
                .find(|c| {
                    (c.in_kernel && kernel_breakpoint(r, d, c.rank, c.degree) == b)
                        || general_breakpoint(r, d, c.rank, c.degree) == b
                })
                .cloned();
            walls.push(Wall { sigma: b, witness });
        }
    }
    Ok((ChamberDecomposition::from_walls(walls, inf), cands.complete))
}

/// A pair of type `t` that is properly σ-semistable at a wall `σ = d − 2k`:
/// `E = O(d−k) ⊕ O(k)`, `φ = 0`, `ε = 1`, `ψ` the first coordinate.
pub fn realize_wall(t: &TypeData, sigma: &Rational) -> Option<FramedHitchinPair> {
    if t.r != 2 || !sigma.is_integer() {
        return None;
    }
    let s: i64 = i64::try_from(&sigma.to_integer()).ok()?;
    if !(t.d - s).is_even() {
        return None;
    }
    let k = (t.d - s) / 2;
    let top = t.d - k;
    if top < k || t.h.splitting()[0] < top {
        return None;
    }
    let e = BundleP1::new(vec![top, k]).ok()?;
    let phi = SheafMap::zero(e.clone(), e.clone(), t.ell);
    let psi = Mat::from_fn(t.h.rank(), 2, |i, j| if i == 0 && j == 0 { Poly::one() } else { Poly::zero() });
    let psi = SheafMap::new(e, t.h.clone(), 0, psi).ok()?;
    FramedHitchinPair::new(Rational::one(), phi, psi).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::qi;
    use crate::stability::{sigma_semistable, SigmaParam, Status};

    fn td(d: i64, r: usize, h: &[i64]) -> TypeData {
        TypeData { d, r, ell: 0, h: BundleP1::new(h.to_vec()).unwrap() }
    }

    #[test]
    fn family_walls() {
        let c = walls_for_family(&td(0, 2, &[10]), &qi(3));
        assert_eq!(c.sigma_infinity, qi(6));
        assert_eq!(c.wall_values(), vec![qi(2), qi(4), qi(6)]);
        assert_eq!(c.intervals.len(), 4);
        assert_eq!(c.representatives, vec![qi(1), qi(3), qi(5), qi(7)]);
        let c = walls_for_family(&td(3, 1, &[5]), &qi(3));
        assert!(c.walls.is_empty());
        assert_eq!(c.representatives, vec![qi(1)]);
    }

    #[test]
    fn sigma_infinity_examples() {
        assert_eq!(sigma_infinity(2, 0, &qi(1)), qi(2));
        assert_eq!(sigma_infinity(1, 4, &qi(1)), qi(1));
    }

    #[test]
    fn walls_are_realized() {
        let t = td(0, 2, &[3]);
        for w in walls_for_family(&t, &qi(3)).walls {
            let p = realize_wall(&t, &w.sigma).unwrap();
            let v = sigma_semistable(&p, &SigmaParam::new(w.sigma).unwrap(), true).unwrap();
            assert_eq!(v.status, Status::SemistableNotStable);
        }
    }
}
