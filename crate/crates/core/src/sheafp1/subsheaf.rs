use std::fmt;

use crate::exactcore::{kernel_over_fraction_field, primitive_vector, rank_over_fraction_field, Mat, Poly, Rational, Ring};

use super::{compose_twisted, BundleP1, SheafError, SheafMap};

/// `F ⊆ E` given by an inclusion `O(b₁) ⊕ … ⊕ O(b_f) → E`, injective over ℚ(t).
#[derive(Clone, Debug, PartialEq)]
pub struct Subsheaf {
    ambient: BundleP1,
    inclusion: SheafMap,
    saturated: bool,
}

impl Subsheaf {
    pub fn new(inclusion: SheafMap) -> Result<Self, SheafError> {
        if inclusion.twist() != 0 {
            return Err(SheafError::Shape("inclusions are untwisted".into()));
        }
        if rank_over_fraction_field(inclusion.matrix()) != inclusion.source().rank() {
            return Err(SheafError::Shape("inclusion is not injective".into()));
        }
        let ambient = inclusion.target().clone();
        let mut s = Subsheaf { ambient, inclusion, saturated: false };
        s.saturated = s.check_saturated();
        Ok(s)
    }

    pub fn whole(e: &BundleP1) -> Self {
        let id = Mat::<Poly<Rational>>::identity(e.rank());
        let inclusion = SheafMap::new(e.clone(), e.clone(), 0, id).expect("identity respects bounds");
        Subsheaf { ambient: e.clone(), inclusion, saturated: true }
    }

    /// The saturated line subbundle through a nonzero vector of polynomials.
    pub fn line_through(e: &BundleP1, v: &[Poly<Rational>]) -> Result<Self, SheafError> {
        if v.len() != e.rank() || v.iter().all(Ring::is_zero) {
            return Err(SheafError::Shape("a line needs a nonzero vector of the ambient rank".into()));
        }
        let v = primitive_vector(v);
        let c = line_degree(e, &v);
        let inclusion = SheafMap::new(BundleP1::line(c), e.clone(), 0, Mat::column(v))?;
        Ok(Subsheaf { ambient: e.clone(), inclusion, saturated: true })
    }

    pub fn ambient(&self) -> &BundleP1 {
        &self.ambient
    }

    pub fn inclusion(&self) -> &SheafMap {
        &self.inclusion
    }

    pub fn splitting(&self) -> &BundleP1 {
        self.inclusion.source()
    }

    pub fn rank(&self) -> usize {
        self.splitting().rank()
    }

    pub fn degree(&self) -> i64 {
        self.splitting().degree()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_whole_bundle(&self) -> bool {
        self.rank() == self.ambient.rank() && self.degree() == self.ambient.degree()
    }

    pub fn columns(&self) -> Vec<Vec<Poly<Rational>>> {
        (0..self.rank()).map(|j| self.inclusion.matrix().col(j)).collect()
    }

    /// The spanning vector of a line subsheaf.
    pub fn vector(&self) -> Option<Vec<Poly<Rational>>> {
        (self.rank() == 1).then(|| self.inclusion.matrix().col(0))
    }

    /// Rows spanning the polynomial left kernel of the inclusion.
    pub fn annihilator(&self) -> Vec<Vec<Poly<Rational>>> {
        kernel_over_fraction_field(&self.inclusion.matrix().transpose())
    }

    /// `φ(F) ⊆ F ⊗ O(ℓ)`, checked as `N·φ·B = 0` for the annihilator `N`.
    pub fn is_invariant(&self, phi: &SheafMap) -> bool {
        assert_eq!(phi.source(), &self.ambient);
        let image = phi.matrix().mul(self.inclusion.matrix());
        annihilates(&self.annihilator(), &image)
    }

    /// `ψ·B = 0`.
    pub fn is_in_kernel_of(&self, psi: &SheafMap) -> bool {
        psi.matrix().mul(self.inclusion.matrix()).is_zero()
    }

    /// Whether `other ⊆ self` over ℚ(t).
    pub fn contains(&self, other: &Subsheaf) -> bool {
        annihilates(&self.annihilator(), other.inclusion.matrix())
    }

    /// Equal as saturated subsheaves.
    pub fn same_subbundle(&self, other: &Subsheaf) -> bool {
        self.rank() == other.rank() && self.contains(other)
    }

    /// Ordering key: rank, degree, then the coefficient strings of the columns.
    pub fn canonical_key(&self) -> (usize, i64, String) {
        (self.rank(), self.degree(), self.to_string())
    }

    fn check_saturated(&self) -> bool {
        saturate(self).degree() == self.degree()
    }
}

impl fmt::Display for Subsheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns()
            .iter()
            .map(|c| format!("({})", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "{} via {}", self.splitting(), cols.join(" "))
    }
}

fn annihilates(n: &[Vec<Poly<Rational>>], b: &Mat<Poly<Rational>>) -> bool {
    n.iter().all(|row| {
        (0..b.cols()).all(|j| {
            row.iter().enumerate().fold(Poly::zero(), |acc: Poly<Rational>, (i, x)| acc.plus(&x.times(b.get(i, j)))).is_zero()
        })
    })
}

/// Largest `c` with `v_i ∈ H⁰(O(a_i − c))` for all `i`.
fn line_degree(e: &BundleP1, v: &[Poly<Rational>]) -> i64 {
    e.splitting()
        .iter()
        .zip(v)
        .filter(|(_, p)| !p.is_zero())
        .map(|(a, p)| a - p.deg_i64())
        .min()
        .expect("nonzero vector")
}

/// Coefficient layout for vectors with `deg v_i <= a_i − m`.
struct Layout {
    offsets: Vec<usize>,
    lens: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(e: &BundleP1, m: i64) -> Self {
        let lens: Vec<usize> = e.splitting().iter().map(|a| (a - m + 1).max(0) as usize).collect();
        let mut offsets = Vec::with_capacity(lens.len());
        let mut total = 0;
        for l in &lens {
            offsets.push(total);
            total += l;
        }
        Layout { offsets, lens, total }
    }

    fn unpack(&self, x: &[Rational]) -> Vec<Poly<Rational>> {
        self.offsets.iter().zip(&self.lens).map(|(&o, &l)| Poly::new(x[o..o + l].to_vec())).collect()
    }

    fn pack(&self, v: &[Poly<Rational>]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.total];
        for (i, p) in v.iter().enumerate() {
            for (k, c) in p.coeffs().iter().enumerate() {
                assert!(k < self.lens[i], "section exceeds its bound");
                x[self.offsets[i] + k] = c.clone();
            }
        }
        x
    }
}

/// Basis of `{v ∈ H⁰(E(−m)) : N v = 0}`.
pub fn sections_in(e: &BundleP1, annihilator: &[Vec<Poly<Rational>>], m: i64) -> Vec<Vec<Poly<Rational>>> {
    let lay = Layout::new(e, m);
    if lay.total == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for n in annihilator {
        let top = n
            .iter()
            .zip(&lay.lens)
            .filter(|(p, &l)| !p.is_zero() && l > 0)
            .map(|(p, &l)| p.deg_i64() as usize + l - 1)
            .max();
        let Some(top) = top else { continue };
        for k in 0..=top {
            let mut row = vec![Rational::zero(); lay.total];
            for (i, p) in n.iter().enumerate() {
                for j in 0..lay.lens[i] {
                    if k >= j {
                        let c = p.coeff(k - j);
                        if !c.is_zero() {
                            row[lay.offsets[i] + j] = c;
                        }
                    }
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        let id = Mat::<Rational>::identity(lay.total);
        (0..lay.total).map(|i| id.row(i)).collect()
    } else {
        Mat::from_rows(rows).kernel()
    };
    basis.iter().map(|x| lay.unpack(x)).collect()
}

fn row_rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        Mat::from_rows(rows.to_vec()).rank()
    }
}

/// Saturation inside `E` of the ℚ(t)-span of nonzero columns.
pub fn saturate_columns(e: &BundleP1, cols: &[Vec<Poly<Rational>>]) -> Subsheaf {
    let b = Mat::from_fn(e.rank(), cols.len(), |i, j| cols[j][i].clone());
    let f = rank_over_fraction_field(&b);
    assert!(f > 0, "cannot saturate the zero subsheaf");
    if f == e.rank() {
        return Subsheaf::whole(e);
    }
    if f == 1 {
        let v = cols.iter().find(|c| c.iter().any(|p| !p.is_zero())).unwrap();
        return Subsheaf::line_through(e, v).expect("nonzero vector");
    }
    let ann = kernel_over_fraction_field(&b.transpose());
    let top = e.splitting()[0];
    let mut chosen: Vec<(i64, Vec<Poly<Rational>>)> = Vec::new();
    let mut m = top;
    while chosen.len() < f {
        assert!(m > top - 100_000, "splitting search did not terminate");
        let lay = Layout::new(e, m);
        let space = sections_in(e, &ann, m);
        let mut gen: Vec<Vec<Rational>> = Vec::new();
        for (b_j, v) in &chosen {
            for k in 0..=(b_j - m) {
                let shifted: Vec<Poly<Rational>> = v.iter().map(|p| p.shift(k as usize)).collect();
                gen.push(lay.pack(&shifted));
            }
        }
        let mut rank = row_rank(&gen);
        for s in space {
            let mut trial = gen.clone();
            trial.push(lay.pack(&s));
            let r = row_rank(&trial);
            if r > rank {
                gen = trial;
                rank = r;
                chosen.push((m, s));
            }
        }
        m -= 1;
    }
    let splitting = BundleP1::new(chosen.iter().map(|(b, _)| *b).collect()).expect("descending by construction");
    let mat = Mat::from_fn(e.rank(), f, |i, j| chosen[j].1[i].clone());
    let inclusion = SheafMap::new(splitting, e.clone(), 0, mat).expect("sections respect bounds");
    Subsheaf { ambient: e.clone(), inclusion, saturated: true }
}

/// Smallest subbundle containing `s`; idempotent and degree-nondecreasing.
pub fn saturate(s: &Subsheaf) -> Subsheaf {
    if s.saturated {
        return s.clone();
    }
    saturate_columns(&s.ambient, &s.columns())
}

/// Degree of the saturation read off the maximal minors of the columns:
/// `min_I (Σ_{i∈I} a_i − deg(p_I / g))` with `g` the gcd of all minors.
pub fn saturation_degree_from_minors(e: &BundleP1, cols: &[Vec<Poly<Rational>>]) -> Option<i64> {
    let f = cols.len();
    let r = e.rank();
    let mut minors = Vec::new();
    for subset in subsets(r, f) {
        let m = Mat::from_fn(f, f, |a, b| cols[b][subset[a]].clone());
        let d = m.det().ok()?;
        minors.push((subset, d));
    }
    let g = minors.iter().fold(Poly::zero(), |g: Poly<Rational>, (_, p)| g.gcd(p));
    if g.is_zero() {
        return None;
    }
    minors
        .iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(s, p)| s.iter().map(|&i| e.splitting()[i]).sum::<i64>() - p.divrem(&g).0.deg_i64())
        .min()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `F_k = ker φ_k`, saturated, for `k = 1, 2, …` while the rank strictly grows.
pub fn kernel_filtration(phi: &SheafMap) -> Result<Vec<Subsheaf>, SheafError> {
    let e = phi.source().clone();
    let mut out: Vec<Subsheaf> = Vec::new();
    for k in 1..=e.rank() as u32 {
        let pk = compose_twisted(phi, k)?;
        let ker = kernel_over_fraction_field(pk.matrix());
        if ker.len() <= out.last().map_or(0, Subsheaf::rank) {
            break;
        }
        out.push(saturate_columns(&e, &ker));
        if ker.len() == e.rank() {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageKernel {
    /// `None` when `ψ` is injective.
    pub kernel: Option<Subsheaf>,
    pub image_rank: usize,
    /// Degree of `E / ker ψ`, the image sheaf.
    pub image_degree: i64,
    /// `deg D` where the image is `O(m₀)(−D)`; only for a line-bundle target.
    pub divisor_degree: Option<i64>,
}

pub fn image_and_kernel(psi: &SheafMap) -> Result<ImageKernel, SheafError> {
    if psi.is_zero() {
        return Err(SheafError::ZeroMap);
    }
    let e = psi.source();
    let ker = kernel_over_fraction_field(psi.matrix());
    let kernel = (!ker.is_empty()).then(|| saturate_columns(e, &ker));
    let image_rank = e.rank() - ker.len();
    let image_degree = e.degree() - kernel.as_ref().map_or(0, Subsheaf::degree);
    let divisor_degree = (psi.target().rank() == 1).then(|| psi.target().degree() - image_degree);
    Ok(ImageKernel { kernel, image_rank, image_degree, divisor_degree })
}
