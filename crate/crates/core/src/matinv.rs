//! Invariants of matrix tuples under simultaneous conjugation.
//!
//! Words are enumerated length-first then lexicographically; that order fixes
//! the layout of every [`CharVector`].

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::exactcore::rational::{pow_i, rational_root, strip_powers};
use crate::exactcore::{Field, Mat, Poly, Rational, Ring};

/// Default cap on the number of enumerated words.
pub const WORD_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatInvError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("{count} words exceed the cap {cap}")]
    TooManyWords { count: u128, cap: usize },
    #[error("every weighted coordinate vanishes")]
    ZeroVector,
}

/// A nonempty word in the letters `x_1..x_u` (stored 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self, MatInvError> {
        if letters.is_empty() || letters.contains(&0) {
            return Err(MatInvError::Shape("words are nonempty with letters >= 1".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Occurrences of each letter `1..=u`.
    pub fn letter_counts(&self, u: usize) -> Vec<usize> {
        let mut c = vec![0; u];
        for &l in &self.0 {
            c[l - 1] += 1;
        }
        c
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

/// `u` square matrices of a common size `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple<R: Ring> {
    r: usize,
    mats: Vec<Mat<R>>,
}

impl<R: Ring> MatrixTuple<R> {
    pub fn new(mats: Vec<Mat<R>>) -> Result<Self, MatInvError> {
        let Some(first) = mats.first() else {
            return Err(MatInvError::Shape("a tuple needs at least one matrix".into()));
        };
        let r = first.rows();
        if r == 0 || mats.iter().any(|m| m.rows() != r || m.cols() != r) {
            return Err(MatInvError::Shape(format!("all matrices must be {r}x{r} with r >= 1")));
        }
        Ok(MatrixTuple { r, mats })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn arity(&self) -> usize {
        self.mats.len()
    }

    pub fn matrices(&self) -> &[Mat<R>] {
        &self.mats
    }

    pub fn map(&self, f: impl FnMut(&Mat<R>) -> Mat<R>) -> Self {
        MatrixTuple { r: self.r, mats: self.mats.iter().map(f).collect() }
    }
}

impl<F: Field> MatrixTuple<F> {
    /// `g⁻¹ m_i g` for each `i`; `None` if `g` is singular.
    pub fn conjugate(&self, g: &Mat<F>) -> Option<Self> {
        let gi = g.inverse()?;
        Some(self.map(|m| gi.mul(m).mul(g)))
    }
}

fn word_count(r: usize, u: usize) -> u128 {
    let max = (r * r) as u32;
    (1..=max).map(|k| (u as u128).saturating_pow(k)).fold(0u128, u128::saturating_add)
}

/// All nonempty words of length `<= r²`, ordered by length then lexicographically.
pub fn word_list(r: usize, u: usize) -> Result<Vec<Word>, MatInvError> {
    word_list_capped(r, u, WORD_CAP)
}

pub fn word_list_capped(r: usize, u: usize, cap: usize) -> Result<Vec<Word>, MatInvError> {
    if r == 0 || u == 0 {
        return Err(MatInvError::Shape("rank and arity must be positive".into()));
    }
    let count = word_count(r, u);
    if count > cap as u128 {
        return Err(MatInvError::TooManyWords { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..r * r {
        level = level
            .iter()
            .flat_map(|w| {
                (1..=u).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(level.iter().cloned().map(Word));
    }
    Ok(out)
}

pub fn eval_word<R: Ring>(m: &MatrixTuple<R>, w: &Word) -> Result<Mat<R>, MatInvError> {
    let mut acc: Option<Mat<R>> = None;
    for &l in w.letters() {
        let Some(x) = m.mats.get(l - 1) else {
            return Err(MatInvError::Shape(format!("letter x{l} outside arity {}", m.arity())));
        };
        acc = Some(match acc {
            None => x.clone(),
            Some(a) => a.mul(x),
        });
    }
    Ok(acc.expect("words are nonempty"))
}

/// Products `m_ω` for every word of length `<= max_len`, in canonical order.
fn all_products<R: Ring>(m: &MatrixTuple<R>, max_len: usize) -> Vec<Mat<R>> {
    let mut out = Vec::new();
    let mut level: Vec<Mat<R>> = vec![Mat::identity(m.r)];
    for _ in 0..max_len {
        level = level.iter().flat_map(|p| m.mats.iter().map(move |x| p.mul(x))).collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Trace-word coordinates `T_ω`, weighted by word length, plus `ε` of weight 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CharVector<R: Ring> {
    pub epsilon: R,
    pub entries: Vec<R>,
    pub weights: Vec<u32>,
}

pub fn char_vector<R: Ring>(m: &MatrixTuple<R>, epsilon: R) -> Result<CharVector<R>, MatInvError> {
    let words = word_list(m.r, m.arity())?;
    let entries = all_products(m, m.r * m.r).iter().map(|p| p.trace().expect("square")).collect();
    let weights = words.iter().map(|w| w.len() as u32).collect();
    Ok(CharVector { epsilon, entries, weights })
}

impl<R: Ring> CharVector<R> {
    pub fn is_zero(&self) -> bool {
        self.epsilon.is_zero() && self.entries.iter().all(Ring::is_zero)
    }
}

impl CharVector<Rational> {
    pub fn flatten(&self) -> WeightedPoint {
        let mut values = vec![self.epsilon.clone()];
        values.extend(self.entries.iter().cloned());
        let mut weights = vec![1];
        weights.extend(self.weights.iter().copied());
        WeightedPoint { values, weights }
    }
}

impl CharVector<Poly<Rational>> {
    /// One coordinate per polynomial coefficient: a `T_ω` of weight `w` contributes
    /// its coefficients up to `w·ℓ`, each with weight `w`.
    pub fn flatten(&self, ell: i64) -> WeightedPoint {
        let mut values = vec![self.epsilon.coeff(0)];
        let mut weights = vec![1];
        for (p, &w) in self.entries.iter().zip(&self.weights) {
            for k in 0..=(w as i64 * ell) {
                values.push(p.coeff(k as usize));
                weights.push(w);
            }
        }
        WeightedPoint { values, weights }
    }
}

/// A point of a weighted affine space, to be read projectively under
/// `z · (x_i) = (z^{w_i} x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPoint {
    pub values: Vec<Rational>,
    pub weights: Vec<u32>,
}

/// How [`normalize_weighted`] fixed the scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// The first nonzero coordinate became 1.
    LeadingOne,
    /// No rational root existed; the leading coordinate was reduced modulo
    /// `w`-th powers and the first odd-weight coordinate made positive.
    PowerFreeSign,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedRep {
    pub point: WeightedPoint,
    pub convention: Convention,
}

const STRIP_LIMIT: u64 = 10_000;

fn scale_point(p: &WeightedPoint, z: &Rational) -> WeightedPoint {
    let values = p.values.iter().zip(&p.weights).map(|(v, &w)| v * pow_i(z, w as i64)).collect();
    WeightedPoint { values, weights: p.weights.clone() }
}

/// Canonical representative under rational rescaling.
pub fn normalize_weighted(p: &WeightedPoint) -> Result<WeightedRep, MatInvError> {
    assert_eq!(p.values.len(), p.weights.len());
    assert!(p.weights.iter().all(|&w| w > 0), "weights are positive");
    let Some(i) = p.values.iter().position(|v| !v.is_zero()) else {
        return Err(MatInvError::ZeroVector);
    };
    let (e, w) = (&p.values[i], p.weights[i]);
    if let Some(root) = rational_root(&e.recip(), w) {
        let q = scale_point(p, &root);
        if q.values[i] == Rational::one() {
            return Ok(WeightedRep { point: q, convention: Convention::LeadingOne });
        }
        // Even weight with negative lead: the root only fixed the magnitude.
    }
    let (_, s) = strip_powers(e, w, STRIP_LIMIT);
    let mut q = scale_point(p, &s.recip());
    let odd = q.values.iter().zip(&q.weights).find(|(v, w)| !v.is_zero() && *w % 2 == 1);
    if let Some((v, _)) = odd {
        if v.is_negative() {
            q = scale_point(&q, &-Rational::one());
        }
    }
    Ok(WeightedRep { point: q, convention: Convention::PowerFreeSign })
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Whether `b = z·a` for some `z ∈ ℂ*`; the authoritative class test.
///
/// With `r_i = b_i / a_i` on the common support and `g = gcd(w_i) = Σ c_i w_i`,
/// such `z` exists iff `R = Π r_i^{c_i}` satisfies `R^{w_i/g} = r_i` for all `i`.
pub fn same_weighted_class(a: &WeightedPoint, b: &WeightedPoint) -> bool {
    if a.weights != b.weights || a.values.len() != b.values.len() {
        return false;
    }
    let mut support = Vec::new();
    for (i, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => {}
            (false, false) => support.push(i),
            _ => return false,
        }
    }
    if support.is_empty() {
        return true;
    }
    let ratios: Vec<Rational> = support.iter().map(|&i| &b.values[i] / &a.values[i]).collect();
    let ws: Vec<i64> = support.iter().map(|&i| a.weights[i] as i64).collect();
    let mut g = ws[0];
    let mut coeffs = vec![1i64];
    for &w in &ws[1..] {
        let (ng, x, y) = ext_gcd(g, w);
        coeffs.iter_mut().for_each(|c| *c *= x);
        coeffs.push(y);
        g = ng;
    }
    let big_r = ratios.iter().zip(&coeffs).fold(Rational::one(), |acc, (r, &c)| acc * pow_i(r, c));
    ratios.iter().zip(&ws).all(|(r, &w)| pow_i(&big_r, w / g) == *r)
}

pub fn char_vector_normalize(v: &CharVector<Rational>) -> Result<WeightedRep, MatInvError> {
    normalize_weighted(&v.flatten())
}

/// `det(λI − m) = λ^r`.
pub fn is_nilpotent_matrix<R: Ring>(m: &Mat<R>) -> bool {
    let cp = m.charpoly().expect("square");
    cp[..cp.len() - 1].iter().all(Ring::is_zero)
}

/// Every word of length exactly `r` evaluates to zero.
pub fn is_nilpotent_tuple<R: Ring>(m: &MatrixTuple<R>) -> bool {
    let mut level: Vec<Mat<R>> = vec![Mat::identity(m.r)];
    for _ in 0..m.r {
        level = level.iter().flat_map(|p| m.mats.iter().map(move |x| p.mul(x))).collect();
        level.retain(|p| !p.is_zero());
        if level.is_empty() {
            return true;
        }
    }
    false
}

/// McCoy criterion: `m_ω · [m_i, m_j]` is nilpotent for every word of length
/// `<= r²` (the empty word included) and every pair `i < j`.
pub fn is_triangularizable<R: Ring>(m: &MatrixTuple<R>) -> bool {
    let mut comms = Vec::new();
    for i in 0..m.arity() {
        for j in i + 1..m.arity() {
            let c = m.mats[i].mul(&m.mats[j]).sub(&m.mats[j].mul(&m.mats[i]));
            if !c.is_zero() {
                comms.push(c);
            }
        }
    }
    if comms.is_empty() {
        return true;
    }
    let mut words = vec![Mat::identity(m.r)];
    words.extend(all_products(m, m.r * m.r));
    words.iter().all(|w| comms.iter().all(|c| is_nilpotent_matrix(&w.mul(c))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GitStatus {
    Stable,
    SemistableNotStable,
    Nullform,
}

impl fmt::Display for GitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GitStatus::Stable => "stable",
            GitStatus::SemistableNotStable => "semistable_not_stable",
            GitStatus::Nullform => "nullform",
        })
    }
}

pub fn git_status<R: Ring>(m: &MatrixTuple<R>) -> GitStatus {
    if is_nilpotent_tuple(m) {
        GitStatus::Nullform
    } else if is_triangularizable(m) {
        GitStatus::SemistableNotStable
    } else {
        GitStatus::Stable
    }
}

/// `λ(z)` acts diagonally by `z^{γ_i}` in the basis given by the columns of `basis_change`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneParamSubgroup {
    basis_change: Mat<Rational>,
    weights: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(basis_change: Mat<Rational>, weights: Vec<i64>) -> Result<Self, MatInvError> {
        let n = basis_change.rows();
        if !basis_change.is_square() || weights.len() != n {
            return Err(MatInvError::Shape("basis and weights disagree in size".into()));
        }
        if basis_change.inverse().is_none() {
            return Err(MatInvError::Shape("basis change is singular".into()));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) || weights.iter().sum::<i64>() != 0 {
            return Err(MatInvError::Shape("weights must ascend and sum to zero".into()));
        }
        Ok(OneParamSubgroup { basis_change, weights })
    }

    pub fn basis_change(&self) -> &Mat<Rational> {
        &self.basis_change
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitResult {
    pub limit: Option<MatrixTuple<Rational>>,
    pub drives_to_zero: bool,
}

/// Limit of `λ(z)⁻¹ m̄ λ(z)` as `z → 0`; entry `(i,j)` carries `z^{γ_j − γ_i}`.
pub fn ops_limit_exists(m: &MatrixTuple<Rational>, lambda: &OneParamSubgroup) -> LimitResult {
    let conj = m.conjugate(&lambda.basis_change).expect("validated invertible");
    let g = &lambda.weights;
    let mut exists = true;
    let mut to_zero = true;
    let limit = conj.map(|x| {
        Mat::from_fn(m.r, m.r, |i, j| {
            let w = g[j] - g[i];
            let v = x.get(i, j);
            if !v.is_zero() {
                if w < 0 {
                    exists = false;
                }
                if w <= 0 {
                    to_zero = false;
                }
            }
            if w == 0 {
                v.clone()
            } else {
                Rational::zero()
            }
        })
    });
    LimitResult { limit: exists.then_some(limit), drives_to_zero: exists && to_zero }
}

/// Completes the given independent columns to a basis with standard vectors.
fn complete_basis(cols: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut basis = cols.to_vec();
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        let mut trial = basis.clone();
        trial.push(e);
        if Mat::from_rows(trial.clone()).rank() == trial.len() {
            basis = trial;
        }
    }
    basis
}

fn subgroup_from_blocks(blocks: &[Vec<Vec<Rational>>], n: usize) -> Option<OneParamSubgroup> {
    let mut cols = Vec::new();
    let mut block_of = Vec::new();
    for (b, vs) in blocks.iter().enumerate() {
        for v in vs {
            cols.push(v.clone());
            block_of.push(b as i64);
        }
    }
    if cols.len() != n {
        return None;
    }
    let total: i64 = block_of.iter().sum();
    let weights = block_of.iter().map(|&b| n as i64 * b - total).collect();
    let basis = Mat::from_rows(cols).transpose();
    OneParamSubgroup::new(basis, weights).ok()
}

/// Chain `V_1 ⊂ V_2 ⊂ …` with `V_k = {v : m_i v ∈ V_{k−1} ∀i}`, as blocks of
/// new basis vectors; stops when the chain stabilizes.
fn common_kernel_blocks(m: &MatrixTuple<Rational>) -> Vec<Vec<Vec<Rational>>> {
    let n = m.r;
    let mut blocks: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut span: Vec<Vec<Rational>> = Vec::new();
    loop {
        // v ∈ V_k iff P·m_i·v = 0 for each i, P projecting away from V_{k−1}.
        let annihilator: Mat<Rational> = if span.is_empty() {
            Mat::identity(n)
        } else {
            let s = Mat::from_rows(span.clone());
            let ann = s.kernel();
            if ann.is_empty() {
                break;
            }
            Mat::from_rows(ann)
        };
        let rows: Vec<Vec<Rational>> = m
            .mats
            .iter()
            .flat_map(|x| {
                let p = annihilator.mul(x);
                (0..p.rows()).map(move |i| p.row(i))
            })
            .collect();
        let space = Mat::from_rows(rows).kernel();
        if space.len() <= span.len() {
            break;
        }
        let mut new = Vec::new();
        let mut cur = span.clone();
        for v in space {
            let mut trial = cur.clone();
            trial.push(v.clone());
            if Mat::from_rows(trial.clone()).rank() == trial.len() {
                cur = trial;
                new.push(v);
            }
        }
        span = cur;
        blocks.push(new);
        if span.len() == n {
            break;
        }
    }
    blocks
}

/// Candidate one-parameter subgroups built from rational flag data: the
/// common-kernel chain and, for `r = 2`, kernel and image lines of word evaluations.
pub fn flag_candidates(m: &MatrixTuple<Rational>) -> Vec<OneParamSubgroup> {
    let n = m.r;
    let mut out = Vec::new();
    if let Some(l) = subgroup_from_blocks(&common_kernel_blocks(m), n) {
        out.push(l);
    }
    if n == 2 {
        let mut lines: Vec<Vec<Rational>> = Vec::new();
        for p in all_products(m, 2) {
            lines.extend(p.kernel());
            lines.extend(p.transpose().kernel().into_iter().map(|w| vec![w[1].clone(), -w[0].clone()]));
        }
        for v in lines {
            let rest = complete_basis(std::slice::from_ref(&v), 2);
            if let Some(l) = subgroup_from_blocks(&[vec![rest[0].clone()], vec![rest[1].clone()]], 2) {
                out.push(l);
            }
        }
    }
    out
}

/// A flag-derived subgroup driving the tuple to zero, if one is found.
pub fn find_destabilizing_subgroup(m: &MatrixTuple<Rational>) -> Option<OneParamSubgroup> {
    flag_candidates(m).into_iter().find(|l| ops_limit_exists(m, l).drives_to_zero)
}

fn require_r2u2(m: &MatrixTuple<Rational>) -> Result<(), MatInvError> {
    if m.r != 2 || m.arity() != 2 {
        return Err(MatInvError::Shape(format!("expected two 2x2 matrices, got {} of size {}", m.arity(), m.r)));
    }
    Ok(())
}

/// `(tr m₁, det m₁, tr m₂, det m₂, tr m₁m₂)`.
pub fn r2u2_invariants(m: &MatrixTuple<Rational>) -> Result<[Rational; 5], MatInvError> {
    require_r2u2(m)?;
    let (a, b) = (&m.mats[0], &m.mats[1]);
    Ok([
        a.trace().unwrap(),
        a.det().unwrap(),
        b.trace().unwrap(),
        b.det().unwrap(),
        a.mul(b).trace().unwrap(),
    ])
}

/// Exact 5×8 Jacobian of [`r2u2_invariants`] in the row-major entries of `(m₁, m₂)`.
pub fn r2u2_jacobian(m: &MatrixTuple<Rational>) -> Result<Mat<Rational>, MatInvError> {
    require_r2u2(m)?;
    let e = |k: usize, i: usize, j: usize| m.mats[k].get(i, j).clone();
    let z = Rational::zero;
    let o = Rational::one;
    let (a, b, c, d) = (e(0, 0, 0), e(0, 0, 1), e(0, 1, 0), e(0, 1, 1));
    let (p, q, r, s) = (e(1, 0, 0), e(1, 0, 1), e(1, 1, 0), e(1, 1, 1));
    Ok(Mat::from_rows(vec![
        vec![o(), z(), z(), o(), z(), z(), z(), z()],
        vec![d.clone(), -c.clone(), -b.clone(), a.clone(), z(), z(), z(), z()],
        vec![z(), z(), z(), z(), o(), z(), z(), o()],
        vec![z(), z(), z(), z(), s.clone(), -r.clone(), -q.clone(), p.clone()],
        vec![p, r, q, s, a, c, b, d],
    ]))
}

/// Bidegree of each of the five generators in `(m₁, m₂)`.
pub const R2U2_BIDEGREES: [[u32; 2]; 5] = [[1, 0], [2, 0], [0, 1], [0, 2], [1, 1]];

/// A polynomial in the five generators, as exponent vectors with coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorPolynomial {
    pub terms: Vec<([u32; 5], Rational)>,
}

impl GeneratorPolynomial {
    pub fn eval(&self, t: &[Rational; 5]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(t).fold(c.clone(), |acc, (&k, x)| acc * pow_i(x, k as i64)))
            .sum()
    }
}

/// Monomials in the generators of the given bidegree.
pub fn r2u2_monomials(bidegree: [u32; 2]) -> Vec<[u32; 5]> {
    let mut out = Vec::new();
    let [p, q] = bidegree;
    for e4 in 0..=p.min(q) {
        for e1 in 0..=(p - e4) / 2 {
            for e3 in 0..=(q - e4) / 2 {
                let e0 = p - e4 - 2 * e1;
                let e2 = q - e4 - 2 * e3;
                out.push([e0, e1, e2, e3, e4]);
            }
        }
    }
    out.sort();
    out
}

/// Fits `T_ω` as a polynomial in the generators by one exact solve over the
/// sample tuples; `None` if the samples leave the coefficients undetermined
/// or the system is inconsistent.
pub fn fit_trace_word(w: &Word, samples: &[MatrixTuple<Rational>]) -> Result<Option<GeneratorPolynomial>, MatInvError> {
    let counts = w.letter_counts(2);
    let monos = r2u2_monomials([counts[0] as u32, counts[1] as u32]);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for s in samples {
        let t = r2u2_invariants(s)?;
        rows.push(
            monos
                .iter()
                .map(|e| e.iter().zip(&t).fold(Rational::one(), |acc, (&k, x)| acc * pow_i(x, k as i64)))
                .collect::<Vec<_>>(),
        );
        rhs.push(eval_word(s, w)?.trace().unwrap());
    }
    let a = Mat::from_rows(rows);
    if a.rank() < monos.len() {
        return Ok(None);
    }
    Ok(a.solve(&rhs).map(|x| GeneratorPolynomial { terms: monos.into_iter().zip(x).collect() }))
}

/// Nonzero exponent vectors `e` with `Σ e_i w_i = 0` and `Σ e_i <= max_total_degree`,
/// ordered by total degree, then lexicographically descending.
pub fn invariant_monomials(weights: &[i64], max_total_degree: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[i64], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == weights.len() {
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(weights, left - e, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(weights, max_total_degree, &mut Vec::new(), &mut all);
    let mut out: Vec<Vec<u32>> = all
        .into_iter()
        .filter(|e| e.iter().any(|&k| k > 0))
        .filter(|e| e.iter().zip(weights).map(|(&k, &w)| k as i64 * w).sum::<i64>() == 0)
        .collect();
    out.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out
}
