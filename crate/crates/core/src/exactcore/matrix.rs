use std::fmt;

use super::poly::{BoundedPoly, Poly};
use super::ratfn::RatFn;
use super::rational::Rational;
use super::ring::{Field, Ring};
use super::ExactError;

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, PartialEq)]
pub struct Mat<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> fmt::Debug for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl<R: Ring> Mat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn column(v: Vec<R>) -> Self {
        Mat { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_shape(other)?;
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).plus(other.get(i, j))))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_shape(other)?;
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).minus(other.get(i, j))))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::<R>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j).plus(&a.times(other.get(k, j)));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for callers that have already matched shapes.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("shape mismatch")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("shape mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("shape mismatch")
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        (0..e).fold(Mat::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> Result<R, ExactError> {
        self.require_square()?;
        Ok((0..self.rows).fold(R::zero(), |acc, i| acc.plus(self.get(i, i))))
    }

    /// Coefficients `c_0..c_n` (ascending, `c_n = 1`) of `det(λ·I − A)`.
    ///
    /// Faddeev–LeVerrier recursion; only divides by small integers.
    pub fn charpoly(&self) -> Result<Vec<R>, ExactError> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = R::one();
        let mut m = Mat::<R>::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            let c_prev = coeffs[n - k + 1].clone();
            for i in 0..n {
                let v = next.get(i, i).plus(&c_prev);
                next.set(i, i, v);
            }
            m = next;
            let am = self.mul(&m);
            let tr = am.trace()?;
            let inv_k = R::from_rational(&Rational::new((-1).into(), (k as i64).into()));
            coeffs[n - k] = tr.times(&inv_k);
        }
        Ok(coeffs)
    }

    pub fn det(&self) -> Result<R, ExactError> {
        let cp = self.charpoly()?;
        let c0 = cp[0].clone();
        Ok(if self.rows % 2 == 0 { c0 } else { c0.negate() })
    }

    fn same_shape(&self, other: &Self) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::Dimension(format!(
                "shape {}x{} differs from {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<(), ExactError> {
        if !self.is_square() {
            return Err(ExactError::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(())
    }
}

impl<F: Field> Mat<F> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j).times(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, fc).negate();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, if consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Divides a polynomial vector by the gcd of its entries and makes the first
/// nonzero entry monic. The zero vector is returned unchanged.
pub fn primitive_vector<F: Field>(v: &[Poly<F>]) -> Vec<Poly<F>> {
    let g = v.iter().fold(Poly::zero(), |g: Poly<F>, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<Poly<F>> = v.iter().map(|x| x.divrem(&g).0).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        let inv = first.lead().unwrap().recip().unwrap();
        out = out.iter().map(|x| x.scale(&inv)).collect();
    }
    out
}

fn to_ratfn<F: Field>(m: &Mat<Poly<F>>) -> Mat<RatFn<F>> {
    m.map(|p| RatFn::from_poly(p.clone()))
}

/// Null space over the fraction field `F(t)`, as primitive polynomial vectors.
pub fn kernel_over_fraction_field<F: Field>(m: &Mat<Poly<F>>) -> Vec<Vec<Poly<F>>> {
    to_ratfn(m)
        .kernel()
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(Poly::one(), |acc: Poly<F>, x| {
                let g = acc.gcd(x.den());
                acc.times(&x.den().divrem(&g).0)
            });
            let cleared: Vec<Poly<F>> = v.iter().map(|x| x.num().times(&den.divrem(x.den()).0)).collect();
            primitive_vector(&cleared)
        })
        .collect()
}

pub fn rank_over_fraction_field<F: Field>(m: &Mat<Poly<F>>) -> usize {
    to_ratfn(m).rank()
}

/// Matrix of bounded polynomials; the owner assigns the bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    entries: Mat<Poly<Rational>>,
    bounds: Vec<i64>,
}

impl PolyMatrix {
    /// Builds from entries, checking each against `bound(i, j)`.
    pub fn new(entries: Mat<Poly<Rational>>, bound: impl Fn(usize, usize) -> i64) -> Result<Self, ExactError> {
        let mut bounds = Vec::with_capacity(entries.rows() * entries.cols());
        for i in 0..entries.rows() {
            for j in 0..entries.cols() {
                let b = bound(i, j);
                let deg = entries.get(i, j).deg_i64();
                if deg >= 0 && deg > b {
                    return Err(ExactError::EntryBound { row: i, col: j, degree: deg, bound: b });
                }
                bounds.push(b);
            }
        }
        Ok(PolyMatrix { entries, bounds })
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn mat(&self) -> &Mat<Poly<Rational>> {
        &self.entries
    }

    pub fn bound(&self, i: usize, j: usize) -> i64 {
        self.bounds[i * self.cols() + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> BoundedPoly {
        BoundedPoly::new(self.entries.get(i, j).clone(), self.bound(i, j)).expect("checked at construction")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn trace(&self) -> Result<Poly<Rational>, ExactError> {
        self.entries.trace()
    }

    pub fn det(&self) -> Result<Poly<Rational>, ExactError> {
        self.entries.det()
    }

    pub fn charpoly(&self) -> Result<Vec<Poly<Rational>>, ExactError> {
        self.entries.charpoly()
    }

    pub fn kernel(&self) -> Vec<Vec<Poly<Rational>>> {
        kernel_over_fraction_field(&self.entries)
    }

    pub fn rank(&self) -> usize {
        rank_over_fraction_field(&self.entries)
    }

    /// Product with bounds `self.bound(i,k) + other.bound(k,j)` (maximized over `k`).
    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, ExactError> {
        let entries = self.entries.try_mul(&other.entries)?;
        let inner = self.cols();
        let bound = |i: usize, j: usize| {
            (0..inner).map(|k| self.bound(i, k) + other.bound(k, j)).max().unwrap_or(i64::MIN / 4)
        };
        PolyMatrix::new(entries, bound)
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix, ExactError> {
        let entries = self.entries.try_add(&other.entries)?;
        PolyMatrix::new(entries, |i, j| self.bound(i, j).max(other.bound(i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rational::qi;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn trace_det_examples() {
        let n = Mat::from_rows(vec![vec![qi(0), qi(1)], vec![qi(0), qi(0)]]);
        assert_eq!(n.trace().unwrap(), qi(0));
        let m = Mat::from_rows(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[]), p(&[0, 1])]]);
        assert_eq!(m.det().unwrap(), p(&[0, 0, 1]));
    }

    #[test]
    fn charpoly_three_by_three() {
        let m = Mat::from_rows(vec![
            vec![qi(2), qi(1), qi(0)],
            vec![qi(0), qi(3), qi(4)],
            vec![qi(1), qi(0), qi(1)],
        ]);
        // det(λI − M) = λ³ − 6λ² + 11λ − 10
        assert_eq!(m.charpoly().unwrap(), vec![qi(-10), qi(11), qi(-6), qi(1)]);
        assert_eq!(m.det().unwrap(), qi(10));
    }

    #[test]
    fn kernel_example() {
        let m = Mat::from_rows(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[]), p(&[])]]);
        let k = kernel_over_fraction_field(&m);
        assert_eq!(k, vec![vec![p(&[1]), p(&[0, -1])]]);
        assert_eq!(rank_over_fraction_field(&m), 1);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Mat::<Rational>::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert!(a.trace().is_err());
        assert!(a.det().is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let a = Mat::from_rows(vec![vec![qi(1), qi(2)], vec![qi(3), qi(4)]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert_eq!(a.solve(&[qi(5), qi(11)]), Some(vec![qi(1), qi(2)]));
        let s = Mat::from_rows(vec![vec![qi(1), qi(1)], vec![qi(1), qi(1)]]);
        assert!(s.inverse().is_none());
        assert!(s.solve(&[qi(1), qi(2)]).is_none());
    }
}
