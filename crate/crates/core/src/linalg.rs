//! Small dense matrices and subspaces over a [`Scalar`] backend.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalars::{Scalar, Tolerances};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { S::zero() })
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

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Symmetric part (X + Xᵗ)/2.
    pub fn sym_part(&self) -> Self {
        let half = S::from_ratio(1, 2);
        (self.clone() + self.transpose()).scale(&half)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    /// Frobenius inner product tr(XᵗY).
    pub fn frobenius(&self, other: &Self) -> S {
        self.data
            .iter()
            .zip(&other.data)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn is_zero_tol(&self, tol: &Tolerances) -> bool {
        self.data.iter().all(|x| x.is_zero_tol(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        self.rows == other.rows && self.cols == other.cols && (self.clone() - other.clone()).is_zero_tol(tol)
    }

    pub fn is_symmetric(&self, tol: &Tolerances) -> bool {
        self.approx_eq(&self.transpose(), tol)
    }

    /// Largest absolute entry, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self, tol: &Tolerances) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = rref_in_place(&mut aug, n, tol);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Determinant by elimination.
    pub fn determinant(&self, tol: &Tolerances) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(p) = choose_pivot(&m, col, col, tol) else {
                return S::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[(r, col)].is_exactly_zero() {
                    continue;
                }
                let f = m[(r, col)].clone() * inv.clone();
                for c in col..n {
                    let delta = f.clone() * m[(col, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - delta;
                }
            }
        }
        det
    }

    /// Solves `self * x = b` when a solution exists (least-norm not
    /// guaranteed; any particular solution is returned).
    pub fn solve(&self, b: &[S], tol: &Tolerances) -> Option<Vec<S>> {
        let n = self.cols;
        let mut aug = Mat::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = rref_in_place(&mut aug, n, tol);
        // Inconsistent if some zero row has nonzero right-hand side.
        for r in pivots.len()..self.rows {
            if !aug[(r, n)].is_zero_tol(tol) {
                return None;
            }
        }
        let mut x = vec![S::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, n)].clone();
        }
        Some(x)
    }

    pub fn null_space(&self, tol: &Tolerances) -> Vec<Vec<S>> {
        S::null_space(&self.data, self.rows, self.cols, tol)
    }

    pub fn rank(&self, tol: &Tolerances) -> usize {
        S::rank(&self.data, self.rows, self.cols, tol)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Converts entries to floats.
    pub fn to_f64(&self) -> Mat<f64> {
        self.map(|x| x.to_f64())
    }
}

fn choose_pivot<S: Scalar>(m: &Mat<S>, col: usize, from_row: usize, tol: &Tolerances) -> Option<usize> {
    if S::is_exact() {
        (from_row..m.rows).find(|&r| !m[(r, col)].is_exactly_zero())
    } else {
        let best = (from_row..m.rows).max_by(|&a, &b| {
            m[(a, col)]
                .to_f64()
                .abs()
                .total_cmp(&m[(b, col)].to_f64().abs())
        })?;
        (!m[(best, col)].is_negligible_pivot(tol)).then_some(best)
    }
}

/// Reduces the first `ncols` columns of `m` to reduced row echelon form,
/// applying the same row operations to the remaining columns. Returns the
/// pivot columns in order.
pub(crate) fn rref_in_place<S: Scalar>(m: &mut Mat<S>, ncols: usize, tol: &Tolerances) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.rows {
            break;
        }
        let Some(p) = choose_pivot(m, col, row, tol) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m[(row, col)].inv().expect("nonzero pivot");
        for c in col..m.cols {
            if !m[(row, c)].is_exactly_zero() {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_exactly_zero() {
                continue;
            }
            let f = m[(r, col)].clone();
            for c in col..m.cols {
                if m[(row, c)].is_exactly_zero() {
                    continue;
                }
                let delta = f.clone() * m[(row, c)].clone();
                m[(r, c)] = m[(r, c)].clone() - delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Null space basis by Gauss-Jordan elimination.
pub(crate) fn gauss_null_space<S: Scalar>(data: &[S], rows: usize, cols: usize, tol: &Tolerances) -> Vec<Vec<S>> {
    let mut m = Mat {
        rows,
        cols,
        data: data.to_vec(),
    };
    let pivots = rref_in_place(&mut m, cols, tol);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, f)].clone();
            }
            v
        })
        .collect()
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Add for Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<S: Scalar> Sub for Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<S: Scalar> Neg for Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: Mat<S> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_exactly_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_exactly_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<S: Scalar> Mul for Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: Mat<S>) -> Mat<S> {
        &self * &rhs
    }
}

impl<S: fmt::Display> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Linear span of vectors in a coordinate space of fixed dimension.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vec<S>>,
}

impl<S: Scalar> Subspace<S> {
    /// Span of `vectors`; the stored basis is the reduced row echelon form of
    /// the spanning set.
    pub fn span(ambient: usize, vectors: &[Vec<S>], tol: &Tolerances) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let mut m = Mat::from_rows(vectors.to_vec());
        let pivots = rref_in_place(&mut m, ambient, tol);
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Mat::<S>::identity(ambient);
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| id.row(i).to_vec()).collect(),
        }
    }

    /// Span of standard basis vectors with the given (0-based) indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vectors: Vec<Vec<S>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![S::zero(); ambient];
                v[i] = S::one();
                v
            })
            .collect();
        Self::span(ambient, &vectors, &Tolerances::default())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    fn stacked_rank(&self, extra: &[Vec<S>], tol: &Tolerances) -> usize {
        let mut rows = self.basis.clone();
        rows.extend_from_slice(extra);
        if rows.is_empty() {
            return 0;
        }
        let m = Mat::from_rows(rows);
        m.rank(tol)
    }

    pub fn contains(&self, v: &[S], tol: &Tolerances) -> bool {
        self.stacked_rank(&[v.to_vec()], tol) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace<S>, tol: &Tolerances) -> bool {
        self.stacked_rank(&other.basis, tol) == self.dim()
    }

    pub fn sum(&self, other: &Subspace<S>, tol: &Tolerances) -> Subspace<S> {
        let mut vectors = self.basis.clone();
        vectors.extend_from_slice(&other.basis);
        Self::span(self.ambient, &vectors, tol)
    }

    pub fn same_as(&self, other: &Subspace<S>, tol: &Tolerances) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other, tol)
    }

    /// Indices of standard basis vectors completing this subspace to the
    /// whole space.
    pub fn complement_coordinates(&self, tol: &Tolerances) -> Vec<usize> {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for i in 0..self.ambient {
            let mut e = vec![S::zero(); self.ambient];
            e[i] = S::one();
            if !current.contains(&e, tol) {
                current = current.sum(&Subspace::span(self.ambient, &[e], tol), tol);
                chosen.push(i);
            }
        }
        chosen
    }
}
