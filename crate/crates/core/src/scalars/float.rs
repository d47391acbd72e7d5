use nalgebra::DMatrix;

use super::{Scalar, Tolerances};

/// Float backend value. Tolerances travel separately as a [`Tolerances`] profile.
pub type FloatScalar = f64;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn is_zero_tol(&self, tol: &Tolerances) -> bool {
        self.abs() <= tol.eq_tol
    }

    fn is_negligible_pivot(&self, tol: &Tolerances) -> bool {
        self.abs() <= tol.rank_tol
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }

    fn null_space(data: &[f64], rows: usize, cols: usize, tol: &Tolerances) -> Vec<Vec<f64>> {
        if cols == 0 {
            return Vec::new();
        }
        // Pad to at least `cols` rows so the SVD returns a full right basis.
        let padded = rows.max(cols);
        let m = DMatrix::from_fn(padded, cols, |i, j| if i < rows { data[i * cols + j] } else { 0.0 });
        let svd = m.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        svd.singular_values
            .iter()
            .enumerate()
            .filter(|(_, s)| **s <= tol.rank_tol)
            .map(|(k, _)| v_t.row(k).iter().copied().collect())
            .collect()
    }
}
