use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Scalar, Tolerances};

/// Radicands of the coordinate basis, in storage order.
pub const RADICANDS: [u32; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

// Each basis element √n is identified with the set of primes dividing n,
// encoded as bits (2 -> 1, 3 -> 2, 5 -> 4).
const IDX_TO_MASK: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];
const MASK_TO_IDX: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];
const PRIMES: [i64; 3] = [2, 3, 5];

fn common_factor(mask: usize) -> i64 {
    PRIMES
        .iter()
        .enumerate()
        .filter(|(bit, _)| mask & (1 << bit) != 0)
        .map(|(_, p)| *p)
        .product()
}

/// Exact element of Q(√2, √3, √5), stored as eight rational coordinates with
/// respect to the basis {1, √2, √3, √5, √6, √10, √15, √30}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    coords: [BigRational; 8],
}

impl ExactScalar {
    pub fn from_coords(coords: [BigRational; 8]) -> Self {
        ExactScalar { coords }
    }

    pub fn coords(&self) -> &[BigRational; 8] {
        &self.coords
    }

    pub fn rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.coords[0] = q;
        s
    }

    /// `√n` for a radicand in [`RADICANDS`].
    pub fn sqrt_basis(n: u32) -> Option<Self> {
        let idx = RADICANDS.iter().position(|&r| r == n)?;
        let mut s = Self::zero();
        s.coords[idx] = BigRational::one();
        Some(s)
    }

    /// Rational part if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..8 {
            if self.coords[i].is_zero() {
                continue;
            }
            let mi = IDX_TO_MASK[i];
            for j in 0..8 {
                if other.coords[j].is_zero() {
                    continue;
                }
                let mj = IDX_TO_MASK[j];
                let factor = common_factor(mi & mj);
                let k = MASK_TO_IDX[mi ^ mj];
                let term = &self.coords[i] * &other.coords[j];
                out.coords[k] += term * BigInt::from(factor);
            }
        }
        out
    }

    /// Matrix of multiplication by `self` in the coordinate basis (column j is
    /// `self * basis_j`).
    fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); 8]; 8];
        for j in 0..8 {
            let mut b = Self::zero();
            b.coords[j] = BigRational::one();
            let prod = self.mul_ref(&b);
            for i in 0..8 {
                m[i][j] = prod.coords[i].clone();
            }
        }
        m
    }

    fn div_ref(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_exactly_zero() {
            return None;
        }
        if let Some(q) = divisor.as_rational() {
            let mut out = self.clone();
            for c in out.coords.iter_mut() {
                *c = &*c / q;
            }
            return Some(out);
        }
        // Solve M(divisor) z = self over Q.
        let mut m = divisor.multiplication_matrix();
        for (row, rhs) in m.iter_mut().zip(self.coords.iter()) {
            row.push(rhs.clone());
        }
        for col in 0..8 {
            let pivot = (col..8).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for c in col..9 {
                m[col][c] = &m[col][c] / &p;
            }
            for r in 0..8 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..9 {
                        let delta = &f * &m[col][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        let mut coords: [BigRational; 8] = Default::default();
        for (i, c) in coords.iter_mut().enumerate() {
            *c = m[i][8].clone();
        }
        Some(ExactScalar { coords })
    }

    /// Approximation of the value with rigorous error bound, using `bits`
    /// fractional bits for each square root. Returns (approximation, bound).
    fn approximate(&self, bits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::one() << bits;
        let scale_sq = &scale * &scale;
        let unit = BigRational::new(BigInt::one(), scale.clone());
        let mut value = BigRational::zero();
        let mut err = BigRational::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                value += c.clone();
                continue;
            }
            let root = (&scale_sq * BigInt::from(RADICANDS[i])).sqrt();
            value += c * BigRational::new(root, scale.clone());
            err += c.abs() * &unit;
        }
        (value, err)
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: ExactScalar) -> ExactScalar {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            if !b.is_zero() {
                *a += b;
            }
        }
        self
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(mut self, rhs: ExactScalar) -> ExactScalar {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            if !b.is_zero() {
                *a -= b;
            }
        }
        self
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        self.mul_ref(rhs)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(mut self) -> ExactScalar {
        for c in self.coords.iter_mut() {
            if !c.is_zero() {
                *c = -c.clone();
            }
        }
        self
    }
}

impl std::ops::Div for ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked variant.
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        self.div_ref(&rhs).expect("division by zero in Q(√2,√3,√5)")
    }
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar {
            coords: Default::default(),
        }
    }

    fn one() -> Self {
        Self::rational(BigRational::one())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    fn inv(&self) -> Option<Self> {
        Self::one().div_ref(self)
    }

    fn is_zero_tol(&self, _tol: &Tolerances) -> bool {
        self.is_exactly_zero()
    }

    fn is_negligible_pivot(&self, _tol: &Tolerances) -> bool {
        self.is_exactly_zero()
    }

    fn is_exactly_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn to_f64(&self) -> f64 {
        if self.is_exactly_zero() {
            return 0.0;
        }
        // A nonzero field element is bounded away from zero, so refining the
        // square roots eventually separates the value from its error bound.
        let mut bits = 96;
        loop {
            let (value, err) = self.approximate(bits);
            let margin = err * BigRational::from_integer(BigInt::one() << 64u32);
            if value.abs() > margin {
                return value.to_f64().unwrap_or(f64::NAN);
            }
            bits *= 2;
        }
    }

    fn is_exact() -> bool {
        true
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::surd::format_surd(self))
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({})", self)
    }
}
