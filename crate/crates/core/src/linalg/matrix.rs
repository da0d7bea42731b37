use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::SignedPerm;
use crate::error::{Error, Result};

/// Dense matrix with exact rational entries, stored row-major.
///
/// Integer-valued matrices take an `i64` fast path in multiplication when all
/// entries fit; results are always exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&v| int(v)).collect())
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            entries.extend(r.as_ref().iter().map(|&v| int(v)));
        }
        ExactMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
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

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major flattening, the vector form used by span computations.
    pub fn flatten(&self) -> Vec<BigRational> {
        self.entries.clone()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|q| q.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Entries as `i64` when every entry is an integer that fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|q| {
                if q.is_integer() {
                    q.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Entries as big integers when every denominator is 1.
    pub fn to_bigint(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|q| q.is_integer().then(|| q.numer().clone()))
            .collect()
    }

    pub fn as_signed_perm(&self) -> Option<SignedPerm> {
        SignedPerm::from_matrix(self)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * k).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if let (Some(a), Some(b)) = (self.to_i64(), rhs.to_i64()) {
            if let Some(m) = mul_i64(&a, &b, self.rows, self.cols, rhs.cols) {
                return Ok(m);
            }
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![BigRational::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = &rhs.entries[l * m + j];
                    if !b.is_zero() {
                        out[i * m + j] += a * b;
                    }
                }
            }
        }
        Ok(ExactMatrix {
            rows: n,
            cols: m,
            entries: out,
        })
    }

    fn zip_with(
        &self,
        rhs: &ExactMatrix,
        op: &str,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<ExactMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    /// `self^k` by repeated squaring. Panics if not square.
    pub fn pow(&self, mut k: u32) -> ExactMatrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = ExactMatrix::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self * v` for a column vector.
    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// True when `self * other == other * self`.
    pub fn commutes_with(&self, other: &ExactMatrix) -> bool {
        match (self.checked_mul(other), other.checked_mul(self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn mul_i64(a: &[i64], b: &[i64], n: usize, k: usize, m: usize) -> Option<ExactMatrix> {
    let mut acc = vec![0i128; n * m];
    for i in 0..n {
        for l in 0..k {
            let x = a[i * k + l] as i128;
            if x == 0 {
                continue;
            }
            for j in 0..m {
                let y = b[l * m + j] as i128;
                if y != 0 {
                    acc[i * m + j] = acc[i * m + j].checked_add(x.checked_mul(y)?)?;
                }
            }
        }
    }
    let entries = acc
        .into_iter()
        .map(|v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    Some(ExactMatrix {
        rows: n,
        cols: m,
        entries,
    })
}

/// Kronecker product `a ⊗ b`; block `(i, j)` is `a[i][j] * b`.
pub fn kron(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let (br, bc) = (b.rows, b.cols);
    ExactMatrix::from_fn(a.rows * br, a.cols * bc, |r, c| {
        let x = a.get(r / br, c / bc);
        if x.is_zero() {
            BigRational::zero()
        } else {
            x * b.get(r % br, c % bc)
        }
    })
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix product dimensions")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).expect("matrix sum dimensions")
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(rhs).expect("matrix difference dimensions")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ExactMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ExactMatrix::identity(4));
    }

    #[test]
    fn kron_shape_multiplies() {
        let a = ExactMatrix::from_rows(&[[1, 2], [3, 4]]);
        let b = ExactMatrix::from_rows(&[[1, 0, 2], [0, 1, 0], [5, 0, 1]]);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
    }

    #[test]
    fn kron_swap_with_scalar() {
        // Expanded by hand: [[0*2, 1*2], [1*2, 0*2]].
        let swap = ExactMatrix::from_rows(&[[0, 1], [1, 0]]);
        let two = ExactMatrix::from_rows(&[[2]]);
        assert_eq!(kron(&swap, &two), ExactMatrix::from_rows(&[[0, 2], [2, 0]]));
    }

    #[test]
    fn kron_mixed_product_rule() {
        let a = ExactMatrix::from_rows(&[[1, 2], [0, -1]]);
        let b = ExactMatrix::from_rows(&[[3, 0], [1, 1]]);
        let c = ExactMatrix::from_rows(&[[0, 1], [1, 1]]);
        let d = ExactMatrix::from_rows(&[[2, -1], [0, 4]]);
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_product_falls_back_from_integer_path() {
        let half = BigRational::new(1.into(), 2.into());
        let a = ExactMatrix::identity(2).scale(&half);
        let b = ExactMatrix::from_rows(&[[2, 4], [6, 8]]);
        assert_eq!(&a * &b, ExactMatrix::from_rows(&[[1, 2], [3, 4]]));
    }

    #[test]
    fn overflowing_integer_product_stays_exact() {
        let big = i64::MAX;
        let a = ExactMatrix::from_rows(&[[big, big, big]]);
        let b = ExactMatrix::from_rows(&[[big], [big], [big]]);
        let expected = BigInt::from(big) * BigInt::from(big) * 3;
        assert_eq!((&a * &b).get(0, 0), &BigRational::from_integer(expected));
    }

    #[test]
    fn new_rejects_wrong_length() {
        assert!(ExactMatrix::from_i64(2, 2, &[1, 2, 3]).is_err());
        let a = ExactMatrix::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
    }
}
