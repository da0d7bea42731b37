use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactMatrix;

/// A signed permutation matrix: column `j` is `sign[j] * e_{perm[j]}`.
///
/// Every operator built from a structure table of unit basis products is of
/// this form, and so are their products and Kronecker products.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Vec<u32>,
    negative: Vec<bool>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            perm: (0..n as u32).collect(),
            negative: vec![false; n],
        }
    }

    /// Builds from explicit images. Panics if `images` is not a permutation.
    pub fn from_images(images: impl IntoIterator<Item = (usize, bool)>) -> Self {
        let (perm, negative): (Vec<u32>, Vec<bool>) =
            images.into_iter().map(|(i, neg)| (i as u32, neg)).unzip();
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            assert!(
                !std::mem::replace(&mut seen[i as usize], true),
                "not a permutation"
            );
        }
        SignedPerm { perm, negative }
    }

    pub fn from_matrix(m: &ExactMatrix) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        let mut images = Vec::with_capacity(n);
        for c in 0..n {
            let mut hit = None;
            for r in 0..n {
                let v = m.get(r, c);
                if v.is_zero() {
                    continue;
                }
                if hit.is_some() || !v.is_integer() || !v.numer().abs().is_one() {
                    return None;
                }
                hit = Some((r, v.is_negative()));
            }
            images.push(hit?);
        }
        let mut seen = vec![false; n];
        for &(r, _) in &images {
            if std::mem::replace(&mut seen[r], true) {
                return None;
            }
        }
        Some(Self::from_images(images))
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Image of basis vector `j` as `(index, negative)`.
    pub fn image(&self, j: usize) -> (usize, bool) {
        (self.perm[j] as usize, self.negative[j])
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &SignedPerm) -> SignedPerm {
        let (perm, negative) = rhs
            .perm
            .iter()
            .zip(&rhs.negative)
            .map(|(&mid, &neg)| (self.perm[mid as usize], neg ^ self.negative[mid as usize]))
            .unzip();
        SignedPerm { perm, negative }
    }

    pub fn negated(&self) -> SignedPerm {
        SignedPerm {
            perm: self.perm.clone(),
            negative: self.negative.iter().map(|n| !n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
            && self.negative.iter().all(|n| !n)
    }

    pub fn kron(&self, rhs: &SignedPerm) -> SignedPerm {
        let m = rhs.dim();
        let images = (0..self.dim() * m).map(|c| {
            let (a, na) = self.image(c / m);
            let (b, nb) = rhs.image(c % m);
            (a * m + b, na ^ nb)
        });
        SignedPerm::from_images(images)
    }

    /// Key identifying `±self`: the sign pattern is normalized so column 0 is positive.
    pub fn projective_key(&self) -> (Vec<u32>, Vec<bool>) {
        let flip = self.negative.first().copied().unwrap_or(false);
        (
            self.perm.clone(),
            self.negative.iter().map(|n| n ^ flip).collect(),
        )
    }

    /// Nonzero entries of the row-major flattening, sorted by position.
    pub fn flat_support(&self) -> Vec<(usize, bool)> {
        let n = self.dim();
        let mut out: Vec<(usize, bool)> = (0..n)
            .map(|c| (self.perm[c] as usize * n + c, self.negative[c]))
            .collect();
        out.sort_unstable_by_key(|&(i, _)| i);
        out
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.dim();
        let mut m = ExactMatrix::zeros(n, n);
        for c in 0..n {
            let (r, neg) = self.image(c);
            let v = if neg { -1 } else { 1 };
            m.set(r, c, BigRational::from_integer(BigInt::from(v)));
        }
        m
    }
}
