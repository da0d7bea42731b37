//! Cayley-Dickson doubling on signed-permutation structure tables.
//!
//! Doubling convention, for `x, y, z, w` in the previous algebra:
//!
//! ```text
//! (x, y)(z, w) = (xz - w̄y, wx + yz̄)
//! ```
//!
//! The basis of the doubled algebra lists `(e_j, 0)` first and `(0, e_j)`
//! second, so sub-algebra indices are preserved. With this convention the
//! quaternions satisfy `e1 e2 = e3` and `e2 e1 = -e3`.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{nullspace_basis, ExactMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_negative() { "-" } else { "+" })
    }
}

/// Finite-dimensional real algebra on a monomial basis `e_0 .. e_{dim-1}`
/// whose basis products are signed basis elements: `e_j e_k = ±e_l`.
///
/// Invariants checked on construction: `e_0` is a two-sided unit, and both
/// left and right multiplication by any basis unit permute the basis up to sign.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraTable {
    name: String,
    dim: usize,
    products: Vec<(Sign, usize)>,
}

impl AlgebraTable {
    /// `products[j * dim + k]` is `e_j e_k`.
    pub fn from_products(
        name: impl Into<String>,
        dim: usize,
        products: Vec<(Sign, usize)>,
    ) -> Result<Self> {
        let name = name.into();
        if dim == 0 || products.len() != dim * dim {
            return Err(Error::InvalidTable(format!(
                "{name}: {} products for dimension {dim}",
                products.len()
            )));
        }
        if let Some(&(_, l)) = products.iter().find(|(_, l)| *l >= dim) {
            return Err(Error::IndexOutOfRange { index: l, dim });
        }
        let table = AlgebraTable {
            name,
            dim,
            products,
        };
        for k in 0..dim {
            if table.product(0, k) != (Sign::Plus, k) || table.product(k, 0) != (Sign::Plus, k) {
                return Err(Error::InvalidTable(format!(
                    "{}: e0 is not a unit at {k}",
                    table.name
                )));
            }
        }
        for j in 0..dim {
            let mut row = vec![false; dim];
            let mut col = vec![false; dim];
            for k in 0..dim {
                if std::mem::replace(&mut row[table.product(j, k).1], true)
                    || std::mem::replace(&mut col[table.product(k, j).1], true)
                {
                    return Err(Error::InvalidTable(format!(
                        "{}: multiplication by e{j} is not a signed permutation",
                        table.name
                    )));
                }
            }
        }
        Ok(table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, j: usize, k: usize) -> (Sign, usize) {
        self.products[j * self.dim + k]
    }

    /// Every `e_j` with `j >= 1` squares to `-e_0`.
    pub fn has_imaginary_squares(&self) -> bool {
        (1..self.dim).all(|j| self.product(j, j) == (Sign::Minus, 0))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|j| (0..j).all(|k| self.product(j, k) == self.product(k, j)))
    }

    pub fn basis(&self, j: usize) -> Result<AlgebraElement<'_>> {
        AlgebraElement::basis(self, j)
    }
}

impl fmt::Debug for AlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraTable({}, dim {})", self.name, self.dim)
    }
}

/// The reals: one basis unit with `e0 e0 = e0`.
pub fn base_real() -> AlgebraTable {
    AlgebraTable::from_products("R", 1, vec![(Sign::Plus, 0)]).expect("valid table")
}

fn conj_sign(j: usize) -> Sign {
    if j == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// One Cayley-Dickson doubling step.
pub fn cd_double(a: &AlgebraTable) -> AlgebraTable {
    let d = a.dim;
    let n = 2 * d;
    let mut products = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let entry = match (j < d, k < d) {
                // (x,0)(z,0) = (xz, 0)
                (true, true) => a.product(j, k),
                // (x,0)(0,w) = (0, wx)
                (true, false) => {
                    let (s, l) = a.product(k - d, j);
                    (s, l + d)
                }
                // (0,y)(z,0) = (0, y z̄)
                (false, true) => {
                    let (s, l) = a.product(j - d, k);
                    (s * conj_sign(k), l + d)
                }
                // (0,y)(0,w) = (-w̄ y, 0)
                (false, false) => {
                    let (s, l) = a.product(k - d, j - d);
                    (-(s * conj_sign(k - d)), l)
                }
            };
            products.push(entry);
        }
    }
    let name = match a.name.as_str() {
        "R" => "C".to_string(),
        "C" => "H".to_string(),
        "H" => "O".to_string(),
        other => format!("CD({other})"),
    };
    AlgebraTable::from_products(name, n, products).expect("doubling preserves table invariants")
}

pub fn complex() -> AlgebraTable {
    cd_double(&base_real())
}

pub fn quaternions() -> AlgebraTable {
    cd_double(&complex())
}

pub fn octonions() -> AlgebraTable {
    cd_double(&quaternions())
}

/// First basis triple `(j, k, l)` with `(e_j e_k) e_l != e_j (e_k e_l)`.
pub fn associativity_witness(a: &AlgebraTable) -> Option<(usize, usize, usize)> {
    let n = a.dim;
    for j in 0..n {
        for k in 0..n {
            let (s1, m) = a.product(j, k);
            for l in 0..n {
                let (s2, left) = a.product(m, l);
                let (t1, r) = a.product(k, l);
                let (t2, right) = a.product(j, r);
                if (s1 * s2, left) != (t1 * t2, right) {
                    return Some((j, k, l));
                }
            }
        }
    }
    None
}

pub fn is_associative(a: &AlgebraTable) -> bool {
    associativity_witness(a).is_none()
}

/// Number of seeded random pairs tried by [`is_alternative`] on top of the
/// exhaustive basis check.
pub const ALTERNATIVE_SAMPLES: usize = 8;

/// Whether `(xx)y = x(xy)` and `(yx)x = y(xx)` for all `x, y`.
///
/// The associator is trilinear, so this is decided exactly by the polarized
/// identities on basis triples; a seeded batch of random integer pairs is
/// checked as well.
pub fn is_alternative(a: &AlgebraTable) -> bool {
    is_alternative_with_seed(a, crate::DEFAULT_SEED, ALTERNATIVE_SAMPLES)
}

pub fn is_alternative_with_seed(a: &AlgebraTable, seed: u64, samples: usize) -> bool {
    let n = a.dim;
    // associator of basis units as (coefficient, index) pairs on at most two indices
    let assoc = |j: usize, k: usize, l: usize| -> [(i64, usize); 2] {
        let (s1, m) = a.product(j, k);
        let (s2, left) = a.product(m, l);
        let (t1, r) = a.product(k, l);
        let (t2, right) = a.product(j, r);
        [((s1 * s2).to_i64(), left), (-(t1 * t2).to_i64(), right)]
    };
    let vanishes = |terms: &[(i64, usize)]| {
        let mut acc = std::collections::BTreeMap::new();
        for &(c, i) in terms {
            *acc.entry(i).or_insert(0i64) += c;
        }
        acc.values().all(|&c| c == 0)
    };
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let [a1, a2] = assoc(j, k, l);
                let [b1, b2] = assoc(k, j, l);
                if !vanishes(&[a1, a2, b1, b2]) {
                    return false;
                }
                let [c1, c2] = assoc(l, j, k);
                let [d1, d2] = assoc(l, k, j);
                if !vanishes(&[c1, c2, d1, d2]) {
                    return false;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let x = AlgebraElement::random(a, &mut rng);
        let y = AlgebraElement::random(a, &mut rng);
        let xx = x.mul_unchecked(&x);
        xx.mul_unchecked(&y) == x.mul_unchecked(&x.mul_unchecked(&y))
            && y.mul_unchecked(&x).mul_unchecked(&x) == y.mul_unchecked(&xx)
    })
}

/// Real rank of the center `{z : z e_k = e_k z for all k}`.
pub fn center_rank(a: &AlgebraTable) -> Result<usize> {
    if !is_associative(a) {
        return Err(Error::NotAssociative(a.name.clone()));
    }
    let n = a.dim;
    // Row (k, l): coefficient of e_l in z e_k - e_k z, as a linear form in z.
    let mut system = ExactMatrix::zeros(n * n, n);
    for k in 0..n {
        for j in 0..n {
            let (s, l) = a.product(j, k);
            let (t, m) = a.product(k, j);
            let add = |sys: &mut ExactMatrix, row: usize, v: i64| {
                let cur = sys.get(row, j).clone();
                sys.set(row, j, cur + BigRational::from_integer(v.into()));
            };
            add(&mut system, k * n + l, s.to_i64());
            add(&mut system, k * n + m, -t.to_i64());
        }
    }
    Ok(nullspace_basis(&system).len())
}

/// Searches `x = e_0 ± e_a`, `y = e_0 ± e_b` for a violation of `N(xy) = N(x)N(y)`.
pub fn norm_composition_witness(
    a: &AlgebraTable,
) -> Option<(AlgebraElement<'_>, AlgebraElement<'_>)> {
    let n = a.dim;
    let pair = |i: usize, s: i64| {
        let mut c = vec![0i64; n];
        c[0] += 1;
        c[i] += s;
        AlgebraElement::from_i64(a, &c).expect("length matches")
    };
    for i in 1..n {
        for j in 1..n {
            for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let (x, y) = (pair(i, s), pair(j, t));
                if x.mul_unchecked(&y).norm() != x.norm() * y.norm() {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

/// Exact coefficient vector in the basis of an algebra table.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<'a> {
    table: &'a AlgebraTable,
    coeffs: Vec<BigRational>,
}

impl<'a> AlgebraElement<'a> {
    pub fn new(table: &'a AlgebraTable, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != table.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} of dimension {}",
                coeffs.len(),
                table.name,
                table.dim
            )));
        }
        Ok(AlgebraElement { table, coeffs })
    }

    pub fn from_i64(table: &'a AlgebraTable, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            table,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(table: &'a AlgebraTable) -> Self {
        AlgebraElement {
            table,
            coeffs: vec![BigRational::zero(); table.dim],
        }
    }

    pub fn basis(table: &'a AlgebraTable, j: usize) -> Result<Self> {
        if j >= table.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: table.dim,
            });
        }
        let mut e = Self::zero(table);
        e.coeffs[j] = BigRational::one();
        Ok(e)
    }

    /// Integer coefficients drawn uniformly from `[-3, 3]`.
    pub fn random<R: Rng + ?Sized>(table: &'a AlgebraTable, rng: &mut R) -> Self {
        let coeffs = (0..table.dim)
            .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-3i64..=3))))
            .collect();
        AlgebraElement { table, coeffs }
    }

    pub fn table(&self) -> &'a AlgebraTable {
        self.table
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn same_algebra(&self, other: &AlgebraElement<'_>) -> bool {
        std::ptr::eq(self.table, other.table) || self.table == other.table
    }

    pub fn multiply(&self, other: &AlgebraElement<'_>) -> Result<AlgebraElement<'a>> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &AlgebraElement<'_>) -> AlgebraElement<'a> {
        let mut out = Self::zero(self.table);
        for (j, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
            {
                let (s, l) = self.table.product(j, k);
                let xy = x * y;
                match s {
                    Sign::Plus => out.coeffs[l] += xy,
                    Sign::Minus => out.coeffs[l] -= xy,
                }
            }
        }
        out
    }

    pub fn add(&self, other: &AlgebraElement<'_>) -> Result<AlgebraElement<'a>> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AlgebraElement {
            table: self.table,
            coeffs,
        })
    }

    pub fn scale(&self, k: &BigRational) -> AlgebraElement<'a> {
        AlgebraElement {
            table: self.table,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Negates every coefficient except that of `e_0`.
    pub fn conjugate(&self) -> AlgebraElement<'a> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { -c })
            .collect();
        AlgebraElement {
            table: self.table,
            coeffs,
        }
    }

    /// Sum of squared coefficients.
    pub fn norm(&self) -> BigRational {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for AlgebraElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_negative() {
                    format!("- {}e{i}", -c)
                } else {
                    format!("+ {c}e{i}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 in {}", self.table.name)
        } else {
            write!(f, "{} in {}", terms.join(" "), self.table.name)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals() {
        let r = base_real();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.product(0, 0), (Sign::Plus, 0));
        assert_eq!(cd_double(&r).dim(), 2);
    }

    #[test]
    fn complex_unit_squares_to_minus_one() {
        assert_eq!(complex().product(1, 1), (Sign::Minus, 0));
    }

    #[test]
    fn quaternion_convention() {
        let h = quaternions();
        assert_eq!(h.product(1, 2), (Sign::Plus, 3));
        assert_eq!(h.product(2, 1), (Sign::Minus, 3));
        let e1 = h.basis(1).unwrap();
        let e2 = h.basis(2).unwrap();
        assert_eq!(e1.multiply(&e2).unwrap(), h.basis(3).unwrap());
    }

    #[test]
    fn octonions_are_not_associative() {
        let o = octonions();
        assert_eq!(o.dim(), 8);
        let (a, b, c) = associativity_witness(&o).expect("octonions are nonassociative");
        let (s1, m) = o.product(a, b);
        let (s2, left) = o.product(m, c);
        let (t1, r) = o.product(b, c);
        let (t2, right) = o.product(a, r);
        assert_eq!(left, right);
        assert_eq!(s1 * s2, -(t1 * t2));
        assert!(is_associative(&quaternions()));
        assert!(is_associative(&complex()));
    }

    #[test]
    fn alternativity() {
        assert!(is_alternative(&octonions()));
        assert!(is_alternative(&quaternions()));
    }

    #[test]
    fn center_ranks() {
        assert_eq!(center_rank(&quaternions()).unwrap(), 1);
        assert_eq!(center_rank(&complex()).unwrap(), 2);
        assert_eq!(center_rank(&base_real()).unwrap(), 1);
        assert!(matches!(
            center_rank(&octonions()),
            Err(Error::NotAssociative(_))
        ));
    }

    #[test]
    fn conjugation_and_norm_basics() {
        let o = octonions();
        let e0 = o.basis(0).unwrap();
        let e1 = o.basis(1).unwrap();
        assert_eq!(e0.conjugate(), e0);
        assert_eq!(
            e1.conjugate(),
            e1.scale(&BigRational::from_integer((-1).into()))
        );
        assert!(e0.norm().is_one());
        assert!(AlgebraElement::zero(&o).norm().is_zero());
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let h = quaternions();
        let o = octonions();
        let x = h.basis(1).unwrap();
        let y = o.basis(1).unwrap();
        assert_eq!(x.multiply(&y), Err(Error::AlgebraMismatch));
        assert!(AlgebraElement::from_i64(&h, &[1, 2]).is_err());
        assert!(h.basis(4).is_err());
    }

    #[test]
    fn table_validation() {
        let bad_unit = AlgebraTable::from_products(
            "bad",
            2,
            vec![
                (Sign::Plus, 0),
                (Sign::Plus, 1),
                (Sign::Minus, 1),
                (Sign::Plus, 0),
            ],
        );
        assert!(bad_unit.is_err());
        let not_perm = AlgebraTable::from_products(
            "bad",
            2,
            vec![
                (Sign::Plus, 0),
                (Sign::Plus, 1),
                (Sign::Plus, 1),
                (Sign::Plus, 1),
            ],
        );
        assert!(not_perm.is_err());
    }
}
