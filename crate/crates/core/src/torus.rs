//! The complex torus `B / B_Z`: complex structure, endomorphism ranks,
//! splitting into `C / Z[i]` factors, order census and analytic representation.
//!
//! The period lattice is the integer span of the standard basis, so an
//! integer matrix preserves it and `End(T)` is the set of integer matrices
//! commuting with `J`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::adjoint::{componentwise_generators, left_mult_matrix, AdjointGeneratorSet};
use crate::error::{Error, Result};
use crate::linalg::field::Field;
use crate::linalg::{
    close_signed, matrix_order, nullspace_basis, run_certified, ClosureSummary, Echelon,
    ExactMatrix, RankJob, RankOutcome, RankPolicy, SignedPerm,
};
use crate::tensor::{ResourceGuard, TensorAlgebra};

/// Left multiplication by the complex unit `i ⊗ 1 ⊗ ... ⊗ 1`.
pub fn complex_structure(b: &TensorAlgebra) -> ExactMatrix {
    left_mult_matrix(b.table(), b.complex_unit()).expect("complex unit is a basis index")
}

/// Checks that `j` is a square integer matrix with `j² = -I`.
pub fn check_complex_structure(j: &ExactMatrix) -> Result<()> {
    if !j.is_square() {
        return Err(Error::NotComplexStructure(format!(
            "{}x{} is not square",
            j.rows(),
            j.cols()
        )));
    }
    if !j.is_integer() {
        return Err(Error::NotComplexStructure(
            "entries are not integers".into(),
        ));
    }
    if (j * j) != -&ExactMatrix::identity(j.rows()) {
        return Err(Error::NotComplexStructure("J² != -I".into()));
    }
    Ok(())
}

/// The torus `B(p, q) / B_Z(p, q)` in the standard basis.
#[derive(Debug, Clone)]
pub struct TorusModel {
    algebra: TensorAlgebra,
    j: ExactMatrix,
    j_perm: SignedPerm,
    adjoint_gens: AdjointGeneratorSet,
}

impl TorusModel {
    pub fn new(algebra: TensorAlgebra) -> Result<Self> {
        let j = complex_structure(&algebra);
        check_complex_structure(&j)?;
        let j_perm = j.as_signed_perm().expect("left multiplication by a unit");
        let adjoint_gens = componentwise_generators(&algebra);
        Ok(TorusModel {
            algebra,
            j,
            j_perm,
            adjoint_gens,
        })
    }

    pub fn build(p: usize, q: usize, guard: &ResourceGuard) -> Result<Self> {
        Self::new(TensorAlgebra::build(p, q, guard)?)
    }

    pub fn p(&self) -> usize {
        self.algebra.p()
    }

    pub fn q(&self) -> usize {
        self.algebra.q()
    }

    pub fn real_dim(&self) -> usize {
        self.algebra.real_dim()
    }

    pub fn complex_dim(&self) -> usize {
        self.algebra.complex_dim()
    }

    pub fn algebra(&self) -> &TensorAlgebra {
        &self.algebra
    }

    pub fn complex_structure(&self) -> &ExactMatrix {
        &self.j
    }

    pub fn adjoint_generators(&self) -> &AdjointGeneratorSet {
        &self.adjoint_gens
    }

    /// `2 n²` for complex dimension `n`, the ceiling on the rank of `End(T)`.
    pub fn rank_ceiling(&self) -> usize {
        2 * self.complex_dim() * self.complex_dim()
    }
}

/// An integer matrix commuting with `J`: a candidate torus endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndomorphismCandidate {
    matrix: ExactMatrix,
}

impl EndomorphismCandidate {
    pub fn new(matrix: ExactMatrix, j: &ExactMatrix) -> Result<Self> {
        Self::labelled(matrix, j, "matrix")
    }

    fn labelled(matrix: ExactMatrix, j: &ExactMatrix, label: &str) -> Result<Self> {
        if matrix.rows() != j.rows() || !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{label} is {}x{}, J is {}x{}",
                matrix.rows(),
                matrix.cols(),
                j.rows(),
                j.cols()
            )));
        }
        if !matrix.is_integer() {
            return Err(Error::NotIntegral(label.to_string()));
        }
        if !matrix.commutes_with(j) {
            return Err(Error::NotHolomorphic(label.to_string()));
        }
        Ok(EndomorphismCandidate { matrix })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }
}

/// Linear system `M J - J M = 0` in the `n²` entries of `M`, one sparse row per entry.
struct CommutatorSystem {
    n: usize,
    rows: Vec<Vec<(usize, BigRational)>>,
}

impl CommutatorSystem {
    fn new(j: &ExactMatrix) -> Self {
        let n = j.rows();
        let col_support: Vec<Vec<(usize, BigRational)>> = (0..n)
            .map(|b| {
                (0..n)
                    .filter(|&c| !j.get(c, b).is_zero())
                    .map(|c| (c, j.get(c, b).clone()))
                    .collect()
            })
            .collect();
        let row_support: Vec<Vec<(usize, BigRational)>> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&c| !j.get(a, c).is_zero())
                    .map(|c| (c, j.get(a, c).clone()))
                    .collect()
            })
            .collect();
        let mut rows = Vec::with_capacity(n * n);
        for (a, row_a) in row_support.iter().enumerate() {
            for (b, col_b) in col_support.iter().enumerate() {
                let mut terms: BTreeMap<usize, BigRational> = BTreeMap::new();
                // (M J)[a, b] = sum_c M[a, c] J[c, b]
                for (c, v) in col_b {
                    *terms.entry(a * n + c).or_insert_with(BigRational::zero) += v;
                }
                // (J M)[a, b] = sum_c J[a, c] M[c, b]
                for (c, v) in row_a {
                    *terms.entry(c * n + b).or_insert_with(BigRational::zero) -= v;
                }
                rows.push(terms.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        CommutatorSystem { n, rows }
    }
}

impl RankJob for CommutatorSystem {
    type Output = usize;

    fn run<F: Field>(&self, field: F) -> Result<usize> {
        let mut echelon = Echelon::new(field, self.n * self.n);
        for row in &self.rows {
            let v = row
                .iter()
                .map(|(i, q)| Ok((*i, echelon.field().reduce(q)?)))
                .collect::<Result<Vec<_>>>()?;
            let v: Vec<_> = v
                .into_iter()
                .filter(|(_, x)| !echelon.field().is_zero(x))
                .collect();
            echelon.insert(&v);
        }
        Ok(echelon.rank())
    }

    fn rank_of(out: &usize) -> usize {
        *out
    }
}

/// Rank of `{M : M J = J M}`, the nullity of the commutator system.
pub fn commutant_rank(j: &ExactMatrix, policy: &RankPolicy) -> Result<RankOutcome> {
    check_complex_structure(j)?;
    let system = CommutatorSystem::new(j);
    let unknowns = system.n * system.n;
    let (rank, method) = run_certified(&system, unknowns, policy)?;
    Ok(RankOutcome {
        rank: unknowns - rank,
        method,
    })
}

/// Exact basis of the commutant of `j`, as matrices.
pub fn commutant_basis(j: &ExactMatrix) -> Result<Vec<ExactMatrix>> {
    check_complex_structure(j)?;
    let system = CommutatorSystem::new(j);
    let n = system.n;
    let mut dense = ExactMatrix::zeros(n * n, n * n);
    for (r, row) in system.rows.iter().enumerate() {
        for (c, v) in row {
            dense.set(r, *c, v.clone());
        }
    }
    nullspace_basis(&dense)
        .into_iter()
        .map(|v| ExactMatrix::new(n, n, v))
        .collect()
}

/// A random integer endomorphism `X - J X J` with entries of `X` in `[-3, 3]`.
pub fn random_commutant_element<R: Rng + ?Sized>(j: &ExactMatrix, rng: &mut R) -> ExactMatrix {
    let n = j.rows();
    let x = ExactMatrix::from_fn(n, n, |_, _| {
        BigRational::from_integer(BigInt::from(rng.random_range(-3i64..=3)))
    });
    &x - &(&(j * &x) * j)
}

/// Rank of the algebra generated by the adjoint images inside `End(T)`.
///
/// Every generator is checked to be an integer matrix commuting with `J`,
/// and so is every element of the closure basis.
pub fn rho_image_rank(
    t: &TorusModel,
    max_products: usize,
    policy: &RankPolicy,
) -> Result<ClosureSummary> {
    let gens = t.adjoint_generators();
    for (label, g) in gens.iter() {
        EndomorphismCandidate::labelled(g.clone(), &t.j, label)?;
    }
    let (elements, summary) = close_signed(gens.perms(), max_products, policy)?;
    for (k, e) in elements.iter().enumerate() {
        if e.compose(&t.j_perm) != t.j_perm.compose(e) {
            return Err(Error::NotHolomorphic(format!("closure basis element {k}")));
        }
    }
    Ok(summary)
}

/// Pairs `(k, k')` with `J e_k = e_{k'}`, partitioning the basis into
/// `complex_dim` J-stable planes each carrying the lattice `Z e_k ⊕ Z J e_k ≅ Z[i]`.
pub fn splitting_pairs(t: &TorusModel) -> Result<Vec<(usize, usize)>> {
    let j = &t.j_perm;
    let n = j.dim();
    let mut assigned = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    for k in 0..n {
        if assigned[k] {
            continue;
        }
        let (l, neg) = j.image(k);
        if l == k {
            return Err(Error::SplittingFailed(format!("J fixes the line of e{k}")));
        }
        if assigned[l] {
            return Err(Error::SplittingFailed(format!(
                "e{l} already lies in another plane"
            )));
        }
        let (back, back_neg) = j.image(l);
        if back != k || back_neg == neg {
            return Err(Error::SplittingFailed(format!(
                "span(e{k}, e{l}) is not J-stable"
            )));
        }
        assigned[k] = true;
        assigned[l] = true;
        pairs.push(if neg { (l, k) } else { (k, l) });
    }
    pairs.sort_unstable();
    if pairs.len() != t.complex_dim() {
        return Err(Error::SplittingFailed(format!(
            "{} planes for complex dimension {}",
            pairs.len(),
            t.complex_dim()
        )));
    }
    Ok(pairs)
}

/// Multiplicative orders of the adjoint generators and of the powers of `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCensus {
    pub max_order: usize,
    pub entries: Vec<(String, Option<usize>)>,
}

impl OrderCensus {
    /// Count per order; `None` collects elements with no order up to `max_order`.
    pub fn histogram(&self) -> BTreeMap<Option<usize>, usize> {
        let mut h = BTreeMap::new();
        for (_, order) in &self.entries {
            *h.entry(*order).or_insert(0) += 1;
        }
        h
    }

    pub fn of_order(&self, order: usize) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, o)| *o == Some(order))
            .map(|(l, _)| l.as_str())
            .collect()
    }

    pub fn order_of(&self, label: &str) -> Option<Option<usize>> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, o)| *o)
    }
}

impl fmt::Display for OrderCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .histogram()
            .into_iter()
            .map(|(order, count)| match order {
                Some(k) => format!("order {k}: {count}"),
                None => format!("order > {}: {count}", self.max_order),
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

pub fn order_census(t: &TorusModel, max_order: usize) -> OrderCensus {
    let mut entries = Vec::new();
    let mut power = ExactMatrix::identity(t.real_dim());
    for k in 1..=4 {
        power = &power * &t.j;
        let label = if k == 1 {
            "J".to_string()
        } else {
            format!("J^{k}")
        };
        entries.push((label, matrix_order(&power, max_order)));
    }
    for (label, g) in t.adjoint_generators().iter() {
        entries.push((label.to_string(), matrix_order(g, max_order)));
    }
    OrderCensus { max_order, entries }
}

pub type GaussianRational = Complex<BigRational>;

/// Square matrix with exact Gaussian-rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

fn czero() -> GaussianRational {
    Complex::new(BigRational::zero(), BigRational::zero())
}

impl ComplexMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        ComplexMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Complex::new(BigRational::one(), BigRational::zero()))
    }

    pub fn scalar(n: usize, z: GaussianRational) -> Self {
        Self::from_fn(n, |r, c| if r == c { z.clone() } else { czero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.n + c]
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.n, "vector length");
        (0..self.n)
            .map(|r| {
                let mut acc = czero();
                for (a, b) in self.entries[r * self.n..(r + 1) * self.n].iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "complex matrix sizes");
        let n = self.n;
        let mut out = vec![czero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] = out[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        ComplexMatrix { n, entries: out }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.n, self.n)?;
        for r in 0..self.n {
            let cells: Vec<String> = (0..self.n)
                .map(|c| {
                    let z = self.get(r, c);
                    format!("{}{:+}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Complex coordinates `z_m = v[k_m] + i v[k'_m]` of a real vector under the splitting.
pub fn complex_coordinates(pairs: &[(usize, usize)], v: &[BigRational]) -> Vec<GaussianRational> {
    pairs
        .iter()
        .map(|&(k, kp)| Complex::new(v[k].clone(), v[kp].clone()))
        .collect()
}

/// The complex matrix of `M` on the tangent space, in the complex basis
/// `e_{k_1}, ..., e_{k_n}` given by the splitting pairs.
pub fn analytic_representation(t: &TorusModel, m: &EndomorphismCandidate) -> Result<ComplexMatrix> {
    let m = m.matrix();
    if m.rows() != t.real_dim() || !m.commutes_with(&t.j) {
        return Err(Error::NotHolomorphic(
            "analytic representation argument".into(),
        ));
    }
    let pairs = splitting_pairs(t)?;
    Ok(ComplexMatrix::from_fn(pairs.len(), |r, c| {
        let (kr, kr_j) = pairs[r];
        let (kc, _) = pairs[c];
        Complex::new(m.get(kr, kc).clone(), m.get(kr_j, kc).clone())
    }))
}
