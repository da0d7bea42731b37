//! Left and right multiplication operators, the maps `A_{x,y}(a) = (y a) x`,
//! and the componentwise generator set of the adjoint algebra of `B(p, q)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cayley_dickson::{AlgebraElement, AlgebraTable};
use crate::error::{Error, Result};
use crate::linalg::{
    closure_rank, rank_with_policy, ClosureSummary, ExactMatrix, RankOutcome, RankPolicy,
    SignedPerm,
};
use crate::tensor::{Factor, TensorAlgebra};

fn check_index(a: &AlgebraTable, j: usize) -> Result<()> {
    if j >= a.dim() {
        return Err(Error::IndexOutOfRange {
            index: j,
            dim: a.dim(),
        });
    }
    Ok(())
}

/// `x ↦ e_j x` as a signed permutation.
pub fn left_mult_perm(a: &AlgebraTable, j: usize) -> Result<SignedPerm> {
    check_index(a, j)?;
    Ok(SignedPerm::from_images((0..a.dim()).map(|k| {
        let (s, l) = a.product(j, k);
        (l, s.is_negative())
    })))
}

/// `x ↦ x e_j` as a signed permutation.
pub fn right_mult_perm(a: &AlgebraTable, j: usize) -> Result<SignedPerm> {
    check_index(a, j)?;
    Ok(SignedPerm::from_images((0..a.dim()).map(|k| {
        let (s, l) = a.product(k, j);
        (l, s.is_negative())
    })))
}

/// Matrix of `x ↦ e_j x` in the standard basis.
pub fn left_mult_matrix(a: &AlgebraTable, j: usize) -> Result<ExactMatrix> {
    left_mult_perm(a, j).map(|p| p.to_matrix())
}

/// Matrix of `x ↦ x e_j` in the standard basis.
pub fn right_mult_matrix(a: &AlgebraTable, j: usize) -> Result<ExactMatrix> {
    right_mult_perm(a, j).map(|p| p.to_matrix())
}

fn combine(
    a: &AlgebraTable,
    x: &AlgebraElement<'_>,
    unit: fn(&AlgebraTable, usize) -> Result<ExactMatrix>,
) -> Result<ExactMatrix> {
    let mut acc = ExactMatrix::zeros(a.dim(), a.dim());
    for (j, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &unit(a, j)?.scale(c);
        }
    }
    Ok(acc)
}

fn check_member(a: &AlgebraTable, x: &AlgebraElement<'_>) -> Result<()> {
    if std::ptr::eq(x.table(), a) || x.table() == a {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Matrix of `L_x`.
pub fn left_mult_element(a: &AlgebraTable, x: &AlgebraElement<'_>) -> Result<ExactMatrix> {
    check_member(a, x)?;
    combine(a, x, left_mult_matrix)
}

/// Matrix of `R_x`.
pub fn right_mult_element(a: &AlgebraTable, x: &AlgebraElement<'_>) -> Result<ExactMatrix> {
    check_member(a, x)?;
    combine(a, x, right_mult_matrix)
}

/// Matrix of `z ↦ (y z) x`, i.e. `R_x L_y` with `L_y` applied first.
pub fn adjoint_map(
    a: &AlgebraTable,
    x: &AlgebraElement<'_>,
    y: &AlgebraElement<'_>,
) -> Result<ExactMatrix> {
    let r = right_mult_element(a, x)?;
    let l = left_mult_element(a, y)?;
    Ok(&r * &l)
}

/// Integer operators generating an adjoint algebra, with a label per generator.
#[derive(Debug, Clone)]
pub struct AdjointGeneratorSet {
    ambient_dim: usize,
    generators: Vec<ExactMatrix>,
    perms: Vec<SignedPerm>,
    labels: Vec<String>,
}

impl AdjointGeneratorSet {
    fn from_perms(ambient_dim: usize, entries: Vec<(String, SignedPerm)>) -> Self {
        let (labels, perms): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        AdjointGeneratorSet {
            ambient_dim,
            generators: perms.iter().map(SignedPerm::to_matrix).collect(),
            perms,
            labels,
        }
    }

    /// `L_u` and `R_u` for every basis unit `u` of a single algebra.
    pub fn for_algebra(a: &AlgebraTable) -> Self {
        let mut entries = Vec::with_capacity(2 * a.dim());
        for u in 0..a.dim() {
            entries.push((
                format!("L[{}](e{u})", a.name()),
                left_mult_perm(a, u).expect("in range"),
            ));
            entries.push((
                format!("R[{}](e{u})", a.name()),
                right_mult_perm(a, u).expect("in range"),
            ));
        }
        Self::from_perms(a.dim(), entries)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub(crate) fn perms(&self) -> &[SignedPerm] {
        &self.perms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ExactMatrix)> {
        self.labels.iter().map(String::as_str).zip(&self.generators)
    }
}

/// Componentwise generators of the adjoint algebra of `B(p, q)`.
///
/// The `C` factor contributes left multiplication by `i` only; every `H` and
/// `O` factor contributes `L_u` and `R_u` for each of its basis units, tensored
/// with identities on the other factors. `B(1, 0)` therefore has `1 + 2*4` generators.
pub fn componentwise_generators(b: &TensorAlgebra) -> AdjointGeneratorSet {
    let n = b.real_dim();
    let mut entries = Vec::new();
    for (pos, (factor, table)) in b.factors().iter().zip(b.components()).enumerate() {
        let before = SignedPerm::identity(n / (b.stride(pos) * table.dim()));
        let after = SignedPerm::identity(b.stride(pos));
        let embed = |op: SignedPerm| before.kron(&op).kron(&after);
        let slot = format!("{}{pos}", factor.symbol());
        match factor {
            Factor::Complex => {
                entries.push((
                    format!("L[{slot}](e1)"),
                    embed(left_mult_perm(table, 1).expect("dim 2")),
                ));
            }
            Factor::Quaternion | Factor::Octonion => {
                for u in 0..table.dim() {
                    entries.push((
                        format!("L[{slot}](e{u})"),
                        embed(left_mult_perm(table, u).expect("in range")),
                    ));
                    entries.push((
                        format!("R[{slot}](e{u})"),
                        embed(right_mult_perm(table, u).expect("in range")),
                    ));
                }
            }
        }
    }
    AdjointGeneratorSet::from_perms(n, entries)
}

/// Real dimension of the matrix algebra generated by `gens`.
pub fn generated_rank(
    gens: &AdjointGeneratorSet,
    max_products: usize,
    policy: &RankPolicy,
) -> Result<ClosureSummary> {
    closure_rank(gens.generators(), max_products, policy)
}

/// Rank of the linear span of the single maps `R_{e_a} L_{e_b}` over all basis pairs.
pub fn single_map_span_rank(a: &AlgebraTable, policy: &RankPolicy) -> Result<RankOutcome> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n * n);
    for x in 0..n {
        let r = right_mult_perm(a, x)?;
        for y in 0..n {
            let op = r.compose(&left_mult_perm(a, y)?);
            let mut flat = vec![BigRational::zero(); n * n];
            for (i, neg) in op.flat_support() {
                flat[i] = BigRational::from_integer(if neg { -1 } else { 1 }.into());
            }
            rows.extend(flat);
        }
    }
    rank_with_policy(&ExactMatrix::new(n * n, n * n, rows)?, policy)
}

/// First basis pair `(x, y)` with `L_x R_y != R_y L_x`, if any.
pub fn left_right_commutation_witness(a: &AlgebraTable) -> Option<(usize, usize)> {
    for x in 0..a.dim() {
        let l = left_mult_perm(a, x).expect("in range");
        for y in 0..a.dim() {
            let r = right_mult_perm(a, y).expect("in range");
            if l.compose(&r) != r.compose(&l) {
                return Some((x, y));
            }
        }
    }
    None
}
