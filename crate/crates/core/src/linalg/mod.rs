//! Exact dense linear algebra: ranks, nullspaces, Kronecker products,
//! multiplicative closures and matrix orders over the integers and rationals.

mod closure;
mod echelon;
pub mod field;
mod matrix;
mod rank;
mod signed_perm;

pub(crate) use closure::close_signed;
pub use closure::{closure_rank, span_closure, ClosureSummary, DEFAULT_MAX_PRODUCTS};
pub(crate) use echelon::Echelon;
pub use echelon::SpanBasis;
pub use matrix::{kron, ExactMatrix};
pub use rank::{
    nullspace_basis, rank, rank_mod_p, rank_with_policy, RankMethod, RankOutcome, RankPolicy,
    DEFAULT_CERTIFY_PRIME, DEFAULT_PRIME,
};
pub(crate) use rank::{run_certified, RankJob};
pub use signed_perm::SignedPerm;

/// Least `k <= max_order` with `m^k = I`, or `None`.
///
/// Panics if `m` is not square.
pub fn matrix_order(m: &ExactMatrix, max_order: usize) -> Option<usize> {
    assert!(m.is_square(), "matrix_order of a non-square matrix");
    if let Some(p) = m.as_signed_perm() {
        let mut power = p.clone();
        for k in 1..=max_order {
            if power.is_identity() {
                return Some(k);
            }
            power = power.compose(&p);
        }
        return None;
    }
    let mut power = m.clone();
    for k in 1..=max_order {
        if power.is_identity() {
            return Some(k);
        }
        power = &power * m;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_of_small_matrices() {
        let i = ExactMatrix::identity(3);
        assert_eq!(matrix_order(&i, 8), Some(1));
        assert_eq!(matrix_order(&-&i, 8), Some(2));
        let rot = ExactMatrix::from_rows(&[[0, -1], [1, 0]]);
        assert_eq!(matrix_order(&rot, 8), Some(4));
        assert_eq!(matrix_order(&rot, 3), None);
        let shear = ExactMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert_eq!(matrix_order(&shear, 8), None);
        // Order 6 through the dense path: rotation by 60 degrees in the hexagonal basis.
        let hex = ExactMatrix::from_rows(&[[1, -1], [1, 0]]);
        assert_eq!(matrix_order(&hex, 8), Some(6));
    }
}
