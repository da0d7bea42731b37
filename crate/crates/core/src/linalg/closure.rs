//! Span closure of a set of square matrices under multiplication.
//!
//! The closure is grown breadth-first: each round multiplies the elements
//! added in the previous round by every generator on both sides and keeps
//! only products that raise the rank. Memory stays at rank x ambient.

use std::collections::HashSet;
use std::hash::Hash;

use serde::Serialize;

use super::echelon::{Echelon, SpanBasis, SparseVec};
use super::field::{Field, Rationals};
use super::rank::{run_certified, RankJob, RankMethod, RankPolicy};
use super::{ExactMatrix, SignedPerm};
use crate::error::{Error, Result};

/// Product rounds allowed before a closure is declared over budget.
pub const DEFAULT_MAX_PRODUCTS: usize = 16;

pub(crate) trait ClosureElement: Clone {
    type Key: Hash + Eq;

    fn product(&self, rhs: &Self) -> Self;
    /// Equal keys imply linearly dependent elements.
    fn key(&self) -> Self::Key;
    fn vector<F: Field>(&self, field: &F) -> Result<SparseVec<F::Elem>>;
}

impl ClosureElement for SignedPerm {
    type Key = (Vec<u32>, Vec<bool>);

    fn product(&self, rhs: &Self) -> Self {
        self.compose(rhs)
    }

    fn key(&self) -> Self::Key {
        self.projective_key()
    }

    fn vector<F: Field>(&self, field: &F) -> Result<SparseVec<F::Elem>> {
        let (one, minus) = (field.one(), field.neg(&field.one()));
        Ok(self
            .flat_support()
            .into_iter()
            .map(|(i, neg)| (i, if neg { minus.clone() } else { one.clone() }))
            .collect())
    }
}

impl ClosureElement for ExactMatrix {
    type Key = ExactMatrix;

    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn key(&self) -> Self::Key {
        self.clone()
    }

    fn vector<F: Field>(&self, field: &F) -> Result<SparseVec<F::Elem>> {
        let mut out = Vec::new();
        for (i, q) in self.entries().iter().enumerate() {
            let x = field.reduce(q)?;
            if !field.is_zero(&x) {
                out.push((i, x));
            }
        }
        Ok(out)
    }
}

pub(crate) struct Closure<E, F: Field> {
    /// Elements whose flattenings form a basis of the span, in insertion order.
    pub elements: Vec<E>,
    pub echelon: Echelon<F>,
    pub rounds: usize,
}

pub(crate) fn close<E: ClosureElement, F: Field>(
    generators: &[E],
    ambient: usize,
    field: F,
    max_rounds: usize,
) -> Result<Closure<E, F>> {
    let mut echelon = Echelon::new(field, ambient);
    let mut seen = HashSet::new();
    let mut elements: Vec<E> = Vec::new();
    let mut frontier = Vec::new();

    let mut offer = |candidate: E,
                     echelon: &mut Echelon<F>,
                     elements: &mut Vec<E>,
                     next: &mut Vec<usize>|
     -> Result<()> {
        if !seen.insert(candidate.key()) {
            return Ok(());
        }
        let v = candidate.vector(echelon.field())?;
        if echelon.insert(&v) {
            next.push(elements.len());
            elements.push(candidate);
        }
        Ok(())
    };

    for g in generators {
        offer(g.clone(), &mut echelon, &mut elements, &mut frontier)?;
    }
    for round in 1..=max_rounds {
        let mut next = Vec::new();
        for &idx in &frontier {
            for g in generators {
                let right = elements[idx].product(g);
                let left = g.product(&elements[idx]);
                offer(right, &mut echelon, &mut elements, &mut next)?;
                offer(left, &mut echelon, &mut elements, &mut next)?;
            }
        }
        if next.is_empty() {
            return Ok(Closure {
                elements,
                echelon,
                rounds: round,
            });
        }
        frontier = next;
    }
    Err(Error::ClosureBudget {
        rounds: max_rounds,
        rank: echelon.rank(),
    })
}

fn check_generators(generators: &[ExactMatrix]) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Ok(0);
    };
    let n = first.rows();
    for g in generators {
        if !g.is_square() || g.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "closure generators must be square of size {n}, got {}x{}",
                g.rows(),
                g.cols()
            )));
        }
    }
    Ok(n)
}

/// Exact reduced-echelon basis of the smallest span containing `generators`
/// and closed under left and right multiplication by them.
pub fn span_closure(generators: &[ExactMatrix], max_products: usize) -> Result<SpanBasis> {
    let n = check_generators(generators)?;
    let perms: Option<Vec<SignedPerm>> = generators.iter().map(SignedPerm::from_matrix).collect();
    let echelon = match perms {
        Some(perms) => close(&perms, n * n, Rationals, max_products)?.echelon,
        None => close(generators, n * n, Rationals, max_products)?.echelon,
    };
    Ok(SpanBasis::from_echelon(echelon))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub rank: usize,
    pub rounds: usize,
    pub method: RankMethod,
}

struct ClosureJob<'a, E> {
    generators: &'a [E],
    ambient: usize,
    max_rounds: usize,
}

impl<E: ClosureElement> RankJob for ClosureJob<'_, E> {
    type Output = (Vec<E>, usize, usize);

    fn run<F: Field>(&self, field: F) -> Result<Self::Output> {
        let c = close(self.generators, self.ambient, field, self.max_rounds)?;
        let rank = c.echelon.rank();
        Ok((c.elements, rank, c.rounds))
    }

    fn rank_of(out: &Self::Output) -> usize {
        out.1
    }
}

/// Closure over signed permutations under a rank policy, keeping the basis elements.
pub(crate) fn close_signed(
    generators: &[SignedPerm],
    max_products: usize,
    policy: &RankPolicy,
) -> Result<(Vec<SignedPerm>, ClosureSummary)> {
    let n = generators.first().map_or(0, SignedPerm::dim);
    let job = ClosureJob {
        generators,
        ambient: n * n,
        max_rounds: max_products,
    };
    let ((elements, rank, rounds), method) = run_certified(&job, n * n, policy)?;
    Ok((
        elements,
        ClosureSummary {
            rank,
            rounds,
            method,
        },
    ))
}

/// Rank of the span closure, computed under `policy`.
pub fn closure_rank(
    generators: &[ExactMatrix],
    max_products: usize,
    policy: &RankPolicy,
) -> Result<ClosureSummary> {
    let n = check_generators(generators)?;
    let perms: Option<Vec<SignedPerm>> = generators.iter().map(SignedPerm::from_matrix).collect();
    match perms {
        Some(perms) => close_signed(&perms, max_products, policy).map(|(_, s)| s),
        None => {
            let job = ClosureJob {
                generators,
                ambient: n * n,
                max_rounds: max_products,
            };
            let ((_, rank, rounds), method) = run_certified(&job, n * n, policy)?;
            Ok(ClosureSummary {
                rank,
                rounds,
                method,
            })
        }
    }
}
