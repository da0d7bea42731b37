use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Field, Rationals};

pub(crate) type SparseVec<E> = Vec<(usize, E)>;

const NO_PIVOT: u32 = u32::MAX;

/// Incrementally maintained reduced row echelon form with sparse rows.
///
/// Every stored row has a leading 1 at its pivot and zeros at every other
/// pivot column, so reducing a candidate only touches the pivots it hits.
pub(crate) struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<u32>,
    scratch: Vec<F::Elem>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        let zero = field.zero();
        Echelon {
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ambient],
            scratch: vec![zero; ambient],
            touched: Vec::new(),
            marked: vec![false; ambient],
            field,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.pivot_row.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn touch(&mut self, i: usize) {
        if !self.marked[i] {
            self.marked[i] = true;
            self.touched.push(i);
        }
    }

    /// Residual of `v` modulo the current span, sorted by column.
    fn reduce(&mut self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        for (i, x) in v {
            let s = self.field.add(&self.scratch[*i], x);
            self.scratch[*i] = s;
            self.touch(*i);
        }
        for (c, _) in v {
            let r = self.pivot_row[*c];
            if r == NO_PIVOT || self.field.is_zero(&self.scratch[*c]) {
                continue;
            }
            let x = self.scratch[*c].clone();
            let row = std::mem::take(&mut self.rows[r as usize]);
            for (j, y) in &row {
                let t = self.field.mul(&x, y);
                self.scratch[*j] = self.field.sub(&self.scratch[*j], &t);
                self.touch(*j);
            }
            self.rows[r as usize] = row;
        }
        let mut out = Vec::new();
        let zero = self.field.zero();
        for i in self.touched.drain(..) {
            self.marked[i] = false;
            let x = std::mem::replace(&mut self.scratch[i], zero.clone());
            if !self.field.is_zero(&x) {
                out.push((i, x));
            }
        }
        out.sort_unstable_by_key(|&(i, _)| i);
        out
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        let mut residual = self.reduce(v);
        let Some((pivot, lead)) = residual.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        for (_, x) in residual.iter_mut() {
            *x = self.field.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            let Ok(pos) = row.binary_search_by_key(&pivot, |&(i, _)| i) else {
                continue;
            };
            let factor = row[pos].1.clone();
            *row = axpy(&self.field, row, &factor, &residual);
        }
        self.pivot_row[pivot] = self.rows.len() as u32;
        self.rows.push(residual);
        true
    }

    /// Rows ordered by pivot column.
    pub fn into_rows(self) -> Vec<SparseVec<F::Elem>> {
        let mut rows = self.rows;
        rows.sort_unstable_by_key(|r| r[0].0);
        rows
    }
}

/// `a - x * b` for sorted sparse vectors.
fn axpy<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    x: &F::Elem,
    b: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, field.sub(va, &field.mul(x, vb)))
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, va.clone())
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, va.clone())
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, field.neg(&field.mul(x, vb)))
            }
            (None, None) => unreachable!(),
        };
        if !field.is_zero(&next.1) {
            out.push(next);
        }
    }
    out
}

/// Exact basis of a subspace of `Q^ambient_dim` in reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    ambient_dim: usize,
    rows: Vec<SparseVec<BigRational>>,
}

impl SpanBasis {
    pub(crate) fn from_echelon(e: Echelon<Rationals>) -> Self {
        SpanBasis {
            ambient_dim: e.ambient(),
            rows: e.into_rows(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn sparse_row(&self, i: usize) -> &[(usize, BigRational)] {
        &self.rows[i]
    }

    pub fn row(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.ambient_dim];
        for (c, x) in &self.rows[i] {
            v[*c] = x.clone();
        }
        v
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let mut residual = v.to_vec();
        for row in &self.rows {
            let x = residual[row[0].0].clone();
            if x.is_zero() {
                continue;
            }
            for (c, y) in row {
                residual[*c] -= &x * y;
            }
        }
        residual.iter().all(Zero::is_zero)
    }
}
