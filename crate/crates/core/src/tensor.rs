//! Tensor products of structure tables and the algebras `B(p, q) = C ⊗ H^⊗p ⊗ O^⊗q`.
//!
//! Basis indices are mixed-radix numbers with the `C` digit most significant,
//! then the quaternion digits, then the octonion digits.

use crate::cayley_dickson::{base_real, complex, octonions, quaternions, AlgebraTable, Sign};
use crate::error::{Error, Result};

/// `(e_a ⊗ e_b)(e_c ⊗ e_d) = (e_a e_c) ⊗ (e_b e_d)`, with index `j_a * dim_b + j_b`.
pub fn tensor_product(a: &AlgebraTable, b: &AlgebraTable) -> AlgebraTable {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut products = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let (s1, l1) = a.product(j / db, k / db);
            let (s2, l2) = b.product(j % db, k % db);
            products.push((s1 * s2, l1 * db + l2));
        }
    }
    let name = match (a.name(), b.name()) {
        ("R", other) | (other, "R") => other.to_string(),
        (x, y) => format!("{x}⊗{y}"),
    };
    AlgebraTable::from_products(name, n, products).expect("tensor product of valid tables")
}

/// Upper bound on the real dimension of `B(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceGuard {
    pub max_real_dim: usize,
}

impl Default for ResourceGuard {
    /// `2p + 3q <= 7`, real dimension at most 256.
    fn default() -> Self {
        ResourceGuard { max_real_dim: 256 }
    }
}

impl ResourceGuard {
    pub fn unlimited() -> Self {
        ResourceGuard {
            max_real_dim: usize::MAX,
        }
    }

    pub fn check(&self, p: usize, q: usize) -> Result<usize> {
        let exponent = 2 * p + 3 * q + 1;
        let real_dim = if exponent < usize::BITS as usize {
            1usize << exponent
        } else {
            usize::MAX
        };
        if real_dim > self.max_real_dim || exponent >= usize::BITS as usize {
            return Err(Error::ResourceGuard {
                p,
                q,
                real_dim,
                max_real_dim: self.max_real_dim,
            });
        }
        Ok(real_dim)
    }
}

/// Which division algebra a tensor factor is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Complex,
    Quaternion,
    Octonion,
}

impl Factor {
    pub fn radix(self) -> usize {
        match self {
            Factor::Complex => 2,
            Factor::Quaternion => 4,
            Factor::Octonion => 8,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Factor::Complex => "C",
            Factor::Quaternion => "H",
            Factor::Octonion => "O",
        }
    }
}

/// `B(p, q)` with its factor tables, full table and mixed-radix layout.
#[derive(Debug, Clone)]
pub struct TensorAlgebra {
    p: usize,
    q: usize,
    factors: Vec<Factor>,
    components: Vec<AlgebraTable>,
    table: AlgebraTable,
    complex_unit: usize,
    radices: Vec<usize>,
}

/// Builds `B(p, q)` under the default [`ResourceGuard`].
pub fn build_b(p: usize, q: usize) -> Result<TensorAlgebra> {
    TensorAlgebra::build(p, q, &ResourceGuard::default())
}

/// Table of the real form `B(0, p, q) = H^⊗p ⊗ O^⊗q`.
pub fn real_form(p: usize, q: usize) -> AlgebraTable {
    let (h, o) = (quaternions(), octonions());
    std::iter::repeat_n(&h, p)
        .chain(std::iter::repeat_n(&o, q))
        .fold(base_real(), |acc, c| tensor_product(&acc, c))
}

impl TensorAlgebra {
    pub fn build(p: usize, q: usize, guard: &ResourceGuard) -> Result<Self> {
        guard.check(p, q)?;
        let mut factors = vec![Factor::Complex];
        factors.extend(std::iter::repeat_n(Factor::Quaternion, p));
        factors.extend(std::iter::repeat_n(Factor::Octonion, q));
        let (c, h, o) = (complex(), quaternions(), octonions());
        let components: Vec<AlgebraTable> = factors
            .iter()
            .map(|f| match f {
                Factor::Complex => c.clone(),
                Factor::Quaternion => h.clone(),
                Factor::Octonion => o.clone(),
            })
            .collect();
        let table = components[1..]
            .iter()
            .fold(components[0].clone(), |acc, t| tensor_product(&acc, t));
        let radices: Vec<usize> = factors.iter().map(|f| f.radix()).collect();
        let complex_unit = radices[1..].iter().product::<usize>();
        Ok(TensorAlgebra {
            p,
            q,
            factors,
            components,
            table,
            complex_unit,
            radices,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn components(&self) -> &[AlgebraTable] {
        &self.components
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn real_dim(&self) -> usize {
        self.table.dim()
    }

    /// `4^p * 8^q`.
    pub fn complex_dim(&self) -> usize {
        self.table.dim() / 2
    }

    /// Index of `i ⊗ 1 ⊗ ... ⊗ 1`.
    pub fn complex_unit(&self) -> usize {
        self.complex_unit
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn basis_index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.radices.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} digits for {} tensor factors",
                digits.len(),
                self.radices.len()
            )));
        }
        let mut index = 0;
        for (position, (&digit, &radix)) in digits.iter().zip(&self.radices).enumerate() {
            if digit >= radix {
                return Err(Error::DigitOutOfRange {
                    position,
                    digit,
                    radix,
                });
            }
            index = index * radix + digit;
        }
        Ok(index)
    }

    pub fn basis_decode(&self, index: usize) -> Result<Vec<usize>> {
        if index >= self.real_dim() {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.real_dim(),
            });
        }
        let mut rest = index;
        let mut digits = vec![0; self.radices.len()];
        for (d, &radix) in digits.iter_mut().zip(&self.radices).rev() {
            *d = rest % radix;
            rest /= radix;
        }
        Ok(digits)
    }

    /// Size of the block of indices sharing a factor digit, i.e. the product
    /// of the radices after `factor`.
    pub fn stride(&self, factor: usize) -> usize {
        self.radices[factor + 1..].iter().product()
    }

    /// Structural checks that the integer span of the basis is a subring
    /// realized as `B_0 ⊕ i B_0`, with `i` central. Returns the first violation.
    pub fn verify_structure(&self) -> std::result::Result<(), String> {
        let t = &self.table;
        let n = t.dim();
        if n != 2 * self.radices[1..].iter().product::<usize>() {
            return Err(format!(
                "dimension {n} does not match radices {:?}",
                self.radices
            ));
        }
        if t.product(self.complex_unit, self.complex_unit) != (Sign::Minus, 0) {
            return Err("complex unit does not square to -e0".into());
        }
        for i in 0..n {
            let digits = self.basis_decode(i).map_err(|e| e.to_string())?;
            if self.basis_index(&digits) != Ok(i) {
                return Err(format!("mixed-radix round trip fails at {i}"));
            }
        }
        let real = real_form(self.p, self.q);
        let half = n / 2;
        for j in 0..half {
            for k in 0..half {
                if t.product(j, k) != real.product(j, k) {
                    return Err(format!(
                        "C-digit-0 block differs from the real form at ({j}, {k})"
                    ));
                }
            }
        }
        for j in 0..half {
            if t.product(self.complex_unit, j) != t.product(j, self.complex_unit) {
                return Err(format!("complex unit does not commute with e{j}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_dimensions() {
        let h = quaternions();
        assert_eq!(tensor_product(&h, &h).dim(), 16);
        assert_eq!(tensor_product(&base_real(), &h), h);
    }

    #[test]
    fn imaginary_square_in_c_tensor_h() {
        let ch = tensor_product(&complex(), &quaternions());
        // e1 ⊗ e0 has index 4.
        assert_eq!(ch.product(4, 4), (Sign::Minus, 0));
    }

    #[test]
    fn built_dimensions() {
        assert_eq!(build_b(0, 0).unwrap().real_dim(), 2);
        let b10 = build_b(1, 0).unwrap();
        assert_eq!((b10.real_dim(), b10.complex_dim()), (8, 4));
        let b11 = build_b(1, 1).unwrap();
        assert_eq!((b11.real_dim(), b11.complex_dim()), (64, 32));
        assert_eq!(b11.radices(), &[2, 4, 8]);
    }

    #[test]
    fn mixed_radix_indexing() {
        let b = build_b(1, 1).unwrap();
        assert_eq!(b.basis_index(&[0, 0, 0]).unwrap(), 0);
        assert_eq!(b.basis_decode(b.complex_unit()).unwrap(), vec![1, 0, 0]);
        for i in 0..b.real_dim() {
            assert_eq!(b.basis_index(&b.basis_decode(i).unwrap()).unwrap(), i);
        }
        assert!(matches!(
            b.basis_index(&[0, 4, 0]),
            Err(Error::DigitOutOfRange { position: 1, .. })
        ));
        assert!(b.basis_decode(64).is_err());
    }

    #[test]
    fn resource_guard() {
        assert!(build_b(2, 1).is_ok()); // 2p+3q = 7
        assert!(matches!(build_b(0, 3), Err(Error::ResourceGuard { .. })));
        assert!(TensorAlgebra::build(0, 3, &ResourceGuard::unlimited()).is_ok());
    }

    #[test]
    fn structure_checks_hold() {
        for (p, q) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)] {
            build_b(p, q).unwrap().verify_structure().unwrap();
        }
    }
}
