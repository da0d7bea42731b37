//! Eisenstein series and the j-invariant of a plane lattice, in double precision.
//!
//! The lattice sums are truncated to `|m|, |n| <= N` and accumulated shell by
//! shell in `max(|m|, |n|)`, so each shell contains `ω` and `-ω` together.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation for lattice sums.
pub const DEFAULT_TRUNCATION: usize = 100;

/// Minimum `|g2³ - 27 g3²| / (|g2|³ + |g3|²)` accepted by [`j_invariant`].
pub const DISCRIMINANT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeBasis2D {
    omega1: Complex64,
    omega2: Complex64,
}

impl LatticeBasis2D {
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        if omega1 == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateLattice("omega1 is zero".into()));
        }
        let tau = omega2 / omega1;
        if !tau.im.is_finite() || tau.im.abs() <= f64::EPSILON * tau.norm().max(1.0) {
            return Err(Error::DegenerateLattice(format!(
                "omega1 = {omega1}, omega2 = {omega2} are R-linearly dependent"
            )));
        }
        Ok(LatticeBasis2D { omega1, omega2 })
    }

    /// The Gaussian integers `Z[i]`.
    pub fn square() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).expect("nondegenerate")
    }

    /// The Eisenstein integers, `omega2 = e^{iπ/3}`.
    pub fn hexagonal() -> Self {
        Self::new(
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3),
        )
        .expect("nondegenerate")
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Self::new(self.omega1 * lambda, self.omega2 * lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Four,
    Six,
}

impl Weight {
    /// Normalization turning the lattice sum into `g2` or `g3`.
    fn scale(self) -> f64 {
        match self {
            Weight::Four => 60.0,
            Weight::Six => 140.0,
        }
    }
}

/// `ω^{-k}` for `k = 4, 6`, computed through `ω²` so `±ω` give identical bits.
fn inverse_power(w: Complex64, weight: Weight) -> Complex64 {
    let w2 = w * w;
    let w4 = w2 * w2;
    match weight {
        Weight::Four => w4.inv(),
        Weight::Six => (w4 * w2).inv(),
    }
}

/// Lattice points with `max(|m|, |n|) = s`, in a fixed order.
fn shell(s: i64) -> impl Iterator<Item = (i64, i64)> {
    let edges = (-s..=s).flat_map(move |m| [(m, s), (m, -s)]);
    let sides = (-s + 1..s).flat_map(move |n| [(s, n), (-s, n)]);
    edges.chain(sides)
}

/// `g2 = 60 Σ' ω^{-4}` or `g3 = 140 Σ' ω^{-6}` over `ω = m ω1 + n ω2`, `|m|, |n| <= N`.
pub fn eisenstein(
    lattice: &LatticeBasis2D,
    weight: Weight,
    truncation: usize,
) -> Result<Complex64> {
    if truncation == 0 {
        return Err(Error::DegenerateLattice(
            "truncation must be at least 1".into(),
        ));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for s in 1..=truncation as i64 {
        let mut shell_sum = Complex64::new(0.0, 0.0);
        for (m, n) in shell(s) {
            let w = lattice.omega1 * m as f64 + lattice.omega2 * n as f64;
            shell_sum += inverse_power(w, weight);
        }
        total += shell_sum;
    }
    Ok(total * weight.scale())
}

/// `g2` and `g3` together.
pub fn invariants(lattice: &LatticeBasis2D, truncation: usize) -> Result<(Complex64, Complex64)> {
    Ok((
        eisenstein(lattice, Weight::Four, truncation)?,
        eisenstein(lattice, Weight::Six, truncation)?,
    ))
}

/// `j = 1728 g2³ / (g2³ - 27 g3²)`.
pub fn j_invariant(lattice: &LatticeBasis2D, truncation: usize) -> Result<Complex64> {
    let (g2, g3) = invariants(lattice, truncation)?;
    let g2_cubed = g2 * g2 * g2;
    let disc = g2_cubed - 27.0 * g3 * g3;
    let reference = g2_cubed.norm() + g3.norm_sqr();
    if disc.norm() <= DISCRIMINANT_FLOOR * reference {
        return Err(Error::DegenerateDiscriminant(format!(
            "g2 = {g2}, g3 = {g3}"
        )));
    }
    Ok(1728.0 * g2_cubed / disc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shells_partition_the_box() {
        let mut seen = std::collections::HashSet::new();
        for s in 1..=5 {
            let pts: Vec<_> = shell(s).collect();
            assert_eq!(pts.len(), 8 * s as usize);
            for p in pts {
                assert!(seen.insert(p));
            }
        }
        assert_eq!(seen.len(), 11 * 11 - 1);
    }

    #[test]
    fn g3_of_square_lattice_cancels() {
        let (g2, g3) = invariants(&LatticeBasis2D::square(), 50).unwrap();
        assert!(g3.norm() < 1e-12 * g2.norm(), "g3 = {g3}");
    }

    #[test]
    fn degenerate_inputs() {
        let one = Complex64::new(1.0, 0.0);
        assert!(LatticeBasis2D::new(one, Complex64::new(2.0, 0.0)).is_err());
        assert!(LatticeBasis2D::new(Complex64::new(0.0, 0.0), one).is_err());
        assert!(eisenstein(&LatticeBasis2D::square(), Weight::Four, 0).is_err());
    }
}
