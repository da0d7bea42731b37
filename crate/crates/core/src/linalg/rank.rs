use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{random_word_prime, Field, PrimeField, Rationals};
use super::ExactMatrix;
use crate::error::{Error, Result};

/// `2^61 - 1`.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;
/// `2^62 - 57`, the largest prime below `2^62`.
pub const DEFAULT_CERTIFY_PRIME: u64 = (1 << 62) - 57;

/// How ranks are computed: exact rational elimination for short vectors,
/// otherwise modulo a prime and certified by a second prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPolicy {
    /// Vectors with at most this many coordinates are eliminated exactly.
    pub exact_up_to: usize,
    pub prime: u64,
    pub certify_prime: u64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            exact_up_to: 1024,
            prime: DEFAULT_PRIME,
            certify_prime: DEFAULT_CERTIFY_PRIME,
        }
    }
}

impl RankPolicy {
    pub fn exact() -> Self {
        RankPolicy {
            exact_up_to: usize::MAX,
            ..Default::default()
        }
    }

    /// Always modular, whatever the vector length.
    pub fn modular(prime: u64, certify_prime: u64) -> Self {
        RankPolicy {
            exact_up_to: 0,
            prime,
            certify_prime,
        }
    }

    /// Default thresholds with both primes drawn at random from `[2^61, 2^62)`.
    pub fn seeded(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prime = random_word_prime(&mut rng);
        let mut certify_prime = random_word_prime(&mut rng);
        while certify_prime == prime {
            certify_prime = random_word_prime(&mut rng);
        }
        RankPolicy {
            prime,
            certify_prime,
            ..Default::default()
        }
    }

    pub fn with_prime(mut self, prime: u64) -> Self {
        self.prime = prime;
        if self.certify_prime == prime {
            self.certify_prime = if prime == DEFAULT_CERTIFY_PRIME {
                DEFAULT_PRIME
            } else {
                DEFAULT_CERTIFY_PRIME
            };
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        PrimeField::new(self.prime)?;
        PrimeField::new(self.certify_prime)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RankMethod {
    Exact,
    /// Two primes agreed.
    Modular {
        prime: u64,
        certify_prime: u64,
    },
    /// The primes disagreed and the exact computation decided.
    ExactFallback {
        prime: u64,
        certify_prime: u64,
    },
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankMethod::Exact => write!(f, "exact"),
            RankMethod::Modular {
                prime,
                certify_prime,
            } => {
                write!(f, "mod {prime}, certified mod {certify_prime}")
            }
            RankMethod::ExactFallback { .. } => write!(f, "exact (modular primes disagreed)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankOutcome {
    pub rank: usize,
    pub method: RankMethod,
}

/// A rank computation that can be replayed over any field.
pub(crate) trait RankJob {
    type Output;
    fn run<F: Field>(&self, field: F) -> Result<Self::Output>;
    fn rank_of(out: &Self::Output) -> usize;
}

pub(crate) fn run_certified<J: RankJob>(
    job: &J,
    ambient: usize,
    policy: &RankPolicy,
) -> Result<(J::Output, RankMethod)> {
    if ambient <= policy.exact_up_to {
        return Ok((job.run(Rationals)?, RankMethod::Exact));
    }
    let (prime, certify_prime) = (policy.prime, policy.certify_prime);
    let first = job.run(PrimeField::new(prime)?);
    let second = job.run(PrimeField::new(certify_prime)?);
    match (first, second) {
        (Ok(a), Ok(b)) if J::rank_of(&a) == J::rank_of(&b) => Ok((
            a,
            RankMethod::Modular {
                prime,
                certify_prime,
            },
        )),
        (Err(e), _) | (_, Err(e)) if !matches!(e, Error::DenominatorVanishes(_)) => Err(e),
        _ => Ok((
            job.run(Rationals)?,
            RankMethod::ExactFallback {
                prime,
                certify_prime,
            },
        )),
    }
}

/// Rank over the rationals. Integer matrices use fraction-free elimination.
pub fn rank(m: &ExactMatrix) -> usize {
    match m.to_bigint() {
        Some(ints) => bareiss_rank(ints, m.rows(), m.cols()),
        None => rref(m).pivots.len(),
    }
}

/// Rank of `m` reduced modulo `p`; never exceeds [`rank`].
pub fn rank_mod_p(m: &ExactMatrix, p: u64) -> Result<usize> {
    let field = PrimeField::new(p)?;
    let rows = m
        .entries()
        .iter()
        .map(|q| field.reduce(q))
        .collect::<Result<Vec<_>>>()?;
    Ok(gauss_rank(&field, rows, m.rows(), m.cols()))
}

/// Rank under `policy`: exact for small matrices, otherwise certified modular.
pub fn rank_with_policy(m: &ExactMatrix, policy: &RankPolicy) -> Result<RankOutcome> {
    struct Dense<'a>(&'a ExactMatrix);
    impl RankJob for Dense<'_> {
        type Output = usize;
        fn run<F: Field>(&self, field: F) -> Result<usize> {
            let m = self.0;
            let entries = m
                .entries()
                .iter()
                .map(|q| field.reduce(q))
                .collect::<Result<Vec<_>>>()?;
            Ok(gauss_rank(&field, entries, m.rows(), m.cols()))
        }
        fn rank_of(out: &usize) -> usize {
            *out
        }
    }
    if m.rows() * m.cols() <= policy.exact_up_to {
        return Ok(RankOutcome {
            rank: rank(m),
            method: RankMethod::Exact,
        });
    }
    let (rank, method) = run_certified(&Dense(m), m.rows() * m.cols(), policy)?;
    Ok(RankOutcome { rank, method })
}

fn bareiss_rank(mut a: Vec<BigInt>, rows: usize, cols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let pivot = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = (&a[i * cols + j] * &pivot - &lead * &a[r * cols + j]) / &prev;
                a[i * cols + j] = v;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Dense Gaussian elimination over any field; returns the rank.
pub(crate) fn gauss_rank<F: Field>(
    field: &F,
    mut a: Vec<F::Elem>,
    rows: usize,
    cols: usize,
) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(&a[r * cols + c]);
        for i in r + 1..rows {
            if field.is_zero(&a[i * cols + c]) {
                continue;
            }
            let factor = field.mul(&a[i * cols + c], &inv);
            for j in c..cols {
                let t = field.mul(&factor, &a[r * cols + j]);
                a[i * cols + j] = field.sub(&a[i * cols + j], &t);
            }
        }
        r += 1;
    }
    r
}

pub(crate) struct Rref {
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form over the rationals (zero rows dropped).
pub(crate) fn rref(m: &ExactMatrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref { rows: a, pivots }
}

/// Basis of the right nullspace `{v : m v = 0}` over the rationals.
///
/// One vector per free column, with a 1 in that column.
pub fn nullspace_basis(m: &ExactMatrix) -> Vec<Vec<BigRational>> {
    let Rref { rows, pivots } = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(rank(&ExactMatrix::identity(3)), 3);
        assert_eq!(rank(&ExactMatrix::zeros(2, 2)), 0);
        assert_eq!(rank(&ExactMatrix::from_rows(&[[1, 2], [2, 4]])), 1);
    }

    #[test]
    fn rational_and_integer_paths_agree() {
        let m = ExactMatrix::from_rows(&[[2, 4, 1], [1, 2, 0], [3, 6, 1]]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.scale(&half)), 2);
        assert_eq!(rank_mod_p(&m, DEFAULT_PRIME).unwrap(), 2);
    }

    #[test]
    fn small_prime_can_drop_rank() {
        let m = ExactMatrix::from_rows(&[[1, 2], [3, 1]]); // det = -5
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 1);
    }

    #[test]
    fn nullspace_trivial_cases() {
        assert!(nullspace_basis(&ExactMatrix::identity(4)).is_empty());
        assert_eq!(nullspace_basis(&ExactMatrix::zeros(1, 3)).len(), 3);
        let ns = nullspace_basis(&ExactMatrix::from_rows(&[[1, 1]]));
        assert_eq!(ns.len(), 1);
        assert_eq!(&ns[0][0], &-ns[0][1].clone());
        assert!(!ns[0][0].is_zero());
    }

    #[test]
    fn policy_switches_to_modular() {
        let m = ExactMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let exact = rank_with_policy(&m, &RankPolicy::exact()).unwrap();
        assert_eq!(
            exact,
            RankOutcome {
                rank: 2,
                method: RankMethod::Exact
            }
        );
        let modular = rank_with_policy(
            &m,
            &RankPolicy::modular(DEFAULT_PRIME, DEFAULT_CERTIFY_PRIME),
        )
        .unwrap();
        assert_eq!(modular.rank, 2);
        assert!(matches!(modular.method, RankMethod::Modular { .. }));
    }

    #[test]
    fn disagreeing_primes_fall_back_to_exact() {
        let m = ExactMatrix::from_rows(&[[1, 2], [3, 1]]);
        let out = rank_with_policy(&m, &RankPolicy::modular(5, 7)).unwrap();
        assert_eq!(out.rank, 2);
        assert!(matches!(out.method, RankMethod::ExactFallback { .. }));
    }

    #[test]
    fn seeded_policy_is_deterministic() {
        let a = RankPolicy::seeded(7);
        assert_eq!(a, RankPolicy::seeded(7));
        assert_ne!(a.prime, a.certify_prime);
        assert!(a.prime >= 1 << 61 && a.prime < 1 << 62);
        a.validate().unwrap();
    }

    #[test]
    fn default_primes_are_prime() {
        RankPolicy::default().validate().unwrap();
        assert!(RankPolicy::modular(91, DEFAULT_PRIME).validate().is_err());
    }
}
