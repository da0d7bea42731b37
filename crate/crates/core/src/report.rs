//! The per-case verification pipeline and its machine-readable report.

use std::time::Instant;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adjoint::generated_rank;
use crate::elliptic::{j_invariant, LatticeBasis2D, DEFAULT_TRUNCATION};
use crate::error::Result;
use crate::linalg::{ExactMatrix, RankPolicy, DEFAULT_MAX_PRODUCTS};
use crate::tensor::ResourceGuard;
use crate::torus::{
    analytic_representation, commutant_rank, complex_coordinates, order_census,
    random_commutant_element, rho_image_rank, splitting_pairs, ComplexMatrix,
    EndomorphismCandidate, TorusModel,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Cases run by a bare `verify`.
pub const DEFAULT_CASES: [(usize, usize); 5] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)];

/// Relative tolerance on `j(Z[i])` against 1728.
pub const J_RELATIVE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub p: usize,
    pub q: usize,
    pub version: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub guard: ResourceGuard,
    pub policy: RankPolicy,
    pub max_products: usize,
    /// Record wall-clock milliseconds; zero otherwise.
    pub timing: bool,
    pub seed: u64,
    pub j_truncation: usize,
    pub census_max_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            guard: ResourceGuard::default(),
            policy: RankPolicy::default(),
            max_products: DEFAULT_MAX_PRODUCTS,
            timing: true,
            seed: crate::DEFAULT_SEED,
            j_truncation: DEFAULT_TRUNCATION,
            census_max_order: 8,
        }
    }
}

struct Recorder {
    timing: bool,
    checks: Vec<Check>,
}

impl Recorder {
    /// Runs one check; `f` returns the observed value and whether it matches.
    fn run<T>(
        &mut self,
        name: &str,
        expected: impl Into<String>,
        f: impl FnOnce() -> Result<(String, bool, T)>,
    ) -> Option<T> {
        let start = Instant::now();
        let outcome = f();
        let millis = if self.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        let (actual, pass, value) = match outcome {
            Ok((actual, pass, value)) => (actual, pass, Some(value)),
            Err(e) => (format!("error: {e}"), false, None),
        };
        self.checks.push(Check {
            name: name.to_string(),
            expected: expected.into(),
            actual,
            pass,
            millis,
        });
        value
    }
}

/// Runs every check for `B(p, q)` in order. Failures are recorded, never propagated.
pub fn run_verification(p: usize, q: usize, opts: &VerifyOptions) -> VerificationReport {
    let mut rec = Recorder {
        timing: opts.timing,
        checks: Vec::new(),
    };
    let n = 1usize << (2 * p + 3 * q).min(usize::BITS as usize - 2);
    let full_rank = 2 * n * n;

    let torus = rec.run("dimension", format!("complex dimension {n}"), || {
        let t = TorusModel::build(p, q, &opts.guard)?;
        let ok = t.complex_dim() == n && t.real_dim() == 2 * n;
        Ok((
            format!(
                "complex dimension {} (real {})",
                t.complex_dim(),
                t.real_dim()
            ),
            ok,
            t,
        ))
    });
    let Some(t) = torus else {
        return finish(p, q, rec);
    };

    rec.run(
        "table_invariants",
        "unit, signed permutations, B0 ⊕ i·B0, central i",
        || {
            Ok(match t.algebra().verify_structure() {
                Ok(()) => ("all hold".to_string(), true, ()),
                Err(msg) => (msg, false, ()),
            })
        },
    );

    let gens = t.adjoint_generators();
    let expected_gens = 1 + 2 * (4 * p + 8 * q);
    rec.run(
        "adjoint_generators",
        format!("{expected_gens} integer signed permutations commuting with J"),
        || {
            let j = t.complex_structure();
            let perms = gens
                .generators()
                .iter()
                .filter(|g| g.as_signed_perm().is_some())
                .count();
            let holomorphic = gens
                .generators()
                .iter()
                .filter(|g| g.commutes_with(j))
                .count();
            let ok =
                gens.len() == expected_gens && perms == gens.len() && holomorphic == gens.len();
            Ok((
                format!(
                    "{} generators, {perms} signed permutations, {holomorphic} commute with J",
                    gens.len()
                ),
                ok,
                (),
            ))
        },
    );

    let rank_check = |summary_rank: usize, method: String| {
        (
            format!("{summary_rank} ({method})"),
            summary_rank == full_rank,
        )
    };

    let generated = rec.run("generated_rank", full_rank.to_string(), || {
        let s = generated_rank(gens, opts.max_products, &opts.policy)?;
        let (actual, ok) = rank_check(s.rank, format!("{}, {} rounds", s.method, s.rounds));
        Ok((actual, ok, s.rank))
    });
    let commutant = rec.run("commutant_rank", full_rank.to_string(), || {
        let s = commutant_rank(t.complex_structure(), &opts.policy)?;
        let (actual, ok) = rank_check(s.rank, s.method.to_string());
        Ok((actual, ok, s.rank))
    });
    let rho = rec.run("rho_image_rank", full_rank.to_string(), || {
        let s = rho_image_rank(&t, opts.max_products, &opts.policy)?;
        let (actual, ok) = rank_check(s.rank, format!("{}, {} rounds", s.method, s.rounds));
        Ok((actual, ok, s.rank))
    });
    rec.run(
        "full_rank",
        format!("rho = commutant = 2n² = {full_rank}"),
        || {
            let ok = rho == Some(full_rank)
                && commutant == Some(full_rank)
                && generated == Some(full_rank);
            let show = |v: Option<usize>| v.map_or("n/a".to_string(), |r| r.to_string());
            Ok((
                format!(
                    "rho = {}, commutant = {}, generated = {}",
                    show(rho),
                    show(commutant),
                    show(generated)
                ),
                ok,
                (),
            ))
        },
    );

    rec.run("splitting_pairs", format!("{n} J-planes"), || {
        let pairs = splitting_pairs(&t)?;
        Ok((format!("{} J-planes", pairs.len()), pairs.len() == n, ()))
    });

    rec.run(
        "order_census",
        "J of order 4; J-powers of finite order",
        || {
            let census = order_census(&t, opts.census_max_order);
            let j_ok = census.order_of("J") == Some(Some(4));
            let powers_ok = ["J^2", "J^3", "J^4"]
                .iter()
                .all(|l| matches!(census.order_of(l), Some(Some(_))));
            Ok((census.to_string(), j_ok && powers_ok, ()))
        },
    );

    rec.run(
        "analytic_representation",
        "τ(I) = I, τ(J) = i·I, τ(MN) = τ(M)τ(N), coordinates agree",
        || {
            let failures = analytic_spot_checks(&t, opts.seed)?;
            Ok(if failures.is_empty() {
                ("all hold".to_string(), true, ())
            } else {
                (format!("failed: {}", failures.join(", ")), false, ())
            })
        },
    );

    rec.run(
        "j_invariant",
        format!("1728 within {J_RELATIVE_TOLERANCE:e} relative"),
        || {
            let j = j_invariant(&LatticeBasis2D::square(), opts.j_truncation)?;
            let rel = (j - 1728.0).norm() / 1728.0;
            Ok((
                format!("{:.9} (relative error {rel:.2e})", j.re),
                rel < J_RELATIVE_TOLERANCE,
                (),
            ))
        },
    );

    finish(p, q, rec)
}

fn finish(p: usize, q: usize, rec: Recorder) -> VerificationReport {
    VerificationReport {
        p,
        q,
        version: VERSION.to_string(),
        checks: rec.checks,
    }
}

fn analytic_spot_checks(t: &TorusModel, seed: u64) -> Result<Vec<&'static str>> {
    let j = t.complex_structure();
    let n = t.complex_dim();
    let tau =
        |m: &ExactMatrix| analytic_representation(t, &EndomorphismCandidate::new(m.clone(), j)?);
    let mut failures = Vec::new();
    if tau(&ExactMatrix::identity(t.real_dim()))? != ComplexMatrix::identity(n) {
        failures.push("τ(I)");
    }
    let i = Complex::new(BigRational::zero(), BigRational::one());
    if tau(j)? != ComplexMatrix::scalar(n, i) {
        failures.push("τ(J)");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = splitting_pairs(t)?;
    for _ in 0..2 {
        let a = random_commutant_element(j, &mut rng);
        let b = random_commutant_element(j, &mut rng);
        if tau(&(&a * &b))? != &tau(&a)? * &tau(&b)? {
            failures.push("τ(MN)");
        }
        let v = b.row(0).to_vec();
        let real_image = a.apply(&v)?;
        if complex_coordinates(&pairs, &real_image)
            != tau(&a)?.apply(&complex_coordinates(&pairs, &v))
        {
            failures.push("coordinates");
        }
    }
    Ok(failures)
}
