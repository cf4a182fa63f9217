//! Randomized density test: a configuration of subspaces has a dense orbit
//! exactly when its stabilizer has the expected dimension, and a random
//! configuration is generic with high probability.
//!
//! The stabilizer Lie algebra of `(U_1, ..., U_k)` is the space of `n x n`
//! matrices `g` with `g U_i ⊆ U_i`, i.e. `Q_i g U_i = 0` where the rows of
//! `Q_i` span the left null space of `U_i`. Its dimension minus one (the
//! scalars) is the stabilizer dimension in PGL(n).

pub mod modular;
pub mod rational;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vector::DimensionVector;
use modular::{left_annihilator, Echelon, Montgomery};

/// Entries of the random chart coordinates in rational mode are drawn from
/// `-RATIONAL_RANGE..=RATIONAL_RANGE`.
pub const RATIONAL_RANGE: i64 = 1 << 8;

const MAX_REDRAWS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("at least one sample is required")]
    NoSamples,
    #[error("{0} is not a prime above 2^30 and below 2^62")]
    InvalidPrime(u64),
    #[error("could not draw a full-rank basis after {0} attempts")]
    Degenerate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Modular,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleClass {
    CertifiedDense,
    MonteCarloSparse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Total number of samples, assigned to the primes round-robin.
    pub samples: usize,
    /// How many random primes to draw when `primes` is empty.
    pub prime_count: usize,
    /// Explicit primes; overrides `prime_count`.
    pub primes: Vec<u64>,
    pub seed: u64,
    pub mode: Mode,
    /// Stop as soon as one sample attains the expected dimension.
    pub stop_at_witness: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            samples: 6,
            prime_count: 2,
            primes: Vec::new(),
            seed: 0,
            mode: Mode::Modular,
            stop_at_witness: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub prime: Option<u64>,
    pub seed: u64,
    pub stab_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub vector: DimensionVector,
    pub mode: Mode,
    /// Prime of the witness sample for a dense answer, else the first prime.
    pub prime: Option<u64>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub samples: usize,
    /// Smallest stabilizer dimension seen; absent when no sample was needed.
    pub stab_dim: Option<i64>,
    pub expected: i64,
    pub class: OracleClass,
    pub per_sample: Vec<SampleRecord>,
    /// Samples above the expected dimension although another sample attained it.
    pub anomalies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subspaces {
    /// Bases as `n x d_i` row-major residues.
    Modular(Vec<Vec<Vec<u64>>>),
    /// Integer bases with their annihilators.
    Rational {
        bases: Vec<Vec<Vec<BigInt>>>,
        annihilators: Vec<Vec<Vec<BigInt>>>,
    },
}

/// A random point of the product of Grassmannians.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericConfiguration {
    pub vector: DimensionVector,
    pub prime: Option<u64>,
    pub seed: u64,
    pub subspaces: Subspaces,
}

fn check_prime(p: u64) -> Result<(), OracleError> {
    if p <= 1 << 30 || p >= 1 << 62 || !modular::is_prime(p) {
        return Err(OracleError::InvalidPrime(p));
    }
    Ok(())
}

/// Draws a configuration: uniformly random bases over F_p (redrawn until
/// full rank) when `prime` is given, otherwise integer chart coordinates
/// `[I; R]` under a random row permutation.
pub fn sample_configuration(
    d: &DimensionVector,
    prime: Option<u64>,
    seed: u64,
) -> Result<GenericConfiguration, OracleError> {
    let n = d.ambient() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subspaces = match prime {
        Some(p) => {
            check_prime(p)?;
            let f = Montgomery::new(p);
            let mut bases = Vec::with_capacity(d.len());
            for &di in d.dims() {
                let di = di as usize;
                let mut attempt = 0;
                let u = loop {
                    let u: Vec<Vec<u64>> = (0..n)
                        .map(|_| (0..di).map(|_| rng.gen_range(0..p)).collect())
                        .collect();
                    let mont: Vec<Vec<u64>> = u
                        .iter()
                        .map(|r| r.iter().map(|&x| f.to_mont(x)).collect())
                        .collect();
                    if left_annihilator(&f, &mont, di).is_some() {
                        break u;
                    }
                    attempt += 1;
                    if attempt >= MAX_REDRAWS {
                        return Err(OracleError::Degenerate(attempt));
                    }
                };
                bases.push(u);
            }
            Subspaces::Modular(bases)
        }
        None => {
            let mut bases = Vec::with_capacity(d.len());
            let mut annihilators = Vec::with_capacity(d.len());
            for &di in d.dims() {
                let di = di as usize;
                let r: Vec<Vec<i64>> = (0..n - di)
                    .map(|_| {
                        (0..di)
                            .map(|_| rng.gen_range(-RATIONAL_RANGE..=RATIONAL_RANGE))
                            .collect()
                    })
                    .collect();
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                // chart rows: first di rows identity, then R; permuted
                let mut u = vec![vec![BigInt::from(0); di]; n];
                let mut q = vec![vec![BigInt::from(0); n]; n - di];
                for i in 0..di {
                    u[perm[i]][i] = BigInt::from(1);
                }
                for j in 0..n - di {
                    for c in 0..di {
                        u[perm[di + j]][c] = BigInt::from(r[j][c]);
                        q[j][perm[c]] = BigInt::from(-r[j][c]);
                    }
                    q[j][perm[di + j]] = BigInt::from(1);
                }
                bases.push(u);
                annihilators.push(q);
            }
            Subspaces::Rational {
                bases,
                annihilators,
            }
        }
    };
    Ok(GenericConfiguration {
        vector: d.clone(),
        prime,
        seed,
        subspaces,
    })
}

impl GenericConfiguration {
    /// Replaces every basis `U` by `U S` for a random invertible `S`, which
    /// changes coordinates but not the subspaces.
    pub fn scramble(&self, seed: u64) -> GenericConfiguration {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let subspaces = match &self.subspaces {
            Subspaces::Modular(bases) => {
                let p = self.prime.expect("modular configuration has a prime");
                let f = Montgomery::new(p);
                let out = bases
                    .iter()
                    .map(|u| {
                        let d = u[0].len();
                        let s = loop {
                            let s: Vec<Vec<u64>> = (0..d)
                                .map(|_| (0..d).map(|_| f.random(&mut rng)).collect())
                                .collect();
                            if left_annihilator(&f, &s, d).is_some() {
                                break s;
                            }
                        };
                        // s is in Montgomery form; u is plain, so the product is plain
                        u.iter()
                            .map(|row| {
                                (0..d)
                                    .map(|c| {
                                        (0..d).fold(0, |acc, k| f.add(acc, f.mul(row[k], s[k][c])))
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                Subspaces::Modular(out)
            }
            Subspaces::Rational {
                bases,
                annihilators,
            } => {
                let out = bases
                    .iter()
                    .map(|u| {
                        let d = u[0].len();
                        // unit lower triangular times a random permutation
                        let mut s = vec![vec![BigInt::from(0); d]; d];
                        for i in 0..d {
                            s[i][i] = BigInt::from(1);
                            for j in 0..i {
                                s[i][j] = BigInt::from(rng.gen_range(-8i64..=8));
                            }
                        }
                        for i in (1..d).rev() {
                            s.swap(i, rng.gen_range(0..=i));
                        }
                        u.iter()
                            .map(|row| {
                                (0..d)
                                    .map(|c| {
                                        (0..d).fold(BigInt::from(0), |acc, k| {
                                            acc + &row[k] * &s[k][c]
                                        })
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                Subspaces::Rational {
                    bases: out,
                    annihilators: annihilators.clone(),
                }
            }
        };
        GenericConfiguration {
            subspaces,
            ..self.clone()
        }
    }

    /// `(rows, columns)` of the stabilizer system.
    pub fn system_shape(&self) -> (usize, usize) {
        let n = self.vector.ambient() as usize;
        let rows = self
            .vector
            .dims()
            .iter()
            .map(|&d| d as usize * (n - d as usize))
            .sum();
        (rows, n * n)
    }
}

/// Dimension of the space of `n x n` matrices preserving every subspace.
pub fn stabilizer_nullity(c: &GenericConfiguration) -> Result<usize, OracleError> {
    let n = c.vector.ambient() as usize;
    let width = n * n;
    match &c.subspaces {
        Subspaces::Modular(bases) => {
            let p = c.prime.expect("modular configuration has a prime");
            let f = Montgomery::new(p);
            let mut ech = Echelon::new(&f, width);
            for u in bases {
                let d = u[0].len();
                let mont: Vec<Vec<u64>> = u
                    .iter()
                    .map(|r| r.iter().map(|&x| f.to_mont(x)).collect())
                    .collect();
                let q = left_annihilator(&f, &mont, d).ok_or(OracleError::Degenerate(1))?;
                for qr in &q {
                    for col in 0..d {
                        let mut row = vec![0u64; width];
                        for a in 0..n {
                            if qr[a] == 0 {
                                continue;
                            }
                            let base = a * n;
                            for b in 0..n {
                                row[base + b] = f.mul(qr[a], mont[b][col]);
                            }
                        }
                        ech.insert(row);
                    }
                }
            }
            Ok(width - ech.rank())
        }
        Subspaces::Rational {
            bases,
            annihilators,
        } => {
            let mut rows = Vec::new();
            for (u, q) in bases.iter().zip(annihilators) {
                let d = u[0].len();
                for qr in q {
                    for col in 0..d {
                        let mut row = vec![BigInt::from(0); width];
                        for a in 0..n {
                            for b in 0..n {
                                row[a * n + b] = &qr[a] * &u[b][col];
                            }
                        }
                        rows.push(row);
                    }
                }
            }
            Ok(width - rational::bareiss_rank(rows))
        }
    }
}

/// PGL(n) stabilizer dimension of one configuration.
pub fn stabilizer_dim(c: &GenericConfiguration) -> Result<i64, OracleError> {
    Ok(stabilizer_nullity(c)? as i64 - 1)
}

/// Decides density by sampling. A sample attaining the expected stabilizer
/// dimension proves density; otherwise the answer is sparse with high
/// probability.
pub fn oracle_decide(d: &DimensionVector, cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    if cfg.samples == 0 {
        return Err(OracleError::NoSamples);
    }
    let expected = d.expected_stab_dim();
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    let primes: Vec<u64> = match cfg.mode {
        Mode::Rational => Vec::new(),
        Mode::Modular if !cfg.primes.is_empty() => {
            for &p in &cfg.primes {
                check_prime(p)?;
            }
            cfg.primes.clone()
        }
        Mode::Modular => (0..cfg.prime_count.max(1))
            .map(|_| modular::random_prime(&mut master))
            .collect(),
    };
    let mut report = OracleReport {
        vector: d.clone(),
        mode: cfg.mode,
        prime: primes.first().copied(),
        primes: primes.clone(),
        seed: cfg.seed,
        samples: cfg.samples,
        stab_dim: None,
        expected,
        class: OracleClass::MonteCarloSparse,
        per_sample: Vec::new(),
        anomalies: 0,
    };
    if expected < 0 {
        return Ok(report);
    }
    let jobs: Vec<(Option<u64>, u64)> = (0..cfg.samples)
        .map(|i| {
            let prime = (!primes.is_empty()).then(|| primes[i % primes.len()]);
            (prime, master.gen::<u64>())
        })
        .collect();
    let run = |&(prime, seed): &(Option<u64>, u64)| -> Result<SampleRecord, OracleError> {
        let c = sample_configuration(d, prime, seed)?;
        Ok(SampleRecord {
            prime,
            seed,
            stab_dim: stabilizer_dim(&c)?,
        })
    };
    let records: Vec<SampleRecord> = if cfg.stop_at_witness {
        let mut out = Vec::new();
        for job in &jobs {
            let r = run(job)?;
            let hit = r.stab_dim == expected;
            out.push(r);
            if hit {
                break;
            }
        }
        out
    } else {
        jobs.par_iter().map(run).collect::<Result<_, _>>()?
    };
    report.stab_dim = records.iter().map(|r| r.stab_dim).min();
    if let Some(w) = records.iter().find(|r| r.stab_dim == expected) {
        report.class = OracleClass::CertifiedDense;
        report.prime = w.prime;
        report.anomalies = records.iter().filter(|r| r.stab_dim != expected).count();
    }
    report.per_sample = records;
    Ok(report)
}
