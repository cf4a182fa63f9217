//! Decides whether the diagonal PGL(n) action on a product of Grassmannians
//! `Gr(d_1, n) x ... x Gr(d_k, n)` has a dense orbit.
//!
//! Two independent deciders are provided. The [`engine`] rewrites a
//! dimension vector with reduction rules until it reaches a base fact and
//! returns a checkable [`engine::Certificate`]. The [`oracle`] samples random
//! configurations and computes stabilizer dimensions by exact linear algebra.

pub mod engine;
pub mod families;
pub mod oracle;
pub mod rules;
pub mod sweep;
pub mod vector;
pub mod verdict;

pub use engine::{decide, verify_certificate, Certificate, Engine, EngineConfig};
pub use families::{classify_size, enumerate_vectors, fibonacci_family, repeat_family};
pub use oracle::{oracle_decide, OracleClass, OracleConfig, OracleReport};
pub use vector::{DimensionVector, VectorError};
pub use verdict::{Status, Verdict};
