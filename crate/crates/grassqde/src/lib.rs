//! Exact computer algebra for the quantum difference equation of the
//! Grassmannian Gr(k,n) in equivariant K-theory and its cohomological limit.

pub mod bethe;
pub mod boxcomb;
pub mod cache;
pub mod cli;
pub mod error;
pub mod exact_algebra;
pub mod lattice;
pub mod par;
pub mod pieri_ops;
pub mod qde_cohomology;
pub mod qde_ktheory;
pub mod report;
pub mod sampling;
pub mod schubert_polys;
pub mod selftest;

pub use error::{Error, Result};
pub use par::Exec;

/// Which Schubert calculus is in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    #[serde(rename = "coh")]
    Cohomology,
    #[serde(rename = "k")]
    KTheory,
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Theory::Cohomology => "coh",
            Theory::KTheory => "k",
        })
    }
}
