//! Exact models of the split octonions, the split Albert algebra and the split Brown
//! algebra over the rationals, with the Lie-algebra computations of their similitude
//! groups and the Weyl-group orbit counts that go with them.

// dense tensor code indexes several arrays with one loop variable
#![allow(clippy::needless_range_loop)]

pub mod albert;
pub mod brown;
pub mod classical_demos;
pub mod constants;
pub mod jordan_similitudes;
pub mod lie;
pub mod octonion;
pub mod poly;
pub mod weyl_orbits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalibrationError {
    #[error("no candidate convention passed the {0} calibration")]
    NoCandidate(&'static str),
    #[error("{target} calibration is ambiguous: {successes} candidates passed")]
    Ambiguous { target: &'static str, successes: usize },
    #[error(transparent)]
    Linalg(#[from] exact_linalg::LinalgError),
}
