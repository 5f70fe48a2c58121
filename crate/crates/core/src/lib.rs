//! Exact eigenvalue multiplicities of trees at Chebyshev eigenvalues
//! `2cos(i*pi/M)`, the recursive tree families whose members attain
//! `m(T, lambda) = p(T) - 1` and `p(T) - 2`, and an exhaustive harness that
//! checks those characterizations over every small tree.

pub mod families;
pub mod poly;
pub mod spectrum;
pub mod tree;
pub mod verify;

pub use families::{classify, Family, FamilyKind, FamilyResult, Gamma2Mode};
pub use poly::{LambdaSpec, PolyError, Polynomial};
pub use tree::{Tree, TreeError};
pub use verify::{sweep, SweepConfig, VerificationRecord, VerifyError};
