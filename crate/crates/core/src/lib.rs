//! Certification and canonical-form toolkit for finite-dimensional LTI systems.
//!
//! The crate detects symmetry structures of state-space systems (reciprocity,
//! input-output Hamiltonianness, time-reversibility, losslessness, passivity,
//! relaxation), produces explicit matrix certificates, converts certified
//! systems into canonical forms (pseudo-gradient, port-Hamiltonian, spectral
//! factorization, normal forms), and validates the associated operator and
//! subspace structure on discretized grids.
//!
//! Module map:
//! - [`matcore`]: dense matrix kernel (Sylvester/Lyapunov/Riccati, structured
//!   linear systems, matrix exponential, spectral decompositions)
//! - [`lti`]: the state-space system model, simulation, dual/adjoint systems
//! - [`certify`]: structure certificates G, Omega, R, Q and their composition
//! - [`passivity`]: KYP storage matrices, compatibility, relaxation tests
//! - [`forms`]: canonical form constructors
//! - [`hankel`]: Gramians, cross-Gramian, Hankel spectrum, Mercer expansion
//! - [`geometry`]: Lagrangian/Dirac subspace calculus and grid discretizations
//! - [`doc`]: JSON document schema shared by the CLI and the C API
//! - [`generate`]: seeded random fixtures with embedded ground truth
//! - [`report`]: analysis drivers producing [`doc::ReportDocument`]s

pub mod certify;
pub mod doc;
pub mod forms;
pub mod generate;
pub mod geometry;
pub mod hankel;
pub mod lti;
pub mod matcore;
pub mod passivity;
pub mod report;
pub mod tol;

pub use lti::StateSpaceSystem;
pub use matcore::Mat;

/// Tool version recorded in every report document.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
