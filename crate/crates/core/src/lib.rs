//! Nilpotent and semisimple orbits of `GL_p × GL_q` on the off-diagonal
//! blocks of `gl_{p+q}`: signed Young diagrams, closure orders, KS triples,
//! and asymptotic cones of semisimple orbits attached to even nilpotents.

pub mod cli;
pub mod cone;
pub mod error;
pub mod hasse;
pub mod matrix;
pub mod numerics;
pub mod partitions;
pub mod scalar;
pub mod signed;
pub mod triples;

pub use cone::{asymptotic_cone, component_triples, emit_dot, siegel_family, ConeResult, SiegelFamily};
pub use error::{Error, Result};
pub use hasse::{hasse, HasseDiagram};
pub use matrix::ExactMatrix;
pub use numerics::{limit_direction, sample_orbit_limits, tangent_dimension, FloatMatrix, VerificationReport};
pub use partitions::{richardson_of_levi, Composition, Partition};
pub use scalar::Scalar;
pub use signed::{
    closure_le, dim_k_orbit, enumerate_orbits, parse_diagram, rank_profile, RankProfile, Sign, Signature,
    SignedDiagram,
};
pub use triples::{build_ks_triple, cayley, grading, richardson_symmetric, CayleyData, GradingData, KsTriple};
