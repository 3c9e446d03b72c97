//! Exact-arithmetic gonality invariants of polarized classes on hyperbolic
//! integer lattices, with minimizing witnesses.
//!
//! The core objects are integer lattices given by a Gram matrix — chiefly
//! the rank-10 even unimodular lattice of signature (1, 9) and its index-2
//! double — and polarized classes C on them with C² > 0. On top of an
//! exact fiber enumerator (all vectors of prescribed norm and pairing
//! against C), the crate computes:
//!
//! - φ(C): the minimal pairing of C against a nonzero isotropic class;
//! - μ(C): the minimal B·C − 2 over norm-4 classes B ≠ C, optionally
//!   restricted to φ(B) = 2;
//! - the gonality bound of the general member, min(2φ, μ, ⌊C²/4⌋ + 2),
//!   with the achieving term;
//! - the gonality and Clifford index of the double cover of the class,
//!   plus the minimal-divisor value behind the Clifford index;
//! - genus and maximal-gonality data on both sides.
//!
//! Every minimum carries a witness vector, and two independent
//! enumeration paths (a lattice-reduction solver and a brute-force box
//! scan with certified completeness ranges) can be played against each
//! other; `verify` wires that into a property suite and survey tables.
//! All arithmetic is exact: integers, big integers, and rationals — no
//! floating point anywhere.

pub mod arith;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod invariants;
pub mod lattice;
pub mod verify;

pub use enumeration::{boxscan::BoxOracle, FiberFlags, FiberResult, FiberSolver};
pub use error::{Error, Result};
pub use exec::Exec;
pub use invariants::{
    cone_position, dm_min, gengon_report, is_big_and_nef, k3_report, mu, phi,
    quarter_term, Achiever, ConePosition, InvariantReport, MuMode, MuResult, MuValue,
    PhiResult, ReportOptions,
};
pub use lattice::{
    default_ample, preset, CoverPair, Lattice, LatticeSpec, LatticeVector,
    PolarizedClass, PRESET_NAMES,
};
pub use verify::{
    run_suite, run_suite_exec, sample_classes, survey, survey_classes, survey_to_csv,
    survey_to_json, sweep_classes, SuiteConfig, SuiteReport, SurveyRow, SweepSpec,
    Violation, GENERATOR_ID,
};
