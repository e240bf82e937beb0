//! Explicit strategies and strategy transformations.

pub mod ba;
pub mod basic;
pub mod bba;
pub mod chaser;
pub mod common;
pub mod digit;
pub mod registry;
pub mod threeba;
pub mod transforms;

pub use ba::BaTargeter;
pub use basic::{Center, Random, Scripted};
pub use bba::BbaTargeter;
pub use chaser::{hold_move, ChaseSide, ChaseTarget, Chaser};
pub use digit::{forced_move, DigitForcer, ForcedMove};
pub use registry::{build, SpecError};
pub use threeba::ThreeBa;
pub use transforms::{
    shift_xi_truncation, Affine, Inflate, Mirror, Retarget, RetargetReport, ShrinkBeta,
};
