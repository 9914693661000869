//! Finite-alphabet channels: exact information measures, per-distribution
//! bound evaluators, condition sampling and fixtures.

pub mod bounds;
pub mod csiszar;
pub mod fixtures;
pub mod joint;
pub mod sampling;

pub use bounds::{
    inner_region_at, joint_from, remark3_margin, th1_bounds_at, th1_joint, th2_region_at, Remark3, Th1Bounds,
};
pub use csiszar::csiszar_identity_residual;
pub use fixtures::{degraded_fixture, FixtureKind};
pub use joint::{JointPmf, Var};
pub use sampling::{check_conditions_sampled, ConditionReport, MarginWitness};
