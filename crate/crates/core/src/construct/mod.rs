//! Constructive pipeline: good forms and their points, orthogonal
//! configurations, and subspaces on which a top form becomes good.

pub mod assemble;
pub mod beta;
pub mod dm;
pub mod good;

pub use assemble::{
    assemble_l, run_pipeline, solve_x_y, AssembleOptions, BlockPlan, GoodSubspace, GoodSubspaceJson, PipelineJson,
    PipelineOptions, PipelineResult, PointCheck, SubspaceVerification, XySolution,
};
pub use beta::{build_beta_subspace, BetaOptions, BetaSubspace, BetaTrace};
pub use dm::{dm_membership, dm_search, OrthogonalConfig, OrthogonalConfigJson};
pub use good::{detect_good, good_points, GoodDecomposition, GoodDecompositionJson, Roles};
