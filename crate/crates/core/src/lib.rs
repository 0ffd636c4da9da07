// index loops over parallel frame/joint arrays read better than enumerate
// chains in the numeric kernels
#![allow(clippy::needless_range_loop)]

//! Physics-grounded feasibility scoring for 3D human-motion trajectories.
//!
//! The library decomposes motion quality into three axes — kinematic,
//! contact/balance and dynamic feasibility — aggregates them into a scalar
//! reward, and ships the evaluation statistics (pairwise agreement, Spearman
//! correlation, Elo ratings) plus a desk-scale contrastive policy objective
//! for reward post-training.

pub mod config;
pub mod contact;
pub mod dynamics;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod kinematics;
pub mod model;
pub mod nft;
#[cfg(feature = "oracles")]
pub mod oracles;
pub mod reward;

pub use config::ScoreConfig;
pub use error::{Error, Result};
pub use model::{
    BodyModel, Diagnostics, Frame, MeshSequence, MotionTrajectory, ScoreReport, ValidationReport,
};
pub use reward::{normalize_rewards, score_trajectory};
