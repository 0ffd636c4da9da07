//! Core data types shared by all scoring modules.
//!
//! Conventions: +Z is up, the ground plane is z = 0, units are meters,
//! seconds and radians. Quaternions are stored w-x-y-z and unit-norm.
//! All types are immutable after construction and safe to share across
//! concurrent scorers.

mod diff;
mod smplx;
mod validate;

pub(crate) use diff::speeds_aligned;
pub use diff::{finite_difference, DiffOrder};
pub use smplx::{
    is_axial_joint, joint_group_of, smplx_joint_names, smplx_parents, SMPLX_FACE_COUNT,
    SMPLX_JOINT_COUNT, SMPLX_VERTEX_COUNT,
};
pub use validate::{validate_trajectory, ValidationReport, Violation, QUAT_NORM_HARD};

use serde::Serialize;

/// One pose sample: world-space joint positions plus local joint rotations.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    /// J x 3, meters.
    pub positions: Vec<[f64; 3]>,
    /// J x 4, unit quaternions in w-x-y-z order.
    pub rotations: Vec<[f64; 4]>,
}

/// A fixed-rate joint trajectory; the unit of scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionTrajectory {
    pub frame_rate_hz: f64,
    pub frames: Vec<Frame>,
    pub subject_id: String,
    pub prompt_id: String,
}

impl MotionTrajectory {
    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    pub fn joint_count(&self) -> usize {
        self.frames.first().map_or(0, |f| f.positions.len())
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.frame_rate_hz
    }
}

/// Shared triangle topology with per-frame vertex positions.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshSequence {
    /// F x 3 vertex indices.
    pub faces: Vec<[u32; 3]>,
    /// T x V x 3, meters.
    pub vertex_frames: Vec<Vec<[f64; 3]>>,
}

impl MeshSequence {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_frames.first().map_or(0, |v| v.len())
    }

    pub fn frame_count(&self) -> usize {
        self.vertex_frames.len()
    }
}

/// Skeleton structure, physical constants and per-joint thresholds.
///
/// `parents` forms a tree rooted at index 0 (the pelvis). Joint limits are
/// per degree of freedom: three `[min, max]` ranges per joint, one per axis
/// of the intrinsic XYZ Euler decomposition of the local rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyModel {
    pub joint_names: Vec<String>,
    /// -1 for the root.
    pub parents: Vec<i32>,
    /// J x 3 x [min, max], radians.
    pub joint_limits: Vec<[[f64; 2]; 3]>,
    /// Per-joint angular velocity limit, rad/s.
    pub omega_max: Vec<f64>,
    /// Per-joint torque limit, N*m (resolved from the joint-type table).
    pub torque_max: Vec<f64>,
    /// Per-joint inertia, kg*m^2.
    pub inertia: Vec<f64>,
    pub mass_kg: f64,
    /// m/s^2, positive down.
    pub gravity: f64,
    /// Mesh vertex indices of the foot soles, when a mesh is used.
    pub left_foot_vertices: Vec<usize>,
    pub right_foot_vertices: Vec<usize>,
    /// Center-of-mass weights; pelvis is triple-weighted by default.
    pub com_weights: Vec<f64>,
    /// Joint indices used by the skeleton contact fallback and balance.
    pub left_ankle: Option<usize>,
    pub right_ankle: Option<usize>,
    pub left_toe: Option<usize>,
    pub right_toe: Option<usize>,
}

impl BodyModel {
    pub fn joint_count(&self) -> usize {
        self.joint_names.len()
    }

    /// Default 55-joint SMPL-X body with m = 70 kg, g = 9.81 m/s^2 and
    /// I_j = 1.0 kg*m^2 for every joint.
    pub fn smplx_default() -> Self {
        smplx::smplx_body()
    }

    /// Builds a body model for an arbitrary named skeleton, classifying
    /// joints into threshold groups by name substring.
    pub fn from_skeleton(joint_names: Vec<String>, parents: Vec<i32>) -> Self {
        smplx::body_from_skeleton(joint_names, parents)
    }

    /// Total degrees of freedom checked by the joint-limit term (3 per joint).
    pub fn dof_count(&self) -> usize {
        3 * self.joint_count()
    }
}

/// All violation terms, the three feasibility axes and the aggregate reward
/// for one trajectory. Every field lies in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub v_vel: f64,
    pub v_spen: f64,
    pub v_lim: f64,
    pub v_slip: f64,
    pub v_gpen: f64,
    pub v_float: f64,
    pub v_bal: f64,
    pub s_tau: f64,
    pub s_grf: f64,
    pub s_met: f64,
    pub f_kin: f64,
    pub f_con: f64,
    pub f_dyn: f64,
    pub r_motion: f64,
    /// Non-fatal notes such as "spen-skipped".
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
}

/// Per-frame traces behind the report, for debugging and the `--trace` flag.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Percentage of intersecting pairs per frame (empty when no mesh).
    pub spen_per_frame: Vec<f64>,
    /// Fraction of joints over their velocity limit, per transition.
    pub velocity_flag_fraction: Vec<f64>,
    /// Fraction of DoF outside their range, per frame.
    pub limit_flag_fraction: Vec<f64>,
    /// Per-frame [left, right] contact flags.
    pub contact: Vec<[bool; 2]>,
    /// Per-frame [left, right] sole heights, meters.
    pub foot_height: Vec<[f64; 2]>,
    /// Per-frame [left, right] sole speeds, m/s.
    pub foot_speed: Vec<[f64; 2]>,
    /// Per-frame [left, right] float flags after the ballistic pass.
    pub float_flags: Vec<[bool; 2]>,
    /// Frames whose flags were forced by a failed ballistic fit.
    pub ballistic_forced: Vec<bool>,
    /// Distance from the projected COM to the support polygon, meters.
    pub balance_distance: Vec<f64>,
    /// Estimated ground reaction force per frame, newtons.
    pub grf: Vec<[f64; 3]>,
    /// Fraction of joints over their torque limit, per frame.
    pub torque_flag_fraction: Vec<f64>,
    /// Mechanical-work proxy total, N*m.
    pub met_total: f64,
}
