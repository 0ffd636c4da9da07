//! Structural validation of trajectories, body models and meshes.

use super::{BodyModel, MeshSequence, MotionTrajectory};
use std::fmt;

/// One structural problem found during validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TooFewFrames {
        got: usize,
    },
    NonPositiveFrameRate {
        got: f64,
    },
    JointCountMismatch {
        frame: usize,
        got: usize,
        expected: usize,
    },
    NonFinitePosition {
        frame: usize,
        joint: usize,
    },
    NonUnitQuaternion {
        frame: usize,
        joint: usize,
        norm: f64,
    },
    BodyJointMismatch {
        body: usize,
        trajectory: usize,
    },
    BadParentTree {
        joint: usize,
    },
    BadJointLimit {
        joint: usize,
        axis: usize,
    },
    BadComWeight {
        joint: usize,
    },
    FaceIndexOutOfRange {
        face: usize,
        index: u32,
        vertices: usize,
    },
    MeshFrameMismatch {
        mesh_frames: usize,
        trajectory_frames: usize,
    },
    MeshVertexCountVaries {
        frame: usize,
        got: usize,
        expected: usize,
    },
    NonFiniteVertex {
        frame: usize,
        vertex: usize,
    },
    FootVertexOutOfRange {
        index: usize,
        vertices: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewFrames { got } => write!(f, "too few frames: {got} < 2"),
            Violation::NonPositiveFrameRate { got } => {
                write!(f, "frame rate must be > 0, got {got}")
            }
            Violation::JointCountMismatch {
                frame,
                got,
                expected,
            } => {
                write!(f, "frame {frame} has {got} joints, expected {expected}")
            }
            Violation::NonFinitePosition { frame, joint } => {
                write!(f, "non-finite position at (t={frame}, j={joint})")
            }
            Violation::NonUnitQuaternion { frame, joint, norm } => {
                write!(
                    f,
                    "non-unit quaternion at (t={frame}, j={joint}): |q| = {norm}"
                )
            }
            Violation::BodyJointMismatch { body, trajectory } => {
                write!(
                    f,
                    "body model has {body} joints but trajectory has {trajectory}"
                )
            }
            Violation::BadParentTree { joint } => {
                write!(f, "parents do not form a tree rooted at 0 (joint {joint})")
            }
            Violation::BadJointLimit { joint, axis } => {
                write!(
                    f,
                    "joint {joint} axis {axis}: limits not finite or min > max"
                )
            }
            Violation::BadComWeight { joint } => {
                write!(f, "COM weight of joint {joint} must be positive")
            }
            Violation::FaceIndexOutOfRange {
                face,
                index,
                vertices,
            } => {
                write!(
                    f,
                    "face {face} references vertex {index} but mesh has {vertices} vertices"
                )
            }
            Violation::MeshFrameMismatch {
                mesh_frames,
                trajectory_frames,
            } => {
                write!(
                    f,
                    "mesh has {mesh_frames} frames but trajectory has {trajectory_frames}"
                )
            }
            Violation::MeshVertexCountVaries {
                frame,
                got,
                expected,
            } => {
                write!(
                    f,
                    "mesh frame {frame} has {got} vertices, expected {expected}"
                )
            }
            Violation::NonFiniteVertex { frame, vertex } => {
                write!(f, "non-finite mesh vertex at (t={frame}, v={vertex})")
            }
            Violation::FootVertexOutOfRange { index, vertices } => {
                write!(
                    f,
                    "foot vertex index {index} out of range for {vertices} vertices"
                )
            }
        }
    }
}

/// Validation outcome; empty means the inputs satisfy every invariant.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

/// Quaternion norms further than this from 1 are hard violations; anything
/// closer is renormalized by the loaders.
pub const QUAT_NORM_HARD: f64 = 1e-3;

/// Checks every structural invariant of a trajectory, its body model and an
/// optional mesh. Failures are collected, not short-circuited.
pub fn validate_trajectory(
    traj: &MotionTrajectory,
    body: &BodyModel,
    mesh: Option<&MeshSequence>,
) -> ValidationReport {
    let mut out = Vec::new();
    let t = traj.frame_count();
    if t < 2 {
        out.push(Violation::TooFewFrames { got: t });
    }
    if !traj.frame_rate_hz.is_finite() || traj.frame_rate_hz <= 0.0 {
        out.push(Violation::NonPositiveFrameRate {
            got: traj.frame_rate_hz,
        });
    }
    let j = traj.joint_count();
    for (ti, frame) in traj.frames.iter().enumerate() {
        if frame.positions.len() != j || frame.rotations.len() != j {
            out.push(Violation::JointCountMismatch {
                frame: ti,
                got: frame.positions.len().max(frame.rotations.len()),
                expected: j,
            });
            continue;
        }
        for (ji, p) in frame.positions.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                out.push(Violation::NonFinitePosition {
                    frame: ti,
                    joint: ji,
                });
            }
        }
        for (ji, q) in frame.rotations.iter().enumerate() {
            let norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
            if !norm.is_finite() || (norm - 1.0).abs() > 1e-6 {
                out.push(Violation::NonUnitQuaternion {
                    frame: ti,
                    joint: ji,
                    norm,
                });
            }
        }
    }

    if body.joint_count() != j {
        out.push(Violation::BodyJointMismatch {
            body: body.joint_count(),
            trajectory: j,
        });
    }
    validate_body(body, &mut out);

    if let Some(mesh) = mesh {
        validate_mesh(mesh, t, &mut out);
        let v = mesh.vertex_count();
        for &idx in body
            .left_foot_vertices
            .iter()
            .chain(&body.right_foot_vertices)
        {
            if idx >= v {
                out.push(Violation::FootVertexOutOfRange {
                    index: idx,
                    vertices: v,
                });
            }
        }
    }

    ValidationReport { violations: out }
}

fn validate_body(body: &BodyModel, out: &mut Vec<Violation>) {
    if body.joint_count() == 0 {
        return;
    }
    if body.parents[0] != -1 {
        out.push(Violation::BadParentTree { joint: 0 });
    }
    for (i, &p) in body.parents.iter().enumerate().skip(1) {
        if p < 0 || p as usize >= body.joint_count() || p as usize == i {
            out.push(Violation::BadParentTree { joint: i });
        }
    }
    for (i, limits) in body.joint_limits.iter().enumerate() {
        for (axis, range) in limits.iter().enumerate() {
            if !range[0].is_finite() || !range[1].is_finite() || range[0] > range[1] {
                out.push(Violation::BadJointLimit { joint: i, axis });
            }
        }
    }
    for (i, &w) in body.com_weights.iter().enumerate() {
        if !w.is_finite() || w <= 0.0 {
            out.push(Violation::BadComWeight { joint: i });
        }
    }
}

fn validate_mesh(mesh: &MeshSequence, trajectory_frames: usize, out: &mut Vec<Violation>) {
    let v = mesh.vertex_count();
    for (fi, face) in mesh.faces.iter().enumerate() {
        for &idx in face {
            if idx as usize >= v {
                out.push(Violation::FaceIndexOutOfRange {
                    face: fi,
                    index: idx,
                    vertices: v,
                });
                break;
            }
        }
    }
    if mesh.frame_count() != trajectory_frames {
        out.push(Violation::MeshFrameMismatch {
            mesh_frames: mesh.frame_count(),
            trajectory_frames,
        });
    }
    for (ti, verts) in mesh.vertex_frames.iter().enumerate() {
        if verts.len() != v {
            out.push(Violation::MeshVertexCountVaries {
                frame: ti,
                got: verts.len(),
                expected: v,
            });
            continue;
        }
        for (vi, p) in verts.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                out.push(Violation::NonFiniteVertex {
                    frame: ti,
                    vertex: vi,
                });
            }
        }
    }
}
