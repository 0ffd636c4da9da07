//! Trajectory containers.
//!
//! Two interchangeable formats carry the same payload: a JSON document and a
//! compact binary container (magic "MFT1", little-endian float32 blocks).
//! Both store floats at float32 precision and round-trip losslessly; files
//! written by this module re-serialize byte-identically.

mod binary;
mod json;

pub use json::parse_error_offset;

use crate::error::{Error, Result};
use crate::model::{
    BodyModel, MeshSequence, MotionTrajectory, ValidationReport, Violation, QUAT_NORM_HARD,
};
use std::path::Path;

/// The full content of a trajectory file.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryDocument {
    pub trajectory: MotionTrajectory,
    pub joint_names: Vec<String>,
    pub parents: Vec<i32>,
    pub mesh: Option<MeshSequence>,
    /// (left, right) sole vertex indices into the mesh.
    pub foot_vertex_sets: Option<(Vec<usize>, Vec<usize>)>,
    /// Per-joint, per-axis [min, max] overrides, radians.
    pub joint_limits: Option<Vec<[[f64; 2]; 3]>>,
}

impl TrajectoryDocument {
    pub fn new(trajectory: MotionTrajectory, joint_names: Vec<String>, parents: Vec<i32>) -> Self {
        TrajectoryDocument {
            trajectory,
            joint_names,
            parents,
            mesh: None,
            foot_vertex_sets: None,
            joint_limits: None,
        }
    }

    /// Builds the body model for this skeleton, applying file-level foot
    /// vertex sets and joint-limit overrides.
    pub fn body_model(&self) -> BodyModel {
        let mut body = BodyModel::from_skeleton(self.joint_names.clone(), self.parents.clone());
        if let Some((left, right)) = &self.foot_vertex_sets {
            body.left_foot_vertices = left.clone();
            body.right_foot_vertices = right.clone();
        }
        if let Some(limits) = &self.joint_limits {
            if limits.len() == body.joint_limits.len() {
                body.joint_limits = limits.clone();
            }
        }
        body
    }

    /// Quantizes every float through f32 so the in-memory document equals
    /// what its file stores.
    fn quantize(&mut self) {
        let q = |v: &mut f64| *v = *v as f32 as f64;
        q(&mut self.trajectory.frame_rate_hz);
        for frame in &mut self.trajectory.frames {
            for p in &mut frame.positions {
                p.iter_mut().for_each(&q);
            }
            for r in &mut frame.rotations {
                r.iter_mut().for_each(&q);
            }
        }
        if let Some(mesh) = &mut self.mesh {
            for verts in &mut mesh.vertex_frames {
                for p in verts {
                    p.iter_mut().for_each(&q);
                }
            }
        }
        if let Some(limits) = &mut self.joint_limits {
            for joint in limits {
                for axis in joint {
                    axis.iter_mut().for_each(&q);
                }
            }
        }
    }

    /// Enforces the quaternion norm contract after parsing: keep within
    /// 1e-6, renormalize within 1e-3, reject beyond.
    fn settle_quaternions(&mut self) -> Result<()> {
        let mut violations = Vec::new();
        for (t, frame) in self.trajectory.frames.iter_mut().enumerate() {
            for (j, q) in frame.rotations.iter_mut().enumerate() {
                let norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
                let err = (norm - 1.0).abs();
                if !norm.is_finite() || err > QUAT_NORM_HARD {
                    violations.push(Violation::NonUnitQuaternion {
                        frame: t,
                        joint: j,
                        norm,
                    });
                } else if err > 1e-6 {
                    for c in q.iter_mut() {
                        *c /= norm;
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(ValidationReport { violations }))
        }
    }
}

/// Parses either container, sniffing the binary magic.
pub fn read_document(bytes: &[u8]) -> Result<TrajectoryDocument> {
    let mut doc = if bytes.starts_with(binary::MAGIC) {
        binary::read(bytes)?
    } else {
        json::read(bytes)?
    };
    doc.settle_quaternions()?;
    Ok(doc)
}

/// Serializes to the canonical JSON text.
pub fn write_json(doc: &TrajectoryDocument) -> Vec<u8> {
    let mut quantized = doc.clone();
    quantized.quantize();
    json::write(&quantized)
}

/// Serializes to the binary container.
pub fn write_binary(doc: &TrajectoryDocument) -> Vec<u8> {
    let mut quantized = doc.clone();
    quantized.quantize();
    binary::write(&quantized)
}

pub fn load_path(path: &Path) -> Result<TrajectoryDocument> {
    let bytes = std::fs::read(path)?;
    read_document(&bytes)
}

/// Writes by extension: `.mft` / `.mft1` / `.bin` binary, everything else JSON.
pub fn save_path(path: &Path, doc: &TrajectoryDocument) -> Result<()> {
    let binary = matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("mft") | Some("mft1") | Some("bin")
    );
    let bytes = if binary {
        write_binary(doc)
    } else {
        write_json(doc)
    };
    std::fs::write(path, bytes)?;
    Ok(())
}
