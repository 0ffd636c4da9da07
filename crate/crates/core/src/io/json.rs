//! Canonical JSON trajectory container. Floats are stored as f32; field
//! order and formatting are fixed, so write(read(x)) == x for files this
//! module writes.

use super::TrajectoryDocument;
use crate::error::{Error, Result};
use crate::model::{Frame, MeshSequence, MotionTrajectory};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    version: u32,
    frame_rate_hz: f32,
    subject_id: String,
    prompt_id: String,
    joint_names: Vec<String>,
    parents: Vec<i32>,
    frames: Vec<JsonFrame>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mesh: Option<JsonMesh>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    foot_vertex_sets: Option<JsonFootSets>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    joint_limits: Option<Vec<[[f32; 2]; 3]>>,
}

#[derive(Serialize, Deserialize)]
struct JsonFrame {
    positions: Vec<[f32; 3]>,
    rotations: Vec<[f32; 4]>,
}

#[derive(Serialize, Deserialize)]
struct JsonMesh {
    faces: Vec<[u32; 3]>,
    vertex_frames: Vec<Vec<[f32; 3]>>,
}

#[derive(Serialize, Deserialize)]
struct JsonFootSets {
    left: Vec<u32>,
    right: Vec<u32>,
}

/// Byte offset of a serde_json error position within `bytes`.
pub fn parse_error_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let mut offset = 0usize;
    let mut current_line = 1usize;
    for (i, &b) in bytes.iter().enumerate() {
        if current_line == line {
            offset = i;
            break;
        }
        if b == b'\n' {
            current_line += 1;
            offset = i + 1;
        }
    }
    (offset + column.saturating_sub(1)).min(bytes.len())
}

#[cfg(test)]
mod tests {
    use super::parse_error_offset;

    #[test]
    fn offsets_walk_lines_correctly() {
        let text = b"ab\ncdefg\n\nxy";
        assert_eq!(parse_error_offset(text, 1, 1), 0);
        assert_eq!(parse_error_offset(text, 1, 3), 2);
        assert_eq!(parse_error_offset(text, 2, 5), 7); // the 'g'
        assert_eq!(parse_error_offset(text, 4, 2), 11); // the 'y'
        assert_eq!(parse_error_offset(text, 9, 9), text.len()); // clamped
    }
}

pub fn read(bytes: &[u8]) -> Result<TrajectoryDocument> {
    let parsed: JsonDocument = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        offset: parse_error_offset(bytes, e.line(), e.column()),
        message: e.to_string(),
    })?;
    if parsed.version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported version {} (expected {FORMAT_VERSION})",
            parsed.version
        )));
    }
    let frames = parsed
        .frames
        .into_iter()
        .map(|f| Frame {
            positions: f.positions.iter().map(|p| p.map(f64::from)).collect(),
            rotations: f.rotations.iter().map(|r| r.map(f64::from)).collect(),
        })
        .collect();
    Ok(TrajectoryDocument {
        trajectory: MotionTrajectory {
            frame_rate_hz: f64::from(parsed.frame_rate_hz),
            frames,
            subject_id: parsed.subject_id,
            prompt_id: parsed.prompt_id,
        },
        joint_names: parsed.joint_names,
        parents: parsed.parents,
        mesh: parsed.mesh.map(|m| MeshSequence {
            faces: m.faces,
            vertex_frames: m
                .vertex_frames
                .into_iter()
                .map(|verts| verts.iter().map(|p| p.map(f64::from)).collect())
                .collect(),
        }),
        foot_vertex_sets: parsed.foot_vertex_sets.map(|s| {
            (
                s.left.into_iter().map(|i| i as usize).collect(),
                s.right.into_iter().map(|i| i as usize).collect(),
            )
        }),
        joint_limits: parsed.joint_limits.map(|limits| {
            limits
                .into_iter()
                .map(|joint| joint.map(|axis| axis.map(f64::from)))
                .collect()
        }),
    })
}

/// Expects an already f32-quantized document.
pub fn write(doc: &TrajectoryDocument) -> Vec<u8> {
    let json = JsonDocument {
        version: FORMAT_VERSION,
        frame_rate_hz: doc.trajectory.frame_rate_hz as f32,
        subject_id: doc.trajectory.subject_id.clone(),
        prompt_id: doc.trajectory.prompt_id.clone(),
        joint_names: doc.joint_names.clone(),
        parents: doc.parents.clone(),
        frames: doc
            .trajectory
            .frames
            .iter()
            .map(|f| JsonFrame {
                positions: f.positions.iter().map(|p| p.map(|v| v as f32)).collect(),
                rotations: f.rotations.iter().map(|r| r.map(|v| v as f32)).collect(),
            })
            .collect(),
        mesh: doc.mesh.as_ref().map(|m| JsonMesh {
            faces: m.faces.clone(),
            vertex_frames: m
                .vertex_frames
                .iter()
                .map(|verts| verts.iter().map(|p| p.map(|v| v as f32)).collect())
                .collect(),
        }),
        foot_vertex_sets: doc.foot_vertex_sets.as_ref().map(|(l, r)| JsonFootSets {
            left: l.iter().map(|&i| i as u32).collect(),
            right: r.iter().map(|&i| i as u32).collect(),
        }),
        joint_limits: doc.joint_limits.as_ref().map(|limits| {
            limits
                .iter()
                .map(|joint| joint.map(|axis| axis.map(|v| v as f32)))
                .collect()
        }),
    };
    let mut out = serde_json::to_vec(&json).expect("trajectory document serializes");
    out.push(b'\n');
    out
}
