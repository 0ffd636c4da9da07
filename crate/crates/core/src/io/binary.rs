//! Compact binary trajectory container.
//!
//! Layout (all little-endian):
//!   magic "MFT1", u32 version, u32 flags, f32 frame_rate_hz, u32 T, u32 J,
//!   subject_id, prompt_id, J joint names (strings are u32 length + UTF-8),
//!   J x i32 parents, T*J*3 f32 positions, T*J*4 f32 rotations,
//!   [flag 1: u32 V, u32 F, F*3 u32 faces, T*V*3 f32 vertices]
//!   [flag 2: u32 nL, nL u32, u32 nR, nR u32]
//!   [flag 4: J*3*2 f32 joint limits]

use super::TrajectoryDocument;
use crate::error::{Error, Result};
use crate::model::{Frame, MeshSequence, MotionTrajectory};

pub const MAGIC: &[u8; 4] = b"MFT1";
const VERSION: u32 = 1;

const FLAG_MESH: u32 = 1;
const FLAG_FOOT_SETS: u32 = 2;
const FLAG_JOINT_LIMITS: u32 = 4;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::Format(format!(
                "truncated container: need {n} bytes at offset {}, have {}",
                self.pos,
                self.bytes.len() - self.pos
            )));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn i32(&mut self) -> Result<i32> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f32(&mut self) -> Result<f64> {
        Ok(f64::from(f32::from_le_bytes(
            self.take(4)?.try_into().unwrap(),
        )))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec())
            .map_err(|_| Error::Format("string block is not UTF-8".into()))
    }

    /// Guards count-prefixed blocks against absurd allocations.
    fn check_capacity(&self, items: usize, item_bytes: usize) -> Result<()> {
        let needed = items
            .checked_mul(item_bytes)
            .ok_or_else(|| Error::Format("count overflow in container header".into()))?;
        if needed > self.bytes.len() - self.pos {
            return Err(Error::Format(format!(
                "container declares {items} items ({needed} bytes) but only {} bytes remain",
                self.bytes.len() - self.pos
            )));
        }
        Ok(())
    }
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_f32(out: &mut Vec<u8>, v: f64) {
    out.extend_from_slice(&(v as f32).to_le_bytes());
}

fn put_string(out: &mut Vec<u8>, s: &str) {
    put_u32(out, s.len() as u32);
    out.extend_from_slice(s.as_bytes());
}

pub fn read(bytes: &[u8]) -> Result<TrajectoryDocument> {
    let mut c = Cursor { bytes, pos: 0 };
    if c.take(4)? != MAGIC {
        return Err(Error::Format("bad magic, expected MFT1".into()));
    }
    let version = c.u32()?;
    if version != VERSION {
        return Err(Error::Format(format!(
            "unsupported version {version} (expected {VERSION})"
        )));
    }
    let flags = c.u32()?;
    let frame_rate_hz = c.f32()?;
    let t = c.u32()? as usize;
    let j = c.u32()? as usize;
    let subject_id = c.string()?;
    let prompt_id = c.string()?;
    let mut joint_names = Vec::with_capacity(j.min(1 << 16));
    for _ in 0..j {
        joint_names.push(c.string()?);
    }
    c.check_capacity(j, 4)?;
    let mut parents = Vec::with_capacity(j);
    for _ in 0..j {
        parents.push(c.i32()?);
    }
    c.check_capacity(t.saturating_mul(j), 28)?;
    let mut frames = Vec::with_capacity(t);
    for _ in 0..t {
        let mut positions = Vec::with_capacity(j);
        for _ in 0..j {
            positions.push([c.f32()?, c.f32()?, c.f32()?]);
        }
        let mut rotations = Vec::with_capacity(j);
        for _ in 0..j {
            rotations.push([c.f32()?, c.f32()?, c.f32()?, c.f32()?]);
        }
        frames.push(Frame {
            positions,
            rotations,
        });
    }
    let mesh = if flags & FLAG_MESH != 0 {
        let v = c.u32()? as usize;
        let f = c.u32()? as usize;
        c.check_capacity(f, 12)?;
        let mut faces = Vec::with_capacity(f);
        for _ in 0..f {
            faces.push([c.u32()?, c.u32()?, c.u32()?]);
        }
        c.check_capacity(t.saturating_mul(v), 12)?;
        let mut vertex_frames = Vec::with_capacity(t);
        for _ in 0..t {
            let mut verts = Vec::with_capacity(v);
            for _ in 0..v {
                verts.push([c.f32()?, c.f32()?, c.f32()?]);
            }
            vertex_frames.push(verts);
        }
        Some(MeshSequence {
            faces,
            vertex_frames,
        })
    } else {
        None
    };
    let foot_vertex_sets = if flags & FLAG_FOOT_SETS != 0 {
        let read_set = |c: &mut Cursor| -> Result<Vec<usize>> {
            let n = c.u32()? as usize;
            c.check_capacity(n, 4)?;
            (0..n).map(|_| Ok(c.u32()? as usize)).collect()
        };
        let left = read_set(&mut c)?;
        let right = read_set(&mut c)?;
        Some((left, right))
    } else {
        None
    };
    let joint_limits = if flags & FLAG_JOINT_LIMITS != 0 {
        c.check_capacity(j, 24)?;
        let mut limits = Vec::with_capacity(j);
        for _ in 0..j {
            let mut joint = [[0.0; 2]; 3];
            for axis in &mut joint {
                axis[0] = c.f32()?;
                axis[1] = c.f32()?;
            }
            limits.push(joint);
        }
        Some(limits)
    } else {
        None
    };
    if c.pos != bytes.len() {
        return Err(Error::Format(format!(
            "{} trailing bytes after container payload",
            bytes.len() - c.pos
        )));
    }
    Ok(TrajectoryDocument {
        trajectory: MotionTrajectory {
            frame_rate_hz,
            frames,
            subject_id,
            prompt_id,
        },
        joint_names,
        parents,
        mesh,
        foot_vertex_sets,
        joint_limits,
    })
}

/// Expects an already f32-quantized document.
pub fn write(doc: &TrajectoryDocument) -> Vec<u8> {
    let traj = &doc.trajectory;
    let mut flags = 0;
    if doc.mesh.is_some() {
        flags |= FLAG_MESH;
    }
    if doc.foot_vertex_sets.is_some() {
        flags |= FLAG_FOOT_SETS;
    }
    if doc.joint_limits.is_some() {
        flags |= FLAG_JOINT_LIMITS;
    }
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    put_u32(&mut out, VERSION);
    put_u32(&mut out, flags);
    put_f32(&mut out, traj.frame_rate_hz);
    put_u32(&mut out, traj.frame_count() as u32);
    put_u32(&mut out, traj.joint_count() as u32);
    put_string(&mut out, &traj.subject_id);
    put_string(&mut out, &traj.prompt_id);
    for name in &doc.joint_names {
        put_string(&mut out, name);
    }
    for &p in &doc.parents {
        out.extend_from_slice(&p.to_le_bytes());
    }
    for frame in &traj.frames {
        for p in &frame.positions {
            p.iter().for_each(|&v| put_f32(&mut out, v));
        }
        for r in &frame.rotations {
            r.iter().for_each(|&v| put_f32(&mut out, v));
        }
    }
    if let Some(mesh) = &doc.mesh {
        put_u32(&mut out, mesh.vertex_count() as u32);
        put_u32(&mut out, mesh.face_count() as u32);
        for f in &mesh.faces {
            f.iter().for_each(|&v| put_u32(&mut out, v));
        }
        for verts in &mesh.vertex_frames {
            for p in verts {
                p.iter().for_each(|&v| put_f32(&mut out, v));
            }
        }
    }
    if let Some((left, right)) = &doc.foot_vertex_sets {
        for set in [left, right] {
            put_u32(&mut out, set.len() as u32);
            set.iter().for_each(|&i| put_u32(&mut out, i as u32));
        }
    }
    if let Some(limits) = &doc.joint_limits {
        for joint in limits {
            for axis in joint {
                put_f32(&mut out, axis[0]);
                put_f32(&mut out, axis[1]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_container_is_a_format_error() {
        let doc = TrajectoryDocument::new(
            MotionTrajectory {
                frame_rate_hz: 16.0,
                frames: vec![
                    Frame {
                        positions: vec![[0.0; 3]; 2],
                        rotations: vec![[1.0, 0.0, 0.0, 0.0]; 2],
                    };
                    2
                ],
                subject_id: "s".into(),
                prompt_id: "p".into(),
            },
            vec!["a".into(), "b".into()],
            vec![-1, 0],
        );
        let bytes = write(&doc);
        assert!(read(&bytes).is_ok());
        assert!(matches!(
            read(&bytes[..bytes.len() - 3]),
            Err(Error::Format(_))
        ));
        assert!(matches!(read(&bytes[..10]), Err(Error::Format(_))));
    }

    #[test]
    fn declared_counts_beyond_payload_are_rejected() {
        // header claims 2^30 joints with almost no payload behind it
        let mut bytes = Vec::new();
        bytes.extend_from_slice(MAGIC);
        put_u32(&mut bytes, VERSION);
        put_u32(&mut bytes, 0);
        put_f32(&mut bytes, 16.0);
        put_u32(&mut bytes, 2);
        put_u32(&mut bytes, 1 << 30);
        put_string(&mut bytes, "s");
        put_string(&mut bytes, "p");
        assert!(matches!(read(&bytes), Err(Error::Format(_))));
    }
}
