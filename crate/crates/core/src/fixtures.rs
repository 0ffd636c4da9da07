//! Synthetic trajectory fixtures used by tests, benchmarks and `selfcheck`.
//!
//! The standing pose uses coordinates that are multiples of 1/64 so symmetric
//! sums cancel exactly in floating point; the ideal fixtures then hit their
//! score identities exactly rather than within a tolerance.

use crate::model::{BodyModel, Frame, MeshSequence, MotionTrajectory};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A trajectory plus the body model (and optional mesh) that scores it.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub trajectory: MotionTrajectory,
    pub body: BodyModel,
    pub mesh: Option<MeshSequence>,
}

/// (x, z) in units of 1/64 m for each of the 55 SMPL-X joints; y is 0.
/// Left/right pairs mirror in x, so the COM projects exactly onto the
/// ankle-to-ankle segment.
fn standing_xz() -> [(i32, i32); 55] {
    let mut xz = [(0, 0); 55];
    xz[0] = (0, 60); // pelvis
    xz[1] = (8, 56);
    xz[2] = (-8, 56);
    xz[3] = (0, 68); // spine1
    xz[4] = (8, 32);
    xz[5] = (-8, 32);
    xz[6] = (0, 76); // spine2
    xz[7] = (8, 4); // ankles
    xz[8] = (-8, 4);
    xz[9] = (0, 84); // spine3
    xz[10] = (8, 0); // toes
    xz[11] = (-8, 0);
    xz[12] = (0, 92); // neck
    xz[13] = (4, 88);
    xz[14] = (-4, 88);
    xz[15] = (0, 100); // head
    xz[16] = (12, 88);
    xz[17] = (-12, 88);
    xz[18] = (16, 68);
    xz[19] = (-16, 68);
    xz[20] = (16, 52);
    xz[21] = (-16, 52);
    xz[22] = (0, 96); // jaw
    xz[23] = (2, 100);
    xz[24] = (-2, 100);
    for k in 0..15 {
        xz[25 + k] = (17 + k as i32, 48); // left fingers
        xz[40 + k] = (-(17 + k as i32), 48); // right fingers
    }
    xz
}

pub fn standing_positions() -> Vec<[f64; 3]> {
    standing_xz()
        .iter()
        .map(|&(x, z)| [x as f64 / 64.0, 0.0, z as f64 / 64.0])
        .collect()
}

fn identity_rotations() -> Vec<[f64; 4]> {
    vec![[1.0, 0.0, 0.0, 0.0]; 55]
}

fn trajectory_from_positions(
    positions: Vec<Vec<[f64; 3]>>,
    f: f64,
    subject: &str,
    prompt: &str,
) -> MotionTrajectory {
    MotionTrajectory {
        frame_rate_hz: f,
        frames: positions
            .into_iter()
            .map(|p| Frame {
                positions: p,
                rotations: identity_rotations(),
            })
            .collect(),
        subject_id: subject.to_string(),
        prompt_id: prompt.to_string(),
    }
}

/// Two disjoint tetrahedra well above the ground; never self-intersecting.
fn clean_mesh(t_frames: usize) -> MeshSequence {
    let tet = |sx: f64| -> Vec<[f64; 3]> {
        vec![
            [sx * 0.25, 0.0, 0.625],
            [sx * 0.375, 0.0, 0.625],
            [sx * 0.3125, 0.125, 0.625],
            [sx * 0.3125, 0.0625, 0.75],
        ]
    };
    let mut vertices = tet(1.0);
    vertices.extend(tet(-1.0));
    let faces = vec![
        [0, 1, 2],
        [0, 1, 3],
        [0, 2, 3],
        [1, 2, 3],
        [4, 5, 6],
        [4, 5, 7],
        [4, 6, 7],
        [5, 6, 7],
    ];
    MeshSequence {
        faces,
        vertex_frames: vec![vertices; t_frames],
    }
}

/// Ideal standing trajectory: feet on the ground, zero velocity, COM over
/// the support segment, identity rotations, non-intersecting mesh. Scores
/// r_motion = 1 exactly.
pub fn standing(t_frames: usize, f: f64) -> Fixture {
    let positions = vec![standing_positions(); t_frames];
    Fixture {
        trajectory: trajectory_from_positions(positions, f, "standing", "fixture"),
        body: BodyModel::smplx_default(),
        mesh: Some(clean_mesh(t_frames)),
    }
}

/// Projectile trajectory: the whole body translates rigidly along
/// x(tau) = vx*tau, z(tau) = z0 + vz*tau - g/2*tau^2, airborne throughout.
pub fn ballistic(t_frames: usize, f: f64) -> Fixture {
    let body = BodyModel::smplx_default();
    let (z0, vz, vx) = (2.0, 2.0, 0.5);
    let g = body.gravity;
    let base = standing_positions();
    let positions: Vec<Vec<[f64; 3]>> = (0..t_frames)
        .map(|k| {
            let tau = k as f64 / f;
            let dx = vx * tau;
            let dz = z0 + vz * tau - 0.5 * g * tau * tau;
            base.iter().map(|p| [p[0] + dx, p[1], p[2] + dz]).collect()
        })
        .collect();
    Fixture {
        trajectory: trajectory_from_positions(positions, f, "ballistic", "fixture"),
        body,
        mesh: None,
    }
}

/// Body frozen in mid-air: fails the ballistic fit on its airborne run.
pub fn hovering(t_frames: usize, f: f64) -> Fixture {
    let base = standing_positions();
    let lifted: Vec<[f64; 3]> = base.iter().map(|p| [p[0], p[1], p[2] + 0.5]).collect();
    Fixture {
        trajectory: trajectory_from_positions(vec![lifted; t_frames], f, "hovering", "fixture"),
        body: BodyModel::smplx_default(),
        mesh: None,
    }
}

/// Feet planted on the ground while the rest of the body (root included)
/// translates at 1 m/s: the foot/root speed ratio sits at ~1.
pub fn planted_walk(t_frames: usize, f: f64) -> Fixture {
    let base = standing_positions();
    let planted = [7usize, 8, 10, 11];
    let positions: Vec<Vec<[f64; 3]>> = (0..t_frames)
        .map(|k| {
            let dx = k as f64 / f;
            base.iter()
                .enumerate()
                .map(|(j, p)| {
                    if planted.contains(&j) {
                        *p
                    } else {
                        [p[0] + dx, p[1], p[2]]
                    }
                })
                .collect()
        })
        .collect();
    Fixture {
        trajectory: trajectory_from_positions(positions, f, "planted", "fixture"),
        body: BodyModel::smplx_default(),
        mesh: None,
    }
}

/// The whole body, feet included, drifts at `speed` m/s: feet move rigidly
/// with the root, so the float ratio flags every frame.
pub fn rigid_drift(t_frames: usize, f: f64, speed: f64) -> Fixture {
    let base = standing_positions();
    let positions: Vec<Vec<[f64; 3]>> = (0..t_frames)
        .map(|k| {
            let dx = speed * k as f64 / f;
            base.iter().map(|p| [p[0] + dx, p[1], p[2]]).collect()
        })
        .collect();
    Fixture {
        trajectory: trajectory_from_positions(positions, f, "drift", "fixture"),
        body: BodyModel::smplx_default(),
        mesh: None,
    }
}

/// Smooth pseudo-random motion around the standing pose; deterministic in
/// the seed. Useful for batch fixtures with mid-range scores.
pub fn jittered(seed: u64, t_frames: usize, f: f64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = standing_positions();
    let j = base.len();
    let amp: Vec<[f64; 3]> = (0..j)
        .map(|_| {
            [
                0.05 * rng.random::<f64>(),
                0.05 * rng.random::<f64>(),
                0.03 * rng.random::<f64>(),
            ]
        })
        .collect();
    let phase: Vec<f64> = (0..j)
        .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
        .collect();
    let rot_amp: Vec<f64> = (0..j).map(|_| 0.3 * rng.random::<f64>()).collect();
    let axes: Vec<[f64; 3]> = (0..j)
        .map(|_| {
            let v = [
                rng.random::<f64>() - 0.5,
                rng.random::<f64>() - 0.5,
                rng.random::<f64>() - 0.5,
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().max(1e-9);
            [v[0] / n, v[1] / n, v[2] / n]
        })
        .collect();
    let frames: Vec<Frame> = (0..t_frames)
        .map(|k| {
            let s = k as f64 / t_frames.max(1) as f64;
            let positions: Vec<[f64; 3]> = base
                .iter()
                .enumerate()
                .map(|(ji, p)| {
                    let w = (std::f64::consts::TAU * s + phase[ji]).sin();
                    [
                        p[0] + amp[ji][0] * w,
                        p[1] + amp[ji][1] * w,
                        p[2] + amp[ji][2] * w.abs(),
                    ]
                })
                .collect();
            let rotations: Vec<[f64; 4]> = (0..j)
                .map(|ji| {
                    let angle = rot_amp[ji] * (std::f64::consts::TAU * s + phase[ji]).sin();
                    let (sa, ca) = (angle / 2.0).sin_cos();
                    [ca, sa * axes[ji][0], sa * axes[ji][1], sa * axes[ji][2]]
                })
                .collect();
            Frame {
                positions,
                rotations,
            }
        })
        .collect();
    Fixture {
        trajectory: MotionTrajectory {
            frame_rate_hz: f,
            frames,
            subject_id: format!("subj{seed:04}"),
            prompt_id: format!("prompt{:02}", seed % 5),
        },
        body: BodyModel::smplx_default(),
        mesh: None,
    }
}

/// Full SMPL-X-sized fixture (55 joints, 10475 vertices, 20908 faces) with
/// float32-exact values, for container round-trips and BVH structure checks.
/// The mesh topology is random and not meant to be scored.
pub fn smplx_sized(t_frames: usize, seed: u64) -> Fixture {
    use crate::model::{SMPLX_FACE_COUNT, SMPLX_VERTEX_COUNT};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f32r = |lo: f32, hi: f32| -> f64 { rng.random_range(lo..hi) as f64 };
    let base = standing_positions();
    let frames: Vec<Frame> = (0..t_frames)
        .map(|_| {
            let positions: Vec<[f64; 3]> = base
                .iter()
                .map(|p| {
                    // quantize after the add so stored values are f32-exact
                    [
                        (p[0] + f32r(-0.01, 0.01)) as f32 as f64,
                        (p[1] + f32r(-0.01, 0.01)) as f32 as f64,
                        (p[2] + f32r(-0.01, 0.01)) as f32 as f64,
                    ]
                })
                .collect();
            let rotations: Vec<[f64; 4]> = (0..base.len())
                .map(|_| {
                    let q = [
                        1.0 + f32r(-0.1, 0.1),
                        f32r(-0.1, 0.1),
                        f32r(-0.1, 0.1),
                        f32r(-0.1, 0.1),
                    ];
                    let n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
                    // normalize in f64, then quantize to f32 so files are exact
                    [
                        (q[0] / n) as f32 as f64,
                        (q[1] / n) as f32 as f64,
                        (q[2] / n) as f32 as f64,
                        (q[3] / n) as f32 as f64,
                    ]
                })
                .collect();
            Frame {
                positions,
                rotations,
            }
        })
        .collect();
    let mut rng2 = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let vertex_frames: Vec<Vec<[f64; 3]>> = (0..t_frames)
        .map(|_| {
            (0..SMPLX_VERTEX_COUNT)
                .map(|_| {
                    [
                        rng2.random_range(-1.0f32..1.0) as f64,
                        rng2.random_range(-1.0f32..1.0) as f64,
                        rng2.random_range(0.0f32..2.0) as f64,
                    ]
                })
                .collect()
        })
        .collect();
    let faces: Vec<[u32; 3]> = (0..SMPLX_FACE_COUNT)
        .map(|_| loop {
            let a = rng2.random_range(0..SMPLX_VERTEX_COUNT as u32);
            let b = rng2.random_range(0..SMPLX_VERTEX_COUNT as u32);
            let c = rng2.random_range(0..SMPLX_VERTEX_COUNT as u32);
            if a != b && b != c && a != c {
                break [a, b, c];
            }
        })
        .collect();
    let mut body = BodyModel::smplx_default();
    body.left_foot_vertices = (0..50).collect();
    body.right_foot_vertices = (50..100).collect();
    Fixture {
        trajectory: MotionTrajectory {
            frame_rate_hz: 16.0,
            frames,
            subject_id: "smplx-sized".to_string(),
            prompt_id: "roundtrip".to_string(),
        },
        body,
        mesh: Some(MeshSequence {
            faces,
            vertex_frames,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_trajectory;

    #[test]
    fn fixtures_validate() {
        for fixture in [
            standing(4, 16.0),
            ballistic(9, 16.0),
            hovering(6, 16.0),
            planted_walk(6, 16.0),
            rigid_drift(6, 16.0, 1.0),
            jittered(7, 8, 16.0),
        ] {
            let report =
                validate_trajectory(&fixture.trajectory, &fixture.body, fixture.mesh.as_ref());
            assert!(report.is_ok(), "violations: {report}");
        }
    }

    #[test]
    fn standing_com_is_centered_exactly() {
        let fixture = standing(2, 16.0);
        let com = crate::dynamics::com_trajectory(&fixture.trajectory, &fixture.body);
        assert_eq!(com[0][0], 0.0);
        assert_eq!(com[0][1], 0.0);
    }

    #[test]
    fn jittered_is_deterministic() {
        let a = jittered(3, 8, 16.0);
        let b = jittered(3, 8, 16.0);
        assert_eq!(a.trajectory, b.trajectory);
    }
}
