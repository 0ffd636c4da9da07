//! Dynamic feasibility: ground-reaction-force, joint-torque and
//! mechanical-effort scores behind F_dyn.
//!
//! Torques come from a segment-level inertia model, tau = I * |acc|, rather
//! than full rigid-body inverse dynamics.

use crate::config::ScoreConfig;
use crate::error::Result;
use crate::model::{finite_difference, speeds_aligned, BodyModel, DiffOrder, MotionTrajectory};

/// Per-frame dynamic quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsTrace {
    /// T x 3 center of mass, meters.
    pub com: Vec<[f64; 3]>,
    /// T x 3, m/s^2, central second differences.
    pub com_acc: Vec<[f64; 3]>,
    /// T x 3 ground reaction force, newtons.
    pub grf: Vec<[f64; 3]>,
    /// T x J joint torques, N*m.
    pub torque: Vec<Vec<f64>>,
    /// Mechanical-work proxy, N*m.
    pub met_total: f64,
}

/// Weighted joint mean with the pelvis triple-weighted:
/// C_t = sum_j w_j x_{t,j} / sum_j w_j.
pub fn com_trajectory(traj: &MotionTrajectory, body: &BodyModel) -> Vec<[f64; 3]> {
    let total: f64 = body.com_weights.iter().sum();
    traj.frames
        .iter()
        .map(|frame| {
            let mut c = [0.0; 3];
            for (p, &w) in frame.positions.iter().zip(&body.com_weights) {
                for a in 0..3 {
                    c[a] += w * p[a];
                }
            }
            [c[0] / total, c[1] / total, c[2] / total]
        })
        .collect()
}

/// Newtonian GRF estimate from COM acceleration:
/// F_t = [m*ax, m*ay, m*(g + az)].
pub fn grf_estimate(
    com: &[[f64; 3]],
    body: &BodyModel,
    frame_rate_hz: f64,
) -> Result<Vec<[f64; 3]>> {
    let acc = finite_difference(com, frame_rate_hz, DiffOrder::Second)?;
    let m = body.mass_kg;
    let g = body.gravity;
    Ok(acc
        .iter()
        .map(|a| [m * a[0], m * a[1], m * (g + a[2])])
        .collect())
}

/// s_GRF = 1 - (v_vert + v_horiz)/2 where v_vert counts frames with
/// F_z > vert_factor * m * g and v_horiz counts frames whose horizontal
/// magnitude exceeds horiz_factor * m * g.
pub fn grf_score(grf: &[[f64; 3]], body: &BodyModel, config: &ScoreConfig) -> f64 {
    let weight = body.mass_kg * body.gravity;
    let vert_limit = config.grf_vert_factor * weight;
    let horiz_limit = config.grf_horiz_factor * weight;
    let t = grf.len() as f64;
    let v_vert = grf.iter().filter(|f| f[2] > vert_limit).count() as f64 / t;
    let v_horiz = grf
        .iter()
        .filter(|f| (f[0] * f[0] + f[1] * f[1]).sqrt() > horiz_limit)
        .count() as f64
        / t;
    1.0 - (v_vert + v_horiz) / 2.0
}

/// Segment-inertia torques tau_{t,j} = I_j * |acc_{t,j}| and the torque
/// score s_tau = 1 - mean_j(fraction of frames with tau > tau_max^(j)).
pub fn torque_score(traj: &MotionTrajectory, body: &BodyModel) -> Result<(f64, Vec<Vec<f64>>)> {
    let t_count = traj.frame_count();
    let j_count = traj.joint_count();
    let mut torque = vec![vec![0.0; j_count]; t_count];
    let mut violation_sum = 0.0;
    for j in 0..j_count {
        let series: Vec<[f64; 3]> = traj.frames.iter().map(|f| f.positions[j]).collect();
        let acc = finite_difference(&series, traj.frame_rate_hz, DiffOrder::Second)?;
        let mut over = 0usize;
        for (t, a) in acc.iter().enumerate() {
            let tau = body.inertia[j] * (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
            torque[t][j] = tau;
            if tau > body.torque_max[j] {
                over += 1;
            }
        }
        violation_sum += over as f64 / t_count as f64;
    }
    Ok((1.0 - violation_sum / j_count as f64, torque))
}

/// Mechanical-work proxy MET = sum_{t,j} tau * |v| * dt and its score
/// s_met = max(0, 1 - MET / met_norm). Joint speeds are forward differences
/// aligned to frames. Returns (s_met, MET).
pub fn met_score(
    traj: &MotionTrajectory,
    torque: &[Vec<f64>],
    config: &ScoreConfig,
) -> Result<(f64, f64)> {
    let dt = traj.dt();
    let j_count = traj.joint_count();
    let mut met = 0.0;
    for j in 0..j_count {
        let series: Vec<[f64; 3]> = traj.frames.iter().map(|f| f.positions[j]).collect();
        let speeds = speeds_aligned(&series, traj.frame_rate_hz)?;
        for (t, &speed) in speeds.iter().enumerate() {
            met += torque[t][j] * speed * dt;
        }
    }
    Ok(((1.0 - met / config.met_norm).max(0.0), met))
}

/// F_dyn = (s_tau + s_GRF + s_met) / 3.
pub fn dynamic_score(s_tau: f64, s_grf: f64, s_met: f64) -> Result<f64> {
    crate::kinematics::check_unit("s_tau", s_tau)?;
    crate::kinematics::check_unit("s_grf", s_grf)?;
    crate::kinematics::check_unit("s_met", s_met)?;
    Ok((s_tau + s_grf + s_met) / 3.0)
}

/// Runs the full dynamic pipeline for one trajectory.
pub fn dynamics_trace(
    traj: &MotionTrajectory,
    body: &BodyModel,
    config: &ScoreConfig,
) -> Result<(DynamicsTrace, f64, f64, f64)> {
    let com = com_trajectory(traj, body);
    let com_acc = finite_difference(&com, traj.frame_rate_hz, DiffOrder::Second)?;
    let grf = grf_estimate(&com, body, traj.frame_rate_hz)?;
    let s_grf = grf_score(&grf, body, config);
    let (s_tau, torque) = torque_score(traj, body)?;
    let (s_met, met_total) = met_score(traj, &torque, config)?;
    Ok((
        DynamicsTrace {
            com,
            com_acc,
            grf,
            torque,
            met_total,
        },
        s_tau,
        s_grf,
        s_met,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::Frame;

    #[test]
    fn com_of_coincident_joints_is_that_point() {
        let traj = MotionTrajectory {
            frame_rate_hz: 16.0,
            frames: vec![
                Frame {
                    positions: vec![[2.0, -1.0, 3.0]; 4],
                    rotations: vec![[1.0, 0.0, 0.0, 0.0]; 4],
                };
                3
            ],
            subject_id: String::new(),
            prompt_id: String::new(),
        };
        let body = BodyModel::from_skeleton(
            vec!["pelvis".into(), "a".into(), "b".into(), "c".into()],
            vec![-1, 0, 0, 0],
        );
        let com = com_trajectory(&traj, &body);
        assert_eq!(com, vec![[2.0, -1.0, 3.0]; 3]);
    }

    #[test]
    fn com_weighted_mean_worked_example() {
        // two joints with weights 3 and 1 at (0,0,0) and (4,0,0) -> (1,0,0)
        let traj = MotionTrajectory {
            frame_rate_hz: 16.0,
            frames: vec![
                Frame {
                    positions: vec![[0.0; 3], [4.0, 0.0, 0.0]],
                    rotations: vec![[1.0, 0.0, 0.0, 0.0]; 2],
                };
                2
            ],
            subject_id: String::new(),
            prompt_id: String::new(),
        };
        let body = BodyModel::from_skeleton(vec!["pelvis".into(), "a".into()], vec![-1, 0]);
        assert_eq!(com_trajectory(&traj, &body), vec![[1.0, 0.0, 0.0]; 2]);
    }

    #[test]
    fn com_matches_independent_weighted_sum_on_standard_pose() {
        let fixture = fixtures::standing(4, 16.0);
        let com = com_trajectory(&fixture.trajectory, &fixture.body);
        // brute-force oracle: explicit loop accumulating w*x and w separately
        for (t, frame) in fixture.trajectory.frames.iter().enumerate() {
            let mut acc = [0.0f64; 3];
            let mut wsum = 0.0;
            for (j, p) in frame.positions.iter().enumerate() {
                let w = fixture.body.com_weights[j];
                wsum += w;
                for a in 0..3 {
                    acc[a] += w * p[a];
                }
            }
            for a in 0..3 {
                assert!((com[t][a] - acc[a] / wsum).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn stationary_body_grf_is_body_weight() {
        let fixture = fixtures::standing(8, 16.0);
        let com = com_trajectory(&fixture.trajectory, &fixture.body);
        let grf = grf_estimate(&com, &fixture.body, 16.0).unwrap();
        for f in &grf {
            assert_eq!(f[0], 0.0);
            assert_eq!(f[1], 0.0);
            assert!((f[2] - 686.7).abs() < 1e-9, "got {}", f[2]);
        }
    }

    #[test]
    fn free_fall_grf_is_zero() {
        let fixture = fixtures::ballistic(9, 16.0);
        let com = com_trajectory(&fixture.trajectory, &fixture.body);
        let grf = grf_estimate(&com, &fixture.body, 16.0).unwrap();
        for f in grf.iter().take(grf.len() - 1).skip(1) {
            assert!(f[2].abs() < 1e-6, "got {}", f[2]);
        }
    }

    #[test]
    fn grf_score_thresholds() {
        let body = BodyModel::smplx_default();
        let config = ScoreConfig::default();
        let weight = 70.0 * 9.81;
        // all frames fine
        assert_eq!(grf_score(&[[0.0, 0.0, weight]; 4], &body, &config), 1.0);
        // vertical above 3mg in every frame, horizontal fine
        assert_eq!(
            grf_score(&[[0.0, 0.0, 3.0 * weight + 1.0]; 4], &body, &config),
            0.5
        );
        // both violated everywhere
        assert_eq!(
            grf_score(
                &[[0.5 * weight + 1.0, 0.0, 3.0 * weight + 1.0]; 4],
                &body,
                &config
            ),
            0.0
        );
        // exactly at the boundary is not a violation (strict inequality)
        assert_eq!(
            grf_score(&[[0.0, 0.0, 3.0 * weight]; 4], &body, &config),
            1.0
        );
    }

    #[test]
    fn static_pose_scores_are_perfect() {
        let fixture = fixtures::standing(8, 16.0);
        let config = ScoreConfig::default();
        let (trace, s_tau, s_grf, s_met) =
            dynamics_trace(&fixture.trajectory, &fixture.body, &config).unwrap();
        assert_eq!(s_tau, 1.0);
        assert_eq!(s_grf, 1.0);
        assert_eq!(s_met, 1.0);
        assert_eq!(trace.met_total, 0.0);
        assert!(trace.torque.iter().flatten().all(|&t| t == 0.0));
        assert_eq!(dynamic_score(s_tau, s_grf, s_met).unwrap(), 1.0);
    }

    #[test]
    fn torque_violation_fraction() {
        // one joint of ten above its limit in every frame -> s_tau = 0.9,
        // via a joint accelerating at 250 m/s^2 with I = 1, limit 200
        let f = 4.0;
        let t_count = 6;
        let names: Vec<String> = (0..10).map(|i| format!("j{i}")).collect();
        let mut parents = vec![0; 10];
        parents[0] = -1;
        let body = BodyModel::from_skeleton(names, parents);
        let frames: Vec<Frame> = (0..t_count)
            .map(|k| {
                let tau = k as f64 / f;
                let mut positions = vec![[0.0; 3]; 10];
                // constant acceleration 250 m/s^2 along x for joint 0 only
                positions[0] = [0.5 * 250.0 * tau * tau, 0.0, 0.0];
                Frame {
                    positions,
                    rotations: vec![[1.0, 0.0, 0.0, 0.0]; 10],
                }
            })
            .collect();
        let traj = MotionTrajectory {
            frame_rate_hz: f,
            frames,
            subject_id: String::new(),
            prompt_id: String::new(),
        };
        let (s_tau, torque) = torque_score(&traj, &body).unwrap();
        assert!(torque.iter().all(|row| (row[0] - 250.0).abs() < 1e-9));
        assert!((s_tau - 0.9).abs() < 1e-12);
    }

    #[test]
    fn met_score_anchors() {
        let config = ScoreConfig::default();
        let fixture = fixtures::standing(4, 16.0);
        let (_, torque) = torque_score(&fixture.trajectory, &fixture.body).unwrap();
        let (s_met, met) = met_score(&fixture.trajectory, &torque, &config).unwrap();
        assert_eq!(met, 0.0);
        assert_eq!(s_met, 1.0);
        // the mapping itself: 5000 -> 0.5, 10000 -> 0, beyond -> clamped 0
        assert_eq!((1.0f64 - 5000.0 / config.met_norm).max(0.0), 0.5);
        assert_eq!((1.0f64 - 10_000.0 / config.met_norm).max(0.0), 0.0);
        assert_eq!((1.0f64 - 20_000.0 / config.met_norm).max(0.0), 0.0);
    }

    #[test]
    fn dynamic_score_formula() {
        assert_eq!(dynamic_score(1.0, 1.0, 1.0).unwrap(), 1.0);
        assert_eq!(dynamic_score(0.0, 0.0, 0.0).unwrap(), 0.0);
        assert!((dynamic_score(0.9, 1.0, 0.5).unwrap() - 0.8).abs() < 1e-12);
        assert!(dynamic_score(1.2, 0.0, 0.0).is_err());
    }
}
