//! Score assembly and batch reward normalization.

use crate::config::ScoreConfig;
use crate::contact;
use crate::dynamics;
use crate::error::{Error, Result};
use crate::geometry::self_penetration_rate;
use crate::kinematics;
use crate::model::{
    validate_trajectory, BodyModel, Diagnostics, MeshSequence, MotionTrajectory, ScoreReport,
};

/// Scores one trajectory end to end: validates, runs the three feasibility
/// axes, and aggregates r_motion. Per-frame traces are always collected;
/// callers that do not want them can drop `diagnostics`.
///
/// Without a mesh, v_spen is 0 and the report carries a "spen-skipped" flag.
pub fn score_trajectory(
    traj: &MotionTrajectory,
    body: &BodyModel,
    mesh: Option<&MeshSequence>,
    config: &ScoreConfig,
) -> Result<ScoreReport> {
    let report = validate_trajectory(traj, body, mesh);
    if !report.is_ok() {
        return Err(Error::Validation(report));
    }
    if traj.frame_count() < 3 {
        // second differences need three frames
        return Err(Error::TooFewFrames {
            needed: 3,
            got: traj.frame_count(),
        });
    }
    let mut flags = Vec::new();

    // kinematic axis
    let omega = kinematics::angular_velocity(traj)?;
    let (v_vel, vel_flags) = kinematics::velocity_violation(&omega, body);
    let (v_lim, lim_flags) = kinematics::joint_limit_violation(traj, body)?;
    let (v_spen, spen_per_frame, spen_skipped) = match mesh {
        Some(mesh) => {
            let spen = self_penetration_rate(mesh)?;
            (
                kinematics::spen_violation(spen.mean, config.spen_baseline, config.spen_severe),
                spen.per_frame,
                false,
            )
        }
        None => (0.0, Vec::new(), true),
    };
    if spen_skipped {
        flags.push("spen-skipped".to_string());
    }
    let f_kin = kinematics::kinematic_score(v_vel, v_spen, v_lim)?;

    // contact axis
    let timeline = contact::detect_contacts(traj, mesh, body, config)?;
    let (v_slip, _) = contact::slip_violation(&timeline, traj.dt(), config);
    let (v_gpen, _) = contact::penetration_violation(&timeline, config);
    let float = contact::float_violation(traj, &timeline, config)?;
    let (v_bal, balance_distance) = contact::balance_violation(traj, &timeline, body, config)?;
    let f_con = contact::contact_score(v_slip, v_gpen, float.v_float, v_bal)?;

    // dynamic axis
    let (trace, s_tau, s_grf, s_met) = dynamics::dynamics_trace(traj, body, config)?;
    let f_dyn = dynamics::dynamic_score(s_tau, s_grf, s_met)?;

    let r_motion = aggregate(f_kin, f_con, f_dyn, config);

    let diagnostics = Diagnostics {
        spen_per_frame,
        velocity_flag_fraction: flag_fractions(&vel_flags),
        limit_flag_fraction: flag_fractions(&lim_flags),
        contact: timeline.contact.clone(),
        foot_height: timeline.foot_height.clone(),
        foot_speed: timeline.foot_vel.clone(),
        float_flags: float.flags,
        ballistic_forced: float.ballistic_forced,
        balance_distance,
        grf: trace.grf.clone(),
        torque_flag_fraction: trace
            .torque
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, &tau)| tau > body.torque_max[*j])
                    .count() as f64
                    / row.len().max(1) as f64
            })
            .collect(),
        met_total: trace.met_total,
    };

    Ok(ScoreReport {
        v_vel,
        v_spen,
        v_lim,
        v_slip,
        v_gpen,
        v_float: float.v_float,
        v_bal,
        s_tau,
        s_grf,
        s_met,
        f_kin,
        f_con,
        f_dyn,
        r_motion,
        flags,
        diagnostics: Some(diagnostics),
    })
}

/// Weighted mean of the three axes. Equal weights reduce to
/// (f_kin + f_con + f_dyn) / 3 exactly.
pub fn aggregate(f_kin: f64, f_con: f64, f_dyn: f64, config: &ScoreConfig) -> f64 {
    let (wk, wc, wd) = (config.weight_kin, config.weight_con, config.weight_dyn);
    (wk * f_kin + wc * f_con + wd * f_dyn) / (wk + wc + wd)
}

fn flag_fractions(flags: &[Vec<bool>]) -> Vec<f64> {
    flags
        .iter()
        .map(|row| row.iter().filter(|&&b| b).count() as f64 / row.len().max(1) as f64)
        .collect()
}

/// Per-prompt advantage normalization: A_i = (r_i - mean)/max(std, floor)
/// with the population std, clipped to [-clip, clip], then mapped to
/// r~ = (A + clip) / (2 * clip) in [0, 1]. Singleton groups map to 0.5.
///
/// `prompt_ids` and `rewards` run in parallel; the output keeps input order.
pub fn normalize_rewards(prompt_ids: &[&str], rewards: &[f64], config: &ScoreConfig) -> Vec<f64> {
    assert_eq!(prompt_ids.len(), rewards.len());
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, &p) in prompt_ids.iter().enumerate() {
        groups.entry(p).or_default().push(i);
    }
    let clip = config.adv_clip;
    let mut out = vec![0.5; rewards.len()];
    for indices in groups.values() {
        if indices.len() < 2 {
            continue; // singleton groups stay at 0.5
        }
        let n = indices.len() as f64;
        let mean = indices.iter().map(|&i| rewards[i]).sum::<f64>() / n;
        let var = indices
            .iter()
            .map(|&i| (rewards[i] - mean).powi(2))
            .sum::<f64>()
            / n;
        let std = var.sqrt();
        for &i in indices {
            // a group at or below the std floor has zero advantage; dividing
            // rounding dust by the floor would pull 0.5 off center
            let advantage = if std <= config.std_floor {
                0.0
            } else {
                ((rewards[i] - mean) / std).clamp(-clip, clip)
            };
            out[i] = (advantage + clip) / (2.0 * clip);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ideal_standing_fixture_scores_exactly_one() {
        let fixture = fixtures::standing(8, 16.0);
        let config = ScoreConfig::default();
        let report = score_trajectory(
            &fixture.trajectory,
            &fixture.body,
            fixture.mesh.as_ref(),
            &config,
        )
        .unwrap();
        assert_eq!(report.v_vel, 0.0);
        assert_eq!(report.v_spen, 0.0);
        assert_eq!(report.v_lim, 0.0);
        assert_eq!(report.v_slip, 0.0);
        assert_eq!(report.v_gpen, 0.0);
        assert_eq!(report.v_float, 0.0);
        assert_eq!(report.v_bal, 0.0);
        assert_eq!(report.s_tau, 1.0);
        assert_eq!(report.s_grf, 1.0);
        assert_eq!(report.s_met, 1.0);
        assert_eq!(report.f_kin, 1.0);
        assert_eq!(report.f_con, 1.0);
        assert_eq!(report.f_dyn, 1.0);
        assert_eq!(report.r_motion, 1.0);
        assert!(report.flags.is_empty());
    }

    #[test]
    fn skeleton_only_pipeline_sets_spen_skipped() {
        let fixture = fixtures::standing(4, 16.0);
        let config = ScoreConfig::default();
        let report = score_trajectory(&fixture.trajectory, &fixture.body, None, &config).unwrap();
        assert_eq!(report.v_spen, 0.0);
        assert!(report.flags.iter().any(|f| f == "spen-skipped"));
        assert_eq!(report.r_motion, 1.0);
    }

    #[test]
    fn saturated_violations_compose_to_zero_reward() {
        let config = ScoreConfig::default();
        let f_kin = crate::kinematics::kinematic_score(1.0, 1.0, 1.0).unwrap();
        let f_con = crate::contact::contact_score(1.0, 1.0, 1.0, 1.0).unwrap();
        let f_dyn = crate::dynamics::dynamic_score(0.0, 0.0, 0.0).unwrap();
        assert_eq!(aggregate(f_kin, f_con, f_dyn, &config), 0.0);
    }

    #[test]
    fn wildly_violating_fixture_scores_near_zero() {
        // alternating 2.8 rad snaps and 3 m teleports, hovering feet, and an
        // interpenetrating mesh: every reachable violation term saturates
        let t_count = 16;
        let f = 16.0;
        let base = fixtures::standing_positions();
        let half = 1.4f64;
        let snap = [half.cos(), half.sin(), 0.0, 0.0];
        let frames: Vec<crate::model::Frame> = (0..t_count)
            .map(|k| {
                let flip = if k % 2 == 0 { 3.0 } else { -3.0 };
                crate::model::Frame {
                    positions: base
                        .iter()
                        .map(|p| [p[0] + flip, p[1] + flip, p[2] + flip])
                        .collect(),
                    rotations: if k % 2 == 0 {
                        vec![[1.0, 0.0, 0.0, 0.0]; 55]
                    } else {
                        vec![snap; 55]
                    },
                }
            })
            .collect();
        let traj = crate::model::MotionTrajectory {
            frame_rate_hz: f,
            frames,
            subject_id: "wild".into(),
            prompt_id: "wild".into(),
        };
        let tet = |offset: f64| -> Vec<[f64; 3]> {
            vec![
                [offset, offset, offset],
                [offset + 1.0, offset, offset],
                [offset, offset + 1.0, offset],
                [offset, offset, offset + 1.0],
            ]
        };
        let mut vertices = tet(0.0);
        vertices.extend(tet(0.2));
        let mesh = MeshSequence {
            faces: vec![
                [0, 1, 2],
                [0, 1, 3],
                [0, 2, 3],
                [1, 2, 3],
                [4, 5, 6],
                [4, 5, 7],
                [4, 6, 7],
                [5, 6, 7],
            ],
            vertex_frames: vec![vertices; t_count],
        };
        let body = crate::model::BodyModel::smplx_default();
        let config = ScoreConfig::default();
        let report = score_trajectory(&traj, &body, Some(&mesh), &config).unwrap();
        assert_eq!(report.v_vel, 1.0);
        assert_eq!(report.v_spen, 1.0);
        assert!(report.v_lim > 0.1, "v_lim = {}", report.v_lim);
        assert_eq!(report.v_gpen, 1.0);
        assert_eq!(report.v_float, 1.0);
        assert_eq!(report.v_bal, 1.0);
        assert_eq!(report.s_tau, 0.0);
        assert_eq!(report.s_met, 0.0);
        assert!(report.r_motion < 0.3, "r_motion = {}", report.r_motion);
    }

    #[test]
    fn aggregate_arithmetic() {
        let config = ScoreConfig::default();
        assert!((aggregate(0.9, 0.6, 0.9, &config) - 0.8).abs() < 1e-12);
        // ablation weights: only the contact axis
        let mut only_con = config.clone();
        only_con.weight_kin = 0.0;
        only_con.weight_dyn = 0.0;
        assert_eq!(aggregate(0.9, 0.6, 0.9, &only_con), 0.6);
    }

    #[test]
    fn normalize_all_equal_rewards() {
        let config = ScoreConfig::default();
        let prompts = ["a", "a", "a"];
        let out = normalize_rewards(&prompts, &[0.7, 0.7, 0.7], &config);
        assert_eq!(out, vec![0.5, 0.5, 0.5]);
    }

    #[test]
    fn normalize_two_sample_group() {
        // {0, 1}: population std 0.5 -> advantages {-1, +1} -> {0.4, 0.6}
        let config = ScoreConfig::default();
        let out = normalize_rewards(&["p", "p"], &[0.0, 1.0], &config);
        assert!((out[0] - 0.4).abs() < 1e-12);
        assert!((out[1] - 0.6).abs() < 1e-12);
    }

    #[test]
    fn normalize_clips_extreme_advantages() {
        let config = ScoreConfig::default();
        // one far outlier in a large tight group pushes |A| past 5
        let mut rewards = vec![0.0; 60];
        rewards[0] = 1.0;
        let prompts: Vec<&str> = vec!["p"; 60];
        let out = normalize_rewards(&prompts, &rewards, &config);
        assert_eq!(out[0], 1.0);
        assert!(out[1] > 0.0 && out[1] < 0.5);
    }

    #[test]
    fn normalize_singleton_and_group_separation() {
        let config = ScoreConfig::default();
        let prompts = ["solo", "g", "g"];
        let out = normalize_rewards(&prompts, &[0.9, 0.2, 0.4], &config);
        assert_eq!(out[0], 0.5);
        assert!(out[1] < out[2]);
    }

    #[test]
    fn normalize_is_shift_and_scale_invariant() {
        let config = ScoreConfig::default();
        let prompts = ["p", "p", "p", "p"];
        let base = [0.1, 0.4, 0.2, 0.9];
        let shifted: Vec<f64> = base.iter().map(|r| r + 10.0).collect();
        let scaled: Vec<f64> = base.iter().map(|r| r * 3.0).collect();
        let a = normalize_rewards(&prompts, &base, &config);
        let b = normalize_rewards(&prompts, &shifted, &config);
        let c = normalize_rewards(&prompts, &scaled, &config);
        for i in 0..4 {
            assert!((a[i] - b[i]).abs() < 1e-9);
            assert!((a[i] - c[i]).abs() < 1e-9);
        }
    }
}
