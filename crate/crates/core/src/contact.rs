//! Contact feasibility: foot-ground contact detection and the slip,
//! penetration, float and balance violations behind F_con.

use crate::config::ScoreConfig;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_2d, point_polygon_distance};
use crate::model::{speeds_aligned, BodyModel, MeshSequence, MotionTrajectory};

pub const LEFT: usize = 0;
pub const RIGHT: usize = 1;

/// Per-frame, per-foot contact state with the derived foot geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactTimeline {
    /// T x [left, right].
    pub contact: Vec<[bool; 2]>,
    /// Lowest sole z per foot, meters.
    pub foot_height: Vec<[f64; 2]>,
    /// Mean sole position per foot.
    pub foot_pos: Vec<[[f64; 3]; 2]>,
    /// Sole speed per foot, m/s, aligned to frames.
    pub foot_vel: Vec<[f64; 2]>,
}

impl ContactTimeline {
    pub fn any_contact(&self, t: usize) -> bool {
        self.contact[t][LEFT] || self.contact[t][RIGHT]
    }
}

fn sole_points<'a>(
    traj: &'a MotionTrajectory,
    mesh: Option<&'a MeshSequence>,
    body: &'a BodyModel,
) -> Result<impl Fn(usize, usize) -> Vec<[f64; 3]> + 'a> {
    let use_mesh = mesh.is_some()
        && !body.left_foot_vertices.is_empty()
        && !body.right_foot_vertices.is_empty();
    if !use_mesh {
        let ok = body.left_ankle.is_some()
            && body.right_ankle.is_some()
            && body.left_toe.is_some()
            && body.right_toe.is_some();
        if !ok {
            return Err(Error::MissingFootGeometry);
        }
    }
    Ok(move |t: usize, foot: usize| -> Vec<[f64; 3]> {
        if use_mesh {
            let verts = &mesh.unwrap().vertex_frames[t];
            let set = if foot == LEFT {
                &body.left_foot_vertices
            } else {
                &body.right_foot_vertices
            };
            set.iter().map(|&v| verts[v]).collect()
        } else {
            let (ankle, toe) = if foot == LEFT {
                (body.left_ankle.unwrap(), body.left_toe.unwrap())
            } else {
                (body.right_ankle.unwrap(), body.right_toe.unwrap())
            };
            vec![
                traj.frames[t].positions[ankle],
                traj.frames[t].positions[toe],
            ]
        }
    })
}

/// Derives foot heights, sole positions and speeds, then flags contact on
/// frames where a foot is both low (h < height_max) and slow (v < vel_max).
///
/// Sole geometry comes from the mesh foot-vertex sets when available, and
/// falls back to the ankle and toe joints otherwise.
pub fn detect_contacts(
    traj: &MotionTrajectory,
    mesh: Option<&MeshSequence>,
    body: &BodyModel,
    config: &ScoreConfig,
) -> Result<ContactTimeline> {
    let t_count = traj.frame_count();
    if t_count < 2 {
        return Err(Error::TooFewFrames {
            needed: 2,
            got: t_count,
        });
    }
    let points = sole_points(traj, mesh, body)?;
    let mut foot_height = Vec::with_capacity(t_count);
    let mut foot_pos = Vec::with_capacity(t_count);
    for t in 0..t_count {
        let mut heights = [0.0; 2];
        let mut positions = [[0.0; 3]; 2];
        for foot in [LEFT, RIGHT] {
            let pts = points(t, foot);
            heights[foot] = pts.iter().map(|p| p[2]).fold(f64::INFINITY, f64::min);
            let n = pts.len() as f64;
            let mut mean = [0.0; 3];
            for p in &pts {
                for a in 0..3 {
                    mean[a] += p[a] / n;
                }
            }
            positions[foot] = mean;
        }
        foot_height.push(heights);
        foot_pos.push(positions);
    }
    let mut foot_vel = vec![[0.0; 2]; t_count];
    for foot in [LEFT, RIGHT] {
        let series: Vec<[f64; 3]> = foot_pos.iter().map(|p| p[foot]).collect();
        let speeds = speeds_aligned(&series, traj.frame_rate_hz)?;
        for t in 0..t_count {
            foot_vel[t][foot] = speeds[t];
        }
    }
    let contact = (0..t_count)
        .map(|t| {
            [LEFT, RIGHT].map(|foot| {
                foot_height[t][foot] < config.contact_height_max
                    && foot_vel[t][foot] < config.contact_vel_max
            })
        })
        .collect();
    Ok(ContactTimeline {
        contact,
        foot_height,
        foot_pos,
        foot_vel,
    })
}

/// Foot sliding: mean contacted displacement per foot-frame, normalized by
/// `slip_norm`. Returns (v_slip, raw meters).
pub fn slip_violation(timeline: &ContactTimeline, dt: f64, config: &ScoreConfig) -> (f64, f64) {
    let t_count = timeline.contact.len();
    let mut total = 0.0;
    for t in 0..t_count {
        for foot in [LEFT, RIGHT] {
            if timeline.contact[t][foot] {
                total += timeline.foot_vel[t][foot] * dt;
            }
        }
    }
    let raw = total / (2.0 * t_count as f64);
    ((raw / config.slip_norm).clamp(0.0, 1.0), raw)
}

/// Ground penetration: mean max(0, -h) per foot-frame, normalized by
/// `gpen_norm`. Returns (v_gpen, raw meters).
pub fn penetration_violation(timeline: &ContactTimeline, config: &ScoreConfig) -> (f64, f64) {
    let t_count = timeline.foot_height.len();
    let mut total = 0.0;
    for heights in &timeline.foot_height {
        for foot in [LEFT, RIGHT] {
            total += (-heights[foot]).max(0.0);
        }
    }
    let raw = total / (2.0 * t_count as f64);
    ((raw / config.gpen_norm).clamp(0.0, 1.0), raw)
}

/// Float violation with its per-frame evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatReport {
    pub v_float: f64,
    /// T x [left, right] flags after the ballistic pass.
    pub flags: Vec<[bool; 2]>,
    /// Frames inside an airborne run that failed the ballistic fit.
    pub ballistic_forced: Vec<bool>,
    /// (start, length, rms residual) of each tested airborne run.
    pub airborne_runs: Vec<(usize, usize, f64)>,
}

/// Flags feet whose motion relative to the root is implausibly slow or fast
/// (rho outside [rho_min, rho_max]), with frames of a near-stationary root
/// exempt. Airborne runs longer than `ballistic_min_frames` must follow a
/// gravity-consistent parabola; failing runs force their frames' flags.
pub fn float_violation(
    traj: &MotionTrajectory,
    timeline: &ContactTimeline,
    config: &ScoreConfig,
) -> Result<FloatReport> {
    let t_count = traj.frame_count();
    let f = traj.frame_rate_hz;
    let root: Vec<[f64; 3]> = traj.frames.iter().map(|fr| fr.positions[0]).collect();
    let root_speed = speeds_aligned(&root, f)?;

    let mut flags = vec![[false; 2]; t_count];
    for foot in [LEFT, RIGHT] {
        let rel: Vec<[f64; 3]> = (0..t_count)
            .map(|t| {
                let p = timeline.foot_pos[t][foot];
                [p[0] - root[t][0], p[1] - root[t][1], p[2] - root[t][2]]
            })
            .collect();
        let rel_speed = speeds_aligned(&rel, f)?;
        for t in 0..t_count {
            if root_speed[t] < config.float_root_vel_min {
                continue; // ratio is meaningless for a stationary root
            }
            let rho = rel_speed[t] / (root_speed[t] + config.float_eps);
            if rho < config.float_rho_min || rho > config.float_rho_max {
                flags[t][foot] = true;
            }
        }
    }

    // Sequence-level pass: sustained airborne intervals must look ballistic.
    let mut ballistic_forced = vec![false; t_count];
    let mut airborne_runs = Vec::new();
    let mut t = 0;
    while t < t_count {
        if timeline.any_contact(t) {
            t += 1;
            continue;
        }
        let start = t;
        while t < t_count && !timeline.any_contact(t) {
            t += 1;
        }
        let len = t - start;
        if len > config.ballistic_min_frames {
            let z: Vec<f64> = (start..t).map(|i| root[i][2]).collect();
            let rms = parabola_residual_rms(&z, f, config.gravity);
            airborne_runs.push((start, len, rms));
            if rms > config.ballistic_rms_max {
                for i in start..t {
                    flags[i] = [true, true];
                    ballistic_forced[i] = true;
                }
            }
        }
    }

    let set: usize = flags.iter().map(|f| f.iter().filter(|&&b| b).count()).sum();
    let v_float = set as f64 / (2.0 * t_count as f64);
    Ok(FloatReport {
        v_float,
        flags,
        ballistic_forced,
        airborne_runs,
    })
}

/// RMS residual of the least-squares fit z(tau) = a + b*tau - g/2*tau^2
/// with the curvature held fixed at -g/2.
fn parabola_residual_rms(z: &[f64], frame_rate_hz: f64, gravity: f64) -> f64 {
    let n = z.len();
    let nf = n as f64;
    // subtract the fixed quadratic term, then fit a line
    let y: Vec<(f64, f64)> = z
        .iter()
        .enumerate()
        .map(|(i, &zi)| {
            let tau = i as f64 / frame_rate_hz;
            (tau, zi + 0.5 * gravity * tau * tau)
        })
        .collect();
    let sum_t: f64 = y.iter().map(|(t, _)| t).sum();
    let sum_y: f64 = y.iter().map(|(_, v)| v).sum();
    let sum_tt: f64 = y.iter().map(|(t, _)| t * t).sum();
    let sum_ty: f64 = y.iter().map(|(t, v)| t * v).sum();
    let denom = nf * sum_tt - sum_t * sum_t;
    let (a, b) = if denom.abs() < 1e-12 {
        (sum_y / nf, 0.0)
    } else {
        let b = (nf * sum_ty - sum_t * sum_y) / denom;
        ((sum_y - b * sum_t) / nf, b)
    };
    let ss: f64 = y.iter().map(|(t, v)| (v - a - b * t).powi(2)).sum();
    (ss / nf).sqrt()
}

/// Balance: distance from the projected center of mass to the support
/// polygon of contacting ankles, clipped and normalized.
/// Returns (v_bal, per-frame distances).
pub fn balance_violation(
    traj: &MotionTrajectory,
    timeline: &ContactTimeline,
    body: &BodyModel,
    config: &ScoreConfig,
) -> Result<(f64, Vec<f64>)> {
    let com = crate::dynamics::com_trajectory(traj, body);
    let ankles = match (body.left_ankle, body.right_ankle) {
        (Some(l), Some(r)) => (l, r),
        _ => return Err(Error::MissingFootGeometry),
    };
    let mut distances = Vec::with_capacity(traj.frame_count());
    for t in 0..traj.frame_count() {
        let d = if !timeline.any_contact(t) {
            1.0
        } else {
            let mut pts: Vec<[f64; 2]> = Vec::with_capacity(2);
            if timeline.contact[t][LEFT] {
                let p = traj.frames[t].positions[ankles.0];
                pts.push([p[0], p[1]]);
            }
            if timeline.contact[t][RIGHT] {
                let p = traj.frames[t].positions[ankles.1];
                pts.push([p[0], p[1]]);
            }
            let polygon = convex_hull_2d(&pts);
            point_polygon_distance(&[com[t][0], com[t][1]], &polygon)
        };
        distances.push(d);
    }
    let clip = config.balance_clip;
    let v_bal = distances
        .iter()
        .map(|&d| d.clamp(0.0, clip) / clip)
        .sum::<f64>()
        / distances.len() as f64;
    Ok((v_bal, distances))
}

/// F_con = 1 - (v_slip + v_gpen + v_float + v_bal) / 4.
pub fn contact_score(v_slip: f64, v_gpen: f64, v_float: f64, v_bal: f64) -> Result<f64> {
    crate::kinematics::check_unit("v_slip", v_slip)?;
    crate::kinematics::check_unit("v_gpen", v_gpen)?;
    crate::kinematics::check_unit("v_float", v_float)?;
    crate::kinematics::check_unit("v_bal", v_bal)?;
    Ok(1.0 - (v_slip + v_gpen + v_float + v_bal) / 4.0)
}
