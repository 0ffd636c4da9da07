//! Kinematic feasibility: angular-velocity, self-penetration and joint-limit
//! violations, combined into F_kin.

use crate::error::{Error, Result};
use crate::model::{BodyModel, MotionTrajectory};

/// Violation terms and per-joint flags behind F_kin.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicReport {
    pub v_vel: f64,
    pub v_spen: f64,
    pub v_lim: f64,
    /// (T-1) x J: joint angular velocity over its limit.
    pub velocity_flags: Vec<Vec<bool>>,
    /// T x 3J: Euler angle outside its per-axis range.
    pub limit_flags: Vec<Vec<bool>>,
    /// Set when no mesh was provided and v_spen defaulted to 0.
    pub spen_skipped: bool,
    pub spen_per_frame: Vec<f64>,
}

/// Geodesic angular speed between consecutive local rotations, rad/s:
/// `omega[t][j] = f * 2*acos(min(1, |<q_{t+1,j}, q_{t,j}>|))`. The absolute
/// value handles the quaternion double cover.
pub fn angular_velocity(traj: &MotionTrajectory) -> Result<Vec<Vec<f64>>> {
    let t = traj.frame_count();
    if t < 2 {
        return Err(Error::TooFewFrames { needed: 2, got: t });
    }
    let f = traj.frame_rate_hz;
    let j = traj.joint_count();
    let mut out = Vec::with_capacity(t - 1);
    for w in traj.frames.windows(2) {
        let mut row = Vec::with_capacity(j);
        for ji in 0..j {
            let a = &w[0].rotations[ji];
            let b = &w[1].rotations[ji];
            let dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]).abs();
            row.push(f * 2.0 * dot.min(1.0).acos());
        }
        out.push(row);
    }
    Ok(out)
}

/// Fraction of joint-frame pairs whose angular velocity exceeds the
/// per-joint limit.
pub fn velocity_violation(omega: &[Vec<f64>], body: &BodyModel) -> (f64, Vec<Vec<bool>>) {
    let flags: Vec<Vec<bool>> = omega
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &w)| w > body.omega_max[j])
                .collect()
        })
        .collect();
    (flag_mean(&flags), flags)
}

/// Intrinsic XYZ Euler angles of a w-x-y-z unit quaternion.
pub fn euler_xyz(q: &[f64; 4]) -> [f64; 3] {
    let (w, x, y, z) = (q[0], q[1], q[2], q[3]);
    let r00 = 1.0 - 2.0 * (y * y + z * z);
    let r01 = 2.0 * (x * y - w * z);
    let r02 = 2.0 * (x * z + w * y);
    let r11 = 1.0 - 2.0 * (x * x + z * z);
    let r12 = 2.0 * (y * z - w * x);
    let r21 = 2.0 * (y * z + w * x);
    let r22 = 1.0 - 2.0 * (x * x + y * y);
    let sy = r02.clamp(-1.0, 1.0);
    if sy.abs() < 1.0 - 1e-9 {
        [(-r12).atan2(r22), sy.asin(), (-r01).atan2(r00)]
    } else {
        // gimbal lock: fold the z rotation into x
        [r21.atan2(r11), sy.asin(), 0.0]
    }
}

/// Fraction of (frame, DoF) entries whose Euler angle falls outside its
/// range. The interval is closed: angles exactly at a bound do not violate.
pub fn joint_limit_violation(
    traj: &MotionTrajectory,
    body: &BodyModel,
) -> Result<(f64, Vec<Vec<bool>>)> {
    let j = traj.joint_count();
    if body.joint_limits.len() != j {
        let name = body
            .joint_names
            .get(body.joint_limits.len())
            .cloned()
            .unwrap_or_else(|| format!("#{}", body.joint_limits.len()));
        return Err(Error::MissingJointLimits(name));
    }
    let mut flags = Vec::with_capacity(traj.frame_count());
    for frame in &traj.frames {
        let mut row = Vec::with_capacity(3 * j);
        for ji in 0..j {
            let angles = euler_xyz(&frame.rotations[ji]);
            for (axis, &angle) in angles.iter().enumerate() {
                let [lo, hi] = body.joint_limits[ji][axis];
                row.push(angle < lo || angle > hi);
            }
        }
        flags.push(row);
    }
    Ok((flag_mean(&flags), flags))
}

/// F_kin = 1 - (v_vel + v_spen + v_lim) / 3.
pub fn kinematic_score(v_vel: f64, v_spen: f64, v_lim: f64) -> Result<f64> {
    check_unit("v_vel", v_vel)?;
    check_unit("v_spen", v_spen)?;
    check_unit("v_lim", v_lim)?;
    Ok(1.0 - (v_vel + v_spen + v_lim) / 3.0)
}

/// Normalizes a mean self-penetration percentage into v_spen:
/// clip((spen - baseline) / (severe - baseline), 0, 1).
pub fn spen_violation(spen_mean: f64, baseline: f64, severe: f64) -> f64 {
    ((spen_mean - baseline) / (severe - baseline)).clamp(0.0, 1.0)
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Domain { name, value });
    }
    Ok(())
}

fn flag_mean(flags: &[Vec<bool>]) -> f64 {
    let total: usize = flags.iter().map(|r| r.len()).sum();
    if total == 0 {
        return 0.0;
    }
    let set: usize = flags.iter().map(|r| r.iter().filter(|&&b| b).count()).sum();
    set as f64 / total as f64
}
