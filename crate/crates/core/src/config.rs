//! Threshold configuration.
//!
//! Every threshold used by the scoring modules lives here, loadable from a
//! flat key-value text file with TOML-style `[section]` headers. Dotted keys
//! and section headers are equivalent: `contact.height_max = 0.02` and
//! `height_max = 0.02` under `[contact]` set the same value. Joint-limit
//! overrides take a `min max` pair.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreConfig {
    /// Feet closer to the ground than this may be in contact, meters.
    pub contact_height_max: f64,
    /// Feet slower than this may be in contact, m/s.
    pub contact_vel_max: f64,
    /// Foot/root speed ratio band considered plausible.
    pub float_rho_min: f64,
    pub float_rho_max: f64,
    /// Denominator regularizer in the float ratio, m/s.
    pub float_eps: f64,
    /// Root speeds below this exempt a frame from the ratio flag, m/s.
    pub float_root_vel_min: f64,
    /// Balance distances are clipped here before normalization, meters.
    pub balance_clip: f64,
    /// Mean per-foot-frame slip that saturates v_slip, meters.
    pub slip_norm: f64,
    /// Mean per-foot-frame penetration that saturates v_gpen, meters.
    pub gpen_norm: f64,
    /// Airborne runs longer than this many frames get the ballistic test.
    pub ballistic_min_frames: usize,
    /// RMS parabola residual above which an airborne run is implausible, meters.
    pub ballistic_rms_max: f64,
    /// Self-penetration percentage treated as a clean-mesh baseline.
    pub spen_baseline: f64,
    /// Self-penetration percentage treated as severe (saturates v_spen).
    pub spen_severe: f64,
    pub mass_kg: f64,
    pub gravity: f64,
    /// Per-joint inertia used by the segment torque model, kg*m^2.
    pub inertia: f64,
    pub torque_max_ankle: f64,
    pub torque_max_knee: f64,
    pub torque_max_hip: f64,
    pub torque_max_spine: f64,
    pub torque_max_default: f64,
    /// Mechanical-work proxy that zeroes s_met, N*m.
    pub met_norm: f64,
    /// Vertical GRF limit as a multiple of body weight.
    pub grf_vert_factor: f64,
    /// Horizontal GRF limit as a multiple of body weight.
    pub grf_horiz_factor: f64,
    /// Per-axis reward weights; equal by default.
    pub weight_kin: f64,
    pub weight_con: f64,
    pub weight_dyn: f64,
    /// Default angular-velocity limits by joint class, rad/s.
    pub omega_max_limb: f64,
    pub omega_max_axial: f64,
    /// Per-joint overrides: `omega_max.<joint>`.
    pub omega_overrides: BTreeMap<String, f64>,
    /// Per-DoF overrides: `joint_limits.<joint>.<axis>` with axis x|y|z.
    pub limit_overrides: BTreeMap<String, [f64; 2]>,
    /// Advantage clip used by reward normalization.
    pub adv_clip: f64,
    /// Standard-deviation floor used by reward normalization.
    pub std_floor: f64,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            contact_height_max: 0.02,
            contact_vel_max: 0.05,
            float_rho_min: 0.6,
            float_rho_max: 1.75,
            float_eps: 1e-3,
            float_root_vel_min: 0.01,
            balance_clip: 0.5,
            slip_norm: 0.0025,
            gpen_norm: 0.05,
            ballistic_min_frames: 3,
            ballistic_rms_max: 0.05,
            spen_baseline: 2.0,
            spen_severe: 20.0,
            mass_kg: 70.0,
            gravity: 9.81,
            inertia: 1.0,
            torque_max_ankle: 200.0,
            torque_max_knee: 300.0,
            torque_max_hip: 400.0,
            torque_max_spine: 200.0,
            torque_max_default: 200.0,
            met_norm: 10_000.0,
            grf_vert_factor: 3.0,
            grf_horiz_factor: 0.5,
            weight_kin: 1.0,
            weight_con: 1.0,
            weight_dyn: 1.0,
            omega_max_limb: 2.0 * PI,
            omega_max_axial: PI,
            omega_overrides: BTreeMap::new(),
            limit_overrides: BTreeMap::new(),
            adv_clip: 5.0,
            std_floor: 1e-8,
        }
    }
}

impl ScoreConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut config = ScoreConfig::default();
        config.apply_text(&text)?;
        Ok(config)
    }

    /// Applies `key = value` lines, honoring `[section]` headers.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut section = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let full_key = if section.is_empty() {
                key.trim().to_string()
            } else {
                format!("{}.{}", section, key.trim())
            };
            self.set(&full_key, value.trim())?;
        }
        Ok(())
    }

    /// Sets one dotted key. Used by file loading and by CLI `--set` flags.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad_num = |k: &str, v: &str| Error::Config(format!("key `{k}`: bad number `{v}`"));
        let parse =
            |v: &str, k: &str| -> Result<f64> { v.parse::<f64>().map_err(|_| bad_num(k, v)) };
        if let Some(joint) = key.strip_prefix("omega_max.") {
            self.omega_overrides
                .insert(joint.to_string(), parse(value, key)?);
            return Ok(());
        }
        if let Some(rest) = key.strip_prefix("joint_limits.") {
            let pair: Vec<&str> = value
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if pair.len() != 2 {
                return Err(Error::Config(format!(
                    "key `{key}`: expected `min max` pair"
                )));
            }
            let lo = parse(pair[0], key)?;
            let hi = parse(pair[1], key)?;
            if lo > hi {
                return Err(Error::Config(format!("key `{key}`: min {lo} > max {hi}")));
            }
            self.limit_overrides.insert(rest.to_string(), [lo, hi]);
            return Ok(());
        }
        match key {
            "contact.height_max" => self.contact_height_max = parse(value, key)?,
            "contact.vel_max" => self.contact_vel_max = parse(value, key)?,
            "float.rho_min" => self.float_rho_min = parse(value, key)?,
            "float.rho_max" => self.float_rho_max = parse(value, key)?,
            "float.eps" => self.float_eps = parse(value, key)?,
            "float.root_vel_min" => self.float_root_vel_min = parse(value, key)?,
            "balance.clip" => self.balance_clip = parse(value, key)?,
            "slip_norm" | "contact.slip_norm" => self.slip_norm = parse(value, key)?,
            "gpen_norm" | "contact.gpen_norm" => self.gpen_norm = parse(value, key)?,
            "ballistic.min_frames" => {
                self.ballistic_min_frames =
                    value.parse::<usize>().map_err(|_| bad_num(key, value))?
            }
            "ballistic.rms_max" => self.ballistic_rms_max = parse(value, key)?,
            "spen.baseline" | "kinematics.spen_baseline" => self.spen_baseline = parse(value, key)?,
            "spen.severe" | "kinematics.spen_severe" => self.spen_severe = parse(value, key)?,
            "dynamics.mass_kg" => self.mass_kg = parse(value, key)?,
            "dynamics.gravity" => self.gravity = parse(value, key)?,
            "dynamics.inertia" => self.inertia = parse(value, key)?,
            "dynamics.torque_max.ankle" => self.torque_max_ankle = parse(value, key)?,
            "dynamics.torque_max.knee" => self.torque_max_knee = parse(value, key)?,
            "dynamics.torque_max.hip" => self.torque_max_hip = parse(value, key)?,
            "dynamics.torque_max.spine" => self.torque_max_spine = parse(value, key)?,
            "dynamics.torque_max.default" => self.torque_max_default = parse(value, key)?,
            "dynamics.met_norm" => self.met_norm = parse(value, key)?,
            "dynamics.grf_vert_factor" => self.grf_vert_factor = parse(value, key)?,
            "dynamics.grf_horiz_factor" => self.grf_horiz_factor = parse(value, key)?,
            "reward.weight_kin" => self.weight_kin = parse(value, key)?,
            "reward.weight_con" => self.weight_con = parse(value, key)?,
            "reward.weight_dyn" => self.weight_dyn = parse(value, key)?,
            "kinematics.omega_max_limb" => self.omega_max_limb = parse(value, key)?,
            "kinematics.omega_max_axial" => self.omega_max_axial = parse(value, key)?,
            "normalize.adv_clip" => self.adv_clip = parse(value, key)?,
            "normalize.std_floor" => self.std_floor = parse(value, key)?,
            _ => return Err(Error::Config(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Pushes the config's physical constants and overrides into a body model.
    pub fn apply_to_body(&self, body: &mut crate::model::BodyModel) {
        body.mass_kg = self.mass_kg;
        body.gravity = self.gravity;
        for i in 0..body.inertia.len() {
            body.inertia[i] = self.inertia;
        }
        for (i, name) in body.joint_names.iter().enumerate() {
            let group = crate::model::joint_group_of(name);
            body.torque_max[i] = match group {
                JointClass::Ankle => self.torque_max_ankle,
                JointClass::Knee => self.torque_max_knee,
                JointClass::Hip => self.torque_max_hip,
                JointClass::Spine => self.torque_max_spine,
                JointClass::Other => self.torque_max_default,
            };
            body.omega_max[i] = if crate::model::is_axial_joint(name) {
                self.omega_max_axial
            } else {
                self.omega_max_limb
            };
            if let Some(&omega) = self.omega_overrides.get(name) {
                body.omega_max[i] = omega;
            }
            for (axis_idx, axis) in ["x", "y", "z"].iter().enumerate() {
                if let Some(&range) = self.limit_overrides.get(&format!("{name}.{axis}")) {
                    body.joint_limits[i][axis_idx] = range;
                }
            }
        }
    }
}

/// Torque-limit classes the config exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointClass {
    Ankle,
    Knee,
    Hip,
    Spine,
    Other,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_documented_thresholds() {
        let c = ScoreConfig::default();
        assert_eq!(c.contact_height_max, 0.02);
        assert_eq!(c.contact_vel_max, 0.05);
        assert_eq!(c.float_rho_min, 0.6);
        assert_eq!(c.float_rho_max, 1.75);
        assert_eq!(c.balance_clip, 0.5);
        assert_eq!(c.slip_norm, 0.0025);
        assert_eq!(c.gpen_norm, 0.05);
        assert_eq!(c.ballistic_min_frames, 3);
        assert_eq!(c.ballistic_rms_max, 0.05);
        assert_eq!(c.mass_kg, 70.0);
        assert_eq!(c.gravity, 9.81);
        assert_eq!(c.inertia, 1.0);
        assert_eq!(c.met_norm, 10_000.0);
    }

    #[test]
    fn sections_and_dotted_keys_are_equivalent() {
        let mut a = ScoreConfig::default();
        a.apply_text("[contact]\nheight_max = 0.03\nvel_max = 0.1\n")
            .unwrap();
        let mut b = ScoreConfig::default();
        b.apply_text("contact.height_max = 0.03\ncontact.vel_max = 0.1\n")
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.contact_height_max, 0.03);
    }

    #[test]
    fn joint_limit_pair_and_omega_override() {
        let mut c = ScoreConfig::default();
        c.apply_text("joint_limits.left_knee.x = -0.1 2.4\nomega_max.left_knee = 9.0\n")
            .unwrap();
        assert_eq!(c.limit_overrides["left_knee.x"], [-0.1, 2.4]);
        assert_eq!(c.omega_overrides["left_knee"], 9.0);
        let mut body = crate::model::BodyModel::smplx_default();
        c.apply_to_body(&mut body);
        let idx = body
            .joint_names
            .iter()
            .position(|n| n == "left_knee")
            .unwrap();
        assert_eq!(body.joint_limits[idx][0], [-0.1, 2.4]);
        assert_eq!(body.omega_max[idx], 9.0);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut c = ScoreConfig::default();
        assert!(matches!(c.set("no_such_key", "1"), Err(Error::Config(_))));
        assert!(matches!(
            c.set("contact.height_max", "abc"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let mut c = ScoreConfig::default();
        c.apply_text("# top comment\n\n[dynamics]\nmass_kg = 80 # heavier\n")
            .unwrap();
        assert_eq!(c.mass_kg, 80.0);
    }
}
