//! Desk-scale contrastive policy objective over plain velocity vectors.
//!
//! Implicit positive and negative policies are interpolations between the
//! old and current velocity predictions; the loss pulls the
//! reward-weighted pair toward the forward target. Operating on raw vectors
//! keeps the objective dimension-agnostic and checkable against finite
//! differences.

use crate::error::{Error, Result};

/// Inputs to one objective evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyTriple {
    pub v_theta: Vec<f64>,
    pub v_theta_old: Vec<f64>,
    pub v_target: Vec<f64>,
    /// Interpolation strength, > 0.
    pub beta: f64,
    /// Normalized reward in [0, 1].
    pub r_tilde: f64,
}

impl PolicyTriple {
    pub fn validate(&self) -> Result<()> {
        if self.v_theta.len() != self.v_theta_old.len() || self.v_theta.len() != self.v_target.len()
        {
            return Err(Error::Degenerate(format!(
                "vector lengths differ: {} / {} / {}",
                self.v_theta.len(),
                self.v_theta_old.len(),
                self.v_target.len()
            )));
        }
        if !self.beta.is_finite() || self.beta <= 0.0 {
            return Err(Error::Domain {
                name: "beta",
                value: self.beta,
            });
        }
        if !(0.0..=1.0).contains(&self.r_tilde) {
            return Err(Error::Domain {
                name: "r_tilde",
                value: self.r_tilde,
            });
        }
        Ok(())
    }
}

/// v+ = (1 - beta) v_old + beta v_theta, v- = (1 + beta) v_old - beta v_theta.
/// Their midpoint is v_old exactly.
pub fn interpolate_policies(t: &PolicyTriple) -> Result<(Vec<f64>, Vec<f64>)> {
    t.validate()?;
    let plus = t
        .v_theta_old
        .iter()
        .zip(&t.v_theta)
        .map(|(o, c)| (1.0 - t.beta) * o + t.beta * c)
        .collect();
    let minus = t
        .v_theta_old
        .iter()
        .zip(&t.v_theta)
        .map(|(o, c)| (1.0 + t.beta) * o - t.beta * c)
        .collect();
    Ok((plus, minus))
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// L = r~ |v+ - v_target|^2 + (1 - r~) |v- - v_target|^2.
pub fn policy_loss(t: &PolicyTriple) -> Result<f64> {
    let (plus, minus) = interpolate_policies(t)?;
    Ok(t.r_tilde * dist_sq(&plus, &t.v_target) + (1.0 - t.r_tilde) * dist_sq(&minus, &t.v_target))
}

/// Analytic gradient of the loss with respect to v_theta:
/// 2 beta [ r~ (v+ - v_target) - (1 - r~) (v- - v_target) ].
pub fn loss_gradient(t: &PolicyTriple) -> Result<Vec<f64>> {
    let (plus, minus) = interpolate_policies(t)?;
    Ok((0..plus.len())
        .map(|i| {
            2.0 * t.beta
                * (t.r_tilde * (plus[i] - t.v_target[i])
                    - (1.0 - t.r_tilde) * (minus[i] - t.v_target[i]))
        })
        .collect())
}
