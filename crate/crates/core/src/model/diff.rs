//! Finite-difference stencils over fixed-rate series.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    /// Forward differences scaled by f; output has T-1 rows.
    First,
    /// Central second differences scaled by f^2; output has T rows, with
    /// one-sided stencils at both boundary frames so traces stay aligned
    /// with input frames.
    Second,
}

/// Differentiates a T x D series sampled at `frame_rate_hz`.
pub fn finite_difference<const D: usize>(
    series: &[[f64; D]],
    frame_rate_hz: f64,
    order: DiffOrder,
) -> Result<Vec<[f64; D]>> {
    let t = series.len();
    match order {
        DiffOrder::First => {
            if t < 2 {
                return Err(Error::TooFewFrames { needed: 2, got: t });
            }
            let mut out = Vec::with_capacity(t - 1);
            for w in series.windows(2) {
                let mut row = [0.0; D];
                for d in 0..D {
                    row[d] = (w[1][d] - w[0][d]) * frame_rate_hz;
                }
                out.push(row);
            }
            Ok(out)
        }
        DiffOrder::Second => {
            if t < 3 {
                return Err(Error::TooFewFrames { needed: 3, got: t });
            }
            let f2 = frame_rate_hz * frame_rate_hz;
            let stencil = |a: &[f64; D], b: &[f64; D], c: &[f64; D]| {
                let mut row = [0.0; D];
                for d in 0..D {
                    row[d] = (a[d] - 2.0 * b[d] + c[d]) * f2;
                }
                row
            };
            let mut out = Vec::with_capacity(t);
            out.push(stencil(&series[0], &series[1], &series[2]));
            for i in 1..t - 1 {
                out.push(stencil(&series[i - 1], &series[i], &series[i + 1]));
            }
            out.push(stencil(&series[t - 3], &series[t - 2], &series[t - 1]));
            Ok(out)
        }
    }
}

/// Forward-difference speeds extended to T rows by repeating the last value,
/// so per-frame traces align with input frames.
pub(crate) fn speeds_aligned(series: &[[f64; 3]], frame_rate_hz: f64) -> Result<Vec<f64>> {
    let vel = finite_difference(series, frame_rate_hz, DiffOrder::First)?;
    let mut speeds: Vec<f64> = vel
        .iter()
        .map(|v| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt())
        .collect();
    let last = *speeds.last().expect("T >= 2 guarantees one difference");
    speeds.push(last);
    Ok(speeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_series_has_zero_velocity() {
        let series = vec![[1.5, -2.0]; 10];
        let vel = finite_difference(&series, 16.0, DiffOrder::First).unwrap();
        assert_eq!(vel.len(), 9);
        assert!(vel.iter().all(|r| r == &[0.0, 0.0]));
    }

    #[test]
    fn linear_series_slope_two_meters_per_frame() {
        let series: Vec<[f64; 1]> = (0..8).map(|k| [2.0 * k as f64]).collect();
        let vel = finite_difference(&series, 16.0, DiffOrder::First).unwrap();
        assert!(vel.iter().all(|r| r[0] == 32.0));
    }

    #[test]
    fn quadratic_second_difference_is_exact() {
        // z(t) = t^2 / (2 f^2) sampled at f = 16 has z'' = 1 exactly; the
        // second difference of a quadratic is exact at every stencil.
        let f = 16.0;
        let series: Vec<[f64; 1]> = (0..20)
            .map(|k| [(k as f64).powi(2) / (2.0 * f * f)])
            .collect();
        let acc = finite_difference(&series, f, DiffOrder::Second).unwrap();
        assert_eq!(acc.len(), 20);
        for row in &acc {
            assert!((row[0] - 1.0).abs() < 1e-12, "got {}", row[0]);
        }
    }

    #[test]
    fn too_few_frames() {
        let one = vec![[0.0f64; 1]];
        assert!(matches!(
            finite_difference(&one, 16.0, DiffOrder::First),
            Err(Error::TooFewFrames { needed: 2, got: 1 })
        ));
        let two = vec![[0.0f64; 1]; 2];
        assert!(matches!(
            finite_difference(&two, 16.0, DiffOrder::Second),
            Err(Error::TooFewFrames { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn aligned_speeds_repeat_last() {
        let series = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [3.0, 0.0, 0.0]];
        let speeds = speeds_aligned(&series, 2.0).unwrap();
        assert_eq!(speeds, vec![2.0, 4.0, 4.0]);
    }
}
