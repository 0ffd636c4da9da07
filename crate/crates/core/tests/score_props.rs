//! Score identity and monotonicity properties.

use motionfeas_core::config::ScoreConfig;
use motionfeas_core::contact::contact_score;
use motionfeas_core::dynamics::dynamic_score;
use motionfeas_core::kinematics::kinematic_score;
use motionfeas_core::reward::{aggregate, normalize_rewards};
use proptest::prelude::*;

fn ulps_apart(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    let (ia, ib) = (a.to_bits() as i64, b.to_bits() as i64);
    ia.abs_diff(ib)
}

fn unit() -> impl Strategy<Value = f64> {
    (0u32..=1000).prop_map(|v| v as f64 / 1000.0)
}

proptest! {
    #[test]
    fn score_identities_hold_to_one_ulp(
        v_vel in unit(), v_spen in unit(), v_lim in unit(),
        v_slip in unit(), v_gpen in unit(), v_float in unit(), v_bal in unit(),
        s_tau in unit(), s_grf in unit(), s_met in unit(),
    ) {
        let config = ScoreConfig::default();
        let f_kin = kinematic_score(v_vel, v_spen, v_lim).unwrap();
        let f_con = contact_score(v_slip, v_gpen, v_float, v_bal).unwrap();
        let f_dyn = dynamic_score(s_tau, s_grf, s_met).unwrap();
        let r = aggregate(f_kin, f_con, f_dyn, &config);
        prop_assert!(ulps_apart(f_kin, 1.0 - (v_vel + v_spen + v_lim) / 3.0) <= 1);
        prop_assert!(ulps_apart(f_con, 1.0 - (v_slip + v_gpen + v_float + v_bal) / 4.0) <= 1);
        prop_assert!(ulps_apart(f_dyn, (s_tau + s_grf + s_met) / 3.0) <= 1);
        prop_assert!(ulps_apart(r, (f_kin + f_con + f_dyn) / 3.0) <= 1);
        prop_assert!((0.0..=1.0).contains(&f_kin));
        prop_assert!((0.0..=1.0).contains(&f_con));
        prop_assert!((0.0..=1.0).contains(&f_dyn));
        prop_assert!((0.0..=1.0).contains(&r));
    }

    #[test]
    fn scores_fall_as_violations_rise(
        base in unit(), bump in (1u32..=100).prop_map(|v| v as f64 / 100.0),
    ) {
        let v = base.min(1.0 - bump.min(1.0)).max(0.0);
        prop_assert!(kinematic_score(v + bump, 0.0, 0.0).unwrap() <= kinematic_score(v, 0.0, 0.0).unwrap());
        prop_assert!(contact_score(0.0, v + bump, 0.0, 0.0).unwrap() <= contact_score(0.0, v, 0.0, 0.0).unwrap());
        prop_assert!(dynamic_score(v, 1.0, 1.0).unwrap() <= dynamic_score(v + bump, 1.0, 1.0).unwrap());
    }

    #[test]
    fn reward_rises_with_each_axis(
        f_kin in unit(), f_con in unit(), f_dyn in unit(),
        bump in (1u32..=100).prop_map(|v| v as f64 / 100.0),
    ) {
        let config = ScoreConfig::default();
        let base = aggregate(f_kin, f_con, f_dyn, &config);
        if f_kin + bump <= 1.0 {
            prop_assert!(aggregate(f_kin + bump, f_con, f_dyn, &config) > base);
        }
        if f_con + bump <= 1.0 {
            prop_assert!(aggregate(f_kin, f_con + bump, f_dyn, &config) > base);
        }
        if f_dyn + bump <= 1.0 {
            prop_assert!(aggregate(f_kin, f_con, f_dyn + bump, &config) > base);
        }
    }

    #[test]
    fn normalized_rewards_stay_in_unit_interval(
        rewards in prop::collection::vec(-10.0f64..10.0, 1..40),
        group_count in 1usize..5,
    ) {
        let config = ScoreConfig::default();
        let prompts: Vec<String> = (0..rewards.len()).map(|i| format!("g{}", i % group_count)).collect();
        let prompt_refs: Vec<&str> = prompts.iter().map(|s| s.as_str()).collect();
        let out = normalize_rewards(&prompt_refs, &rewards, &config);
        prop_assert_eq!(out.len(), rewards.len());
        for v in out {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn normalization_is_affine_invariant_per_group(
        rewards in prop::collection::vec(0.0f64..1.0, 2..20),
        shift in -5.0f64..5.0,
        scale in (1u32..=50).prop_map(|v| v as f64 / 10.0),
    ) {
        let config = ScoreConfig::default();
        let prompts: Vec<&str> = vec!["g"; rewards.len()];
        let moved: Vec<f64> = rewards.iter().map(|r| r * scale + shift).collect();
        let a = normalize_rewards(&prompts, &rewards, &config);
        let b = normalize_rewards(&prompts, &moved, &config);
        for i in 0..a.len() {
            prop_assert!((a[i] - b[i]).abs() < 1e-6, "{} vs {}", a[i], b[i]);
        }
    }
}
