//! Built-in fixture suite: a fast end-to-end sanity pass over every
//! subsystem, printing one line per check.

use motionfeas_core::config::ScoreConfig;
use motionfeas_core::eval::{elo_ratings, spearman_rho, Outcome, PairwiseVote, Question};
use motionfeas_core::geometry::{intersecting_pairs, share_vertex, TriangleBvh};
use motionfeas_core::io::{read_document, write_binary, write_json, TrajectoryDocument};
use motionfeas_core::nft::{loss_gradient, policy_loss, PolicyTriple};
use motionfeas_core::oracles;
use motionfeas_core::reward::score_trajectory;
use motionfeas_core::{dynamics, fixtures};
use std::process::ExitCode;

struct Suite {
    failures: usize,
}

impl Suite {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            println!("[ok]   {name}");
        } else {
            println!("[FAIL] {name}: {detail}");
            self.failures += 1;
        }
    }
}

pub fn run() -> ExitCode {
    let config = ScoreConfig::default();
    let mut suite = Suite { failures: 0 };

    // ideal standing pose scores a perfect reward
    let standing = fixtures::standing(8, 16.0);
    match score_trajectory(
        &standing.trajectory,
        &standing.body,
        standing.mesh.as_ref(),
        &config,
    ) {
        Ok(report) => {
            suite.check(
                "standing pose scores r_motion = 1",
                report.r_motion == 1.0 && report.f_kin == 1.0 && report.f_con == 1.0,
                format!("r_motion = {}", report.r_motion),
            );
        }
        Err(e) => suite.check("standing pose scores r_motion = 1", false, e.to_string()),
    }

    // projectile motion passes the ballistic gate with near-zero vertical GRF
    let ballistic = fixtures::ballistic(9, 16.0);
    match score_trajectory(&ballistic.trajectory, &ballistic.body, None, &config) {
        Ok(report) => {
            let diag = report.diagnostics.as_ref().unwrap();
            let no_forced = diag.ballistic_forced.iter().all(|&b| !b);
            let interior_fz = diag.grf[1..diag.grf.len() - 1]
                .iter()
                .map(|f| f[2].abs())
                .fold(0.0, f64::max);
            suite.check(
                "ballistic run: no forced float flags",
                no_forced,
                format!("forced = {:?}", diag.ballistic_forced),
            );
            suite.check(
                "ballistic run: interior vertical GRF within 1 N",
                interior_fz < 1.0,
                format!("max |F_z| = {interior_fz}"),
            );
        }
        Err(e) => suite.check("ballistic run scores", false, e.to_string()),
    }

    // threshold constants from the default body
    let body = standing.body.clone();
    let weight = body.mass_kg * body.gravity;
    suite.check(
        "force constants mg / 3mg / 0.5mg",
        (weight - 686.7).abs() < 1e-9
            && (3.0 * weight - 2060.1).abs() < 1e-9
            && (0.5 * weight - 343.35).abs() < 1e-9,
        format!("mg = {weight}"),
    );
    let spen_map = |s: f64| motionfeas_core::kinematics::spen_violation(s, 2.0, 20.0);
    suite.check(
        "self-penetration normalization 2 / 11 / 20 -> 0 / 0.5 / 1",
        spen_map(2.0) == 0.0 && spen_map(11.0) == 0.5 && spen_map(20.0) == 1.0,
        String::new(),
    );
    suite.check(
        "mechanical-effort mapping 0 / 5000 / 10000 -> 1 / 0.5 / 0",
        (1.0f64 - 0.0 / config.met_norm).max(0.0) == 1.0
            && (1.0f64 - 5000.0 / config.met_norm).max(0.0) == 0.5
            && (1.0f64 - 10000.0 / config.met_norm).max(0.0) == 0.0,
        String::new(),
    );

    // stationary GRF equals body weight exactly at the constants above
    let com = dynamics::com_trajectory(&standing.trajectory, &standing.body);
    match dynamics::grf_estimate(&com, &standing.body, 16.0) {
        Ok(grf) => suite.check(
            "standing GRF is (0, 0, 686.7 N)",
            grf.iter()
                .all(|f| f[0] == 0.0 && f[1] == 0.0 && (f[2] - 686.7).abs() < 1e-9),
            format!("F = {:?}", grf[0]),
        ),
        Err(e) => suite.check("standing GRF", false, e.to_string()),
    }

    // contrastive objective worked example: loss 0.01, gradient 0.02
    let triple = PolicyTriple {
        v_theta: vec![1.0],
        v_theta_old: vec![0.0],
        v_target: vec![0.0],
        beta: 0.1,
        r_tilde: 1.0,
    };
    let loss = policy_loss(&triple).unwrap_or(f64::NAN);
    let grad = loss_gradient(&triple).map(|g| g[0]).unwrap_or(f64::NAN);
    suite.check(
        "policy objective scalar case: L = 0.01, dL/dv = 0.02",
        (loss - 0.01).abs() < 1e-12 && (grad - 0.02).abs() < 1e-12,
        format!("L = {loss}, g = {grad}"),
    );

    // Elo worked example
    let vote = |outcome| PairwiseVote {
        pair_id: "p".into(),
        model_a: "a".into(),
        model_b: "b".into(),
        question: Question::Balance,
        outcome,
    };
    let table = elo_ratings(&[vote(Outcome::A)]);
    suite.check(
        "single decisive game moves 1500/1500 to 1516/1484",
        table.ratings["a"] == 1516.0 && table.ratings["b"] == 1484.0,
        format!("{:?}", table.ratings),
    );
    let ties = elo_ratings(&vec![vote(Outcome::Tie); 10]);
    suite.check(
        "tie stream leaves ratings at 1500",
        ties.ratings.values().all(|&r| r == 1500.0),
        String::new(),
    );

    // Spearman worked example: squared rank distance 6 over 5 points
    let rho = spearman_rho(&[1.0, 2.0, 3.0, 4.0, 5.0], &[3.0, 1.0, 2.0, 4.0, 5.0]);
    suite.check(
        "Spearman worked example equals 0.7",
        rho.as_ref().is_ok_and(|r| (r - 0.7).abs() < 1e-12),
        format!("{rho:?}"),
    );

    // geometry kernels against the brute-force oracle
    let mut rng = oracles::seeded_rng(99);
    let mut mismatches = 0;
    for _ in 0..20 {
        let (faces, vertices) = oracles::random_lattice_mesh(&mut rng, 24, 60);
        let bvh = match TriangleBvh::build(&faces, &vertices) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let fast = intersecting_pairs(&bvh, &vertices, |a, b| share_vertex(&faces[a], &faces[b]));
        let slow = oracles::brute_force_pairs(&faces, &vertices);
        if fast != slow {
            mismatches += 1;
        }
    }
    suite.check(
        "BVH pair counts match brute force on 20 random meshes",
        mismatches == 0,
        format!("{mismatches} mismatches"),
    );

    // containers round-trip byte-identically
    let doc = TrajectoryDocument::new(
        standing.trajectory.clone(),
        standing.body.joint_names.clone(),
        standing.body.parents.clone(),
    );
    let json_once = write_json(&doc);
    let bin_once = write_binary(&doc);
    let round = read_document(&json_once).and_then(|d| {
        let json_again = write_json(&d);
        read_document(&bin_once).map(|d2| (json_again, write_binary(&d2)))
    });
    suite.check(
        "containers round-trip byte-identically",
        round
            .map(|(j, b)| j == json_once && b == bin_once)
            .unwrap_or(false),
        String::new(),
    );

    if suite.failures == 0 {
        println!("selfcheck: all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("selfcheck: {} check(s) failed", suite.failures);
        ExitCode::FAILURE
    }
}
