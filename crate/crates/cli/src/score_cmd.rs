use motionfeas_core::config::ScoreConfig;
use motionfeas_core::error::{Error, Result};
use motionfeas_core::io;
use motionfeas_core::model::ScoreReport;
use motionfeas_core::reward::score_trajectory;
use std::path::Path;

pub fn run(
    file: &Path,
    mesh_file: Option<&Path>,
    json: bool,
    trace: bool,
    config: &ScoreConfig,
) -> Result<()> {
    let doc = io::load_path(file)?;
    let mesh =
        match mesh_file {
            Some(path) => Some(io::load_path(path)?.mesh.ok_or_else(|| {
                Error::Format(format!("{} carries no mesh block", path.display()))
            })?),
            None => doc.mesh.clone(),
        };
    let mut body = doc.body_model();
    config.apply_to_body(&mut body);
    let mut report = score_trajectory(&doc.trajectory, &body, mesh.as_ref(), config)?;
    if !trace {
        report.diagnostics = None;
    }
    if json {
        println!("{}", json_report(&report, config));
    } else {
        print!(
            "{}",
            human_report(
                &doc.trajectory.subject_id,
                &doc.trajectory.prompt_id,
                &report
            )
        );
    }
    Ok(())
}

/// One JSON object: every report field at the top level plus the effective
/// config under "config".
pub fn json_report(report: &ScoreReport, config: &ScoreConfig) -> String {
    let mut value = serde_json::to_value(report).expect("report serializes");
    let map = value.as_object_mut().expect("report is an object");
    map.insert(
        "config".to_string(),
        serde_json::to_value(config).expect("config serializes"),
    );
    serde_json::to_string(&value).expect("report JSON prints")
}

pub fn human_report(subject: &str, prompt: &str, report: &ScoreReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("subject {subject}  prompt {prompt}"));
    line(format!(
        "  kinematic   v_vel {:.4}  v_spen {:.4}  v_lim {:.4}   F_kin {:.4}",
        report.v_vel, report.v_spen, report.v_lim, report.f_kin
    ));
    line(format!(
        "  contact     v_slip {:.4}  v_gpen {:.4}  v_float {:.4}  v_bal {:.4}   F_con {:.4}",
        report.v_slip, report.v_gpen, report.v_float, report.v_bal, report.f_con
    ));
    line(format!(
        "  dynamic     s_tau {:.4}  s_grf {:.4}  s_met {:.4}   F_dyn {:.4}",
        report.s_tau, report.s_grf, report.s_met, report.f_dyn
    ));
    line(format!("  r_motion    {:.4}", report.r_motion));
    if !report.flags.is_empty() {
        line(format!("  flags       {}", report.flags.join(", ")));
    }
    out
}
