use motionfeas_core::config::ScoreConfig;
use motionfeas_core::error::Result;
use motionfeas_core::io;
use motionfeas_core::model::ScoreReport;
use motionfeas_core::reward::{normalize_rewards, score_trajectory};
use rayon::prelude::*;
use std::io::Write;
use std::path::{Path, PathBuf};

struct Row {
    file: String,
    subject_id: String,
    prompt_id: String,
    report: Option<ScoreReport>,
    error: Option<String>,
}

/// Scores every trajectory file in `dir` into one CSV row each, in filename
/// order regardless of worker count. Per-file failures land in the `error`
/// column and do not fail the batch.
pub fn run(
    dir: &Path,
    out: Option<&Path>,
    workers: usize,
    group_by_prompt: bool,
    config: &ScoreConfig,
) -> Result<()> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("json") | Some("mft") | Some("mft1") | Some("bin")
            )
        })
        .collect();
    files.sort();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| motionfeas_core::error::Error::Config(format!("worker pool: {e}")))?;
    let rows: Vec<Row> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let file = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                match score_file(path, config) {
                    Ok((subject_id, prompt_id, report)) => Row {
                        file,
                        subject_id,
                        prompt_id,
                        report: Some(report),
                        error: None,
                    },
                    Err(err) => Row {
                        file,
                        subject_id: String::new(),
                        prompt_id: String::new(),
                        report: None,
                        error: Some(err.to_string().replace('\n', "; ")),
                    },
                }
            })
            .collect()
    });

    let r_tilde = if group_by_prompt {
        let scored: Vec<(usize, &str, f64)> = rows
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                row.report
                    .as_ref()
                    .map(|rep| (i, row.prompt_id.as_str(), rep.r_motion))
            })
            .collect();
        let prompts: Vec<&str> = scored.iter().map(|(_, p, _)| *p).collect();
        let rewards: Vec<f64> = scored.iter().map(|(_, _, r)| *r).collect();
        let normalized = normalize_rewards(&prompts, &rewards, config);
        let mut per_row = vec![None; rows.len()];
        for ((i, _, _), r) in scored.iter().zip(normalized) {
            per_row[*i] = Some(r);
        }
        Some(per_row)
    } else {
        None
    };

    let failures = rows.iter().filter(|r| r.error.is_some()).count();
    let csv_text = render_csv(&rows, r_tilde.as_deref());
    match out {
        Some(path) => std::fs::write(path, csv_text)?,
        None => std::io::stdout().write_all(csv_text.as_bytes())?,
    }
    if failures > 0 {
        eprintln!(
            "warning: {failures} of {} files failed to score",
            rows.len()
        );
    }
    Ok(())
}

fn score_file(path: &Path, config: &ScoreConfig) -> Result<(String, String, ScoreReport)> {
    let doc = io::load_path(path)?;
    let mut body = doc.body_model();
    config.apply_to_body(&mut body);
    let report = score_trajectory(&doc.trajectory, &body, doc.mesh.as_ref(), config)?;
    Ok((
        doc.trajectory.subject_id.clone(),
        doc.trajectory.prompt_id.clone(),
        report,
    ))
}

fn render_csv(rows: &[Row], r_tilde: Option<&[Option<f64>]>) -> String {
    let mut out = String::new();
    out.push_str("file,subject_id,prompt_id,v_vel,v_spen,v_lim,v_slip,v_gpen,v_float,v_bal,s_tau,s_grf,s_met,f_kin,f_con,f_dyn,r_motion");
    if r_tilde.is_some() {
        out.push_str(",r_tilde");
    }
    out.push_str(",error\n");
    for (i, row) in rows.iter().enumerate() {
        let quoted = |s: &str| {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        out.push_str(&quoted(&row.file));
        out.push(',');
        out.push_str(&quoted(&row.subject_id));
        out.push(',');
        out.push_str(&quoted(&row.prompt_id));
        match &row.report {
            Some(r) => {
                for v in [
                    r.v_vel, r.v_spen, r.v_lim, r.v_slip, r.v_gpen, r.v_float, r.v_bal, r.s_tau,
                    r.s_grf, r.s_met, r.f_kin, r.f_con, r.f_dyn, r.r_motion,
                ] {
                    out.push_str(&format!(",{v:.6}"));
                }
            }
            None => out.push_str(&",".repeat(14)),
        }
        if let Some(normalized) = r_tilde {
            match normalized[i] {
                Some(v) => out.push_str(&format!(",{v:.6}")),
                None => out.push(','),
            }
        }
        out.push(',');
        if let Some(err) = &row.error {
            out.push_str(&quoted(err));
        }
        out.push('\n');
    }
    out
}
