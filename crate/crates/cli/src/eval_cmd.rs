use motionfeas_core::error::{Error, Result};
use motionfeas_core::eval::{
    bootstrap_std, elo_ratings, elo_ratings_shuffled, hard_disagreement_rate, pairwise_agreement,
    read_scores_file, read_votes_file, spearman_rho, win_matrix, Outcome, PairwiseVote, Question,
    ScoreTable,
};
use std::path::Path;

fn parse_question(raw: Option<&str>) -> Result<Option<Question>> {
    match raw {
        None => Ok(None),
        Some(s) => Question::parse(s)
            .map(Some)
            .ok_or_else(|| Error::Config(format!("unknown question `{s}`"))),
    }
}

fn filtered(votes: &[PairwiseVote], question: Option<Question>) -> Vec<PairwiseVote> {
    votes
        .iter()
        .filter(|v| question.is_none_or(|q| v.question == q))
        .cloned()
        .collect()
}

struct StatRow {
    question: String,
    metric: String,
    votes: usize,
    decisive: usize,
    agreement: Option<f64>,
    rho: Option<f64>,
    rho_std: Option<f64>,
}

/// Votes join scores on (pair_id = prompt_id, model). Unjoinable votes are
/// listed and excluded from the statistics.
pub fn run_eval(
    votes_path: &Path,
    scores_path: &Path,
    question: Option<&str>,
    bootstrap: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<()> {
    let question = parse_question(question)?;
    let votes = read_votes_file(votes_path)?;
    let scores = read_scores_file(scores_path)?;

    let joinable = |v: &PairwiseVote| {
        scores
            .rows
            .contains_key(&(v.pair_id.clone(), v.model_a.clone()))
            && scores
                .rows
                .contains_key(&(v.pair_id.clone(), v.model_b.clone()))
    };
    let (joined, failed): (Vec<PairwiseVote>, Vec<PairwiseVote>) =
        filtered(&votes, question).into_iter().partition(joinable);
    if joined.is_empty() {
        return Err(Error::Degenerate("no votes survive the score join".into()));
    }

    let questions: Vec<(String, Vec<PairwiseVote>)> = {
        let mut qs: Vec<(String, Vec<PairwiseVote>)> = Question::all()
            .iter()
            .filter(|q| question.is_none_or(|only| only == **q))
            .map(|q| {
                (
                    q.as_str().to_string(),
                    joined
                        .iter()
                        .filter(|v| v.question == *q)
                        .cloned()
                        .collect(),
                )
            })
            .filter(|(_, vs): &(String, Vec<PairwiseVote>)| !vs.is_empty())
            .collect();
        if qs.len() > 1 {
            qs.push(("all".to_string(), joined.clone()));
        }
        qs
    };

    let mut rows = Vec::new();
    for (label, votes_q) in &questions {
        for (mi, metric) in scores.metrics.iter().enumerate() {
            rows.push(stat_row(
                label, metric, mi, votes_q, &scores, bootstrap, seed,
            )?);
        }
    }

    let mut text = String::new();
    text.push_str(&format!(
        "{:<20} {:<12} {:>6} {:>9} {:>10} {:>9} {:>8}\n",
        "question", "metric", "votes", "decisive", "agreement", "rho", "rho_std"
    ));
    for r in &rows {
        let fmt = |v: Option<f64>| match v {
            Some(v) => format!("{v:.4}"),
            None => "n/a".to_string(),
        };
        text.push_str(&format!(
            "{:<20} {:<12} {:>6} {:>9} {:>10} {:>9} {:>8}\n",
            r.question,
            r.metric,
            r.votes,
            r.decisive,
            fmt(r.agreement),
            fmt(r.rho),
            fmt(r.rho_std)
        ));
    }
    for (label, votes_q) in &questions {
        if let Some(rate) = hard_disagreement_rate(votes_q) {
            text.push_str(&format!("hard-disagreement {label}: {rate:.4}\n"));
        }
    }
    if !failed.is_empty() {
        text.push_str(&format!("join failures: {}\n", failed.len()));
        for v in &failed {
            text.push_str(&format!(
                "  pair {} ({} vs {}) has no score rows\n",
                v.pair_id, v.model_a, v.model_b
            ));
        }
    }
    print!("{text}");

    if let Some(path) = out {
        let mut csv = String::from("question,metric,votes,decisive,agreement,rho,rho_std\n");
        for r in &rows {
            let fmt = |v: Option<f64>| v.map(|v| format!("{v:.6}")).unwrap_or_default();
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.question,
                r.metric,
                r.votes,
                r.decisive,
                fmt(r.agreement),
                fmt(r.rho),
                fmt(r.rho_std)
            ));
        }
        std::fs::write(path, csv)?;
    }
    Ok(())
}

fn stat_row(
    label: &str,
    metric: &str,
    metric_idx: usize,
    votes: &[PairwiseVote],
    scores: &ScoreTable,
    bootstrap: usize,
    seed: u64,
) -> Result<StatRow> {
    let score_of = |pair: &str, model: &str| scores.value(pair, model, metric_idx);
    let decisive = votes.iter().filter(|v| v.outcome != Outcome::Tie).count();
    let agreement = pairwise_agreement(votes, score_of).ok();
    // rank correlation between the metric's preference and the human outcome,
    // both on the win/tie/loss scale so a perfectly agreeing metric reaches 1
    let mut x = Vec::with_capacity(votes.len());
    let mut y = Vec::with_capacity(votes.len());
    for v in votes {
        let a = score_of(&v.pair_id, &v.model_a).expect("joined votes have scores");
        let b = score_of(&v.pair_id, &v.model_b).expect("joined votes have scores");
        x.push(if a > b {
            1.0
        } else if a < b {
            0.0
        } else {
            0.5
        });
        y.push(v.outcome.score_a());
    }
    let rho = spearman_rho(&x, &y).ok();
    let rho_std = if rho.is_some() && bootstrap >= 2 {
        bootstrap_std(&x, &y, spearman_rho, bootstrap, seed).ok()
    } else {
        None
    };
    Ok(StatRow {
        question: label.to_string(),
        metric: metric.to_string(),
        votes: votes.len(),
        decisive,
        agreement,
        rho,
        rho_std,
    })
}

pub fn run_elo(votes_path: &Path, question: Option<&str>, shuffle_seed: Option<u64>) -> Result<()> {
    let question = parse_question(question)?;
    let votes = filtered(&read_votes_file(votes_path)?, question);
    let table = match shuffle_seed {
        Some(seed) => elo_ratings_shuffled(&votes, seed),
        None => elo_ratings(&votes),
    };
    println!("{:<28} {:>8} {:>7}", "model", "rating", "games");
    for (model, rating, games) in table.sorted() {
        println!("{model:<28} {rating:>8.1} {games:>7}");
    }
    Ok(())
}

pub fn run_winmatrix(votes_path: &Path, question: Option<&str>) -> Result<()> {
    let question = parse_question(question)?;
    let votes = filtered(&read_votes_file(votes_path)?, question);
    let matrix = win_matrix(&votes);
    let width = matrix
        .models
        .iter()
        .map(|m| m.len())
        .max()
        .unwrap_or(5)
        .max(6);
    print!("{:<w$}", "", w = width + 1);
    for m in &matrix.models {
        print!("{m:>w$}", w = width + 1);
    }
    println!();
    for (i, row_model) in matrix.models.iter().enumerate() {
        print!("{row_model:<w$}", w = width + 1);
        for j in 0..matrix.models.len() {
            match matrix.fractions[i][j] {
                Some(f) => print!("{f:>w$.3}", w = width + 1),
                None => print!("{:>w$}", "-", w = width + 1),
            }
        }
        println!();
    }
    Ok(())
}
