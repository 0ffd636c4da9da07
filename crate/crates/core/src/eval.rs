//! Metric-vs-human alignment statistics: pairwise agreement, Spearman rank
//! correlation with bootstrap uncertainty, Elo ratings and win matrices.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

/// The three human-study questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Question {
    BodyStructure,
    Balance,
    MotionNaturalness,
}

impl Question {
    pub fn parse(s: &str) -> Option<Question> {
        match s.trim().to_ascii_lowercase().as_str() {
            "body_structure" | "body" => Some(Question::BodyStructure),
            "balance" => Some(Question::Balance),
            "motion_naturalness" | "motion" => Some(Question::MotionNaturalness),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Question::BodyStructure => "body_structure",
            Question::Balance => "balance",
            Question::MotionNaturalness => "motion_naturalness",
        }
    }

    pub fn all() -> [Question; 3] {
        [
            Question::BodyStructure,
            Question::Balance,
            Question::MotionNaturalness,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    A,
    B,
    Tie,
}

impl Outcome {
    pub fn parse(s: &str) -> Option<Outcome> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Some(Outcome::A),
            "b" => Some(Outcome::B),
            "tie" | "t" => Some(Outcome::Tie),
            _ => None,
        }
    }

    /// Score of model A: win 1, tie 0.5, loss 0.
    pub fn score_a(&self) -> f64 {
        match self {
            Outcome::A => 1.0,
            Outcome::Tie => 0.5,
            Outcome::B => 0.0,
        }
    }
}

/// One annotator judgment on a video pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseVote {
    pub pair_id: String,
    pub model_a: String,
    pub model_b: String,
    pub question: Question,
    pub outcome: Outcome,
}

/// Reads a votes CSV with header pair_id,model_a,model_b,question,outcome.
pub fn read_votes<R: Read>(reader: R) -> Result<Vec<PairwiseVote>> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    let mut votes = Vec::new();
    for (i, record) in csv_reader.records().enumerate() {
        let record = record?;
        let field = |idx: usize, name: &str| -> Result<String> {
            record
                .get(idx)
                .map(|s| s.trim().to_string())
                .ok_or_else(|| Error::Degenerate(format!("votes row {}: missing {name}", i + 2)))
        };
        let question_raw = field(3, "question")?;
        let outcome_raw = field(4, "outcome")?;
        let vote = PairwiseVote {
            pair_id: field(0, "pair_id")?,
            model_a: field(1, "model_a")?,
            model_b: field(2, "model_b")?,
            question: Question::parse(&question_raw).ok_or_else(|| {
                Error::Degenerate(format!(
                    "votes row {}: bad question `{question_raw}`",
                    i + 2
                ))
            })?,
            outcome: Outcome::parse(&outcome_raw).ok_or_else(|| {
                Error::Degenerate(format!("votes row {}: bad outcome `{outcome_raw}`", i + 2))
            })?,
        };
        if vote.model_a == vote.model_b {
            return Err(Error::Degenerate(format!(
                "votes row {}: model_a equals model_b (`{}`)",
                i + 2,
                vote.model_a
            )));
        }
        votes.push(vote);
    }
    Ok(votes)
}

pub fn read_votes_file(path: &Path) -> Result<Vec<PairwiseVote>> {
    read_votes(std::fs::File::open(path)?)
}

/// Per-video metric scores: video_id,model,prompt_id plus one column per
/// metric. Rows are keyed by (prompt_id, model) for joining against votes.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub metrics: Vec<String>,
    /// (prompt_id, model) -> metric values.
    pub rows: BTreeMap<(String, String), Vec<f64>>,
}

impl ScoreTable {
    pub fn metric_index(&self, name: &str) -> Option<usize> {
        self.metrics.iter().position(|m| m == name)
    }

    pub fn value(&self, prompt_id: &str, model: &str, metric: usize) -> Option<f64> {
        self.rows
            .get(&(prompt_id.to_string(), model.to_string()))
            .map(|v| v[metric])
    }
}

/// Reads a scores CSV with header video_id,model,prompt_id,<metrics...>.
pub fn read_scores<R: Read>(reader: R) -> Result<ScoreTable> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    let headers = csv_reader.headers()?.clone();
    if headers.len() < 4 {
        return Err(Error::Degenerate(
            "scores CSV needs video_id,model,prompt_id plus at least one metric column".into(),
        ));
    }
    let metrics: Vec<String> = headers
        .iter()
        .skip(3)
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = BTreeMap::new();
    for (i, record) in csv_reader.records().enumerate() {
        let record = record?;
        let model = record.get(1).unwrap_or("").trim().to_string();
        let prompt = record.get(2).unwrap_or("").trim().to_string();
        let mut values = Vec::with_capacity(metrics.len());
        for (k, metric) in metrics.iter().enumerate() {
            let raw = record.get(3 + k).unwrap_or("").trim();
            let value = raw.parse::<f64>().map_err(|_| {
                Error::Degenerate(format!(
                    "scores row {}: bad `{metric}` value `{raw}`",
                    i + 2
                ))
            })?;
            values.push(value);
        }
        rows.insert((prompt, model), values);
    }
    Ok(ScoreTable { metrics, rows })
}

pub fn read_scores_file(path: &Path) -> Result<ScoreTable> {
    read_scores(std::fs::File::open(path)?)
}

/// Fraction of decisive human votes the metric agrees with. Metric ties earn
/// half credit; human ties are excluded.
pub fn pairwise_agreement(
    votes: &[PairwiseVote],
    score_of: impl Fn(&str, &str) -> Option<f64>,
) -> Result<f64> {
    let mut credit = 0.0;
    let mut decisive = 0usize;
    for vote in votes {
        if vote.outcome == Outcome::Tie {
            continue;
        }
        let lookup = |model: &str| -> Result<f64> {
            score_of(&vote.pair_id, model).ok_or_else(|| Error::MissingScore {
                pair_id: vote.pair_id.clone(),
                model: model.to_string(),
            })
        };
        let score_a = lookup(&vote.model_a)?;
        let score_b = lookup(&vote.model_b)?;
        decisive += 1;
        if score_a == score_b {
            credit += 0.5;
        } else {
            let metric_prefers_a = score_a > score_b;
            let human_prefers_a = vote.outcome == Outcome::A;
            if metric_prefers_a == human_prefers_a {
                credit += 1.0;
            }
        }
    }
    if decisive == 0 {
        return Err(Error::Degenerate("no decisive votes".into()));
    }
    Ok(credit / decisive as f64)
}

/// Mid-ranks: ties get the average of the ranks they occupy (1-based).
fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut k = i;
        while k + 1 < n && values[order[k + 1]] == values[order[i]] {
            k += 1;
        }
        let rank = (i + 1 + k + 1) as f64 / 2.0;
        for &idx in &order[i..=k] {
            ranks[idx] = rank;
        }
        i = k + 1;
    }
    ranks
}

/// Spearman's rank correlation: Pearson correlation of mid-ranks.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Degenerate(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::Degenerate("need at least two samples".into()));
    }
    let constant = |v: &[f64]| v.iter().all(|&a| a == v[0]);
    if constant(x) || constant(y) {
        return Err(Error::Degenerate(
            "constant series has no rank correlation".into(),
        ));
    }
    let rx = midranks(x);
    let ry = midranks(y);
    let n = x.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for i in 0..x.len() {
        let dx = rx[i] - mean;
        let dy = ry[i] - mean;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    Ok(cov / (var_x * var_y).sqrt())
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Standard deviation of a paired statistic over bootstrap resamples.
/// Resamples run concurrently with per-resample seeds derived from the
/// master seed, so output is independent of thread scheduling. Resamples on
/// which the statistic is undefined (e.g. a constant series) are skipped.
pub fn bootstrap_std(
    x: &[f64],
    y: &[f64],
    statistic: impl Fn(&[f64], &[f64]) -> Result<f64> + Sync,
    resamples: usize,
    seed: u64,
) -> Result<f64> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::Degenerate(
            "bootstrap needs equal-length, non-empty series".into(),
        ));
    }
    let n = x.len();
    let values: Vec<f64> = (0..resamples)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ (i as u64)));
            let mut bx = Vec::with_capacity(n);
            let mut by = Vec::with_capacity(n);
            for _ in 0..n {
                let k = rng.random_range(0..n);
                bx.push(x[k]);
                by.push(y[k]);
            }
            statistic(&bx, &by).ok()
        })
        .collect();
    if values.len() < 2 {
        return Err(Error::Degenerate(
            "too few successful bootstrap resamples".into(),
        ));
    }
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    Ok(var.sqrt())
}

/// Sequential Elo table over a vote stream.
#[derive(Debug, Clone, PartialEq)]
pub struct EloTable {
    pub base_rating: f64,
    pub k_factor: f64,
    /// model -> rating.
    pub ratings: BTreeMap<String, f64>,
    /// model -> games played.
    pub games: BTreeMap<String, u32>,
}

impl EloTable {
    /// Ratings sorted descending, ties broken by name.
    pub fn sorted(&self) -> Vec<(String, f64, u32)> {
        let mut rows: Vec<(String, f64, u32)> = self
            .ratings
            .iter()
            .map(|(m, &r)| (m.clone(), r, self.games[m]))
            .collect();
        rows.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        rows
    }
}

pub const ELO_BASE: f64 = 1500.0;
pub const ELO_K: f64 = 32.0;

/// Sequential Elo updates in input order: E_a = 1/(1 + 10^((R_b - R_a)/400)),
/// delta = K (s_a - E_a) applied antisymmetrically so the total rating is
/// conserved exactly.
pub fn elo_ratings(votes: &[PairwiseVote]) -> EloTable {
    let mut table = EloTable {
        base_rating: ELO_BASE,
        k_factor: ELO_K,
        ratings: BTreeMap::new(),
        games: BTreeMap::new(),
    };
    for vote in votes {
        let r_a = *table
            .ratings
            .entry(vote.model_a.clone())
            .or_insert(ELO_BASE);
        let r_b = *table
            .ratings
            .entry(vote.model_b.clone())
            .or_insert(ELO_BASE);
        let expected_a = 1.0 / (1.0 + 10f64.powf((r_b - r_a) / 400.0));
        let delta = ELO_K * (vote.outcome.score_a() - expected_a);
        *table.ratings.get_mut(&vote.model_a).unwrap() = r_a + delta;
        *table.ratings.get_mut(&vote.model_b).unwrap() = r_b - delta;
        *table.games.entry(vote.model_a.clone()).or_insert(0) += 1;
        *table.games.entry(vote.model_b.clone()).or_insert(0) += 1;
    }
    table
}

/// Deterministically shuffles votes before the sequential Elo pass, for
/// order-sensitivity analysis.
pub fn elo_ratings_shuffled(votes: &[PairwiseVote], seed: u64) -> EloTable {
    let mut shuffled = votes.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.shuffle(&mut rng);
    elo_ratings(&shuffled)
}

/// Pairwise win fractions with ties counted as 0.5. Cells without games are
/// absent rather than zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WinMatrix {
    pub models: Vec<String>,
    /// Entry (i, j) is the win fraction of model i over model j.
    pub fractions: Vec<Vec<Option<f64>>>,
    pub games: Vec<Vec<u32>>,
}

pub fn win_matrix(votes: &[PairwiseVote]) -> WinMatrix {
    let mut models: Vec<String> = Vec::new();
    for vote in votes {
        for m in [&vote.model_a, &vote.model_b] {
            if !models.contains(m) {
                models.push(m.clone());
            }
        }
    }
    models.sort();
    let index: BTreeMap<&str, usize> = models
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_str(), i))
        .collect();
    let n = models.len();
    let mut score = vec![vec![0.0; n]; n];
    let mut games = vec![vec![0u32; n]; n];
    for vote in votes {
        let a = index[vote.model_a.as_str()];
        let b = index[vote.model_b.as_str()];
        score[a][b] += vote.outcome.score_a();
        score[b][a] += 1.0 - vote.outcome.score_a();
        games[a][b] += 1;
        games[b][a] += 1;
    }
    let fractions = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if games[i][j] == 0 {
                        None
                    } else {
                        Some(score[i][j] / games[i][j] as f64)
                    }
                })
                .collect()
        })
        .collect();
    WinMatrix {
        models,
        fractions,
        games,
    }
}

/// Hard-disagreement rate over duplicate (pair_id, question) annotations: a
/// disagreement needs two opposite decisive choices; ties are compatible
/// with either side. Returns None when nothing is duplicated.
pub fn hard_disagreement_rate(votes: &[PairwiseVote]) -> Option<f64> {
    let mut groups: BTreeMap<(String, &'static str), Vec<Outcome>> = BTreeMap::new();
    for vote in votes {
        groups
            .entry((vote.pair_id.clone(), vote.question.as_str()))
            .or_default()
            .push(vote.outcome);
    }
    let mut duplicated = 0usize;
    let mut disagreements = 0usize;
    for outcomes in groups.values() {
        if outcomes.len() < 2 {
            continue;
        }
        duplicated += 1;
        let has_a = outcomes.contains(&Outcome::A);
        let has_b = outcomes.contains(&Outcome::B);
        if has_a && has_b {
            disagreements += 1;
        }
    }
    if duplicated == 0 {
        None
    } else {
        Some(disagreements as f64 / duplicated as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vote(pair: &str, a: &str, b: &str, outcome: Outcome) -> PairwiseVote {
        PairwiseVote {
            pair_id: pair.to_string(),
            model_a: a.to_string(),
            model_b: b.to_string(),
            question: Question::Balance,
            outcome,
        }
    }

    #[test]
    fn agreement_examples() {
        let votes: Vec<PairwiseVote> = (0..10)
            .map(|i| vote(&format!("p{i}"), "m1", "m2", Outcome::A))
            .collect();
        // metric always prefers m1, matching the humans
        let agree = pairwise_agreement(&votes, |_, m| Some(if m == "m1" { 1.0 } else { 0.0 }));
        assert_eq!(agree.unwrap(), 1.0);
        // anti-correlated metric
        let against = pairwise_agreement(&votes, |_, m| Some(if m == "m1" { 0.0 } else { 1.0 }));
        assert_eq!(against.unwrap(), 0.0);
        // constant metric earns half credit on every decisive vote
        let constant = pairwise_agreement(&votes, |_, _| Some(0.7));
        assert_eq!(constant.unwrap(), 0.5);
        // missing score is an error
        assert!(matches!(
            pairwise_agreement(&votes, |_, _| None),
            Err(Error::MissingScore { .. })
        ));
    }

    #[test]
    fn human_ties_are_excluded() {
        let votes = vec![
            vote("p0", "m1", "m2", Outcome::Tie),
            vote("p1", "m1", "m2", Outcome::A),
        ];
        let agree =
            pairwise_agreement(&votes, |_, m| Some(if m == "m1" { 1.0 } else { 0.0 })).unwrap();
        assert_eq!(agree, 1.0);
        let only_ties = vec![vote("p0", "m1", "m2", Outcome::Tie)];
        assert!(pairwise_agreement(&only_ties, |_, _| Some(0.0)).is_err());
    }

    #[test]
    fn spearman_identity_and_reversal() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y_rev: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((spearman_rho(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman_rho(&x, &y_rev).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn spearman_worked_permutations() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        // sum of squared rank differences 6 -> rho = 1 - 6*6/120 = 0.7
        let y = [3.0, 1.0, 2.0, 4.0, 5.0];
        assert!((spearman_rho(&x, &y).unwrap() - 0.7).abs() < 1e-12);
        // and 4 -> rho = 1 - 6*4/120 = 0.8
        let y2 = [1.0, 3.0, 2.0, 5.0, 4.0];
        assert!((spearman_rho(&x, &y2).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn spearman_is_invariant_under_monotone_transforms() {
        let x = [0.3, 1.2, 0.8, 2.5, 1.9, 0.1];
        let y = [5.0, 2.0, 9.0, 1.0, 4.0, 7.0];
        let rho = spearman_rho(&x, &y).unwrap();
        let x_exp: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        let y_cube: Vec<f64> = y.iter().map(|v| v.powi(3)).collect();
        assert!((spearman_rho(&x_exp, &y_cube).unwrap() - rho).abs() < 1e-12);
    }

    #[test]
    fn spearman_handles_ties_with_midranks() {
        let x = [1.0, 1.0, 2.0, 3.0];
        let y = [1.0, 2.0, 3.0, 4.0];
        // midranks of x: (1.5, 1.5, 3, 4)
        let rho = spearman_rho(&x, &y).unwrap();
        assert!(rho > 0.9 && rho < 1.0);
        assert!(spearman_rho(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn bootstrap_is_deterministic_and_concentrates() {
        let x: Vec<f64> = (0..200).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| v * 2.0 + 1.0).collect();
        let s1 = bootstrap_std(&x, &y, spearman_rho, 200, 42).unwrap();
        let s2 = bootstrap_std(&x, &y, spearman_rho, 200, 42).unwrap();
        assert_eq!(s1, s2);
        assert!(s1 < 0.01, "perfectly correlated large N: got {s1}");
        // constant-preserving statistic has zero spread
        let s3 = bootstrap_std(&x, &y, |_, _| Ok(0.25), 100, 7).unwrap();
        assert_eq!(s3, 0.0);
    }

    #[test]
    fn elo_single_game() {
        let table = elo_ratings(&[vote("p", "alpha", "beta", Outcome::A)]);
        assert_eq!(table.ratings["alpha"], 1516.0);
        assert_eq!(table.ratings["beta"], 1484.0);
        assert_eq!(table.games["alpha"], 1);
    }

    #[test]
    fn elo_all_ties_stay_at_base() {
        let votes: Vec<PairwiseVote> = (0..20)
            .map(|i| vote(&format!("p{i}"), "m1", "m2", Outcome::Tie))
            .collect();
        let table = elo_ratings(&votes);
        assert_eq!(table.ratings["m1"], 1500.0);
        assert_eq!(table.ratings["m2"], 1500.0);
    }

    #[test]
    fn elo_conserves_total_rating() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let models = ["a", "b", "c", "d"];
        let votes: Vec<PairwiseVote> = (0..1000)
            .map(|i| {
                let ai = rng.random_range(0..4);
                let bi = (ai + 1 + rng.random_range(0..3)) % 4;
                let outcome = match rng.random_range(0..3) {
                    0 => Outcome::A,
                    1 => Outcome::B,
                    _ => Outcome::Tie,
                };
                vote(&format!("p{i}"), models[ai], models[bi], outcome)
            })
            .collect();
        let table = elo_ratings(&votes);
        let total: f64 = table.ratings.values().sum();
        assert!((total - 4.0 * 1500.0).abs() < 1e-9, "total {total}");
    }

    #[test]
    fn win_matrix_examples() {
        let votes = vec![
            vote("p0", "x", "y", Outcome::A),
            vote("p1", "x", "y", Outcome::A),
            vote("p2", "y", "x", Outcome::B), // x wins from the B side
            vote("p3", "x", "y", Outcome::A),
        ];
        let m = win_matrix(&votes);
        let xi = m.models.iter().position(|s| s == "x").unwrap();
        let yi = m.models.iter().position(|s| s == "y").unwrap();
        assert_eq!(m.fractions[xi][yi], Some(1.0));
        assert_eq!(m.fractions[yi][xi], Some(0.0));

        let votes2 = vec![
            vote("p0", "x", "y", Outcome::A),
            vote("p1", "x", "y", Outcome::A),
            vote("p2", "x", "y", Outcome::Tie),
            vote("p3", "x", "y", Outcome::Tie),
        ];
        let m2 = win_matrix(&votes2);
        assert_eq!(m2.fractions[xi][yi], Some(0.75));
        assert_eq!(m2.fractions[yi][xi], Some(0.25));

        // absent pairing stays absent
        let votes3 = vec![
            vote("p0", "x", "y", Outcome::A),
            vote("p1", "x", "z", Outcome::A),
        ];
        let m3 = win_matrix(&votes3);
        let zi = m3.models.iter().position(|s| s == "z").unwrap();
        let yi3 = m3.models.iter().position(|s| s == "y").unwrap();
        assert_eq!(m3.fractions[yi3][zi], None);
    }

    #[test]
    fn win_matrix_complement_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let models = ["a", "b", "c"];
        let votes: Vec<PairwiseVote> = (0..300)
            .map(|i| {
                let ai = rng.random_range(0..3);
                let bi = (ai + 1 + rng.random_range(0..2)) % 3;
                let outcome = match rng.random_range(0..3) {
                    0 => Outcome::A,
                    1 => Outcome::B,
                    _ => Outcome::Tie,
                };
                vote(&format!("p{i}"), models[ai], models[bi], outcome)
            })
            .collect();
        let m = win_matrix(&votes);
        for i in 0..m.models.len() {
            for j in 0..m.models.len() {
                if let (Some(a), Some(b)) = (m.fractions[i][j], m.fractions[j][i]) {
                    assert!((a + b - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn csv_round_trips_and_disagreement() {
        let votes_csv = "pair_id,model_a,model_b,question,outcome\n\
                         p1,m1,m2,balance,A\n\
                         p1,m1,m2,balance,B\n\
                         p2,m1,m2,balance,tie\n\
                         p2,m1,m2,balance,A\n";
        let votes = read_votes(votes_csv.as_bytes()).unwrap();
        assert_eq!(votes.len(), 4);
        assert_eq!(votes[0].question, Question::Balance);
        // p1 has hard disagreement, p2 does not (tie is compatible)
        assert_eq!(hard_disagreement_rate(&votes), Some(0.5));

        let scores_csv = "video_id,model,prompt_id,r_motion,f_kin\n\
                          v1,m1,p1,0.9,0.8\n\
                          v2,m2,p1,0.4,0.3\n";
        let table = read_scores(scores_csv.as_bytes()).unwrap();
        assert_eq!(table.metrics, vec!["r_motion", "f_kin"]);
        assert_eq!(table.value("p1", "m1", 0), Some(0.9));
        assert_eq!(table.value("p1", "m2", 1), Some(0.3));
        assert_eq!(table.value("p9", "m1", 0), None);
    }

    #[test]
    fn shuffled_elo_is_deterministic_in_seed() {
        let votes: Vec<PairwiseVote> = (0..50)
            .map(|i| {
                vote(
                    &format!("p{i}"),
                    "m1",
                    "m2",
                    if i % 3 == 0 { Outcome::B } else { Outcome::A },
                )
            })
            .collect();
        let a = elo_ratings_shuffled(&votes, 7);
        let b = elo_ratings_shuffled(&votes, 7);
        assert_eq!(a, b);
    }
}
