//! Classification and regression scores: confusion matrix, per-class
//! precision/recall/F1, micro-F1, macro one-vs-rest AUC and MAE.
//!
//! Undefined ratios (zero denominators) are reported as 0 with a flag set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::dataset::Task;
use crate::error::{Error, Result};
use crate::model::DiffusionModelKind;

pub const NUM_CLASSES: usize = DiffusionModelKind::COUNT;

/// counts[i][j]: records of true class i predicted as j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub counts: [[u64; NUM_CLASSES]; NUM_CLASSES],
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn row_sum(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    pub fn col_sum(&self, class: usize) -> u64 {
        self.counts.iter().map(|row| row[class]).sum()
    }

    pub fn correct(&self) -> u64 {
        (0..NUM_CLASSES).map(|i| self.counts[i][i]).sum()
    }
}

fn check_code(code: u32) -> Result<usize> {
    if (code as usize) < NUM_CLASSES {
        Ok(code as usize)
    } else {
        Err(Error::InvalidClass(code))
    }
}

pub fn confusion_matrix(truth: &[u32], pred: &[u32]) -> Result<ConfusionMatrix> {
    if truth.len() != pred.len() {
        return Err(Error::LengthMismatch(format!("{} labels vs {} predictions", truth.len(), pred.len())));
    }
    if truth.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut cm = ConfusionMatrix::default();
    for (&t, &p) in truth.iter().zip(pred) {
        cm.counts[check_code(t)?][check_code(p)?] += 1;
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
    /// No record was predicted as this class.
    pub precision_undefined: bool,
    /// No record of this class in the truth.
    pub recall_undefined: bool,
    /// precision + recall == 0.
    pub f1_undefined: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F1Summary {
    pub per_class: [ClassScores; NUM_CLASSES],
    /// Total correct over total; equals accuracy for single-label predictions.
    pub micro_f1: f64,
    pub accuracy: f64,
}

fn ratio(num: u64, den: u64) -> (f64, bool) {
    if den == 0 {
        (0.0, true)
    } else {
        (num as f64 / den as f64, false)
    }
}

pub fn precision_recall_f1(cm: &ConfusionMatrix) -> F1Summary {
    let mut per_class = [ClassScores::default(); NUM_CLASSES];
    for (c, scores) in per_class.iter_mut().enumerate() {
        let tp = cm.counts[c][c];
        let (precision, precision_undefined) = ratio(tp, cm.col_sum(c));
        let (recall, recall_undefined) = ratio(tp, cm.row_sum(c));
        let (f1, f1_undefined) = if precision + recall > 0.0 {
            (2.0 * precision * recall / (precision + recall), false)
        } else {
            (0.0, true)
        };
        *scores = ClassScores {
            precision,
            recall,
            f1,
            support: cm.row_sum(c),
            precision_undefined,
            recall_undefined,
            f1_undefined,
        };
    }
    let (accuracy, _) = ratio(cm.correct(), cm.total());
    F1Summary {
        per_class,
        micro_f1: accuracy,
        accuracy,
    }
}

/// (1/N) Σ |pred − truth|.
pub fn mae(truth: &[f64], pred: &[f64]) -> Result<f64> {
    if truth.len() != pred.len() {
        return Err(Error::LengthMismatch(format!("{} truths vs {} predictions", truth.len(), pred.len())));
    }
    if truth.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: f64 = truth.iter().zip(pred).map(|(t, p)| (p - t).abs()).sum();
    Ok(sum / truth.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AucResult {
    /// Macro average over classes that have both positives and negatives.
    pub macro_auc: f64,
    pub per_class: [Option<f64>; NUM_CLASSES],
    /// Classes left out because they are absent from (or make up all of) the truth.
    pub skipped: Vec<u32>,
}

/// Mann–Whitney AUC of `positives` against `negatives`; ties earn half credit.
/// Computed from midranks in O(n log n).
pub fn binary_auc(positives: &[f64], negatives: &[f64]) -> Option<f64> {
    if positives.is_empty() || negatives.is_empty() {
        return None;
    }
    let mut all: Vec<(f64, bool)> = positives
        .iter()
        .map(|&s| (s, true))
        .chain(negatives.iter().map(|&s| (s, false)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j + 1 < all.len() && all[j + 1].0 == all[i].0 {
            j += 1;
        }
        // ranks i+1..=j+1 share their mean
        let mid = (i + j) as f64 / 2.0 + 1.0;
        rank_sum += mid * all[i..=j].iter().filter(|e| e.1).count() as f64;
        i = j + 1;
    }
    let p = positives.len() as f64;
    let n = negatives.len() as f64;
    Some((rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

/// Macro one-vs-rest AUC.
pub fn auc_ovr(truth: &[u32], scores: &[[f64; NUM_CLASSES]]) -> Result<AucResult> {
    if truth.len() != scores.len() {
        return Err(Error::LengthMismatch(format!("{} labels vs {} score rows", truth.len(), scores.len())));
    }
    if truth.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (k, row) in scores.iter().enumerate() {
        if row.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidPredictions(format!("non-finite score in row {k}")));
        }
    }
    let mut per_class = [None; NUM_CLASSES];
    let mut skipped = Vec::new();
    for c in 0..NUM_CLASSES {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (&t, row) in truth.iter().zip(scores) {
            if check_code(t)? == c {
                pos.push(row[c]);
            } else {
                neg.push(row[c]);
            }
        }
        per_class[c] = binary_auc(&pos, &neg);
        if per_class[c].is_none() {
            skipped.push(c as u32);
        }
    }
    let active: Vec<f64> = per_class.iter().flatten().copied().collect();
    let macro_auc = if active.is_empty() {
        0.0
    } else {
        active.iter().sum::<f64>() / active.len() as f64
    };
    Ok(AucResult {
        macro_auc,
        per_class,
        skipped,
    })
}

/// Ground truth for one manifest row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthRow {
    pub id: u64,
    pub model: DiffusionModelKind,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassPrediction {
    pub id: u64,
    pub code: u32,
    pub scores: Option<[f64; NUM_CLASSES]>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaPrediction {
    pub id: u64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PredictionSet {
    Classification(Vec<ClassPrediction>),
    Regression(Vec<AlphaPrediction>),
}

impl PredictionSet {
    pub fn task(&self) -> Task {
        match self {
            Self::Classification(_) => Task::Classification,
            Self::Regression(_) => Task::Regression,
        }
    }

    fn ids(&self) -> Vec<u64> {
        match self {
            Self::Classification(p) => p.iter().map(|r| r.id).collect(),
            Self::Regression(p) => p.iter().map(|r| r.id).collect(),
        }
    }
}

/// Maps each prediction id to its truth row. Prediction ids must be unique
/// and a nonempty subset of the truth ids.
pub fn align<'a>(truth: &'a [TruthRow], ids: &[u64]) -> Result<Vec<&'a TruthRow>> {
    let index: BTreeMap<u64, &TruthRow> = truth.iter().map(|r| (r.id, r)).collect();
    let mut seen = BTreeSet::new();
    let mut extra = Vec::new();
    let mut duplicate = Vec::new();
    let mut out = Vec::with_capacity(ids.len());
    for &id in ids {
        if !seen.insert(id) {
            duplicate.push(id);
            continue;
        }
        match index.get(&id) {
            Some(row) => out.push(*row),
            None => extra.push(id),
        }
    }
    if !extra.is_empty() || !duplicate.is_empty() || out.is_empty() {
        let missing = if out.is_empty() {
            index.keys().copied().take(20).collect()
        } else {
            Vec::new()
        };
        return Err(Error::IdMismatch {
            missing,
            extra,
            duplicate,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub task: Task,
    pub scored: usize,
    /// Truth rows without a prediction.
    pub unscored: usize,
    /// True-class counts among scored records.
    pub support: [u64; NUM_CLASSES],
    pub confusion: Option<ConfusionMatrix>,
    pub scores: Option<F1Summary>,
    pub auc: Option<AucResult>,
    pub mae: Option<f64>,
}

pub fn evaluate(truth: &[TruthRow], predictions: &PredictionSet, task: Task) -> Result<EvaluationReport> {
    if predictions.task() != task {
        return Err(Error::InvalidPredictions(format!(
            "task is {} but predictions are for {}",
            task.name(),
            predictions.task().name()
        )));
    }
    let aligned = align(truth, &predictions.ids())?;
    let mut support = [0u64; NUM_CLASSES];
    for row in &aligned {
        support[row.model.code() as usize] += 1;
    }
    let mut report = EvaluationReport {
        task,
        scored: aligned.len(),
        unscored: truth.len() - aligned.len(),
        support,
        confusion: None,
        scores: None,
        auc: None,
        mae: None,
    };
    match predictions {
        PredictionSet::Classification(preds) => {
            let labels: Vec<u32> = aligned.iter().map(|r| r.model.code()).collect();
            let codes: Vec<u32> = preds.iter().map(|p| p.code).collect();
            let cm = confusion_matrix(&labels, &codes)?;
            report.scores = Some(precision_recall_f1(&cm));
            report.confusion = Some(cm);
            let with_scores = preds.iter().filter(|p| p.scores.is_some()).count();
            if with_scores == preds.len() {
                let rows: Vec<[f64; NUM_CLASSES]> = preds.iter().filter_map(|p| p.scores).collect();
                report.auc = Some(auc_ovr(&labels, &rows)?);
            } else if with_scores != 0 {
                return Err(Error::InvalidPredictions(format!(
                    "{with_scores} of {} rows carry scores; scores must be all or none",
                    preds.len()
                )));
            }
        }
        PredictionSet::Regression(preds) => {
            if let Some(p) = preds.iter().find(|p| !p.alpha.is_finite()) {
                return Err(Error::InvalidPredictions(format!("non-finite alpha for id {}", p.id)));
            }
            let t: Vec<f64> = aligned.iter().map(|r| r.alpha).collect();
            let p: Vec<f64> = preds.iter().map(|p| p.alpha).collect();
            report.mae = Some(mae(&t, &p)?);
        }
    }
    Ok(report)
}
