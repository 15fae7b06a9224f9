//! Evaluation report rendering: JSON, text table and confusion CSV.

use std::fmt::Write;

use gafdiff_core::metrics::{ConfusionMatrix, EvaluationReport};
use gafdiff_core::DiffusionModelKind;
use serde_json::{json, Value};

fn name(c: usize) -> &'static str {
    DiffusionModelKind::ALL[c].name()
}

pub fn report_json(r: &EvaluationReport) -> Value {
    let mut out = json!({
        "task": r.task.name(),
        "scored": r.scored,
        "unscored": r.unscored,
        "support": (0..r.support.len()).map(|c| (name(c).to_string(), json!(r.support[c]))).collect::<serde_json::Map<_, _>>(),
        "metadata": {"f1_averaging": "micro", "auc_averaging": "macro one-vs-rest", "undefined_ratio": "reported as 0 and flagged"},
    });
    if let Some(s) = &r.scores {
        out["micro_f1"] = json!(s.micro_f1);
        out["accuracy"] = json!(s.accuracy);
        out["per_class"] = s
            .per_class
            .iter()
            .enumerate()
            .map(|(c, k)| {
                let flags: Vec<&str> = [
                    (k.precision_undefined, "precision_undefined"),
                    (k.recall_undefined, "recall_undefined"),
                    (k.f1_undefined, "f1_undefined"),
                ]
                .into_iter()
                .filter_map(|(on, f)| on.then_some(f))
                .collect();
                json!({"model": name(c), "precision": k.precision, "recall": k.recall, "f1": k.f1, "support": k.support, "flags": flags})
            })
            .collect();
    }
    if let Some(cm) = &r.confusion {
        out["confusion"] = json!(cm.counts);
        out["confusion_labels"] = json!(DiffusionModelKind::ALL.map(|m| m.name()));
    }
    if let Some(a) = &r.auc {
        out["auc"] = json!({
            "macro": a.macro_auc,
            "per_class": (0..a.per_class.len()).map(|c| (name(c).to_string(), json!(a.per_class[c]))).collect::<serde_json::Map<_, _>>(),
            "skipped": a.skipped.iter().map(|&c| name(c as usize)).collect::<Vec<_>>(),
        });
    }
    if let Some(m) = r.mae {
        out["mae"] = json!(m);
    }
    out
}

pub fn report_table(r: &EvaluationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "task: {}  scored: {}  unscored: {}", r.task.name(), r.scored, r.unscored);
    if let Some(sc) = &r.scores {
        let _ = writeln!(s, "{:<6} {:>9} {:>9} {:>9} {:>8}", "model", "precision", "recall", "f1", "support");
        for (c, k) in sc.per_class.iter().enumerate() {
            let mark = if k.precision_undefined || k.recall_undefined || k.f1_undefined { " *" } else { "" };
            let _ = writeln!(
                s,
                "{:<6} {:>9.4} {:>9.4} {:>9.4} {:>8}{mark}",
                name(c),
                k.precision,
                k.recall,
                k.f1,
                k.support
            );
        }
        let _ = writeln!(s, "micro-F1: {:.4}", sc.micro_f1);
    }
    if let Some(cm) = &r.confusion {
        let _ = write!(s, "{:<6}", "true\\pred");
        for c in 0..cm.counts.len() {
            let _ = write!(s, " {:>7}", name(c));
        }
        s.push('\n');
        for (i, row) in cm.counts.iter().enumerate() {
            let _ = write!(s, "{:<9}", name(i));
            for v in row {
                let _ = write!(s, " {v:>7}");
            }
            s.push('\n');
        }
    }
    if let Some(a) = &r.auc {
        let _ = writeln!(s, "AUC (macro OVR): {:.4}", a.macro_auc);
        if !a.skipped.is_empty() {
            let names: Vec<&str> = a.skipped.iter().map(|&c| name(c as usize)).collect();
            let _ = writeln!(s, "AUC skipped classes: {}", names.join(", "));
        }
    }
    if let Some(m) = r.mae {
        let _ = writeln!(s, "MAE: {m:.4}");
    }
    if r.scores.as_ref().is_some_and(|sc| {
        sc.per_class.iter().any(|k| k.precision_undefined || k.recall_undefined || k.f1_undefined)
    }) {
        let _ = writeln!(s, "* zero denominator, reported as 0");
    }
    s
}

pub fn confusion_csv(cm: &ConfusionMatrix) -> String {
    let mut s = String::from("true\\pred");
    for m in DiffusionModelKind::ALL {
        s.push(',');
        s.push_str(m.name());
    }
    s.push('\n');
    for (i, row) in cm.counts.iter().enumerate() {
        s.push_str(name(i));
        for v in row {
            let _ = write!(s, ",{v}");
        }
        s.push('\n');
    }
    s
}
