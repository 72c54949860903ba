//! CSV renderings of the corpus-level results. Floats are written in their
//! shortest round-trip form, so identical inputs give byte-identical files.

use serde::Serialize;

use super::run::{AblationRow, EvalOutcome, RefineRow, UncertaintyRow};
use crate::metrics::ThresholdSweep;

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().flexible(true).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

fn row<I, T>(w: &mut csv::Writer<Vec<u8>>, fields: I)
where
    I: IntoIterator<Item = T>,
    T: AsRef<[u8]>,
{
    w.write_record(fields).expect("in-memory writer");
}

/// One row per case, then a blank line and a Dice summary block
/// (standard deviation over the population).
pub fn eval_csv(outcome: &EvalOutcome) -> String {
    let mut w = writer();
    row(
        &mut w,
        [
            "case", "dice", "iou", "precision", "recall", "accuracy", "f1", "predicted", "reference",
            "intersection", "union", "both_empty",
        ],
    );
    for (name, r) in &outcome.rows {
        row(
            &mut w,
            [
                name.clone(),
                r.dice.to_string(),
                r.iou.to_string(),
                r.precision.to_string(),
                r.recall.to_string(),
                r.accuracy.to_string(),
                r.f1.to_string(),
                r.predicted.to_string(),
                r.reference.to_string(),
                r.intersection.to_string(),
                r.union.to_string(),
                r.both_empty.to_string(),
            ],
        );
    }
    for name in &outcome.missing {
        row(&mut w, [name.as_str(), "missing"]);
    }
    let mut out = finish(w);
    if let Some(s) = &outcome.summary {
        out.push('\n');
        let mut w = writer();
        row(&mut w, ["summary", "cases", "mean_dice", "std_dice_population", "max_dice", "min_dice"]);
        row(
            &mut w,
            [
                "dice".to_string(),
                s.reports.len().to_string(),
                s.mean.to_string(),
                s.std.to_string(),
                s.max.to_string(),
                s.min.to_string(),
            ],
        );
        out.push_str(&finish(w));
    }
    out
}

/// `beta,dice` rows followed by the argmax and the variance.
pub fn sweep_csv(sweep: &ThresholdSweep) -> String {
    let mut w = writer();
    row(&mut w, ["beta", "dice"]);
    for (b, d) in sweep.thresholds.iter().zip(&sweep.dice) {
        row(&mut w, [b.to_string(), d.to_string()]);
    }
    row(&mut w, ["argmax".to_string(), sweep.best_threshold.to_string(), sweep.best_dice.to_string()]);
    row(&mut w, ["variance_population".to_string(), sweep.variance.to_string()]);
    finish(w)
}

pub fn ablation_csv(rows: &[AblationRow]) -> String {
    let mut w = writer();
    row(
        &mut w,
        ["configuration", "cases", "max_dice", "min_dice", "mean_dice", "std_dice_population", "failures"],
    );
    for r in rows {
        row(
            &mut w,
            [
                r.variant.label().to_string(),
                r.dice.len().to_string(),
                r.max.to_string(),
                r.min.to_string(),
                r.mean.to_string(),
                r.std.to_string(),
                r.failures.to_string(),
            ],
        );
    }
    finish(w)
}

/// Fixed-width table in the `maxDice | minDice | mean +- std` layout, in percent.
pub fn ablation_table(rows: &[AblationRow]) -> String {
    let mut out = format!("{:<22}{:>9}{:>9}{:>18}\n", "configuration", "maxDice", "minDice", "Dice");
    for r in rows {
        out.push_str(&format!(
            "{:<22}{:>9.2}{:>9.2}{:>11.2} ± {:<5.2}\n",
            r.variant.label(),
            100.0 * r.max,
            100.0 * r.min,
            100.0 * r.mean,
            100.0 * r.std
        ));
    }
    out
}

pub fn uncertainty_csv(rows: &[UncertaintyRow]) -> String {
    serialize_rows(rows)
}

pub fn refine_csv(rows: &[RefineRow]) -> String {
    #[derive(Serialize)]
    struct Flat<'a> {
        case: &'a str,
        prior_dice: f64,
        dice: f64,
        failure: &'a str,
    }
    let flat: Vec<_> = rows
        .iter()
        .map(|r| Flat {
            case: &r.case,
            prior_dice: r.prior_dice,
            dice: r.dice,
            failure: r.failure.as_deref().unwrap_or(""),
        })
        .collect();
    serialize_rows(&flat)
}

fn serialize_rows<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory writer");
    }
    finish(w)
}
