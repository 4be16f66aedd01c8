use std::time::Instant;

use rayon::prelude::*;

use rivalloc::{solve_centroid, Instance, SolveReport, SolverMode};

use crate::io::InstanceFile;

pub struct Case {
    pub label: String,
    pub file: InstanceFile,
    pub inst: Instance,
}

pub struct Row {
    pub label: String,
    pub n: usize,
    /// One entry per mode, in [`SolverMode::ALL`] order.
    pub results: Vec<Result<(SolveReport, f64), String>>,
}

impl Row {
    pub fn agrees(&self) -> bool {
        let mut losses = self.results.iter().map(|r| r.as_ref().ok().map(|(rep, _)| rep.weight_loss));
        let Some(Some(first)) = losses.next() else { return false };
        losses.all(|w| w == Some(first))
    }
}

/// Runs every mode on every case. `fault` adds one unit to the parametric
/// weight loss, to exercise the disagreement path.
pub fn run(cases: &[Case], fault: bool) -> Vec<Row> {
    cases
        .par_iter()
        .map(|c| Row {
            label: c.label.clone(),
            n: c.inst.len(),
            results: SolverMode::ALL
                .iter()
                .map(|&m| {
                    let start = Instant::now();
                    let mut rep = solve_centroid(&c.inst, m).map_err(|e| e.to_string())?;
                    if fault && m == SolverMode::Parametric {
                        rep.weight_loss += 1.0;
                    }
                    Ok((rep, start.elapsed().as_secs_f64() * 1e3))
                })
                .collect(),
        })
        .collect()
}

pub fn table(rows: &[Row]) -> String {
    let mut out = format!(
        "{:<12} {:>4} {:>12} {:>12} {:>12} {:>10} {:>10} {:>10} {:>8} {:>6}\n",
        "instance", "n", "parametric", "intermediate", "brute", "par ms", "int ms", "brute ms", "oracle", "agree"
    );
    for row in rows {
        let loss = |i: usize| match &row.results[i] {
            Ok((r, _)) => format!("{}", r.weight_loss),
            Err(_) => "error".to_string(),
        };
        let ms = |i: usize| match &row.results[i] {
            Ok((_, t)) => format!("{t:.2}"),
            Err(_) => "-".to_string(),
        };
        let oracle = match &row.results[0] {
            Ok((r, _)) => r.telemetry.oracle_calls.to_string(),
            Err(_) => "-".to_string(),
        };
        out.push_str(&format!(
            "{:<12} {:>4} {:>12} {:>12} {:>12} {:>10} {:>10} {:>10} {:>8} {:>6}\n",
            row.label,
            row.n,
            loss(0),
            loss(1),
            loss(2),
            ms(0),
            ms(1),
            ms(2),
            oracle,
            if row.agrees() { "yes" } else { "NO" }
        ));
        for (m, r) in SolverMode::ALL.iter().zip(&row.results) {
            if let Err(e) = r {
                out.push_str(&format!("  {m} failed: {e}\n"));
            }
        }
    }
    out
}
