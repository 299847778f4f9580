//! Versioned machine-readable output and its human-readable rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use nonclassical::detect::{DetectionVerdict, Outcome};
use nonclassical::{MeasureReport, Tolerances};

pub const SCHEMA: &str = "ncm-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub dims: [usize; 2],
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection: Option<DetectionVerdict>,
}

impl Report {
    pub fn new(dims: [usize; 2], tolerances: Tolerances) -> Self {
        Self {
            schema: SCHEMA.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            dims,
            tolerances,
            measure: None,
            detection: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let [da, db] = self.dims;
        writeln!(out, "state: {da}x{db}").unwrap();
        if let Some(m) = &self.measure {
            measure_text(&mut out, m);
        }
        if let Some(d) = &self.detection {
            detection_text(&mut out, d);
        }
        tolerance_text(&mut out, &self.tolerances);
        out
    }
}

fn measure_text(out: &mut String, m: &MeasureReport) {
    writeln!(
        out,
        "M   = {:.6}\nM^A = {:.6}\nM^B = {:.6}",
        m.m, m.m_a, m.m_b
    )
    .unwrap();
    if !m.per_component.is_empty() {
        writeln!(
            out,
            "{:>12} {:>5} {:>12} {:>12}",
            "eta", "mult", "M^A part", "M^B part"
        )
        .unwrap();
        for c in &m.per_component {
            writeln!(
                out,
                "{:>12.6} {:>5} {:>12.6} {:>12.6}",
                c.eta, c.mult, c.contribution_a, c.contribution_b
            )
            .unwrap();
        }
    }
    if let Some(p) = &m.partition {
        writeln!(
            out,
            "G   = {:.6}  (F^A = {:.6}, F^B = {:.6})",
            p.g, p.f_a, p.f_b
        )
        .unwrap();
    }
    if let Some(e) = &m.entropies {
        writeln!(
            out,
            "S(rho) = {:.6}, S(A) = {:.6}, S(B) = {:.6}",
            e.total, e.reduced_a, e.reduced_b
        )
        .unwrap();
    }
    if let Some(p) = m.ppt_min_eigenvalue {
        writeln!(out, "min eigenvalue of partial transpose = {p:.6}").unwrap();
    }
}

fn detection_text(out: &mut String, d: &DetectionVerdict) {
    let verdict = serde_json::to_value(d.verdict).expect("plain enum");
    write!(out, "verdict: {}", verdict.as_str().unwrap_or("?")).unwrap();
    match d.decided_by {
        Some(t) => writeln!(out, " (via {})", t.label()).unwrap(),
        None => out.push('\n'),
    }
    for e in &d.evidence {
        let tag = match e.outcome {
            Outcome::Classical => "classical",
            Outcome::Nonclassical => "nonclassical",
            Outcome::Inconclusive => "inconclusive",
            Outcome::NotApplicable => "n/a",
        };
        writeln!(out, "  {}: {} [{tag}]", e.test.label(), e.detail).unwrap();
    }
    if let Some(b) = &d.basis {
        writeln!(
            out,
            "product eigenbasis ({} x {} vectors):",
            b.basis_a.len(),
            b.basis_b.len()
        )
        .unwrap();
        for (j, row) in b.weights.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|w| format!("{w:.6}")).collect();
            writeln!(out, "  e[{j}][*] = {}", cells.join(" ")).unwrap();
        }
        if let Some(r) = d.basis_residual {
            writeln!(out, "  reconstruction residual {r:.3e}").unwrap();
        }
    }
}

fn tolerance_text(out: &mut String, t: &Tolerances) {
    writeln!(
        out,
        "tolerances: herm {:e}, trace {:e}, psd {:e}, recon {:e}, orth {:e}, deg {:e}, zero {:e}, rank {:e}, tie {:e}, offdiag {:e}, comm {:e}, vec {:e}, measure {:e}, partition guard {}",
        t.herm, t.trace, t.psd, t.recon, t.orth, t.deg, t.zero, t.rank, t.tie, t.offdiag, t.comm, t.vec, t.measure, t.partition_guard
    )
    .unwrap();
}
