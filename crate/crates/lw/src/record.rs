//! Flat report records for CSV and JSON lines.

use std::io::Write;

use lw_core::criteria::witness_value;
use lw_core::lattice::{Classification, Covering, LatticeSubset, Quadruple, Report};
use lw_core::pauli::LatticePoint;
use lw_core::states::lattice_state;
use serde::{Deserialize, Serialize};

use crate::pattern::{compact_pattern, format_mask};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub mask: String,
    pub n_points: usize,
    pub pattern: String,
    pub classification: String,
    pub evidence: String,
    /// `{(a,b),(a,b),(a,b),(a,b)}*w` terms joined by `;`.
    pub certificate: String,
    pub numeric_pt_min: Option<f64>,
    pub cross_check: Option<bool>,
}

fn point(p: LatticePoint) -> String {
    p.to_string()
}

pub fn format_covering(c: &Covering) -> String {
    c.entries.iter().map(|(q, w)| format!("{q}*{w}")).collect::<Vec<_>>().join(";")
}

/// Inverse of [`format_covering`]; quadruples are re-validated.
pub fn parse_covering(text: &str) -> Option<Covering> {
    let mut entries = Vec::new();
    for term in text.split(';').filter(|t| !t.is_empty()) {
        let (quad, w) = term.rsplit_once('*')?;
        let w: u32 = w.parse().ok()?;
        let inner = quad.strip_prefix('{')?.strip_suffix('}')?;
        let nums: Vec<u8> = inner
            .split(|c: char| !c.is_ascii_digit())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().ok())
            .collect::<Option<_>>()?;
        if nums.len() != 8 {
            return None;
        }
        let mut pts = [LatticePoint::from_bit(0); 4];
        for (k, slot) in pts.iter_mut().enumerate() {
            *slot = LatticePoint::new(nums[2 * k], nums[2 * k + 1]).ok()?;
        }
        entries.push((Quadruple::new(pts).ok()?, w));
    }
    Some(Covering { entries })
}

impl ReportRecord {
    pub fn from_report(r: &Report) -> Self {
        let (evidence, certificate) = match &r.classification {
            Classification::Separable { covering } => {
                let m = covering.uniform_multiplicity(r.subset).unwrap_or(0);
                (format!("M={m};N_Q={}", covering.n_quadruples()), format_covering(covering))
            }
            Classification::NptEntangled { pt_min_eigenvalue } => {
                (format!("pt_min={pt_min_eigenvalue:.12e}"), String::new())
            }
            Classification::PptEntangled { criterion, point: p, delta } => {
                let mut e = format!("{}@{}", criterion.name(), point(*p));
                if let Some(d) = delta {
                    e.push_str(&format!(";delta={d:.6}"));
                    if let Some(v) = diagonal_witness_value(r.subset, *p, *d) {
                        e.push_str(&format!(";witness_value={v:.12e}"));
                    }
                }
                (e, String::new())
            }
            Classification::Unknown => (String::new(), String::new()),
        };
        Self {
            mask: format_mask(r.subset),
            n_points: r.subset.len(),
            pattern: compact_pattern(r.subset),
            classification: r.classification.tag().to_string(),
            evidence,
            certificate,
            numeric_pt_min: r.numeric_pt_min,
            cross_check: r.cross_check_agrees(),
        }
    }
}

/// `Tr(W ρ_I)` for the diagonal witness at `p`, when `δ > 0`.
pub fn diagonal_witness_value(subset: LatticeSubset, p: LatticePoint, delta: f64) -> Option<f64> {
    if delta <= 0.0 {
        return None;
    }
    let w = lw_core::criteria::diagonal_lattice_witness(subset, p, delta).ok()?;
    witness_value(&w, &lattice_state(subset).ok()?).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

pub fn write_records<W: Write>(out: W, records: &[ReportRecord], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()
        }
        Format::Jsonl => {
            let mut out = std::io::BufWriter::new(out);
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}
