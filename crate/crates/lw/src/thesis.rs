//! The worked examples of the thesis, rerun and compared with the printed results.

use lw_core::criteria::{ppt_check, pt_min_eigenvalue, realignment_check};
use lw_core::lattice::{
    classify_with, k_value, separability_certificate, Classification, ClassifyOptions, LatticeSubset,
};
use lw_core::pauli::LatticePoint;
use lw_core::states::{bell_state, tiles_upb, upb_complement_state, werner_state, BellKind, DensityMatrix};
use lw_core::{BipartiteDims, Result};

/// Masks of the named lattice examples, bit `4β + α`.
pub mod masks {
    pub const EX6_2A: u16 = 0x4948;
    pub const EX6_2B: u16 = 0x4241;
    pub const EX6_3A: u16 = 0xc9a0;
    pub const EX6_3B: u16 = 0xedc0;
    pub const EX6_4: u16 = 0x96bb;
    pub const EX6_5: u16 = 0x7f78;
    pub const EX10: u16 = 0xeee1;
    pub const RHO8: u16 = 0xeaa1;
    pub const RHO9: u16 = 0xeae1;
    pub const EX6_13: u16 = 0xc68d;
    pub const EX6_14: u16 = 0xf587;
    pub const EX6_15: u16 = 0xe1ef;
    pub const EX6_16: u16 = 0xe8ef;
    pub const SUMMARY_OPEN: u16 = 0x9b77;
    pub const SUMMARY_NPT: u16 = 0x99cf;
}

#[derive(Debug, Clone)]
pub struct Row {
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

/// `−1/3`, then `−0.30, −0.25, …, 1.00`.
pub fn werner_grid() -> Vec<f64> {
    std::iter::once(-1.0 / 3.0).chain((0..27).map(|k| -0.30 + 0.05 * k as f64)).collect()
}

fn pt(a: u8, b: u8) -> LatticePoint {
    LatticePoint::new(a, b).expect("indices < 4")
}

fn report(mask: u16) -> Result<lw_core::lattice::Report> {
    classify_with(LatticeSubset::new(mask), &ClassifyOptions::default())
}

fn row(name: &'static str, expected: impl Into<String>, observed: impl Into<String>, pass: bool) -> Row {
    Row { name, expected: expected.into(), observed: observed.into(), pass }
}

fn werner_row() -> Result<Row> {
    let grid = werner_grid();
    let mut worst = 0.0f64;
    let mut first_detected = None;
    for &a in &grid {
        let rho = werner_state(a)?;
        let pt = lw_core::linalg::partial_transpose(rho.mat(), rho.dims(), lw_core::Party::Second)?;
        let mut got = lw_core::linalg::hermitian_eig(&pt, 1e-12)?.values;
        got.sort_by(f64::total_cmp);
        let mut want = vec![(1.0 + a) / 4.0; 3];
        want.push((1.0 - 3.0 * a) / 4.0);
        want.sort_by(f64::total_cmp);
        worst = got.iter().zip(&want).fold(worst, |w, (g, e)| w.max((g - e).abs()));
        if first_detected.is_none() && ppt_check(&rho, 1e-9)?.detected {
            first_detected = Some(a);
        }
    }
    let boundary = first_detected.unwrap_or(f64::NAN);
    let pass = worst <= 1e-10 && (boundary - 1.0 / 3.0).abs() <= 0.05 + 1e-12;
    Ok(row(
        "werner sweep",
        "PT spectrum within 1e-10, boundary 1/3",
        format!("max error {worst:.1e}, first NPT at alpha={boundary:.2} ({} points)", grid.len()),
        pass,
    ))
}

fn bell_row() -> Result<Row> {
    let rho = DensityMatrix::pure(&bell_state(BellKind::PhiPlus), BipartiteDims::square(2))?;
    let m = pt_min_eigenvalue(&rho)?;
    Ok(row("bell PT", "-0.5", format!("{m:.12}"), (m + 0.5).abs() <= 1e-10))
}

fn tiles_row() -> Result<Row> {
    let rho = upb_complement_state(&tiles_upb(), BipartiteDims::square(3))?;
    let r = realignment_check(&rho)?;
    let p = ppt_check(&rho, 1e-9)?;
    Ok(row(
        "tiles realignment",
        "1.32 +/- 0.005, PPT",
        format!("{:.4}, PT min {:.1e}", r.evidence, p.evidence),
        (r.evidence - 1.32).abs() <= 0.005 && !p.detected,
    ))
}

fn npt_row(name: &'static str, mask: u16) -> Result<Row> {
    let r = report(mask)?;
    let ok = matches!(r.classification, Classification::NptEntangled { .. });
    Ok(row(name, "NptEntangled", r.classification.tag(), ok))
}

fn one_point_row(name: &'static str, mask: u16) -> Result<Row> {
    let r = report(mask)?;
    let ok = r.combinatorial_ppt && r.one_point.contains(&pt(0, 0));
    Ok(row(name, "PPT, one-point at (0,0)", format!("ppt={} one_point={:?}", r.combinatorial_ppt, pts(&r.one_point)), ok))
}

fn pts(p: &[LatticePoint]) -> Vec<String> {
    p.iter().map(|p| p.to_string()).collect()
}

fn ex6_4_row() -> Result<Row> {
    let r = report(masks::EX6_4)?;
    let k00 = k_value(r.subset, 0, 0);
    let ok = r.combinatorial_ppt && r.one_point.is_empty() && k00 == 1;
    Ok(row(
        "ex6.4",
        "PPT, one-point silent, k00=1",
        format!("ppt={} one_point={:?} k00={k00}", r.combinatorial_ppt, pts(&r.one_point)),
        ok,
    ))
}

fn ex6_5_row() -> Result<Row> {
    let r = report(masks::EX6_5)?;
    let ok = matches!(r.classification, Classification::PptEntangled { .. });
    Ok(row("ex6.5", "PptEntangled", r.classification.tag(), ok))
}

fn covering_row(name: &'static str, mask: u16, n_q: u32, m: Option<u32>) -> Result<Row> {
    let r = report(mask)?;
    let Classification::Separable { covering } = &r.classification else {
        return Ok(row(name, format!("Separable, N_Q={n_q}"), r.classification.tag(), false));
    };
    let got_m = covering.uniform_multiplicity(r.subset);
    let cert = separability_certificate(r.subset, covering)?;
    let ok = covering.n_quadruples() == n_q && m.map_or(true, |m| got_m == Some(m)) && cert.residual < 1e-12;
    let want = match m {
        Some(m) => format!("N_Q={n_q}, M={m}"),
        None => format!("N_Q={n_q}"),
    };
    Ok(row(
        name,
        want,
        format!("N_Q={}, M={}, residual {:.1e}", covering.n_quadruples(), got_m.unwrap_or(0), cert.residual),
        ok,
    ))
}

fn special_row(name: &'static str, mask: u16, p: LatticePoint) -> Result<Row> {
    let r = report(mask)?;
    let ok = r.combinatorial_ppt && r.special_points.contains(&p);
    Ok(row(
        name,
        format!("PPT special subset at {p}"),
        format!("{} special={:?}", r.classification.tag(), pts(&r.special_points)),
        ok,
    ))
}

fn tag_row(name: &'static str, mask: u16, tag: &'static str) -> Result<Row> {
    let r = report(mask)?;
    Ok(row(name, tag, r.classification.tag(), r.classification.tag() == tag))
}

pub fn verify_thesis() -> Result<Vec<Row>> {
    use masks::*;
    Ok(vec![
        werner_row()?,
        bell_row()?,
        tiles_row()?,
        npt_row("ex6.2 (a)", EX6_2A)?,
        npt_row("ex6.2 (b)", EX6_2B)?,
        one_point_row("ex6.3 (a)", EX6_3A)?,
        one_point_row("ex6.3 (b)", EX6_3B)?,
        ex6_4_row()?,
        ex6_5_row()?,
        covering_row("Ex10 covering", EX10, 5, Some(2))?,
        covering_row("ex6.12 rho8", RHO8, 4, None)?,
        covering_row("ex6.12 rho9", RHO9, 9, None)?,
        special_row("ex6.13", EX6_13, pt(0, 0))?,
        special_row("ex6.14", EX6_14, pt(3, 3))?,
        special_row("ex6.15", EX6_15, pt(0, 0))?,
        npt_row("ex6.16", EX6_16)?,
        tag_row("summary open pattern", SUMMARY_OPEN, "Unknown")?,
        tag_row("summary NPT pattern", SUMMARY_NPT, "NptEntangled")?,
    ])
}
