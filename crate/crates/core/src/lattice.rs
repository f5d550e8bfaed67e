//! Combinatorics of the 4×4 lattice `L16` of two-qubit Pauli words.
//!
//! A subset `I ⊆ L16` is a 16-bit mask with bit `4β + α` for the point
//! `(α, β)`. The same layout is used by the pattern parser and reports.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::criteria::{self, pt_min_eigenvalue};
use crate::maps::DEFAULT_SEED;
use crate::pauli::{tau, LatticePoint};
use crate::states::lattice_state;
use crate::{Error, Result};

pub const DEFAULT_MAX_MULTIPLICITY: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeSubset(u16);

impl LatticeSubset {
    pub const FULL: LatticeSubset = LatticeSubset(0xFFFF);

    pub const fn new(mask: u16) -> Self {
        Self(mask)
    }

    pub fn from_points(points: &[LatticePoint]) -> Self {
        Self(points.iter().fold(0, |m, p| m | 1 << p.bit()))
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    /// `N_I`
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, p: LatticePoint) -> bool {
        self.0 >> p.bit() & 1 == 1
    }

    /// `χ_I(α, β)`
    pub const fn chi(self, alpha: usize, beta: usize) -> usize {
        (self.0 >> (4 * beta + alpha) & 1) as usize
    }

    pub const fn is_subset_of(self, other: LatticeSubset) -> bool {
        self.0 & other.0 == self.0
    }

    pub const fn complement(self) -> Self {
        Self(!self.0)
    }

    pub fn points(self) -> impl Iterator<Item = LatticePoint> {
        (0..16u8).filter(move |b| self.0 >> b & 1 == 1).map(LatticePoint::from_bit)
    }

    /// `τ_t[I]`
    pub fn translate(self, t: LatticePoint) -> Self {
        Self(self.points().fold(0, |m, p| m | 1 << tau(t, p).bit()))
    }
}

impl fmt::Display for LatticeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#06x}", self.0)
    }
}

/// Points on column `α` and row `β`, the point itself excluded.
pub fn row_column_count(subset: LatticeSubset, p: LatticePoint) -> usize {
    let (a, b) = (p.a(), p.b());
    (0..4).filter(|&d| d != b).map(|d| subset.chi(a, d)).sum::<usize>()
        + (0..4).filter(|&d| d != a).map(|d| subset.chi(d, b)).sum::<usize>()
}

/// Combinatorial PPT test: every point sees at most `N_I / 2` points on its row and column.
pub fn ppt_combinatorial(subset: LatticeSubset) -> Result<bool> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(LatticePoint::all().all(|p| 2 * row_column_count(subset, p) <= subset.len()))
}

fn require_ppt(subset: LatticeSubset) -> Result<()> {
    if !ppt_combinatorial(subset)? {
        return Err(Error::NotPpt);
    }
    Ok(())
}

/// Points outside `I` with exactly one point of `I` on their row and column.
pub fn one_point_hits(subset: LatticeSubset) -> Result<Vec<LatticePoint>> {
    require_ppt(subset)?;
    Ok(LatticePoint::all().filter(|&p| !subset.contains(p) && row_column_count(subset, p) == 1).collect())
}

pub fn entangled_one_point(subset: LatticeSubset) -> Result<Option<LatticePoint>> {
    Ok(one_point_hits(subset)?.first().copied())
}

/// Points of `I` on the cross through `(μ⊕2, ν⊕2)`, the centre excluded.
///
/// `⊕` is addition mod 4; adding 2 coincides with the Pauli product `[2, ·]`.
pub fn k_value(subset: LatticeSubset, mu: u8, nu: u8) -> usize {
    let c = (mu as usize + 2) % 4;
    let r = (nu as usize + 2) % 4;
    (0..4).filter(|&a| a != c).map(|a| subset.chi(a, r)).sum::<usize>()
        + (0..4).filter(|&b| b != r).map(|b| subset.chi(c, b)).sum::<usize>()
}

pub fn k_hits(subset: LatticeSubset) -> Result<Vec<(u8, u8)>> {
    require_ppt(subset)?;
    let mut out = Vec::new();
    for nu in 0..4 {
        for mu in 0..4 {
            if k_value(subset, mu, nu) == 1 {
                out.push((mu, nu));
            }
        }
    }
    Ok(out)
}

pub fn k_criterion(subset: LatticeSubset) -> Result<Option<(u8, u8)>> {
    Ok(k_hits(subset)?.first().copied())
}

/// Four points whose Pauli words can be simultaneously aligned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple(u16);

const Q00_TRIPLES: [[(u8, u8); 3]; 15] = [
    [(0, 1), (1, 0), (1, 1)],
    [(0, 2), (2, 0), (2, 2)],
    [(0, 3), (3, 0), (3, 3)],
    [(0, 1), (2, 1), (2, 0)],
    [(0, 2), (1, 2), (1, 0)],
    [(0, 3), (1, 3), (1, 0)],
    [(0, 1), (3, 1), (3, 0)],
    [(0, 2), (3, 2), (3, 0)],
    [(0, 3), (2, 3), (2, 0)],
    [(1, 1), (2, 2), (3, 3)],
    [(1, 2), (2, 3), (3, 1)],
    [(1, 1), (2, 3), (3, 2)],
    [(1, 3), (2, 2), (3, 1)],
    [(1, 2), (2, 1), (3, 3)],
    [(1, 3), (2, 1), (3, 2)],
];

fn q00_masks() -> [u16; 15] {
    let mut out = [0u16; 15];
    for (slot, triple) in out.iter_mut().zip(&Q00_TRIPLES) {
        *slot = triple.iter().fold(1, |m, &(a, b)| m | 1 << (4 * b + a));
    }
    out
}

impl Quadruple {
    /// Fails unless the points are distinct and form a special quadruple.
    pub fn new(points: [LatticePoint; 4]) -> Result<Self> {
        if !is_special(points) {
            return Err(Error::BadParameter("not a special quadruple"));
        }
        Ok(Self(LatticeSubset::from_points(&points).mask()))
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    pub const fn subset(self) -> LatticeSubset {
        LatticeSubset(self.0)
    }

    /// Points in bit order.
    pub fn points(self) -> [LatticePoint; 4] {
        let mut out = [LatticePoint::from_bit(0); 4];
        for (slot, p) in out.iter_mut().zip(self.subset().points()) {
            *slot = p;
        }
        out
    }

    pub const fn contains(self, p: LatticePoint) -> bool {
        self.subset().contains(p)
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.points();
        write!(f, "{{{},{},{},{}}}", p[0], p[1], p[2], p[3])
    }
}

/// The 15 special quadruples through `(0,0)`.
pub fn quadruples_q00() -> Vec<Quadruple> {
    let mut v: Vec<Quadruple> = q00_masks().iter().map(|&m| Quadruple(m)).collect();
    v.sort();
    v
}

/// All 60 special quadruples, sorted by mask.
pub fn all_quadruples() -> Vec<Quadruple> {
    let mut v = Vec::with_capacity(240);
    for m in q00_masks() {
        for t in LatticePoint::all() {
            v.push(Quadruple(LatticeSubset(m).translate(t).mask()));
        }
    }
    v.sort();
    v.dedup();
    v
}

pub fn is_special(points: [LatticePoint; 4]) -> bool {
    let s = LatticeSubset::from_points(&points);
    if s.len() != 4 {
        return false;
    }
    let moved = s.translate(points[0]).mask();
    q00_masks().contains(&moved)
}

/// Special quadruples contained in `I`.
pub fn quadruples_in(subset: LatticeSubset) -> Vec<Quadruple> {
    all_quadruples().into_iter().filter(|q| q.subset().is_subset_of(subset)).collect()
}

/// Points of `I` not covered by any special quadruple inside `I`.
pub fn special_subset_points(subset: LatticeSubset) -> Vec<LatticePoint> {
    let covered = quadruples_in(subset).iter().fold(0u16, |m, q| m | q.mask());
    LatticeSubset(subset.mask() & !covered).points().collect()
}

pub fn special_subset_point(subset: LatticeSubset) -> Option<LatticePoint> {
    special_subset_points(subset).first().copied()
}

/// Integer weights on special quadruples inside a subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    pub entries: Vec<(Quadruple, u32)>,
}

impl Covering {
    /// `N_Q`, quadruples counted with weight.
    pub fn n_quadruples(&self) -> u32 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn point_multiplicity(&self, p: LatticePoint) -> u32 {
        self.entries.iter().filter(|(q, _)| q.contains(p)).map(|e| e.1).sum()
    }

    /// Common multiplicity `M` if every point of `I` is covered equally often.
    pub fn uniform_multiplicity(&self, subset: LatticeSubset) -> Option<u32> {
        if self.entries.iter().any(|(q, w)| *w == 0 || !q.subset().is_subset_of(subset)) {
            return None;
        }
        let mut pts = subset.points();
        let m = self.point_multiplicity(pts.next()?);
        if m == 0 || pts.any(|p| self.point_multiplicity(p) != m) {
            return None;
        }
        (4 * self.n_quadruples() == m * subset.len() as u32).then_some(m)
    }
}

/// A uniform covering of `I` with the smallest multiplicity `M ≤ max_multiplicity`.
pub fn uniform_covering(subset: LatticeSubset, max_multiplicity: u32) -> Option<Covering> {
    if subset.len() < 4 {
        return None;
    }
    let quads = quadruples_in(subset);
    let n = subset.len() as u32;
    for m in 1..=max_multiplicity {
        if (m * n) % 4 != 0 {
            continue;
        }
        if let Some(c) = CoverSearch::new(subset, &quads, m).run() {
            return Some(c);
        }
    }
    None
}

struct CoverSearch<'a> {
    quads: &'a [Quadruple],
    residual: [u32; 16],
    decided: Vec<bool>,
    weights: Vec<u32>,
}

impl<'a> CoverSearch<'a> {
    fn new(subset: LatticeSubset, quads: &'a [Quadruple], m: u32) -> Self {
        let mut residual = [0; 16];
        for p in subset.points() {
            residual[p.bit() as usize] = m;
        }
        Self { quads, residual, decided: vec![false; quads.len()], weights: vec![0; quads.len()] }
    }

    fn run(mut self) -> Option<Covering> {
        if !self.search() {
            return None;
        }
        let entries = self.quads.iter().zip(&self.weights).filter(|(_, &w)| w > 0).map(|(&q, &w)| (q, w)).collect();
        Some(Covering { entries })
    }

    fn cap(&self, q: Quadruple) -> u32 {
        q.subset().points().map(|p| self.residual[p.bit() as usize]).min().unwrap_or(0)
    }

    fn candidates(&self, bit: usize) -> Vec<usize> {
        (0..self.quads.len())
            .filter(|&k| !self.decided[k] && self.quads[k].mask() >> bit & 1 == 1 && self.cap(self.quads[k]) > 0)
            .collect()
    }

    fn add(&mut self, k: usize, w: u32, sign: bool) {
        for p in self.quads[k].subset().points() {
            let r = &mut self.residual[p.bit() as usize];
            if sign {
                *r -= w;
            } else {
                *r += w;
            }
        }
    }

    fn search(&mut self) -> bool {
        // most constrained live point first
        let mut best: Option<(usize, Vec<usize>)> = None;
        for bit in 0..16 {
            let need = self.residual[bit];
            if need == 0 {
                continue;
            }
            let cands = self.candidates(bit);
            let reach: u32 = cands.iter().map(|&k| self.cap(self.quads[k])).sum();
            if reach < need {
                return false;
            }
            if best.as_ref().map_or(true, |b| cands.len() < b.1.len()) {
                best = Some((bit, cands));
            }
        }
        let Some((bit, cands)) = best else {
            return true;
        };
        let k = cands[0];
        let cap = self.cap(self.quads[k]);
        let lo = if cands.len() == 1 { self.residual[bit] } else { 0 };
        if lo > cap {
            return false;
        }
        self.decided[k] = true;
        for w in (lo..=cap).rev() {
            self.add(k, w, true);
            self.weights[k] = w;
            if self.search() {
                return true;
            }
            self.add(k, w, false);
        }
        self.weights[k] = 0;
        self.decided[k] = false;
        false
    }
}

/// `ρ_I = Σ_j w_j ρ_{Q_j}` with `w_j = weight_j / N_Q`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub terms: Vec<(Quadruple, f64)>,
    /// Largest entrywise deviation from `ρ_I`.
    pub residual: f64,
    /// Every `ρ_Q` passed the numeric PPT test.
    pub all_ppt: bool,
}

pub fn separability_certificate(subset: LatticeSubset, covering: &Covering) -> Result<Decomposition> {
    if covering.uniform_multiplicity(subset).is_none() {
        return Err(Error::BadCovering);
    }
    let total = covering.n_quadruples() as f64;
    let target = lattice_state(subset)?;
    let mut sum = crate::CMat::zeros(16);
    let mut terms = Vec::new();
    let mut all_ppt = true;
    for &(q, w) in &covering.entries {
        let rho_q = lattice_state(q.subset())?;
        all_ppt &= pt_min_eigenvalue(&rho_q)? >= -criteria::DETECTION_TOL;
        sum = &sum + &rho_q.mat().scale(w as f64 / total);
        terms.push((q, w as f64 / total));
    }
    let residual = sum.max_abs_diff(target.mat());
    if residual >= 1e-12 {
        return Err(Error::BadCovering);
    }
    Ok(Decomposition { terms, residual, all_ppt })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    SpecialSubset,
    OnePoint,
    KCriterion,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::SpecialSubset => "special_subset",
            Criterion::OnePoint => "one_point",
            Criterion::KCriterion => "k_criterion",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    Separable { covering: Covering },
    NptEntangled { pt_min_eigenvalue: f64 },
    /// `point` is the special point, the outside point, or `(μ, ν)`, depending on the criterion.
    PptEntangled { criterion: Criterion, point: LatticePoint, delta: Option<f64> },
    Unknown,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Separable { .. } => "Separable",
            Classification::NptEntangled { .. } => "NptEntangled",
            Classification::PptEntangled { .. } => "PptEntangled",
            Classification::Unknown => "Unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub max_multiplicity: u32,
    /// Compute `max_delta` for special-subset points.
    pub witness: bool,
    pub seed: u64,
    /// Also compute the numeric PT spectrum for combinatorially PPT subsets.
    pub cross_validate: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { max_multiplicity: DEFAULT_MAX_MULTIPLICITY, witness: false, seed: DEFAULT_SEED, cross_validate: false }
    }
}

/// Everything the classifier looked at, not just the winning tag.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub subset: LatticeSubset,
    pub classification: Classification,
    pub combinatorial_ppt: bool,
    pub special_points: Vec<LatticePoint>,
    pub one_point: Vec<LatticePoint>,
    pub k_hits: Vec<(u8, u8)>,
    /// Smallest eigenvalue of `ρ_I^T2`, when computed.
    pub numeric_pt_min: Option<f64>,
}

impl Report {
    /// `None` when no numeric check was run.
    pub fn cross_check_agrees(&self) -> Option<bool> {
        self.numeric_pt_min.map(|m| (m >= -criteria::DETECTION_TOL) == self.combinatorial_ppt)
    }
}

pub fn classify(subset: LatticeSubset) -> Result<Classification> {
    Ok(classify_with(subset, &ClassifyOptions::default())?.classification)
}

pub fn classify_with(subset: LatticeSubset, opts: &ClassifyOptions) -> Result<Report> {
    let combinatorial_ppt = ppt_combinatorial(subset)?;
    let mut report = Report {
        subset,
        classification: Classification::Unknown,
        combinatorial_ppt,
        special_points: Vec::new(),
        one_point: Vec::new(),
        k_hits: Vec::new(),
        numeric_pt_min: None,
    };
    if !combinatorial_ppt || opts.cross_validate {
        report.numeric_pt_min = Some(pt_min_eigenvalue(&lattice_state(subset)?)?);
    }
    if !combinatorial_ppt {
        report.classification = Classification::NptEntangled { pt_min_eigenvalue: report.numeric_pt_min.unwrap() };
        return Ok(report);
    }

    report.special_points = special_subset_points(subset);
    report.one_point = one_point_hits(subset)?;
    report.k_hits = k_hits(subset)?;

    let pt = |(a, b): (u8, u8)| LatticePoint::new(a, b).expect("indices < 4");
    report.classification = if let Some(&p) = report.special_points.first() {
        let delta = if opts.witness { Some(criteria::max_delta(subset, p, opts.seed)?) } else { None };
        Classification::PptEntangled { criterion: Criterion::SpecialSubset, point: p, delta }
    } else if let Some(&p) = report.one_point.first() {
        Classification::PptEntangled { criterion: Criterion::OnePoint, point: p, delta: None }
    } else if let Some(&h) = report.k_hits.first() {
        Classification::PptEntangled { criterion: Criterion::KCriterion, point: pt(h), delta: None }
    } else if let Some(covering) = uniform_covering(subset, opts.max_multiplicity) {
        Classification::Separable { covering }
    } else {
        Classification::Unknown
    };
    Ok(report)
}

/// Classify every non-empty subset with mask in `range`, in mask order.
pub fn survey_range(range: core::ops::RangeInclusive<u16>, opts: &ClassifyOptions) -> Result<Vec<Report>> {
    range.filter(|&m| m != 0).map(|m| classify_with(LatticeSubset(m), opts)).collect()
}

/// All 65 535 non-empty subsets.
pub fn survey_all(opts: &ClassifyOptions) -> Result<Vec<Report>> {
    survey_range(1..=u16::MAX, opts)
}
