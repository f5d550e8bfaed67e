//! Entanglement criteria for bipartite density matrices and witnesses.
//!
//! Everything that depends on a product-vector optimisation is heuristic in
//! one direction: a violation that is found is a proof, the absence of one
//! is not.

use alloc::vec::Vec;

use crate::lattice::LatticeSubset;
use crate::linalg::{self, hermitian_eig, BipartiteDims, CMat, Party, C64};
use crate::maps::{self, choi_of_diag, restart_rng, random_unit, Sense, SigmaDiagMap, DEFAULT_RESTARTS};
use crate::pauli::{word_matrix, LatticePoint, PauliWord};
use crate::states::DensityMatrix;
use crate::{Error, Result};

pub const DETECTION_TOL: f64 = 1e-9;
const KERNEL_TOL: f64 = 1e-9;
const DELTA_MAX: f64 = 4.0;
const DELTA_RESOLUTION: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionVerdict {
    pub name: &'static str,
    pub detected: bool,
    /// Smallest eigenvalue, trace norm or witness value, depending on the test.
    pub evidence: f64,
}

/// Minimum eigenvalue of the partial transpose on the second party.
pub fn pt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    let pt = linalg::partial_transpose(rho.mat(), rho.dims(), Party::Second)?;
    linalg::min_eigenvalue(&pt, 1e-9)
}

pub fn ppt_check(rho: &DensityMatrix, tol: f64) -> Result<CriterionVerdict> {
    let min = pt_min_eigenvalue(rho)?;
    Ok(CriterionVerdict { name: "ppt", detected: min < -tol, evidence: min })
}

pub fn realignment_check(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    let dims = rho.dims();
    if dims.d1 != dims.d2 {
        return Err(Error::NonSquareParties(dims.d1, dims.d2));
    }
    let norm = linalg::trace_norm(&linalg::reshuffle(rho.mat(), dims)?)?;
    Ok(CriterionVerdict { name: "realignment", detected: norm > 1.0 + DETECTION_TOL, evidence: norm })
}

/// Smallest eigenvalue of `1 ⊗ ρ_2 − ρ` and `ρ_1 ⊗ 1 − ρ`.
pub fn reduction_check(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    let dims = rho.dims();
    let r1 = linalg::partial_trace(rho.mat(), dims, Party::Second)?;
    let r2 = linalg::partial_trace(rho.mat(), dims, Party::First)?;
    let a = &linalg::tensor(&CMat::identity(dims.d1), &r2) - rho.mat();
    let b = &linalg::tensor(&r1, &CMat::identity(dims.d2)) - rho.mat();
    let min = linalg::min_eigenvalue(&a, 1e-9)?.min(linalg::min_eigenvalue(&b, 1e-9)?);
    Ok(CriterionVerdict { name: "reduction", detected: min < -DETECTION_TOL, evidence: min })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WitnessKind {
    DiagonalLattice { point: LatticePoint, delta: f64 },
    EdgeState,
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    mat: CMat,
    dims: BipartiteDims,
    kind: WitnessKind,
}

impl Witness {
    pub fn new(mat: CMat, dims: BipartiteDims, kind: WitnessKind) -> Result<Self> {
        if mat.dim() != dims.total() {
            return Err(Error::DimMismatch { expected: dims.total(), found: mat.dim() });
        }
        let dev = mat.hermitian_deviation();
        if dev > 1e-10 {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { mat, dims, kind })
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    /// Rescaled to unit trace. Signs of `Tr(Wρ)` are unchanged.
    pub fn normalized(&self) -> Result<Self> {
        let t = self.mat.trace().re;
        if !(t > 0.0) {
            return Err(Error::BadParameter("witness trace must be positive to normalise"));
        }
        Ok(Self { mat: self.mat.scale(1.0 / t), ..self.clone() })
    }

    /// Smallest `⟨e⊗f|W|e⊗f⟩` the see-saw finds.
    pub fn product_minimum(&self, restarts: usize, seed: u64) -> Result<maps::ProductExtremum> {
        maps::product_extremum(&self.mat, self.dims, Sense::Min, restarts, seed)
    }
}

/// `Tr(Wρ)`
pub fn witness_value(w: &Witness, rho: &DensityMatrix) -> Result<f64> {
    if w.dims != rho.dims() {
        return Err(Error::DimMismatch { expected: w.dims.total(), found: rho.dims().total() });
    }
    let (a, b) = (w.mat(), rho.mat());
    let n = a.dim();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(s.re)
}

/// Coefficients `1/4` off `I`, `−δ/4` at `p`, zero elsewhere on `I`.
pub fn diagonal_lattice_map(subset: LatticeSubset, p: LatticePoint, delta: f64) -> Result<SigmaDiagMap> {
    if !subset.contains(p) {
        return Err(Error::PointNotInSubset(p.alpha.value(), p.beta.value()));
    }
    if !(delta > 0.0) {
        return Err(Error::BadParameter("delta must be positive"));
    }
    Ok(SigmaDiagMap::from_points(|q| {
        if q == p {
            -delta / 4.0
        } else if subset.contains(q) {
            0.0
        } else {
            0.25
        }
    }))
}

pub fn diagonal_lattice_witness(subset: LatticeSubset, p: LatticePoint, delta: f64) -> Result<Witness> {
    let map = diagonal_lattice_map(subset, p, delta)?;
    let choi = choi_of_diag(&map)?;
    Witness::new(choi.choi().clone(), BipartiteDims::square(4), WitnessKind::DiagonalLattice { point: p, delta })
}

/// `Δ = (δ/4)|⟨φ|σ_p|ψ⟩|² + (1/4) Σ_{q∈I} |⟨φ|σ_q|ψ⟩|²`, maximised by see-saw.
pub struct DeltaFunctional {
    terms: Vec<(f64, CMat)>,
}

impl DeltaFunctional {
    pub fn new(subset: LatticeSubset, p: LatticePoint, delta: f64) -> Result<Self> {
        if !subset.contains(p) {
            return Err(Error::PointNotInSubset(p.alpha.value(), p.beta.value()));
        }
        let mut terms = Vec::new();
        for q in subset.points() {
            let w = if q == p { (1.0 + delta) / 4.0 } else { 0.25 };
            terms.push((w, word_matrix(&PauliWord::from(q))?));
        }
        Ok(Self { terms })
    }

    /// `Σ w σ|v⟩⟨v|σ`; symmetric in the roles of `ψ` and `φ`.
    fn conditional(&self, v: &[C64]) -> CMat {
        let mut m = CMat::zeros(4);
        for (w, s) in &self.terms {
            let u = s.mul_vec(v);
            for i in 0..4 {
                for j in 0..4 {
                    m[(i, j)] += u[i] * u[j].conj() * *w;
                }
            }
        }
        m
    }

    pub fn value(&self, psi: &[C64], phi: &[C64]) -> f64 {
        self.conditional(psi).expectation(phi).re
    }

    pub fn maximize(&self, restarts: usize, seed: u64) -> Result<f64> {
        self.search(restarts, seed, f64::INFINITY)
    }

    /// Whether some restart pushes `Δ` above `threshold`; stops at the first that does.
    pub fn exceeds(&self, threshold: f64, restarts: usize, seed: u64) -> Result<bool> {
        Ok(self.search(restarts, seed, threshold)? > threshold)
    }

    fn search(&self, restarts: usize, seed: u64, stop_above: f64) -> Result<f64> {
        let mut best = f64::NEG_INFINITY;
        for r in 0..restarts.max(1) {
            let mut rng = restart_rng(seed, r);
            let mut psi = random_unit(&mut rng, 4);
            let mut last = f64::NEG_INFINITY;
            for _ in 0..500 {
                let (_, phi) = maps::extreme_vector(&self.conditional(&psi), Sense::Max)?;
                let (v, p) = maps::extreme_vector(&self.conditional(&phi), Sense::Max)?;
                psi = p;
                let done = (v - last).abs() < 1e-10 || v > stop_above;
                last = v;
                if done {
                    break;
                }
            }
            best = best.max(last);
            if best > stop_above {
                break;
            }
        }
        Ok(best)
    }
}

/// Largest `δ ∈ (0, 4]` (to `1e-4`) for which the see-saw finds no `Δ > 1 + 1e-9`.
/// Zero when even the smallest step is violated. Heuristic upper bound.
pub fn max_delta(subset: LatticeSubset, p: LatticePoint, seed: u64) -> Result<f64> {
    max_delta_with(subset, p, seed, DEFAULT_RESTARTS)
}

pub fn max_delta_with(subset: LatticeSubset, p: LatticePoint, seed: u64, restarts: usize) -> Result<f64> {
    let ok = |delta: f64| -> Result<bool> {
        Ok(!DeltaFunctional::new(subset, p, delta)?.exceeds(1.0 + DETECTION_TOL, restarts, seed)?)
    };
    if ok(DELTA_MAX)? {
        return Ok(DELTA_MAX);
    }
    if !ok(DELTA_RESOLUTION)? {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (DELTA_RESOLUTION, DELTA_MAX);
    while hi - lo > DELTA_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug)]
pub struct EdgeWitness {
    pub witness: Witness,
    /// `1 / Tr(P + Q)`
    pub a: f64,
    /// Heuristic product minimum of `a (P + Q^T2)`.
    pub epsilon: f64,
    pub kernel_dims: (usize, usize),
}

fn kernel_projector(m: &CMat) -> Result<(CMat, usize)> {
    let e = hermitian_eig(m, 1e-9)?;
    let mut p = CMat::zeros(m.dim());
    let mut k = 0;
    for (i, &l) in e.values.iter().enumerate() {
        if l < KERNEL_TOL {
            p = &p + &CMat::projector(&e.vector(i));
            k += 1;
        }
    }
    Ok((p, k))
}

/// `W = a (P + Q^T2) − ε 1` for a PPT state with kernel projectors `P`, `Q`.
pub fn edge_witness(state: &DensityMatrix, seed: u64) -> Result<EdgeWitness> {
    edge_witness_with(state, seed, DEFAULT_RESTARTS)
}

pub fn edge_witness_with(state: &DensityMatrix, seed: u64, restarts: usize) -> Result<EdgeWitness> {
    let dims = state.dims();
    let pt = linalg::partial_transpose(state.mat(), dims, Party::Second)?;
    if linalg::min_eigenvalue(&pt, 1e-9)? < -DETECTION_TOL {
        return Err(Error::NotPpt);
    }
    let (p, kp) = kernel_projector(state.mat())?;
    let (q, kq) = kernel_projector(&pt)?;
    if kp + kq == 0 {
        return Err(Error::ZeroKernels);
    }
    let a = 1.0 / (&p + &q).trace().re;
    let qt = linalg::partial_transpose(&q, dims, Party::Second)?;
    let w_delta = (&p + &qt).scale(a);
    let epsilon = maps::product_extremum(&w_delta, dims, Sense::Min, restarts, seed)?.value;
    let mat = &w_delta - &CMat::identity(dims.total()).scale(epsilon);
    Ok(EdgeWitness { witness: Witness::new(mat, dims, WitnessKind::EdgeState)?, a, epsilon, kernel_dims: (kp, kq) })
}
