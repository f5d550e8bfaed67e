//! Linear maps on matrix algebras through their Choi matrices.
//!
//! The Choi matrix is `C_Λ = (id ⊗ Λ)[P⁺]` with the normalised projector
//! `P⁺ = (1/n) Σ_ij |i⟩⟨j| ⊗ |i⟩⟨j|`, so the identity map has Choi matrix
//! `P⁺` and unit trace. Statements written for the unnormalised `Σ |ii⟩`
//! differ by a factor `n`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, hermitian_eig, BipartiteDims, CMat, C64, ZERO};
use crate::pauli::{word_matrix, LatticePoint, PauliWord};
use crate::states::{basis_vector, max_symmetric_vector, DensityMatrix};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_RESTARTS: usize = 64;
const SEESAW_MAX_ITERS: usize = 500;
const SEESAW_TOL: f64 = 1e-10;
const VIOLATION_TOL: f64 = 1e-9;

/// A map `M_n → M_m` stored as its `nm × nm` Choi matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMap {
    choi: CMat,
    in_dim: usize,
    out_dim: usize,
}

impl ChoiMap {
    pub fn new(choi: CMat, in_dim: usize, out_dim: usize) -> Result<Self> {
        if choi.dim() != in_dim * out_dim {
            return Err(Error::DimMismatch { expected: in_dim * out_dim, found: choi.dim() });
        }
        Ok(Self { choi, in_dim, out_dim })
    }

    pub fn identity(d: usize) -> Result<Self> {
        let v = max_symmetric_vector(d)?;
        Self::new(CMat::projector(v.amplitudes()), d, d)
    }

    pub fn choi(&self) -> &CMat {
        &self.choi
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn dims(&self) -> BipartiteDims {
        BipartiteDims::new(self.in_dim, self.out_dim)
    }

    /// `C[(i,k),(j,l)]`
    fn c(&self, i: usize, k: usize, j: usize, l: usize) -> C64 {
        let m = self.out_dim;
        self.choi[(i * m + k, j * m + l)]
    }
}

/// `X ↦ Σ c_i K_i X K_i†` with square operators.
#[derive(Clone, Debug, Default)]
pub struct KrausSet {
    pub terms: Vec<(f64, CMat)>,
}

impl KrausSet {
    pub fn apply(&self, x: &CMat) -> CMat {
        let mut out = CMat::zeros(x.dim());
        for (c, k) in &self.terms {
            out = &out + &(&(k * x) * &k.adjoint()).scale(*c);
        }
        out
    }

    pub fn choi(&self) -> Result<ChoiMap> {
        let n = self.terms.first().map(|(_, k)| k.dim()).ok_or(Error::BadParameter("empty Kraus set"))?;
        let omega = max_symmetric_vector(n)?;
        let mut choi = CMat::zeros(n * n);
        for (c, k) in &self.terms {
            if k.dim() != n {
                return Err(Error::DimMismatch { expected: n, found: k.dim() });
            }
            let v = linalg::tensor(&CMat::identity(n), k).mul_vec(omega.amplitudes());
            choi = &choi + &CMat::projector(&v).scale(*c);
        }
        ChoiMap::new(choi, n, n)
    }
}

/// `Λ(X) = n Σ_ij X_ij C_ij` where `C_ij` is the `(i,j)` block of the Choi matrix.
pub fn apply(map: &ChoiMap, x: &CMat) -> Result<CMat> {
    if x.dim() != map.in_dim {
        return Err(Error::DimMismatch { expected: map.in_dim, found: x.dim() });
    }
    let (n, m) = (map.in_dim, map.out_dim);
    let mut out = CMat::zeros(m);
    for i in 0..n {
        for j in 0..n {
            let xij = x[(i, j)];
            if xij == ZERO {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[(k, l)] += xij * map.c(i, k, j, l);
                }
            }
        }
    }
    Ok(out.scale(n as f64))
}

/// `(id ⊗ Λ)[ρ]`, the map acting on the second party.
pub fn extend_apply(map: &ChoiMap, rho: &DensityMatrix) -> Result<CMat> {
    let BipartiteDims { d1, d2 } = rho.dims();
    if d2 != map.in_dim {
        return Err(Error::DimMismatch { expected: map.in_dim, found: d2 });
    }
    let (n, m) = (map.in_dim, map.out_dim);
    let r = rho.mat();
    let mut out = CMat::zeros(d1 * m);
    for a in 0..d1 {
        for b in 0..d1 {
            for i in 0..n {
                for j in 0..n {
                    let x = r[(a * n + i, b * n + j)];
                    if x == ZERO {
                        continue;
                    }
                    for k in 0..m {
                        for l in 0..m {
                            out[(a * m + k, b * m + l)] += x * map.c(i, k, j, l);
                        }
                    }
                }
            }
        }
    }
    Ok(out.scale(n as f64))
}

/// Returns whether the Choi matrix is PSD within `tol`, and its smallest eigenvalue.
pub fn is_completely_positive(map: &ChoiMap, tol: f64) -> Result<(bool, f64)> {
    let min = linalg::min_eigenvalue(&map.choi, 1e-10)?;
    Ok((min >= -tol, min))
}

/// Extremum of `⟨ψ⊗φ|C|ψ⊗φ⟩` over unit product vectors found by the see-saw.
#[derive(Clone, Debug)]
pub struct ProductExtremum {
    pub value: f64,
    pub psi: Vec<C64>,
    pub phi: Vec<C64>,
    pub restart: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

pub(crate) fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..d).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    linalg::normalize(&mut v);
    v
}

/// Independent stream per restart so restarts can be split across workers.
pub(crate) fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

pub(crate) fn extreme_vector(m: &CMat, sense: Sense) -> Result<(f64, Vec<C64>)> {
    let e = hermitian_eig(m, f64::INFINITY)?;
    let k = match sense {
        Sense::Max => 0,
        Sense::Min => e.values.len() - 1,
    };
    Ok((e.values[k], e.vector(k)))
}

fn better(sense: Sense, a: f64, b: f64) -> bool {
    match sense {
        Sense::Min => a < b,
        Sense::Max => a > b,
    }
}

/// Alternating optimisation of `⟨ψ⊗φ|C|ψ⊗φ⟩`. Ties keep the lowest restart.
pub fn product_extremum(
    c: &CMat,
    dims: BipartiteDims,
    sense: Sense,
    restarts: usize,
    seed: u64,
) -> Result<ProductExtremum> {
    if c.dim() != dims.total() {
        return Err(Error::DimMismatch { expected: dims.total(), found: c.dim() });
    }
    let BipartiteDims { d1, d2 } = dims;
    let mut best: Option<ProductExtremum> = None;
    for r in 0..restarts.max(1) {
        let mut rng = restart_rng(seed, r);
        let mut psi = random_unit(&mut rng, d1);
        let mut phi = vec![ZERO; d2];
        let mut value = match sense {
            Sense::Min => f64::INFINITY,
            Sense::Max => f64::NEG_INFINITY,
        };
        for _ in 0..SEESAW_MAX_ITERS {
            let mphi = CMat::from_fn(d2, |k, l| {
                let mut s = ZERO;
                for i in 0..d1 {
                    for j in 0..d1 {
                        s += psi[i].conj() * psi[j] * c[(i * d2 + k, j * d2 + l)];
                    }
                }
                s
            });
            phi = extreme_vector(&mphi, sense)?.1;
            let mpsi = CMat::from_fn(d1, |i, j| {
                let mut s = ZERO;
                for k in 0..d2 {
                    for l in 0..d2 {
                        s += phi[k].conj() * phi[l] * c[(i * d2 + k, j * d2 + l)];
                    }
                }
                s
            });
            let (v, p) = extreme_vector(&mpsi, sense)?;
            psi = p;
            let done = (v - value).abs() < SEESAW_TOL;
            value = v;
            if done {
                break;
            }
        }
        let value = c.expectation(&linalg::kron_vec(&psi, &phi)).re;
        if best.as_ref().map_or(true, |b| better(sense, value, b.value)) {
            best = Some(ProductExtremum { value, psi, phi, restart: r });
        }
    }
    Ok(best.expect("at least one restart"))
}

#[derive(Clone, Debug)]
pub enum BlockPositivity {
    /// A product vector with negative expectation; this is a proof.
    CertifiedViolation { psi: Vec<C64>, phi: Vec<C64>, value: f64 },
    /// Nothing negative was found. Heuristic only.
    PresumedPositive { min_found: f64 },
}

impl BlockPositivity {
    pub fn is_violation(&self) -> bool {
        matches!(self, BlockPositivity::CertifiedViolation { .. })
    }
}

pub fn block_positivity_seesaw(map: &ChoiMap, restarts: usize, seed: u64) -> Result<BlockPositivity> {
    let dev = map.choi.hermitian_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian(dev));
    }
    let best = product_extremum(&map.choi, map.dims(), Sense::Min, restarts, seed)?;
    Ok(if best.value < -VIOLATION_TOL {
        BlockPositivity::CertifiedViolation { psi: best.psi, phi: best.phi, value: best.value }
    } else {
        BlockPositivity::PresumedPositive { min_found: best.value }
    })
}

/// `Σ_w λ_w S_w` with `S_w[X] = σ_w X σ_w`; coefficients indexed by [`PauliWord::code`].
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaDiagMap {
    n: usize,
    coeffs: Vec<f64>,
}

impl SigmaDiagMap {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if n == 0 || n > 3 || coeffs.len() != 1 << (2 * n) {
            return Err(Error::BadParameter("need 4^n coefficients"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::BadParameter("coefficients must be finite"));
        }
        Ok(Self { n, coeffs })
    }

    pub fn from_fn(n: usize, f: impl Fn(&PauliWord) -> f64) -> Self {
        let coeffs = (0..1usize << (2 * n)).map(|c| f(&PauliWord::from_code(n, c))).collect();
        Self { n, coeffs }
    }

    /// Two-qubit map from coefficients on lattice points.
    pub fn from_points(f: impl Fn(LatticePoint) -> f64) -> Self {
        Self::from_fn(2, |w| {
            let ix = w.indices();
            f(LatticePoint { alpha: ix[0], beta: ix[1] })
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, w: &PauliWord) -> f64 {
        self.coeffs[w.code()]
    }

    pub fn at(&self, p: LatticePoint) -> f64 {
        self.coeffs[4 * p.a() + p.b()]
    }

    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        let mut out = CMat::zeros(x.dim());
        for (code, &l) in self.coeffs.iter().enumerate() {
            if l == 0.0 {
                continue;
            }
            let s = word_matrix(&PauliWord::from_code(self.n, code))?;
            if s.dim() != x.dim() {
                return Err(Error::DimMismatch { expected: s.dim(), found: x.dim() });
            }
            out = &out + &(&(&s * x) * &s).scale(l);
        }
        Ok(out)
    }
}

/// `C = Σ_w λ_w P_w`.
pub fn choi_of_diag(map: &SigmaDiagMap) -> Result<ChoiMap> {
    if map.n > 2 {
        return Err(Error::TooLarge(map.n));
    }
    let d = 1usize << map.n;
    let mut choi = CMat::zeros(d * d);
    for (code, &l) in map.coeffs.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let v = basis_vector(&PauliWord::from_code(map.n, code))?;
        let a = v.amplitudes();
        for i in 0..d * d {
            if a[i] == ZERO {
                continue;
            }
            for j in 0..d * d {
                choi[(i, j)] += a[i] * a[j].conj() * l;
            }
        }
    }
    ChoiMap::new(choi, d, d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StormerPart {
    pub cp: SigmaDiagMap,
    /// All coefficients of `cp` are non-negative.
    pub certified_cp: bool,
}

/// Coefficients of `Λ_cp` in `Λ = μ (Tr − Λ_cp)`, that is `1/2^n − λ/μ`.
pub fn stormer_cp_part(map: &SigmaDiagMap, mu: f64) -> Result<StormerPart> {
    if !(mu > 0.0) {
        return Err(Error::NonPositiveMu(mu));
    }
    let tr = 1.0 / (1u64 << map.n) as f64;
    let coeffs: Vec<f64> = map.coeffs.iter().map(|&l| tr - l / mu).collect();
    let certified_cp = coeffs.iter().all(|&c| c >= 0.0);
    Ok(StormerPart { cp: SigmaDiagMap { n: map.n, coeffs }, certified_cp })
}

/// `σ_a^T = ε_a σ_a`
fn eps(a: usize) -> f64 {
    [1.0, 1.0, -1.0, 1.0][a]
}

/// `X ↦ Tr(X) 1` on `n` qubits.
pub fn trace_map(n: usize) -> SigmaDiagMap {
    SigmaDiagMap::from_fn(n, |_| 1.0 / (1u64 << n) as f64)
}

/// Transposition on `n` qubits, coefficients `Π ε_μi / 2^n`.
pub fn transposition(n: usize) -> SigmaDiagMap {
    SigmaDiagMap::from_fn(n, |w| w.indices().iter().map(|p| eps(p.idx())).product::<f64>() / (1u64 << n) as f64)
}

/// `X ↦ Tr(X) 1 − X` on `M_d`.
pub fn reduction_map(d: usize) -> Result<ChoiMap> {
    let p = max_symmetric_vector(d)?;
    let choi = &CMat::identity(d * d).scale(1.0 / d as f64) - &CMat::projector(p.amplitudes());
    ChoiMap::new(choi, d, d)
}

/// The semigroup map `Γ^t` on `M_4`.
pub fn gamma_t(t: f64) -> Result<SigmaDiagMap> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::BadParameter("gamma_t needs t >= 0"));
    }
    let e = libm::exp(-4.0 * t);
    let a = (1.0 + 3.0 * e) / 4.0;
    let b = (3.0 + e) / 4.0;
    let c = (1.0 - e) / 4.0;
    Ok(SigmaDiagMap::from_points(|p| match (p.a(), p.b()) {
        (0, 0) => a * b,
        (0, i) => eps(i) * a * c,
        (_, 0) => c * b,
        _ => 0.0,
    }))
}

/// Coefficients `v_α2` (α = 0, 1, 3) and `v_2β` (β = 0, 1, 3) of
/// `V = Σ v_α2 σ_α2 + Σ v_2β σ_2β`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VCoeffs {
    pub v_a2: [C64; 3],
    pub v_2b: [C64; 3],
}

const NON2: [usize; 3] = [0, 1, 3];

impl VCoeffs {
    pub fn new(v_a2: [C64; 3], v_2b: [C64; 3]) -> Result<Self> {
        let total: f64 = v_a2.iter().chain(&v_2b).map(|z| z.norm_sqr()).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadParameter("V coefficients must have unit total weight"));
        }
        Ok(Self { v_a2, v_2b })
    }

    /// `v_w` for the lattice point `w`.
    pub fn at(&self, p: LatticePoint) -> C64 {
        let slot = |k: usize| NON2.iter().position(|&x| x == k);
        match (p.a(), p.b()) {
            (2, 2) => ZERO,
            (a, 2) => self.v_a2[slot(a).unwrap()],
            (2, b) => self.v_2b[slot(b).unwrap()],
            _ => ZERO,
        }
    }

    pub fn matrix(&self) -> CMat {
        let mut v = CMat::zeros(4);
        for p in LatticePoint::all() {
            let c = self.at(p);
            if c != ZERO {
                let s = word_matrix(&PauliWord::from(p)).expect("two sites");
                v = &v + &s.scale_c(c);
            }
        }
        v
    }
}

/// `Φ_V[X] = Tr(X) 1 − X^T − V† X V` as a Choi matrix.
pub fn phi_v(v: &VCoeffs) -> Result<ChoiMap> {
    let tr = choi_of_diag(&trace_map(2))?;
    let t = choi_of_diag(&transposition(2))?;
    let omega = max_symmetric_vector(4)?;
    let w = linalg::tensor(&CMat::identity(4), &v.matrix().adjoint()).mul_vec(omega.amplitudes());
    let choi = &(tr.choi() - t.choi()) - &CMat::projector(&w);
    ChoiMap::new(choi, 4, 4)
}

/// Coefficients `λ_{w,w'}` of `Φ_V = Σ λ_{w,w'} σ_w · σ_w'`, rows and columns by word code.
pub fn phi_v_coefficients(v: &VCoeffs) -> CMat {
    let tr = trace_map(2);
    let t = transposition(2);
    CMat::from_fn(16, |r, c| {
        let (pr, pc) = (code_point(r), code_point(c));
        let diag = if r == c { tr.coeffs[r] - t.coeffs[r] } else { 0.0 };
        C64::new(diag, 0.0) - v.at(pr).conj() * v.at(pc)
    })
}

fn code_point(code: usize) -> LatticePoint {
    LatticePoint::new((code / 4) as u8, (code % 4) as u8).expect("code < 16")
}

/// Keep the diagonal of a full coefficient matrix `λ_{w,w'}`.
pub fn diagonalize_map(coeffs: &CMat) -> Result<SigmaDiagMap> {
    let dim = coeffs.dim();
    let n = match dim {
        4 => 1,
        16 => 2,
        64 => 3,
        _ => return Err(Error::BadParameter("coefficient matrix must be 4^n square")),
    };
    SigmaDiagMap::new(n, (0..dim).map(|i| coeffs[(i, i)].re).collect())
}

/// `Φ_V^diag`: `1/2 − |v_α2|²` on `(α,2)`, `1/2 − |v_2β|²` on `(2,β)`.
pub fn phi_v_diag(v: &VCoeffs) -> Result<SigmaDiagMap> {
    diagonalize_map(&phi_v_coefficients(v))
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapName {
    Trace { n: usize },
    Transposition2,
    Transposition4,
    Reduction { d: usize },
    GammaT { t: f64 },
    PhiV(VCoeffs),
}

#[derive(Clone, Debug, PartialEq)]
pub enum NamedMap {
    Diagonal(SigmaDiagMap),
    Choi(ChoiMap),
}

pub fn named_map(name: &MapName) -> Result<NamedMap> {
    Ok(match name {
        MapName::Trace { n } => NamedMap::Diagonal(trace_map(*n)),
        MapName::Transposition2 => NamedMap::Diagonal(transposition(1)),
        MapName::Transposition4 => NamedMap::Diagonal(transposition(2)),
        MapName::Reduction { d } => NamedMap::Choi(reduction_map(*d)?),
        MapName::GammaT { t } => NamedMap::Diagonal(gamma_t(*t)?),
        MapName::PhiV(v) => NamedMap::Choi(phi_v(v)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_word_23() {
        let t = transposition(2);
        assert_eq!(t.at(LatticePoint::new(2, 3).unwrap()), -0.25);
    }

    #[test]
    fn stormer_rejects_bad_mu() {
        assert_eq!(stormer_cp_part(&trace_map(1), 0.0), Err(Error::NonPositiveMu(0.0)));
    }

    #[test]
    fn gamma_at_zero() {
        let g = gamma_t(0.0).unwrap();
        assert_eq!(g.at(LatticePoint::new(0, 0).unwrap()), 1.0);
        for i in 1..4 {
            assert_eq!(g.at(LatticePoint::new(0, i).unwrap()), 0.0);
            assert_eq!(g.at(LatticePoint::new(i, 0).unwrap()), 0.0);
        }
    }
}
