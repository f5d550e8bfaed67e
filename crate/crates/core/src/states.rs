//! Concrete states: Bell, Werner, sigma-diagonal and lattice states, UPB
//! complements and the two Horodecki PPT examples.

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;

use crate::lattice::LatticeSubset;
use crate::linalg::{self, hermitian_eig, inner, BipartiteDims, CMat, C64, ONE, ZERO};
use crate::pauli::{word_matrix, PauliWord};
use crate::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-9;

/// A bipartite density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: CMat,
    dims: BipartiteDims,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(mat: CMat, dims: BipartiteDims) -> Result<Self> {
        if mat.dim() != dims.total() {
            return Err(Error::DimMismatch { expected: dims.total(), found: mat.dim() });
        }
        let dev = mat.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        if (mat.trace() - ONE).norm() > TRACE_TOL {
            return Err(Error::BadParameter("density matrix must have unit trace"));
        }
        if linalg::min_eigenvalue(&mat, HERMITIAN_TOL)? < -PSD_TOL {
            return Err(Error::BadParameter("density matrix must be positive semi-definite"));
        }
        Ok(Self { mat, dims })
    }

    pub(crate) fn trusted(mat: CMat, dims: BipartiteDims) -> Self {
        debug_assert_eq!(mat.dim(), dims.total());
        Self { mat, dims }
    }

    pub fn pure(v: &StateVector, dims: BipartiteDims) -> Result<Self> {
        if v.dim() != dims.total() {
            return Err(Error::DimMismatch { expected: dims.total(), found: v.dim() });
        }
        Ok(Self { mat: CMat::projector(v.amplitudes()), dims })
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn into_mat(self) -> CMat {
        self.mat
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.mat, HERMITIAN_TOL)?.values)
    }
}

/// A unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(Vec<C64>);

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let n = linalg::vec_norm(&amps);
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::BadParameter("state vector must have unit norm"));
        }
        Ok(Self(amps))
    }

    /// Rescale to unit norm.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        if linalg::vec_norm(&amps) == 0.0 {
            return Err(Error::BadParameter("cannot normalise the zero vector"));
        }
        linalg::normalize(&mut amps);
        Ok(Self(amps))
    }

    pub fn product(a: &StateVector, b: &StateVector) -> Self {
        Self(linalg::kron_vec(&a.0, &b.0))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.0
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        inner(&self.0, &other.0)
    }
}

fn real_vec(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&x| C64::new(x, 0.0)).collect()
}

/// `(1/√d) Σ_j |jj⟩`
pub fn max_symmetric_vector(d: usize) -> Result<StateVector> {
    if d < 2 {
        return Err(Error::BadParameter("d must be at least 2"));
    }
    let mut v = vec![ZERO; d * d];
    let a = 1.0 / sqrt(d as f64);
    for j in 0..d {
        v[j * d + j] = C64::new(a, 0.0);
    }
    Ok(StateVector(v))
}

/// `(1 ⊗ σ_w)|Ψ⁺⟩` on `C^(2^n) ⊗ C^(2^n)`.
pub fn basis_vector(w: &PauliWord) -> Result<StateVector> {
    let s = word_matrix(w)?;
    let d = s.dim();
    let a = 1.0 / sqrt(d as f64);
    let mut v = vec![ZERO; d * d];
    for j in 0..d {
        for k in 0..d {
            v[j * d + k] = s[(k, j)] * a;
        }
    }
    Ok(StateVector(v))
}

/// `P_w = (1 ⊗ σ_w) P⁺ (1 ⊗ σ_w)`
pub fn basis_projector(w: &PauliWord) -> Result<DensityMatrix> {
    let v = basis_vector(w)?;
    let d = 1usize << w.len();
    DensityMatrix::pure(&v, BipartiteDims::square(d))
}

/// Weights `r_w` over all `4^n` Pauli words, indexed by [`PauliWord::code`].
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaDiagonalState {
    n: usize,
    weights: Vec<f64>,
}

impl SigmaDiagonalState {
    pub fn new(n: usize, weights: Vec<f64>) -> Result<Self> {
        if n == 0 || n > 3 || weights.len() != 1 << (2 * n) {
            return Err(Error::BadWeights);
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| !(w >= 0.0)) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadWeights);
        }
        Ok(Self { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

pub fn sigma_diagonal_state(s: &SigmaDiagonalState) -> Result<DensityMatrix> {
    let d = 1usize << s.n;
    let mut rho = CMat::zeros(d * d);
    for (code, &r) in s.weights.iter().enumerate() {
        if r == 0.0 {
            continue;
        }
        let v = basis_vector(&PauliWord::from_code(s.n, code))?;
        rho = &rho + &CMat::projector(v.amplitudes()).scale(r);
    }
    Ok(DensityMatrix::trusted(rho, BipartiteDims::square(d)))
}

/// `ρ_I = (1/N_I) Σ_{(α,β)∈I} P_αβ` on `C^4 ⊗ C^4`.
pub fn lattice_state(subset: LatticeSubset) -> Result<DensityMatrix> {
    let n = subset.len();
    if n == 0 {
        return Err(Error::EmptySubset);
    }
    let mut rho = CMat::zeros(16);
    let w = 1.0 / n as f64;
    for p in subset.points() {
        let v = basis_vector(&PauliWord::from(p))?;
        let amps = v.amplitudes();
        for i in 0..16 {
            if amps[i] == ZERO {
                continue;
            }
            for j in 0..16 {
                rho[(i, j)] += amps[i] * amps[j].conj() * w;
            }
        }
    }
    Ok(DensityMatrix::trusted(rho, BipartiteDims::square(4)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub fn bell_state(kind: BellKind) -> StateVector {
    let h = 1.0 / sqrt(2.0);
    let v = match kind {
        BellKind::PhiPlus => [h, 0.0, 0.0, h],
        BellKind::PhiMinus => [h, 0.0, 0.0, -h],
        BellKind::PsiPlus => [0.0, h, h, 0.0],
        BellKind::PsiMinus => [0.0, h, -h, 0.0],
    };
    StateVector(real_vec(&v))
}

/// `α|Ψ⁻⟩⟨Ψ⁻| + (1-α)/4 · 1` for `-1/3 ≤ α ≤ 1`.
pub fn werner_state(alpha: f64) -> Result<DensityMatrix> {
    if !(-1.0 / 3.0 - 1e-12..=1.0).contains(&alpha) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha });
    }
    let psi = bell_state(BellKind::PsiMinus);
    let m = &CMat::projector(psi.amplitudes()).scale(alpha) + &CMat::identity(4).scale((1.0 - alpha) / 4.0);
    Ok(DensityMatrix::trusted(m, BipartiteDims::square(2)))
}

/// The five Tiles product vectors in `C^3 ⊗ C^3`.
pub fn tiles_upb() -> Vec<StateVector> {
    let h = 1.0 / sqrt(2.0);
    let t = 1.0 / sqrt(3.0);
    let ket = |v: [f64; 3]| StateVector(real_vec(&v));
    let pairs = [
        (ket([1.0, 0.0, 0.0]), ket([h, -h, 0.0])),
        (ket([0.0, 0.0, 1.0]), ket([0.0, h, -h])),
        (ket([h, -h, 0.0]), ket([0.0, 0.0, 1.0])),
        (ket([0.0, h, -h]), ket([1.0, 0.0, 0.0])),
        (ket([t, t, t]), ket([t, t, t])),
    ];
    pairs.iter().map(|(a, b)| StateVector::product(a, b)).collect()
}

/// Vertical then horizontal tiles of the even-`d` UPB, each normalised.
pub fn even_d_upb(d: usize) -> Result<Vec<StateVector>> {
    if d < 4 || d % 2 != 0 {
        return Err(Error::OddDim(d));
    }
    let omega = C64::from_polar(1.0, 4.0 * core::f64::consts::PI / d as f64);
    let ket = |k: usize| {
        let mut v = vec![ZERO; d];
        v[k % d] = ONE;
        v
    };
    let tile = |m: usize, shift: usize| {
        let mut v = vec![ZERO; d];
        for j in 0..d / 2 {
            v[(j + shift) % d] += omega.powu((j * m) as u32);
        }
        v
    };
    let mut out = Vec::new();
    for m in 1..d / 2 {
        for n in 0..d {
            out.push(StateVector::normalized(linalg::kron_vec(&ket(n), &tile(m, n + 1)))?);
        }
    }
    for m in 1..d / 2 {
        for n in 0..d {
            out.push(StateVector::normalized(linalg::kron_vec(&tile(m, n), &ket(n)))?);
        }
    }
    Ok(out)
}

/// `(1 - Σ|ψ_j⟩⟨ψ_j|) / (d - n)`
pub fn upb_complement_state(vectors: &[StateVector], dims: BipartiteDims) -> Result<DensityMatrix> {
    let d = dims.total();
    if vectors.len() >= d {
        return Err(Error::BadParameter("need fewer vectors than the total dimension"));
    }
    let mut worst = 0.0f64;
    for (i, a) in vectors.iter().enumerate() {
        if a.dim() != d {
            return Err(Error::DimMismatch { expected: d, found: a.dim() });
        }
        for (j, b) in vectors.iter().enumerate() {
            let want = if i == j { ONE } else { ZERO };
            worst = worst.max((a.inner(b) - want).norm());
        }
    }
    if worst > 1e-10 {
        return Err(Error::NotOrthonormal(worst));
    }
    let mut m = CMat::identity(d);
    for v in vectors {
        m = &m - &CMat::projector(v.amplitudes());
    }
    Ok(DensityMatrix::trusted(m.scale(1.0 / (d - vectors.len()) as f64), dims))
}

/// The 3⊗3 PPT entangled family `ρ_a`, `0 < a < 1`.
pub fn horodecki_3x3(a: f64) -> Result<DensityMatrix> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    let p = (1.0 + a) / 2.0;
    let q = sqrt(1.0 - a * a) / 2.0;
    #[rustfmt::skip]
    let e = [
        a,   0.0, 0.0, 0.0, a,   0.0, 0.0, 0.0, a,
        0.0, a,   0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, a,   0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, a,   0.0, 0.0, 0.0, 0.0, 0.0,
        a,   0.0, 0.0, 0.0, a,   0.0, 0.0, 0.0, a,
        0.0, 0.0, 0.0, 0.0, 0.0, a,   0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, p,   0.0, q,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, a,   0.0,
        a,   0.0, 0.0, 0.0, a,   0.0, q,   0.0, p,
    ];
    let m = CMat::from_real(9, &e)?.scale(1.0 / (8.0 * a + 1.0));
    DensityMatrix::new(m, BipartiteDims::square(3))
}

/// The 2⊗4 PPT entangled family `σ_b`, `0 ≤ b ≤ 1`.
pub fn horodecki_2x4(b: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::OutOfRange { name: "b", value: b });
    }
    let p = (1.0 + b) / 2.0;
    let q = sqrt(1.0 - b * b) / 2.0;
    #[rustfmt::skip]
    let e = [
        b,   0.0, 0.0, 0.0, 0.0, b,   0.0, 0.0,
        0.0, b,   0.0, 0.0, 0.0, 0.0, b,   0.0,
        0.0, 0.0, b,   0.0, 0.0, 0.0, 0.0, b,
        0.0, 0.0, 0.0, b,   0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, p,   0.0, 0.0, q,
        b,   0.0, 0.0, 0.0, 0.0, b,   0.0, 0.0,
        0.0, b,   0.0, 0.0, 0.0, 0.0, b,   0.0,
        0.0, 0.0, b,   0.0, q,   0.0, 0.0, p,
    ];
    let m = CMat::from_real(8, &e)?.scale(1.0 / (7.0 * b + 1.0));
    DensityMatrix::new(m, BipartiteDims::new(2, 4))
}

/// `-Σ λ ln λ` (natural log).
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(rho
        .eigenvalues()?
        .into_iter()
        .filter(|&l| l > 1e-15)
        .map(|l| -l * libm::log(l))
        .sum())
}

#[derive(Clone, Debug)]
pub struct Schmidt {
    /// Descending; `min(d1, d2)` entries.
    pub coefficients: Vec<f64>,
    /// Left and right vectors for each coefficient above `1e-10`.
    pub left: Vec<Vec<C64>>,
    pub right: Vec<Vec<C64>>,
}

impl Schmidt {
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&c| c > 1e-10).count()
    }

    pub fn reconstruct(&self) -> Vec<C64> {
        let d1 = self.left.first().map_or(0, Vec::len);
        let d2 = self.right.first().map_or(0, Vec::len);
        let mut v = vec![ZERO; d1 * d2];
        for ((c, l), r) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            for (k, x) in linalg::kron_vec(l, r).into_iter().enumerate() {
                v[k] += x * *c;
            }
        }
        v
    }
}

pub fn schmidt(v: &StateVector, dims: BipartiteDims) -> Result<Schmidt> {
    let BipartiteDims { d1, d2 } = dims;
    if v.dim() != dims.total() {
        return Err(Error::DimMismatch { expected: dims.total(), found: v.dim() });
    }
    let a = v.amplitudes();
    // reduced state on the first party, A A†
    let rho1 = CMat::from_fn(d1, |i, j| (0..d2).map(|k| a[i * d2 + k] * a[j * d2 + k].conj()).sum());
    let e = hermitian_eig(&rho1, 1e-9)?;
    let r = d1.min(d2);
    let coefficients: Vec<f64> = e.values.iter().take(r).map(|&l| if l < 1e-14 { 0.0 } else { sqrt(l) }).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &c) in coefficients.iter().enumerate() {
        if c <= 1e-10 {
            break;
        }
        let u = e.vector(k);
        let w: Vec<C64> = (0..d2).map(|j| (0..d1).map(|i| u[i].conj() * a[i * d2 + j]).sum::<C64>() / c).collect();
        left.push(u);
        right.push(w);
    }
    Ok(Schmidt { coefficients, left, right })
}
