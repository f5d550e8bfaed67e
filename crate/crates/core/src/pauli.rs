//! Index algebra of Pauli matrices and their tensor words.
//!
//! `σ_0 = 1`, `σ_1 = X`, `σ_2 = Y`, `σ_3 = Z`. The product of two Pauli
//! matrices is another one up to a phase, `σ_a σ_m = η · σ_[a,m]`, and on
//! indices `[a,m]` is just `a ^ m`.

use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{tensor, CMat, C64, I, ONE, ZERO};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliIndex(u8);

impl PauliIndex {
    pub const ALL: [PauliIndex; 4] = [PauliIndex(0), PauliIndex(1), PauliIndex(2), PauliIndex(3)];

    pub fn new(v: u8) -> Result<Self> {
        if v > 3 {
            return Err(Error::BadIndex(v));
        }
        Ok(Self(v))
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Phase `η` in `σ_a σ_m = η σ_[a,m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    One,
    MinusOne,
    PlusI,
    MinusI,
}

impl Phase {
    pub fn to_complex(self) -> C64 {
        match self {
            Phase::One => ONE,
            Phase::MinusOne => -ONE,
            Phase::PlusI => I,
            Phase::MinusI => -I,
        }
    }
}

pub const PRODUCT_INDEX: [[u8; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

pub const PRODUCT_PHASE: [[Phase; 4]; 4] = {
    use Phase::*;
    [
        [One, One, One, One],
        [One, One, PlusI, MinusI],
        [One, MinusI, One, PlusI],
        [One, PlusI, MinusI, One],
    ]
};

pub const COMMUTE_SIGN: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

pub fn pauli_product(a: PauliIndex, m: PauliIndex) -> (PauliIndex, Phase) {
    (PauliIndex(PRODUCT_INDEX[a.idx()][m.idx()]), PRODUCT_PHASE[a.idx()][m.idx()])
}

pub fn commute_sign(a: PauliIndex, g: PauliIndex) -> i8 {
    COMMUTE_SIGN[a.idx()][g.idx()]
}

/// The 2×2 matrix `σ_k`.
pub fn sigma(k: PauliIndex) -> CMat {
    let d = match k.0 {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        _ => [ONE, ZERO, ZERO, -ONE],
    };
    CMat::from_fn(2, |i, j| d[2 * i + j])
}

/// Check the hard-coded tables against explicit matrix products.
pub fn verify_tables() -> bool {
    for a in PauliIndex::ALL {
        for m in PauliIndex::ALL {
            let (k, ph) = pauli_product(a, m);
            let lhs = &sigma(a) * &sigma(m);
            let rhs = sigma(k).scale_c(ph.to_complex());
            if lhs.max_abs_diff(&rhs) != 0.0 {
                return false;
            }
            let comm = &(&sigma(a) * &sigma(m)) - &(&sigma(m) * &sigma(a));
            let commutes = comm.frobenius_norm() == 0.0;
            if commutes != (commute_sign(a, m) == 1) {
                return false;
            }
        }
    }
    true
}

/// Tensor product of Pauli matrices, `σ_μ1 ⊗ … ⊗ σ_μn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord(Vec<PauliIndex>);

impl PauliWord {
    pub fn new(indices: Vec<PauliIndex>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::BadParameter("a Pauli word needs at least one site"));
        }
        Ok(Self(indices))
    }

    pub fn from_u8(indices: &[u8]) -> Result<Self> {
        Self::new(indices.iter().map(|&v| PauliIndex::new(v)).collect::<Result<_>>()?)
    }

    /// Word number `code` among the `4^n` words, first site most significant.
    pub fn from_code(n: usize, mut code: usize) -> Self {
        let mut v = alloc::vec![PauliIndex(0); n];
        for slot in v.iter_mut().rev() {
            *slot = PauliIndex((code % 4) as u8);
            code /= 4;
        }
        Self(v)
    }

    pub fn code(&self) -> usize {
        self.0.iter().fold(0, |acc, p| acc * 4 + p.idx())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[PauliIndex] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|p| p.0 == 0)
    }
}

impl From<LatticePoint> for PauliWord {
    fn from(p: LatticePoint) -> Self {
        Self(alloc::vec![p.alpha, p.beta])
    }
}

pub fn words_commute(p: &PauliWord, q: &PauliWord) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let sign: i8 = p.0.iter().zip(&q.0).map(|(&a, &b)| commute_sign(a, b)).product();
    Ok(sign == 1)
}

pub fn word_matrix(p: &PauliWord) -> Result<CMat> {
    if p.len() > 3 {
        return Err(Error::TooLarge(p.len()));
    }
    let mut m = sigma(p.0[0]);
    for &k in &p.0[1..] {
        m = tensor(&m, &sigma(k));
    }
    Ok(m)
}

/// A point `(α, β)` of the 4×4 lattice; `α` is the column, `β` the row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub alpha: PauliIndex,
    pub beta: PauliIndex,
}

impl LatticePoint {
    pub fn new(alpha: u8, beta: u8) -> Result<Self> {
        Ok(Self { alpha: PauliIndex::new(alpha)?, beta: PauliIndex::new(beta)? })
    }

    /// Point for bit `4β + α`.
    pub const fn from_bit(bit: u8) -> Self {
        Self { alpha: PauliIndex(bit & 3), beta: PauliIndex((bit >> 2) & 3) }
    }

    pub const fn bit(self) -> u8 {
        4 * self.beta.0 + self.alpha.0
    }

    pub const fn a(self) -> usize {
        self.alpha.0 as usize
    }

    pub const fn b(self) -> usize {
        self.beta.0 as usize
    }

    pub fn all() -> impl Iterator<Item = LatticePoint> {
        (0..16u8).map(LatticePoint::from_bit)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// Lattice translation `τ_t(p) = ([t.α, p.α], [t.β, p.β])`. It is its own inverse.
pub fn tau(t: LatticePoint, p: LatticePoint) -> LatticePoint {
    LatticePoint { alpha: PauliIndex(t.alpha.0 ^ p.alpha.0), beta: PauliIndex(t.beta.0 ^ p.beta.0) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_matrices() {
        assert!(verify_tables());
    }

    #[test]
    fn product_index_is_xor() {
        for a in 0..4u8 {
            for m in 0..4u8 {
                assert_eq!(PRODUCT_INDEX[a as usize][m as usize], a ^ m);
            }
        }
    }

    #[test]
    fn word_codes_round_trip() {
        for code in 0..64 {
            assert_eq!(PauliWord::from_code(3, code).code(), code);
        }
    }

    #[test]
    fn bad_index() {
        assert_eq!(PauliIndex::new(4), Err(Error::BadIndex(4)));
    }
}
