mod common;

use common::*;
use lw_core::criteria::*;
use lw_core::lattice::LatticeSubset;
use lw_core::linalg::{self, CMat};
use lw_core::maps::DEFAULT_SEED;
use lw_core::pauli::LatticePoint;
use lw_core::states::*;
use lw_core::{BipartiteDims, Error};
use rand::Rng;

fn pt(a: u8, b: u8) -> LatticePoint {
    LatticePoint::new(a, b).unwrap()
}

fn random_separable(g: &mut rand_chacha::ChaCha8Rng, d: usize) -> DensityMatrix {
    let k = g.gen_range(1..=6);
    let mut m = CMat::zeros(d * d);
    let mut total = 0.0;
    for _ in 0..k {
        let w: f64 = g.gen_range(0.05..1.0);
        let v = linalg::kron_vec(&random_unit(g, d), &random_unit(g, d));
        m = &m + &CMat::projector(&v).scale(w);
        total += w;
    }
    DensityMatrix::new(m.scale(1.0 / total), BipartiteDims::square(d)).unwrap()
}

fn random_state(g: &mut rand_chacha::ChaCha8Rng, d1: usize, d2: usize) -> DensityMatrix {
    let a = random_mat(g, d1 * d2);
    let keep = g.gen_range(1..=d1 * d2);
    let a = CMat::from_fn(d1 * d2, |i, j| if j < keep { a[(i, j)] } else { lw_core::linalg::ZERO });
    let m = &a * &a.adjoint();
    let t = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / t), BipartiteDims::new(d1, d2)).unwrap()
}

#[test]
fn separable_states_pass_everything() {
    let mut g = rng(31);
    for k in 0..500 {
        let d = 2 + k % 3;
        let rho = random_separable(&mut g, d);
        assert!(!ppt_check(&rho, DETECTION_TOL).unwrap().detected);
        assert!(!realignment_check(&rho).unwrap().detected);
        assert!(!reduction_check(&rho).unwrap().detected);
    }
}

#[test]
fn low_dimension_no_false_positives() {
    let mut g = rng(32);
    let mut entangled = 0;
    for k in 0..500 {
        let (d1, d2) = if k % 2 == 0 { (2, 2) } else { (2, 3) };
        let rho = random_state(&mut g, d1, d2);
        let ppt = ppt_check(&rho, DETECTION_TOL).unwrap().detected;
        let red = reduction_check(&rho).unwrap().detected;
        let re = if d1 == d2 { realignment_check(&rho).unwrap().detected } else { false };
        if !ppt {
            assert!(!red && !re, "state {k} is PPT but flagged");
        } else {
            entangled += 1;
        }
    }
    assert!(entangled > 50);
}

#[test]
fn ppt_examples() {
    let bell = DensityMatrix::pure(&bell_state(BellKind::PhiPlus), BipartiteDims::square(2)).unwrap();
    let v = ppt_check(&bell, DETECTION_TOL).unwrap();
    assert!(v.detected && (v.evidence + 0.5).abs() < 1e-12);
    let w = ppt_check(&werner_state(0.5).unwrap(), DETECTION_TOL).unwrap();
    assert!(w.detected && (w.evidence + 0.125).abs() < 1e-12);
    let mut g = rng(33);
    let prod = StateVector::new(linalg::kron_vec(&random_unit(&mut g, 3), &random_unit(&mut g, 3))).unwrap();
    let rho = DensityMatrix::pure(&prod, BipartiteDims::square(3)).unwrap();
    assert!(!ppt_check(&rho, DETECTION_TOL).unwrap().detected);
    assert!((realignment_check(&rho).unwrap().evidence - 1.0).abs() < 1e-9);
}

#[test]
fn werner_boundary() {
    let grid: Vec<f64> = std::iter::once(-1.0 / 3.0).chain((0..27).map(|k| -0.30 + 0.05 * k as f64)).collect();
    for &a in &grid {
        let detected = ppt_check(&werner_state(a).unwrap(), DETECTION_TOL).unwrap().detected;
        assert_eq!(detected, a > 1.0 / 3.0 + 1e-12, "alpha {a}");
    }
}

#[test]
fn reduction_examples() {
    let bell = DensityMatrix::pure(&bell_state(BellKind::PhiPlus), BipartiteDims::square(2)).unwrap();
    let v = reduction_check(&bell).unwrap();
    assert!(v.detected && (v.evidence + 0.5).abs() < 1e-12);
    let mixed = DensityMatrix::new(CMat::identity(9).scale(1.0 / 9.0), BipartiteDims::square(3)).unwrap();
    assert!(!reduction_check(&mixed).unwrap().detected);
    assert!(reduction_check(&werner_state(1.0).unwrap()).unwrap().detected);
}

#[test]
fn realignment_on_lattice_states() {
    // small cases worked out by hand
    for (mask, want) in [(0x0001u16, 4.0), (0x0003, 2.0), (0x000f, 1.0), (0x0f0f, 0.5), (0xffff, 0.25)] {
        let rho = lattice_state(LatticeSubset::new(mask)).unwrap();
        assert!((realignment_check(&rho).unwrap().evidence - want).abs() < 1e-12, "{mask:#06x}");
    }
    // N_I = 4 is not enough to silence the criterion
    let rho = lattice_state(LatticeSubset::new(0x0017)).unwrap();
    let v = realignment_check(&rho).unwrap();
    assert!(v.detected && (v.evidence - 1.5).abs() < 1e-12);
    let s = horodecki_2x4(0.5).unwrap();
    assert!(matches!(realignment_check(&s), Err(Error::NonSquareParties(2, 4))));
}

#[test]
fn realignment_never_contradicts_a_covering() {
    use lw_core::lattice::{classify, ppt_combinatorial, Classification};
    let mut ppt_hits = 0;
    for mask in 1..=u16::MAX {
        let s = LatticeSubset::new(mask);
        if !realignment_check(&lattice_state(s).unwrap()).unwrap().detected {
            continue;
        }
        let c = classify(s).unwrap();
        assert!(!matches!(c, Classification::Separable { .. }), "{mask:#06x}");
        if ppt_combinatorial(s).unwrap() {
            ppt_hits += 1;
            assert_eq!(c.tag(), "PptEntangled", "{mask:#06x}");
        }
    }
    assert_eq!(ppt_hits, 192);
}

#[test]
fn tiles_is_ppt_and_realignment_detects() {
    let rho = upb_complement_state(&tiles_upb(), BipartiteDims::square(3)).unwrap();
    assert!(!ppt_check(&rho, DETECTION_TOL).unwrap().detected);
    assert!(realignment_check(&rho).unwrap().detected);
}

#[test]
fn horodecki_states_are_ppt() {
    for a in [0.1, 0.5, 0.9] {
        assert!(!ppt_check(&horodecki_3x3(a).unwrap(), DETECTION_TOL).unwrap().detected);
    }
    for b in [0.1, 0.5, 0.9] {
        assert!(!ppt_check(&horodecki_2x4(b).unwrap(), DETECTION_TOL).unwrap().detected);
    }
}

#[test]
fn witness_values() {
    let d = BipartiteDims::square(2);
    let one = Witness::new(CMat::identity(4), d, WitnessKind::Custom).unwrap();
    let rho = werner_state(0.3).unwrap();
    assert!((witness_value(&one, &rho).unwrap() - 1.0).abs() < 1e-14);
    let p00 = CMat::diag(&[1.0, 0.0, 0.0, 0.0]);
    let w = Witness::new(p00, d, WitnessKind::Custom).unwrap();
    let far = DensityMatrix::new(CMat::diag(&[0.0, 0.0, 0.0, 1.0]), d).unwrap();
    assert_eq!(witness_value(&w, &far).unwrap(), 0.0);
    assert!((one.normalized().unwrap().mat().trace().re - 1.0).abs() < 1e-15);
}

#[test]
fn diagonal_witness_bookkeeping() {
    for (mask, p) in [(0xf587u16, pt(3, 3)), (0xe1ef, pt(0, 0)), (0x9b77, pt(1, 1))] {
        let s = LatticeSubset::new(mask);
        if !s.contains(p) {
            continue;
        }
        for delta in [0.01, 0.5, 1.0, 3.0] {
            let w = diagonal_lattice_witness(s, p, delta).unwrap();
            let v = witness_value(&w, &lattice_state(s).unwrap()).unwrap();
            assert!((v + delta / (4.0 * s.len() as f64)).abs() < 1e-12);
        }
        let w = diagonal_lattice_witness(s, p, 1e-9).unwrap();
        assert!(witness_value(&w, &lattice_state(s).unwrap()).unwrap().abs() < 1e-9);
    }
    let s = LatticeSubset::new(0x00ff);
    assert!(matches!(diagonal_lattice_witness(s, pt(0, 3), 1.0), Err(Error::PointNotInSubset(0, 3))));
    assert!(diagonal_lattice_witness(s, pt(0, 0), 0.0).is_err());
}

#[test]
fn product_expectation_of_witness_is_one_minus_delta_functional() {
    // ⟨ψ⊗φ*|C|ψ⊗φ*⟩ = (1 − Δ)/4 on product vectors
    let s = LatticeSubset::new(0xf587);
    let p = pt(3, 3);
    let delta = 0.7;
    let w = diagonal_lattice_witness(s, p, delta).unwrap();
    let f = DeltaFunctional::new(s, p, delta).unwrap();
    let mut g = rng(34);
    for _ in 0..50 {
        let psi = random_unit(&mut g, 4);
        let phi = random_unit(&mut g, 4);
        let conj: Vec<_> = phi.iter().map(|z| z.conj()).collect();
        let lhs = w.mat().expectation(&linalg::kron_vec(&psi, &conj)).re;
        let d1 = f.value(&psi, &phi);
        let d2 = f.value(&phi, &psi);
        assert!((d1 - d2).abs() < 1e-12);
        assert!((lhs - (1.0 - d1) / 4.0).abs() < 1e-12, "{lhs} vs {}", (1.0 - d1) / 4.0);
    }
}

#[test]
fn max_delta_cases() {
    // every point of the full lattice lies in some quadruple inside it
    assert_eq!(max_delta_with(LatticeSubset::FULL, pt(0, 0), DEFAULT_SEED, 16).unwrap(), 0.0);
    // ex6.14: (3,3) is special, (0,0) is not
    let s = LatticeSubset::new(0xf587);
    let d = max_delta(s, pt(3, 3), DEFAULT_SEED).unwrap();
    assert!(d > 0.5, "delta {d}");
    assert!(max_delta_with(s, pt(0, 0), DEFAULT_SEED, 16).unwrap() < 1e-3);
    // the returned δ survives a re-check with four times the restarts
    let f = DeltaFunctional::new(s, pt(3, 3), d).unwrap();
    assert!(!f.exceeds(1.0 + DETECTION_TOL, 4 * 64, DEFAULT_SEED).unwrap());
    // and the witness at that δ is not violated on product vectors
    let w = diagonal_lattice_witness(s, pt(3, 3), d).unwrap();
    assert!(w.product_minimum(64, DEFAULT_SEED).unwrap().value > -DETECTION_TOL);
}

#[test]
fn edge_witness_detects_horodecki_state() {
    let rho = horodecki_3x3(0.5).unwrap();
    let ew = edge_witness(&rho, DEFAULT_SEED).unwrap();
    assert!(ew.epsilon > 0.0);
    assert!(ew.kernel_dims.0 + ew.kernel_dims.1 > 0);
    let v = witness_value(&ew.witness, &rho).unwrap();
    assert!((v + ew.epsilon).abs() < 1e-9, "Tr(Wρ) = {v}, ε = {}", ew.epsilon);
    assert!(ew.witness.product_minimum(32, 1).unwrap().value > -1e-8);

    let bell = DensityMatrix::pure(&bell_state(BellKind::PhiPlus), BipartiteDims::square(2)).unwrap();
    assert_eq!(edge_witness(&bell, DEFAULT_SEED).unwrap_err(), Error::NotPpt);
    let mixed = DensityMatrix::new(CMat::identity(4).scale(0.25), BipartiteDims::square(2)).unwrap();
    assert_eq!(edge_witness(&mixed, DEFAULT_SEED).unwrap_err(), Error::ZeroKernels);
}
