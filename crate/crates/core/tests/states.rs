mod common;

use common::*;
use lw_core::lattice::LatticeSubset;
use lw_core::linalg::{self, CMat, ZERO};
use lw_core::pauli::PauliWord;
use lw_core::states::*;
use lw_core::{BipartiteDims, Error, Party, C64};

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check_state(rho: &DensityMatrix) {
    let m = rho.mat();
    assert!(m.hermitian_deviation() < 1e-12);
    assert!((m.trace().re - 1.0).abs() < 1e-10);
    assert!(linalg::min_eigenvalue(m, 1e-12).unwrap() > -1e-9);
}

#[test]
fn max_symmetric_vector_cases() {
    let h = 1.0 / 2f64.sqrt();
    let v = max_symmetric_vector(2).unwrap();
    assert_eq!(v.amplitudes(), &[r(h), ZERO, ZERO, r(h)][..]);
    for d in 2..=5 {
        let v = max_symmetric_vector(d).unwrap();
        assert!((linalg::vec_norm(v.amplitudes()) - 1.0).abs() < 1e-15);
        let red = linalg::partial_trace(&CMat::projector(v.amplitudes()), BipartiteDims::square(d), Party::Second);
        assert!(red.unwrap().max_abs_diff(&CMat::identity(d).scale(1.0 / d as f64)) < 1e-15);
    }
}

#[test]
fn basis_vectors() {
    let p0 = basis_projector(&PauliWord::from_u8(&[0]).unwrap()).unwrap();
    let pp = CMat::projector(max_symmetric_vector(2).unwrap().amplitudes());
    assert!(p0.mat().max_abs_diff(&pp) < 1e-15);
    let h = 1.0 / 2f64.sqrt();
    let psi2 = basis_vector(&PauliWord::from_u8(&[3]).unwrap()).unwrap();
    let want = [r(h), ZERO, ZERO, r(-h)];
    assert!(psi2.amplitudes().iter().zip(&want).all(|(a, b)| (a - b).norm() < 1e-15));
}

#[test]
fn basis_is_complete() {
    for n in 1..=2usize {
        let d = 1 << n;
        let mut sum = CMat::zeros(d * d);
        for c in 0..d * d {
            sum = &sum + basis_projector(&PauliWord::from_code(n, c)).unwrap().mat();
        }
        assert!(sum.max_abs_diff(&CMat::identity(d * d)) < 1e-12);
    }
}

#[test]
fn sigma_diagonal_spectrum_is_the_weights() {
    let mut g = rng(11);
    use rand::Rng;
    for n in 1..=2usize {
        for _ in 0..20 {
            let raw: Vec<f64> = (0..1 << (2 * n)).map(|_| g.gen_range(0.0..1.0)).collect();
            let s: f64 = raw.iter().sum();
            let w: Vec<f64> = raw.iter().map(|x| x / s).collect();
            let rho = sigma_diagonal_state(&SigmaDiagonalState::new(n, w.clone()).unwrap()).unwrap();
            check_state(&rho);
            assert!(max_diff(&sorted(rho.eigenvalues().unwrap()), &sorted(w)) < 1e-10);
        }
    }
    let mut w = vec![0.0; 4];
    w[0] = 1.0;
    let rho = sigma_diagonal_state(&SigmaDiagonalState::new(1, w).unwrap()).unwrap();
    assert!(rho.mat().max_abs_diff(&CMat::projector(max_symmetric_vector(2).unwrap().amplitudes())) < 1e-15);
    assert!(SigmaDiagonalState::new(1, vec![0.5, 0.6, 0.0, -0.1]).is_err());
}

#[test]
fn lattice_states() {
    let full = lattice_state(LatticeSubset::FULL).unwrap();
    assert!(full.mat().max_abs_diff(&CMat::identity(16).scale(1.0 / 16.0)) < 1e-15);
    for mask in [0x0001u16, 0x4948, 0xeee1, 0x9b77] {
        let s = LatticeSubset::new(mask);
        let rho = lattice_state(s).unwrap();
        check_state(&rho);
        for party in [Party::First, Party::Second] {
            let red = linalg::partial_trace(rho.mat(), rho.dims(), party).unwrap();
            assert!(red.max_abs_diff(&CMat::identity(4).scale(0.25)) < 1e-14);
        }
        let sn = von_neumann_entropy(&rho).unwrap();
        assert!((sn - (s.len() as f64).ln()).abs() < 1e-9);
    }
    assert!(lattice_state(LatticeSubset::new(0)).is_err());
}

#[test]
fn bell_states() {
    let kinds = [BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus];
    let h = 1.0 / 2f64.sqrt();
    assert_eq!(bell_state(BellKind::PhiPlus).amplitudes(), &[r(h), ZERO, ZERO, r(h)][..]);
    for (i, a) in kinds.iter().enumerate() {
        for (j, b) in kinds.iter().enumerate() {
            let ip = bell_state(*a).inner(&bell_state(*b)).norm();
            assert!((ip - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
        }
        let sc = schmidt(&bell_state(*a), BipartiteDims::square(2)).unwrap();
        assert_eq!(sc.rank(), 2);
        assert!(max_diff(&sc.coefficients, &[h, h]) < 1e-12);
    }
}

#[test]
fn werner_states() {
    let w0 = werner_state(0.0).unwrap();
    assert!(w0.mat().max_abs_diff(&CMat::identity(4).scale(0.25)) < 1e-15);
    let w1 = werner_state(1.0).unwrap();
    assert!(w1.mat().max_abs_diff(&CMat::projector(bell_state(BellKind::PsiMinus).amplitudes())) < 1e-15);
    assert!(matches!(werner_state(1.5), Err(Error::OutOfRange { .. })));
    assert!(werner_state(-0.5).is_err());
}

#[test]
fn tiles() {
    let v = tiles_upb();
    assert_eq!(v.len(), 5);
    for (i, a) in v.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((a.inner(b).norm() - want).abs() < 1e-14);
        }
    }
    let rho = upb_complement_state(&v, BipartiteDims::square(3)).unwrap();
    check_state(&rho);
    let ev = rho.eigenvalues().unwrap();
    assert_eq!(ev.iter().filter(|&&l| l > 1e-10).count(), 4);
}

#[test]
fn even_d_upb_counts() {
    for d in [4usize, 6, 8] {
        let v = even_d_upb(d).unwrap();
        assert_eq!(v.len(), 2 * (d / 2 - 1) * d);
        for (i, a) in v.iter().enumerate() {
            for b in &v[..i] {
                assert!(a.inner(b).norm() < 1e-10);
            }
            assert_eq!(schmidt(a, BipartiteDims::square(d)).unwrap().rank(), 1);
        }
        check_state(&upb_complement_state(&v, BipartiteDims::square(d)).unwrap());
    }
    assert!(even_d_upb(5).is_err());
}

#[test]
fn upb_complement_rejects_non_orthogonal() {
    let a = StateVector::new(vec![C64::new(1.0, 0.0), ZERO, ZERO, ZERO]).unwrap();
    let b = StateVector::normalized(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0), ZERO, ZERO]).unwrap();
    assert!(upb_complement_state(&[a, b], BipartiteDims::square(2)).is_err());
}

#[test]
fn horodecki_families() {
    let ra = horodecki_3x3(0.5).unwrap();
    check_state(&ra);
    let sb = horodecki_2x4(0.5).unwrap();
    check_state(&sb);
    assert_eq!(sb.dims(), BipartiteDims::new(2, 4));
    assert!(horodecki_3x3(0.0).is_err());
    assert!(horodecki_2x4(1.5).is_err());
}

#[test]
fn density_matrix_validation() {
    let d = BipartiteDims::square(2);
    assert!(matches!(DensityMatrix::new(CMat::identity(4), d), Err(_)));
    let neg = CMat::diag(&[1.5, -0.5, 0.0, 0.0]);
    assert!(DensityMatrix::new(neg, d).is_err());
    let non_h = CMat::from_fn(4, |i, j| if (i, j) == (0, 1) { C64::new(0.1, 0.0) } else if i == j { r(0.25) } else { ZERO });
    assert!(matches!(DensityMatrix::new(non_h, d), Err(Error::NotHermitian(_))));
    assert!(DensityMatrix::new(CMat::identity(4).scale(0.25), d).is_ok());
}

#[test]
fn entropy() {
    let pure = DensityMatrix::pure(&bell_state(BellKind::PhiPlus), BipartiteDims::square(2)).unwrap();
    assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
    let mixed = DensityMatrix::new(CMat::identity(9).scale(1.0 / 9.0), BipartiteDims::square(3)).unwrap();
    assert!((von_neumann_entropy(&mixed).unwrap() - 9f64.ln()).abs() < 1e-12);
}

#[test]
fn schmidt_matches_singular_values() {
    let mut g = rng(12);
    for (d1, d2) in [(2, 2), (2, 3), (3, 4), (4, 4)] {
        for _ in 0..20 {
            let v = StateVector::new(random_unit(&mut g, d1 * d2)).unwrap();
            let sc = schmidt(&v, BipartiteDims::new(d1, d2)).unwrap();
            let a = nalgebra::DMatrix::from_fn(d1, d2, |i, j| {
                let z = v.amplitudes()[i * d2 + j];
                nalgebra::Complex::new(z.re, z.im)
            });
            let want = sorted(a.singular_values().iter().copied().collect());
            assert!(max_diff(&sorted(sc.coefficients.clone()), &want) < 1e-10);
            let back = sc.reconstruct();
            assert!(back.iter().zip(v.amplitudes()).all(|(x, y)| (x - y).norm() < 1e-10));
        }
    }
    let d = 3;
    let sc = schmidt(&max_symmetric_vector(d).unwrap(), BipartiteDims::square(d)).unwrap();
    assert!(max_diff(&sc.coefficients, &[1.0 / 3f64.sqrt(); 3]) < 1e-12);
    let e0 = StateVector::new(vec![C64::new(1.0, 0.0), ZERO, ZERO]).unwrap();
    let prod = StateVector::product(&e0, &StateVector::new(random_unit(&mut g, 3)).unwrap());
    let sc = schmidt(&prod, BipartiteDims::square(3)).unwrap();
    assert_eq!(sc.rank(), 1);
    assert!((sc.coefficients[0] - 1.0).abs() < 1e-12);
}
