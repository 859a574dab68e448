use algebra::{Half, Hopf, SuAlgebra, SuMono};
use matrixel::calibration::corepresentation_deviation;
use matrixel::{
    calibrate, classical_contraction_check, coefficient_ratios, contraction_check, eq_matrix_element,
    graded_counit, render_constants, represent_eq, su_matrix_element, CompactLabel, EuclidLabel,
};
use num_complex::Complex64;
use proptest::prelude::*;
use qkernel::{q_bessel, DeformationParameter};
use reps::{represent_graded, BasisWindow};

/// `<target| t^p_ij |n>` built factor by factor from the defining product.
fn direct_action(p: f64, i: i64, j: i64, q: f64, n: i64) -> (i64, Complex64) {
    let rho2 = |m: i64| q.powi((-2 * m - 2) as i32);
    let param = DeformationParameter::new(q).unwrap();
    let bessel = |d: i64, x: f64| q_bessel(d as u32, Complex64::new(x, 0.0), &param).unwrap().value;
    // delta^(-j/2) raises by j
    let mut m = n + j;
    let mut val;
    if i >= j {
        let d = i - j;
        val = Complex64::i().powi(d as i32) * bessel(d, p * p * rho2(m));
        for _ in 0..d {
            val *= p * q.powi((-m - 1) as i32);
            m += 1;
        }
    } else {
        let d = j - i;
        val = Complex64::new(0.0, -q).powi((i - j) as i32);
        for _ in 0..d {
            val *= p * q.powi(-m as i32);
            m -= 1;
        }
        val *= bessel(d, p * p * rho2(m));
    }
    (m + j, val)
}

#[test]
fn calibration_selects_the_frozen_convention() {
    let report = calibrate(&[0.6, 0.85]).unwrap();
    assert_eq!(report.passing().len(), 1, "{:?}", report.passing());
    let sel = report.selected.unwrap();
    assert_eq!(sel, matrixel::calibrated::CALIBRATED);
    assert_eq!(render_constants(&sel), include_str!("../src/calibrated.rs"));
    let printed = report
        .entries
        .iter()
        .find(|e| e.convention == matrixel::Convention::PRINTED)
        .unwrap();
    assert!(!printed.passes());
}

#[test]
fn counit_is_diagonal() {
    for q in [0.5, 0.7, 0.9] {
        let alg = SuAlgebra::new(q).unwrap();
        for l2 in 0..=4 {
            for lab in CompactLabel::all(Half(l2)) {
                let e = alg.counit(&su_matrix_element(&alg, lab).unwrap());
                let want = if lab.i == lab.j { 1.0 } else { 0.0 };
                assert!((e - Complex64::new(want, 0.0)).norm() <= 1e-12);
            }
        }
        for i in -4..=4i64 {
            for j in (i - 3)..=(i + 3) {
                let e = graded_counit(&eq_matrix_element(EuclidLabel::new(0.9, i, j).unwrap(), q), q).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((e - Complex64::new(want, 0.0)).norm() <= 1e-12);
            }
        }
    }
}

#[test]
fn euclid_elements_match_the_defining_product() {
    let q = 0.75;
    let w = BasisWindow::full(-14, 6).unwrap();
    for (i, j) in [(0, 0), (1, 0), (0, 1), (2, -1), (-1, 2), (3, 1), (-2, -2)] {
        let lab = EuclidLabel::new(0.9, i, j).unwrap();
        let op = represent_eq(lab, q, w).unwrap();
        for n in -8..=2 {
            let (t, v) = direct_action(0.9, i, j, q, n);
            let got = op.get(t, n);
            assert!((got - v).norm() <= 1e-12 * v.norm().max(1.0), "{i} {j} {n}: {got} vs {v}");
        }
    }
}

#[test]
fn contraction_converges() {
    let w = BasisWindow::full(-30, 19).unwrap();
    let ls: Vec<Half> = [5, 10, 20, 40].iter().map(|&l| Half::from_int(l)).collect();
    for (i, j) in [(0, 0), (1, 0), (0, 1)] {
        let r = contraction_check(EuclidLabel::new(1.0, i, j).unwrap(), &ls, 0.9, w).unwrap();
        assert!(r.strictly_decreasing(), "{r:?}");
        assert!(r.last() <= 1e-3, "{r:?}");
    }
}

#[test]
fn series_coefficients_converge_to_bessel_coefficients() {
    let alg = SuAlgebra::new(0.8).unwrap();
    let target = EuclidLabel::new(1.0, 1, -1).unwrap();
    let err = |l: i64| -> f64 {
        coefficient_ratios(&alg, target, Half::from_int(l), 6)
            .unwrap()
            .iter()
            .map(|r| (r - Complex64::new(1.0, 0.0)).norm())
            .fold(0.0, f64::max)
    };
    let e: Vec<f64> = [8, 16, 32, 64].iter().map(|&l| err(l)).collect();
    assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
    assert!(e[3] < 1e-2, "{e:?}");
}

#[test]
fn classical_contraction_converges() {
    for p_rho in [0.5, 1.0] {
        for (k, j) in [(0, 0), (1, 0)] {
            let r = classical_contraction_check(p_rho, k, j, &[10, 50, 200]).unwrap();
            assert!(r.strictly_decreasing(), "{r:?}");
            assert!(r.last() <= 1e-2, "{r:?}");
        }
    }
    let r = classical_contraction_check(0.0, 0, 0, &[1, 3, 7]);
    assert!(matches!(r, Err(matrixel::MatrixError::Convergence(_))));
}

#[test]
fn quantum_profile_approaches_classical_bessel() {
    let q = 0.999;
    let p = 1.0;
    let lab = EuclidLabel::new(p, 0, 0).unwrap();
    let w = BasisWindow::full(-8, 6).unwrap();
    let op = represent_graded(&eq_matrix_element(lab, q), q, w).unwrap();
    for j in -6..=3 {
        let rho = q.powi((-j - 1) as i32);
        let classical = matrixel::bessel_integral(2.0 * p * rho, 0);
        assert!((op.get(j, j) - classical).norm() <= 5e-2, "{j}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn matrix_elements_form_a_corepresentation(q in 0.3f64..0.95, l2 in 1i64..=4) {
        let alg = Hopf::<SuMono, f64>::new(q).unwrap();
        let dev = corepresentation_deviation(&alg, matrixel::calibrated::CALIBRATED, Half(l2)).unwrap();
        prop_assert!(dev <= 1e-10);
    }

    #[test]
    fn euclid_star_is_the_adjoint(i in -3i64..=3, j in -3i64..=3, p in 0.3f64..2.0) {
        let q = 0.7;
        let g = eq_matrix_element(EuclidLabel::new(p, i, j).unwrap(), q);
        let w = BasisWindow::full(-12, 4).unwrap();
        let a = represent_graded(&g, q, w).unwrap().adjoint();
        let b = represent_graded(&g.star(q), q, w).unwrap();
        prop_assert!(a.max_deviation_on(&b, w.lo, w.hi) <= 1e-10 * a.max_norm_on(w.lo, w.hi).max(1.0));
    }

    #[test]
    fn compact_elements_are_unitary(q in 0.3f64..0.95, l2 in 1i64..=3) {
        // sum_k t_ki* t_kj = delta_ij
        let alg = Hopf::<SuMono, f64>::new(q).unwrap();
        let l = Half(l2);
        let ms: Vec<Half> = (0..=l2).map(|k| Half(l2 - 2 * k)).collect();
        for &i in &ms {
            for &j in &ms {
                let mut s = algebra::Element::zero();
                for &k in &ms {
                    let a = su_matrix_element(&alg, CompactLabel::new(l, k, i).unwrap()).unwrap();
                    let b = su_matrix_element(&alg, CompactLabel::new(l, k, j).unwrap()).unwrap();
                    s = &s + &alg.mul(&alg.star(&a), &b);
                }
                let want = if i == j { algebra::Element::one() } else { algebra::Element::zero() };
                prop_assert!(s.max_deviation(&want) <= 1e-10, "{} {} {}", i, j, s);
            }
        }
    }
}
