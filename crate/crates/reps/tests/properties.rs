use algebra::{EAlgebra, Element, Gen, GradedElement, Hopf, RadialFn, SuAlgebra, SuMono};
use num_complex::Complex64;
use proptest::prelude::*;
use reps::{
    e_sample, haar_check_e, integral_e, ordered_product, represent, represent_graded,
    scalar_product_e, subset_measure, weighted_trace, BasisWindow, EuclidRep, IndexSet, Side,
    SpectralOptions, SuRep,
};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn e_word() -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(
        prop::sample::select(vec![Gen::Z, Gen::ZStar, Gen::DeltaHalf, Gen::DeltaHalfInv]),
        0..=8,
    )
}

fn su_word() -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(
        prop::sample::select(vec![Gen::X, Gen::XStar, Gen::U, Gen::UStar]),
        0..=8,
    )
}

fn lattice_table() -> impl Strategy<Value = Vec<(i64, f64)>> {
    prop::collection::vec((-3i64..=3, -1.0f64..1.0), 1..=3)
}

fn graded(h: i32, s: i32, tab: &[(i64, f64)], coeff: Complex64) -> GradedElement<f64> {
    let r = RadialFn::Lattice(tab.iter().map(|&(k, v)| (k, c(v))).collect());
    GradedElement::single(h, s, coeff, r)
}

fn shape() -> impl Strategy<Value = (i32, i32)> {
    prop::sample::select(vec![(0, 0), (0, 1), (2, -1), (0, -1), (-2, 1), (2, 0), (1, 0)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn e_normal_form_matches_generator_products(word in e_word()) {
        let alg = EAlgebra::new(0.7).unwrap();
        let f = alg.word_product(&word);
        let w = BasisWindow::full(-12, 12).unwrap();
        let rep = EuclidRep { q: 0.7 };
        let lhs = represent(&rep, &f, w).unwrap();
        let rhs = ordered_product(&rep, &word, w);
        let (lo, hi) = w.interior(word.len() as i64);
        prop_assert!(lhs.max_relative_deviation_on(&rhs, lo, hi) <= 1e-10);
    }

    #[test]
    fn su_normal_form_matches_generator_products(word in su_word(), q in 0.3f64..0.95) {
        let alg = SuAlgebra::new(q).unwrap();
        let f = alg.word_product(&word);
        let w = BasisWindow::half(20).unwrap();
        let rep = SuRep { q };
        let lhs = represent(&rep, &f, w).unwrap();
        let rhs = ordered_product(&rep, &word, w);
        let (lo, hi) = w.interior(word.len() as i64);
        prop_assert!(lhs.max_relative_deviation_on(&rhs, lo, hi) <= 1e-10);
    }

    #[test]
    fn star_is_the_adjoint(word in e_word(), su in su_word()) {
        let alg = EAlgebra::new(0.6).unwrap();
        let f = alg.word_product(&word);
        let w = BasisWindow::full(-10, 10).unwrap();
        let rep = EuclidRep { q: 0.6 };
        let a = represent(&rep, &alg.star(&f), w).unwrap();
        let b = represent(&rep, &f, w).unwrap().adjoint();
        let (lo, hi) = w.interior(word.len() as i64);
        prop_assert!(a.max_relative_deviation_on(&b, lo, hi) <= 1e-12);

        let alg = SuAlgebra::new(0.6).unwrap();
        let f = alg.word_product(&su);
        let w = BasisWindow::half(16).unwrap();
        let rep = SuRep { q: 0.6 };
        let a = represent(&rep, &alg.star(&f), w).unwrap();
        let b = represent(&rep, &f, w).unwrap().adjoint();
        prop_assert!(a.max_relative_deviation_on(&b, 0, 16 - su.len() as i64) <= 1e-12);
    }

    #[test]
    fn integral_is_the_weighted_trace(tab in lattice_table(), (h, s) in shape()) {
        let q = 0.7;
        let f = graded(0, 0, &tab, c(1.0)).plus(&graded(h, s, &tab, c(0.5)));
        let v = integral_e(&f, q, 1e-16).unwrap();
        let zero = algebra::Half(0);
        let origin = GradedElement {
            terms: f.terms.iter().filter(|t| t.bigrade() == (zero, zero)).cloned().collect(),
        };
        let op = represent_graded(&origin, q, BasisWindow::full(-10, 10).unwrap()).unwrap();
        let t = weighted_trace(&op, q);
        prop_assert!((v.value - t).norm() <= 1e-13 * (1.0 + t.norm()));
    }

    #[test]
    fn left_product_is_positive(tab in lattice_table(), (h, s) in shape(), im in -1.0f64..1.0) {
        let q = 0.7;
        let f = graded(h, s, &tab, Complex64::new(0.3, im));
        let v = scalar_product_e(&f, &f, Side::Left, q, 1e-16).unwrap().value;
        // Frobenius form (1 - q^2) sum_n |<m|f|n>|^2 rho^2(n)
        let op = represent_graded(&f, q, BasisWindow::full(-12, 12).unwrap()).unwrap();
        let frob = op.adjoint().matmul(&op);
        let t = weighted_trace(&frob, q);
        prop_assert!(v.im.abs() <= 1e-14 * v.re.abs().max(1e-300));
        prop_assert!(v.re >= 0.0);
        prop_assert!((v - t).norm() <= 1e-10 * t.norm().max(1e-300));
    }

    #[test]
    fn right_product_is_left_product_of_adjoints(tab in lattice_table(), (h, s) in shape()) {
        let q = 0.7;
        let f = graded(h, s, &tab, c(0.8));
        let g = graded(h, s, &tab, c(-0.4)).plus(&graded(h, s, &[(0, 1.0)], c(1.0)));
        let r = scalar_product_e(&f, &g, Side::Right, q, 1e-16).unwrap().value;
        let l = scalar_product_e(&f.star(q), &g.star(q), Side::Left, q, 1e-16).unwrap().value;
        prop_assert!((r - l.conj()).norm() <= 1e-12 * (1.0 + r.norm()));
    }

    #[test]
    fn different_bigrades_are_orthogonal(tab in lattice_table(), a in shape(), b in shape()) {
        let q = 0.7;
        let f = graded(a.0, a.1, &tab, c(1.0));
        let g = graded(b.0, b.1, &tab, c(1.0));
        prop_assume!(f.bigrade() != g.bigrade());
        for side in [Side::Left, Side::Right] {
            prop_assert_eq!(scalar_product_e(&f, &g, side, q, 1e-16).unwrap().value, c(0.0));
        }
    }

    #[test]
    fn sigma_satisfies_the_trace_identity(t1 in lattice_table(), t2 in lattice_table(), (h, s) in shape()) {
        // Tr(g f rho^2) = Tr(sigma(f) g rho^2) for f in one bigrade, g in the opposite
        let q = 0.7;
        let f = graded(h, s, &t1, c(1.0));
        let g = graded(-h, -s, &t2, c(1.0));
        let w = BasisWindow::full(-14, 14).unwrap();
        let (fo, go) = (represent_graded(&f, q, w).unwrap(), represent_graded(&g, q, w).unwrap());
        let so = represent_graded(&f.sigma(q), q, w).unwrap();
        let a = weighted_trace(&go.matmul(&fo), q);
        let b = weighted_trace(&so.matmul(&go), q);
        prop_assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
    }
}

#[test]
fn measure_is_additive_exactly() {
    let q = 0.5;
    for k in -4..=2 {
        let a = subset_measure(&IndexSet::AtMost(k), q).unwrap();
        let b = subset_measure(&IndexSet::AtMost(k - 1), q).unwrap();
        let p = subset_measure(&IndexSet::Finite(vec![k]), q).unwrap();
        assert_eq!(a, b + p);
    }
}

#[test]
fn e_sample_is_invariant() {
    let q = 0.7;
    let alg = EAlgebra::new(q).unwrap();
    let sample = e_sample::<f64>();
    assert_eq!(sample.len(), 20);
    for g in &sample {
        let r = haar_check_e(&alg, g, SpectralOptions::for_q(q)).unwrap();
        assert!(r.max_deviation() <= 1e-8, "{r:?}");
    }
}

#[test]
fn e_invariance_at_other_q() {
    for q in [0.5, 0.85] {
        let alg = EAlgebra::new(q).unwrap();
        for g in e_sample::<f64>().iter().take(6) {
            let r = haar_check_e(&alg, g, SpectralOptions::for_q(q)).unwrap();
            assert!(r.max_deviation() <= 1e-8, "q = {q}: {r:?}");
        }
    }
}

#[test]
fn su_integral_matches_trace() {
    let q = 0.65;
    let alg = Hopf::<SuMono, f64>::new(q).unwrap();
    for f in reps::su_sample::<f64>() {
        let sym = reps::integral_su_closed(&f, q);
        let num = reps::integral_su(&f, q, 1e-17).unwrap().value;
        assert!((sym - num).norm() <= 1e-13);
        let _ = alg.counit(&f);
    }
    let one: Element<SuMono, f64> = Element::one();
    assert!((reps::integral_su(&one, q, 1e-17).unwrap().value - c(1.0)).norm() <= 1e-12);
}
