use algebra::{
    AutomorphismSpec, Element, EuMono, Gen, Half, Hopf, Monomial, SuMono,
};
use num_complex::Complex64;
use proptest::prelude::*;

type EA = Hopf<EuMono, f64>;
type SA = Hopf<SuMono, f64>;

const E_GENS: [Gen; 4] = [Gen::DeltaHalf, Gen::DeltaHalfInv, Gen::Z, Gen::ZStar];
const S_GENS: [Gen; 4] = [Gen::X, Gen::U, Gen::UStar, Gen::XStar];

fn word(gens: &'static [Gen; 4], max: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(prop::sample::select(&gens[..]), 0..=max)
}

fn moves() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    prop::collection::vec((0usize..64, 0usize..64, 0usize..4), 0..12)
}

fn sum_words<M: Monomial>(alg: &Hopf<M, f64>, comb: &[(Vec<Gen>, f64)]) -> Element<M, f64> {
    comb.iter().fold(Element::zero(), |acc, (w, c)| {
        &acc + &alg.word_product(w).scale(Complex64::new(*c, 0.0))
    })
}

/// Applies random defining relations (and, for `E_q(2)`, inserts cancelling
/// pairs `d^1/2 d^-1/2`) to a word, keeping the linear combination.
fn scramble<M: Monomial>(
    alg: &Hopf<M, f64>,
    w: Vec<Gen>,
    mv: &[(usize, usize, usize)],
    insert: Option<(Gen, Gen)>,
) -> Vec<(Vec<Gen>, f64)> {
    let mut comb = vec![(w, 1.0)];
    for &(idx, pos, pick) in mv {
        let k = idx % comb.len();
        let (wk, ck) = comb[k].clone();
        if pick == 3 {
            if let Some((a, b)) = insert {
                let p = if wk.is_empty() { 0 } else { pos % (wk.len() + 1) };
                let mut w2 = wk.clone();
                w2.splice(p..p, [a, b]);
                comb[k] = (w2, ck);
            }
            continue;
        }
        if wk.len() < 2 {
            continue;
        }
        if let Some(rep) = alg.local_rewrite(&wk, pos % (wk.len() - 1), pick) {
            comb.remove(k);
            comb.extend(rep.into_iter().map(|(w2, c)| (w2, c * ck)));
        }
        if comb.is_empty() {
            break;
        }
    }
    comb
}

fn close<M: Monomial>(a: &Element<M, f64>, b: &Element<M, f64>, tol: f64) -> bool {
    a.max_deviation(b) <= tol * a.max_norm().max(b.max_norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rewriting_is_confluent_e(w in word(&E_GENS, 8), mv in moves(), q in 0.3f64..0.95) {
        let a = EA::new(q).unwrap();
        let base = a.word_product(&w);
        let comb = scramble(&a, w, &mv, Some((Gen::DeltaHalf, Gen::DeltaHalfInv)));
        prop_assert!(close(&base, &sum_words(&a, &comb), 1e-12));
    }

    #[test]
    fn rewriting_is_confluent_su(w in word(&S_GENS, 8), mv in moves(), q in 0.3f64..0.95) {
        let a = SA::new(q).unwrap();
        let base = a.word_product(&w);
        let comb = scramble(&a, w, &mv, None);
        prop_assert!(close(&base, &sum_words(&a, &comb), 1e-12));
    }

    #[test]
    fn multiplication_is_associative_su(
        w1 in word(&S_GENS, 4), w2 in word(&S_GENS, 4), w3 in word(&S_GENS, 4), q in 0.3f64..0.95,
    ) {
        let a = SA::new(q).unwrap();
        let (f, g, h) = (a.word_product(&w1), a.word_product(&w2), a.word_product(&w3));
        prop_assert!(close(&a.mul(&a.mul(&f, &g), &h), &a.mul(&f, &a.mul(&g, &h)), 1e-12));
    }

    #[test]
    fn star_is_an_exact_involution(w in word(&E_GENS, 8), v in word(&S_GENS, 8), re in -3i32..3, im in -3i32..3) {
        // q = 1/2 keeps every coefficient a dyadic rational.
        let c = Complex64::new(f64::from(re), f64::from(im));
        let a = EA::new(0.5).unwrap();
        let f = a.word_product(&w).scale(c);
        prop_assert_eq!(a.star(&a.star(&f)), f);
        let s = SA::new(0.5).unwrap();
        let g = s.word_product(&v).scale(c);
        prop_assert_eq!(s.star(&s.star(&g)), g);
    }

    #[test]
    fn star_is_an_involution(w in word(&E_GENS, 8), v in word(&S_GENS, 6), q in 0.3f64..0.95) {
        let a = EA::new(q).unwrap();
        let f = a.word_product(&w).scale(Complex64::new(0.3, -1.2));
        prop_assert!(close(&a.star(&a.star(&f)), &f, 1e-13));
        let s = SA::new(q).unwrap();
        let g = s.word_product(&v).scale(Complex64::new(0.3, -1.2));
        prop_assert!(close(&s.star(&s.star(&g)), &g, 1e-13));
    }

    #[test]
    fn star_is_antimultiplicative(w1 in word(&S_GENS, 4), w2 in word(&S_GENS, 4), q in 0.3f64..0.95) {
        let a = SA::new(q).unwrap();
        let (f, g) = (a.word_product(&w1), a.word_product(&w2));
        prop_assert!(close(&a.star(&a.mul(&f, &g)), &a.mul(&a.star(&g), &a.star(&f)), 1e-12));
    }

    #[test]
    fn coproduct_and_counit_are_homomorphisms_e(
        w1 in word(&E_GENS, 4), w2 in word(&E_GENS, 4), q in 0.3f64..0.95,
    ) {
        let a = EA::new(q).unwrap();
        let (f, g) = (a.word_product(&w1), a.word_product(&w2));
        let fg = a.mul(&f, &g);
        let lhs = a.coproduct(&fg);
        let rhs = a.tensor_mul(&a.coproduct(&f), &a.coproduct(&g));
        prop_assert!(lhs.max_deviation(&rhs) <= 1e-12 * lhs.max_norm().max(1.0), "{}", lhs.max_deviation(&rhs) / lhs.max_norm());
        prop_assert!((a.counit(&fg) - a.counit(&f) * a.counit(&g)).norm() <= 1e-12);
    }

    #[test]
    fn coproduct_and_counit_are_homomorphisms_su(
        w1 in word(&S_GENS, 3), w2 in word(&S_GENS, 3), q in 0.3f64..0.95,
    ) {
        let a = SA::new(q).unwrap();
        let (f, g) = (a.word_product(&w1), a.word_product(&w2));
        let fg = a.mul(&f, &g);
        let lhs = a.coproduct(&fg);
        let rhs = a.tensor_mul(&a.coproduct(&f), &a.coproduct(&g));
        prop_assert!(lhs.max_deviation(&rhs) <= 1e-12 * lhs.max_norm().max(1.0), "{}", lhs.max_deviation(&rhs) / lhs.max_norm());
        prop_assert!((a.counit(&fg) - a.counit(&f) * a.counit(&g)).norm() <= 1e-12);
    }

    #[test]
    fn hopf_axioms_hold_on_random_words(
        w in word(&E_GENS, 4), v in word(&S_GENS, 3), q in 0.3f64..0.95,
    ) {
        let a = EA::new(q).unwrap();
        prop_assert!(a.hopf_axiom_check(&[a.word_product(&w)]).passes(1e-11));
        let s = SA::new(q).unwrap();
        prop_assert!(s.hopf_axiom_check(&[s.word_product(&v)]).passes(1e-11));
    }

    #[test]
    fn bigrade_is_additive(
        h1 in -4i32..4, b1 in 0u32..3, c1 in 0u32..3,
        h2 in -4i32..4, b2 in 0u32..3, c2 in 0u32..3,
    ) {
        let a = EA::new(0.7).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let f = Element::monomial(EuMono::new(h1, b1, c1), one);
        let g = Element::monomial(EuMono::new(h2, b2, c2), one);
        let (bf, bg, bfg) = (a.bigrade_of(&f), a.bigrade_of(&g), a.bigrade_of(&a.mul(&f, &g)));
        prop_assert!(bfg.homogeneous);
        prop_assert_eq!((bfg.i, bfg.j), (bf.i + bg.i, bf.j + bg.j));
    }

    #[test]
    fn theta_is_an_antihomomorphism(w1 in word(&S_GENS, 4), w2 in word(&S_GENS, 4), q in 0.3f64..0.95) {
        let a = SA::new(q).unwrap();
        let (f, g) = (a.word_product(&w1), a.word_product(&w2));
        prop_assert!(close(&a.theta(&a.mul(&f, &g)), &a.mul(&a.theta(&g), &a.theta(&f)), 1e-12));
    }
}

#[test]
fn tau_scales_homogeneous_monomials() {
    let q = 0.7;
    let a = EA::new(q).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let mut claim_holds = Vec::new();
    for h in -4..=4 {
        for s in -3i32..=3 {
            let (b, c) = if s >= 0 { (s as u32, 0) } else { (0, (-s) as u32) };
            let m = EuMono::new(h, b, c);
            let (i, j) = m.bigrade();
            let (i, j) = (i.to_f64(), j.to_f64());
            let f = Element::monomial(m, one);
            let t = a.apply_automorphism(AutomorphismSpec::Tau, &f).coeff(&m).re;
            // z picks up q and z* picks up q^-2.
            let e = if i >= j { -4.0 * j + (i - j) } else { -4.0 * j + 2.0 * (i - j) };
            assert!((t - q.powf(e)).abs() <= 1e-12 * t);
            let claimed = q.powf(-2.0 * (i + j));
            claim_holds.push(((t - claimed).abs() <= 1e-12 * t, s == 0));
        }
    }
    // The scaling q^(-2(i+j)) holds exactly on pure delta powers.
    assert!(claim_holds.iter().all(|&(ok, pure)| ok == pure));
}

#[test]
fn sigma_scaling_matches_bigrade() {
    let q = 0.8;
    let a = EA::new(q).unwrap();
    let m = EuMono::new(3, 1, 2);
    let (i, j) = m.bigrade();
    assert_eq!((i, j), (Half(1), Half(3)));
    let f = Element::monomial(m, Complex64::new(1.0, 0.0));
    let s = a.apply_automorphism(AutomorphismSpec::Sigma, &f).coeff(&m).re;
    assert!((s - q.powi(-4)).abs() < 1e-14);
}
