use algebra::{EAlgebra, GeneratorKind, SuAlgebra};
use eq2cli::expr::{eval_e, eval_su, parse_expression, Expr, GenName, Power};
use num_complex::Complex64;
use proptest::prelude::*;

fn number() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..1000).prop_map(|n| Expr::Number(Complex64::new(f64::from(n) / 8.0, 0.0))),
        (1u32..1000).prop_map(|n| Expr::Number(Complex64::new(0.0, f64::from(n) / 4.0))),
        (0.0f64..1e6).prop_map(|x| Expr::Number(Complex64::new(x, 0.0))),
    ]
}

fn gen(kind: GeneratorKind) -> impl Strategy<Value = Expr> {
    let names: Vec<GenName> = match kind {
        GeneratorKind::CompactSU => vec![GenName::X, GenName::XStar, GenName::U, GenName::UStar],
        GeneratorKind::EuclidE => vec![GenName::D, GenName::DStar, GenName::Z, GenName::ZStar],
    };
    (prop::sample::select(names), -3i64..=4, any::<bool>(), any::<bool>()).prop_map(|(name, n, half, with)| {
        let power = if !with {
            None
        } else if name.invertible() {
            Some(Power { num: n, half })
        } else {
            Some(Power { num: n.abs(), half: false })
        };
        Expr::Gen { name, power }
    })
}

fn radial() -> impl Strategy<Value = Expr> {
    prop::collection::vec((-5i64..=5, -8i32..=8), 1..=3).prop_map(|t| {
        Expr::Radial(t.into_iter().map(|(k, v)| (k, Complex64::new(f64::from(v) / 4.0, 0.0))).collect())
    })
}

fn expr(kind: GeneratorKind) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![number(), gen(kind)];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|v| {
                let mut v: Vec<Expr> = v.into_iter().map(no_sum_neg).collect();
                if let Some(Expr::Neg(_)) = v.first() {
                    v[0] = Expr::Group(Box::new(v[0].clone()));
                }
                Expr::Sum(v)
            }),
            prop::collection::vec(inner.clone(), 2..4)
                .prop_map(|v| Expr::Product(v.into_iter().map(factor).collect())),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(factor(e)))),
            inner.prop_map(|e| Expr::Group(Box::new(e))),
        ]
    })
}

/// Wraps sums and products so they stay a single factor.
fn factor(e: Expr) -> Expr {
    match e {
        Expr::Sum(_) | Expr::Product(_) => Expr::Group(Box::new(e)),
        other => other,
    }
}

fn no_sum_neg(e: Expr) -> Expr {
    match e {
        Expr::Sum(_) => Expr::Group(Box::new(e)),
        other => other,
    }
}

proptest! {
    #[test]
    fn print_then_parse_is_identity_su(e in expr(GeneratorKind::CompactSU)) {
        let text = e.to_string();
        prop_assert_eq!(parse_expression(&text, GeneratorKind::CompactSU).unwrap(), e);
    }

    #[test]
    fn print_then_parse_is_identity_e(e in expr(GeneratorKind::EuclidE), r in radial()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expression(&text, GeneratorKind::EuclidE).unwrap(), e.clone());
        let with_radial = Expr::Product(vec![factor(e), r]);
        let text = with_radial.to_string();
        prop_assert_eq!(parse_expression(&text, GeneratorKind::EuclidE).unwrap(), with_radial);
    }

    #[test]
    fn canonical_element_text_reparses(e in expr(GeneratorKind::CompactSU), q in 0.3f64..0.9) {
        let alg = SuAlgebra::new(q).unwrap();
        let f = eval_su(&e, &alg).unwrap();
        let g = eval_su(&parse_expression(&f.to_string(), GeneratorKind::CompactSU).unwrap(), &alg).unwrap();
        prop_assert!(f.max_deviation(&g) <= 1e-12 * f.max_norm().max(1.0));
    }

    #[test]
    fn canonical_e_text_reparses(e in expr(GeneratorKind::EuclidE)) {
        let alg = EAlgebra::new(0.7).unwrap();
        let f = eval_e(&e, &alg).unwrap();
        let f = f.poly().unwrap();
        let back = eval_e(&parse_expression(&f.to_string(), GeneratorKind::EuclidE).unwrap(), &alg).unwrap();
        prop_assert!(f.max_deviation(back.poly().unwrap()) <= 1e-12 * f.max_norm().max(1.0));
    }
}

#[test]
fn documented_examples() {
    let e = parse_expression("z * zs", GeneratorKind::EuclidE).unwrap();
    assert!(matches!(e, Expr::Product(ref v) if v.len() == 2));
    assert!(parse_expression("d^-1 * z", GeneratorKind::EuclidE).is_ok());
    assert!(parse_expression("x^-1", GeneratorKind::CompactSU).is_err());
}
