//! The invariant integral `psi` and the scalar products built from it.
//!
//! `psi` projects onto bigrade `(0, 0)` and then takes the weighted trace
//! `(1 - q^2) sum_n <n|f|n> rho^2(n)` on `E_q(2)`, and
//! `(1 - q^2) sum_{n>=0} q^(2n) <n|f|n>` on `SU_q(2)`.

use std::collections::BTreeMap;

use algebra::{Element, GradedElement, Half, Monomial, RadialFn, SuMono};
use num_complex::Complex;
use qkernel::Real;

use crate::rep::{component_weight, rho2, Representation, SuRep};
use crate::RepError;

/// Largest number of lattice points an adaptive sum may visit.
pub const MAX_POINTS: i64 = 1 << 16;

/// Value of an adaptive lattice sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralValue<T> {
    pub value: Complex<T>,
    /// Estimated size of the omitted tails.
    pub tail_bound: T,
    /// Summation window actually used.
    pub window: (i64, i64),
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn tail<T: Real>(last: Complex<T>, prev: Complex<T>) -> T {
    let (a, b) = (last.norm(), prev.norm());
    if a == T::zero() {
        return T::zero();
    }
    if b == T::zero() || a >= b {
        return T::infinity();
    }
    let r = a / b;
    a * r / (T::one() - r)
}

/// Sums `term(n)` over `n >= floor` (or all of `Z`), growing the window from
/// `start` by doubling until both tail estimates drop below `tol`.
pub fn adaptive_sum<T: Real, F>(
    term: F,
    start: (i64, i64),
    floor: Option<i64>,
    tol: T,
) -> Result<IntegralValue<T>, RepError>
where
    F: Fn(i64) -> Result<Complex<T>, RepError>,
{
    let mut cache: BTreeMap<i64, Complex<T>> = BTreeMap::new();
    let (mut lo, mut hi) = start;
    if let Some(f) = floor {
        lo = lo.max(f);
        hi = hi.max(lo + 1);
    }
    loop {
        for n in lo..=hi {
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(n) {
                let v = term(n)?;
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(RepError::Divergence {
                        points: (hi - lo + 1) as usize,
                        detail: format!("non-finite term at n = {n}"),
                    });
                }
                e.insert(v);
            }
        }
        let lower = match floor {
            Some(f) if lo <= f => T::zero(),
            _ => tail(cache[&lo], cache[&(lo + 1)]),
        };
        let upper = tail(cache[&hi], cache[&(hi - 1)]);
        if lower <= tol && upper <= tol {
            let mut acc = qkernel::Accumulator::<Complex<T>>::new();
            for n in lo..=hi {
                acc.add(cache[&n]);
            }
            return Ok(IntegralValue {
                value: acc.value(),
                tail_bound: lower + upper,
                window: (lo, hi),
            });
        }
        let width = hi - lo + 1;
        if 2 * width > MAX_POINTS {
            return Err(RepError::Divergence {
                points: width as usize,
                detail: format!(
                    "tails {:e} / {:e} above tolerance",
                    lower.to_f64().unwrap_or(f64::NAN),
                    upper.to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
        if lower > tol {
            lo -= width;
            if let Some(f) = floor {
                lo = lo.max(f);
            }
        }
        if upper > tol {
            hi += width;
        }
    }
}

/// Index range `(lo, hi)` covering the spectrum support of lattice radial
/// parts, in basis labels `n = -k - 1`.
fn support_hint<T: Real>(g: &GradedElement<T>) -> (i64, i64) {
    let mut lo = -8;
    let mut hi = 8;
    for t in &g.terms {
        if let RadialFn::Lattice(tab) = &t.radial {
            for &k in tab.keys() {
                let n = -k - 1;
                lo = lo.min(n - 2);
                hi = hi.max(n + 2);
            }
        }
    }
    (lo, hi)
}

fn origin() -> (Half, Half) {
    (Half(0), Half(0))
}

fn poly_at_origin<T: Real>(g: &GradedElement<T>) -> bool {
    g.terms.iter().any(|t| {
        t.bigrade() == origin()
            && matches!(&t.radial, RadialFn::Poly(c) if c.iter().any(|v| v.norm() != T::zero()))
    })
}

/// `psi` on `E_q(2)`. A nonzero polynomial `(0, 0)` part is not integrable and
/// gives [`RepError::Divergence`].
pub fn integral_e<T: Real>(g: &GradedElement<T>, q: T, tol: T) -> Result<IntegralValue<T>, RepError> {
    if poly_at_origin(g) {
        return Err(RepError::Divergence {
            points: 0,
            detail: "polynomial radial part in bigrade (0, 0)".into(),
        });
    }
    let w = T::one() - q * q;
    adaptive_sum(
        |n| Ok(component_weight(g, origin(), q, n)? * (w * rho2(q, n))),
        support_hint(g),
        None,
        tol,
    )
}

/// Closed form of `psi` on `SU_q(2)`: only `(u u*)^b` survives, with
/// `psi((u u*)^b) = (1 - q^2) / (1 - q^(2b+2))`.
pub fn integral_su_closed<T: Real>(f: &Element<SuMono, T>, q: T) -> Complex<T> {
    let w = T::one() - q * q;
    f.terms()
        .filter(|(m, _)| m.a == 0 && m.d == 0 && m.b == m.c)
        .fold(czero(), |acc, (m, c)| {
            acc + *c * (w / (T::one() - q.powi(2 * m.b as i32 + 2)))
        })
}

/// `psi` on `SU_q(2)` as a weighted trace in the representation.
pub fn integral_su<T: Real>(f: &Element<SuMono, T>, q: T, tol: T) -> Result<IntegralValue<T>, RepError> {
    let rep = SuRep { q };
    let w = T::one() - q * q;
    let diag: Vec<(SuMono, Complex<T>)> = f
        .terms()
        .filter(|(m, _)| m.a == 0 && m.d == 0 && m.b == m.c)
        .map(|(m, c)| (*m, *c))
        .collect();
    adaptive_sum(
        |n| {
            let mut acc = czero();
            for (m, c) in &diag {
                if let Some((_, x)) = rep.apply_word(&m.letters(), n) {
                    acc = acc + *c * x;
                }
            }
            Ok(acc * (w * q.powi(2 * n as i32)))
        },
        (0, 16),
        Some(0),
        tol,
    )
}

/// A set of basis labels `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSet {
    Finite(Vec<i64>),
    /// `n >= k`.
    AtLeast(i64),
    /// `n <= k`.
    AtMost(i64),
}

/// `psi` of the spectral projection of `rho^2` onto the labels in `set`:
/// `(1 - q^2) sum_{n in set} rho^2(n)`. Infinite for `AtLeast`.
pub fn subset_measure<T: Real>(set: &IndexSet, q: T) -> Result<T, RepError> {
    let w = T::one() - q * q;
    match set {
        IndexSet::Finite(ns) => {
            let mut uniq = ns.clone();
            uniq.sort_unstable();
            uniq.dedup();
            Ok(uniq.iter().map(|&n| w * rho2(q, n)).fold(T::zero(), |a, b| a + b))
        }
        // sum_{n<=k} q^(-2n-2) (1 - q^2) = q^(-2k-2)
        IndexSet::AtMost(k) => Ok(q.powi(-2 * *k as i32 - 2)),
        IndexSet::AtLeast(k) => Err(RepError::Divergence {
            points: 0,
            detail: format!("measure of n >= {k} is infinite"),
        }),
    }
}

/// Which scalar product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(f, g)_L = psi(f* g)`.
    Left,
    /// `(f, g)_R = psi(f g*)`.
    Right,
}

/// `(f, g)` on `E_q(2)`, computed per matching bigrade from the weighted
/// shifts: `Left` sums `conj(a(n)) b(n) rho^2(n)`, `Right` sums
/// `a(n) conj(b(n)) rho^2(n - sigma)` with `sigma = i + j`.
pub fn scalar_product_e<T: Real>(
    f: &GradedElement<T>,
    g: &GradedElement<T>,
    side: Side,
    q: T,
    tol: T,
) -> Result<IntegralValue<T>, RepError> {
    let grades: Vec<(Half, Half)> = {
        let mut v: Vec<_> = f.terms.iter().map(|t| t.bigrade()).collect();
        v.sort();
        v.dedup();
        v.retain(|b| g.terms.iter().any(|t| t.bigrade() == *b));
        v
    };
    let (hf, hg) = (support_hint(f), support_hint(g));
    let start = (hf.0.min(hg.0), hf.1.max(hg.1));
    let w = T::one() - q * q;
    let mut total = IntegralValue {
        value: czero(),
        tail_bound: T::zero(),
        window: start,
    };
    for b in grades {
        let sigma = (b.0 .0 + b.1 .0) / 2;
        let part = adaptive_sum(
            |n| {
                let a = component_weight(f, b, q, n)?;
                let c = component_weight(g, b, q, n)?;
                Ok(match side {
                    Side::Left => a.conj() * c * (w * rho2(q, n)),
                    Side::Right => a * c.conj() * (w * rho2(q, n - sigma)),
                })
            },
            start,
            None,
            tol,
        )?;
        total.value = total.value + part.value;
        total.tail_bound = total.tail_bound + part.tail_bound;
        total.window = (total.window.0.min(part.window.0), total.window.1.max(part.window.1));
    }
    Ok(total)
}

/// Trace form `(1 - q^2) Tr(A rho^2)` of an operator given by its entries,
/// as a cross-check of [`integral_e`] on a finite window.
pub fn weighted_trace<T: Real>(op: &crate::RepOperator<T>, q: T) -> Complex<T> {
    let w = T::one() - q * q;
    op.window
        .indices()
        .fold(czero(), |acc, n| acc + op.get(n, n) * (w * rho2(q, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra::{Gen, SuAlgebra};

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn su_normalization() {
        let s = SuAlgebra::new(0.7).unwrap();
        let v = integral_su(&Element::one(), 0.7, 1e-15).unwrap();
        assert!((v.value - c(1.0)).norm() < 1e-12);
        assert!((integral_su_closed(&Element::one(), 0.7) - c(1.0)).norm() < 1e-15);
        let uus = s.word_product(&[Gen::U, Gen::UStar]);
        let v = integral_su(&uus, 0.7, 1e-16).unwrap();
        assert!((v.value - c(0.51 / (1.0 - 0.7f64.powi(4)))).norm() < 1e-12);
        assert_eq!(integral_su_closed(&s.gen(Gen::X), 0.7), c(0.0));
    }

    #[test]
    fn lattice_delta_integrates_to_its_weight() {
        let q = 0.7;
        for k in [-3i64, 0, 4] {
            let r = RadialFn::Lattice([(k, c(1.0))].into_iter().collect());
            let g = GradedElement::single(0, 0, c(1.0), r);
            let v = integral_e(&g, q, 1e-15).unwrap();
            let expect = (1.0 - q * q) * q.powi(2 * k as i32);
            assert!((v.value.re - expect).abs() < 1e-14 * expect);
        }
    }

    #[test]
    fn polynomial_origin_part_diverges() {
        let g = GradedElement::single(0, 0, c(1.0), RadialFn::one());
        assert!(matches!(integral_e(&g, 0.7, 1e-12), Err(RepError::Divergence { .. })));
        let g = GradedElement::single(2, 0, c(1.0), RadialFn::one());
        assert_eq!(integral_e(&g, 0.7, 1e-12).unwrap().value, c(0.0));
    }

    #[test]
    fn measure_of_half_line() {
        let q = 0.5;
        assert_eq!(subset_measure(&IndexSet::AtMost(-1), q).unwrap(), 1.0);
        let a = subset_measure(&IndexSet::Finite(vec![-1, -2, -2]), q).unwrap();
        let b = subset_measure(&IndexSet::AtMost(-3), q).unwrap();
        assert_eq!(a + b, 1.0);
        assert!(subset_measure(&IndexSet::AtLeast(0), q).is_err());
    }

    #[test]
    fn bessel_integral_converges() {
        let q = 0.7;
        let r = RadialFn::bessel(0, qkernel::lattice_argument(0, q), q);
        let g = GradedElement::single(0, 0, c(1.0), r);
        let v = integral_e(&g, q, 1e-14).unwrap();
        assert!(v.value.re.is_finite());
        assert!(v.tail_bound <= 1e-14);
    }
}
