//! Bigrading of `E_q(2)` and the automorphisms `tau`, `beta`, `sigma`, plus
//! the anti-automorphism `theta` of `SU_q(2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex;
use qkernel::Real;

use crate::element::Element;
use crate::hopf::Hopf;
use crate::mono::{EuMono, Monomial, SuMono};

/// A half-integer, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(pub i64);

impl Half {
    pub fn from_int(n: i64) -> Self {
        Half(2 * n)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Left and right weights of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bigrade {
    pub i: Half,
    pub j: Half,
    pub homogeneous: bool,
}

impl EuMono {
    pub fn bigrade(&self) -> (Half, Half) {
        let (i2, j2) = self.bigrade2();
        (Half(i2), Half(j2))
    }
}

/// Automorphisms of `E_q(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AutomorphismSpec<T> {
    /// `z -> q z`, `z* -> q^-2 z*`, `delta -> q^-4 delta`.
    Tau,
    /// `z -> p0 z`, `z* -> p0 z*`, `delta -> delta`.
    Beta(T),
    /// Conjugation by `rho^2`: `f -> q^(-2(i+j)) f` on bigrade `(i, j)`.
    Sigma,
}

impl<T: Real> Hopf<EuMono, T> {
    /// Weights from the monomial formula.
    pub fn bigrade_of(&self, f: &Element<EuMono, T>) -> Bigrade {
        let mut it = f.terms().map(|(m, _)| m.bigrade());
        match it.next() {
            None => Bigrade {
                i: Half(0),
                j: Half(0),
                homogeneous: true,
            },
            Some((i, j)) => Bigrade {
                i,
                j,
                homogeneous: it.all(|g| g == (i, j)),
            },
        }
    }

    /// Weights of a monomial computed from the coproduct by applying the
    /// character `z -> 0`, `delta -> t` to one leg. `None` if the result is
    /// not of the form `t^i (x) m` (resp. `m (x) t^j`).
    pub fn bigrade_via_coproduct(&self, m: &EuMono) -> Option<(Half, Half)> {
        let delta = self.coproduct_mono(m);
        let weight = |left: bool| -> Option<Half> {
            let mut found: BTreeMap<i32, Element<EuMono, T>> = BTreeMap::new();
            for ((a, b), c) in delta.terms() {
                let (kill, keep) = if left { (a, b) } else { (b, a) };
                if kill.b == 0 && kill.c == 0 {
                    found.entry(kill.h).or_default().add_term(*keep, *c);
                }
            }
            let target = Element::monomial(*m, Complex::new(T::one(), T::zero()));
            let tol = T::lit(1e-12);
            let live: Vec<_> = found.into_iter().filter(|(_, e)| e.max_norm() > tol).collect();
            if live.len() != 1 || live[0].1.max_deviation(&target) > tol {
                return None;
            }
            Some(Half(i64::from(live[0].0)))
        };
        Some((weight(true)?, weight(false)?))
    }

    /// Splits an element into its homogeneous components.
    pub fn components(&self, f: &Element<EuMono, T>) -> BTreeMap<(Half, Half), Element<EuMono, T>> {
        let mut out: BTreeMap<(Half, Half), Element<EuMono, T>> = BTreeMap::new();
        for (m, c) in f.terms() {
            out.entry(m.bigrade()).or_default().add_term(*m, *c);
        }
        out
    }

    /// Component of bigrade `(i, j)`.
    pub fn project(&self, f: &Element<EuMono, T>, i: Half, j: Half) -> Element<EuMono, T> {
        Element::from_terms(
            f.terms()
                .filter(|(m, _)| m.bigrade() == (i, j))
                .map(|(m, c)| (*m, *c)),
        )
    }

    /// Scalar by which the automorphism multiplies a monomial.
    pub fn automorphism_factor(&self, spec: AutomorphismSpec<T>, m: &EuMono) -> T {
        let q = self.q();
        let (h, b, c) = (m.h, m.b as i32, m.c as i32);
        match spec {
            AutomorphismSpec::Tau => q.powi(b - 2 * c - 2 * h),
            AutomorphismSpec::Beta(p0) => p0.powi(b + c),
            AutomorphismSpec::Sigma => q.powi(-2 * (h + b - c)),
        }
    }

    pub fn apply_automorphism(
        &self,
        spec: AutomorphismSpec<T>,
        f: &Element<EuMono, T>,
    ) -> Element<EuMono, T> {
        f.map_coeffs(|m, c| c * self.automorphism_factor(spec, m))
    }
}

impl<T: Real> Hopf<SuMono, T> {
    /// Linear anti-automorphism `x <-> x*` fixing `u` and `u*`.
    pub fn theta(&self, f: &Element<SuMono, T>) -> Element<SuMono, T> {
        Element::from_terms(
            f.terms()
                .map(|(m, c)| (SuMono::new(m.d, m.b, m.c, m.a), *c)),
        )
    }

    /// Linear anti-automorphism built by reversing words, used to check
    /// [`Self::theta`].
    pub fn theta_by_words(&self, f: &Element<SuMono, T>) -> Element<SuMono, T> {
        use crate::mono::Gen;
        let mut out = Element::zero();
        for (m, c) in f.terms() {
            let w: Vec<Gen> = m
                .letters()
                .into_iter()
                .rev()
                .map(|g| match g {
                    Gen::X => Gen::XStar,
                    Gen::XStar => Gen::X,
                    other => other,
                })
                .collect();
            out = &out + &self.word_product(&w).scale(*c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::Gen;

    type E = Hopf<EuMono, f64>;

    #[test]
    fn bigrade_examples() {
        let a = E::new(0.6).unwrap();
        let b = a.bigrade_of(&a.gen(Gen::Z));
        assert_eq!((b.i, b.j, b.homogeneous), (Half(2), Half(0), true));
        let d = a.normal_order(&[(Gen::DeltaHalf, 2)]).unwrap();
        let b = a.bigrade_of(&d);
        assert_eq!((b.i, b.j), (Half(2), Half(2)));
        let b = a.bigrade_of(&Element::one());
        assert_eq!((b.i, b.j, b.homogeneous), (Half(0), Half(0), true));
        let mixed = &a.gen(Gen::Z) + &Element::one();
        assert!(!a.bigrade_of(&mixed).homogeneous);
        assert_eq!(a.components(&mixed).len(), 2);
    }

    #[test]
    fn coproduct_weights_match_formula() {
        let a = E::new(0.6).unwrap();
        for h in -3..=3 {
            for b in 0..3 {
                for c in 0..3 {
                    let m = EuMono::new(h, b, c);
                    assert_eq!(a.bigrade_via_coproduct(&m), Some(m.bigrade()), "{m}");
                }
            }
        }
    }

    #[test]
    fn automorphism_examples() {
        let q = 0.6;
        let a = E::new(q).unwrap();
        let z = a.gen(Gen::Z);
        let t = a.apply_automorphism(AutomorphismSpec::Tau, &z);
        assert!((t.coeff(&EuMono::new(0, 1, 0)).re - q).abs() < 1e-15);
        let zzs = a.mul(&z, &a.gen(Gen::ZStar));
        let b = a.apply_automorphism(AutomorphismSpec::Beta(2.0), &zzs);
        assert_eq!(b.coeff(&EuMono::new(0, 1, 1)).re, 4.0);
        let s = a.apply_automorphism(AutomorphismSpec::Sigma, &z);
        assert!((s.coeff(&EuMono::new(0, 1, 0)).re - q.powi(-2)).abs() < 1e-14);
    }

    #[test]
    fn sigma_is_conjugation_by_rho2() {
        // rho^-2 z rho^2: from z rho^2 = q^-2 rho^2 z.
        let q = 0.6;
        let a = E::new(q).unwrap();
        let z = a.gen(Gen::Z);
        let zs = a.gen(Gen::ZStar);
        let rho2 = a.mul(&z, &zs);
        let lhs = a.mul(&z, &rho2);
        let sig = a.apply_automorphism(AutomorphismSpec::Sigma, &z);
        let rhs = a.mul(&rho2, &sig);
        assert!(lhs.max_deviation(&rhs) < 1e-14);
    }

    #[test]
    fn theta_matches_word_reversal() {
        let s = Hopf::<SuMono, f64>::new(0.7).unwrap();
        for m in [
            SuMono::new(2, 1, 0, 0),
            SuMono::new(0, 1, 2, 3),
            SuMono::new(1, 0, 1, 0),
        ] {
            let f = Element::monomial(m, Complex::new(1.0, 0.0));
            assert!(s.theta(&f).max_deviation(&s.theta_by_words(&f)) < 1e-14);
        }
    }

    #[test]
    fn half_display() {
        assert_eq!(Half(3).to_string(), "3/2");
        assert_eq!(Half(-4).to_string(), "-2");
    }
}
