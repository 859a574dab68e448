//! Bigraded `E_q(2)` elements `sum c delta^(h/2) z^(s) R(rho^2)` whose
//! radial parts need not be polynomials.
//!
//! `z^(s)` is `z^s` for `s >= 0` and `(z*)^-s` otherwise. Radial functions
//! are evaluated on the spectrum points `lambda_k = q^(2k)` of `rho^2`.

use std::collections::BTreeMap;

use num_complex::Complex;
use qkernel::{lattice_argument, q_bessel, q_bessel_lattice, DeformationParameter, QError, Real};

use crate::element::Element;
use crate::grading::Half;
use crate::hopf::{AlgebraError, Hopf};
use crate::mono::EuMono;

/// A function of `rho^2`.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialFn<T> {
    /// `sum_k c_k lambda^k`.
    Poly(Vec<Complex<T>>),
    /// Values at `lambda = q^(2k)`, zero off the table.
    Lattice(BTreeMap<i64, Complex<T>>),
    /// `J_order(scale * lambda)`. When `lattice` is `Some(s)` the argument at
    /// `lambda = q^(2k)` is the lattice point `Q^-(s - k) / (1 - Q)^2`.
    Bessel {
        order: u32,
        scale: T,
        lattice: Option<i64>,
    },
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl<T: Real> RadialFn<T> {
    pub fn one() -> Self {
        RadialFn::Poly(vec![Complex::new(T::one(), T::zero())])
    }

    /// Bessel kernel `J_order(scale * rho^2)`, placed on the lattice when
    /// `scale (1 - Q)^2` is an integer power of `Q = q^2`.
    pub fn bessel(order: u32, scale: T, q: T) -> Self {
        let q2 = q * q;
        let x = scale * (T::one() - q2) * (T::one() - q2);
        let e = -(x.ln() / q2.ln());
        let r = e.round();
        let lattice = if (e - r).abs() < T::lit(1e-9) {
            r.to_i64()
        } else {
            None
        };
        RadialFn::Bessel {
            order,
            scale,
            lattice,
        }
    }

    /// Value at `lambda = q^(2k)`.
    pub fn eval_at(&self, k: i64, q: T) -> Result<Complex<T>, QError> {
        match self {
            RadialFn::Poly(c) => {
                let lam = q.powi(2 * k as i32);
                Ok(c.iter().rev().fold(czero(), |acc, &ck| acc * lam + ck))
            }
            RadialFn::Lattice(t) => Ok(t.get(&k).copied().unwrap_or_else(czero)),
            RadialFn::Bessel {
                order,
                scale,
                lattice,
            } => {
                let v = match lattice {
                    Some(s) => q_bessel_lattice(*order, s - k, to_f64(q)).value,
                    None => {
                        let x = to_f64(*scale) * to_f64(q).powi(2 * k as i32);
                        let p = DeformationParameter::new(to_f64(q))?;
                        q_bessel(*order, Complex::new(x, 0.0), &p)?.value.re
                    }
                };
                Ok(Complex::new(T::lit(v), T::zero()))
            }
        }
    }

    /// `lambda -> R(q^(2e) lambda)`.
    pub fn rescale(&self, e: i64, q: T) -> Self {
        match self {
            RadialFn::Poly(c) => RadialFn::Poly(
                c.iter()
                    .enumerate()
                    .map(|(k, &ck)| ck * q.powi(2 * (e as i32) * k as i32))
                    .collect(),
            ),
            RadialFn::Lattice(t) => RadialFn::Lattice(t.iter().map(|(&k, &v)| (k - e, v)).collect()),
            RadialFn::Bessel {
                order,
                scale,
                lattice,
            } => RadialFn::Bessel {
                order: *order,
                scale: *scale * q.powi(2 * e as i32),
                lattice: lattice.map(|s| s - e),
            },
        }
    }

    /// `lambda -> R(c lambda)` for a real `c > 0`.
    pub fn dilate(&self, c: T, q: T) -> Result<Self, AlgebraError> {
        let e = c.ln() / (q * q).ln();
        let r = e.round();
        if (e - r).abs() < T::lit(1e-12) {
            return Ok(self.rescale(r.to_i64().unwrap_or(0), q));
        }
        match self {
            RadialFn::Poly(cs) => Ok(RadialFn::Poly(
                cs.iter()
                    .enumerate()
                    .map(|(k, &ck)| ck * c.powi(k as i32))
                    .collect(),
            )),
            RadialFn::Lattice(_) => Err(AlgebraError::Domain(
                "lattice function dilated off the lattice".into(),
            )),
            RadialFn::Bessel { order, scale, .. } => Ok(RadialFn::Bessel {
                order: *order,
                scale: *scale * c,
                lattice: None,
            }),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            RadialFn::Poly(c) => RadialFn::Poly(c.iter().map(|v| v.conj()).collect()),
            RadialFn::Lattice(t) => RadialFn::Lattice(t.iter().map(|(&k, v)| (k, v.conj())).collect()),
            b @ RadialFn::Bessel { .. } => b.clone(),
        }
    }

    /// Power-series coefficients, truncated to `n` terms for the Bessel kernel.
    pub fn to_poly(&self, n: usize, q: T) -> Result<Vec<Complex<T>>, AlgebraError> {
        match self {
            RadialFn::Poly(c) => Ok(c.clone()),
            RadialFn::Lattice(_) => Err(AlgebraError::Domain(
                "lattice function has no polynomial form".into(),
            )),
            RadialFn::Bessel { order, scale, .. } => {
                let y = -*scale * q.powi(-(*order as i32));
                let mut t = T::one();
                for m in 1..=*order {
                    t = t / qkernel::q_number(i64::from(m), &q);
                }
                let mut out = Vec::with_capacity(n);
                for k in 0..n {
                    if k > 0 {
                        t = t * y
                            / (qkernel::q_number(k as i64, &q)
                                * qkernel::q_number(k as i64 + i64::from(*order), &q));
                    }
                    out.push(Complex::new(t, T::zero()));
                }
                Ok(out)
            }
        }
    }
}

/// One term `coeff * delta^(h/2) z^(s) R(rho^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedTerm<T> {
    pub h: i32,
    pub s: i32,
    pub coeff: Complex<T>,
    pub radial: RadialFn<T>,
}

impl<T: Real> GradedTerm<T> {
    pub fn bigrade(&self) -> (Half, Half) {
        (Half(i64::from(self.h + 2 * self.s)), Half(i64::from(self.h)))
    }
}

/// Sum of graded terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GradedElement<T> {
    pub terms: Vec<GradedTerm<T>>,
}

impl<T: Real> GradedElement<T> {
    pub fn single(h: i32, s: i32, coeff: Complex<T>, radial: RadialFn<T>) -> Self {
        Self {
            terms: vec![GradedTerm {
                h,
                s,
                coeff,
                radial,
            }],
        }
    }

    /// Common bigrade of all terms, if any.
    pub fn bigrade(&self) -> Option<(Half, Half)> {
        let first = self.terms.first()?.bigrade();
        self.terms
            .iter()
            .all(|t| t.bigrade() == first)
            .then_some(first)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| GradedTerm {
                    coeff: t.coeff * c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    /// `(delta^(h/2) z^(s) R)* = q^(-|s| h) delta^(-h/2) z^(-s) conj(R)(q^(-2h-2s) rho^2)`.
    pub fn star(&self, q: T) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| GradedTerm {
                    h: -t.h,
                    s: -t.s,
                    coeff: t.coeff.conj() * q.powi(-t.s.abs() * t.h),
                    radial: t.radial.conj().rescale(-i64::from(t.h + t.s), q),
                })
                .collect(),
        }
    }

    /// `z -> p0 z`, `z* -> p0 z*`.
    pub fn beta(&self, p0: T, q: T) -> Result<Self, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(GradedTerm {
                    coeff: t.coeff * p0.powi(t.s.abs()),
                    radial: t.radial.dilate(p0 * p0, q)?,
                    ..t.clone()
                })
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Self { terms })
    }

    /// `f -> q^(-2(i+j)) f`.
    pub fn sigma(&self, q: T) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| GradedTerm {
                    coeff: t.coeff * q.powi(-2 * (t.h + t.s)),
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Polynomial form, truncating Bessel kernels to `n` series terms.
    pub fn to_element(&self, alg: &Hopf<EuMono, T>, n: usize) -> Result<Element<EuMono, T>, AlgebraError> {
        let q = alg.q();
        let mut out = Element::zero();
        for t in &self.terms {
            let (b, c) = if t.s >= 0 { (t.s as u32, 0) } else { (0, (-t.s) as u32) };
            let head = Element::monomial(EuMono::new(t.h, b, c), t.coeff);
            for (k, ck) in t.radial.to_poly(n, q)?.into_iter().enumerate() {
                let k = k as u32;
                // rho^(2k) = q^(k(k-1)) z^k z*^k
                let r = Element::monomial(EuMono::new(0, k, k), ck * q.powi((k * k) as i32 - k as i32));
                out = &out + &alg.mul(&head, &r);
            }
        }
        Ok(out)
    }

    /// Graded form of a polynomial element.
    pub fn from_element(f: &Element<EuMono, T>, q: T) -> Self {
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let (b, cc) = (m.b as i32, m.c as i32);
            let k = b.min(cc);
            let s = b - cc;
            // z^b z*^c = q^(-k(k-1)) q^(2 min(s,0) k) z^(s) rho^(2k)
            let e = -k * (k - 1) + 2 * s.min(0) * k;
            let mut poly = vec![Complex::new(T::zero(), T::zero()); k as usize + 1];
            poly[k as usize] = Complex::new(T::one(), T::zero());
            terms.push(GradedTerm {
                h: m.h,
                s,
                coeff: *c * q.powi(e),
                radial: RadialFn::Poly(poly),
            });
        }
        Self { terms }
    }
}

/// Lattice argument helper re-exported for callers that build Bessel kernels.
pub fn bessel_lattice_argument(n: i64, q: f64) -> f64 {
    lattice_argument(n, q)
}
