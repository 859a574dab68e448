//! Ring and Hopf structure over normal-ordered monomials.

use std::marker::PhantomData;

use num_complex::Complex;
use qkernel::Real;
use thiserror::Error;

use crate::element::{Element, Tensor3, TensorElement};
use crate::mono::{Gen, Monomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// A word letter: generator and integer exponent. For `d^1/2` the exponent
/// counts half powers of `delta`.
pub type Letter = (Gen, i64);

/// The algebra at a fixed numeric deformation parameter.
#[derive(Debug, Clone, Copy)]
pub struct Hopf<M: Monomial, T: Real> {
    q: T,
    _m: PhantomData<M>,
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

impl<M: Monomial, T: Real> Hopf<M, T> {
    pub fn new(q: T) -> Result<Self, AlgebraError> {
        if !(q > T::zero() && q < T::one()) {
            return Err(AlgebraError::Domain(format!("q = {q} is not in (0, 1)")));
        }
        Ok(Self { q, _m: PhantomData })
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn gen(&self, g: Gen) -> Element<M, T> {
        Element::monomial(M::from_gen(g), real(T::one()))
    }

    fn check_gen(g: Gen) -> Result<(), AlgebraError> {
        if g.kind() == M::KIND {
            Ok(())
        } else {
            Err(AlgebraError::Parse(format!(
                "symbol {} does not belong to {:?}",
                g.symbol(),
                M::KIND
            )))
        }
    }

    pub fn mul_mono(&self, a: &M, b: &M) -> Element<M, T> {
        Element::from_terms(a.mul(b, self.q).into_iter().map(|(m, c)| (m, real(c))))
    }

    pub fn mul(&self, f: &Element<M, T>, g: &Element<M, T>) -> Element<M, T> {
        let mut out = Element::zero();
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                for (m, c) in a.mul(b, self.q) {
                    out.add_term(m, *ca * *cb * c);
                }
            }
        }
        out
    }

    pub fn pow(&self, f: &Element<M, T>, n: u32) -> Element<M, T> {
        (0..n).fold(Element::one(), |acc, _| self.mul(&acc, f))
    }

    /// Product of single generators.
    pub fn word_product(&self, word: &[Gen]) -> Element<M, T> {
        word.iter()
            .fold(Element::one(), |acc, &g| self.mul(&acc, &self.gen(g)))
    }

    /// Normal form of a word of generator powers.
    pub fn normal_order(&self, word: &[Letter]) -> Result<Element<M, T>, AlgebraError> {
        let mut acc = Element::one();
        for &(g, e) in word {
            Self::check_gen(g)?;
            let (g, n) = match g {
                Gen::DeltaHalf | Gen::DeltaHalfInv if e < 0 => (g.star(), e.unsigned_abs()),
                _ if e < 0 => {
                    return Err(AlgebraError::Parse(format!(
                        "negative power of {}",
                        g.symbol()
                    )))
                }
                _ => (g, e as u64),
            };
            let m = self.gen(g);
            for _ in 0..n {
                acc = self.mul(&acc, &m);
            }
        }
        Ok(acc)
    }

    /// Applies one defining relation to the word at `pos`, choosing among
    /// the applicable rules by `pick`. Returns `None` if no rule applies.
    pub fn local_rewrite(
        &self,
        word: &[Gen],
        pos: usize,
        pick: usize,
    ) -> Option<Vec<(Vec<Gen>, T)>> {
        if pos + 1 >= word.len() {
            return None;
        }
        let rules = M::local_rules(word[pos], word[pos + 1], self.q);
        if rules.is_empty() {
            return None;
        }
        let rule = &rules[pick % rules.len()];
        Some(
            rule.iter()
                .map(|(rep, c)| {
                    let mut w = word[..pos].to_vec();
                    w.extend_from_slice(rep);
                    w.extend_from_slice(&word[pos + 2..]);
                    (w, *c)
                })
                .collect(),
        )
    }

    /// Antilinear involutive antihomomorphism.
    pub fn star(&self, f: &Element<M, T>) -> Element<M, T> {
        let mut out = Element::zero();
        for (m, c) in f.terms() {
            let w: Vec<Gen> = m.letters().into_iter().rev().map(Gen::star).collect();
            let img = self.word_product(&w);
            out = &out + &img.scale(c.conj());
        }
        out
    }

    pub fn tensor_mul(
        &self,
        f: &TensorElement<M, T>,
        g: &TensorElement<M, T>,
    ) -> TensorElement<M, T> {
        let mut out = TensorElement::zero();
        for ((a1, b1), c1) in f.terms() {
            for ((a2, b2), c2) in g.terms() {
                let left = a1.mul(a2, self.q);
                let right = b1.mul(b2, self.q);
                for (ma, ca) in &left {
                    for (mb, cb) in &right {
                        out.add_term(ma.clone(), mb.clone(), *c1 * *c2 * (*ca * *cb));
                    }
                }
            }
        }
        out
    }

    fn gen_coproduct(&self, g: Gen) -> TensorElement<M, T> {
        let mut t = TensorElement::zero();
        for (a, b, c) in M::gen_coproduct(g, self.q) {
            t.add_term(a, b, real(c));
        }
        t
    }

    pub fn coproduct_mono(&self, m: &M) -> TensorElement<M, T> {
        m.letters()
            .into_iter()
            .fold(TensorElement::one(), |acc, g| {
                self.tensor_mul(&acc, &self.gen_coproduct(g))
            })
    }

    /// Algebra homomorphism into the tensor square.
    pub fn coproduct(&self, f: &Element<M, T>) -> TensorElement<M, T> {
        let mut out = TensorElement::zero();
        for (m, c) in f.terms() {
            for ((a, b), v) in self.coproduct_mono(m).terms() {
                out.add_term(a.clone(), b.clone(), *v * *c);
            }
        }
        out
    }

    pub fn counit(&self, f: &Element<M, T>) -> Complex<T> {
        f.terms()
            .filter(|(m, _)| m.counit() == 1)
            .fold(real(T::zero()), |s, (_, c)| s + *c)
    }

    /// Antihomomorphism determined by the generator images.
    pub fn antipode(&self, f: &Element<M, T>) -> Element<M, T> {
        let mut out = Element::zero();
        for (m, c) in f.terms() {
            let img = m.letters().into_iter().rev().fold(Element::one(), |acc, g| {
                let s = Element::from_terms(
                    M::gen_antipode(g, self.q)
                        .into_iter()
                        .map(|(mm, cc)| (mm, real(cc))),
                );
                self.mul(&acc, &s)
            });
            out = &out + &img.scale(*c);
        }
        out
    }

    /// `m o (S (x) id) o Delta` when `left`, else `m o (id (x) S) o Delta`.
    pub fn antipode_contraction(&self, f: &Element<M, T>, left: bool) -> Element<M, T> {
        let mut out = Element::zero();
        for ((a, b), c) in self.coproduct(f).terms() {
            let ea = Element::monomial(a.clone(), *c);
            let eb = Element::monomial(b.clone(), real(T::one()));
            let p = if left {
                self.mul(&self.antipode(&ea), &eb)
            } else {
                self.mul(&ea, &self.antipode(&eb))
            };
            out = &out + &p;
        }
        out
    }

    /// `(eps (x) id) Delta` when `left`, else `(id (x) eps) Delta`.
    pub fn counit_contraction(&self, f: &Element<M, T>, left: bool) -> Element<M, T> {
        let mut out = Element::zero();
        for ((a, b), c) in self.coproduct(f).terms() {
            let (kill, keep) = if left { (a, b) } else { (b, a) };
            if kill.counit() == 1 {
                out.add_term(keep.clone(), *c);
            }
        }
        out
    }

    /// `(Delta (x) id) Delta` when `left`, else `(id (x) Delta) Delta`.
    pub fn double_coproduct(&self, f: &Element<M, T>, left: bool) -> Tensor3<M, T> {
        let mut out = Tensor3::default();
        for ((a, b), c) in self.coproduct(f).terms() {
            if left {
                for ((a1, a2), v) in self.coproduct_mono(a).terms() {
                    out.add_term(a1.clone(), a2.clone(), b.clone(), *c * *v);
                }
            } else {
                for ((b1, b2), v) in self.coproduct_mono(b).terms() {
                    out.add_term(a.clone(), b1.clone(), b2.clone(), *c * *v);
                }
            }
        }
        out
    }

    /// Checks the Hopf axioms on every sample.
    pub fn hopf_axiom_check(&self, sample: &[Element<M, T>]) -> HopfReport<T> {
        let mut entries = Vec::with_capacity(sample.len());
        for f in sample {
            let eps1 = Element::scalar(self.counit(f));
            let coassoc = self
                .double_coproduct(f, true)
                .max_deviation(&self.double_coproduct(f, false));
            let counit_left = self.counit_contraction(f, true).max_deviation(f);
            let counit_right = self.counit_contraction(f, false).max_deviation(f);
            let antipode_left = self.antipode_contraction(f, true).max_deviation(&eps1);
            let antipode_right = self.antipode_contraction(f, false).max_deviation(&eps1);
            entries.push(HopfEntry {
                element: f.to_string(),
                coassociativity: coassoc,
                counit_left,
                counit_right,
                antipode_left,
                antipode_right,
            });
        }
        HopfReport { entries }
    }
}

/// Deviations of one sample from the Hopf axioms.
#[derive(Debug, Clone)]
pub struct HopfEntry<T> {
    pub element: String,
    pub coassociativity: T,
    pub counit_left: T,
    pub counit_right: T,
    pub antipode_left: T,
    pub antipode_right: T,
}

impl<T: Real> HopfEntry<T> {
    pub fn max_deviation(&self) -> T {
        self.coassociativity
            .max(self.counit_left)
            .max(self.counit_right)
            .max(self.antipode_left)
            .max(self.antipode_right)
    }
}

#[derive(Debug, Clone)]
pub struct HopfReport<T> {
    pub entries: Vec<HopfEntry<T>>,
}

impl<T: Real> HopfReport<T> {
    pub fn max_deviation(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |m, e| m.max(e.max_deviation()))
    }

    pub fn passes(&self, tol: T) -> bool {
        self.max_deviation() <= tol
    }
}
