//! Linear combinations of monomials and of their tensor products.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use qkernel::Real;

use crate::mono::Monomial;

/// Finite linear combination of normal-ordered monomials with complex
/// coefficients. Exact zeros are never stored.
#[derive(Clone, PartialEq)]
pub struct Element<M: Monomial, T: Real> {
    terms: BTreeMap<M, Complex<T>>,
}

fn add_into<K: Ord, T: Real>(map: &mut BTreeMap<K, Complex<T>>, k: K, v: Complex<T>) {
    if v.re == T::zero() && v.im == T::zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = *e.get() + v;
            if s.re == T::zero() && s.im == T::zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn max_diff<K: Ord, T: Real>(a: &BTreeMap<K, Complex<T>>, b: &BTreeMap<K, Complex<T>>) -> T {
    let mut m = T::zero();
    for (k, v) in a {
        let w = b.get(k).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()));
        m = m.max((*v - w).norm());
    }
    for (k, w) in b {
        if !a.contains_key(k) {
            m = m.max(w.norm());
        }
    }
    m
}

impl<M: Monomial, T: Real> Default for Element<M, T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<M: Monomial, T: Real> Element<M, T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(M::one(), Complex::new(T::one(), T::zero()))
    }

    pub fn monomial(m: M, c: Complex<T>) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn scalar(c: Complex<T>) -> Self {
        Self::monomial(M::one(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (M, Complex<T>)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in it {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: M, c: Complex<T>) {
        add_into(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &M) -> Complex<T> {
        self.terms
            .get(m)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), *v * c)))
    }

    /// Applies a per-monomial scalar factor.
    pub fn map_coeffs<F: Fn(&M, Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), f(m, *v))))
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_deviation(&self, other: &Self) -> T {
        max_diff(&self.terms, &other.terms)
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> T {
        self.terms.values().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Drops coefficients of modulus at most `tol`.
    pub fn pruned(&self, tol: T) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(_, v)| v.norm() > tol)
                .map(|(m, v)| (m.clone(), *v))
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|_, c| c.conj())
    }
}

impl<M: Monomial, T: Real> Add for &Element<M, T> {
    type Output = Element<M, T>;
    fn add(self, rhs: Self) -> Element<M, T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl<M: Monomial, T: Real> Sub for &Element<M, T> {
    type Output = Element<M, T>;
    fn sub(self, rhs: Self) -> Element<M, T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -*c);
        }
        out
    }
}

impl<M: Monomial, T: Real> Neg for &Element<M, T> {
    type Output = Element<M, T>;
    fn neg(self) -> Element<M, T> {
        self.map_coeffs(|_, c| -c)
    }
}

impl<M: Monomial, T: Real> Mul<Complex<T>> for &Element<M, T> {
    type Output = Element<M, T>;
    fn mul(self, c: Complex<T>) -> Element<M, T> {
        self.scale(c)
    }
}

fn fmt_coeff<T: Real>(f: &mut fmt::Formatter<'_>, c: &Complex<T>) -> fmt::Result {
    if c.im == T::zero() {
        write!(f, "{}", c.re)
    } else if c.re == T::zero() {
        write!(f, "{}i", c.im)
    } else if c.im < T::zero() {
        write!(f, "({}-{}i)", c.re, -c.im)
    } else {
        write!(f, "({}+{}i)", c.re, c.im)
    }
}

/// Canonical text form `coeff * monomial + ...`; `0` for the zero element.
impl<M: Monomial, T: Real> fmt::Display for Element<M, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            fmt_coeff(f, c)?;
            write!(f, " * {m}")?;
        }
        Ok(())
    }
}

impl<M: Monomial, T: Real> fmt::Debug for Element<M, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the tensor square.
#[derive(Clone, PartialEq)]
pub struct TensorElement<M: Monomial, T: Real> {
    terms: BTreeMap<(M, M), Complex<T>>,
}

impl<M: Monomial, T: Real> Default for TensorElement<M, T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<M: Monomial, T: Real> TensorElement<M, T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(M::one(), M::one(), Complex::new(T::one(), T::zero()));
        t
    }

    pub fn add_term(&mut self, a: M, b: M, c: Complex<T>) {
        add_into(&mut self.terms, (a, b), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(M, M), &Complex<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_deviation(&self, other: &Self) -> T {
        max_diff(&self.terms, &other.terms)
    }

    pub fn max_norm(&self) -> T {
        self.terms.values().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// `f (x) g`.
    pub fn from_pair(f: &Element<M, T>, g: &Element<M, T>) -> Self {
        let mut t = Self::zero();
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                t.add_term(a.clone(), b.clone(), *ca * *cb);
            }
        }
        t
    }
}

impl<M: Monomial, T: Real> fmt::Display for TensorElement<M, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            fmt_coeff(f, c)?;
            write!(f, " * {a} (x) {b}")?;
        }
        Ok(())
    }
}

impl<M: Monomial, T: Real> fmt::Debug for TensorElement<M, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the triple tensor power, used for coassociativity.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor3<M: Monomial, T: Real> {
    terms: BTreeMap<(M, M, M), Complex<T>>,
}

impl<M: Monomial, T: Real> Default for Tensor3<M, T> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Monomial, T: Real> Tensor3<M, T> {
    pub fn add_term(&mut self, a: M, b: M, c: M, v: Complex<T>) {
        add_into(&mut self.terms, (a, b, c), v);
    }

    pub fn max_deviation(&self, other: &Self) -> T {
        max_diff(&self.terms, &other.terms)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
