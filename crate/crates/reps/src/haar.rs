//! Legwise invariance of `psi`: `(psi x id) Delta(f) = psi(f) 1` and
//! `(id x psi) Delta(f) = psi(f) 1`.
//!
//! On `SU_q(2)` the check is symbolic. On `E_q(2)` the radial part is applied
//! to `Delta(rho^2)` by its spectral decomposition: `Delta(rho^2)` preserves
//! `d = a - b` on `|a, b>` and is tridiagonal in each such block, and its
//! eigenvectors at `lambda = rho^2(n)` are computed by a continued fraction
//! in log scale. Only the component whose traced-leg grade vanishes can
//! contribute; the others project to zero.

use std::collections::HashMap;

use algebra::{Element, EuMono, GradedElement, GradedTerm, Half, Hopf, RadialFn, SuMono};
use num_complex::Complex;
use qkernel::Real;

use crate::integral::{integral_su_closed, Side};
use crate::rep::{rho2, EuclidRep, Representation};
use crate::RepError;

/// Deviations of both legwise integrals from `psi(f) 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaarReport<T> {
    pub psi: Complex<T>,
    pub left: T,
    pub right: T,
}

impl<T: Real> HaarReport<T> {
    pub fn max_deviation(&self) -> T {
        self.left.max(self.right)
    }
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Symbolic check on `SU_q(2)` with the closed-form integral.
pub fn haar_check_su<T: Real>(alg: &Hopf<SuMono, T>, f: &Element<SuMono, T>) -> HaarReport<T> {
    let q = alg.q();
    let psi = integral_su_closed(f, q);
    let expect = Element::scalar(psi);
    let mut left = Element::zero();
    let mut right = Element::zero();
    for ((a, b), c) in alg.coproduct(f).terms() {
        let pa = integral_su_closed(&Element::monomial(*a, *c), q);
        let pb = integral_su_closed(&Element::monomial(*b, *c), q);
        left.add_term(*b, pa);
        right.add_term(*a, pb);
    }
    HaarReport {
        psi,
        left: left.max_deviation(&expect),
        right: right.max_deviation(&expect),
    }
}

/// Numerical controls for [`haar_check_e`].
#[derive(Debug, Clone, Copy)]
pub struct SpectralOptions {
    /// Free-leg indices `[-k, k]` on which the result is compared.
    pub free: i64,
    /// Blocks `|d| <= blocks` of `Delta(rho^2)` kept in the partial trace.
    pub blocks: i64,
    /// Extra indices on each side of an eigenvector window.
    pub margin: i64,
}

impl SpectralOptions {
    /// Defaults scaled with `1 / |ln q|`.
    pub fn for_q(q: f64) -> Self {
        let r = 0.7f64.ln() / q.ln();
        Self {
            free: 3,
            blocks: (45.0 * r).ceil().clamp(15.0, 400.0) as i64,
            margin: (90.0 * r).ceil().clamp(30.0, 800.0) as i64,
        }
    }
}

struct Eigen<T> {
    q: T,
    margin: i64,
    cache: HashMap<(i64, i64, i64, i64), HashMap<i64, T>>,
}

impl<T: Real> Eigen<T> {
    fn diag(&self, d: i64, b: i64) -> T {
        rho2(self.q, b + d) + rho2(self.q, b)
    }

    fn off(&self, d: i64, b: i64) -> T {
        self.q.powi((-(b + d) - 2) as i32) * self.q.powi((-b - 1) as i32)
    }

    /// Normalized eigenvector of block `d` at `lambda = rho^2(n)`, on `[b0, b1]`.
    fn vector(&mut self, n: i64, d: i64, b0: i64, b1: i64) -> &HashMap<i64, T> {
        let key = (n, d, b0, b1);
        if !self.cache.contains_key(&key) {
            let v = self.compute(n, d, b0, b1);
            self.cache.insert(key, v);
        }
        &self.cache[&key]
    }

    fn compute(&self, n: i64, d: i64, b0: i64, b1: i64) -> HashMap<i64, T> {
        let lam = rho2(self.q, n);
        let start = b0 - self.margin;
        let fwd_end = if d != 0 {
            let mut m = start;
            while self.diag(d, m) <= lam {
                m += 1;
            }
            m.max(start + 1)
        } else {
            b1 + self.margin
        };
        let mut logv: Vec<(i64, T, bool)> = Vec::new();
        let (mut fprev, mut fcur, mut lg) = (T::zero(), T::one(), T::zero());
        for b in start..=fwd_end {
            logv.push((b, lg + fcur.abs().ln(), fcur > T::zero()));
            let nxt = ((lam - self.diag(d, b)) * fcur - self.off(d, b - 1) * fprev) / self.off(d, b);
            fprev = fcur;
            fcur = nxt;
            let s = fprev.abs();
            fprev = fprev / s;
            fcur = fcur / s;
            lg = lg + s.ln();
        }
        if d != 0 {
            let top = fwd_end.max(b1) + self.margin;
            let mut ratios = Vec::with_capacity((top - fwd_end) as usize);
            let mut t = T::zero();
            for b in (fwd_end + 1..=top).rev() {
                t = -self.off(d, b - 1) / ((self.diag(d, b) - lam) + self.off(d, b) * t);
                ratios.push((b, t));
            }
            let (_, mut lv, mut pos) = *logv.last().expect("forward run is nonempty");
            for &(b, t) in ratios.iter().rev() {
                lv = lv + t.abs().ln();
                pos = pos == (t > T::zero());
                logv.push((b, lv, pos));
            }
        }
        let mx = logv.iter().map(|e| e.1).fold(T::neg_infinity(), T::max);
        let nrm = logv
            .iter()
            .fold(T::zero(), |a, e| a + (T::lit(2.0) * (e.1 - mx)).exp())
            .sqrt();
        logv.into_iter()
            .filter(|e| e.0 >= b0 && e.0 <= b1)
            .map(|(b, l, pos)| {
                let v = (l - mx).exp() / nrm;
                (b, if pos { v } else { -v })
            })
            .collect()
    }
}

fn lattice_table<T: Real>(t: &GradedTerm<T>) -> Result<Vec<(i64, Complex<T>)>, RepError> {
    match &t.radial {
        RadialFn::Lattice(tab) => Ok(tab.iter().map(|(&k, &v)| (-k - 1, v)).collect()),
        _ => Err(RepError::Unsupported(
            "spectral invariance check needs lattice radial parts".into(),
        )),
    }
}

fn shift(m: &EuMono) -> i64 {
    i64::from(m.h) + i64::from(m.b) - i64::from(m.c)
}

/// One legwise integral of a graded element, on free-leg indices
/// `[-free, free]`; returns the largest deviation from `psi(f) 1`.
fn leg_integral<T: Real>(
    alg: &Hopf<EuMono, T>,
    g: &GradedElement<T>,
    psi: Complex<T>,
    side: Side,
    opts: SpectralOptions,
) -> Result<T, RepError> {
    let q = alg.q();
    let rep = EuclidRep { q };
    let w = T::one() - q * q;
    let mut eig = Eigen {
        q,
        margin: opts.margin,
        cache: HashMap::new(),
    };
    let mut out: HashMap<(i64, i64), Complex<T>> = HashMap::new();
    for t in &g.terms {
        let (i, j) = t.bigrade();
        let traced = if side == Side::Left { i } else { j };
        if traced != Half(0) {
            continue;
        }
        let table = lattice_table(t)?;
        let (b, c) = if t.s >= 0 { (t.s as u32, 0) } else { (0, (-t.s) as u32) };
        let delta = alg.coproduct_mono(&EuMono::new(t.h, b, c));
        for ((m1, m2), cc) in delta.terms() {
            let (s1, s2) = (shift(m1), shift(m2));
            for free in -opts.free..=opts.free {
                for d in -opts.blocks..=opts.blocks {
                    // traced index, pair of block coordinates, output row
                    let (weight, x, pair, row) = match side {
                        Side::Left => {
                            let a = free + d;
                            let (a2, b2) = (a + s1, free + s1);
                            let (Some((t1, x1)), Some((t2, x2))) =
                                (rep.apply_mono(m1, a2), rep.apply_mono(m2, b2))
                            else {
                                continue;
                            };
                            debug_assert_eq!(t1, a);
                            (rho2(q, a), x1 * x2, (b2, free), t2)
                        }
                        Side::Right => {
                            let bb = free - d;
                            let (a2, b2) = (free + s2, bb + s2);
                            let (Some((t1, x1)), Some((t2, x2))) =
                                (rep.apply_mono(m1, a2), rep.apply_mono(m2, b2))
                            else {
                                continue;
                            };
                            debug_assert_eq!(t2, bb);
                            (rho2(q, bb), x1 * x2, (b2, bb), t1)
                        }
                    };
                    let (lo, hi) = (pair.0.min(pair.1) - 2, pair.0.max(pair.1) + 2);
                    let mut spec = czero();
                    for &(n, r) in &table {
                        let v = eig.vector(n, d, lo, hi);
                        spec = spec + r * (v[&pair.0] * v[&pair.1]);
                    }
                    let e = out.entry((row, free)).or_insert_with(czero);
                    *e = *e + t.coeff * *cc * spec * (w * weight * x);
                }
            }
        }
    }
    let mut dev = T::zero();
    for free in -opts.free..=opts.free {
        let v = out.get(&(free, free)).copied().unwrap_or_else(czero);
        dev = dev.max((v - psi).norm());
    }
    for (&(r, c), &v) in &out {
        if r != c {
            dev = dev.max(v.norm());
        }
    }
    Ok(dev)
}

/// Spectral check on `E_q(2)` for graded elements with lattice radial parts.
pub fn haar_check_e<T: Real>(
    alg: &Hopf<EuMono, T>,
    g: &GradedElement<T>,
    opts: SpectralOptions,
) -> Result<HaarReport<T>, RepError> {
    let q = alg.q();
    let w = T::one() - q * q;
    let mut psi = czero();
    for t in g.terms.iter().filter(|t| t.bigrade() == (Half(0), Half(0))) {
        for (n, r) in lattice_table(t)? {
            psi = psi + t.coeff * r * (w * rho2(q, n));
        }
    }
    Ok(HaarReport {
        psi,
        left: leg_integral(alg, g, psi, Side::Left, opts)?,
        right: leg_integral(alg, g, psi, Side::Right, opts)?,
    })
}

fn lattice<T: Real>(points: &[(i64, f64)]) -> RadialFn<T> {
    RadialFn::Lattice(
        points
            .iter()
            .map(|&(k, v)| (k, Complex::new(T::lit(v), T::zero())))
            .collect(),
    )
}

/// Twenty graded test elements covering bigrades `(0,0)`, `(1,0)`, `(0,1)`,
/// `(-1,0)`, `(0,-1)`, `(1,1)` and their sums.
pub fn e_sample<T: Real>() -> Vec<GradedElement<T>> {
    let c = |x: f64, y: f64| Complex::new(T::lit(x), T::lit(y));
    // (h, s) for each bigrade
    let shapes = [(0, 0), (0, 1), (2, -1), (0, -1), (-2, 1), (2, 0), (-2, 0), (1, 0)];
    let tables: [&[(i64, f64)]; 5] = [
        &[(0, 1.0)],
        &[(0, 1.0), (-1, 0.5)],
        &[(1, -0.7), (2, 0.3)],
        &[(-2, 0.25), (0, 1.0), (1, 0.4)],
        &[(-1, 1.0)],
    ];
    let mut out = Vec::new();
    for (idx, &(h, s)) in shapes.iter().enumerate() {
        let tab = tables[idx % tables.len()];
        out.push(GradedElement::single(h, s, c(1.0, 0.0), lattice(tab)));
    }
    for (idx, &(h, s)) in shapes.iter().enumerate().skip(1) {
        let t1 = tables[(idx + 2) % tables.len()];
        let t2 = tables[(idx + 3) % tables.len()];
        let base = GradedElement::single(0, 0, c(0.8, 0.1), lattice(t1));
        out.push(base.plus(&GradedElement::single(h, s, c(0.5, -0.3), lattice(t2))));
    }
    let mixed = GradedElement::single(0, 1, c(0.6, 0.0), lattice(tables[1]))
        .plus(&GradedElement::single(2, -1, c(0.0, 0.7), lattice(tables[2])))
        .plus(&GradedElement::single(0, 0, c(1.0, 0.0), lattice(tables[3])));
    out.push(mixed);
    let wide = GradedElement::single(0, 2, c(0.3, 0.0), lattice(tables[0]))
        .plus(&GradedElement::single(-2, 2, c(0.2, 0.0), lattice(tables[4])));
    out.push(wide);
    let high = GradedElement::single(4, -2, c(0.4, 0.0), lattice(tables[1]));
    out.push(high);
    let star = GradedElement::single(0, 0, c(1.0, 0.0), lattice(tables[2]))
        .plus(&GradedElement::single(-2, -1, c(0.5, 0.0), lattice(tables[0])));
    out.push(star);
    out.push(GradedElement::single(2, 1, c(-0.9, 0.0), lattice(tables[3])));
    out
}

/// Twenty `SU_q(2)` test elements: monomials and sums of them.
pub fn su_sample<T: Real>() -> Vec<Element<SuMono, T>> {
    let c = |x: f64| Complex::new(T::lit(x), T::zero());
    let monos = [
        SuMono::new(0, 0, 0, 0),
        SuMono::new(1, 0, 0, 0),
        SuMono::new(0, 0, 0, 1),
        SuMono::new(0, 1, 0, 0),
        SuMono::new(0, 0, 1, 0),
        SuMono::new(0, 1, 1, 0),
        SuMono::new(2, 1, 0, 0),
        SuMono::new(0, 2, 2, 0),
        SuMono::new(0, 1, 2, 1),
        SuMono::new(1, 1, 1, 0),
    ];
    let mut out: Vec<Element<SuMono, T>> = monos.iter().map(|m| Element::monomial(*m, c(1.0))).collect();
    for k in 0..10 {
        let a = monos[k];
        let b = monos[(3 * k + 4) % monos.len()];
        out.push(Element::from_terms([(a, c(0.7)), (b, c(-0.4 + 0.1 * k as f64))]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra::{EAlgebra, SuAlgebra};

    #[test]
    fn su_sample_is_invariant() {
        let alg = SuAlgebra::new(0.7).unwrap();
        for f in su_sample::<f64>() {
            assert!(haar_check_su(&alg, &f).max_deviation() < 1e-12);
        }
    }

    #[test]
    fn radial_delta_is_invariant() {
        let q = 0.7;
        let alg = EAlgebra::new(q).unwrap();
        let g = GradedElement::single(0, 0, Complex::new(1.0, 0.0), lattice(&[(0, 1.0), (-1, 0.5)]));
        let r = haar_check_e(&alg, &g, SpectralOptions::for_q(q)).unwrap();
        assert!((r.psi.re - 0.51 * (1.0 + 0.5 * q.powi(-2))).abs() < 1e-12);
        assert!(r.max_deviation() < 1e-8, "{r:?}");
    }

    #[test]
    fn non_lattice_is_unsupported() {
        let alg = EAlgebra::new(0.7).unwrap();
        let g = GradedElement::single(0, 0, Complex::new(1.0, 0.0), RadialFn::one());
        assert!(haar_check_e(&alg, &g, SpectralOptions::for_q(0.7)).is_err());
    }
}
