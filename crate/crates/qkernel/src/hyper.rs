//! The basic hypergeometric series 2phi1.

use crate::field::{Accumulator, QField};
use crate::param::{QError, QSeriesValue};

/// Summation controls for non-terminating series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesOptions {
    pub precision_bits: u32,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            precision_bits: 53,
            max_terms: 4096,
        }
    }
}

/// `2phi1(a, b; c | q, x) = sum_k (a;q)_k (b;q)_k / ((c;q)_k (q;q)_k) x^k`.
///
/// The series terminates when a factor `1 - a q^k` or `1 - b q^k` vanishes;
/// otherwise it is summed until the term drops below `2^-bits` of the
/// partial sum for two consecutive terms.
pub fn phi21<T: QField>(
    a: &T,
    b: &T,
    c: &T,
    q: &T,
    x: &T,
    opts: SeriesOptions,
) -> Result<QSeriesValue<T>, QError> {
    let tol = (-(opts.precision_bits as f64)).exp2();
    let mut acc = Accumulator::new();
    let mut term = T::one();
    acc.add(term.clone());
    let (mut aq, mut bq, mut cq, mut qq) = (a.clone(), b.clone(), c.clone(), q.clone());
    let mut small_run = 0;
    for k in 0..opts.max_terms {
        let fa = T::one() - aq.clone();
        let fb = T::one() - bq.clone();
        if fa.is_negligible(1.0 + aq.magnitude()) || fb.is_negligible(1.0 + bq.magnitude()) {
            return Ok(finish(acc));
        }
        let fc = T::one() - cq.clone();
        if fc.is_negligible(1.0 + cq.magnitude()) {
            return Err(QError::Pole(k + 1));
        }
        let fq = T::one() - qq.clone();
        term = term * fa * fb / (fc * fq) * x.clone();
        acc.add(term.clone());
        if term.magnitude() <= tol * acc.value().magnitude() {
            small_run += 1;
            if small_run >= 2 {
                return Ok(finish(acc));
            }
        } else {
            small_run = 0;
        }
        aq = aq * q.clone();
        bq = bq * q.clone();
        cq = cq * q.clone();
        qq = qq * q.clone();
    }
    Err(QError::Divergence(opts.max_terms))
}

/// Terminating 2phi1 summed term by term over exactly `n + 1` terms, without
/// any stopping rule. Used as an oracle and for polynomial matrix elements.
pub fn phi21_terms<T: QField>(a: &T, b: &T, c: &T, q: &T, x: &T, n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut term = T::one();
    out.push(term.clone());
    let (mut aq, mut bq, mut cq, mut qq) = (a.clone(), b.clone(), c.clone(), q.clone());
    for _ in 0..n {
        term = term * (T::one() - aq.clone()) * (T::one() - bq.clone())
            / ((T::one() - cq.clone()) * (T::one() - qq.clone()))
            * x.clone();
        out.push(term.clone());
        aq = aq * q.clone();
        bq = bq * q.clone();
        cq = cq * q.clone();
        qq = qq * q.clone();
    }
    out
}

fn finish<T: QField>(acc: Accumulator<T>) -> QSeriesValue<T> {
    QSeriesValue {
        value: acc.value(),
        cancellation_estimate: acc.cancellation(),
        terms_used: acc.terms(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::powi;
    use num_rational::BigRational;

    #[test]
    fn a_equal_one_gives_one() {
        let v = phi21(&1.0f64, &0.3, &0.2, &0.5, &0.9, SeriesOptions::default()).unwrap();
        assert_eq!(v.value, 1.0);
        assert_eq!(v.terms_used, 1);
    }

    #[test]
    fn zero_argument_gives_one() {
        let v = phi21(&0.3f64, &0.3, &0.2, &0.5, &0.0, SeriesOptions::default()).unwrap();
        assert_eq!(v.value, 1.0);
    }

    #[test]
    fn two_term_example() {
        let q = 0.5f64;
        let v = phi21(&(1.0 / q), &q, &(q * q), &q, &1.0, SeriesOptions::default()).unwrap();
        let expected = 1.0 + (1.0 - 2.0) * (1.0 - 0.5) / ((1.0 - 0.25) * (1.0 - 0.5));
        assert!((v.value - expected).abs() < 1e-15);
        assert_eq!(v.terms_used, 2);
    }

    #[test]
    fn exact_rational_termination() {
        let q = BigRational::embed(0.5);
        let a = powi(&q, -3);
        let b = BigRational::embed(0.25);
        let c = BigRational::embed(0.125);
        let x = BigRational::embed(0.75);
        let v = phi21(&a, &b, &c, &q, &x, SeriesOptions::default()).unwrap();
        assert_eq!(v.terms_used, 4);
        let terms = phi21_terms(&a, &b, &c, &q, &x, 3);
        let s = terms.into_iter().fold(BigRational::embed(0.0), |s, t| s + t);
        assert_eq!(v.value, s);
    }

    #[test]
    fn pole_is_reported() {
        let q = 0.5f64;
        let r = phi21(&0.3, &0.2, &(1.0 / q), &q, &0.1, SeriesOptions::default());
        assert_eq!(r, Err(QError::Pole(2)));
    }

    #[test]
    fn divergence_is_reported() {
        let opts = SeriesOptions {
            precision_bits: 53,
            max_terms: 200,
        };
        let r = phi21(&0.3f64, &0.2, &0.1, &0.5, &5.0, opts);
        assert_eq!(r, Err(QError::Divergence(200)));
    }

    #[test]
    fn convergent_series_matches_q_binomial_theorem() {
        // 2phi1(a, c; c | q, x) = 1phi0(a; ; q, x) = (ax; q)_inf / (x; q)_inf
        let (a, c, q, x) = (0.3f64, 0.45, 0.6, 0.2);
        let v = phi21(&a, &c, &c, &q, &x, SeriesOptions::default()).unwrap();
        let inf = |z: f64| (0..400).fold(1.0, |p, s| p * (1.0 - z * q.powi(s)));
        assert!((v.value - inf(a * x) / inf(x)).abs() < 1e-14);
    }
}
