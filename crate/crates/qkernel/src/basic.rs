//! q-numbers, q-factorials, q-Pochhammer symbols and Gaussian binomials.

use crate::field::{powi, QField};
use crate::param::QError;

/// Symmetric q-number `[m] = (q^m - q^-m) / (q - q^-1)`.
///
/// Computed for `|m|` and negated for negative `m`, so oddness is exact.
pub fn q_number<T: QField>(m: i64, q: &T) -> T {
    if m == 0 {
        return T::zero();
    }
    let n = m.abs();
    let qn = powi(q, n);
    let num = qn.clone() - T::one() / qn;
    let den = q.clone() - T::one() / q.clone();
    let v = num / den;
    if m < 0 {
        -v
    } else {
        v
    }
}

/// Symmetric q-factorial `[n]! = [1][2]...[n]`.
pub fn q_factorial<T: QField>(n: i64, q: &T) -> Result<T, QError> {
    if n < 0 {
        return Err(QError::Domain(format!("q_factorial of negative n = {n}")));
    }
    let mut acc = T::one();
    for m in 1..=n {
        acc = acc * q_number(m, q);
    }
    Ok(acc)
}

/// q-Pochhammer symbol `(a; q)_k = prod_{s<k} (1 - a q^s)`.
pub fn q_pochhammer<T: QField>(a: &T, q: &T, k: usize) -> T {
    let mut acc = T::one();
    let mut aqs = a.clone();
    for _ in 0..k {
        acc = acc * (T::one() - aqs.clone());
        aqs = aqs * q.clone();
    }
    acc
}

/// Gaussian binomial `[n; k]_q`, zero for `k < 0` or `k > n`.
pub fn q_binomial<T: QField>(n: i64, k: i64, q: &T) -> T {
    if n < 0 || k < 0 || k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for s in 1..=k {
        let num = T::one() - powi(q, n - k + s);
        let den = T::one() - powi(q, s);
        acc = acc * num / den;
    }
    acc
}

/// Ordinary factorial as `f64`, used by classical limits.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn q_number_examples() {
        assert_eq!(q_number(0, &0.5f64), 0.0);
        assert_eq!(q_number(1, &0.5f64), 1.0);
        assert!((q_number(2, &0.5f64) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn q_number_exact_in_rationals() {
        let q = BigRational::embed(0.5);
        assert_eq!(q_number(2, &q), BigRational::embed(2.5));
        assert_eq!(q_number(-3, &q), -q_number(3, &q));
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(0, &0.5f64).unwrap(), 1.0);
        assert_eq!(q_factorial(1, &0.5f64).unwrap(), 1.0);
        assert!((q_factorial(2, &0.5f64).unwrap() - 2.5).abs() < 1e-15);
        assert!(q_factorial(-1, &0.5f64).is_err());
    }

    #[test]
    fn q_pochhammer_examples() {
        assert_eq!(q_pochhammer(&0.3f64, &0.7, 0), 1.0);
        assert_eq!(q_pochhammer(&1.0f64, &0.7, 1), 0.0);
        assert!((q_pochhammer(&0.5f64, &0.25, 2) - 0.4375).abs() < 1e-15);
    }

    #[test]
    fn q_binomial_examples() {
        let q = 0.6f64;
        assert_eq!(q_binomial(5, 0, &(q * q)), 1.0);
        assert!((q_binomial(2, 1, &(q * q)) - (1.0 + q * q)).abs() < 1e-15);
        assert_eq!(q_binomial(2, 3, &(q * q)), 0.0);
        assert_eq!(q_binomial(2, -1, &(q * q)), 0.0);
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
    }
}
