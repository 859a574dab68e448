//! The q-Bessel function `J_j(x) = sum_k (-1)^k (q^-j x)^k / ([k]! [k+j]!)`.
//!
//! Three evaluators share this definition:
//! * [`q_bessel_series`], a compensated float summation generic over the
//!   scalar type;
//! * an arbitrary-precision summation used when the float result loses too
//!   many bits to cancellation;
//! * [`q_bessel_lattice`], a cancellation-free form at the lattice points
//!   `x = Q^-n / (1 - Q)^2` with `Q = q^2`, where the power series alternates
//!   with superexponentially large terms.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::{Complex, Complex64};

use crate::field::{cancellation_ratio, Accumulator, Real};
use crate::param::{DeformationParameter, QError, QSeriesValue};

type Big = FBig<HalfEven, 2>;

const MAX_TERMS: usize = 100_000;

/// Float bits that may be lost to cancellation before escalating.
const FLOAT_LOSS_BUDGET: f64 = 20.0;

/// Symmetric q-number in the cancellation-free form
/// `[m] = q^(1-m) (1 - q^(2m)) / (1 - q^2)`.
fn q_number_stable<T: Real>(m: u32, q: T) -> T {
    if m == 0 {
        return T::zero();
    }
    let q2 = q * q;
    q.powi(1 - m as i32) * (T::one() - q2.powi(m as i32)) / (T::one() - q2)
}

/// Float summation of the q-Bessel series with diagnostics.
///
/// Stops once a term is below `2^-bits` of the partial sum and the term ratio
/// has dropped below one half, which bounds the tail by twice the last term.
pub fn q_bessel_series<T: Real>(
    j: u32,
    x: Complex<T>,
    q: T,
    bits: u32,
) -> Result<QSeriesValue<Complex<T>>, QError> {
    let mut t0 = T::one();
    for m in 1..=j {
        t0 = t0 / q_number_stable(m, q);
    }
    let mut term = Complex::new(t0, T::zero());
    if x == Complex::new(T::zero(), T::zero()) {
        return Ok(QSeriesValue {
            value: term,
            cancellation_estimate: 1.0,
            terms_used: 1,
        });
    }
    let tol = T::lit((-(bits as f64)).exp2());
    let y = -x * q.powi(-(j as i32));
    let mut acc = Accumulator::new();
    acc.add(term);
    for k in 1..MAX_TERMS as u32 {
        let ratio = y / (q_number_stable(k, q) * q_number_stable(k + j, q));
        term = term * ratio;
        acc.add(term);
        let v = acc.value();
        if term.norm() <= tol * v.norm() && ratio.norm() < T::lit(0.5) {
            return Ok(QSeriesValue {
                value: v,
                cancellation_estimate: acc.cancellation(),
                terms_used: acc.terms(),
            });
        }
        if !term.norm().is_finite() {
            return Err(QError::Divergence(k as usize));
        }
    }
    Err(QError::Divergence(MAX_TERMS))
}

/// q-Bessel function with automatic precision escalation.
///
/// A float evaluation is accepted when at most 20 bits are lost to
/// cancellation. Otherwise the series is re-summed in arbitrary precision at
/// `2x` and then `4x` the requested precision; the last level accepts the
/// result if the cancellation estimate stays below `2^(bits_max - 20)` and
/// otherwise reports a precision error.
pub fn q_bessel(
    j: u32,
    x: Complex64,
    param: &DeformationParameter,
) -> Result<QSeriesValue<Complex64>, QError> {
    let bits = param.precision_bits();
    if bits <= 53 {
        // The series is entire, so a float divergence is an overflow.
        if let Ok(r) = q_bessel_series(j, x, param.q(), 53) {
            if r.cancellation_estimate.log2() <= FLOAT_LOSS_BUDGET {
                return Ok(r);
            }
        }
    }
    escalate(j, x, param.q(), &[2 * bits, 4 * bits])
}

/// Sums in arbitrary precision at each of `levels` in turn, accepting the
/// first level whose cancellation fits its budget.
fn escalate(j: u32, x: Complex64, q: f64, levels: &[u32]) -> Result<QSeriesValue<Complex64>, QError> {
    let mut last = None;
    for (idx, &p) in levels.iter().enumerate() {
        let r = q_bessel_mp(j, x, q, p)?;
        if !(r.value.re.is_finite() && r.value.im.is_finite()) {
            return Err(QError::Divergence(r.terms_used));
        }
        let lost = r.cancellation_estimate.log2();
        let is_last = idx + 1 == levels.len();
        let budget = if is_last {
            p as f64 - FLOAT_LOSS_BUDGET
        } else {
            p as f64 - 53.0 + FLOAT_LOSS_BUDGET
        };
        if lost <= budget {
            return Ok(r);
        }
        last = Some((r, p));
    }
    let (r, p) = last.ok_or_else(|| QError::Domain("no precision levels".into()))?;
    Err(QError::Precision {
        estimate: r.cancellation_estimate,
        bits: p,
    })
}

fn big(x: f64, prec: usize) -> Big {
    Big::try_from(x)
        .expect("finite input")
        .with_precision(prec)
        .value()
}

fn big_to_f64(x: &Big) -> f64 {
    x.to_f64().value()
}

/// `2^e` as a big float, built without leaving the `f64` range per step.
fn big_pow2(e: u32, prec: usize) -> Big {
    let mut acc = big(1.0, prec);
    let mut left = e;
    while left > 0 {
        let step = left.min(512);
        acc = acc * big((step as f64).exp2(), prec);
        left -= step;
    }
    acc
}

/// Arbitrary-precision summation at `prec` bits.
fn q_bessel_mp(j: u32, x: Complex64, q: f64, prec: u32) -> Result<QSeriesValue<Complex64>, QError> {
    let p = prec as usize + 16;
    let one = big(1.0, p);
    let qb = big(q, p);
    let q2 = &qb * &qb;
    let qinv = &one / &qb;
    let denom = &one - &q2;
    // [m] = q^(1-m) (1 - Q^m) / (1 - Q); tracked incrementally.
    let qn = |m: u32| -> Big {
        if m == 0 {
            return big(0.0, p);
        }
        let mut qpow = one.clone();
        let mut q2pow = one.clone();
        for _ in 0..m - 1 {
            qpow = &qpow * &qinv;
        }
        for _ in 0..m {
            q2pow = &q2pow * &q2;
        }
        qpow * (&one - &q2pow) / &denom
    };
    let mut t0 = one.clone();
    for m in 1..=j {
        t0 = t0 / qn(m);
    }
    let mut qmj = one.clone();
    for _ in 0..j {
        qmj = &qmj * &qinv;
    }
    // y = -q^-j x
    let yr = -(&qmj * big(x.re, p));
    let yi = -(&qmj * big(x.im, p));
    let (mut tr, mut ti) = (t0, big(0.0, p));
    let (mut sr, mut si) = (tr.clone(), ti.clone());
    let mut max_mag2 = &tr * &tr;
    let scale2 = big_pow2(2 * prec, p);
    // [k] and [k + j] maintained by recurrence on the powers.
    let mut qk_pow = one.clone(); // q^(1-k) at k = 1
    let mut q2k = q2.clone(); // Q^k at k = 1
    let mut qkj_pow = one.clone();
    let mut q2kj = q2.clone();
    for _ in 0..j {
        qkj_pow = &qkj_pow * &qinv;
        q2kj = &q2kj * &q2;
    }
    let half2 = big(0.25, p);
    for k in 1..MAX_TERMS {
        let nk = &qk_pow * (&one - &q2k) / &denom;
        let nkj = &qkj_pow * (&one - &q2kj) / &denom;
        let d = &nk * &nkj;
        let rr = &yr / &d;
        let ri = &yi / &d;
        let nr = &tr * &rr - &ti * &ri;
        let ni = &tr * &ri + &ti * &rr;
        tr = nr;
        ti = ni;
        sr = &sr + &tr;
        si = &si + &ti;
        let tm2 = &tr * &tr + &ti * &ti;
        if tm2 > max_mag2 {
            max_mag2 = tm2.clone();
        }
        let sm2 = &sr * &sr + &si * &si;
        let ratio2 = &rr * &rr + &ri * &ri;
        if &tm2 * &scale2 <= sm2 && ratio2 < half2 {
            let value = Complex64::new(big_to_f64(&sr), big_to_f64(&si));
            let cancel = if sm2 == big(0.0, p) {
                f64::INFINITY
            } else {
                big_to_f64(&(&max_mag2 / &sm2)).sqrt().max(1.0)
            };
            return Ok(QSeriesValue {
                value,
                cancellation_estimate: cancel,
                terms_used: k + 1,
            });
        }
        qk_pow = &qk_pow * &qinv;
        q2k = &q2k * &q2;
        qkj_pow = &qkj_pow * &qinv;
        q2kj = &q2kj * &q2;
    }
    Err(QError::Divergence(MAX_TERMS))
}

/// Lattice argument `x_n = Q^-n / (1 - Q)^2` of [`q_bessel_lattice`].
pub fn lattice_argument(n: i64, q: f64) -> f64 {
    let q2 = q * q;
    q2.powi(-(n as i32)) / ((1.0 - q2) * (1.0 - q2))
}

/// `J_j(Q^-n / (1 - Q)^2)` evaluated without cancellation.
///
/// For `n >= 1` the power series alternates with terms as large as
/// `exp(c n^2)` while the value is tiny. A transformation of the
/// underlying `1phi1` gives the positive-ratio form
/// `J_j = C_j sum_{k > n} (-1)^k Q^(k(k+1)/2 + k j) / ((Q;Q)_{k-n-1} (Q;Q)_k)`
/// with `C_j = q^(j(j-1)/2) (1 - Q)^j`, summed in logarithmic scale so that
/// neither the terms nor the value under- or overflow prematurely. For
/// small `n` both forms are evaluated and the better conditioned one kept.
pub fn q_bessel_lattice(j: u32, n: i64, q: f64) -> QSeriesValue<f64> {
    let direct = || {
        q_bessel_series(j, Complex64::new(lattice_argument(n, q), 0.0), q, 53)
            .ok()
            .map(|r| QSeriesValue {
                value: r.value.re,
                cancellation_estimate: r.cancellation_estimate,
                terms_used: r.terms_used,
            })
    };
    if n < 1 {
        if let Some(r) = direct() {
            return r;
        }
    }
    let dual = q_bessel_lattice_dual(j, n.max(0) as u64, q);
    if n >= 1 && dual.cancellation_estimate > 4.0 {
        if let Some(r) = direct() {
            if r.cancellation_estimate < dual.cancellation_estimate {
                return r;
            }
        }
    }
    dual
}

fn q_bessel_lattice_dual(j: u32, n: u64, q: f64) -> QSeriesValue<f64> {
    let q2 = q * q;
    let lq2 = q2.ln();
    // log (Q;Q)_k for k up to the needed range, extended lazily.
    let mut lqq: Vec<f64> = vec![0.0];
    let ensure = |lqq: &mut Vec<f64>, k: usize| {
        while lqq.len() <= k {
            let s = lqq.len() as i32;
            let last = *lqq.last().unwrap();
            lqq.push(last + (-q2.powi(s)).ln_1p());
        }
    };
    let jf = j as f64;
    let log_c = jf * (jf - 1.0) / 2.0 * q.ln() + jf * (-q2).ln_1p();
    let log_term = |lqq: &mut Vec<f64>, k: u64| {
        let kf = k as f64;
        ensure(lqq, k as usize);
        (kf * (kf + 1.0) / 2.0 + kf * jf) * lq2 - lqq[(k - n - 1) as usize] - lqq[k as usize]
    };
    let k0 = n + 1;
    let l0 = log_term(&mut lqq, k0);
    let mut acc = Accumulator::<f64>::new();
    let mut k = k0;
    loop {
        let rel = (log_term(&mut lqq, k) - l0).exp();
        let sign = if (k - k0) % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(sign * rel);
        if k > k0 + 2 && rel < 1e-18 * acc.value().abs() {
            break;
        }
        if k > k0 + 10_000 {
            break;
        }
        k += 1;
    }
    let s = acc.value();
    let sign0 = if k0 % 2 == 0 { 1.0 } else { -1.0 };
    let mag = (log_c + l0).exp() * s.abs();
    QSeriesValue {
        value: sign0 * s.signum() * mag,
        cancellation_estimate: cancellation_ratio(acc.max_term(), s.abs()),
        terms_used: acc.terms(),
    }
}

/// Classical limit of the series, `sum_k (-1)^k x^k / (k! (k+j)!)`.
pub fn classical_bessel_series(j: u32, x: f64) -> f64 {
    let mut t = 1.0 / crate::basic::factorial(j);
    let mut acc = Accumulator::<f64>::new();
    acc.add(t);
    for k in 1..400u32 {
        t *= -x / (f64::from(k) * f64::from(k + j));
        acc.add(t);
        if t.abs() < 1e-18 * acc.value().abs().max(1e-300) {
            break;
        }
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn param(q: f64) -> DeformationParameter {
        DeformationParameter::new(q).unwrap()
    }

    #[test]
    fn value_at_zero() {
        let r = q_bessel(0, Complex64::new(0.0, 0.0), &param(0.5)).unwrap();
        assert_eq!(r.value, Complex64::new(1.0, 0.0));
        let r = q_bessel(0, Complex64::new(1.0, 0.0), &param(0.5)).unwrap();
        let exact = big_series(0, 1.0, 0.5, 60);
        assert!((r.value.re - exact).abs() <= 1e-12 * exact.abs());
        assert!((r.value.re - exact).abs() <= 1e-12 * exact.abs(), "{} {exact}", r.value.re);
        let r = q_bessel(2, Complex64::new(0.0, 0.0), &param(0.5)).unwrap();
        let f2 = crate::basic::q_factorial(2, &0.5f64).unwrap();
        assert!((r.value.re - 1.0 / f2).abs() < 1e-15);
    }

    #[test]
    fn stable_q_number_agrees_with_definition() {
        for m in 0..20u32 {
            let a = q_number_stable(m, 0.7f64);
            let b = crate::basic::q_number(m as i64, &0.7f64);
            assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0));
        }
    }

    /// Brute-force partial sum at 512 bits with q-numbers taken from the
    /// symmetric definition.
    fn big_series(j: u32, x: f64, q: f64, terms: u32) -> f64 {
        let p = 512;
        let qb = big(q, p);
        let one = big(1.0, p);
        let pw = |e: i64| {
            let mut r = one.clone();
            let base = if e < 0 { &one / &qb } else { qb.clone() };
            for _ in 0..e.unsigned_abs() {
                r = &r * &base;
            }
            r
        };
        let qn = |m: i64| (pw(m) - pw(-m)) / (&qb - &one / &qb);
        let y = -(big(x, p) * pw(-(j as i64)));
        let mut t = one.clone();
        for m in 1..=j {
            t = t / qn(m as i64);
        }
        let mut s = big(0.0, p);
        for k in 0..terms {
            if k > 0 {
                t = t * &y / (qn(k as i64) * qn((k + j) as i64));
            }
            s = s + &t;
        }
        big_to_f64(&s)
    }

    #[test]
    fn unit_argument_matches_brute_force() {
        let r = q_bessel(0, Complex64::new(1.0, 0.0), &param(0.5)).unwrap();
        let exact = big_series(0, 1.0, 0.5, 60);
        assert!((r.value.re - exact).abs() <= 1e-12 * exact.abs());
    }

    #[test]
    fn escalation_handles_large_argument() {
        let q = 0.7;
        let x = lattice_argument(6, q);
        let f = q_bessel_series(0, Complex64::new(x, 0.0), q, 53).unwrap();
        assert!(f.cancellation_estimate.log2() > FLOAT_LOSS_BUDGET);
        let r = q_bessel(0, Complex64::new(x, 0.0), &param(q)).unwrap();
        let exact = big_series(0, x, q, 60);
        assert!((r.value.re - exact).abs() <= 1e-13 * exact.abs());
    }

    #[test]
    fn lattice_matches_direct_for_small_shift() {
        for j in 0..4 {
            for n in -6..=2 {
                let x = lattice_argument(n, 0.7);
                let d = q_bessel_series(j, Complex64::new(x, 0.0), 0.7, 53).unwrap();
                let l = q_bessel_lattice(j, n, 0.7);
                assert!(
                    (d.value.re - l.value).abs()
                        <= 1e-14 * d.cancellation_estimate * d.value.norm().max(1e-300),
                    "j={j} n={n}: {} vs {}",
                    d.value.re,
                    l.value
                );
            }
        }
    }

    #[test]
    fn lattice_dual_reference_values() {
        // High-precision reference values of the series at q = 0.7.
        let cases = [
            (0u32, 1i64, 0.230_387_156_425_273_5),
            (1, 3, 7.078_557_297_060_149e-5),
            (3, 10, -3.186_685_848_975_359_7e-32),
        ];
        for (j, n, v) in cases {
            let l = q_bessel_lattice(j, n, 0.7);
            assert!((l.value - v).abs() <= 1e-13 * v.abs(), "j={j} n={n}: {}", l.value);
        }
    }

    #[test]
    fn classical_series_at_small_argument() {
        // J_0(2 sqrt(x)) at x = 1/4 is J_0(1).
        assert!((classical_bessel_series(0, 0.25) - 0.765_197_686_557_966_6).abs() < 1e-15);
    }

    #[test]
    fn precision_error_when_budget_exhausted() {
        // About 55 bits cancel at this argument; a 60-bit level allows 40.
        let x = Complex64::new(lattice_argument(10, 0.5), 0.0);
        let r = escalate(0, x, 0.5, &[60]);
        assert!(matches!(r, Err(QError::Precision { bits: 60, .. })));
        assert!(escalate(0, x, 0.5, &[60, 120]).is_ok());
    }

    #[test]
    fn overflowing_value_is_reported() {
        let p = DeformationParameter::new(0.5).unwrap();
        let r = q_bessel(0, Complex64::new(lattice_argument(40, 0.5), 0.0), &p);
        assert!(matches!(r, Err(QError::Divergence(_))));
    }
}
