//! Jackson q-integrals on geometric lattices.

use crate::field::Real;
use crate::param::QError;

/// Value of an adaptively truncated Jackson integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacksonValue<T> {
    pub value: T,
    pub tail_bound: T,
    pub terms: usize,
}

const MAX_TERMS: usize = 1 << 20;

/// `(1 - q^2) sum_{n >= 0} q^{2n} f(q^{2n})`, the integral over `[0, 1]`
/// with respect to `d_{q^2} xi`.
///
/// Terms are added until a geometric bound on the tail drops below `tol`.
pub fn jackson_integral_unit<T: Real, F: Fn(T) -> T>(
    f: F,
    q: T,
    tol: T,
) -> Result<JacksonValue<T>, QError> {
    let q2 = q * q;
    let w0 = T::one() - q2;
    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut xi = T::one();
    let mut prev = T::zero();
    for n in 0..MAX_TERMS {
        let t = w0 * xi * f(xi);
        if !t.is_finite() {
            return Err(QError::Divergence(n + 1));
        }
        let s = sum + t;
        comp = comp
            + if sum.abs() >= t.abs() {
                (sum - s) + t
            } else {
                (t - s) + sum
            };
        sum = s;
        if n >= 2 {
            let tail = if t == T::zero() && prev == T::zero() {
                T::zero()
            } else {
                let r = if prev == T::zero() {
                    T::one()
                } else {
                    (t / prev).abs()
                };
                if r < T::one() {
                    t.abs() * r / (T::one() - r)
                } else {
                    T::infinity()
                }
            };
            if tail < tol {
                return Ok(JacksonValue {
                    value: sum + comp,
                    tail_bound: tail,
                    terms: n + 1,
                });
            }
        }
        prev = t;
        xi = xi * q2;
        if xi == T::zero() {
            return Ok(JacksonValue {
                value: sum + comp,
                tail_bound: T::zero(),
                terms: n + 1,
            });
        }
    }
    Err(QError::Divergence(MAX_TERMS))
}

/// `(1 - q) sum_{m = m_min}^{m_max} q^{2m} g(q^m)`, the Jackson analogue of
/// `int_0^inf p g(p) dp` on the lattice `p = q^m`.
pub fn jackson_integral_halfline<T: Real, F: Fn(T) -> T>(g: F, q: T, m_min: i64, m_max: i64) -> T {
    jackson_integral_halfline_anchored(g, q, T::one(), m_min, m_max)
}

/// Same as [`jackson_integral_halfline`] on the anchored lattice
/// `p_m = anchor * q^m`: `(1 - q) sum p_m^2 g(p_m)`.
pub fn jackson_integral_halfline_anchored<T: Real, F: Fn(T) -> T>(
    g: F,
    q: T,
    anchor: T,
    m_min: i64,
    m_max: i64,
) -> T {
    let mut sum = T::zero();
    for m in m_min..=m_max {
        let p = anchor * q.powi(m as i32);
        sum = sum + p * p * g(p);
    }
    (T::one() - q) * sum
}

/// Half-line integral that fails if either window endpoint carries more than
/// `tol` of the total absolute mass, suggesting a wider window.
pub fn jackson_integral_halfline_checked<T: Real, F: Fn(T) -> T>(
    g: F,
    q: T,
    anchor: T,
    m_min: i64,
    m_max: i64,
    tol: T,
) -> Result<T, QError> {
    if m_min > m_max {
        return Err(QError::Domain(format!("empty window [{m_min}, {m_max}]")));
    }
    let w = |m: i64| {
        let p = anchor * q.powi(m as i32);
        p * p * g(p)
    };
    let total: T = (m_min..=m_max).map(|m| w(m).abs()).fold(T::zero(), |a, b| a + b);
    let value = jackson_integral_halfline_anchored(&g, q, anchor, m_min, m_max);
    let lo = w(m_min).abs();
    let hi = w(m_max).abs();
    let scale = if total > T::zero() { total } else { T::one() };
    let mass = lo.max(hi) / scale;
    if mass > tol {
        let width = (m_max - m_min + 1).max(2);
        let suggest_min = if lo / scale > tol { m_min - width } else { m_min };
        let suggest_max = if hi / scale > tol { m_max + width } else { m_max };
        return Err(QError::Window {
            m_min,
            m_max,
            mass: mass.to_f64().unwrap_or(f64::INFINITY),
            suggest_min,
            suggest_max,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_integral_of_one_is_one() {
        let v = jackson_integral_unit(|_| 1.0f64, 0.5, 1e-18).unwrap();
        assert_eq!(v.value, 1.0);
        let v = jackson_integral_unit(|_| 1.0f64, 0.9, 1e-18).unwrap();
        assert!((v.value - 1.0).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn unit_integral_of_identity() {
        let q = 0.7f64;
        let v = jackson_integral_unit(|x| x, q, 1e-18).unwrap();
        assert!((v.value - 1.0 / (1.0 + q * q)).abs() < 1e-15);
    }

    #[test]
    fn unit_integral_of_zero() {
        let v = jackson_integral_unit(|_| 0.0f64, 0.7, 1e-18).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn unit_integral_diverges_for_growing_integrand() {
        let r = jackson_integral_unit(|x: f64| 1.0 / (x * x), 0.5, 1e-12);
        assert!(matches!(r, Err(QError::Divergence(_))));
    }

    #[test]
    fn halfline_examples() {
        let q = 0.5f64;
        assert_eq!(jackson_integral_halfline(|_| 0.0, q, -3, 3), 0.0);
        let single = jackson_integral_halfline(|p: f64| if p == 1.0 { 1.0 } else { 0.0 }, q, 0, 0);
        assert_eq!(single, 1.0 - q);
        let (a, b) = (-2i64, 4i64);
        let v = jackson_integral_halfline(|p| p * p, q, a, b);
        let closed = (1.0 - q) * q.powi(4 * a as i32) * (1.0 - q.powi(4 * (b - a + 1) as i32))
            / (1.0 - q.powi(4));
        assert!((v - closed).abs() < 1e-12 * closed);
    }

    #[test]
    fn checked_window_suggests_extension() {
        let q = 0.5f64;
        let r = jackson_integral_halfline_checked(|_| 1.0, q, 1.0, 0, 3, 1e-6);
        match r {
            Err(QError::Window { suggest_min, .. }) => assert!(suggest_min < 0),
            other => panic!("unexpected {other:?}"),
        }
        let ok = jackson_integral_halfline_checked(
            |p: f64| (-(p * p)).exp(),
            q,
            1.0,
            -4,
            40,
            1e-6,
        );
        assert!(ok.is_ok());
    }
}
