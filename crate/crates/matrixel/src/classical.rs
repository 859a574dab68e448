//! Classical `E(2)` and `SU(2)` matrix elements by periodic quadrature, and
//! the classical contraction `P^l_kj(cos(p rho / l)) -> (1/2pi) int e^(i p rho cos psi) e^(i(k-j) psi)`.

use std::f64::consts::{PI, TAU};

use algebra::Half;
use num_complex::Complex64;
use serde::Serialize;

use crate::contraction::{ConvergenceReport, ConvergenceRow};
use crate::MatrixError;

/// Successive trapezoid values must agree to this tolerance.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// `g_E` with rotation `zeta` and translation `rho (cos phi, sin phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalEuclidElement {
    pub phi: f64,
    pub rho: f64,
    pub zeta: f64,
}

impl ClassicalEuclidElement {
    pub fn new(phi: f64, rho: f64, zeta: f64) -> Result<Self, MatrixError> {
        if rho < 0.0 || !rho.is_finite() {
            return Err(MatrixError::Label(format!("rho = {rho} must be nonnegative")));
        }
        Ok(Self {
            phi: phi.rem_euclid(TAU),
            rho,
            zeta: zeta.rem_euclid(TAU),
        })
    }
}

/// `g_S` in Euler angles `(phi, theta, phi')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalCompactElement {
    pub phi: f64,
    pub theta: f64,
    pub phi_prime: f64,
}

impl ClassicalCompactElement {
    pub fn new(phi: f64, theta: f64, phi_prime: f64) -> Result<Self, MatrixError> {
        if !(0.0..=PI).contains(&theta) {
            return Err(MatrixError::Label(format!("theta = {theta} outside [0, pi]")));
        }
        Ok(Self {
            phi: phi.rem_euclid(TAU),
            theta,
            phi_prime: phi_prime.rem_euclid(TAU),
        })
    }
}

/// `(1/2pi) int_0^2pi f` by the trapezoid rule, doubling the nodes from
/// `start` until successive values agree to [`QUADRATURE_TOL`].
pub fn periodic_average<F: Fn(f64) -> Complex64>(f: F, start: usize) -> Complex64 {
    let mut n = start.max(8);
    let mut prev = trapezoid(&f, n);
    loop {
        n *= 2;
        let cur = trapezoid(&f, n);
        if (cur - prev).norm() < QUADRATURE_TOL || n > 1 << 22 {
            return cur;
        }
        prev = cur;
    }
}

fn trapezoid<F: Fn(f64) -> Complex64>(f: &F, n: usize) -> Complex64 {
    let h = TAU / n as f64;
    (0..n).map(|k| f(k as f64 * h)).sum::<Complex64>() / n as f64
}

fn ln_factorial(n: i64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `P^l_kj(cos theta)` from its integral representation
/// `(1/2pi) sqrt((l-j)!(l+j)!/((l-k)!(l+k)!)) int e^(-ij psi)
/// (i sin(theta/2) e^(i psi/2) + cos(theta/2) e^(-i psi/2))^(l-k)
/// (i sin(theta/2) e^(-i psi/2) + cos(theta/2) e^(i psi/2))^(l+k) dpsi`.
pub fn classical_jacobi(l: Half, k: Half, j: Half, theta: f64) -> Result<Complex64, MatrixError> {
    let ok = k.0.abs() <= l.0 && j.0.abs() <= l.0 && (l - k).is_integer() && (l - j).is_integer();
    if !ok {
        return Err(MatrixError::Label(format!("invalid Jacobi indices l = {l}, k = {k}, j = {j}")));
    }
    let int = |h: Half| h.0 / 2;
    let (lmk, lpk, lmj, lpj) = (int(l - k), int(l + k), int(l - j), int(l + j));
    let pref = (0.5 * (ln_factorial(lmj) + ln_factorial(lpj) - ln_factorial(lmk) - ln_factorial(lpk))).exp();
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let jf = j.to_f64();
    let f = |psi: f64| {
        let e = Complex64::from_polar(1.0, psi / 2.0);
        let a = Complex64::new(0.0, s) * e + c * e.conj();
        let b = Complex64::new(0.0, s) * e.conj() + c * e;
        Complex64::from_polar(1.0, -jf * psi) * a.powi(lmk as i32) * b.powi(lpk as i32)
    };
    Ok(pref * periodic_average(f, 4 * (l.0 as usize + 2)))
}

/// `t^l_kj(g_S) = e^(-i(k phi + j phi')) P^l_kj(cos theta)`.
pub fn classical_su2_element(l: Half, k: Half, j: Half, g: ClassicalCompactElement) -> Result<Complex64, MatrixError> {
    let phase = Complex64::from_polar(1.0, -(k.to_f64() * g.phi + j.to_f64() * g.phi_prime));
    Ok(phase * classical_jacobi(l, k, j, g.theta)?)
}

/// `(1/2pi) int_0^2pi e^(i x cos psi) e^(i m psi) dpsi`.
pub fn bessel_integral(x: f64, m: i64) -> Complex64 {
    let f = |psi: f64| Complex64::from_polar(1.0, x * psi.cos() + m as f64 * psi);
    periodic_average(f, 16 + 2 * (x.abs().ceil() as usize + m.unsigned_abs() as usize))
}

/// `t^p_kj(g_E) = e^(-i(k phi + j(zeta - phi))) (1/2pi) int e^(i p rho cos psi) e^(i(k-j) psi) dpsi`.
pub fn classical_e2_element(p: f64, g: ClassicalEuclidElement, k: i64, j: i64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, -(k as f64 * g.phi + j as f64 * (g.zeta - g.phi)));
    phase * bessel_integral(p * g.rho, k - j)
}

/// `|P^l_kj(cos(p rho / l)) - (1/2pi) int e^(i p rho cos psi) e^(i(k-j) psi)|`
/// for each `l`. Errors if the deviation does not decrease over the last
/// three entries.
pub fn classical_contraction_check(
    p_rho: f64,
    k: i64,
    j: i64,
    l_list: &[i64],
) -> Result<ConvergenceReport, MatrixError> {
    let target = bessel_integral(p_rho, k - j);
    let rows: Vec<Result<ConvergenceRow, MatrixError>> = std::thread::scope(|s| {
        let handles: Vec<_> = l_list
            .iter()
            .map(|&l| {
                s.spawn(move || {
                    let v = classical_jacobi(Half::from_int(l), Half::from_int(k), Half::from_int(j), p_rho / l as f64)?;
                    Ok(ConvergenceRow {
                        l: l as f64,
                        deviation: (v - target).norm(),
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    ConvergenceReport {
        label: format!("p*rho={p_rho} k={k} j={j}"),
        rows: rows.into_iter().collect::<Result<_, _>>()?,
    }
    .require_convergence()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(x: i64) -> Half {
        Half(x)
    }

    #[test]
    fn jacobi_examples() {
        let one = classical_jacobi(h(0), h(0), h(0), 0.7).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for th in [0.0, 0.4, 1.9] {
            let v = classical_jacobi(h(1), h(1), h(1), th).unwrap();
            assert!((v.re - (th / 2.0).cos()).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
        for l2 in 0..=6 {
            for k2 in (-l2..=l2).step_by(2) {
                for j2 in (-l2..=l2).step_by(2) {
                    let v = classical_jacobi(h(l2), h(k2), h(j2), 0.0).unwrap();
                    let want = if k2 == j2 { 1.0 } else { 0.0 };
                    assert!((v - Complex64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn e2_examples() {
        let g = ClassicalEuclidElement::new(0.3, 0.0, 1.1).unwrap();
        let v = classical_e2_element(2.0, g, 2, 2);
        assert!((v - Complex64::from_polar(1.0, -2.0 * 1.1)).norm() < 1e-12);
        assert!(classical_e2_element(2.0, g, 1, 0).norm() < 1e-12);
        let g = ClassicalEuclidElement::new(0.0, 1.3, 0.0).unwrap();
        assert!(classical_e2_element(1.0, g, 0, 0).im.abs() < 1e-12);
    }

    #[test]
    fn zero_momentum_is_exact() {
        for l in [1, 5, 20] {
            let v = classical_jacobi(Half::from_int(l), h(0), h(0), 0.0).unwrap();
            assert!((v - bessel_integral(0.0, 0)).norm() < 1e-12);
        }
    }

    #[test]
    fn angles_are_reduced() {
        let g = ClassicalEuclidElement::new(-0.5, 1.0, 7.0).unwrap();
        assert!(g.phi >= 0.0 && g.phi < TAU && g.zeta < TAU);
        assert!(ClassicalCompactElement::new(0.0, 4.0, 0.0).is_err());
    }
}
