//! `E_q(2)` matrix elements `t^p_ij` as graded elements
//! `c delta^(-j) z^(s) J_|i-j|(a rho^2)`.
//!
//! For `i >= j`: `t^p_ij = i^(i-j) delta^(-j/2) (p z*)^(i-j) J_(i-j)(p^2 z z*) delta^(-j/2)`;
//! for `i < j`: `t^p_ij = (-iq)^(i-j) delta^(-j/2) J_(j-i)(p^2 z z*) (p z)^(j-i) delta^(-j/2)`.
//! Moving the right `delta^(-j/2)` to the left gives the graded form with
//! `h = -2j`, `s = j - i` and a rescaled kernel.

use algebra::{Element, EuMono, GradedElement, Hopf, RadialFn};
use num_complex::Complex64;
use reps::{represent_graded, BasisWindow};

use crate::label::EuclidLabel;
use crate::MatrixError;

/// Phase of `t^p_ij`: `i^(i-j)` for `i >= j` and `(-iq)^(i-j)` for `i < j`.
pub fn phase(i: i64, j: i64, q: f64) -> Complex64 {
    let d = i - j;
    if d >= 0 {
        Complex64::i().powi(d as i32)
    } else {
        Complex64::new(0.0, -q).powi(d as i32)
    }
}

/// `t^p_ij` in graded form.
pub fn eq_matrix_element(lab: EuclidLabel, q: f64) -> GradedElement<f64> {
    let (p, i, j) = (lab.p, lab.i, lab.j);
    let d = (i - j).unsigned_abs() as i32;
    let coeff = phase(i, j, q) * p.powi(d) * q.powi(-d * j as i32);
    let h = -2 * j as i32;
    let s = (j - i) as i32;
    let scale = if i >= j {
        p * p * q.powi(-2 * j as i32)
    } else {
        p * p * q.powi(2 * d - 2 * j as i32)
    };
    GradedElement::single(h, s, coeff, RadialFn::bessel(d as u32, scale, q))
}

/// Counit of a graded element: only `z`-free terms survive, with `R(0)`.
pub fn graded_counit(g: &GradedElement<f64>, q: f64) -> Result<Complex64, MatrixError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for t in g.terms.iter().filter(|t| t.s == 0) {
        let r0 = match &t.radial {
            RadialFn::Lattice(_) => Complex64::new(0.0, 0.0),
            r => r.to_poly(1, q)?[0],
        };
        acc += t.coeff * r0;
    }
    Ok(acc)
}

/// Largest number of Bessel terms kept by [`eq_matrix_element_poly`].
pub const MAX_SERIES_TERMS: usize = 400;

/// `t^p_ij` as a polynomial element, truncating the Bessel series once the
/// next term's largest contribution on the window drops below `1e-14` of
/// the accumulated norm.
pub fn eq_matrix_element_poly(
    alg: &Hopf<EuMono, f64>,
    lab: EuclidLabel,
    w: BasisWindow,
) -> Result<Element<EuMono, f64>, MatrixError> {
    let q = alg.q();
    let g = eq_matrix_element(lab, q);
    let t = &g.terms[0];
    let coeffs = t.radial.to_poly(MAX_SERIES_TERMS, q)?;
    let lam_max = reps::rho2(q, w.hi);
    let mut acc = 0.0f64;
    let mut keep = None;
    for (k, c) in coeffs.iter().enumerate() {
        let contrib = c.norm() * lam_max.powi(k as i32);
        if !contrib.is_finite() {
            break;
        }
        if k > 0 && contrib < 1e-14 * acc {
            keep = Some(k);
            break;
        }
        acc = acc.max(contrib);
    }
    let n = keep.ok_or_else(|| {
        MatrixError::Truncation(format!(
            "Bessel series needs more than {MAX_SERIES_TERMS} terms on [{}, {}]",
            w.lo, w.hi
        ))
    })?;
    Ok(g.to_element(alg, n)?)
}

/// Operator of `t^p_ij` on a window.
pub fn represent_eq(lab: EuclidLabel, q: f64, w: BasisWindow) -> Result<reps::Operator, MatrixError> {
    Ok(represent_graded(&eq_matrix_element(lab, q), q, w)?)
}
