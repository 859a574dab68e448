//! Contraction `t^p_ij = lim_(l -> inf) t^l_ij(x0, x0*, p v0 / [l], p u0 / [l])`
//! with `x0 = delta^(1/2)` and `u0 = (iq)^-1 delta^(-1/2) z`.

use std::collections::BTreeMap;

use algebra::{Element, Half, Hopf, SuMono};
use num_complex::Complex64;
use reps::{graded_term_weight, BasisWindow};
use serde::Serialize;

use crate::euclid::eq_matrix_element;
use crate::label::{CompactLabel, EuclidLabel};
use crate::su::su_matrix_element;
use crate::MatrixError;

/// One row of a convergence report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub l: f64,
    pub deviation: f64,
}

/// Deviation from the limit for each `l`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub label: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Strictly decreasing over all rows.
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].deviation < w[0].deviation)
    }

    /// Strictly decreasing over the last three rows.
    pub fn tail_decreasing(&self) -> bool {
        let n = self.rows.len();
        self.rows[n.saturating_sub(3)..]
            .windows(2)
            .all(|w| w[1].deviation < w[0].deviation)
    }

    pub fn last(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.deviation)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("l,deviation\n");
        for r in &self.rows {
            s.push_str(&format!("{},{:e}\n", r.l, r.deviation));
        }
        s
    }

    /// Errors with [`MatrixError::Convergence`] unless the tail decreases.
    pub fn require_convergence(self) -> Result<Self, MatrixError> {
        if self.tail_decreasing() {
            Ok(self)
        } else {
            Err(MatrixError::Convergence(Box::new(self)))
        }
    }
}

/// Image of `|n>` under `f(X, X*, U, V)` with `X = delta^(1/2)`,
/// `U = c delta^(-1/2) z`, `V = conj(c) z* delta^(1/2)`; `U` and `V` act as
/// `c q^-m` and `conj(c) q^-m` on `|m>`.
pub fn contracted_action(f: &Element<SuMono, f64>, c: Complex64, q: f64, n: i64) -> BTreeMap<i64, Complex64> {
    let mut out = BTreeMap::new();
    for (m, v) in f.terms() {
        let mid = n + i64::from(m.d);
        let w = q.powi(-mid as i32);
        let val = *v * (c * w).powi(m.b as i32) * (c.conj() * w).powi(m.c as i32);
        *out.entry(mid - i64::from(m.a)).or_insert(Complex64::new(0.0, 0.0)) += val;
    }
    out
}

/// The scale `p / (iq [l])` of the contracted `u`.
pub fn contraction_scale(p: f64, l: Half, q: f64) -> Complex64 {
    let ql = (q.powf(l.to_f64()) - q.powf(-l.to_f64())) / (q - 1.0 / q);
    Complex64::new(p / ql, 0.0) / Complex64::new(0.0, q)
}

/// Largest deviation over the columns of `w` between the contracted
/// `t^l_ij` and `t^p_ij`.
pub fn contraction_deviation(
    alg: &Hopf<SuMono, f64>,
    target: EuclidLabel,
    l: Half,
    w: BasisWindow,
) -> Result<f64, MatrixError> {
    let q = alg.q();
    let lab = CompactLabel::new(l, Half::from_int(target.i), Half::from_int(target.j))?;
    let t = su_matrix_element(alg, lab)?;
    let c = contraction_scale(target.p, l, q);
    let g = eq_matrix_element(target, q);
    let term = &g.terms[0];
    let shift = i64::from(term.h + term.s);
    let mut dev = 0.0f64;
    for n in w.indices() {
        let mut img = contracted_action(&t, c, q, n);
        let e = graded_term_weight(term, q, n)?;
        *img.entry(n - shift).or_insert(Complex64::new(0.0, 0.0)) -= e;
        for v in img.values() {
            dev = dev.max(v.norm());
        }
    }
    Ok(dev)
}

/// Contraction deviations for each `l` in `l_list`, computed in parallel.
/// Errors if the deviation does not decrease over the last three entries.
pub fn contraction_check(
    target: EuclidLabel,
    l_list: &[Half],
    q: f64,
    w: BasisWindow,
) -> Result<ConvergenceReport, MatrixError> {
    let alg = Hopf::<SuMono, f64>::new(q)?;
    let devs: Vec<Result<f64, MatrixError>> = std::thread::scope(|s| {
        let handles: Vec<_> = l_list
            .iter()
            .map(|&l| {
                let alg = &alg;
                s.spawn(move || contraction_deviation(alg, target, l, w))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut rows = Vec::with_capacity(l_list.len());
    for (&l, d) in l_list.iter().zip(devs) {
        rows.push(ConvergenceRow {
            l: l.to_f64(),
            deviation: d?,
        });
    }
    ConvergenceReport {
        label: format!("p={} i={} j={} q={}", target.p, target.i, target.j, q),
        rows,
    }
    .require_convergence()
}

/// For a label in the formula region, the ratio of the `k`-th series term of
/// the contracted `t^l_ij` to the `k`-th q-Bessel term of `t^p_ij`, for
/// `k <= k_max`. Tends to 1 as `l` grows.
pub fn coefficient_ratios(
    alg: &Hopf<SuMono, f64>,
    target: EuclidLabel,
    l: Half,
    k_max: usize,
) -> Result<Vec<Complex64>, MatrixError> {
    let q = alg.q();
    let lab = CompactLabel::new(l, Half::from_int(target.i), Half::from_int(target.j))?;
    if !lab.in_formula_region() {
        return Err(MatrixError::Region("coefficient ratios need a label in the formula region".into()));
    }
    let t = su_matrix_element(alg, lab)?;
    let c = contraction_scale(target.p, l, q);
    let g = eq_matrix_element(target, q);
    let term = &g.terms[0];
    let poly = term.radial.to_poly(k_max + 1, q)?;
    let b = target.i - target.j;
    let zw = q.powi((b * (b + 1) / 2) as i32);
    let mut out = Vec::with_capacity(k_max + 1);
    for (k, pk) in poly.iter().enumerate() {
        let m = SuMono::new((-(target.i + target.j)) as u32, k as u32, (k as i64 + b) as u32, 0);
        let su = t.coeff(&m) * c.powi(k as i32) * c.conj().powi((k as i64 + b) as i32);
        // E term k on |0>: coeff p_k q^(-2k) q^(-b(b+1)/2); SU term: su
        let e = term.coeff * *pk * q.powi(-2 * k as i32) / zw;
        out.push(su / e);
    }
    Ok(out)
}
