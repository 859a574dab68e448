//! Selection of the [`Convention`] of the hypergeometric formula by three
//! independent constraints: the `l = 1/2` elements are generators, the counit
//! is diagonal, and `Delta t_ij = sum_k t_ik (x) t_kj`.

use algebra::{Element, Gen, Half, Hopf, Monomial, SuMono, TensorElement};
use num_complex::Complex64;
use serde::Serialize;

use crate::label::CompactLabel;
use crate::su::{su_matrix_element_with, Convention};
use crate::MatrixError;

/// Outcome for one convention.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationEntry {
    pub convention: Convention,
    pub generators: bool,
    pub counit: bool,
    /// `None` when skipped because an earlier criterion failed.
    pub corepresentation: Option<bool>,
    pub error: Option<String>,
}

impl CalibrationEntry {
    pub fn passes(&self) -> bool {
        self.generators && self.counit && self.corepresentation == Some(true)
    }
}

/// All conventions with their outcomes and the unique survivor, if any.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationReport {
    pub q_values: Vec<f64>,
    pub entries: Vec<CalibrationEntry>,
    pub selected: Option<Convention>,
}

impl CalibrationReport {
    pub fn passing(&self) -> Vec<Convention> {
        self.entries
            .iter()
            .filter(|e| e.passes())
            .map(|e| e.convention)
            .collect()
    }
}

fn lab(l2: i64, i2: i64, j2: i64) -> CompactLabel {
    CompactLabel::doubled(l2, i2, j2).expect("valid label")
}

/// `t_(-1/2,-1/2) = x` and `t_(1/2,-1/2)` a nonzero multiple of `u` or `u*`.
pub fn reproduces_generators(alg: &Hopf<SuMono, f64>, conv: Convention) -> Result<bool, MatrixError> {
    let diag = su_matrix_element_with(alg, lab(1, -1, -1), conv)?;
    if diag.max_deviation(&alg.gen(Gen::X)) > 1e-12 {
        return Ok(false);
    }
    let off = su_matrix_element_with(alg, lab(1, 1, -1), conv)?;
    let terms: Vec<_> = off.terms().collect();
    Ok(terms.len() == 1 && {
        let (m, c) = terms[0];
        (*m == SuMono::from_gen(Gen::U) || *m == SuMono::from_gen(Gen::UStar)) && c.norm() > 1e-12
    })
}

/// `epsilon(t^l_ij) = delta_ij` for all labels with `l <= l_max`.
pub fn counit_diagonal(alg: &Hopf<SuMono, f64>, conv: Convention, l2_max: i64) -> Result<bool, MatrixError> {
    for l2 in 0..=l2_max {
        for lab in CompactLabel::all(Half(l2)) {
            let t = su_matrix_element_with(alg, lab, conv)?;
            let want = if lab.i == lab.j { 1.0 } else { 0.0 };
            if (alg.counit(&t) - Complex64::new(want, 0.0)).norm() > 1e-12 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest relative deviation of `Delta t_ij` from `sum_k t_ik (x) t_kj`
/// over all labels of spin `l`.
pub fn corepresentation_deviation(
    alg: &Hopf<SuMono, f64>,
    conv: Convention,
    l: Half,
) -> Result<f64, MatrixError> {
    let ms: Vec<Half> = (0..=l.0).map(|k| Half(l.0 - 2 * k)).collect();
    let mut t = std::collections::HashMap::new();
    for &i in &ms {
        for &j in &ms {
            t.insert((i, j), su_matrix_element_with(alg, CompactLabel::new(l, i, j)?, conv)?);
        }
    }
    let mut worst = 0.0f64;
    for &i in &ms {
        for &j in &ms {
            let lhs = alg.coproduct(&t[&(i, j)]);
            let mut rhs = TensorElement::zero();
            for &k in &ms {
                for ((a, b), c) in TensorElement::from_pair(&t[&(i, k)], &t[&(k, j)]).terms() {
                    rhs.add_term(*a, *b, *c);
                }
            }
            let scale = lhs.max_norm().max(rhs.max_norm()).max(1.0);
            worst = worst.max(lhs.max_deviation(&rhs) / scale);
        }
    }
    Ok(worst)
}

fn evaluate(alg: &Hopf<SuMono, f64>, conv: Convention) -> Result<(bool, bool, Option<bool>), MatrixError> {
    let g = reproduces_generators(alg, conv)?;
    let e = counit_diagonal(alg, conv, 4)?;
    if !(g && e) {
        return Ok((g, e, None));
    }
    let mut ok = true;
    for l2 in 1..=3 {
        ok &= corepresentation_deviation(alg, conv, Half(l2))? <= 1e-10;
    }
    Ok((g, e, Some(ok)))
}

/// Runs the three criteria for every convention at each `q`.
pub fn calibrate(q_values: &[f64]) -> Result<CalibrationReport, MatrixError> {
    let algs = q_values
        .iter()
        .map(|&q| Hopf::<SuMono, f64>::new(q))
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::new();
    for conv in Convention::all() {
        let mut entry = CalibrationEntry {
            convention: conv,
            generators: true,
            counit: true,
            corepresentation: Some(true),
            error: None,
        };
        for alg in &algs {
            match evaluate(alg, conv) {
                Ok((g, e, c)) => {
                    entry.generators &= g;
                    entry.counit &= e;
                    entry.corepresentation = match (entry.corepresentation, c) {
                        (Some(a), Some(b)) => Some(a && b),
                        _ => None,
                    };
                }
                Err(err) => {
                    entry.generators = false;
                    entry.corepresentation = None;
                    entry.error = Some(err.to_string());
                    break;
                }
            }
        }
        entries.push(entry);
    }
    let passing: Vec<Convention> = entries.iter().filter(|e| e.passes()).map(|e| e.convention).collect();
    let selected = (passing.len() == 1).then(|| passing[0]);
    Ok(CalibrationReport {
        q_values: q_values.to_vec(),
        entries,
        selected,
    })
}

/// Source of the frozen constants file for `conv`.
pub fn render_constants(conv: &Convention) -> String {
    format!(
        "//! Generated by `eq2 calibrate --write`; do not edit by hand.\n\
         //!\n\
         //! The reading of the hypergeometric formula selected by the calibration\n\
         //! suite: the only one of the 64 candidates that reproduces the generators\n\
         //! at `l = 1/2`, has a diagonal counit for `l <= 2` and is a\n\
         //! corepresentation for `l <= 3/2`.\n\
         \n\
         use crate::su::{{ArgumentSign, BinomialIndex, Convention, PowerGenerator, Prefactor, SecondParam, ThirdParam}};\n\
         \n\
         pub const CALIBRATED: Convention = Convention {{\n    \
         prefactor: Prefactor::{:?},\n    \
         binomial: BinomialIndex::{:?},\n    \
         second: SecondParam::{:?},\n    \
         third: ThirdParam::{:?},\n    \
         argument: ArgumentSign::{:?},\n    \
         power: PowerGenerator::{:?},\n\
         }};\n",
        conv.prefactor, conv.binomial, conv.second, conv.third, conv.argument, conv.power
    )
}

/// Degree-one monomials of an element, for reporting.
pub fn describe(f: &Element<SuMono, f64>) -> String {
    f.terms()
        .map(|(m, c)| format!("{:+.6} {}", c.re, m.letters().iter().map(|g| g.symbol()).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join(" ")
}
