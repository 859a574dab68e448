//! `SU_q(2)` matrix elements `t^l_ij` as normal-ordered polynomials.
//!
//! In the region `i + j <= 0`, `j <= i`:
//! `t^l_ij = lambda x^(-i-j) P^(i-j) 2phi1(q^(-2(l+j)), B; C | q^2, s q^2 u u*)`,
//! where the prefactor, the binomials, `B`, `C`, the sign `s` and the
//! generator `P` are fixed by a [`Convention`]. Other labels follow from
//! `t_ij = theta(t_(-j,-i))` and `t_ij = (-q)^(i-j) (t_(-i,-j))*`.

use algebra::{Element, Half, Hopf, SuMono};
use num_complex::Complex64;
use qkernel::{q_binomial, q_pochhammer};
use serde::Serialize;

use crate::label::CompactLabel;
use crate::MatrixError;

/// Exponent of the prefactor power of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Prefactor {
    /// `q^((l+i)(l-j))`.
    LPlusITimesLMinusJ,
    /// `q^((i-j)(1-l-j))`.
    IMinusJTimesOneMinusLMinusJ,
}

/// Lower index of both Gaussian binomials `[l-j; .]` and `[l+i; .]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BinomialIndex {
    JMinusI,
    IMinusJ,
}

/// Second numerator parameter `q^(2e)` of the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SecondParam {
    /// `e = j + l + 1`.
    JPlusLPlusOne,
    /// `e = l - j + 1`.
    LMinusJPlusOne,
}

/// Denominator parameter `q^(2e)` of the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ThirdParam {
    /// `e = l + i - j`.
    LPlusIMinusJ,
    /// `e = 1 + i - j`.
    OnePlusIMinusJ,
}

/// Sign of the series argument `+- q^2 u u*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ArgumentSign {
    Minus,
    Plus,
}

/// Generator raised to the power `i - j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PowerGenerator {
    U,
    UStar,
}

/// One reading of the hypergeometric formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Convention {
    pub prefactor: Prefactor,
    pub binomial: BinomialIndex,
    pub second: SecondParam,
    pub third: ThirdParam,
    pub argument: ArgumentSign,
    pub power: PowerGenerator,
}

impl Convention {
    /// The formula exactly as printed.
    pub const PRINTED: Convention = Convention {
        prefactor: Prefactor::LPlusITimesLMinusJ,
        binomial: BinomialIndex::JMinusI,
        second: SecondParam::JPlusLPlusOne,
        third: ThirdParam::LPlusIMinusJ,
        argument: ArgumentSign::Minus,
        power: PowerGenerator::UStar,
    };

    /// All 64 readings.
    pub fn all() -> Vec<Convention> {
        let mut out = Vec::with_capacity(64);
        for prefactor in [Prefactor::LPlusITimesLMinusJ, Prefactor::IMinusJTimesOneMinusLMinusJ] {
            for binomial in [BinomialIndex::JMinusI, BinomialIndex::IMinusJ] {
                for second in [SecondParam::JPlusLPlusOne, SecondParam::LMinusJPlusOne] {
                    for third in [ThirdParam::LPlusIMinusJ, ThirdParam::OnePlusIMinusJ] {
                        for argument in [ArgumentSign::Minus, ArgumentSign::Plus] {
                            for power in [PowerGenerator::U, PowerGenerator::UStar] {
                                out.push(Convention {
                                    prefactor,
                                    binomial,
                                    second,
                                    third,
                                    argument,
                                    power,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

fn half_f(h: Half) -> f64 {
    h.to_f64()
}

fn int(h: Half) -> i64 {
    debug_assert!(h.is_integer());
    h.0 / 2
}

/// The formula itself, for a label in the region.
pub fn region_element(
    alg: &Hopf<SuMono, f64>,
    lab: CompactLabel,
    conv: Convention,
) -> Result<Element<SuMono, f64>, MatrixError> {
    if !lab.in_formula_region() {
        return Err(MatrixError::Region(format!(
            "label (l, i, j) = ({}, {}, {}) is outside the formula region",
            lab.l, lab.i, lab.j
        )));
    }
    let q = alg.q();
    let q2 = q * q;
    let (l, i, j) = (half_f(lab.l), half_f(lab.i), half_f(lab.j));
    let a = int(-(lab.i + lab.j)) as u32;
    let b = int(lab.i - lab.j);
    let pref = match conv.prefactor {
        Prefactor::LPlusITimesLMinusJ => (l + i) * (l - j),
        Prefactor::IMinusJTimesOneMinusLMinusJ => (i - j) * (1.0 - l - j),
    };
    let k_bin = match conv.binomial {
        BinomialIndex::JMinusI => -b,
        BinomialIndex::IMinusJ => b,
    };
    let lam = q.powf(pref)
        * (q_binomial(int(lab.l - lab.j), k_bin, &q2) * q_binomial(int(lab.l + lab.i), k_bin, &q2)).sqrt();
    let first = q2.powf(-(l + j));
    let second = q2.powf(match conv.second {
        SecondParam::JPlusLPlusOne => j + l + 1.0,
        SecondParam::LMinusJPlusOne => l - j + 1.0,
    });
    let third = q2.powf(match conv.third {
        ThirdParam::LPlusIMinusJ => l + i - j,
        ThirdParam::OnePlusIMinusJ => 1.0 + i - j,
    });
    let arg = match conv.argument {
        ArgumentSign::Minus => -q2,
        ArgumentSign::Plus => q2,
    };
    let top = int(lab.l + lab.j) as usize;
    let mut f = Element::zero();
    for k in 0..=top {
        let den = q_pochhammer(&third, &q2, k) * q_pochhammer(&q2, &q2, k);
        if den.abs() < 1e-300 {
            return Err(MatrixError::Region(format!(
                "denominator parameter vanishes at term {k}"
            )));
        }
        let g = q_pochhammer(&first, &q2, k) * q_pochhammer(&second, &q2, k) / den * arg.powi(k as i32);
        let kk = k as u32;
        let m = match conv.power {
            PowerGenerator::UStar => SuMono::new(a, kk, kk + b as u32, 0),
            PowerGenerator::U => SuMono::new(a, kk + b as u32, kk, 0),
        };
        f.add_term(m, Complex64::new(lam * g, 0.0));
    }
    Ok(f)
}

/// `t^l_ij` for any label, from the region formula and the symmetries.
pub fn su_matrix_element_with(
    alg: &Hopf<SuMono, f64>,
    lab: CompactLabel,
    conv: Convention,
) -> Result<Element<SuMono, f64>, MatrixError> {
    let (l, i, j) = (lab.l, lab.i, lab.j);
    if lab.in_formula_region() {
        region_element(alg, lab, conv)
    } else if j <= i {
        let mirror = CompactLabel::new(l, -j, -i)?;
        Ok(alg.theta(&region_element(alg, mirror, conv)?))
    } else {
        let conj = CompactLabel::new(l, -i, -j)?;
        let t = su_matrix_element_with(alg, conj, conv)?;
        let c = (-alg.q()).powi(int(i - j) as i32);
        Ok(alg.star(&t).scale(Complex64::new(c, 0.0)))
    }
}

/// `t^l_ij` in the calibrated convention.
pub fn su_matrix_element(alg: &Hopf<SuMono, f64>, lab: CompactLabel) -> Result<Element<SuMono, f64>, MatrixError> {
    su_matrix_element_with(alg, lab, crate::calibrated::CALIBRATED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra::{Gen, SuAlgebra};

    fn lab(l2: i64, i2: i64, j2: i64) -> CompactLabel {
        CompactLabel::doubled(l2, i2, j2).unwrap()
    }

    #[test]
    fn trivial_and_fundamental() {
        let alg = SuAlgebra::new(0.6).unwrap();
        assert_eq!(su_matrix_element(&alg, lab(0, 0, 0)).unwrap(), Element::one());
        assert_eq!(su_matrix_element(&alg, lab(1, -1, -1)).unwrap(), alg.gen(Gen::X));
        assert_eq!(su_matrix_element(&alg, lab(1, 1, 1)).unwrap(), alg.gen(Gen::XStar));
        let off = su_matrix_element(&alg, lab(1, 1, -1)).unwrap();
        assert!(off.max_deviation(&alg.gen(Gen::UStar).scale(Complex64::new(0.6, 0.0))) < 1e-15);
    }

    #[test]
    fn printed_off_diagonal_vanishes() {
        let alg = SuAlgebra::new(0.6).unwrap();
        let t = su_matrix_element_with(&alg, lab(1, 1, -1), Convention::PRINTED).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn sixty_four_conventions() {
        let all = Convention::all();
        assert_eq!(all.len(), 64);
        assert!(all.contains(&Convention::PRINTED));
    }
}
