//! The `l2` representations and the realization of elements as operators.

use algebra::{Element, EuMono, Gen, GradedElement, GradedTerm, Half, Monomial, SuMono};
use num_complex::Complex;
use qkernel::Real;

use crate::operator::RepOperator;
use crate::window::{BasisWindow, Space};
use crate::RepError;

/// A `*`-representation by weighted shifts.
pub trait Representation<T: Real> {
    type Mono: Monomial;

    fn space(&self) -> Space;

    fn q(&self) -> T;

    /// Image of `|n>` under a generator as `(target, weight)`; `None` when
    /// the image vanishes.
    fn act(&self, g: Gen, n: i64) -> Option<(i64, T)>;

    /// Applies a word right to left.
    fn apply_word(&self, word: &[Gen], n: i64) -> Option<(i64, T)> {
        let mut idx = n;
        let mut w = T::one();
        for &g in word.iter().rev() {
            let (t, x) = self.act(g, idx)?;
            idx = t;
            w = w * x;
        }
        Some((idx, w))
    }

    fn apply_mono(&self, m: &Self::Mono, n: i64) -> Option<(i64, T)> {
        self.apply_word(&m.letters(), n)
    }
}

/// `E_q(2)` on `l2(Z)`: `z|j> = q^-j |j-1>`, `z*|j> = q^(-j-1) |j+1>`,
/// `delta^(1/2)|j> = |j-1>`.
#[derive(Debug, Clone, Copy)]
pub struct EuclidRep<T> {
    pub q: T,
}

/// `SU_q(2)` on `l2(Z>=0)`: `x|n> = (1-q^(2n+2))^(1/2) |n+1>`,
/// `x*|n> = (1-q^(2n))^(1/2) |n-1>`, `u|n> = u*|n> = q^n |n>`.
#[derive(Debug, Clone, Copy)]
pub struct SuRep<T> {
    pub q: T,
}

/// The representation with the roles of `x` and `x*` exchanged relative to
/// [`SuRep`]: `x|n> = (1-q^(2n))^(1/2) |n-1>`, `x*|n> = (1-q^(2n+2))^(1/2) |n+1>`.
#[derive(Debug, Clone, Copy)]
pub struct SuLiteralRep<T> {
    pub q: T,
}

fn qp<T: Real>(q: T, e: i64) -> T {
    q.powi(e as i32)
}

impl<T: Real> Representation<T> for EuclidRep<T> {
    type Mono = EuMono;

    fn space(&self) -> Space {
        Space::FullLine
    }

    fn q(&self) -> T {
        self.q
    }

    fn act(&self, g: Gen, n: i64) -> Option<(i64, T)> {
        match g {
            Gen::DeltaHalf => Some((n - 1, T::one())),
            Gen::DeltaHalfInv => Some((n + 1, T::one())),
            Gen::Z => Some((n - 1, qp(self.q, -n))),
            Gen::ZStar => Some((n + 1, qp(self.q, -n - 1))),
            _ => None,
        }
    }
}

fn su_raise<T: Real>(q: T, n: i64) -> Option<(i64, T)> {
    Some((n + 1, (T::one() - qp(q, 2 * n + 2)).sqrt()))
}

fn su_lower<T: Real>(q: T, n: i64) -> Option<(i64, T)> {
    if n <= 0 {
        None
    } else {
        Some((n - 1, (T::one() - qp(q, 2 * n)).sqrt()))
    }
}

impl<T: Real> Representation<T> for SuRep<T> {
    type Mono = SuMono;

    fn space(&self) -> Space {
        Space::HalfLine
    }

    fn q(&self) -> T {
        self.q
    }

    fn act(&self, g: Gen, n: i64) -> Option<(i64, T)> {
        match g {
            Gen::X => su_raise(self.q, n),
            Gen::XStar => su_lower(self.q, n),
            Gen::U | Gen::UStar => Some((n, qp(self.q, n))),
            _ => None,
        }
    }
}

impl<T: Real> Representation<T> for SuLiteralRep<T> {
    type Mono = SuMono;

    fn space(&self) -> Space {
        Space::HalfLine
    }

    fn q(&self) -> T {
        self.q
    }

    fn act(&self, g: Gen, n: i64) -> Option<(i64, T)> {
        match g {
            Gen::X => su_lower(self.q, n),
            Gen::XStar => su_raise(self.q, n),
            Gen::U | Gen::UStar => Some((n, qp(self.q, n))),
            _ => None,
        }
    }
}

fn check_space<T: Real, R: Representation<T>>(rep: &R, w: &BasisWindow) -> Result<(), RepError> {
    if w.space != rep.space() {
        return Err(RepError::Window(format!(
            "window space {:?} does not match the representation",
            w.space
        )));
    }
    Ok(())
}

/// Operator of an element on a window. Every entry is exact: the image of
/// each basis vector is computed in full before truncation. Errors if some
/// term shifts by at least the window length, so that no entry of it could
/// be stored.
pub fn represent<T: Real, R: Representation<T>>(
    rep: &R,
    f: &Element<R::Mono, T>,
    w: BasisWindow,
) -> Result<RepOperator<T>, RepError> {
    check_space(rep, &w)?;
    let mut op = RepOperator::zero(w);
    for (m, c) in f.terms() {
        let letters = m.letters();
        for n in w.indices() {
            if let Some((t, x)) = rep.apply_word(&letters, n) {
                if (t - n).unsigned_abs() >= w.len() as u64 {
                    return Err(RepError::Window(format!(
                        "window of {} vectors is too small for a shift by {}",
                        w.len(),
                        t - n
                    )));
                }
                op.add_entry(t, n, *c * x);
            }
        }
    }
    Ok(op)
}

/// Operator of a single generator truncated to the window.
pub fn generator_matrix<T: Real, R: Representation<T>>(
    rep: &R,
    g: Gen,
    w: BasisWindow,
) -> RepOperator<T> {
    let mut op = RepOperator::zero(w);
    for n in w.indices() {
        if let Some((t, x)) = rep.act(g, n) {
            op.add_entry(t, n, Complex::new(x, T::zero()));
        }
    }
    op
}

/// Ordered product of truncated generator matrices; trusted on
/// `w.interior(word.len())`.
pub fn ordered_product<T: Real, R: Representation<T>>(
    rep: &R,
    word: &[Gen],
    w: BasisWindow,
) -> RepOperator<T> {
    word.iter().fold(RepOperator::identity(w), |acc, &g| {
        acc.matmul(&generator_matrix(rep, g, w))
    })
}

/// Weight of `z^(s)` on `|n>`; the image is `|n - s>`.
pub fn z_power_weight<T: Real>(q: T, s: i64, n: i64) -> T {
    let e = if s >= 0 {
        -(s * n - s * (s - 1) / 2)
    } else {
        let c = -s;
        -(c * n + c * (c + 1) / 2)
    };
    qp(q, e)
}

/// Value of a graded term on `|n>`: the image is `|n - (h + s)>`.
pub fn graded_term_weight<T: Real>(t: &GradedTerm<T>, q: T, n: i64) -> Result<Complex<T>, RepError> {
    let r = t.radial.eval_at(-n - 1, q)?;
    if r.re == T::zero() && r.im == T::zero() {
        return Ok(r);
    }
    Ok(t.coeff * r * z_power_weight(q, i64::from(t.s), n))
}

/// Weight on `|n>` of the component of bigrade `(i, j)`.
pub fn component_weight<T: Real>(
    g: &GradedElement<T>,
    bigrade: (Half, Half),
    q: T,
    n: i64,
) -> Result<Complex<T>, RepError> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for t in g.terms.iter().filter(|t| t.bigrade() == bigrade) {
        acc = acc + graded_term_weight(t, q, n)?;
    }
    Ok(acc)
}

/// Operator of a graded element on a window.
pub fn represent_graded<T: Real>(
    g: &GradedElement<T>,
    q: T,
    w: BasisWindow,
) -> Result<RepOperator<T>, RepError> {
    if w.space != Space::FullLine {
        return Err(RepError::Window("graded elements live on l2(Z)".into()));
    }
    let mut op = RepOperator::zero(w);
    for t in &g.terms {
        let shift = i64::from(t.h + t.s);
        for n in w.indices() {
            let v = graded_term_weight(t, q, n)?;
            op.add_entry(n - shift, n, v);
        }
    }
    Ok(op)
}

/// Diagonal operator of `rho^2 = z z*`: `q^(-2n-2)`.
pub fn rho2_operator<T: Real>(q: T, w: BasisWindow) -> RepOperator<T> {
    RepOperator::diagonal_from(w, |n| Complex::new(rho2(q, n), T::zero()))
}

/// Eigenvalue `q^(-2n-2)` of `rho^2` on `|n>`.
pub fn rho2<T: Real>(q: T, n: i64) -> T {
    qp(q, -2 * n - 2)
}
