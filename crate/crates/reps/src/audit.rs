//! Commutation-relation audit: for each candidate relation the exponent `s`
//! is fitted from the operators of a representation.

use std::collections::BTreeSet;

use algebra::{Gen, GeneratorKind};
use num_complex::Complex;
use qkernel::Real;

use crate::operator::RepOperator;
use crate::rep::Representation;
use crate::window::BasisWindow;
use crate::RepError;

/// Shape of a candidate relation with unknown exponent `s`.
#[derive(Debug, Clone, PartialEq)]
pub enum RelationShape {
    /// `lhs = q^s rhs`.
    Commute { lhs: Vec<Gen>, rhs: Vec<Gen> },
    /// `first + q^s second = 1`.
    Sphere { first: Vec<Gen>, second: Vec<Gen> },
}

/// A relation to test, with the exponent it is stated with.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationCandidate {
    pub name: String,
    pub shape: RelationShape,
    pub stated: i32,
    /// Line of the defining list the relation is stated on; 0 for derived
    /// relations.
    pub line: u8,
}

/// Outcome for one candidate.
#[derive(Debug, Clone)]
pub struct AuditEntry<T> {
    pub candidate: RelationCandidate,
    /// Best-fitting exponent in the scanned range.
    pub fitted: i32,
    /// Relative residual at the fitted exponent.
    pub residual: T,
    /// Relative residual at the stated exponent.
    pub stated_residual: T,
}

impl<T: Real> AuditEntry<T> {
    pub fn holds_as_stated(&self, tol: T) -> bool {
        self.stated_residual <= tol
    }
}

/// Result of [`audit_relations`].
#[derive(Debug, Clone)]
pub struct AuditReport<T> {
    pub kind: GeneratorKind,
    pub entries: Vec<AuditEntry<T>>,
    pub tol: T,
}

impl<T: Real> AuditReport<T> {
    /// Lines with at least one relation that fails as stated.
    pub fn flagged_lines(&self) -> BTreeSet<u8> {
        self.entries
            .iter()
            .filter(|e| e.candidate.line > 0 && !e.holds_as_stated(self.tol))
            .map(|e| e.candidate.line)
            .collect()
    }

    /// True if every candidate is satisfied by some exponent.
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.residual <= self.tol)
    }

    pub fn entry(&self, name: &str) -> Option<&AuditEntry<T>> {
        self.entries.iter().find(|e| e.candidate.name == name)
    }
}

fn commute(name: &str, lhs: &[Gen], rhs: &[Gen], stated: i32, line: u8) -> RelationCandidate {
    RelationCandidate {
        name: name.into(),
        shape: RelationShape::Commute {
            lhs: lhs.to_vec(),
            rhs: rhs.to_vec(),
        },
        stated,
        line,
    }
}

fn sphere(name: &str, first: &[Gen], second: &[Gen], stated: i32, line: u8) -> RelationCandidate {
    RelationCandidate {
        name: name.into(),
        shape: RelationShape::Sphere {
            first: first.to_vec(),
            second: second.to_vec(),
        },
        stated,
        line,
    }
}

/// The defining relations of each algebra with their stated exponents.
pub fn candidates(kind: GeneratorKind) -> Vec<RelationCandidate> {
    use Gen::*;
    match kind {
        GeneratorKind::EuclidE => vec![
            commute("z zs = q^s zs z", &[Z, ZStar], &[ZStar, Z], -2, 1),
            commute("z d = q^s d z", &[Z, DeltaHalf, DeltaHalf], &[DeltaHalf, DeltaHalf, Z], 2, 1),
            commute("zs d = q^s d zs", &[ZStar, DeltaHalf, DeltaHalf], &[DeltaHalf, DeltaHalf, ZStar], 2, 1),
            commute("z d^1/2 = q^s d^1/2 z", &[Z, DeltaHalf], &[DeltaHalf, Z], 1, 0),
            commute("zs d^1/2 = q^s d^1/2 zs", &[ZStar, DeltaHalf], &[DeltaHalf, ZStar], 1, 0),
            commute("d^1/2 d^-1/2 = q^s 1", &[DeltaHalf, DeltaHalfInv], &[], 0, 0),
        ],
        GeneratorKind::CompactSU => vec![
            commute("u x = q^s x u", &[U, X], &[X, U], 1, 1),
            commute("xs u = q^s u xs", &[XStar, U], &[U, XStar], 1, 1),
            commute("u us = q^s us u", &[U, UStar], &[UStar, U], 0, 1),
            sphere("x xs + q^s u us = 1", &[X, XStar], &[U, UStar], 0, 2),
            sphere("xs x + q^s u us = 1", &[XStar, X], &[U, UStar], 2, 2),
            commute("us x = q^s x us", &[UStar, X], &[X, UStar], 1, 0),
            commute("xs us = q^s us xs", &[XStar, UStar], &[UStar, XStar], 1, 0),
        ],
    }
}

fn word_operator<T: Real, R: Representation<T>>(rep: &R, word: &[Gen], w: BasisWindow) -> RepOperator<T> {
    let mut op = RepOperator::zero(w);
    for n in w.indices() {
        if let Some((t, x)) = rep.apply_word(word, n) {
            op.add_entry(t, n, Complex::new(x, T::zero()));
        }
    }
    op
}

fn residual<T: Real>(
    shape: &(RepOperator<T>, RepOperator<T>, bool),
    q: T,
    s: i32,
    lo: i64,
    hi: i64,
) -> T {
    let (a, b, is_sphere) = shape;
    let f = Complex::new(q.powi(s), T::zero());
    let scaled = b.scale(f);
    if *is_sphere {
        let lhs = a.add(&scaled);
        let one = RepOperator::identity(a.window);
        lhs.max_deviation_on(&one, lo, hi)
    } else {
        let scale = a.max_norm_on(lo, hi).max(scaled.max_norm_on(lo, hi)).max(T::min_positive_value());
        a.max_deviation_on(&scaled, lo, hi) / scale
    }
}

/// Fits the exponent of every candidate over `s in [-4, 4]` on the interior
/// of `w`. Errors with [`RepError::Inconsistent`] if a candidate has no
/// exponent within `tol`.
pub fn audit_relations<T: Real, R: Representation<T>>(
    rep: &R,
    kind: GeneratorKind,
    w: BasisWindow,
    tol: T,
) -> Result<AuditReport<T>, RepError> {
    let q = rep.q();
    let mut entries = Vec::new();
    for cand in candidates(kind) {
        let ops = match &cand.shape {
            RelationShape::Commute { lhs, rhs } => (word_operator(rep, lhs, w), word_operator(rep, rhs, w), false),
            RelationShape::Sphere { first, second } => {
                (word_operator(rep, first, w), word_operator(rep, second, w), true)
            }
        };
        let (lo, hi) = w.interior(3);
        let mut best = (0, T::infinity());
        for s in -4..=4 {
            let r = residual(&ops, q, s, lo, hi);
            if r < best.1 {
                best = (s, r);
            }
        }
        if best.1 > tol {
            return Err(RepError::Inconsistent(format!(
                "no exponent in [-4, 4] satisfies {} (best residual {:e})",
                cand.name,
                best.1.to_f64().unwrap_or(f64::NAN)
            )));
        }
        let stated_residual = residual(&ops, q, cand.stated, lo, hi);
        entries.push(AuditEntry {
            candidate: cand,
            fitted: best.0,
            residual: best.1,
            stated_residual,
        });
    }
    Ok(AuditReport { kind, entries, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{EuclidRep, SuLiteralRep, SuRep};

    #[test]
    fn euclid_relations_as_stated() {
        let rep = EuclidRep { q: 0.7 };
        let w = BasisWindow::full(-10, 10).unwrap();
        let r = audit_relations(&rep, GeneratorKind::EuclidE, w, 1e-12).unwrap();
        assert!(r.consistent());
        assert!(r.flagged_lines().is_empty());
        let fitted: Vec<i32> = r.entries.iter().take(3).map(|e| e.fitted).collect();
        assert_eq!(fitted, vec![-2, 2, 2]);
    }

    #[test]
    fn adapted_su_satisfies_printed_relations() {
        let rep = SuRep { q: 0.6 };
        let w = BasisWindow::half(30).unwrap();
        let r = audit_relations(&rep, GeneratorKind::CompactSU, w, 1e-12).unwrap();
        assert!(r.flagged_lines().is_empty());
    }

    #[test]
    fn literal_su_flags_both_lines() {
        let rep = SuLiteralRep { q: 0.6 };
        let w = BasisWindow::half(30).unwrap();
        let r = audit_relations(&rep, GeneratorKind::CompactSU, w, 1e-12).unwrap();
        assert_eq!(r.flagged_lines(), [1, 2].into_iter().collect());
        assert_eq!(r.entry("u x = q^s x u").unwrap().fitted, -1);
        assert_eq!(r.entry("xs x + q^s u us = 1").unwrap().fitted, 0);
        assert_eq!(r.entry("x xs + q^s u us = 1").unwrap().fitted, 2);
        assert!(r.entry("u us = q^s us u").unwrap().holds_as_stated(1e-12));
    }

    #[test]
    fn wrong_algebra_is_inconsistent() {
        let rep = SuRep { q: 0.6 };
        let w = BasisWindow::half(30).unwrap();
        assert!(matches!(
            audit_relations(&rep, GeneratorKind::EuclidE, w, 1e-12),
            Err(RepError::Inconsistent(_))
        ));
    }
}
