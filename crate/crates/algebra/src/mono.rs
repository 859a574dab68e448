//! Generators and normal-ordered monomials.

use std::collections::BTreeMap;
use std::fmt;

use qkernel::Real;

/// The two generator sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `x, u, u*, x*` of `SU_q(2)`.
    CompactSU,
    /// `delta^(1/2), delta^(-1/2), z, z*` of `E_q(2)`.
    EuclidE,
}

/// A single generator symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X,
    U,
    UStar,
    XStar,
    DeltaHalf,
    DeltaHalfInv,
    Z,
    ZStar,
}

impl Gen {
    pub fn kind(self) -> GeneratorKind {
        match self {
            Gen::X | Gen::U | Gen::UStar | Gen::XStar => GeneratorKind::CompactSU,
            _ => GeneratorKind::EuclidE,
        }
    }

    /// Image under the involution.
    pub fn star(self) -> Gen {
        match self {
            Gen::X => Gen::XStar,
            Gen::XStar => Gen::X,
            Gen::U => Gen::UStar,
            Gen::UStar => Gen::U,
            Gen::DeltaHalf => Gen::DeltaHalfInv,
            Gen::DeltaHalfInv => Gen::DeltaHalf,
            Gen::Z => Gen::ZStar,
            Gen::ZStar => Gen::Z,
        }
    }

    /// Text symbol used by the canonical form and the parser.
    pub fn symbol(self) -> &'static str {
        match self {
            Gen::X => "x",
            Gen::XStar => "xs",
            Gen::U => "u",
            Gen::UStar => "us",
            Gen::DeltaHalf => "d^1/2",
            Gen::DeltaHalfInv => "d^-1/2",
            Gen::Z => "z",
            Gen::ZStar => "zs",
        }
    }
}

impl GeneratorKind {
    /// Generators in normal order.
    pub fn generators(self) -> &'static [Gen] {
        match self {
            GeneratorKind::CompactSU => &[Gen::X, Gen::U, Gen::UStar, Gen::XStar],
            GeneratorKind::EuclidE => &[Gen::DeltaHalf, Gen::DeltaHalfInv, Gen::Z, Gen::ZStar],
        }
    }
}

/// Real-coefficient linear combination of monomials, the result of
/// multiplying two monomials.
pub type MonoSum<M, T> = Vec<(M, T)>;

/// A normal-ordered monomial of one of the two algebras.
pub trait Monomial: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: GeneratorKind;

    fn one() -> Self;

    /// The monomial of a single generator.
    fn from_gen(g: Gen) -> Self;

    /// Generator letters, left to right.
    fn letters(&self) -> Vec<Gen>;

    /// Product of two monomials, rewritten to normal order.
    fn mul<T: Real>(&self, rhs: &Self, q: T) -> MonoSum<Self, T>;

    /// Counit of the monomial, `0` or `1`.
    fn counit(&self) -> i32;

    /// Coproduct of a generator as a sum of `(left, right, coeff)`.
    fn gen_coproduct<T: Real>(g: Gen, q: T) -> Vec<(Self, Self, T)>;

    /// Antipode of a generator.
    fn gen_antipode<T: Real>(g: Gen, q: T) -> MonoSum<Self, T>;

    /// Defining relations applicable to the adjacent pair `(a, b)`, each as
    /// an equal combination of words.
    fn local_rules<T: Real>(a: Gen, b: Gen, q: T) -> Vec<Vec<(Vec<Gen>, T)>>;

    /// Total number of letters.
    fn degree(&self) -> usize {
        self.letters().len()
    }
}

fn qpow<T: Real>(q: T, e: i64) -> T {
    q.powi(e as i32)
}

fn power_str(f: &mut fmt::Formatter<'_>, sym: &str, e: u32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, " ")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{sym}")
    } else {
        write!(f, "{sym}^{e}")
    }
}

/// `x^a u^b (u*)^c (x*)^d` with `a * d == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SuMono {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl SuMono {
    /// Builds a monomial; panics if both `x` and `x*` powers are positive.
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        assert!(a == 0 || d == 0, "x^{a} ... x*^{d} is not in normal form");
        Self { a, b, c, d }
    }
}

fn bump<K: Ord, T: Real>(map: &mut BTreeMap<K, T>, k: K, v: T) {
    let e = map.entry(k).or_insert_with(T::zero);
    *e = *e + v;
}

/// `(x*)^d x^a = sum_e w_e x^(a-s) (u u*)^e (x*)^(d-s)` with `s = min(a, d)`.
fn xs_then_x<T: Real>(d: u32, a: u32, q: T) -> (u32, u32, BTreeMap<u32, T>) {
    let s = d.min(a);
    let (kx, kxs) = (a - s, d - s);
    let mut w = BTreeMap::new();
    w.insert(0u32, T::one());
    let q2 = q * q;
    for t in 1..=s {
        let dd = kxs + t;
        let f = -qpow(q2, i64::from(dd) + i64::from(kx));
        let mut next = BTreeMap::new();
        for (&e, &c) in &w {
            bump(&mut next, e, c);
            bump(&mut next, e + 1, f * c);
        }
        w = next;
    }
    (kx, kxs, w)
}

/// Normal form of `x^a u^b (u*)^c (x*)^d` with arbitrary `a, d`.
fn reduce_su<T: Real>(a: u32, b: u32, c: u32, d: u32, q: T) -> MonoSum<SuMono, T> {
    let s = a.min(d);
    let mut w: BTreeMap<u32, T> = BTreeMap::new();
    w.insert(0, T::one());
    for _ in 0..s {
        let mut next = BTreeMap::new();
        for (&e, &cf) in &w {
            let f = cf * qpow(q, -(i64::from(b) + i64::from(c) + 2 * i64::from(e)));
            bump(&mut next, e, f);
            bump(&mut next, e + 1, -f);
        }
        w = next;
    }
    w.into_iter()
        .map(|(e, cf)| (SuMono::new(a - s, b + e, c + e, d - s), cf))
        .collect()
}

impl fmt::Display for SuMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::one() {
            return write!(f, "1");
        }
        let mut first = true;
        power_str(f, "x", self.a, &mut first)?;
        power_str(f, "u", self.b, &mut first)?;
        power_str(f, "us", self.c, &mut first)?;
        power_str(f, "xs", self.d, &mut first)
    }
}

impl Monomial for SuMono {
    const KIND: GeneratorKind = GeneratorKind::CompactSU;

    fn one() -> Self {
        Self::default()
    }

    fn from_gen(g: Gen) -> Self {
        match g {
            Gen::X => Self::new(1, 0, 0, 0),
            Gen::U => Self::new(0, 1, 0, 0),
            Gen::UStar => Self::new(0, 0, 1, 0),
            Gen::XStar => Self::new(0, 0, 0, 1),
            other => panic!("{other:?} is not an SU_q(2) generator"),
        }
    }

    fn letters(&self) -> Vec<Gen> {
        let mut w = Vec::with_capacity(self.degree());
        w.extend(std::iter::repeat(Gen::X).take(self.a as usize));
        w.extend(std::iter::repeat(Gen::U).take(self.b as usize));
        w.extend(std::iter::repeat(Gen::UStar).take(self.c as usize));
        w.extend(std::iter::repeat(Gen::XStar).take(self.d as usize));
        w
    }

    fn degree(&self) -> usize {
        (self.a + self.b + self.c + self.d) as usize
    }

    fn mul<T: Real>(&self, rhs: &Self, q: T) -> MonoSum<Self, T> {
        let (kx, kxs, w) = xs_then_x(self.d, rhs.a, q);
        let mut out: BTreeMap<SuMono, T> = BTreeMap::new();
        for (e, we) in w {
            let c = we
                * qpow(q, i64::from(self.b + self.c) * i64::from(kx))
                * qpow(q, i64::from(rhs.b + rhs.c) * i64::from(kxs));
            let terms = reduce_su(
                self.a + kx,
                self.b + e + rhs.b,
                self.c + e + rhs.c,
                kxs + rhs.d,
                q,
            );
            for (m, cm) in terms {
                bump(&mut out, m, c * cm);
            }
        }
        out.into_iter().collect()
    }

    fn counit(&self) -> i32 {
        i32::from(self.b == 0 && self.c == 0)
    }

    fn gen_coproduct<T: Real>(g: Gen, q: T) -> Vec<(Self, Self, T)> {
        let m = Self::from_gen;
        match g {
            Gen::X => vec![(m(Gen::X), m(Gen::X), T::one()), (m(Gen::U), m(Gen::UStar), -q)],
            Gen::U => vec![
                (m(Gen::X), m(Gen::U), T::one()),
                (m(Gen::U), m(Gen::XStar), T::one()),
            ],
            Gen::UStar => vec![
                (m(Gen::XStar), m(Gen::UStar), T::one()),
                (m(Gen::UStar), m(Gen::X), T::one()),
            ],
            Gen::XStar => vec![
                (m(Gen::XStar), m(Gen::XStar), T::one()),
                (m(Gen::UStar), m(Gen::U), -q),
            ],
            other => panic!("{other:?} is not an SU_q(2) generator"),
        }
    }

    fn gen_antipode<T: Real>(g: Gen, q: T) -> MonoSum<Self, T> {
        let m = Self::from_gen;
        match g {
            Gen::X => vec![(m(Gen::XStar), T::one())],
            Gen::XStar => vec![(m(Gen::X), T::one())],
            Gen::U => vec![(m(Gen::U), -q)],
            Gen::UStar => vec![(m(Gen::UStar), -T::one() / q)],
            other => panic!("{other:?} is not an SU_q(2) generator"),
        }
    }

    fn local_rules<T: Real>(a: Gen, b: Gen, q: T) -> Vec<Vec<(Vec<Gen>, T)>> {
        use Gen::*;
        let one = T::one();
        let swap = |c: T| vec![vec![(vec![b, a], c)]];
        match (a, b) {
            (U, X) | (UStar, X) | (XStar, U) | (XStar, UStar) => swap(q),
            (X, U) | (X, UStar) | (U, XStar) | (UStar, XStar) => swap(one / q),
            (U, UStar) | (UStar, U) => swap(one),
            (XStar, X) => vec![vec![(vec![], one), (vec![U, UStar], -q * q)]],
            (X, XStar) => vec![vec![(vec![], one), (vec![U, UStar], -one)]],
            _ => vec![],
        }
    }
}

/// `delta^(h/2) z^b (z*)^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EuMono {
    pub h: i32,
    pub b: u32,
    pub c: u32,
}

impl EuMono {
    pub fn new(h: i32, b: u32, c: u32) -> Self {
        Self { h, b, c }
    }

    /// Doubled bigrade `(2i, 2j) = (h + 2b - 2c, h)`.
    pub fn bigrade2(&self) -> (i64, i64) {
        let h = i64::from(self.h);
        (h + 2 * i64::from(self.b) - 2 * i64::from(self.c), h)
    }
}

impl fmt::Display for EuMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::one() {
            return write!(f, "1");
        }
        let mut first = true;
        if self.h != 0 {
            first = false;
            if self.h % 2 == 0 {
                if self.h == 2 {
                    write!(f, "d")?;
                } else {
                    write!(f, "d^{}", self.h / 2)?;
                }
            } else {
                write!(f, "d^{}/2", self.h)?;
            }
        }
        power_str(f, "z", self.b, &mut first)?;
        power_str(f, "zs", self.c, &mut first)
    }
}

impl Monomial for EuMono {
    const KIND: GeneratorKind = GeneratorKind::EuclidE;

    fn one() -> Self {
        Self::default()
    }

    fn from_gen(g: Gen) -> Self {
        match g {
            Gen::DeltaHalf => Self::new(1, 0, 0),
            Gen::DeltaHalfInv => Self::new(-1, 0, 0),
            Gen::Z => Self::new(0, 1, 0),
            Gen::ZStar => Self::new(0, 0, 1),
            other => panic!("{other:?} is not an E_q(2) generator"),
        }
    }

    fn letters(&self) -> Vec<Gen> {
        let d = if self.h >= 0 { Gen::DeltaHalf } else { Gen::DeltaHalfInv };
        let mut w = Vec::with_capacity(self.degree());
        w.extend(std::iter::repeat(d).take(self.h.unsigned_abs() as usize));
        w.extend(std::iter::repeat(Gen::Z).take(self.b as usize));
        w.extend(std::iter::repeat(Gen::ZStar).take(self.c as usize));
        w
    }

    fn degree(&self) -> usize {
        (self.h.unsigned_abs() + self.b + self.c) as usize
    }

    fn mul<T: Real>(&self, rhs: &Self, q: T) -> MonoSum<Self, T> {
        // z^b z*^c delta^(h/2) = q^((b+c) h) delta^(h/2) z^b z*^c, z*^c z^b = q^(2cb) z^b z*^c
        let e = i64::from(self.b + self.c) * i64::from(rhs.h) + 2 * i64::from(self.c) * i64::from(rhs.b);
        vec![(
            Self::new(self.h + rhs.h, self.b + rhs.b, self.c + rhs.c),
            qpow(q, e),
        )]
    }

    fn counit(&self) -> i32 {
        i32::from(self.b == 0 && self.c == 0)
    }

    fn gen_coproduct<T: Real>(g: Gen, _q: T) -> Vec<(Self, Self, T)> {
        let one = T::one();
        let m = Self::from_gen;
        match g {
            Gen::DeltaHalf | Gen::DeltaHalfInv => vec![(m(g), m(g), one)],
            Gen::Z => vec![(m(Gen::Z), Self::one(), one), (Self::new(2, 0, 0), m(Gen::Z), one)],
            Gen::ZStar => vec![
                (m(Gen::ZStar), Self::one(), one),
                (Self::new(-2, 0, 0), m(Gen::ZStar), one),
            ],
            other => panic!("{other:?} is not an E_q(2) generator"),
        }
    }

    fn gen_antipode<T: Real>(g: Gen, _q: T) -> MonoSum<Self, T> {
        match g {
            Gen::DeltaHalf | Gen::DeltaHalfInv => vec![(Self::from_gen(g.star()), T::one())],
            Gen::Z => vec![(Self::new(-2, 1, 0), -T::one())],
            Gen::ZStar => vec![(Self::new(2, 0, 1), -T::one())],
            other => panic!("{other:?} is not an E_q(2) generator"),
        }
    }

    fn local_rules<T: Real>(a: Gen, b: Gen, q: T) -> Vec<Vec<(Vec<Gen>, T)>> {
        use Gen::*;
        let one = T::one();
        let swap = |c: T| vec![vec![(vec![b, a], c)]];
        match (a, b) {
            (ZStar, Z) => swap(q * q),
            (Z, ZStar) => swap(one / (q * q)),
            (Z, DeltaHalf) | (ZStar, DeltaHalf) | (DeltaHalfInv, Z) | (DeltaHalfInv, ZStar) => {
                swap(q)
            }
            (DeltaHalf, Z) | (DeltaHalf, ZStar) | (Z, DeltaHalfInv) | (ZStar, DeltaHalfInv) => {
                swap(one / q)
            }
            (DeltaHalf, DeltaHalfInv) | (DeltaHalfInv, DeltaHalf) => vec![vec![(vec![], one)]],
            _ => vec![],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eu_product_coefficients() {
        let q = 0.5f64;
        let zs = EuMono::from_gen(Gen::ZStar);
        let z = EuMono::from_gen(Gen::Z);
        assert_eq!(zs.mul(&z, q), vec![(EuMono::new(0, 1, 1), 0.25)]);
        let d = EuMono::new(2, 0, 0);
        assert_eq!(z.mul(&d, q), vec![(EuMono::new(2, 1, 0), 0.25)]);
    }

    #[test]
    fn su_sphere_relations() {
        let q = 0.5f64;
        let x = SuMono::from_gen(Gen::X);
        let xs = SuMono::from_gen(Gen::XStar);
        let r = xs.mul(&x, q);
        assert_eq!(r, vec![(SuMono::one(), 1.0), (SuMono::new(0, 1, 1, 0), -0.25)]);
        let r = x.mul(&xs, q);
        assert_eq!(r, vec![(SuMono::one(), 1.0), (SuMono::new(0, 1, 1, 0), -1.0)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(EuMono::new(3, 2, 1).to_string(), "d^3/2 z^2 zs");
        assert_eq!(EuMono::new(-4, 0, 0).to_string(), "d^-2");
        assert_eq!(EuMono::new(2, 0, 0).to_string(), "d");
        assert_eq!(SuMono::new(0, 1, 2, 3).to_string(), "u us^2 xs^3");
        assert_eq!(SuMono::one().to_string(), "1");
    }
}
