//! Expressions over the generators `{x, xs, u, us}` or `{d, ds, z, zs}`.
//!
//! ```text
//! elem   := term (('+' | '-') term)*
//! term   := unary (('*')? unary)*
//! unary  := '-' unary | factor
//! factor := number ['i'] | 'i' | gen ('^' power)? | '(' elem ')'
//!         | 'f(rho2;' k ':' value (',' k ':' value)* ')'
//! power  := ['-'] digits ['/2']
//! ```
//!
//! Juxtaposition multiplies, so the canonical text of an element parses
//! back to the same element. `ds` is `d^-1`; half powers are allowed on `d`
//! and `ds` only.

use std::collections::BTreeMap;
use std::fmt;

use algebra::{
    EAlgebra, EElement, Element, Gen, GeneratorKind, GradedElement, GradedTerm, Monomial, RadialFn,
    SuAlgebra, SuElement,
};
use num_complex::Complex64;

/// Generator symbols of the two algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenName {
    X,
    XStar,
    U,
    UStar,
    D,
    DStar,
    Z,
    ZStar,
}

impl GenName {
    pub fn symbol(self) -> &'static str {
        match self {
            GenName::X => "x",
            GenName::XStar => "xs",
            GenName::U => "u",
            GenName::UStar => "us",
            GenName::D => "d",
            GenName::DStar => "ds",
            GenName::Z => "z",
            GenName::ZStar => "zs",
        }
    }

    fn from_symbol(s: &str, kind: GeneratorKind) -> Option<Self> {
        let g = match s {
            "x" => GenName::X,
            "xs" => GenName::XStar,
            "u" => GenName::U,
            "us" => GenName::UStar,
            "d" => GenName::D,
            "ds" => GenName::DStar,
            "z" => GenName::Z,
            "zs" => GenName::ZStar,
            _ => return None,
        };
        (g.kind() == kind).then_some(g)
    }

    pub fn kind(self) -> GeneratorKind {
        match self {
            GenName::X | GenName::XStar | GenName::U | GenName::UStar => GeneratorKind::CompactSU,
            _ => GeneratorKind::EuclidE,
        }
    }

    pub fn invertible(self) -> bool {
        matches!(self, GenName::D | GenName::DStar)
    }
}

/// `num` or `num/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Power {
    pub num: i64,
    pub half: bool,
}

/// Syntax tree. Numbers produced by the parser are non-negative and purely
/// real or purely imaginary; signs are [`Expr::Neg`] nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
    Number(Complex64),
    Gen { name: GenName, power: Option<Power> },
    /// Values of a function of `rho^2` at `lambda = q^(2k)`.
    Radial(Vec<(i64, Complex64)>),
    Group(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownGenerator(String),
    NonInvertible(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(s) => write!(f, "syntax error: {s}"),
            ParseErrorKind::UnknownGenerator(s) => write!(f, "unknown generator `{s}`"),
            ParseErrorKind::NonInvertible(s) => write!(f, "negative power of non-invertible generator `{s}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("evaluation: {0}")]
    Eval(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok<'a> {
    Num { text: &'a str, imag: bool },
    Ident(&'a str),
    Sym(u8),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k];
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || (c == b'.' && b.get(k + 1).is_some_and(u8::is_ascii_digit)) {
            let start = k;
            while k < b.len() && (b[k].is_ascii_digit() || b[k] == b'.') {
                k += 1;
            }
            if k < b.len() && (b[k] == b'e' || b[k] == b'E') {
                let mut e = k + 1;
                if e < b.len() && (b[e] == b'+' || b[e] == b'-') {
                    e += 1;
                }
                if e < b.len() && b[e].is_ascii_digit() {
                    k = e;
                    while k < b.len() && b[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let text = &src[start..k];
            let imag = b.get(k) == Some(&b'i') && !b.get(k + 1).is_some_and(|c| c.is_ascii_alphanumeric());
            if imag {
                k += 1;
            }
            out.push((start, Tok::Num { text, imag }));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < b.len() && b[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((start, Tok::Ident(&src[start..k])));
        } else if b"+-*^()/;,:".contains(&c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            let ch = src[k..].chars().next().unwrap_or('?');
            return Err(ParseError {
                offset: k,
                kind: ParseErrorKind::Syntax(format!("unexpected character `{ch}`")),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
    kind: GeneratorKind,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            kind,
        })
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, ParseError> {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.syntax(&format!("expected `{}`", c as char))
        }
    }

    fn elem(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                items.push(self.term()?);
            } else if self.eat(b'-') {
                items.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 { items.remove(0) } else { Expr::Sum(items) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut items = vec![self.unary()?];
        loop {
            if self.eat(b'*') || matches!(self.peek(), Some(Tok::Num { .. } | Tok::Ident(_) | Tok::Sym(b'('))) {
                items.push(self.unary()?);
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 { items.remove(0) } else { Expr::Product(items) })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.factor()
        }
    }

    fn number(&mut self, text: &str, imag: bool) -> Result<Complex64, ParseError> {
        let v: f64 = match text.parse() {
            Ok(v) => v,
            Err(_) => return self.syntax(&format!("invalid number `{text}`")),
        };
        if !v.is_finite() {
            return self.syntax("number out of range");
        }
        self.pos += 1;
        Ok(if imag { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) })
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        match self.peek() {
            Some(Tok::Num { text, imag: false }) if text.bytes().all(|c| c.is_ascii_digit()) => {
                let v: i64 = match text.parse() {
                    Ok(v) => v,
                    Err(_) => return self.syntax("integer out of range"),
                };
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.syntax("expected an integer"),
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Num { text, imag }) => Ok(Expr::Number(self.number(text, imag)?)),
            Some(Tok::Ident("i")) => {
                self.pos += 1;
                Ok(Expr::Number(Complex64::new(0.0, 1.0)))
            }
            Some(Tok::Ident("f")) => {
                if self.kind != GeneratorKind::EuclidE {
                    return self.syntax("functions of rho2 need the E_q(2) generators");
                }
                self.pos += 1;
                self.expect(b'(')?;
                if self.peek() != Some(Tok::Ident("rho2")) {
                    return self.syntax("expected `rho2`");
                }
                self.pos += 1;
                self.expect(b';')?;
                let mut table = Vec::new();
                loop {
                    let k = self.integer()?;
                    self.expect(b':')?;
                    let neg = self.eat(b'-');
                    let v = match self.peek() {
                        Some(Tok::Num { text, imag }) => self.number(text, imag)?,
                        Some(Tok::Ident("i")) => {
                            self.pos += 1;
                            Complex64::new(0.0, 1.0)
                        }
                        _ => return self.syntax("expected a table value"),
                    };
                    table.push((k, if neg { -v } else { v }));
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b')')?;
                Ok(Expr::Radial(table))
            }
            Some(Tok::Ident(name)) => {
                let Some(g) = GenName::from_symbol(name, self.kind) else {
                    return self.err(ParseErrorKind::UnknownGenerator(name.into()));
                };
                self.pos += 1;
                let power = if self.eat(b'^') {
                    let num = self.integer()?;
                    let half = if self.eat(b'/') {
                        match self.peek() {
                            Some(Tok::Num { text: "2", imag: false }) => {
                                self.pos += 1;
                                true
                            }
                            _ => return self.syntax("only halves are allowed as fractional powers"),
                        }
                    } else {
                        false
                    };
                    if num < 0 && !g.invertible() {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::NonInvertible(name.into()),
                        });
                    }
                    if half && !g.invertible() {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::Syntax(format!("half power of `{name}`")),
                        });
                    }
                    Some(Power { num, half })
                } else {
                    None
                };
                Ok(Expr::Gen { name: g, power })
            }
            Some(Tok::Sym(b'(')) => {
                self.pos += 1;
                let e = self.elem()?;
                self.expect(b')')?;
                Ok(Expr::Group(Box::new(e)))
            }
            _ => self.syntax("expected a factor"),
        }
    }
}

/// Parses `text` over the generators of `kind`.
pub fn parse_expression(text: &str, kind: GeneratorKind) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        kind,
    };
    if p.peek().is_none() {
        return p.syntax("empty expression");
    }
    let e = p.elem()?;
    if p.peek().is_some() {
        return p.syntax("unexpected token");
    }
    Ok(e)
}

fn fmt_number(f: &mut fmt::Formatter<'_>, c: Complex64) -> fmt::Result {
    if c.im == 0.0 {
        write!(f, "{}", c.re)
    } else if c.re == 0.0 {
        write!(f, "{}i", c.im)
    } else {
        write!(f, "({}+{}i)", c.re, c.im)
    }
}

/// Canonical text: `parse_expression(e.to_string())` returns `e`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(items) => {
                for (k, e) in items.iter().enumerate() {
                    match e {
                        Expr::Neg(inner) if k > 0 => write!(f, " - {inner}")?,
                        _ if k > 0 => write!(f, " + {e}")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::Product(items) => {
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            Expr::Neg(e) => write!(f, "-{e}"),
            Expr::Number(c) => fmt_number(f, *c),
            Expr::Gen { name, power } => {
                write!(f, "{}", name.symbol())?;
                match power {
                    None => Ok(()),
                    Some(Power { num, half: false }) => write!(f, "^{num}"),
                    Some(Power { num, half: true }) => write!(f, "^{num}/2"),
                }
            }
            Expr::Radial(table) => {
                write!(f, "f(rho2; ")?;
                for (k, (key, v)) in table.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{key}:")?;
                    if v.re < 0.0 || v.im < 0.0 {
                        write!(f, "-")?;
                        fmt_number(f, -*v)?;
                    } else {
                        fmt_number(f, *v)?;
                    }
                }
                write!(f, ")")
            }
            Expr::Group(e) => write!(f, "({e})"),
        }
    }
}

fn eval_error<T>(msg: &str) -> Result<T, ExprError> {
    Err(ExprError::Eval(msg.into()))
}

fn su_gen(alg: &SuAlgebra, name: GenName, power: Option<Power>) -> Result<SuElement, ExprError> {
    let g = match name {
        GenName::X => Gen::X,
        GenName::XStar => Gen::XStar,
        GenName::U => Gen::U,
        GenName::UStar => Gen::UStar,
        _ => return eval_error("E_q(2) generator in an SU_q(2) expression"),
    };
    let n = power.map_or(1, |p| p.num);
    alg.normal_order(&[(g, n)]).map_err(|e| ExprError::Eval(e.to_string()))
}

fn e_gen(alg: &EAlgebra, name: GenName, power: Option<Power>) -> Result<EElement, ExprError> {
    let p = power.unwrap_or(Power { num: 1, half: false });
    let halves = if p.half { p.num } else { 2 * p.num };
    let letter = match name {
        GenName::D => (Gen::DeltaHalf, halves),
        GenName::DStar => (Gen::DeltaHalfInv, halves),
        GenName::Z => (Gen::Z, p.num),
        GenName::ZStar => (Gen::ZStar, p.num),
        _ => return eval_error("SU_q(2) generator in an E_q(2) expression"),
    };
    alg.normal_order(&[letter]).map_err(|e| ExprError::Eval(e.to_string()))
}

type MulEval<'a, M> = &'a dyn Fn(&Element<M, f64>, &Element<M, f64>) -> Element<M, f64>;
type GenEval<'a, M> = &'a dyn Fn(GenName, Option<Power>) -> Result<Element<M, f64>, ExprError>;

fn eval_poly<M: Monomial>(
    e: &Expr,
    mul: MulEval<'_, M>,
    gen: GenEval<'_, M>,
) -> Result<Element<M, f64>, ExprError> {
    match e {
        Expr::Sum(items) => items.iter().try_fold(Element::zero(), |acc, x| {
            Ok(&acc + &eval_poly(x, mul, gen)?)
        }),
        Expr::Product(items) => items.iter().try_fold(Element::one(), |acc, x| {
            Ok(mul(&acc, &eval_poly(x, mul, gen)?))
        }),
        Expr::Neg(x) => Ok(-&eval_poly(x, mul, gen)?),
        Expr::Group(x) => eval_poly(x, mul, gen),
        Expr::Number(c) => Ok(Element::scalar(*c)),
        Expr::Gen { name, power } => gen(*name, *power),
        Expr::Radial(_) => eval_error("functions of rho2 have no polynomial form"),
    }
}

/// Evaluates an `SU_q(2)` expression to its normal form.
pub fn eval_su(e: &Expr, alg: &SuAlgebra) -> Result<SuElement, ExprError> {
    eval_poly(e, &|a, b| alg.mul(a, b), &|n, p| su_gen(alg, n, p))
}

/// Value of an `E_q(2)` expression: a polynomial, or a graded element when
/// it contains functions of `rho^2`.
#[derive(Debug, Clone, PartialEq)]
pub enum EValue {
    Poly(EElement),
    Graded(GradedElement<f64>),
}

impl EValue {
    pub fn graded(&self, q: f64) -> GradedElement<f64> {
        match self {
            EValue::Poly(p) => GradedElement::from_element(p, q),
            EValue::Graded(g) => g.clone(),
        }
    }

    pub fn poly(&self) -> Option<&EElement> {
        match self {
            EValue::Poly(p) => Some(p),
            EValue::Graded(_) => None,
        }
    }
}

fn is_radial(g: &GradedElement<f64>) -> bool {
    g.terms.iter().all(|t| t.h == 0 && t.s == 0)
}

/// Pointwise product of two functions of `rho^2`.
fn radial_product(a: &RadialFn<f64>, b: &RadialFn<f64>, q: f64) -> Result<RadialFn<f64>, ExprError> {
    let at = |r: &RadialFn<f64>, k: i64| r.eval_at(k, q).map_err(|e| ExprError::Eval(e.to_string()));
    match (a, b) {
        (RadialFn::Poly(x), RadialFn::Poly(y)) => {
            let mut out = vec![Complex64::new(0.0, 0.0); x.len() + y.len() - 1];
            for (i, u) in x.iter().enumerate() {
                for (j, v) in y.iter().enumerate() {
                    out[i + j] += u * v;
                }
            }
            Ok(RadialFn::Poly(out))
        }
        (RadialFn::Lattice(t), other) | (other, RadialFn::Lattice(t)) => {
            let mut out = BTreeMap::new();
            for (&k, v) in t {
                out.insert(k, v * at(other, k)?);
            }
            Ok(RadialFn::Lattice(out))
        }
        _ => eval_error("unsupported product of radial functions"),
    }
}

fn e_add(a: EValue, b: EValue, q: f64) -> EValue {
    match (a, b) {
        (EValue::Poly(x), EValue::Poly(y)) => EValue::Poly(&x + &y),
        (x, y) => EValue::Graded(x.graded(q).plus(&y.graded(q))),
    }
}

fn e_mul(a: EValue, b: EValue, alg: &EAlgebra) -> Result<EValue, ExprError> {
    let q = alg.q();
    match (a, b) {
        (EValue::Poly(x), EValue::Poly(y)) => Ok(EValue::Poly(alg.mul(&x, &y))),
        (x, EValue::Graded(g)) if is_radial(&g) && (x.poly().is_some() || is_radial(&x.graded(q))) => {
            let left = x.graded(q);
            let mut terms = Vec::new();
            for s in &left.terms {
                for t in &g.terms {
                    terms.push(GradedTerm {
                        h: s.h,
                        s: s.s,
                        coeff: s.coeff * t.coeff,
                        radial: radial_product(&s.radial, &t.radial, q)?,
                    });
                }
            }
            Ok(EValue::Graded(GradedElement { terms }))
        }
        _ => eval_error("a function of rho2 must be the last factor of a product"),
    }
}

fn eval_e_value(e: &Expr, alg: &EAlgebra) -> Result<EValue, ExprError> {
    let q = alg.q();
    match e {
        Expr::Sum(items) => items
            .iter()
            .try_fold(EValue::Poly(Element::zero()), |acc, x| Ok(e_add(acc, eval_e_value(x, alg)?, q))),
        Expr::Product(items) => items
            .iter()
            .try_fold(EValue::Poly(Element::one()), |acc, x| e_mul(acc, eval_e_value(x, alg)?, alg)),
        Expr::Neg(x) => Ok(match eval_e_value(x, alg)? {
            EValue::Poly(p) => EValue::Poly(-&p),
            EValue::Graded(g) => EValue::Graded(g.scale(Complex64::new(-1.0, 0.0))),
        }),
        Expr::Group(x) => eval_e_value(x, alg),
        Expr::Number(c) => Ok(EValue::Poly(Element::scalar(*c))),
        Expr::Gen { name, power } => Ok(EValue::Poly(e_gen(alg, *name, *power)?)),
        Expr::Radial(table) => Ok(EValue::Graded(GradedElement::single(
            0,
            0,
            Complex64::new(1.0, 0.0),
            RadialFn::Lattice(table.iter().copied().collect()),
        ))),
    }
}

/// Evaluates an `E_q(2)` expression.
pub fn eval_e(e: &Expr, alg: &EAlgebra) -> Result<EValue, ExprError> {
    eval_e_value(e, alg)
}
