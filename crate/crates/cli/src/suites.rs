//! Verification suites. Each item checks one acceptance criterion and
//! records the measured deviations next to their thresholds.

use std::cell::OnceCell;
use std::time::Instant;

use algebra::{EAlgebra, Gen, GeneratorKind, Half, Monomial, SuAlgebra};
use matrixel::{
    classical_contraction_check, contraction_check, eq_matrix_element, graded_counit, su_matrix_element,
    CompactLabel, EuclidLabel, MatrixError,
};
use num_complex::Complex64;
use plancherel::{
    bump_element, fit_normalization, gram_matrix, normalization_constant, roundtrip, scaling_identity_check,
    GramMatrix, IndexWindow, MomentumLattice,
};
use qkernel::{classical_bessel_series, factorial, q_bessel, DeformationParameter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reps::{
    audit_relations, e_sample, haar_check_e, haar_check_su, ordered_product, represent, su_sample, BasisWindow,
    EuclidRep, Representation, Side, SpectralOptions, SuLiteralRep, SuRep,
};
use serde_json::{json, Value};

use crate::commands::{rep_integral, Group};
use crate::config::RunConfig;
use crate::CliError;

/// Seed of the random words of the confluence check.
pub const WORD_SEED: u64 = 0x00e9_2c0f;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Hopf,
    Relations,
    Haar,
    Orthogonality,
    Contraction,
    ClassicalLimit,
    Plancherel,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Relations => "relations",
            Suite::Haar => "haar",
            Suite::Orthogonality => "orthogonality",
            Suite::Contraction => "contraction",
            Suite::ClassicalLimit => "classical-limit",
            Suite::Plancherel => "plancherel",
            Suite::All => "all",
        }
    }

    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Hopf => &[3],
            Suite::Relations => &[2, 4],
            Suite::Haar => &[1, 5],
            Suite::Orthogonality => &[6, 9],
            Suite::Contraction => &[7],
            Suite::ClassicalLimit => &[8, 13],
            Suite::Plancherel => &[10, 11, 12],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13],
        }
    }
}

/// `value <= threshold`.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
}

impl Metric {
    pub fn new(name: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
        }
    }

    pub fn holds(&self) -> bool {
        self.value <= self.threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

fn cond(name: &str, holds: bool) -> Condition {
    Condition {
        name: name.into(),
        holds,
    }
}

#[derive(Debug, Clone, Default)]
struct Outcome {
    metrics: Vec<Metric>,
    conditions: Vec<Condition>,
    detail: String,
}

/// Result of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckItem {
    pub criterion: u8,
    pub name: &'static str,
    pub metrics: Vec<Metric>,
    pub conditions: Vec<Condition>,
    pub limit_seconds: Option<f64>,
    pub seconds: f64,
    pub detail: String,
    pub error: Option<String>,
    pub passed: bool,
}

fn fmt_num(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e6 {
        format!("{x}")
    } else {
        format!("{x:.3e}")
    }
}

impl CheckItem {
    pub fn within_runtime(&self) -> bool {
        self.limit_seconds.map_or(true, |l| self.seconds < l)
    }

    /// `PASS C<n> <name>: ...` line.
    pub fn summary(&self) -> String {
        let mut parts: Vec<String> = self
            .metrics
            .iter()
            .map(|m| format!("{} = {} <= {}", m.name, fmt_num(m.value), fmt_num(m.threshold)))
            .collect();
        parts.extend(self.conditions.iter().filter(|c| !c.holds).map(|c| format!("violated: {}", c.name)));
        if let Some(l) = self.limit_seconds {
            parts.push(format!("runtime {:.3} s < {l} s", self.seconds));
        }
        if let Some(e) = &self.error {
            parts.push(format!("error: {e}"));
        }
        if !self.detail.is_empty() {
            parts.push(self.detail.clone());
        }
        format!(
            "{} C{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            parts.join("; ")
        )
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "metrics": self.metrics.iter().map(|m| json!({
                "name": m.name, "value": m.value, "threshold": m.threshold, "holds": m.holds(),
            })).collect::<Vec<_>>(),
            "conditions": self.conditions.iter().map(|c| json!({"name": c.name, "holds": c.holds})).collect::<Vec<_>>(),
            "limit_seconds": self.limit_seconds,
            "within_runtime": self.within_runtime(),
            "error": self.error,
        });
        if timings {
            v["seconds"] = json!(self.seconds);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub q: f64,
    pub items: Vec<CheckItem>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, criterion: u8) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.criterion == criterion)
    }

    pub fn to_json(&self, timings: bool) -> Value {
        json!({
            "suite": self.suite.name(),
            "q": self.q,
            "passed": self.passed(),
            "items": self.items.iter().map(|i| i.to_json(timings)).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self, timings: bool) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["criterion", "name", "check", "value", "threshold", "holds"];
        if timings {
            header.push("seconds");
        }
        w.write_record(&header)?;
        for it in &self.items {
            let mut rows: Vec<[String; 4]> = it
                .metrics
                .iter()
                .map(|m| [m.name.clone(), format!("{:e}", m.value), format!("{:e}", m.threshold), m.holds().to_string()])
                .collect();
            rows.extend(it.conditions.iter().map(|c| [c.name.clone(), String::new(), String::new(), c.holds.to_string()]));
            if let Some(l) = it.limit_seconds {
                rows.push(["runtime".into(), String::new(), l.to_string(), it.within_runtime().to_string()]);
            }
            if let Some(e) = &it.error {
                rows.push([format!("error: {e}"), String::new(), String::new(), "false".into()]);
            }
            for r in rows {
                let mut rec = vec![it.criterion.to_string(), it.name.to_string()];
                rec.extend(r);
                if timings {
                    rec.push(format!("{:e}", it.seconds));
                }
                w.write_record(&rec)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("csv: {e}")))
    }
}

/// Shared intermediate results.
struct Context<'a> {
    cfg: &'a RunConfig,
    grams: OnceCell<Result<Vec<GramMatrix>, CliError>>,
}

impl Context<'_> {
    fn grams(&self) -> Result<&[GramMatrix], CliError> {
        self.grams
            .get_or_init(|| {
                let cfg = self.cfg;
                let lat = cfg.lattice()?;
                let w = cfg.basis_window()?;
                let mut out = Vec::new();
                for i in -2..=2 {
                    for j in -2..=2 {
                        for side in [Side::Right, Side::Left] {
                            out.push(gram_matrix((i, j), (i, j), side, &lat, cfg.q, w, cfg.tol)?);
                        }
                    }
                }
                Ok(out)
            })
            .as_deref()
            .map_err(Clone::clone)
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> SuiteReport {
    let ctx = Context {
        cfg,
        grams: OnceCell::new(),
    };
    SuiteReport {
        suite,
        q: cfg.q,
        items: suite.criteria().iter().map(|&n| run_criterion(n, &ctx)).collect(),
    }
}

/// Runs a single criterion with a fresh context.
pub fn run_single(criterion: u8, cfg: &RunConfig) -> CheckItem {
    let ctx = Context {
        cfg,
        grams: OnceCell::new(),
    };
    run_criterion(criterion, &ctx)
}

fn run_criterion(n: u8, ctx: &Context<'_>) -> CheckItem {
    let (name, limit): (&'static str, Option<f64>) = match n {
        1 => ("haar-normalization", Some(1.0)),
        2 => ("relation-audit", Some(1.0)),
        3 => ("hopf-axioms", Some(5.0)),
        4 => ("rewrite-confluence", Some(20.0)),
        5 => ("haar-invariance", Some(30.0)),
        6 => ("counit-diagonality", None),
        7 => ("quantum-contraction", Some(60.0)),
        8 => ("classical-contraction", Some(10.0)),
        9 => ("lattice-orthogonality", Some(60.0)),
        10 => ("normalization-structure", None),
        11 => ("plancherel-roundtrip", Some(60.0)),
        12 => ("beta-scaling", None),
        13 => ("classical-bessel-limit", None),
        _ => ("unknown", None),
    };
    let start = Instant::now();
    let result = match n {
        1 => c1(ctx),
        2 => c2(ctx),
        3 => c3(ctx),
        4 => c4(ctx),
        5 => c5(ctx),
        6 => c6(ctx),
        7 => c7(),
        8 => c8(),
        9 => c9(ctx),
        10 => c10(ctx),
        11 => c11(ctx),
        12 => c12(ctx),
        13 => c13(),
        _ => Err(CliError::Usage(format!("no criterion {n}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (out, error) = match result {
        Ok(o) => (o, None),
        Err(e) => (Outcome::default(), Some(e.to_string())),
    };
    let mut item = CheckItem {
        criterion: n,
        name,
        metrics: out.metrics,
        conditions: out.conditions,
        limit_seconds: limit,
        seconds,
        detail: out.detail,
        error,
        passed: false,
    };
    item.passed = item.error.is_none()
        && !item.metrics.is_empty()
        && item.metrics.iter().all(Metric::holds)
        && item.conditions.iter().all(|c| c.holds)
        && item.within_runtime();
    item
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn c1(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let r = rep_integral(Group::Suq2, "1", ctx.cfg)?;
    let re = r.json["value"][0].as_f64().unwrap_or(f64::NAN);
    let im = r.json["value"][1].as_f64().unwrap_or(f64::NAN);
    Ok(Outcome {
        metrics: vec![Metric::new("|integral(1) - 1|", (Complex64::new(re, im) - c(1.0)).norm(), 1e-12)],
        conditions: vec![],
        detail: format!("integral = {re} + {im}i at q = {}", ctx.cfg.q),
    })
}

fn c2(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let q = ctx.cfg.q;
    let tol = 1e-12;
    let e = audit_relations(&EuclidRep { q }, GeneratorKind::EuclidE, BasisWindow::full(-10, 10)?, tol)?;
    let fitted: Vec<i32> = e.entries.iter().take(3).map(|x| x.fitted).collect();
    let ws = BasisWindow::half(30)?;
    let su = audit_relations(&SuRep { q }, GeneratorKind::CompactSU, ws, tol)?;
    let lit = audit_relations(&SuLiteralRep { q }, GeneratorKind::CompactSU, ws, tol)?;
    let max = |v: &mut dyn Iterator<Item = f64>| v.fold(0.0, f64::max);
    let flagged: Vec<u8> = lit.flagged_lines().into_iter().collect();
    Ok(Outcome {
        metrics: vec![
            Metric::new("E relation residual", max(&mut e.entries.iter().map(|x| x.stated_residual)), tol),
            Metric::new("SU relation residual", max(&mut su.entries.iter().map(|x| x.stated_residual)), tol),
        ],
        conditions: vec![
            cond("E exponents (-2, 2, 2)", fitted == [-2, 2, 2]),
            cond("E relations hold as stated", e.consistent() && e.flagged_lines().is_empty()),
            cond("SU relation set consistent", su.consistent() && su.flagged_lines().is_empty()),
            cond("literal SU flags lines 1 and 2", flagged == [1, 2]),
        ],
        detail: format!("E exponents {fitted:?}; literal SU flags lines {flagged:?}"),
    })
}

fn su_hopf_sample(alg: &SuAlgebra) -> Vec<algebra::SuElement> {
    use Gen::*;
    let words: [&[Gen]; 9] = [&[X], &[XStar], &[U], &[UStar], &[X, U], &[U, UStar], &[XStar, X], &[X, X, UStar], &[XStar, UStar, U]];
    words.iter().map(|w| alg.word_product(w)).collect()
}

fn e_hopf_sample(alg: &EAlgebra) -> Vec<algebra::EElement> {
    use Gen::*;
    let words: [&[Gen]; 9] = [
        &[DeltaHalf],
        &[DeltaHalfInv],
        &[Z],
        &[ZStar],
        &[Z, ZStar],
        &[DeltaHalf, Z],
        &[ZStar, DeltaHalfInv],
        &[Z, Z, ZStar],
        &[DeltaHalf, DeltaHalf, Z],
    ];
    words.iter().map(|w| alg.word_product(w)).collect()
}

fn c3(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let mut qs = vec![0.5, 0.7, 0.9];
    if !qs.contains(&ctx.cfg.q) {
        qs.push(ctx.cfg.q);
    }
    let (mut su_dev, mut e_dev) = (0.0f64, 0.0f64);
    for &q in &qs {
        let su = SuAlgebra::new(q)?;
        su_dev = su_dev.max(su.hopf_axiom_check(&su_hopf_sample(&su)).max_deviation());
        let e = EAlgebra::new(q)?;
        e_dev = e_dev.max(e.hopf_axiom_check(&e_hopf_sample(&e)).max_deviation());
    }
    Ok(Outcome {
        metrics: vec![Metric::new("SU axiom deviation", su_dev, 1e-12), Metric::new("E axiom deviation", e_dev, 1e-12)],
        conditions: vec![],
        detail: format!("q in {qs:?}; coassociativity, counit and antipode on 9 elements per algebra"),
    })
}

fn random_words(rng: &mut ChaCha8Rng, gens: &[Gen], count: usize) -> Vec<Vec<Gen>> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=8);
            (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect()
        })
        .collect()
}

fn confluence<M: Monomial, R: Representation<f64, Mono = M>>(
    alg: &algebra::Hopf<M, f64>,
    rep: &R,
    words: &[Vec<Gen>],
    w: BasisWindow,
) -> Result<f64, CliError> {
    let mut dev = 0.0f64;
    for word in words {
        let lhs = represent(rep, &alg.word_product(word), w)?;
        let rhs = ordered_product(rep, word, w);
        let (lo, hi) = w.interior(word.len() as i64);
        dev = dev.max(lhs.max_relative_deviation_on(&rhs, lo, hi));
    }
    Ok(dev)
}

fn c4(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let q = ctx.cfg.q;
    let mut rng = ChaCha8Rng::seed_from_u64(WORD_SEED);
    let e_words = random_words(&mut rng, GeneratorKind::EuclidE.generators(), 200);
    let su_words = random_words(&mut rng, GeneratorKind::CompactSU.generators(), 200);
    let e_dev = confluence(&EAlgebra::new(q)?, &EuclidRep { q }, &e_words, BasisWindow::full(-12, 12)?)?;
    let su_dev = confluence(&SuAlgebra::new(q)?, &SuRep { q }, &su_words, BasisWindow::half(20)?)?;
    Ok(Outcome {
        metrics: vec![Metric::new("E interior deviation", e_dev, 1e-10), Metric::new("SU interior deviation", su_dev, 1e-10)],
        conditions: vec![],
        detail: format!("200 words of length <= 8 per algebra, seed {WORD_SEED:#x}"),
    })
}

fn c5(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let q = ctx.cfg.q;
    let e = EAlgebra::new(q)?;
    let es = e_sample::<f64>();
    let mut e_dev = 0.0f64;
    for g in &es {
        e_dev = e_dev.max(haar_check_e(&e, g, SpectralOptions::for_q(q))?.max_deviation());
    }
    let su = SuAlgebra::new(q)?;
    let ss = su_sample::<f64>();
    let su_dev = ss.iter().map(|f| haar_check_su(&su, f).max_deviation()).fold(0.0, f64::max);
    Ok(Outcome {
        metrics: vec![Metric::new("E invariance deviation", e_dev, 1e-8), Metric::new("SU invariance deviation", su_dev, 1e-8)],
        conditions: vec![cond("20 elements per group", es.len() == 20 && ss.len() == 20)],
        detail: String::new(),
    })
}

fn c6(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let q = ctx.cfg.q;
    let alg = SuAlgebra::new(q)?;
    let mut su_dev = 0.0f64;
    for l2 in 0..=4 {
        for lab in CompactLabel::all(Half(l2)) {
            let e = alg.counit(&su_matrix_element(&alg, lab)?);
            let want = if lab.i == lab.j { 1.0 } else { 0.0 };
            su_dev = su_dev.max((e - c(want)).norm());
        }
    }
    let mut e_dev = 0.0f64;
    for i in -4..=4i64 {
        for j in (i - 3)..=(i + 3) {
            let e = graded_counit(&eq_matrix_element(EuclidLabel::new(1.3, i, j)?, q), q)?;
            let want = if i == j { 1.0 } else { 0.0 };
            e_dev = e_dev.max((e - c(want)).norm());
        }
    }
    Ok(Outcome {
        metrics: vec![Metric::new("SU counit deviation", su_dev, 1e-12), Metric::new("E counit deviation", e_dev, 1e-12)],
        conditions: vec![],
        detail: "SU: l <= 2, all i, j; E: p = 1.3, |i| <= 4, |i - j| <= 3".into(),
    })
}

fn c7() -> Result<Outcome, CliError> {
    let w = BasisWindow::full(-30, 19)?;
    let ls: Vec<Half> = [5, 10, 20, 40].iter().map(|&l| Half::from_int(l)).collect();
    let mut out = Outcome::default();
    let mut last = 0.0f64;
    let mut rows = Vec::new();
    for (i, j) in [(0, 0), (1, 0), (0, 1)] {
        let r = match contraction_check(EuclidLabel::new(1.0, i, j)?, &ls, 0.9, w) {
            Ok(r) => r,
            Err(MatrixError::Convergence(r)) => *r,
            Err(e) => return Err(e.into()),
        };
        out.conditions.push(cond(&format!("({i}, {j}) strictly decreasing"), r.strictly_decreasing()));
        last = last.max(r.last());
        rows.push(format!(
            "({i},{j}): {}",
            r.rows.iter().map(|x| fmt_num(x.deviation)).collect::<Vec<_>>().join(" > ")
        ));
    }
    out.metrics.push(Metric::new("final deviation", last, 1e-3));
    out.detail = format!("q = 0.9, p = 1, l in 5, 10, 20, 40; {}", rows.join(", "));
    Ok(out)
}

fn c8() -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    let mut last = 0.0f64;
    for p_rho in [0.5, 1.0] {
        for (k, j) in [(0, 0), (1, 0)] {
            let r = match classical_contraction_check(p_rho, k, j, &[10, 50, 200]) {
                Ok(r) => r,
                Err(MatrixError::Convergence(r)) => *r,
                Err(e) => return Err(e.into()),
            };
            out.conditions.push(cond(&format!("p rho = {p_rho}, (k, j) = ({k}, {j}) decreasing"), r.strictly_decreasing()));
            last = last.max(r.last());
        }
    }
    out.metrics.push(Metric::new("final error", last, 1e-2));
    out.detail = "l in 10, 50, 200".into();
    Ok(out)
}

fn c9(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let grams = ctx.grams()?;
    let ratio = grams.iter().map(GramMatrix::offdiag_ratio).fold(0.0, f64::max);
    let herm = grams.iter().map(GramMatrix::hermiticity_deviation).fold(0.0, f64::max);
    let cfg = ctx.cfg;
    Ok(Outcome {
        metrics: vec![Metric::new("off-diagonal ratio", ratio, 1e-6)],
        conditions: vec![cond("window of at least 512 states", cfg.window >= 512)],
        detail: format!(
            "{} Gram matrices, (i, j) in [-2, 2]^2, both sides, m in [{}, {}], window {}, q = {}; hermiticity {}",
            grams.len(),
            cfg.m_min,
            cfg.m_max,
            cfg.window,
            cfg.q,
            fmt_num(herm)
        ),
    })
}

fn c10(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let r = fit_normalization(ctx.grams()?)?;
    let q = ctx.cfg.q;
    let closed = q * q / (1.0 + q);
    let rexp = (r.right_exponents.0.abs()).max((r.right_exponents.1 + 2.0).abs());
    let lexp = ((r.left_exponents.0 - 2.0).abs()).max(r.left_exponents.1.abs());
    Ok(Outcome {
        metrics: vec![
            Metric::new("1/p residual", r.p_residual, 1e-5),
            Metric::new("single-c model residual", r.model_residual, 1e-5),
            Metric::new("right spread in i", r.right_i_spread, 1e-5),
            Metric::new("left spread in j", r.left_j_spread, 1e-5),
            Metric::new("right exponent deviation from (0, -2)", rexp, 1e-5),
            Metric::new("left exponent deviation from (2, 0)", lexp, 1e-5),
        ],
        conditions: vec![],
        detail: format!(
            "c = {}, q^2/(1+q) = {}; left/right exponents ({}, {}), stated relation {}",
            r.c,
            closed,
            fmt_num(r.left_right_exponents.0),
            fmt_num(r.left_right_exponents.1),
            if r.left_right_claim_holds { "holds" } else { "does not hold" }
        ),
    })
}

fn c11(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let q = ctx.cfg.q;
    let w = ctx.cfg.basis_window()?;
    let c = normalization_constant(q, w)?;
    let lat = MomentumLattice::new(-30, 60, q)?;
    let compare = BasisWindow::full(-40, 40)?;
    let mut dev = 0.0f64;
    let mut parts = Vec::new();
    for (h, s) in [(0, 0), (0, 1), (4, -2)] {
        let r = roundtrip(&bump_element(h, s, 0), &lat, IndexWindow::default(), c, q, w, compare)?;
        dev = dev.max(r.max_deviation());
        for &(a, b, d) in &r.bigrades {
            parts.push(format!("({}, {}): {}", Half(a), Half(b), fmt_num(d)));
        }
    }
    Ok(Outcome {
        metrics: vec![Metric::new("roundtrip deviation", dev, 1e-6)],
        conditions: vec![],
        detail: format!("lattice m in [-30, 60], compared on [-40, 40]; {}", parts.join(", ")),
    })
}

fn c12(ctx: &Context<'_>) -> Result<Outcome, CliError> {
    let q = ctx.cfg.q;
    let lat = ctx.cfg.lattice()?;
    let w = ctx.cfg.basis_window()?;
    let labels = [(0, 0), (1, 0), (0, 1), (-1, 2)];
    let (mut coef, mut inner) = (0.0f64, 0.0f64);
    for n in [-1, 1] {
        let r = scaling_identity_check(n, &labels, &lat, q, w)?;
        coef = coef.max(r.coefficient_deviation);
        inner = inner.max(r.inner_product_deviation);
    }
    Ok(Outcome {
        metrics: vec![
            Metric::new("coefficient deviation", coef, 1e-12),
            Metric::new("inner product deviation", inner, 1e-8),
        ],
        conditions: vec![],
        detail: "p0 = q^-1 and q".into(),
    })
}

fn c13() -> Result<Outcome, CliError> {
    let p = DeformationParameter::new(0.999)?;
    let mut dev = 0.0f64;
    let mut points = 0;
    for j in 0..=3u32 {
        for a in -8..=8 {
            for b in -8..=8 {
                let x = Complex64::new(0.25 * f64::from(a), 0.25 * f64::from(b));
                if x.norm() > 2.0 {
                    continue;
                }
                let v = q_bessel(j, x, &p)?.value;
                let mut t = c(1.0 / factorial(j));
                let mut s = t;
                for k in 1..60u32 {
                    t *= -x / (f64::from(k) * f64::from(k + j));
                    s += t;
                }
                dev = dev.max((v - s).norm());
                if b == 0 {
                    dev = dev.max((v.re - classical_bessel_series(j, x.re)).abs());
                }
                points += 1;
            }
        }
    }
    Ok(Outcome {
        metrics: vec![Metric::new("q-Bessel vs factorial series", dev, 1e-2)],
        conditions: vec![],
        detail: format!("q = 0.999, j <= 3, {points} grid points with |x| <= 2"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_cover_all_criteria() {
        let mut seen: Vec<u8> = [
            Suite::Hopf,
            Suite::Relations,
            Suite::Haar,
            Suite::Orthogonality,
            Suite::Contraction,
            Suite::ClassicalLimit,
            Suite::Plancherel,
        ]
        .iter()
        .flat_map(|s| s.criteria().iter().copied())
        .collect();
        seen.sort_unstable();
        assert_eq!(seen, Suite::All.criteria());
    }

    #[test]
    fn failed_metric_fails_the_item() {
        let cfg = RunConfig::default();
        let item = run_single(99, &cfg);
        assert!(!item.passed);
        assert!(item.summary().starts_with("FAIL C99"));
    }

    #[test]
    fn hopf_item_passes() {
        let item = run_single(3, &RunConfig::default());
        assert!(item.passed, "{}", item.summary());
        let j = item.to_json(false);
        assert!(j.get("seconds").is_none());
        assert!(item.to_json(true)["seconds"].is_f64());
    }

    #[test]
    fn words_are_seeded() {
        let gens = GeneratorKind::CompactSU.generators();
        let a = random_words(&mut ChaCha8Rng::seed_from_u64(WORD_SEED), gens, 5);
        let b = random_words(&mut ChaCha8Rng::seed_from_u64(WORD_SEED), gens, 5);
        assert_eq!(a, b);
    }
}
