//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use algebra::{EAlgebra, Element, GeneratorKind, GradedElement, Half, Monomial, RadialFn, SuAlgebra};
use clap::{Args, Parser, Subcommand, ValueEnum};
use matrixel::{
    calibrate, classical_contraction_check, contraction_check, eq_matrix_element, graded_counit, render_constants,
    su_matrix_element, CompactLabel, ConvergenceReport, EuclidLabel, MatrixError,
};
use num_complex::Complex64;
use plancherel::{
    extract_normalization, forward_transform, gram_matrix, normalization_constant, roundtrip, IndexWindow,
};
use qkernel::{
    classical_bessel_series, phi21, q_bessel, q_binomial, q_factorial, q_number, q_pochhammer,
    DeformationParameter, SeriesOptions,
};
use reps::{
    integral_e, integral_su, integral_su_closed, represent, represent_graded, scalar_product_e, BasisWindow,
    EuclidRep, Operator, Side, SuRep,
};
use serde_json::{json, Value};

use crate::config::{OutputFormat, Overrides, RunConfig};
use crate::expr::{eval_e, eval_su, parse_expression, EValue};
use crate::output::{complex, Report};
use crate::suites::{run_suite, Suite};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "eq2", version, about = "Harmonic analysis on the quantum groups SU_q(2) and E_q(2)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Deformation parameter in (0, 1).
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// Working precision of series summation, at least 53.
    #[arg(long = "precision-bits", global = true)]
    pub precision_bits: Option<u32>,
    /// Number of basis states of the l^2 window.
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Numerical tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Smallest momentum lattice index.
    #[arg(long = "mmin", global = true, allow_negative_numbers = true)]
    pub m_min: Option<i64>,
    /// Largest momentum lattice index.
    #[arg(long = "mmax", global = true, allow_negative_numbers = true)]
    pub m_max: Option<i64>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    /// Flat `key = value` configuration file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Include wall-clock seconds in verification reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl GlobalArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            q: self.q,
            precision_bits: self.precision_bits,
            window: self.window,
            tol: self.tol,
            m_min: self.m_min,
            m_max: self.m_max,
            output: self.output,
        }
    }

    pub fn config(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        base.apply(&self.overrides())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q-numbers, q-Pochhammer symbols, 2phi1 and q-Bessel functions.
    Qseries {
        #[command(subcommand)]
        cmd: QseriesCmd,
    },
    /// Normal forms and Hopf structure maps.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// l^2 representations, invariant integrals and scalar products.
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Matrix elements of irreducible representations and contractions.
    Matel {
        #[command(subcommand)]
        cmd: MatelCmd,
    },
    /// Lattice Gram matrices, normalization and the Plancherel transform.
    Plancherel {
        #[command(subcommand)]
        cmd: PlancherelCmd,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Selects the SU_q(2) matrix element convention.
    Calibrate {
        /// Writes the generated constants module to this path.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QFunction {
    QNumber,
    QFactorial,
    QPochhammer,
    QBinomial,
    Phi21,
    Bessel,
    ClassicalBessel,
}

#[derive(Debug, Subcommand)]
pub enum QseriesCmd {
    /// Evaluates a function at the configured q.
    Eval(QEvalArgs),
}

#[derive(Debug, Args)]
pub struct QEvalArgs {
    #[arg(value_enum)]
    pub function: QFunction,
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Imaginary part of the q-Bessel argument.
    #[arg(long = "x-im", allow_negative_numbers = true, default_value_t = 0.0)]
    pub x_im: f64,
    /// Order of the Bessel function.
    #[arg(long)]
    pub j: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Suq2,
    Eq2,
}

impl Group {
    fn name(self) -> &'static str {
        match self {
            Group::Suq2 => "suq2",
            Group::Eq2 => "eq2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(alias = "left")]
    L,
    #[value(alias = "right")]
    R,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::L => Side::Left,
            SideArg::R => Side::Right,
        }
    }
}

#[derive(Debug, Args)]
pub struct ExprArgs {
    #[arg(long, value_enum)]
    pub group: Group,
    #[arg(long)]
    pub expr: String,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Normal form of an expression.
    NormalOrder(ExprArgs),
    Coproduct(ExprArgs),
    Antipode(ExprArgs),
    /// Left and right weights and homogeneous components (E_q(2)).
    Bigrade(ExprArgs),
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub e: ExprArgs,
    /// First basis index; defaults to the configured window.
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<i64>,
}

#[derive(Debug, Args)]
pub struct InnerArgs {
    /// First argument, an E_q(2) expression.
    #[arg(long)]
    pub expr: String,
    /// Second argument; defaults to the first.
    #[arg(long)]
    pub with: Option<String>,
    #[arg(long, value_enum, default_value = "r")]
    pub side: SideArg,
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    /// Represented operator on a window.
    Matrix(MatrixArgs),
    /// Invariant integral.
    Integral(ExprArgs),
    /// Left or right scalar product on E_q(2).
    Inner(InnerArgs),
}

#[derive(Debug, Subcommand)]
pub enum MatelCmd {
    /// Compact matrix element t^l_ij; half-integers as `1/2` or `0.5`.
    Su {
        #[arg(long)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        i: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
    /// Euclidean matrix element t^p_ij.
    Eq {
        #[arg(long)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
    },
    /// Convergence of rescaled compact elements to t^p_ij.
    Contract {
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        /// Spins, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
        l: Vec<String>,
        #[arg(long, allow_negative_numbers = true, default_value_t = -30)]
        lo: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 19)]
        hi: i64,
    },
    /// Classical Jacobi to Bessel contraction.
    Classical {
        #[arg(long = "p-rho")]
        p_rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, value_delimiter = ',', default_value = "10,50,200")]
        l: Vec<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlancherelCmd {
    /// Gram matrix of t^p_ij over the momentum lattice.
    Gram {
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        /// Label of the second factor; defaults to (i, j).
        #[arg(long, allow_negative_numbers = true)]
        i2: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        j2: Option<i64>,
        #[arg(long, value_enum, default_value = "r")]
        side: SideArg,
    },
    /// Fits the normalization constants on the label square [-k, k]^2.
    Fit {
        #[arg(long, default_value_t = 2)]
        k: i64,
    },
    /// Forward transform of an E_q(2) expression.
    Transform {
        #[arg(long)]
        expr: String,
        /// Labels with |i|, |j| <= k.
        #[arg(long, default_value_t = 4)]
        k: i64,
    },
    /// Inverse of the forward transform, compared with the input.
    Roundtrip {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 4)]
        k: i64,
        #[arg(long = "compare-lo", allow_negative_numbers = true, default_value_t = -40)]
        compare_lo: i64,
        #[arg(long = "compare-hi", allow_negative_numbers = true, default_value_t = 40)]
        compare_hi: i64,
    },
}

/// Rendered result of a command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first), runs the command and renders it.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    let result = cli.global.config().and_then(|cfg| {
        let report = execute(&cli.command, &cfg, cli.global.timings)?;
        Ok((report.render(cfg.output)?, report))
    });
    match result {
        Ok((stdout, report)) => Outcome {
            stdout,
            stderr: report.notes.iter().map(|l| format!("{l}\n")).collect(),
            code: report.exit_code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

pub fn execute(cmd: &Command, cfg: &RunConfig, timings: bool) -> Result<Report, CliError> {
    match cmd {
        Command::Qseries { cmd: QseriesCmd::Eval(a) } => qseries_eval(a, cfg),
        Command::Algebra { cmd } => algebra_cmd(cmd, cfg),
        Command::Rep { cmd } => match cmd {
            RepCmd::Matrix(a) => rep_matrix(a, cfg),
            RepCmd::Integral(a) => rep_integral(a.group, &a.expr, cfg),
            RepCmd::Inner(a) => rep_inner(a, cfg),
        },
        Command::Matel { cmd } => matel_cmd(cmd, cfg),
        Command::Plancherel { cmd } => plancherel_cmd(cmd, cfg),
        Command::Verify { suite } => {
            let r = run_suite(*suite, cfg);
            let mut rep = Report::json(r.to_json(timings)).with_csv(r.to_csv(timings)?);
            rep.notes = r.items.iter().map(|i| i.summary()).collect();
            if !r.passed() {
                rep.exit_code = 1;
            }
            Ok(rep)
        }
        Command::Calibrate { write } => calibrate_cmd(write.as_ref()),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn qseries_eval(a: &QEvalArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let q = cfg.q;
    let name = a.function.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut out = json!({"function": name, "q": q, "precision_bits": cfg.precision_bits});
    match a.function {
        QFunction::QNumber => out["value"] = json!(q_number(need(a.n, "n")?, &q)),
        QFunction::QFactorial => out["value"] = json!(q_factorial(need(a.n, "n")?, &q)?),
        QFunction::QPochhammer => {
            let k = need(a.k, "k")?;
            let k = usize::try_from(k).map_err(|_| CliError::Usage(format!("k = {k} must be non-negative")))?;
            out["value"] = json!(q_pochhammer(&need(a.a, "a")?, &q, k));
        }
        QFunction::QBinomial => out["value"] = json!(q_binomial(need(a.n, "n")?, need(a.k, "k")?, &q)),
        QFunction::Phi21 => {
            let opts = SeriesOptions {
                precision_bits: cfg.precision_bits,
                ..SeriesOptions::default()
            };
            let v = phi21(&need(a.a, "a")?, &need(a.b, "b")?, &need(a.c, "c")?, &q, &need(a.x, "x")?, opts)?;
            out["value"] = json!(v.value);
            out["cancellation_estimate"] = json!(v.cancellation_estimate);
            out["terms_used"] = json!(v.terms_used);
        }
        QFunction::Bessel => {
            let p = DeformationParameter::with_precision(q, cfg.precision_bits)?;
            let x = Complex64::new(need(a.x, "x")?, a.x_im);
            let v = q_bessel(need(a.j, "j")?, x, &p)?;
            out["value"] = complex(v.value);
            out["cancellation_estimate"] = json!(v.cancellation_estimate);
            out["terms_used"] = json!(v.terms_used);
        }
        QFunction::ClassicalBessel => {
            out["value"] = json!(classical_bessel_series(need(a.j, "j")?, need(a.x, "x")?));
        }
    }
    Ok(Report::json(out))
}

pub fn element_json<M: Monomial>(f: &Element<M, f64>) -> Value {
    json!({
        "canonical": f.to_string(),
        "terms": f.terms().map(|(m, c)| json!({"monomial": m.to_string(), "coeff": complex(*c)})).collect::<Vec<_>>(),
    })
}

fn radial_json(r: &RadialFn<f64>) -> Value {
    match r {
        RadialFn::Poly(c) => json!({"kind": "poly", "coeffs": c.iter().map(|v| complex(*v)).collect::<Vec<_>>()}),
        RadialFn::Lattice(t) => json!({
            "kind": "lattice",
            "values": t.iter().map(|(k, v)| json!([k, complex(*v)])).collect::<Vec<_>>(),
        }),
        RadialFn::Bessel { order, scale, lattice } => {
            json!({"kind": "bessel", "order": order, "scale": scale, "lattice": lattice})
        }
    }
}

pub fn graded_json(g: &GradedElement<f64>) -> Value {
    json!({
        "terms": g.terms.iter().map(|t| {
            let (i, j) = t.bigrade();
            json!({"h": t.h, "s": t.s, "bigrade": [i.to_f64(), j.to_f64()], "coeff": complex(t.coeff), "radial": radial_json(&t.radial)})
        }).collect::<Vec<_>>(),
    })
}

fn e_value(expr: &str, cfg: &RunConfig) -> Result<(EAlgebra, EValue), CliError> {
    let alg = EAlgebra::new(cfg.q)?;
    let e = parse_expression(expr, GeneratorKind::EuclidE)?;
    let v = eval_e(&e, &alg)?;
    Ok((alg, v))
}

fn su_value(expr: &str, cfg: &RunConfig) -> Result<(SuAlgebra, algebra::SuElement), CliError> {
    let alg = SuAlgebra::new(cfg.q)?;
    let e = parse_expression(expr, GeneratorKind::CompactSU)?;
    let v = eval_su(&e, &alg)?;
    Ok((alg, v))
}

fn e_poly(expr: &str, cfg: &RunConfig) -> Result<(EAlgebra, algebra::EElement), CliError> {
    let (alg, v) = e_value(expr, cfg)?;
    match v {
        EValue::Poly(p) => Ok((alg, p)),
        EValue::Graded(_) => Err(CliError::Usage("this command needs a polynomial expression".into())),
    }
}

fn algebra_cmd(cmd: &AlgebraCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    let (op, a) = match cmd {
        AlgebraCmd::NormalOrder(a) => ("normal-order", a),
        AlgebraCmd::Coproduct(a) => ("coproduct", a),
        AlgebraCmd::Antipode(a) => ("antipode", a),
        AlgebraCmd::Bigrade(a) => ("bigrade", a),
    };
    let mut out = json!({"operation": op, "group": a.group.name(), "q": cfg.q, "input": a.expr});
    match (cmd, a.group) {
        (AlgebraCmd::NormalOrder(_), Group::Suq2) => out["result"] = element_json(&su_value(&a.expr, cfg)?.1),
        (AlgebraCmd::NormalOrder(_), Group::Eq2) => {
            out["result"] = match e_value(&a.expr, cfg)?.1 {
                EValue::Poly(p) => element_json(&p),
                EValue::Graded(g) => graded_json(&g),
            }
        }
        (AlgebraCmd::Coproduct(_), Group::Suq2) => {
            let (alg, f) = su_value(&a.expr, cfg)?;
            out["result"] = tensor_json(&alg.coproduct(&f));
        }
        (AlgebraCmd::Coproduct(_), Group::Eq2) => {
            let (alg, f) = e_poly(&a.expr, cfg)?;
            out["result"] = tensor_json(&alg.coproduct(&f));
        }
        (AlgebraCmd::Antipode(_), Group::Suq2) => {
            let (alg, f) = su_value(&a.expr, cfg)?;
            out["result"] = element_json(&alg.antipode(&f));
        }
        (AlgebraCmd::Antipode(_), Group::Eq2) => {
            let (alg, f) = e_poly(&a.expr, cfg)?;
            out["result"] = element_json(&alg.antipode(&f));
        }
        (AlgebraCmd::Bigrade(_), Group::Suq2) => {
            return Err(CliError::Usage("bigrade is defined for --group eq2".into()));
        }
        (AlgebraCmd::Bigrade(_), Group::Eq2) => {
            let (alg, v) = e_value(&a.expr, cfg)?;
            match v {
                EValue::Poly(f) => {
                    let b = alg.bigrade_of(&f);
                    out["result"] = json!({
                        "i": b.i.to_f64(),
                        "j": b.j.to_f64(),
                        "homogeneous": b.homogeneous,
                        "components": alg.components(&f).iter().map(|((i, j), e)| json!({
                            "bigrade": [i.to_f64(), j.to_f64()], "element": element_json(e),
                        })).collect::<Vec<_>>(),
                    });
                }
                EValue::Graded(g) => {
                    let b = g.bigrade();
                    out["result"] = json!({
                        "i": b.map(|x| x.0.to_f64()),
                        "j": b.map(|x| x.1.to_f64()),
                        "homogeneous": b.is_some(),
                        "terms": graded_json(&g)["terms"].clone(),
                    });
                }
            }
        }
    }
    Ok(Report::json(out))
}

fn tensor_json<M: Monomial>(t: &algebra::TensorElement<M, f64>) -> Value {
    json!({
        "canonical": t.to_string(),
        "terms": t.terms().map(|((a, b), c)| json!({"left": a.to_string(), "right": b.to_string(), "coeff": complex(*c)})).collect::<Vec<_>>(),
    })
}

fn operator_report(op: &Operator, group: Group, cfg: &RunConfig) -> Result<Report, CliError> {
    let w = op.window;
    let bands: Vec<Value> = op
        .bands()
        .filter(|(_, b)| b.iter().any(|v| v.norm() > 0.0))
        .map(|(k, b)| json!({"offset": k, "values": b.iter().map(|v| complex(*v)).collect::<Vec<_>>()}))
        .collect();
    let json = json!({
        "group": group.name(),
        "q": cfg.q,
        "window": [w.lo, w.hi],
        "columns_from": w.lo,
        "bands": bands,
    });
    let mut wr = csv::Writer::from_writer(Vec::new());
    wr.write_record(["row", "col", "re", "im"])?;
    for r in w.indices() {
        for c in w.indices() {
            let v = op.get(r, c);
            wr.write_record([r.to_string(), c.to_string(), format!("{:e}", v.re), format!("{:e}", v.im)])?;
        }
    }
    let bytes = wr.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    let csv = String::from_utf8(bytes).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Report::json(json).with_csv(csv))
}

fn rep_matrix(a: &MatrixArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let w = match a.e.group {
        Group::Suq2 => BasisWindow::half(a.hi.unwrap_or(cfg.window as i64 - 1))?,
        Group::Eq2 => {
            let d = cfg.basis_window()?;
            BasisWindow::full(a.lo.unwrap_or(d.lo), a.hi.unwrap_or(d.hi))?
        }
    };
    let w = match (a.e.group, a.lo) {
        (Group::Suq2, Some(lo)) => BasisWindow::new(lo, w.hi, reps::Space::HalfLine)?,
        _ => w,
    };
    let op = match a.e.group {
        Group::Suq2 => represent(&SuRep { q: cfg.q }, &su_value(&a.e.expr, cfg)?.1, w)?,
        Group::Eq2 => match e_value(&a.e.expr, cfg)?.1 {
            EValue::Poly(p) => represent(&EuclidRep { q: cfg.q }, &p, w)?,
            EValue::Graded(g) => represent_graded(&g, cfg.q, w)?,
        },
    };
    operator_report(&op, a.e.group, cfg)
}

/// Invariant integral of an expression.
pub fn rep_integral(group: Group, expr: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let q = cfg.q;
    let mut out = json!({"group": group.name(), "q": q, "input": expr});
    match group {
        Group::Suq2 => {
            let (_, f) = su_value(expr, cfg)?;
            let v = integral_su(&f, q, cfg.tol)?;
            out["value"] = complex(v.value);
            out["tail_bound"] = json!(v.tail_bound);
            out["summed_window"] = json!([v.window.0, v.window.1]);
            out["closed_form"] = complex(integral_su_closed(&f, q));
        }
        Group::Eq2 => {
            let (_, v) = e_value(expr, cfg)?;
            let v = integral_e(&v.graded(q), q, cfg.tol)?;
            out["value"] = complex(v.value);
            out["tail_bound"] = json!(v.tail_bound);
            out["summed_window"] = json!([v.window.0, v.window.1]);
        }
    }
    Ok(Report::json(out))
}

fn rep_inner(a: &InnerArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let q = cfg.q;
    let f = e_value(&a.expr, cfg)?.1.graded(q);
    let g = match &a.with {
        Some(s) => e_value(s, cfg)?.1.graded(q),
        None => f.clone(),
    };
    let v = scalar_product_e(&f, &g, a.side.side(), q, cfg.tol)?;
    Ok(Report::json(json!({
        "group": "eq2",
        "q": q,
        "side": if a.side == SideArg::L { "L" } else { "R" },
        "input": [a.expr, a.with.clone().unwrap_or_else(|| a.expr.clone())],
        "value": complex(v.value),
        "tail_bound": v.tail_bound,
        "summed_window": [v.window.0, v.window.1],
    })))
}

/// `3/2`, `-1/2`, `2` or `1.5`.
pub fn parse_half(s: &str) -> Result<Half, CliError> {
    let bad = || CliError::Usage(format!("`{s}` is not an integer or half-integer"));
    let t = s.trim();
    if let Some(num) = t.strip_suffix("/2") {
        return num.trim().parse::<i64>().map(Half).map_err(|_| bad());
    }
    if let Ok(n) = t.parse::<i64>() {
        return Ok(Half::from_int(n));
    }
    let x: f64 = t.parse().map_err(|_| bad())?;
    let d = 2.0 * x;
    if d.is_finite() && d == d.round() && d.abs() < 1e15 {
        Ok(Half(d as i64))
    } else {
        Err(bad())
    }
}

fn convergence_report(r: Result<ConvergenceReport, MatrixError>) -> Result<Report, CliError> {
    let (r, tail_decreasing) = match r {
        Ok(r) => (r, true),
        Err(MatrixError::Convergence(r)) => (*r, false),
        Err(e) => return Err(e.into()),
    };
    let mut json = serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?;
    json["strictly_decreasing"] = json!(r.strictly_decreasing());
    json["last"] = json!(r.last());
    json["tail_decreasing"] = json!(tail_decreasing);
    let mut rep = Report::json(json).with_csv(r.to_csv());
    if !tail_decreasing {
        rep.exit_code = 3;
        rep.notes.push(format!("no convergence for {}", r.label));
    }
    Ok(rep)
}

fn matel_cmd(cmd: &MatelCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    let q = cfg.q;
    match cmd {
        MatelCmd::Su { l, i, j } => {
            let lab = CompactLabel::new(parse_half(l)?, parse_half(i)?, parse_half(j)?)?;
            let alg = SuAlgebra::new(q)?;
            let f = su_matrix_element(&alg, lab)?;
            Ok(Report::json(json!({
                "q": q,
                "label": {"l": lab.l.to_f64(), "i": lab.i.to_f64(), "j": lab.j.to_f64()},
                "element": element_json(&f),
                "counit": complex(alg.counit(&f)),
            })))
        }
        MatelCmd::Eq { p, i, j } => {
            let g = eq_matrix_element(EuclidLabel::new(*p, *i, *j)?, q);
            Ok(Report::json(json!({
                "q": q,
                "label": {"p": p, "i": i, "j": j},
                "element": graded_json(&g),
                "counit": complex(graded_counit(&g, q)?),
            })))
        }
        MatelCmd::Contract { p, i, j, l, lo, hi } => {
            let ls = l.iter().map(|s| parse_half(s)).collect::<Result<Vec<_>, _>>()?;
            let w = BasisWindow::full(*lo, *hi)?;
            convergence_report(contraction_check(EuclidLabel::new(*p, *i, *j)?, &ls, q, w))
        }
        MatelCmd::Classical { p_rho, k, j, l } => convergence_report(classical_contraction_check(*p_rho, *k, *j, l)),
    }
}

fn plancherel_cmd(cmd: &PlancherelCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    let q = cfg.q;
    let w = cfg.basis_window()?;
    match cmd {
        PlancherelCmd::Gram { i, j, i2, j2, side } => {
            let lat = cfg.lattice()?;
            let right = (i2.unwrap_or(*i), j2.unwrap_or(*j));
            let g = gram_matrix((*i, *j), right, side.side(), &lat, q, w, cfg.tol)?;
            let mut json = serde_json::to_value(&g).map_err(|e| CliError::Usage(e.to_string()))?;
            json["offdiag_ratio"] = json!(g.offdiag_ratio());
            json["hermiticity_deviation"] = json!(g.hermiticity_deviation());
            Ok(Report::table(json, g.to_csv()?))
        }
        PlancherelCmd::Fit { k } => {
            let lat = cfg.lattice()?;
            let mut grams = Vec::new();
            for i in -k..=*k {
                for j in -k..=*k {
                    for side in [Side::Right, Side::Left] {
                        grams.push(gram_matrix((i, j), (i, j), side, &lat, q, w, cfg.tol)?);
                    }
                }
            }
            let r = extract_normalization(&grams)?;
            let mut json = serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?;
            json["closed_form"] = json!(q * q / (1.0 + q));
            Ok(Report::json(json))
        }
        PlancherelCmd::Transform { expr, k } => {
            let f = e_value(expr, cfg)?.1.graded(q);
            let tab = forward_transform(&f, &cfg.lattice()?, IndexWindow::square(*k), q, w)?;
            let json = serde_json::to_value(&tab).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Report::table(json, tab.to_csv()?))
        }
        PlancherelCmd::Roundtrip {
            expr,
            k,
            compare_lo,
            compare_hi,
        } => {
            let f = e_value(expr, cfg)?.1.graded(q);
            let c = normalization_constant(q, w)?;
            let compare = BasisWindow::full(*compare_lo, *compare_hi)?;
            let r = roundtrip(&f, &cfg.lattice()?, IndexWindow::square(*k), c, q, w, compare)?;
            let mut json = serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?;
            json["c"] = json!(c);
            json["max_deviation"] = json!(r.max_deviation());
            json["lattice"] = json!([cfg.m_min, cfg.m_max]);
            Ok(Report::json(json))
        }
    }
}

fn calibrate_cmd(write: Option<&PathBuf>) -> Result<Report, CliError> {
    let r = calibrate(&[0.6, 0.85])?;
    let mut json = serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?;
    let Some(sel) = r.selected else {
        return Err(CliError::Verification("no convention passes all checks".into()));
    };
    let text = render_constants(&sel);
    json["constants"] = json!(text);
    if let Some(p) = write {
        std::fs::write(p, &text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?;
        json["written"] = json!(p.display().to_string());
    }
    Ok(Report::json(json))
}
