//! Command dispatch for the `kn-polar` binary.
//!
//! Exit codes: 0 success, 1 check-suite failure, 2 malformed input,
//! 3 degenerate domain, 4 unsupported infinity/unbounded request,
//! 5 convergence-region violation. With `--format json`, stdout carries
//! exactly one JSON document; diagnostics go to stderr.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use kn_polar_core::arrangement::{
    dense_edges, kn_dense_affine, kn_infinity_flats, ArrangementKind, EdgeFlat,
};
use kn_polar_core::zeta::{
    general_conditions, i0_filter, independence_witness, kn_conditions, polar_report,
    verify_witness, ConvergenceCondition,
};
use serde::Serialize;

use crate::json::{
    self, condition_out, edge_out, polar_report_out, witness_out, ArrangementSpec, ConditionsReport,
    CountsOut, DenseEdgesReport, DomainSpec, EdgeOut, ParamsSpec, SpecError, WitnessReport, SCHEMA,
};
use crate::numerics::{
    self, divergence_probe, eval_zeta_mc, mehta, mehta_mc, render_condition, selberg, NumError,
    RealParams,
};
use crate::domains;
use kn_polar_core::zeta::SVariable;

#[derive(Parser, Debug)]
#[command(name = "kn-polar", version, about = "Polar loci of Koba-Nielsen local zeta functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the dense edges (and, for the KN family, the flats at infinity).
    DenseEdges {
        /// Arrangement spec file (JSON).
        #[arg(long)]
        arrangement: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the convergence conditions of the associated zeta function.
    Conditions {
        /// KN family size (mutually exclusive with --arrangement).
        #[arg(long = "N", conflicts_with = "arrangement")]
        n: Option<usize>,
        /// General arrangement spec file (JSON).
        #[arg(long)]
        arrangement: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Per-flat polar-locus contributions over a domain, with the Gamma skeleton.
    Polar {
        #[arg(long = "N")]
        n: usize,
        /// Domain spec file (JSON).
        #[arg(long)]
        domain: PathBuf,
        /// Drop records supported entirely on diagonal variables.
        #[arg(long)]
        i0: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact independence witnesses for the convergence conditions.
    Witness {
        #[arg(long = "N")]
        n: usize,
        /// 0-based index into the condition list.
        #[arg(long, conflicts_with = "all")]
        condition: Option<usize>,
        /// Emit a witness for every condition.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte-Carlo evaluation of the zeta integral at a real parameter point.
    Eval {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        domain: PathBuf,
        /// Parameter file (JSON) with a float per variable.
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-validation suites against closed forms.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Selberg,
    Mehta,
    Divergence,
}

#[derive(thiserror::Error, Debug)]
pub enum AppError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(kn_polar_core::Error),
    #[error(transparent)]
    Num(NumError),
    #[error("{0}")]
    Usage(String),
}

impl From<kn_polar_core::Error> for AppError {
    fn from(e: kn_polar_core::Error) -> Self {
        AppError::Core(e)
    }
}

impl From<NumError> for AppError {
    fn from(e: NumError) -> Self {
        match e {
            NumError::Core(c) => AppError::Core(c),
            other => AppError::Num(other),
        }
    }
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(kn_polar_core::Error::DegenerateDomain { .. }) => 3,
            AppError::Core(kn_polar_core::Error::UnsupportedInfinity) => 4,
            AppError::Num(NumError::Unsupported(_)) => 4,
            AppError::Num(NumError::RegionViolation(_)) => 5,
            AppError::Num(NumError::GammaPole(_)) => 5,
            _ => 2,
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Io(path.display().to_string(), e))?;
    Ok(serde_json::from_str(&text)?)
}

fn emit<T: Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => println!("{text}"),
    }
}

/// Runs one parsed command; `Ok(code)` is the process exit code.
pub fn run(cli: Cli) -> Result<i32, AppError> {
    match cli.command {
        Command::DenseEdges { arrangement, format } => cmd_dense_edges(&arrangement, format),
        Command::Conditions { n, arrangement, format } => cmd_conditions(n, arrangement, format),
        Command::Polar { n, domain, i0, format } => cmd_polar(n, &domain, i0, format),
        Command::Witness { n, condition, all, format } => cmd_witness(n, condition, all, format),
        Command::Eval { n, domain, params, samples, seed, format } => {
            cmd_eval(n, &domain, &params, samples, seed, format)
        }
        Command::Check { suite, samples, seed, format } => cmd_check(suite, samples, seed, format),
    }
}

fn render_equation(e: &json::FormSpec) -> String {
    let mut terms = Vec::new();
    for (i, c) in e.coeffs.iter().enumerate() {
        if c == "0" {
            continue;
        }
        let var = format!("x{}", i + 1);
        match c.as_str() {
            "1" => terms.push(format!("+ {var}")),
            "-1" => terms.push(format!("- {var}")),
            c if c.starts_with('-') => terms.push(format!("- {}*{var}", &c[1..])),
            c => terms.push(format!("+ {c}*{var}")),
        }
    }
    if e.constant != "0" {
        if e.constant.starts_with('-') {
            terms.push(format!("- {}", &e.constant[1..]));
        } else {
            terms.push(format!("+ {}", e.constant));
        }
    }
    let body = terms.join(" ");
    let body = body.strip_prefix("+ ").unwrap_or(&body);
    format!("{body} = 0")
}

fn render_edge(e: &EdgeOut) -> String {
    let eqs: Vec<String> = e.equations.iter().map(render_equation).collect();
    let locus = match &e.infinity {
        None => "affine".to_string(),
        Some(j) => format!(
            "infinity J={{{}}}",
            j.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        ),
    };
    format!(
        "dim {} {locus}: {} | containing: {}",
        e.dim,
        eqs.join("; "),
        e.containing.join(", ")
    )
}

fn cmd_dense_edges(path: &Path, format: Format) -> Result<i32, AppError> {
    let spec: ArrangementSpec = read_json(path)?;
    let arrangement = spec.to_arrangement()?;
    let (affine, infinity): (Vec<EdgeFlat>, Vec<EdgeFlat>) = match arrangement.kind {
        ArrangementKind::Kn(n) => (kn_dense_affine(n)?, kn_infinity_flats(n)?),
        ArrangementKind::General => (dense_edges(&arrangement), Vec::new()),
    };
    let n = arrangement.ambient_dim;
    let report = DenseEdgesReport {
        schema: SCHEMA.to_string(),
        affine: affine.iter().map(|e| edge_out(e, n)).collect(),
        infinity: infinity.iter().map(|e| edge_out(e, n)).collect(),
        counts: CountsOut {
            affine: affine.len(),
            infinity: infinity.len(),
            total: affine.len() + infinity.len(),
        },
    };
    let mut text = String::new();
    for e in report.affine.iter().chain(&report.infinity) {
        text.push_str(&render_edge(e));
        text.push('\n');
    }
    text.push_str(&format!(
        "counts: {} affine + {} infinity = {}",
        report.counts.affine, report.counts.infinity, report.counts.total
    ));
    if let ArrangementKind::Kn(n) = arrangement.kind {
        text.push_str(&format!(
            " (KN identity for N={n}: (3*2^N - N - 3) + (2^N - 1) = 2^(N+2) - N - 4)"
        ));
    }
    emit(format, &report, text);
    Ok(0)
}

fn cmd_conditions(
    n: Option<usize>,
    arrangement: Option<PathBuf>,
    format: Format,
) -> Result<i32, AppError> {
    let (conditions, ambient): (Vec<ConvergenceCondition>, usize) = match (n, arrangement) {
        (Some(n), None) => (kn_conditions(n)?, n),
        (None, Some(path)) => {
            let spec: ArrangementSpec = read_json(&path)?;
            let a = spec.to_arrangement()?;
            (general_conditions(&a)?, a.ambient_dim)
        }
        _ => return Err(AppError::Usage("pass exactly one of --N or --arrangement".into())),
    };
    let report = ConditionsReport {
        schema: SCHEMA.to_string(),
        conditions: conditions.iter().map(|c| condition_out(c, ambient)).collect(),
    };
    let text = conditions
        .iter()
        .map(|c| format!("{} [flat dim {}]", render_condition(c, ambient), c.source.dim()))
        .collect::<Vec<_>>()
        .join("\n");
    emit(format, &report, text);
    Ok(0)
}

fn cmd_polar(n: usize, domain_path: &Path, i0: bool, format: Format) -> Result<i32, AppError> {
    let spec: DomainSpec = read_json(domain_path)?;
    let domain = spec.to_domain(n)?;
    let mut report = polar_report(n, &domain)?;
    if i0 {
        report = i0_filter(&report);
    }
    let out = polar_report_out(&report);
    let mut text = String::new();
    for r in &out.records {
        text.push_str(&format!(
            "{} | flat dim {} | intersection dim {} | {}\n",
            render_condition_out(r),
            r.flat_dim,
            r.intersection_dim,
            if r.contributes { "contributes" } else { "does not contribute" }
        ));
    }
    text.push_str("pole families:\n");
    for f in &out.pole_families {
        let step = if f.direction == "decreasing" { "- t" } else { "+ t" };
        text.push_str(&format!(
            "  {} = {} {step}, t = 0, 1, 2, ...\n",
            f.support.join("+"),
            f.leading_rhs
        ));
    }
    text.push_str(&format!("gamma skeleton: {}", out.gamma_factors.join(" * ")));
    emit(format, &out, text);
    Ok(0)
}

fn render_condition_out(r: &json::FlatRecordOut) -> String {
    let lhs: Vec<String> =
        r.condition.support.iter().map(|s| format!("Re({s})")).collect();
    let op = if r.condition.sense == "greater" { '>' } else { '<' };
    format!("{} {} {}", lhs.join("+"), op, r.condition.bound)
}

fn cmd_witness(
    n: usize,
    condition: Option<usize>,
    all: bool,
    format: Format,
) -> Result<i32, AppError> {
    let conditions = kn_conditions(n)?;
    let targets: Vec<&ConvergenceCondition> = if all {
        conditions.iter().collect()
    } else {
        let idx = condition
            .ok_or_else(|| AppError::Usage("pass --condition <index> or --all".into()))?;
        let c = conditions.get(idx).ok_or_else(|| {
            AppError::Usage(format!(
                "condition index {idx} out of range (0..{})",
                conditions.len()
            ))
        })?;
        vec![c]
    };
    let mut witnesses = Vec::new();
    let mut text = String::new();
    for target in targets {
        let w = independence_witness(n, target)?;
        let verified = verify_witness(&w, &conditions, target);
        let out = witness_out(target, &w, verified, n);
        text.push_str(&format!(
            "target {} | {} | {}\n",
            render_condition(target, n),
            out.assignment
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", "),
            if verified { "verified" } else { "NOT VERIFIED" }
        ));
        witnesses.push(out);
    }
    let report = WitnessReport { schema: SCHEMA.to_string(), n, witnesses };
    emit(format, &report, text.trim_end().to_string());
    Ok(0)
}

fn cmd_eval(
    n: usize,
    domain_path: &Path,
    params_path: &Path,
    samples: u64,
    seed: u64,
    format: Format,
) -> Result<i32, AppError> {
    let domain_spec: DomainSpec = read_json(domain_path)?;
    let domain = domain_spec.to_domain(n)?;
    let params_spec: ParamsSpec = read_json(params_path)?;
    let params = params_spec.to_params(n)?;
    let result = eval_zeta_mc(n, &domain, &params, samples, seed)?;
    let text = format!(
        "estimate = {:.9e}  stderr = {:.3e}  samples = {}  seed = {}",
        result.estimate, result.stderr, result.samples, result.seed
    );
    emit(format, &result, text);
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub oracle: f64,
    pub estimate: f64,
    pub tolerance: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub suite: String,
    pub rows: Vec<CheckRow>,
    pub pass: bool,
}

fn cmd_check(suite: Suite, samples: u64, seed: u64, format: Format) -> Result<i32, AppError> {
    let rows = match suite {
        Suite::Selberg => check_selberg(samples, seed)?,
        Suite::Mehta => check_mehta(samples, seed)?,
        Suite::Divergence => check_divergence(samples, seed)?,
    };
    let pass = rows.iter().all(|r| r.pass);
    let report = CheckReport {
        schema: SCHEMA.to_string(),
        suite: format!("{suite:?}").to_lowercase(),
        rows,
        pass,
    };
    let mut text = String::new();
    for r in &report.rows {
        text.push_str(&format!(
            "{:<44} oracle = {:>14.8e}  estimate = {:>14.8e}  [{}]  {}\n",
            r.name,
            r.oracle,
            r.estimate,
            r.tolerance,
            if r.pass { "pass" } else { "FAIL" }
        ));
    }
    text.push_str(if report.pass { "suite: pass" } else { "suite: FAIL" });
    emit(format, &report, text);
    Ok(if pass { 0 } else { 1 })
}

fn check_selberg(samples: u64, seed: u64) -> Result<Vec<CheckRow>, AppError> {
    let mut rows = Vec::new();
    // Closed form at N = 1 against the Beta-function identity.
    let mut worst: f64 = 0.0;
    for alpha in [0.5, 1.0, 2.0, 3.5] {
        for beta in [0.5, 1.0, 2.5] {
            for gamma in [-0.4, 0.0, 0.5, 1.0] {
                let s = selberg(1, alpha, beta, gamma)?;
                let b = numerics::gamma_fn(alpha)? * numerics::gamma_fn(beta)?
                    / numerics::gamma_fn(alpha + beta)?;
                worst = worst.max(((s - b) / b).abs());
            }
        }
    }
    rows.push(CheckRow {
        name: "selberg(1,a,b,g) vs Beta(a,b) grid (worst rel)".into(),
        oracle: 0.0,
        estimate: worst,
        tolerance: "rel <= 1e-10".into(),
        pass: worst <= 1e-10,
    });
    // Monte Carlo over the square against selberg(2, 2, 2, 1).
    let oracle = selberg(2, 2.0, 2.0, 1.0)?;
    let s = RealParams::selberg_point(2, 2.0, 2.0, 1.0);
    let mc = eval_zeta_mc(2, &domains::cube(2), &s, samples, seed)?;
    let dev = (mc.estimate - oracle).abs();
    let rel = dev / oracle;
    rows.push(CheckRow {
        name: "MC square vs selberg(2,2,2,1)".into(),
        oracle,
        estimate: mc.estimate,
        tolerance: format!("|dev| <= 3*stderr = {:.2e} and rel <= 1%", 3.0 * mc.stderr),
        pass: dev <= 3.0 * mc.stderr && rel <= 0.01,
    });
    Ok(rows)
}

fn check_mehta(samples: u64, seed: u64) -> Result<Vec<CheckRow>, AppError> {
    let mut rows = Vec::new();
    for gamma in [0.5, 1.0] {
        let oracle = mehta(2, gamma)?;
        let mc = mehta_mc(2, gamma, samples, seed);
        let rel = ((mc.estimate - oracle) / oracle).abs();
        rows.push(CheckRow {
            name: format!("Gaussian MC vs mehta(2, {gamma})"),
            oracle,
            estimate: mc.estimate,
            tolerance: "rel <= 2%".into(),
            pass: rel <= 0.02,
        });
    }
    Ok(rows)
}

fn check_divergence(samples: u64, seed: u64) -> Result<Vec<CheckRow>, AppError> {
    let d = domains::ordered_simplex(2);
    let contributing = divergence_probe(
        2,
        &d,
        |eps| RealParams::constant(2, 0.0).set(SVariable::Zero(1), -1.0 + eps),
        0.1,
        4,
        samples,
        seed,
    )?;
    let tame = divergence_probe(
        2,
        &d,
        |eps| RealParams::constant(2, 0.0).set(SVariable::One(1), -1.0 + eps),
        0.1,
        4,
        samples,
        seed,
    )?;
    let growth = |p: &numerics::ProbeResult| {
        p.estimates.last().unwrap().estimate / p.estimates.first().unwrap().estimate
    };
    Ok(vec![
        CheckRow {
            name: "s01 -> -1 over ordered simplex (contributing)".into(),
            oracle: 10.0,
            estimate: growth(&contributing),
            tolerance: "growth >= 10x over 4 halvings".into(),
            pass: contributing.diverging,
        },
        CheckRow {
            name: "s13 -> -1 over ordered simplex (non-contributing)".into(),
            oracle: 1.0,
            estimate: growth(&tame),
            tolerance: "growth < 2x over 4 halvings".into(),
            pass: growth(&tame) < 2.0,
        },
    ])
}
