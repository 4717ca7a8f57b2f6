//! Command implementations behind the `tamecalc` binary.
//!
//! Each subcommand returns a [`CommandOutput`] (text for stdout, an optional
//! report file and an exit code) so the whole front end can be driven from
//! tests without spawning a process.
//!
//! Exit codes: `0` success, `1` a certification failed, `2` usage or
//! scenario error, `3` ball condition violated.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{pm_polynomial, PolyFormat};
use crate::constants::{
    adams_frazier_u, embedding_constant, func_e, gagliardo_constant, hausdorff_young_c, EmbeddingParams, Exponent,
};
use crate::error::Error;
use crate::estimates::{tame_bound, BoundReport, FieldNorms, Options};
use crate::gmodel::GModel;
use crate::spectral::identities::{run_identity_battery, FLOAT_TOLERANCE};
use crate::spectral::{
    adams_frazier_splits, field_norms, verify_adams_frazier, verify_embedding, verify_faadibruno, verify_gagliardo,
    verify_interpolation, verify_tame, CheckRecord, FieldSpec, GridSpec, DEFAULT_TOLERANCE,
};

/// Largest `m` accepted by `tamecalc poly`.
pub const POLY_CAP: usize = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BALL: i32 = 3;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "TAMECALC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "tamecalc", version, about = "Explicit tame bounds for composition operators in H^n(R^d)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; each command has its own default and accepted set.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Also write the report (JSON for bound/verify) to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Relative certification slack; overrides the scenario value.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Replace every Adams–Frazier constant U by 1.
    #[arg(long, global = true)]
    pub freeze_u: bool,

    /// Use the weak form Υ‖f‖_n of the tame bound.
    #[arg(long, global = true)]
    pub weak: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the universal polynomial P_m.
    Poly {
        /// Order, 1..=12.
        m: usize,
    },
    /// Evaluate a constant: `E s`, `S a d`, `U m j d`, `C r d` (r may be `inf`), `G l m d`.
    Constants {
        which: ConstantKind,
        /// Parameters of the chosen constant.
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Tame bound for the model and field (or explicit norms) of a scenario.
    Bound { scenario: PathBuf },
    /// Run the checks listed in a scenario.
    Verify { scenario: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ConstantKind {
    /// E(s) = s^s
    #[value(name = "E")]
    E,
    /// Embedding constant S_ad
    #[value(name = "S")]
    S,
    /// Adams–Frazier constant U_mjd
    #[value(name = "U")]
    U,
    /// Hausdorff–Young constant C_rd
    #[value(name = "C")]
    C,
    /// Gagliardo-type constant (E(l/2m)/E(1−l/2m))^{d/2}
    #[value(name = "G")]
    G,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutput { stdout: String::new(), stderr, code }
    }
}

/// Checks a scenario may request.
pub const CHECK_NAMES: [&str; 7] =
    ["tame", "embedding", "interpolation", "gagliardo", "adams_frazier", "faa_di_bruno", "appendix"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundBlock {
    pub n: usize,
    pub a: u32,
    /// Highest derivative order of the inequality checks; defaults to `max(n, 1)`.
    #[serde(default)]
    pub max_order: Option<usize>,
}

/// A scenario file (TOML, or JSON when the extension is `.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub checks: Vec<String>,
    pub model: GModel,
    pub grid: Option<GridSpec>,
    pub field: Option<FieldSpec>,
    pub bound: BoundBlock,
    /// Explicit norms for `bound`, used instead of a sampled field.
    #[serde(default)]
    pub norms: Option<FieldNorms>,
    /// Multiplies every left-hand side; a value above 1 builds a negative control.
    #[serde(default = "one")]
    pub lhs_scale: f64,
    /// Trials per identity for the `appendix` check.
    #[serde(default = "default_trials")]
    pub trials: usize,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn one() -> f64 {
    1.0
}

fn default_trials() -> usize {
    200
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scenario(format!("cannot read {}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let scenario: Scenario = if is_json {
            serde_json::from_str(&text).map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text).map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?
        };
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<(), Error> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Scenario(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if !(self.lhs_scale > 0.0) {
            return Err(Error::Scenario(format!("lhs_scale must be positive, got {}", self.lhs_scale)));
        }
        if let Some(bad) = self.checks.iter().find(|c| !CHECK_NAMES.contains(&c.as_str())) {
            return Err(Error::Scenario(format!("unknown check `{bad}`; known: {}", CHECK_NAMES.join(", "))));
        }
        if let Some(grid) = &self.grid {
            let d = grid.d() as u32;
            if 2 * self.bound.a <= d {
                return Err(Error::Scenario(format!("a = {} must exceed d/2 = {}", self.bound.a, d as f64 / 2.0)));
            }
        }
        if self.grid.is_some() != self.field.is_some() {
            return Err(Error::Scenario("`grid` and `field` must be given together".into()));
        }
        Ok(())
    }

    fn max_order(&self) -> usize {
        self.bound.max_order.unwrap_or(self.bound.n.max(1))
    }

    fn sampled(&self) -> Result<(GridSpec, crate::spectral::GridField), Error> {
        match (&self.grid, &self.field) {
            (Some(grid), Some(field)) => Ok((*grid, field.build(*grid)?)),
            _ => Err(Error::Scenario("this command needs `grid` and `field` blocks".into())),
        }
    }
}

fn error_output(e: &Error) -> CommandOutput {
    let code = match e {
        Error::Ball { .. } => EXIT_BALL,
        _ => EXIT_USAGE,
    };
    CommandOutput::fail(code, format!("error: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn reject_format(cmd: &str, f: Format) -> CommandOutput {
    CommandOutput::fail(EXIT_USAGE, format!("error: `{cmd}` does not support --format {f:?}"))
}

pub fn cmd_poly(m: usize, format: Format) -> CommandOutput {
    if m == 0 || m > POLY_CAP {
        return CommandOutput::fail(EXIT_USAGE, format!("error: m must lie in 1..={POLY_CAP}, got {m}"));
    }
    let pf = match format {
        Format::Text => PolyFormat::Text,
        Format::Latex => PolyFormat::Latex,
        Format::Json => PolyFormat::Json,
        Format::Csv => return reject_format("poly", format),
    };
    match pm_polynomial(m) {
        Ok(p) => CommandOutput::ok(format!("{}\n", p.render(pf))),
        Err(e) => error_output(&e),
    }
}

#[derive(Serialize)]
struct ConstantValue<'a> {
    constant: ConstantKind,
    params: &'a [String],
    value: f64,
}

fn parse_params<T: std::str::FromStr>(params: &[String], n: usize, usage: &str) -> Result<Vec<T>, Error> {
    if params.len() != n {
        return Err(Error::Domain(format!("expected {usage}")));
    }
    params
        .iter()
        .map(|p| p.parse::<T>().map_err(|_| Error::Domain(format!("cannot parse `{p}`; expected {usage}"))))
        .collect()
}

pub fn cmd_constants(which: ConstantKind, params: &[String], format: Format) -> CommandOutput {
    let value = (|| -> Result<f64, Error> {
        match which {
            ConstantKind::E => func_e(parse_params::<f64>(params, 1, "E <s>")?[0]),
            ConstantKind::S => {
                let v = parse_params::<u32>(params, 2, "S <a> <d>")?;
                Ok(embedding_constant(EmbeddingParams::new(v[0], v[1])?))
            }
            ConstantKind::U => {
                let v = parse_params::<usize>(params, 3, "U <m> <j> <d>")?;
                adams_frazier_u(v[0], v[1], v[2])
            }
            ConstantKind::C => {
                if params.len() != 2 {
                    return Err(Error::Domain("expected C <r> <d>".into()));
                }
                let r: Exponent = params[0].parse()?;
                let d = parse_params::<usize>(&params[1..], 1, "C <r> <d>")?[0];
                hausdorff_young_c(r, d)
            }
            ConstantKind::G => {
                let v = parse_params::<usize>(params, 3, "G <l> <m> <d>")?;
                gagliardo_constant(v[0], v[1], v[2])
            }
        }
    })();
    match (value, format) {
        (Err(e), _) => error_output(&e),
        (Ok(v), Format::Text) => CommandOutput::ok(format!("{v}\n")),
        (Ok(v), Format::Json) => CommandOutput::ok(to_json(&ConstantValue { constant: which, params, value: v })),
        (Ok(_), f) => reject_format("constants", f),
    }
}

#[derive(Serialize)]
struct BoundOutput<'a> {
    field: Option<String>,
    /// `strong` or `weak`.
    form: &'static str,
    /// The right-hand side of the selected form.
    rhs: f64,
    #[serde(flatten)]
    report: &'a BoundReport,
}

pub struct Settings {
    pub format: Option<Format>,
    pub tolerance: Option<f64>,
    pub freeze_u: bool,
    pub weak: bool,
}

pub fn cmd_bound(scenario: &Scenario, settings: &Settings) -> CommandOutput {
    let format = settings.format.unwrap_or(Format::Json);
    if !matches!(format, Format::Json | Format::Text) {
        return reject_format("bound", format);
    }
    let opts = Options { freeze_u: settings.freeze_u };
    let result = (|| -> Result<(BoundReport, Option<String>), Error> {
        let (norms, d, label) = match (&scenario.norms, &scenario.grid) {
            (Some(norms), Some(grid)) => (norms.clone(), grid.d() as u32, None),
            (Some(_), None) => return Err(Error::Scenario("explicit norms need a `grid` block for d".into())),
            (None, _) => {
                let (grid, f) = scenario.sampled()?;
                let label = scenario.field.as_ref().map(FieldSpec::label);
                (field_norms(&f, scenario.bound.n, scenario.bound.a), grid.d() as u32, label)
            }
        };
        let params = EmbeddingParams::new(scenario.bound.a, d)?;
        Ok((tame_bound(&scenario.model, scenario.bound.n, params, &norms, opts)?, label))
    })();
    let (report, label) = match result {
        Ok(r) => r,
        Err(e) => return error_output(&e),
    };
    let (form, rhs) = if settings.weak { ("weak", report.weak_rhs) } else { ("strong", report.strong_rhs) };
    match format {
        Format::Json => CommandOutput::ok(to_json(&BoundOutput { field: label, form, rhs, report: &report })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "model      {}", report.model);
            let _ = writeln!(s, "n, a, d    {}, {}, {}", report.n, report.a, report.d);
            let _ = writeln!(s, "S_ad       {}", report.s_ad);
            let _ = writeln!(s, "rho        {}", report.rho);
            let _ = writeln!(s, "gamma_nd   {}", report.gamma_nd);
            let _ = writeln!(s, "c_nd       {}", report.c_nd);
            let _ = writeln!(s, "Upsilon    {}", report.upsilon);
            let _ = writeln!(s, "rhs ({form}) {rhs}");
            for o in &report.per_order {
                let _ = writeln!(s, "order {}    X coeff {}  Y coeff {}", o.m, o.x_coeff, o.y_coeff);
            }
            CommandOutput::ok(s)
        }
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    model: String,
    field: Option<String>,
    grid: Option<GridSpec>,
    n: usize,
    a: u32,
    tolerance: f64,
    freeze_u: bool,
    weak: bool,
    records: &'a [CheckRecord],
    pass: bool,
}

fn run_check(name: &str, scenario: &Scenario, settings: &Settings, tol: f64) -> Result<Vec<CheckRecord>, Error> {
    let (n, a, top) = (scenario.bound.n, scenario.bound.a, scenario.max_order());
    if name == "appendix" {
        return Ok(run_identity_battery(scenario.trials, 1)?
            .into_iter()
            .map(|t| {
                let limit = if t.exact { 0.0 } else { FLOAT_TOLERANCE };
                CheckRecord::new(format!("appendix/{}", t.name), t.worst, limit, 0.0)
            })
            .collect());
    }
    let (_, f) = scenario.sampled()?;
    let mut out = Vec::new();
    match name {
        "tame" => {
            let opts = Options { freeze_u: settings.freeze_u };
            let cert = verify_tame(&scenario.model, &f, n, a, opts, tol)?;
            let skip = if settings.weak { "/strong" } else { "/weak" };
            out.extend(cert.records.into_iter().filter(|r| !r.name.ends_with(skip)));
        }
        "embedding" => out.push(verify_embedding(&f, a, tol)?),
        "interpolation" => {
            for m in 1..=top {
                for l in 0..=m {
                    out.extend(verify_interpolation(&f, l, m, tol)?);
                }
            }
        }
        "gagliardo" => {
            for m in 1..=top {
                for l in 0..=m {
                    out.push(verify_gagliardo(&f, l, m, a, tol)?);
                }
            }
        }
        "adams_frazier" => {
            let splits: Vec<_> = (1..=top).flat_map(adams_frazier_splits).collect();
            let recs = splits
                .par_iter()
                .map(|(p, q)| verify_adams_frazier(&f, p, q, a, tol))
                .collect::<Result<Vec<_>, _>>()?;
            out.extend(recs);
        }
        "faa_di_bruno" => {
            for m in 1..=top.min(4) {
                out.push(verify_faadibruno(&scenario.model, &f, m)?);
            }
        }
        other => return Err(Error::Scenario(format!("unknown check `{other}`"))),
    }
    Ok(out)
}

fn csv_summary(records: &[CheckRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "lhs", "rhs", "ratio", "pass"]).expect("in-memory write");
    for r in records {
        w.write_record([r.name.clone(), r.lhs.to_string(), r.rhs.to_string(), r.ratio.to_string(), r.pass.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

pub fn cmd_verify(scenario: &Scenario, settings: &Settings) -> (CommandOutput, Option<String>) {
    let format = settings.format.unwrap_or(Format::Csv);
    if !matches!(format, Format::Csv | Format::Json) {
        return (reject_format("verify", format), None);
    }
    let tol = settings.tolerance.unwrap_or(scenario.tolerance);
    if !(tol > 0.0) {
        return (CommandOutput::fail(EXIT_USAGE, format!("error: tolerance must be positive, got {tol}")), None);
    }
    if scenario.checks.is_empty() {
        return (CommandOutput::fail(EXIT_USAGE, "error: the scenario lists no checks"), None);
    }
    let mut records = Vec::new();
    for name in &scenario.checks {
        match run_check(name, scenario, settings, tol) {
            Ok(rs) => records.extend(rs),
            Err(e) => return (error_output(&e), None),
        }
    }
    if scenario.lhs_scale != 1.0 {
        records = records
            .into_iter()
            .map(|r| CheckRecord::new(r.name, r.lhs * scenario.lhs_scale, r.rhs, tol))
            .collect();
    }
    let pass = records.iter().all(|r| r.pass);
    let report = VerifyReport {
        model: scenario.model.name(),
        field: scenario.field.as_ref().map(FieldSpec::label),
        grid: scenario.grid,
        n: scenario.bound.n,
        a: scenario.bound.a,
        tolerance: tol,
        freeze_u: settings.freeze_u,
        weak: settings.weak,
        records: &records,
        pass,
    };
    let json = to_json(&report);
    let stdout = if format == Format::Json { json.clone() } else { csv_summary(&records) };
    let mut stderr = String::new();
    for r in records.iter().filter(|r| !r.pass) {
        let _ = writeln!(stderr, "FAILED {}: lhs {} > rhs {} (ratio {})", r.name, r.lhs, r.rhs, r.ratio);
    }
    let code = if pass { EXIT_OK } else { EXIT_CHECK_FAILED };
    (CommandOutput { stdout, stderr, code }, Some(json))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> CommandOutput {
    let settings = Settings { format: cli.format, tolerance: cli.tolerance, freeze_u: cli.freeze_u, weak: cli.weak };
    if let Some(t) = cli.tolerance {
        if !(t > 0.0) {
            return CommandOutput::fail(EXIT_USAGE, format!("error: tolerance must be positive, got {t}"));
        }
    }
    let (out, report) = match &cli.command {
        Command::Poly { m } => (cmd_poly(*m, cli.format.unwrap_or(Format::Text)), None),
        Command::Constants { which, params } => (cmd_constants(*which, params, cli.format.unwrap_or(Format::Text)), None),
        Command::Bound { scenario } => match Scenario::load(scenario) {
            Ok(s) => {
                let out = cmd_bound(&s, &settings);
                let report = (out.code == EXIT_OK && cli.format != Some(Format::Text)).then(|| out.stdout.clone());
                (out, report)
            }
            Err(e) => (error_output(&e), None),
        },
        Command::Verify { scenario } => match Scenario::load(scenario) {
            Ok(s) => cmd_verify(&s, &settings),
            Err(e) => (error_output(&e), None),
        },
    };
    if let Some(path) = &cli.output {
        let body = report.unwrap_or_else(|| out.stdout.clone());
        if let Err(e) = std::fs::write(path, body) {
            return CommandOutput::fail(EXIT_USAGE, format!("error: cannot write {}: {e}", path.display()));
        }
    }
    out
}

/// Thread cap from [`THREADS_ENV`], if set to a positive integer.
pub fn thread_cap() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got `{v}`")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> Settings {
        Settings { format: None, tolerance: None, freeze_u: false, weak: false }
    }

    fn scenario(text: &str) -> Scenario {
        let s: Scenario = toml::from_str(text).unwrap();
        s.validate().unwrap();
        s
    }

    const SINH: &str = r#"
checks = ["tame", "embedding"]
[model]
kind = "sinh"
[grid]
d = 1
[field]
family = "gaussian"
amplitude = 0.5
[bound]
n = 2
a = 1
"#;

    #[test]
    fn poly_examples() {
        assert_eq!(cmd_poly(1, Format::Text).stdout, "ν10 ρ\n");
        assert_eq!(
            cmd_poly(3, Format::Text).stdout,
            "ν30 ρ³ + (3 ν20 + 3 ν21) ρ² + (ν10 + 3 ν11 + 3 ν12) ρ\n"
        );
        assert_eq!(cmd_poly(13, Format::Text).code, EXIT_USAGE);
        assert_eq!(cmd_poly(0, Format::Text).code, EXIT_USAGE);
        assert_eq!(cmd_poly(2, Format::Csv).code, EXIT_USAGE);
        assert!(cmd_poly(2, Format::Latex).stdout.contains("\\nu_{1 1}"));
    }

    #[test]
    fn constants_examples() {
        let p = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(cmd_constants(ConstantKind::S, &p(&["1", "1"]), Format::Text).stdout, "0.7071067811865476\n");
        assert!(cmd_constants(ConstantKind::U, &p(&["2", "2", "1"]), Format::Text).stdout.starts_with("0.877382675"));
        assert_eq!(cmd_constants(ConstantKind::C, &p(&["2", "3"]), Format::Text).stdout, "1\n");
        assert_eq!(cmd_constants(ConstantKind::C, &p(&["inf", "1"]), Format::Text).stdout, "0.3989422804014327\n");
        assert_eq!(cmd_constants(ConstantKind::S, &p(&["1", "2"]), Format::Text).code, EXIT_USAGE);
        assert_eq!(cmd_constants(ConstantKind::S, &p(&["1"]), Format::Text).code, EXIT_USAGE);
        let json = cmd_constants(ConstantKind::E, &p(&["0.5"]), Format::Json).stdout;
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["constant"], "E");
        assert_eq!(v["value"], 0.5f64.sqrt());
    }

    #[test]
    fn bound_from_field_and_explicit_norms() {
        let s = scenario(SINH);
        let out = cmd_bound(&s, &settings());
        assert_eq!(out.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["form"], "strong");
        assert_eq!(v["c_nd"], 0.0);

        let explicit = scenario(
            r#"
[model]
kind = "complex_monomial"
H = 1
K = 1
[grid]
d = 1
[field]
family = "zero"
[bound]
n = 2
a = 1
[norms]
norm_a = 0.0
norm_n = 0.0
norm_l2 = 0.0
"#,
        );
        let out = cmd_bound(&explicit, &Settings { weak: true, ..settings() });
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["form"], "weak");
        assert_eq!(v["rhs"], 0.0);
    }

    #[test]
    fn ball_violation_exit_code() {
        let mut s = scenario(SINH);
        s.model = GModel::sinh().with_radius(0.2).unwrap();
        assert_eq!(cmd_bound(&s, &settings()).code, EXIT_BALL);
    }

    #[test]
    fn verify_and_negative_control() {
        let s = scenario(SINH);
        let (out, json) = cmd_verify(&s, &settings());
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.starts_with("name,lhs,rhs,ratio,pass\n"));
        assert!(json.unwrap().contains("\"pass\": true"));
        let inflated = Scenario { lhs_scale: 100.0, ..s.clone() };
        let (out, _) = cmd_verify(&inflated, &settings());
        assert_eq!(out.code, EXIT_CHECK_FAILED);
        assert!(out.stderr.contains("FAILED"));
        // identical input, identical bytes
        assert_eq!(cmd_verify(&s, &settings()).1, cmd_verify(&s, &settings()).1);
    }

    #[test]
    fn scenario_validation() {
        let bad = SINH.replace("\"embedding\"", "\"bogus\"");
        let s: Scenario = toml::from_str(&bad).unwrap();
        assert!(s.validate().is_err());
        let bad_a = SINH.replace("d = 1", "d = 2");
        let s: Scenario = toml::from_str(&bad_a).unwrap();
        assert!(s.validate().is_err());
        assert!(toml::from_str::<Scenario>(&SINH.replace("[bound]", "[bound]\nextra = 1")).is_err());
    }
}
