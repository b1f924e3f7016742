//! The `zlconst` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 construction error, 3 numeric or
//! cross-check failure.
//!
//! CSV columns:
//! * `compute`: `method,exact,float,am_diag,am_off,residual_vs_oracle`
//! * `sweep`: `family,params,order,linear_characters,nonlinear_degree,exact,exact_method,float,residual,error`
//! * `figure1`: `family,condition,order,linear_characters,nonlinear_degree,am_minus_one,minimum,attained_at,general_value,verified`
//! * `verify`: `check,passed,detail`

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::amenability::{
    amzl_direct_norm_with_limit, amzl_general, analyze, closed_form_for, AmenabilityReport,
    Analysis, Method, DIRECT_NORM_LIMIT,
};
use crate::error::{Error, ErrorKind, Result};
use crate::families::{Family, FrobeniusSpec};
use crate::field::prime_power;
use crate::group::{build_from_generators, parse_generators, GroupTable};
use crate::rational::ExactRational;
use crate::verify::{self, VerifyOptions, VALUE_TOLERANCE};
use crate::DEFAULT_ORDER_CAP;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONSTRUCTION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "zlconst",
    version,
    about = "Amenability constants of centres of finite group algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the character-table eigen-split.
    #[arg(long, env = "ZLCONST_SEED", default_value_t = 1, global = true)]
    seed: u64,
    /// Largest group order accepted.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP, global = true)]
    order_cap: usize,
    /// Agreement tolerance between numeric routes.
    #[arg(long, default_value_t = VALUE_TOLERANCE, global = true)]
    tolerance: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the constant of one group by every applicable method.
    Compute(ComputeArgs),
    /// Compute the constant over a range of family parameters.
    Sweep(FamilyArgs),
    /// Run the verification corpus.
    Verify(VerifyArgs),
    /// Print the family summary table.
    Figure1,
}

#[derive(Args, Debug, Clone, Default)]
struct FamilyArgs {
    /// cyclic, abelian, dihedral, quaternion, extraspecial, affine, a2xb, frobenius
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Frobenius complement order.
    #[arg(long)]
    h: Option<String>,
    /// Frobenius kernel order.
    #[arg(long)]
    k: Option<String>,
    /// Cyclic factor orders for `abelian`, e.g. `2,2`.
    #[arg(long)]
    orders: Option<String>,
    /// Multiplier for the Frobenius action `x -> u x` (default: smallest valid).
    #[arg(long)]
    multiplier: Option<u64>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Generator file: one permutation per line in cycle notation.
    #[arg(long, conflicts_with = "family")]
    generators: Option<PathBuf>,
    /// Comma-separated method tags, or `all`.
    #[arg(long, default_value = "all")]
    methods: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated check names.
    #[arg(long)]
    only: Option<String>,
    /// Corrupts one character table to exercise the failure path.
    #[arg(long, hide = true)]
    inject_corruption: bool,
}

/// Parses and runs a command line, writing results to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a, &cli.common, out),
        Command::Sweep(a) => cmd_sweep(a, &cli.common, out),
        Command::Verify(a) => cmd_verify(a, &cli.common, out),
        Command::Figure1 => cmd_figure1(&cli.common, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Usage => EXIT_USAGE,
        ErrorKind::Construction => EXIT_CONSTRUCTION,
        ErrorKind::Numeric => EXIT_NUMERIC,
    }
}

/// A parameter given as `7`, `3,5,9` or the inclusive range `3..13`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ParamValues {
    values: Vec<u64>,
    from_range: bool,
}

fn parse_param(name: &str, raw: &str) -> Result<ParamValues> {
    let bad = || Error::Usage(format!("--{name}: cannot parse `{raw}`"));
    if let Some((a, b)) = raw.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if a > b {
            return Err(Error::Usage(format!("--{name}: empty range `{raw}`")));
        }
        return Ok(ParamValues {
            values: (a..=b).collect(),
            from_range: true,
        });
    }
    let values = raw
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(bad());
    }
    Ok(ParamValues {
        values,
        from_range: false,
    })
}

fn single(name: &str, raw: &Option<String>) -> Result<Option<u64>> {
    match raw {
        None => Ok(None),
        Some(r) => {
            let v = parse_param(name, r)?;
            if v.values.len() != 1 {
                return Err(Error::Usage(format!("--{name} takes a single value here")));
            }
            Ok(Some(v.values[0]))
        }
    }
}

fn required(name: &str, v: Option<u64>, family: &str) -> Result<u64> {
    v.ok_or_else(|| Error::Usage(format!("family `{family}` needs --{name}")))
}

fn parse_orders(raw: &str) -> Result<Vec<u64>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Usage(format!("--orders: cannot parse `{raw}`")))
        })
        .collect()
}

fn frobenius_family(k: u64, h: u64, multiplier: Option<u64>) -> Result<Family> {
    let spec = match multiplier {
        Some(u) => FrobeniusSpec::cyclic(k, h, u),
        None => FrobeniusSpec::cyclic_auto(k, h)?,
    };
    Ok(Family::Frobenius(spec))
}

/// Scalar family parameters as given on the command line.
#[derive(Copy, Clone, Debug, Default)]
struct Scalars {
    n: Option<u64>,
    p: Option<u64>,
    q: Option<u64>,
    h: Option<u64>,
    k: Option<u64>,
}

fn family_from(
    name: &str,
    v: Scalars,
    orders: &Option<String>,
    multiplier: Option<u64>,
) -> Result<Family> {
    let Scalars { n, p, q, h, k } = v;
    Ok(match name {
        "cyclic" => Family::Cyclic {
            n: required("n", n, name)?,
        },
        "abelian" => {
            let raw = orders
                .as_ref()
                .ok_or_else(|| Error::Usage("family `abelian` needs --orders".into()))?;
            Family::Abelian {
                orders: parse_orders(raw)?,
            }
        }
        "dihedral" => Family::Dihedral {
            n: required("n", n, name)?,
        },
        "quaternion" | "q8" => Family::Quaternion8,
        "extraspecial" => {
            let n = required("n", n, name)?;
            Family::Extraspecial {
                p: required("p", p, name)?,
                n: u32::try_from(n).map_err(|_| Error::Usage("--n too large".into()))?,
            }
        }
        "affine" => Family::Affine {
            q: required("q", q, name)?,
        },
        "a2xb" => Family::A2xb {
            q: required("q", q, name)?,
        },
        "frobenius" => {
            frobenius_family(required("k", k, name)?, required("h", h, name)?, multiplier)?
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    })
}

/// The group under study plus its family, when it came from one.
struct Source {
    family: Option<Family>,
    group: GroupTable,
}

fn build_source(args: &ComputeArgs, common: &CommonArgs) -> Result<Source> {
    if let Some(path) = &args.generators {
        let text = std::fs::read_to_string(path)?;
        let gens = parse_generators(&text)?;
        let label = path.file_name().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        let group = build_from_generators(&gens, common.order_cap)?.with_label(label);
        return Ok(Source {
            family: None,
            group,
        });
    }
    let fa = &args.family;
    let name = fa
        .family
        .as_deref()
        .ok_or_else(|| Error::Usage("compute needs --family or --generators".into()))?;
    let scalars = Scalars {
        n: single("n", &fa.n)?,
        p: single("p", &fa.p)?,
        q: single("q", &fa.q)?,
        h: single("h", &fa.h)?,
        k: single("k", &fa.k)?,
    };
    let family = family_from(name, scalars, &fa.orders, fa.multiplier)?;
    let group = family.build(common.order_cap)?;
    Ok(Source {
        family: Some(family),
        group,
    })
}

fn parse_methods(raw: &str) -> Result<Option<Vec<Method>>> {
    if raw.trim() == "all" {
        return Ok(None);
    }
    raw.split(',')
        .map(|t| {
            Method::from_tag(t.trim())
                .ok_or_else(|| Error::Usage(format!("unknown method `{}`", t.trim())))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub label: String,
    pub order: usize,
    pub num_classes: usize,
    pub class_sizes: Vec<usize>,
    pub degrees: Vec<u64>,
    pub derived_order: usize,
    pub linear_characters: usize,
    pub nonlinear_degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub a: Method,
    pub b: Method,
    pub residual: f64,
}

/// Output of `compute`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComputeOutput {
    pub group: GroupSummary,
    pub reports: Vec<AmenabilityReport>,
    pub residuals: Vec<Residual>,
    pub exact_agreement: bool,
    pub tolerance: f64,
    pub passed: bool,
    pub notes: Vec<String>,
}

fn summarize(group: &GroupTable, a: &Analysis) -> GroupSummary {
    GroupSummary {
        label: group.label().to_string(),
        order: group.order(),
        num_classes: a.partition.num_classes(),
        class_sizes: a.partition.sizes().to_vec(),
        degrees: a.table.degrees().to_vec(),
        derived_order: a.derived_order,
        linear_characters: a.linear_count,
        nonlinear_degree: a.nonlinear_degree,
    }
}

/// Runs the selected methods on one group and cross-checks them.
pub fn compute_reports(
    family: Option<&Family>,
    group: &GroupTable,
    methods: Option<&[Method]>,
    seed: u64,
    tolerance: f64,
) -> Result<ComputeOutput> {
    let analysis = analyze(group, seed)?;
    let explicit = methods.is_some();
    let wanted = |m: Method| methods.is_none_or(|ms| ms.contains(&m));
    let mut reports = Vec::new();
    let mut notes = Vec::new();

    if wanted(Method::GeneralEq2) {
        reports.push(amzl_general(&analysis.table));
    }
    let mut oracle = None;
    if wanted(Method::DirectNormEq1) {
        match amzl_direct_norm_with_limit(&analysis.table, &analysis.partition, DIRECT_NORM_LIMIT) {
            Ok(v) => {
                oracle = Some(v);
                reports.push(AmenabilityReport::float(Method::DirectNormEq1, v));
            }
            Err(e @ Error::OracleTooLarge { .. }) if !explicit => {
                notes.push(format!("direct_norm_eq1 skipped: {e}"))
            }
            Err(e) => return Err(e),
        }
    }
    if wanted(Method::TwoDegreeEq4) {
        match analysis.two_degree() {
            Some(v) => reports.push(AmenabilityReport::exact(Method::TwoDegreeEq4, v?)),
            None if explicit => {
                return Err(Error::Usage(
                    "two_degree_eq4 needs a group with two character degrees".into(),
                ))
            }
            None => notes.push("two_degree_eq4 skipped: no two-character-degree profile".into()),
        }
    }
    let closed = family.and_then(closed_form_for).transpose()?;
    for m in Method::ALL.into_iter().filter(|m| m.is_closed_form()) {
        match &closed {
            Some((cm, v)) if *cm == m && wanted(m) => {
                reports.push(AmenabilityReport::exact(m, v.clone()))
            }
            _ if explicit && wanted(m) => {
                return Err(Error::Usage(format!(
                    "{m} does not apply to {}",
                    group.label()
                )));
            }
            _ => {}
        }
    }
    if let Some(o) = oracle {
        for r in reports.iter_mut() {
            r.residual_vs_oracle = Some((r.value_float - o).abs());
        }
    }
    let mut residuals = Vec::new();
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            residuals.push(Residual {
                a: a.method,
                b: b.method,
                residual: (a.value_float - b.value_float).abs(),
            });
        }
    }
    let exacts: Vec<&ExactRational> = reports
        .iter()
        .filter_map(|r| r.value_exact.as_ref())
        .collect();
    let exact_agreement = exacts.windows(2).all(|w| w[0] == w[1]);
    let passed = exact_agreement && residuals.iter().all(|r| r.residual < tolerance);
    Ok(ComputeOutput {
        group: summarize(group, &analysis),
        reports,
        residuals,
        exact_agreement,
        tolerance,
        passed,
        notes,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:e}"))
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn cmd_compute(args: &ComputeArgs, common: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let methods = parse_methods(&args.methods)?;
    let source = build_source(args, common)?;
    let result = compute_reports(
        source.family.as_ref(),
        &source.group,
        methods.as_deref(),
        common.seed,
        common.tolerance,
    )?;
    match common.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&result).map_err(std::io::Error::other)?
        )?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "method",
                "exact",
                "float",
                "am_diag",
                "am_off",
                "residual_vs_oracle",
            ])
            .map_err(csv_err)?;
            for r in &result.reports {
                w.write_record([
                    r.method.tag().to_string(),
                    r.value_exact
                        .as_ref()
                        .map_or_else(String::new, ExactRational::to_string),
                    format!("{:e}", r.value_float),
                    fmt_opt(r.am_diag),
                    fmt_opt(r.am_off),
                    fmt_opt(r.residual_vs_oracle),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            let g = &result.group;
            writeln!(
                out,
                "group: {} (order {}, {} classes)",
                g.label, g.order, g.num_classes
            )?;
            writeln!(out, "class sizes: {:?}", g.class_sizes)?;
            writeln!(out, "character degrees: {:?}", g.degrees)?;
            writeln!(
                out,
                "|G'| = {}, linear characters = {}",
                g.derived_order, g.linear_characters
            )?;
            if let Some(m) = g.nonlinear_degree {
                writeln!(out, "two character degrees: m = {m}")?;
            }
            for r in &result.reports {
                let exact = r
                    .value_exact
                    .as_ref()
                    .map_or_else(|| "-".to_string(), ExactRational::to_string);
                write!(
                    out,
                    "{:<20} exact {:<12} float {:.12}",
                    r.method.tag(),
                    exact,
                    r.value_float
                )?;
                if let (Some(d), Some(o)) = (r.am_diag, r.am_off) {
                    write!(out, "  (diag {d:.12} + off {o:.12})")?;
                }
                writeln!(out)?;
            }
            for r in &result.residuals {
                writeln!(out, "residual {} vs {}: {:.3e}", r.a, r.b, r.residual)?;
            }
            for n in &result.notes {
                writeln!(out, "{n}")?;
            }
            writeln!(
                out,
                "{}",
                if result.passed {
                    "cross-checks: PASS"
                } else {
                    "cross-checks: FAIL"
                }
            )?;
        }
    }
    Ok(if result.passed { EXIT_OK } else { EXIT_NUMERIC })
}

/// One row of `sweep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    pub params: String,
    pub order: Option<usize>,
    pub linear_characters: Option<usize>,
    pub nonlinear_degree: Option<u64>,
    pub exact: Option<ExactRational>,
    pub exact_method: Option<Method>,
    pub float: Option<f64>,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

fn admissible(f: &Family) -> bool {
    match f {
        Family::Affine { q } => *q >= 3 && prime_power(*q).is_some(),
        Family::A2xb { q } => *q >= 5 && q % 2 == 1 && prime_power(*q).is_some(),
        Family::Dihedral { n } => *n >= 3,
        Family::Extraspecial { p, n } => crate::field::is_prime(*p) && *n >= 1,
        Family::Frobenius(s) => {
            let (k, h) = (s.kernel_order(), s.complement_order());
            h >= 2 && k > h && (k - 1) % h == 0
        }
        _ => true,
    }
}

/// Evaluates one sweep instance; failures are recorded in the row.
pub fn sweep_row(family: Family, cap: usize, seed: u64) -> SweepRow {
    let mut row = SweepRow {
        family: family.name().to_string(),
        params: family.params(),
        order: None,
        linear_characters: None,
        nonlinear_degree: None,
        exact: None,
        exact_method: None,
        float: None,
        residual: None,
        error: None,
    };
    let mut attempt = || -> Result<()> {
        let group = family.build(cap)?;
        row.order = Some(group.order());
        let a = analyze(&group, seed)?;
        row.linear_characters = Some(a.linear_count);
        row.nonlinear_degree = a.nonlinear_degree;
        let general = amzl_general(&a.table);
        row.float = Some(general.value_float);
        let exact = match closed_form_for(&family).transpose()? {
            Some((m, v)) => Some((m, v)),
            None => match a.two_degree().transpose()? {
                Some(v) => Some((Method::TwoDegreeEq4, v)),
                None => general.value_exact.clone().map(|v| (Method::GeneralEq2, v)),
            },
        };
        if let Some((m, v)) = exact {
            row.residual = Some((v.to_f64() - general.value_float).abs());
            row.exact_method = Some(m);
            row.exact = Some(v);
        }
        Ok(())
    };
    if let Err(e) = attempt() {
        row.error = Some(e.to_string());
    }
    row
}

fn sweep_families(args: &FamilyArgs, multiplier: Option<u64>) -> Result<Vec<Family>> {
    let name = args
        .family
        .as_deref()
        .ok_or_else(|| Error::Usage("sweep needs --family".into()))?;
    let get = |n: &str, raw: &Option<String>| raw.as_ref().map(|r| parse_param(n, r)).transpose();
    let params = [
        ("n", get("n", &args.n)?),
        ("p", get("p", &args.p)?),
        ("q", get("q", &args.q)?),
        ("h", get("h", &args.h)?),
        ("k", get("k", &args.k)?),
    ];
    let any_range = params
        .iter()
        .any(|(_, v)| v.as_ref().is_some_and(|v| v.from_range));
    // cartesian product in the order n, p, q, h, k; the last varies fastest
    let mut combos: Vec<[Option<u64>; 5]> = vec![[None; 5]];
    for (i, (_, v)) in params.iter().enumerate() {
        if let Some(v) = v {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    v.values.iter().map(move |&x| {
                        let mut c = c;
                        c[i] = Some(x);
                        c
                    })
                })
                .collect();
        }
    }
    let mut out = Vec::new();
    for [n, p, q, h, k] in combos {
        match family_from(name, Scalars { n, p, q, h, k }, &args.orders, multiplier) {
            Ok(f) if any_range && !admissible(&f) => {}
            Ok(f) => out.push(f),
            Err(Error::UnknownFamily(f)) => return Err(Error::UnknownFamily(f)),
            Err(e @ Error::Usage(_)) => return Err(e),
            Err(_) if any_range => {}
            Err(e) => return Err(e),
        }
    }
    if out.is_empty() {
        return Err(Error::Usage(
            "sweep range contains no admissible instance".into(),
        ));
    }
    Ok(out)
}

fn cmd_sweep(args: &FamilyArgs, common: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let families = sweep_families(args, args.multiplier)?;
    let rows: Vec<SweepRow> = families
        .into_iter()
        .map(|f| sweep_row(f, common.order_cap, common.seed))
        .collect();
    match common.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&rows).map_err(std::io::Error::other)?
        )?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "family",
                "params",
                "order",
                "linear_characters",
                "nonlinear_degree",
                "exact",
                "exact_method",
                "float",
                "residual",
                "error",
            ])
            .map_err(csv_err)?;
            for r in &rows {
                w.write_record([
                    r.family.clone(),
                    r.params.clone(),
                    r.order.map_or_else(String::new, |v| v.to_string()),
                    r.linear_characters
                        .map_or_else(String::new, |v| v.to_string()),
                    r.nonlinear_degree
                        .map_or_else(String::new, |v| v.to_string()),
                    r.exact
                        .as_ref()
                        .map_or_else(String::new, ExactRational::to_string),
                    r.exact_method
                        .map_or_else(String::new, |m| m.tag().to_string()),
                    fmt_opt(r.float),
                    fmt_opt(r.residual),
                    r.error.clone().unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "{:<14} {:<12} {:>6} {:>4} {:>4} {:>16} {:>16}",
                "family", "params", "|G|", "|L|", "m", "exact", "float"
            )?;
            for r in &rows {
                if let Some(e) = &r.error {
                    writeln!(out, "{:<14} {:<12} error: {e}", r.family, r.params)?;
                    continue;
                }
                writeln!(
                    out,
                    "{:<14} {:<12} {:>6} {:>4} {:>4} {:>16} {:>16.12}",
                    r.family,
                    r.params,
                    r.order.unwrap_or(0),
                    r.linear_characters.unwrap_or(0),
                    r.nonlinear_degree
                        .map_or_else(|| "-".into(), |m| m.to_string()),
                    r.exact
                        .as_ref()
                        .map_or_else(|| "-".into(), ExactRational::to_string),
                    r.float.unwrap_or(f64::NAN),
                )?;
            }
        }
    }
    let ok = rows
        .iter()
        .all(|r| r.error.is_none() && r.residual.is_none_or(|x| x < common.tolerance));
    Ok(if ok { EXIT_OK } else { EXIT_NUMERIC })
}

fn cmd_verify(args: &VerifyArgs, common: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let only = args
        .only
        .as_ref()
        .map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
    let opts = VerifyOptions {
        seed: common.seed,
        only,
        corrupt_table: args.inject_corruption,
    };
    let outcomes = verify::run(&opts)?;
    match common.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&outcomes).map_err(std::io::Error::other)?
        )?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["check", "passed", "detail"])
                .map_err(csv_err)?;
            for o in &outcomes {
                w.write_record([o.name, if o.passed { "true" } else { "false" }, &o.detail])
                    .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for o in &outcomes {
                writeln!(
                    out,
                    "{} {}: {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                )?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            writeln!(out, "{} checks, {} failed", outcomes.len(), failed)?;
        }
    }
    Ok(if outcomes.iter().all(|o| o.passed) {
        EXIT_OK
    } else {
        EXIT_NUMERIC
    })
}

fn cmd_figure1(common: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let rows = verify::figure1(common.seed)?;
    match common.format {
        Format::Json => {
            let doc = serde_json::json!({ "rows": rows, "note": verify::EVEN_DIHEDRAL_NOTE });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).map_err(std::io::Error::other)?
            )?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "family",
                "condition",
                "order",
                "linear_characters",
                "nonlinear_degree",
                "am_minus_one",
                "minimum",
                "attained_at",
                "general_value",
                "verified",
            ])
            .map_err(csv_err)?;
            for r in &rows {
                w.write_record([
                    r.family.to_string(),
                    r.condition.to_string(),
                    r.order.to_string(),
                    r.linear_characters.to_string(),
                    r.nonlinear_degree.to_string(),
                    r.am_minus_one.to_string(),
                    r.minimum.to_string(),
                    r.attained_at.clone(),
                    format!("{:e}", r.general_value),
                    r.verified.to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "{:<16} {:<16} {:<10} {:<8} {:<8} {:<20} {:>6}  {:<8} check",
                "G", "condition", "|G|", "|L|", "c.d.", "AM - 1", "min", "at"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<16} {:<16} {:<10} {:<8} {:<8} {:<20} {:>6}  {:<8} {}",
                    r.family,
                    r.condition,
                    r.order,
                    r.linear_characters,
                    r.nonlinear_degree,
                    r.am_minus_one,
                    r.minimum.to_string(),
                    r.attained_at,
                    if r.verified { "ok" } else { "MISMATCH" }
                )?;
            }
            writeln!(out, "{}", verify::EVEN_DIHEDRAL_NOTE)?;
        }
    }
    Ok(if rows.iter().all(|r| r.verified) {
        EXIT_OK
    } else {
        EXIT_NUMERIC
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_parsing() {
        assert_eq!(
            parse_param("q", "3..5").unwrap(),
            ParamValues {
                values: vec![3, 4, 5],
                from_range: true
            }
        );
        assert_eq!(
            parse_param("q", "5,7").unwrap(),
            ParamValues {
                values: vec![5, 7],
                from_range: false
            }
        );
        assert!(parse_param("q", "5..3").is_err());
        assert!(parse_param("q", "x").is_err());
    }

    #[test]
    fn ranges_skip_inadmissible_values() {
        let args = FamilyArgs {
            family: Some("affine".into()),
            q: Some("3..13".into()),
            ..Default::default()
        };
        let qs: Vec<String> = sweep_families(&args, None)
            .unwrap()
            .iter()
            .map(Family::params)
            .collect();
        assert_eq!(
            qs,
            ["q=3", "q=4", "q=5", "q=7", "q=8", "q=9", "q=11", "q=13"]
        );
        let args = FamilyArgs {
            family: Some("a2xb".into()),
            q: Some("6".into()),
            ..Default::default()
        };
        assert_eq!(sweep_families(&args, None).unwrap().len(), 1);
    }

    #[test]
    fn method_lists() {
        assert_eq!(parse_methods("all").unwrap(), None);
        assert_eq!(
            parse_methods("general_eq2, direct_norm_eq1").unwrap(),
            Some(vec![Method::GeneralEq2, Method::DirectNormEq1])
        );
        assert!(parse_methods("bogus").is_err());
    }
}
