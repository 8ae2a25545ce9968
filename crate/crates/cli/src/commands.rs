use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::json;
use vpal_core::indicator::{analyze, AnalysisReport};
use vpal_core::oracle::{search_with, verify, SearchConfig, SearchHit, Verdict};
use vpal_core::spectrum::{
    combination_spectrum, expansion_period, indicator_spectrum, naive_fundamental_period, samples_to_spectrum,
    support_period, DivisorSpectrum, PeriodicSamples, MAX_EXPLICIT_ROOTS,
};
use vpal_core::{Budget, DigitNumber, Error};

use crate::render::{analysis, table};
use crate::{status, Cli, Command, Format, SpectrumCommand};

/// The bases listed in the reference table of indicator functions.
pub const REFERENCE_TABLE: [u64; 18] = [13, 17, 18, 19, 26, 37, 39, 48, 49, 56, 79, 103, 107, 109, 113, 117, 119, 122];

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Core(Error),
    Io(io::Error),
    Output(String),
}

impl CliError {
    /// The reader went away (e.g. output piped into `head`).
    pub fn is_broken_pipe(&self) -> bool {
        match self {
            CliError::Io(e) => e.kind() == io::ErrorKind::BrokenPipe,
            _ => false,
        }
    }

    pub fn status(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Core(Error::InvalidInput { .. }) => status::INVALID_INPUT,
            CliError::Core(Error::BudgetExceeded { .. }) => status::UNVERIFIED,
            _ => status::DISAGREEMENT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(s) | CliError::Output(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                return CliError::Io(io);
            }
            unreachable!()
        }
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

type CliResult = Result<u8, CliError>;

macro_rules! out {
    ($($t:tt)*) => { write!(io::stdout(), $($t)*)? };
}

macro_rules! outln {
    ($($t:tt)*) => { writeln!(io::stdout(), $($t)*)? };
}

fn parse_n(s: &str) -> Result<BigUint, CliError> {
    DigitNumber::from_str(s).map(DigitNumber::into_value).map_err(|e| CliError::Invalid(e.to_string()))
}

fn csv_out(headers: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(headers)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(cli: &Cli) -> CliResult {
    let budget = cli.budget.map(Budget::new).unwrap_or_default();
    match &cli.command {
        Command::Analyze { n, json } => {
            let format = if *json { Format::Json } else { cli.format };
            cmd_analyze(&parse_n(n)?, format, budget)
        }
        Command::Verify { n, kmax, strict, mode } => {
            cmd_verify(&parse_n(n)?, *kmax, *strict, (*mode).into(), cli.format, budget)
        }
        Command::Table { preset, numbers } => {
            let ns: Vec<BigUint> = if preset.is_some() || numbers.is_empty() {
                REFERENCE_TABLE.iter().map(|&n| BigUint::from(n)).collect()
            } else {
                numbers.iter().map(|s| parse_n(s)).collect::<Result<_, _>>()?
            };
            cmd_table(&ns, cli.format, budget)
        }
        Command::Search { property, until, workers, first } => {
            let config = SearchConfig { workers: *workers as usize, first_only: *first, budget };
            cmd_search((*property).into(), *until, config, cli.format)
        }
        Command::Spectrum(sub) => match sub {
            SpectrumCommand::Periods { samples } => cmd_periods(samples, cli.format),
            SpectrumCommand::OfIndicator { n } => cmd_of_indicator(&parse_n(n)?, cli.format, budget),
            SpectrumCommand::Indicator { a } => cmd_indicator(*a, cli.format),
        },
    }
}

fn summary_row(r: &AnalysisReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.indicator.to_string(),
        r.order.to_string(),
        r.omega0.to_string(),
        r.omega_f.to_string(),
        r.omega_b.to_string(),
    ]
}

const SUMMARY_HEADERS: [&str; 6] = ["n", "indicator", "c", "omega0", "omega_f", "omega_b"];

fn cmd_analyze(n: &BigUint, format: Format, budget: Budget) -> CliResult {
    let report = analyze(n, budget)?;
    match format {
        Format::Pretty => out!("{}", analysis(&report)),
        Format::Json => outln!("{}", serde_json::to_string_pretty(&report.to_json())?),
        Format::Csv => csv_out(&SUMMARY_HEADERS, [summary_row(&report)])?,
    }
    Ok(status::OK)
}

fn cmd_verify(
    n: &BigUint,
    kmax: u64,
    strict: bool,
    mode: vpal_core::oracle::BruteForceMode,
    format: Format,
    budget: Budget,
) -> CliResult {
    if kmax == 0 {
        return Err(CliError::Invalid("--kmax must be at least 1".into()));
    }
    let v = verify(n, kmax, mode, budget)?;
    let agrees = |a: Option<bool>| match a {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "skipped",
    };
    let rows = v
        .rows
        .iter()
        .map(|r| vec![r.k.to_string(), r.predicted.to_string(), r.observed.to_string(), agrees(r.agrees).to_string()]);
    match format {
        Format::Pretty => {
            outln!("n = {}, I = {}", v.report.n, v.report.indicator);
            out!("{}", table(&["k", "predicted", "observed", "agrees"], &rows.collect::<Vec<_>>()));
            outln!(
                "summary: {} rows, {} agree, {} disagree, {} unverified",
                v.rows.len(),
                v.summary.agree,
                v.summary.disagree,
                v.summary.unverified
            );
        }
        Format::Json => {
            let mut out = io::stdout().lock();
            for r in &v.rows {
                let observed = match r.observed {
                    Verdict::Unverified => json!("UNVERIFIED"),
                    o => json!(o.as_bool()),
                };
                let line = json!({
                    "agrees": r.agrees.map_or(json!("SKIPPED"), |a| json!(a)),
                    "k": r.k.to_string(),
                    "n": v.report.n.to_string(),
                    "observed": observed,
                    "predicted": r.predicted,
                });
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => csv_out(&["k", "predicted", "observed", "agrees"], rows)?,
    }
    Ok(if v.summary.disagree > 0 {
        status::DISAGREEMENT
    } else if strict && v.summary.unverified > 0 {
        status::UNVERIFIED
    } else {
        status::OK
    })
}

fn cmd_table(ns: &[BigUint], format: Format, budget: Budget) -> CliResult {
    let reports = ns.iter().map(|n| analyze(n, budget)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| vec![r.n.to_string(), r.indicator.to_string(), r.order.to_string(), r.omega0.to_string()])
        .collect();
    let headers = ["n", "indicator", "c", "omega0"];
    match format {
        Format::Pretty => {
            out!("{}", table(&headers, &rows));
            if reports.iter().any(|r| r.n.value() == &BigUint::from(117u32)) {
                outln!("note: 117 has the single modulus 2054, so omega0 = 2054.");
            }
        }
        Format::Json => {
            let mut out = io::stdout().lock();
            for r in &reports {
                let line = json!({
                    "c": r.order.to_string(),
                    "indicator": r.indicator.to_string(),
                    "n": r.n.to_string(),
                    "omega0": r.omega0.to_string(),
                });
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => csv_out(&headers, rows)?,
    }
    Ok(status::OK)
}

fn hit_json(hit: &SearchHit) -> serde_json::Value {
    let r = &hit.report;
    json!({
        "c": r.order.to_string(),
        "indicator": r.indicator.to_string(),
        "n": hit.n.to_string(),
        "omega0": r.omega0.to_string(),
        "omega_b": r.omega_b.to_string(),
        "omega_f": r.omega_f.to_string(),
        "property": hit.property.name(),
        "terms": r.indicator.len().to_string(),
        "witness": hit.witness.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
    })
}

fn cmd_search(
    property: vpal_core::oracle::SearchProperty,
    until: u64,
    config: SearchConfig,
    format: Format,
) -> CliResult {
    if until < 2 {
        return Err(CliError::Invalid("--until must be at least 2".into()));
    }
    let headers = ["n", "property", "indicator", "terms", "omega0", "omega_f", "omega_b", "witness"];
    let mut writer = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(headers)?;
            w.flush()?;
            Some(w)
        }
        _ => None,
    };
    let mut failure: Option<CliError> = None;
    let hits = search_with(until, property, config, |hit| {
        let r = &hit.report;
        let witness = hit.witness.as_ref().map(|(a, b)| format!("{a} does not divide {b}"));
        let result: Result<(), CliError> = match format {
            Format::Pretty => {
                let mut out = io::stdout().lock();
                writeln!(
                    out,
                    "{}  I = {}  omega0 = {}  omega_f = {}  omega_b = {}",
                    hit.n, r.indicator, r.omega0, r.omega_f, r.omega_b
                )
                .and_then(|_| match &witness {
                    Some(w) => writeln!(out, "    {} terms; {w}", r.indicator.len()),
                    None => Ok(()),
                })
                .map_err(CliError::from)
            }
            Format::Json => writeln!(io::stdout(), "{}", hit_json(hit)).map_err(CliError::from),
            Format::Csv => {
                let w = writer.as_mut().expect("csv writer");
                let row = vec![
                    hit.n.to_string(),
                    hit.property.name().to_string(),
                    r.indicator.to_string(),
                    r.indicator.len().to_string(),
                    r.omega0.to_string(),
                    r.omega_f.to_string(),
                    r.omega_b.to_string(),
                    witness.unwrap_or_default(),
                ];
                w.write_record(&row).and_then(|_| w.flush().map_err(csv::Error::from)).map_err(CliError::from)
            }
        };
        if let Err(e) = result {
            failure.get_or_insert(e);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if format == Format::Pretty {
        outln!("{} hit(s) for {} up to {}", hits.len(), property, until);
    }
    Ok(status::OK)
}

fn parse_samples(s: &str) -> Result<PeriodicSamples, CliError> {
    let values = s
        .split(',')
        .map(|t| Complex64::from_str(t.trim()).map_err(|_| CliError::Invalid(format!("malformed sample {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    PeriodicSamples::new(values).map_err(|e| CliError::Invalid(e.to_string()))
}

fn complex(c: &Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(c.re), clean(c.im));
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{:+}i", im)
    }
}

fn cmd_periods(samples: &str, format: Format) -> CliResult {
    let s = parse_samples(samples)?;
    let g = samples_to_spectrum(&s);
    let periods = [
        ("support_period", support_period(&g)),
        ("expansion_period", expansion_period(&s)),
        ("naive_period", naive_fundamental_period(&s)),
    ];
    let coefficients: Vec<Vec<String>> = g.iter().map(|(r, c)| vec![r.to_string(), complex(c)]).collect();
    match format {
        Format::Pretty => {
            outln!("omega = {}", s.period());
            out!("{}", table(&["root", "coefficient"], &coefficients));
            for (name, p) in periods {
                outln!("{name} = {p}");
            }
        }
        Format::Json => {
            let line = json!({
                "coefficients": g.iter().map(|(r, c)| json!({"im": c.im, "re": c.re, "root": r.to_string()})).collect::<Vec<_>>(),
                "naive_period": periods[2].1.to_string(),
                "omega": s.period().to_string(),
                "support_period": periods[0].1.to_string(),
                "expansion_period": periods[1].1.to_string(),
            });
            outln!("{line}");
        }
        Format::Csv => csv_out(&["root", "coefficient"], coefficients)?,
    }
    Ok(status::OK)
}

fn cmd_of_indicator(n: &BigUint, format: Format, budget: Budget) -> CliResult {
    let report = analyze(n, budget)?;
    let exact = DivisorSpectrum::from_combination(&report.indicator, budget)?;
    let rows: Vec<Vec<String>> =
        exact.orders().map(|d| vec![d.to_string(), exact.coefficient(d).to_string()]).collect();
    let explicit = match report.omega0.to_u64() {
        Some(w) if w <= MAX_EXPLICIT_ROOTS => {
            let g = combination_spectrum(&report.indicator)?;
            Some((g.len(), support_period(&g)))
        }
        _ => None,
    };
    match format {
        Format::Pretty => {
            outln!("n = {}, I = {}", report.n, report.indicator);
            outln!("coefficient of each primitive d-th root of unity:");
            out!("{}", table(&["d", "coefficient"], &rows));
            outln!("support period = {}", exact.support_period());
            if let Some((roots, period)) = explicit {
                outln!("explicit roots = {roots}, explicit support period = {period}");
            }
            outln!("omega0 = {}", report.omega0);
        }
        Format::Json => {
            let line = json!({
                "coefficients": rows.iter().map(|r| json!({"coefficient": r[1], "d": r[0]})).collect::<Vec<_>>(),
                "indicator": report.indicator.to_string(),
                "n": report.n.to_string(),
                "omega0": report.omega0.to_string(),
                "support_period": exact.support_period().to_string(),
            });
            outln!("{line}");
        }
        Format::Csv => csv_out(&["d", "coefficient"], rows)?,
    }
    Ok(status::OK)
}

fn cmd_indicator(a: u64, format: Format) -> CliResult {
    if a == 0 {
        return Err(CliError::Invalid("the modulus must be positive".into()));
    }
    let g = indicator_spectrum(a);
    let coef = format!("1/{a}");
    let rows: Vec<Vec<String>> = g.iter().map(|(r, _)| vec![r.to_string(), coef.clone()]).collect();
    match format {
        Format::Pretty => {
            outln!("I_{a}: {} roots, each with coefficient {coef}", g.len());
            out!("{}", table(&["root", "coefficient"], &rows));
            outln!("support period = {}", support_period(&g));
        }
        Format::Json => {
            let line = json!({
                "a": a.to_string(),
                "coefficient": coef,
                "roots": g.iter().map(|(r, _)| r.to_string()).collect::<Vec<_>>(),
                "support_period": support_period(&g).to_string(),
            });
            outln!("{line}");
        }
        Format::Csv => csv_out(&["root", "coefficient"], rows)?,
    }
    Ok(status::OK)
}
