use std::fmt::Write as _;

use clap::{Args, Subcommand};
use serde::Serialize;
use vvol_core::audit::{run_audit, AuditReport, Suite};
use vvol_core::npoint::KernelEntry;
use vvol_core::volumes::{a_value, asymptotics_report, sv_constant, volume, AsymptoticRow};
use vvol_core::{
    format_rational, two_point_kernel, ATable, Error, MinimalTable, NPointEngine, Partition, PiMultiple, Rational,
    Result, StratumKey, Volume,
};

use crate::cache::{load_or_build, write_atomic};
use crate::config::{parse_profile, CommonArgs, Config, Format};

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the minimal strata and print the table of a-values.
    Minimal(MinimalArgs),
    /// Print a(μ, ρ) and the volume of the stratum.
    Value(StratumArgs),
    /// Print only the volume of the stratum.
    Volume(StratumArgs),
    /// Dump coefficients of the two-point kernel.
    Kernel(KernelArgs),
    /// Siegel-Veech ratio Vol(μ,(2)) / (4π²·Vol(μ,())).
    Sv(SvArgs),
    /// Large-genus report for μ = (k).
    Asympt(AsymptArgs),
    /// Run the consistency audit; exit status 2 on failure.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
pub struct MinimalArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct StratumArgs {
    /// Zero profile (k₁,…,k_n), e.g. `3` or `2,2`.
    #[arg(long, value_parser = parse_profile)]
    pub mu: Partition,
    /// Residue profile, e.g. `2,3`; empty by default.
    #[arg(long, value_parser = parse_profile, default_value = "")]
    pub rho: Partition,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long, default_value_t = 6)]
    pub d1: u32,
    #[arg(long, default_value_t = 6)]
    pub d2: u32,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct SvArgs {
    #[arg(long, value_parser = parse_profile)]
    pub mu: Partition,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct AsymptArgs {
    #[arg(long, value_parser = parse_profile, default_value = "")]
    pub rho: Partition,
    /// Largest k reported [default: max-k].
    #[arg(long)]
    pub k_max: Option<u32>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Restrict to these suites (repeatable).
    #[arg(long, value_parser = parse_suite)]
    pub suite: Vec<Suite>,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    Suite::parse(s).map_err(|e| e.to_string())
}

/// Rendered output plus whether the command's own checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Minimal(a) => &a.common,
            Command::Value(a) | Command::Volume(a) => &a.common,
            Command::Kernel(a) => &a.common,
            Command::Sv(a) => &a.common,
            Command::Asympt(a) => &a.common,
            Command::Check(a) => &a.common,
        }
    }

    /// Runs the command and writes its output to `--out` or stdout.
    pub fn run(&self) -> Result<bool> {
        let cfg = self.common().resolve()?;
        let outcome = match self {
            Command::Minimal(_) => cmd_minimal(&cfg)?,
            Command::Value(a) => cmd_value(&cfg, &a.mu, &a.rho, true)?,
            Command::Volume(a) => cmd_value(&cfg, &a.mu, &a.rho, false)?,
            Command::Kernel(a) => cmd_kernel(&cfg, a.d1, a.d2)?,
            Command::Sv(a) => cmd_sv(&cfg, &a.mu)?,
            Command::Asympt(a) => cmd_asympt(&cfg, &a.rho, a.k_max)?,
            Command::Check(a) => cmd_check(&cfg, &a.suite)?,
        };
        match &cfg.out {
            Some(path) => write_atomic(path, &outcome.text)?,
            None => print!("{}", outcome.text),
        }
        Ok(outcome.passed)
    }
}

fn table(cfg: &Config) -> Result<MinimalTable> {
    load_or_build(cfg.caps, cfg.cache.as_deref())
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn parts(p: &Partition) -> String {
    p.parts().iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
}

fn show(v: &PiMultiple, digits: Option<usize>) -> String {
    match digits {
        Some(d) => format!("{v} ≈ {}", v.decimal(d)),
        None => v.to_string(),
    }
}

fn show_volume(v: &Volume, digits: Option<usize>) -> String {
    match v {
        Volume::Value(v) => show(v, digits),
        Volume::Empty => v.to_string(),
    }
}

pub fn cmd_minimal(cfg: &Config) -> Result<Outcome> {
    let table = table(cfg)?;
    let atable = ATable::from_minimal(&table);
    let text = match cfg.format {
        Format::Json => atable.to_json(),
        Format::Csv => csv(
            &["mu", "rho", "value"],
            atable.iter().map(|(k, v)| vec![parts(&k.mu), parts(&k.rho), format_rational(v)]),
        )?,
        Format::Text => {
            let mut s = String::new();
            for (i, p) in table.polys().iter().enumerate() {
                let _ = writeln!(s, "a(({})) = {p}", i + 1);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct ValueReport {
    mu: Partition,
    rho: Partition,
    genus: Option<u32>,
    #[serde(with = "vvol_core::algebra::rational::serde_str")]
    a: Rational,
    volume: Option<PiMultiple>,
    empty: bool,
}

pub fn cmd_value(cfg: &Config, mu: &Partition, rho: &Partition, with_a: bool) -> Result<Outcome> {
    let key = StratumKey { mu: mu.clone(), rho: rho.clone() };
    if mu.is_empty() {
        return Err(Error::Domain("zero profile must have at least one part".into()));
    }
    let (a, vol) = if key.is_empty_stratum() {
        (Rational::default(), Volume::Empty)
    } else {
        let table = table(cfg)?;
        let a = a_value(&key, &NPointEngine::new(cfg.one_point), &table)?;
        let vol = volume(&key, &a)?;
        (a, vol)
    };
    let value = match &vol {
        Volume::Value(v) => Some(v.clone()),
        Volume::Empty => None,
    };
    let text = match cfg.format {
        Format::Json => json(&ValueReport {
            mu: key.mu.clone(),
            rho: key.rho.clone(),
            genus: key.genus(),
            a: a.clone(),
            empty: value.is_none(),
            volume: value,
        })?,
        Format::Csv => {
            let (coeff, power) = match &value {
                Some(v) => (format_rational(&v.coeff), v.pi_power.to_string()),
                None => ("0".into(), String::new()),
            };
            csv(
                &["mu", "rho", "a", "vol_coeff", "pi_power"],
                [vec![parts(&key.mu), parts(&key.rho), format_rational(&a), coeff, power]],
            )?
        }
        Format::Text => match (&vol, with_a) {
            (Volume::Empty, _) => format!("{vol}\n"),
            (Volume::Value(_), true) => {
                format!("a = {}, Vol = {}\n", format_rational(&a), show_volume(&vol, cfg.digits))
            }
            (Volume::Value(_), false) => format!("Vol = {}\n", show_volume(&vol, cfg.digits)),
        },
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_kernel(cfg: &Config, d1: u32, d2: u32) -> Result<Outcome> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::Config("kernel caps must be at least 1".into()));
    }
    if d1 > 24 || d2 > 24 {
        return Err(Error::Config("kernel caps above 24 are not supported".into()));
    }
    let entries: Vec<KernelEntry> = two_point_kernel(d1, d2).dump();
    let text = match cfg.format {
        Format::Json => json(&entries)?,
        Format::Csv => csv(
            &["k1", "k2", "profile", "coeff"],
            entries.iter().flat_map(|e| {
                e.coeff.iter().map(move |t| {
                    vec![e.k1.to_string(), e.k2.to_string(), parts(&t.profile), format_rational(&t.coeff)]
                })
            }),
        )?,
        Format::Text => {
            let kernel = two_point_kernel(d1, d2);
            let mut s = String::new();
            for e in &entries {
                let _ = writeln!(s, "[z1^{} z2^{}] {}", e.k1, e.k2, kernel.coeff(e.k1, e.k2)?);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_sv(cfg: &Config, mu: &Partition) -> Result<Outcome> {
    let table = table(cfg)?;
    let c0 = sv_constant(mu.parts(), &NPointEngine::new(cfg.one_point), &table)?;
    let text = match cfg.format {
        Format::Json => json(&serde_json::json!({ "mu": mu, "c0": c0 }))?,
        Format::Csv => {
            csv(&["mu", "coeff", "pi_power"], [vec![parts(mu), format_rational(&c0.coeff), c0.pi_power.to_string()]])?
        }
        Format::Text => format!("c0 = {}\n", show(&c0, cfg.digits)),
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_asympt(cfg: &Config, rho: &Partition, k_max: Option<u32>) -> Result<Outcome> {
    let table = table(cfg)?;
    let k_max = k_max.unwrap_or(cfg.caps.max_k);
    let rows: Vec<AsymptoticRow> = asymptotics_report(rho, k_max, &table)?;
    let digits = cfg.digits.unwrap_or(12);
    let text = match cfg.format {
        Format::Json => json(&serde_json::json!({ "rho": rho, "rows": rows }))?,
        Format::Csv => csv(
            &["k", "genus", "vol_coeff", "pi_power", "normalized"],
            rows.iter().map(|r| {
                vec![
                    r.k.to_string(),
                    r.genus.to_string(),
                    format_rational(&r.volume.coeff),
                    r.volume.pi_power.to_string(),
                    format!("{:.*}", digits, r.normalized),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = format!("# rho = {rho}; last column (2g)^-|rho| * Vol * k / 4\n");
            for r in &rows {
                let _ =
                    writeln!(s, "{:>3} {:>3}  {:<40} {:.*}", r.k, r.genus, r.volume.to_string(), digits, r.normalized);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn render_report(r: &AuditReport) -> String {
    let mut s = format!("status: {}\n", r.status);
    let _ = writeln!(s, "caps: max_k = {}, max_weight = {}", r.caps.max_k, r.caps.max_weight);
    let _ = writeln!(s, "one-point convention: {}", r.convention.name());
    for suite in &r.suites {
        let verdict = if suite.passed { "pass" } else { "FAIL" };
        let _ = writeln!(s, "\n[{}] {verdict} ({} checks)", suite.suite.name(), suite.checks);
        for n in &suite.notes {
            let _ = writeln!(s, "  - {n}");
        }
        for f in &suite.failures {
            let _ = writeln!(s, "  ! {f}");
        }
    }
    let _ = writeln!(s, "\nerrata:");
    for e in &r.errata {
        let _ = writeln!(
            s,
            "  {}\n    stated:      {}\n    implemented: {}\n    evidence:    {}",
            e.id, e.stated, e.implemented, e.evidence
        );
    }
    let _ = writeln!(s, "\npredictions:");
    for p in &r.predictions {
        let _ = writeln!(s, "  μ={} ρ={}: {} [{}]", p.mu, p.rho, p.volume, p.flag);
    }
    s
}

pub fn cmd_check(cfg: &Config, suites: &[Suite]) -> Result<Outcome> {
    let table = table(cfg)?;
    let report = run_audit(&table, suites)?;
    let text = match cfg.format {
        Format::Json => json(&report)?,
        Format::Csv => csv(
            &["suite", "passed", "checks", "failures"],
            report.suites.iter().map(|s| {
                vec![s.suite.name().to_string(), s.passed.to_string(), s.checks.to_string(), s.failures.join("; ")]
            }),
        )?,
        Format::Text => render_report(&report),
    };
    Ok(Outcome { text, passed: report.passed() })
}
