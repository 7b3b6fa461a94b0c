//! Batch front end. Every subcommand prints a `key: value` report on stdout.
//!
//! Exit status: 0 on success, 1 when a required hypothesis fails (or a check
//! in a report fails), 2 on unreadable or malformed input and internal
//! errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::canonicalize;
use crate::components::{check_transitive_components, split, WreathSubgroup};
use crate::error::{Error, Result};
use crate::normalize::{embed_in_wreath, normalizing_element, CertificateFailure};
use crate::perm::GenGroup;
use crate::textio::{parse_code, parse_group};
use crate::wreath::{
    constant_point, enumerate_full, random_element, stabilizer_order_oracle, PiPoint, WreathContext,
};

pub const CAP_ENV: &str = "WREATHKIT_CAP";
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "wreathkit",
    version,
    about = "Subgroups of wreath products in product action"
)]
pub struct Cli {
    /// Upper bound on elements enumerated by oracle checks.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
    pub cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coordinate orbits and per-coordinate components.
    Components {
        #[arg(long)]
        group: PathBuf,
    },
    /// Conjugate by a base element so components are constant on orbits.
    Normalize {
        #[arg(long)]
        group: PathBuf,
        /// Point of Π the conjugating element must fix, e.g. `0,0,1`.
        #[arg(long)]
        fix: Option<String>,
    },
    /// Embed a coordinate-transitive group into G wr H.
    Embed {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 0)]
        delta1: usize,
        #[arg(long)]
        fix: Option<String>,
    },
    /// Split along an invariant set of coordinates.
    Split {
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated coordinates, e.g. `0,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        delta0: Vec<usize>,
    },
    /// Canonicalize a code under a supplied automorphism group.
    CodeCanon {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        gamma: usize,
        #[arg(long)]
        nu: usize,
    },
    /// Oracle checks on the full wreath product for one (q, m).
    Verify {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            ok: true,
        }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        writeln!(self.text, "{key}: {value}").expect("write to string");
    }

    fn check(&mut self, key: &str, passed: bool) {
        self.ok &= passed;
        self.line(key, pass(passed));
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.to_string();
            return if e.use_stderr() {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    status,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            status: if report.ok { 0 } else { 1 },
            stdout: report.text,
            stderr: String::new(),
        },
        Err(Error::Hypothesis(h)) => Outcome {
            status: 1,
            stdout: format!("status: hypothesis-violated\nreason: {h}\n"),
            stderr: format!("hypothesis violated: {h}\n"),
        },
        Err(e) => Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<WreathSubgroup> {
    let (ctx, gens) = parse_group(&read(path)?)?;
    WreathSubgroup::new(ctx, gens)
}

fn parse_point(ctx: &WreathContext, s: &str) -> Result<PiPoint> {
    let p: PiPoint = s.parse()?;
    ctx.check_point(&p)?;
    Ok(p)
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Components { group } => components_report(&load_group(group)?),
        Command::Normalize { group, fix } => {
            let x = load_group(group)?;
            let phi = fix
                .as_deref()
                .map(|s| parse_point(x.context(), s))
                .transpose()?;
            normalize_report(&x, phi.as_ref())
        }
        Command::Embed { group, delta1, fix } => {
            let x = load_group(group)?;
            let phi = fix
                .as_deref()
                .map(|s| parse_point(x.context(), s))
                .transpose()?;
            embed_report(&x, *delta1, phi.as_ref())
        }
        Command::Split { group, delta0 } => split_report(&load_group(group)?, delta0, cli.cap),
        Command::CodeCanon {
            code,
            group,
            gamma,
            nu,
        } => {
            let c = parse_code(&read(code)?)?;
            let x = load_group(group)?;
            code_report(&c, &x, *gamma, *nu)
        }
        Command::Verify {
            q,
            m,
            samples,
            seed,
        } => verify_report(*q, *m, *samples, *seed, cli.cap),
    }
}

fn group_summary(g: &GenGroup) -> String {
    format!("order={} {}", g.order(), g)
}

fn orbits_text(orbits: &[Vec<usize>]) -> String {
    orbits
        .iter()
        .map(|o| format!("{{{}}}", o.iter().join(",")))
        .join(" ")
}

fn header(r: &mut Report, x: &WreathSubgroup) {
    r.line("q", x.context().q());
    r.line("m", x.context().m());
    r.line("generators", x.generators().len());
    r.line("delta_orbits", orbits_text(x.delta_orbits()));
    r.line("representatives", x.representatives().iter().join(","));
}

fn components_report(x: &WreathSubgroup) -> Result<Report> {
    let mut r = Report::new();
    header(&mut r, x);
    r.line("induced_group", group_summary(x.induced_group()));
    for delta in 0..x.context().m() {
        let c = x.component(delta)?;
        r.line(
            &format!("component[{delta}]"),
            format!("{} transitivity={}", group_summary(c), c.transitivity()),
        );
    }
    Ok(r)
}

fn normalize_report(x: &WreathSubgroup, phi: Option<&PiPoint>) -> Result<Report> {
    let res = normalizing_element(x, phi)?;
    let mut r = Report::new();
    header(&mut r, x);
    r.line("fix", phi.map_or("none".to_string(), ToString::to_string));
    r.line("x", &res.x);
    for (k, g) in res.conjugated.generators().iter().enumerate() {
        r.line(&format!("conjugated[{k}]"), g);
    }
    for (rep, comp) in res.representatives().iter().zip(&res.common_components) {
        r.line(&format!("common_component[{rep}]"), group_summary(comp));
    }
    let cert = &res.certificate;
    r.line("certificate.x_in_base", cert.x_in_base);
    r.line("certificate.components_constant", cert.components_constant);
    r.line(
        "certificate.delta_orbits_preserved",
        cert.delta_orbits_preserved,
    );
    r.line(
        "certificate.fixes_point",
        cert.fixes_point
            .map_or("n/a".to_string(), |b| b.to_string()),
    );
    r.check("certificate", cert.passed());
    Ok(r)
}

fn failure_text(f: &CertificateFailure) -> String {
    match f.coordinate {
        Some(d) => format!("generator {} base entry at {d} not in G", f.generator),
        None => format!("generator {} top not in H", f.generator),
    }
}

fn embed_report(x: &WreathSubgroup, delta1: usize, phi: Option<&PiPoint>) -> Result<Report> {
    let e = embed_in_wreath(x, delta1, phi)?;
    let mut r = Report::new();
    header(&mut r, x);
    r.line("delta1", delta1);
    r.line("fix", phi.map_or("none".to_string(), ToString::to_string));
    r.line("G", group_summary(&e.g));
    r.line("H", group_summary(&e.h));
    r.line("x", e.x());
    for (k, g) in e.conjugated().generators().iter().enumerate() {
        r.line(&format!("conjugated[{k}]"), g);
    }
    for f in &e.failures {
        r.line("failure", failure_text(f));
    }
    r.line(
        "certificate.fixes_point",
        e.normalization
            .certificate
            .fixes_point
            .map_or("n/a".to_string(), |b| b.to_string()),
    );
    r.check("certificate", e.passed());
    Ok(r)
}

fn split_report(x: &WreathSubgroup, delta0: &[usize], cap: usize) -> Result<Report> {
    let sp = split(x, delta0, cap)?;
    let rep = &sp.report;
    let mut r = Report::new();
    header(&mut r, x);
    r.line("group_order", rep.group_order);
    for (name, part, sub) in [("0", &rep.delta0, &sp.part0), ("1", &rep.delta1, &sp.part1)] {
        r.line(
            &format!("renumber{name}"),
            part.iter()
                .enumerate()
                .map(|(j, d)| format!("{d}->{j}"))
                .join(" "),
        );
        for (k, g) in sub.generators().iter().enumerate() {
            r.line(&format!("X{name}[{k}]"), g);
        }
        for (j, &d) in part.iter().enumerate() {
            let elems = sub.component(j)?.enumerate(cap)?;
            r.line(
                &format!("component[{d}]"),
                format!("{{{}}}", elems.iter().join(" ")),
            );
        }
    }
    r.line("report.bijective", rep.bijective);
    r.line("report.injective", rep.injective);
    r.line("report.homomorphism", rep.homomorphism);
    r.line("report.equivariant", rep.equivariant);
    r.line("report.components_preserved", rep.components_preserved);
    r.check("certificate", rep.passed());
    Ok(r)
}

fn code_report(
    code: &crate::codes::Code,
    x: &WreathSubgroup,
    gamma: usize,
    nu: usize,
) -> Result<Report> {
    let res = canonicalize(code, x, gamma, nu)?;
    let mut r = Report::new();
    header(&mut r, x);
    r.line("words", code.len());
    r.line("min_distance", res.distance);
    r.line(
        "pair",
        format!("{} | {}", res.source_pair.0, res.source_pair.1),
    );
    r.line("x1", &res.x1);
    r.line("x2", &res.x2);
    r.line("x3", &res.x3);
    r.line("x4", &res.x4);
    r.line("x", &res.x);
    r.line("G", group_summary(&res.g));
    r.line("K", group_summary(&res.k));
    r.line("pinned", format!("{} | {}", res.pinned.0, res.pinned.1));
    for w in res.code.words() {
        r.line("word", w);
    }
    r.line("min_distance_after", res.code.min_distance()?);
    for f in &res.failures {
        r.line("failure", failure_text(f));
    }
    r.line("certificate.components_equal_g", res.components_equal_g);
    r.line(
        "certificate.automorphisms_transported",
        res.automorphisms_transported,
    );
    r.check("certificate", res.passed());
    Ok(r)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn verify_report(q: usize, m: usize, samples: usize, seed: u64, cap: usize) -> Result<Report> {
    let ctx = WreathContext::new(q, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new();
    r.line("q", q);
    r.line("m", m);
    r.line("seed", seed);

    let points = ctx.points(cap)?;
    let mut failures = 0usize;
    for _ in 0..samples {
        let a = random_element(&ctx, &mut rng);
        let b = random_element(&ctx, &mut rng);
        let ab = a.multiply(&b)?;
        for p in &points {
            if ab.apply_point(p)? != b.apply_point(&a.apply_point(p)?)? {
                failures += 1;
            }
        }
    }
    r.line("action.samples", samples);
    r.line("action.failures", failures);
    r.check("action", failures == 0);

    let small = ctx.wreath_order().is_some_and(|n| n <= cap as u128);
    if small {
        let all = enumerate_full(&ctx, cap)?;
        let fixers = all
            .iter()
            .filter(|w| {
                points
                    .iter()
                    .all(|p| &w.apply_point(p).expect("same context") == p)
            })
            .count();
        r.line("faithful.identity_only", fixers == 1);
        r.check("faithful", fixers == 1);
        let expected = factorial(q - 1).pow(m as u32) * factorial(m);
        for gamma in 0..q {
            let count = stabilizer_order_oracle(&ctx, &constant_point(&ctx, gamma)?, cap)?;
            r.line(
                &format!("stabilizer[{gamma}]"),
                format!("{count} expected {expected}"),
            );
            r.check(&format!("stabilizer[{gamma}].check"), count == expected);
        }
    } else {
        r.line("faithful", "skipped (wreath product exceeds cap)");
        r.line("stabilizer", "skipped (wreath product exceeds cap)");
    }

    let mut transitive = 0usize;
    let mut violations = 0usize;
    for _ in 0..samples {
        let count = rng.gen_range(1..=2);
        let gens = (0..count).map(|_| random_element(&ctx, &mut rng)).collect();
        let x = WreathSubgroup::new(ctx, gens)?;
        let report = check_transitive_components(&x, cap)?;
        transitive += usize::from(report.hypothesis_holds());
        violations += usize::from(report.violation());
    }
    r.line("transitive_components.samples", samples);
    r.line("transitive_components.transitive_on_pi", transitive);
    r.line("transitive_components.violations", violations);
    r.check("transitive_components", violations == 0);
    r.line("verdict", pass(r.ok));
    Ok(r)
}
