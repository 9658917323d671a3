//! The `hullcraft` command line.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::code::{is_mds, min_distance, LinearCode, DEFAULT_BUDGET};
use crate::eaqec::{enumerate_pairs, family_records, sort_records, DiscoveryRecord, Family};
use crate::error::{Error, Result};
use crate::field::{build_tower, prime_factors, Elt, Field, FieldTower};
use crate::par;
use crate::rs::FamilySpec;
use crate::twisted::TwistSpec;
use crate::verify::{parse_suites, run_suite, Scope};

/// A single value `a` or an inclusive range `a:b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span(pub RangeInclusive<usize>);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        match s.split_once(':') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {s}"));
                }
                Ok(Span(a..=b))
            }
            None => {
                let a = num(s)?;
                Ok(Span(a..=a))
            }
        }
    }
}

impl Span {
    fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }
}

fn within(span: &Option<Span>, x: usize) -> bool {
    span.as_ref().is_none_or(|s| s.contains(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Subgroup,
    Coset,
    Punctured,
    Twisted,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "hullcraft",
    version,
    about = "Hermitian hulls of Reed-Solomon families and MDS EAQEC parameters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit EAQEC records for a family, or for every (n, d) when no family is given.
    Enumerate(EnumerateArgs),
    /// Check claimed hull bounds against the exact oracles.
    Verify(VerifyArgs),
    /// Minimum distance of a code stored in the text format.
    Mindist(MindistArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Size of the base field GF(q); codes live over GF(q²).
    #[arg(long)]
    pub q: u32,
    /// Work limit for exhaustive searches.
    #[arg(long, env = "HULLCRAFT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub n: Option<Span>,
    #[arg(long)]
    pub k: Option<Span>,
    #[arg(long)]
    pub d: Option<Span>,
    /// Punctured positions.
    #[arg(long)]
    pub t: Option<Span>,
    /// Twist coefficients as element encodings.
    #[arg(long, value_delimiter = ',')]
    pub eta: Vec<u32>,
    /// Coset subgroup order.
    #[arg(long)]
    pub n1: Option<usize>,
    /// Coset representatives in GF(q)* as element encodings.
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// 3.1, 3.2, 3.3, 4.1, prop3.1, prop4.1, prop4.2, schur, cor3.1 to cor3.4, or all.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    #[arg(long)]
    pub n: Option<Span>,
    #[arg(long)]
    pub k: Option<Span>,
}

#[derive(Args, Debug, Clone)]
pub struct MindistArgs {
    pub path: PathBuf,
    #[arg(long, env = "HULLCRAFT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn config(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            Error::ReductionFailed { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        config(e.to_string())
    }
}

/// GF(q²) for a prime power `q`.
pub fn tower_for_q(q: u32) -> Result<Field> {
    let factors = prime_factors(u64::from(q));
    let [p] = factors[..] else {
        return Err(Error::BadSpec(format!("q = {q} is not a prime power")));
    };
    let p = p as u32;
    let mut m = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        m += 1;
    }
    build_tower(p, m)
}

fn with_workers<R: Send>(
    workers: usize,
    f: impl FnOnce() -> R + Send,
) -> std::result::Result<R, Failure> {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| config(e.to_string()))?;
        Ok(pool.install(f))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        Ok(par::sequential(f))
    }
}

fn check_common(c: &Common) -> std::result::Result<Field, Failure> {
    if c.budget < 1 {
        return Err(config("budget must be at least 1"));
    }
    Ok(tower_for_q(c.q)?)
}

fn elts(field: &Field, raw: &[u32], what: &str) -> std::result::Result<Vec<Elt>, Failure> {
    raw.iter()
        .map(|&e| {
            if field.contains(Elt(e)) {
                Ok(Elt(e))
            } else {
                Err(config(format!("{what} = {e} is not an element of GF(q²)")))
            }
        })
        .collect()
}

fn group_divisors(field: &Field) -> Vec<usize> {
    let group = field.order() as usize - 1;
    (1..=group).filter(|d| group.is_multiple_of(*d)).collect()
}

fn family_instances(
    field: &Field,
    family: FamilyArg,
    a: &EnumerateArgs,
) -> std::result::Result<Vec<Family>, Failure> {
    let max_n = field.order() as usize + 1;
    let k_range = |n: usize| -> Vec<usize> {
        match (&a.k, &a.d) {
            (Some(k), _) => k.0.clone().filter(|&k| k < n).collect(),
            (None, Some(d)) => {
                d.0.clone()
                    .filter(|&d| d >= 2 && d <= n)
                    .map(|d| n - d + 1)
                    .collect()
            }
            (None, None) => (n.div_ceil(2)..n).collect(),
        }
    };
    let mut out = Vec::new();
    match family {
        FamilyArg::Subgroup => {
            for n in group_divisors(field)
                .into_iter()
                .filter(|&n| within(&a.n, n))
            {
                for k in k_range(n) {
                    if let Ok(s) = FamilySpec::subgroup(field, n, k) {
                        out.push(Family::Grs(s));
                    }
                }
            }
        }
        FamilyArg::Coset | FamilyArg::Punctured => {
            let chosen_b = elts(field, &a.b, "b")?;
            let units = field.base_field_units();
            let q = field.q() as usize;
            for n_1 in group_divisors(field) {
                if a.n1.is_some_and(|x| x != n_1) {
                    continue;
                }
                let bs: Vec<Vec<Elt>> = if chosen_b.is_empty() {
                    (1..=q - 1).map(|v| units[..v].to_vec()).collect()
                } else {
                    vec![chosen_b.clone()]
                };
                for b in bs {
                    let full = b.len() * n_1;
                    let ts: Vec<usize> = if family == FamilyArg::Coset {
                        vec![0]
                    } else {
                        (1..full).filter(|&t| within(&a.t, t)).collect()
                    };
                    for t in ts {
                        let n = full - t;
                        if !within(&a.n, n) {
                            continue;
                        }
                        for k in k_range(n) {
                            let spec = if family == FamilyArg::Coset {
                                FamilySpec::coset(field, n_1, b.clone(), k)
                            } else {
                                FamilySpec::punctured_coset(field, n_1, b.clone(), t, k)
                            };
                            if let Ok(s) = spec {
                                out.push(Family::Grs(s));
                            }
                        }
                    }
                }
            }
        }
        FamilyArg::Twisted => {
            let etas = elts(field, &a.eta, "eta")?;
            for n in group_divisors(field)
                .into_iter()
                .filter(|&n| n >= 2 && within(&a.n, n))
            {
                for k in k_range(n).into_iter().filter(|&k| 2 * k >= n) {
                    // Default: the smallest η outside α, else η = 1.
                    let candidates = if etas.is_empty() {
                        let probe = TwistSpec::new(field, n, k, Elt::ONE);
                        field
                            .elements()
                            .skip(1)
                            .find(|&e| {
                                probe.as_ref().is_ok_and(|p| {
                                    !TwistSpec {
                                        eta: e,
                                        ..p.clone()
                                    }
                                    .eta_in_alpha(field)
                                })
                            })
                            .or(Some(Elt::ONE))
                            .into_iter()
                            .collect()
                    } else {
                        etas.clone()
                    };
                    for eta in candidates {
                        if let Ok(s) = TwistSpec::new(field, n, k, eta) {
                            out.push(Family::Twisted(s));
                        }
                    }
                }
            }
        }
        FamilyArg::Generic => {
            let ns = a.n.clone().map_or(2..=max_n, |s| s.0);
            for n in ns.filter(|&n| n >= 2 && n <= max_n) {
                for k in k_range(n).into_iter().filter(|&k| k >= 1) {
                    out.push(Family::Generic {
                        n,
                        k,
                        extended: n == max_n,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Records for an `enumerate` invocation, sorted by `(n, d, c)`.
pub fn enumerate_records(
    field: &Field,
    a: &EnumerateArgs,
) -> std::result::Result<Vec<DiscoveryRecord>, Failure> {
    if field.q() < 3 {
        return Err(config("enumerate needs q >= 3 to realize every hull level"));
    }
    let budget = a.common.budget;
    match a.family {
        None => {
            let max_n = field.order() as usize + 1;
            let ns = a.n.clone().map_or(4..=max_n, |s| s.0);
            let mut pairs = Vec::new();
            for n in ns.filter(|&n| n >= 2 && n <= max_n) {
                let ds: Vec<usize> = match (&a.d, &a.k) {
                    (Some(d), _) => d.0.clone().collect(),
                    (None, Some(k)) => k.0.clone().filter(|&k| k < n).map(|k| n - k + 1).collect(),
                    (None, None) => (2..=(n + 2) / 2).collect(),
                };
                pairs.extend(
                    ds.into_iter()
                        .filter(|&d| d >= 2 && 2 * d <= n + 2)
                        .map(|d| (n, d)),
                );
            }
            if pairs.is_empty() {
                return Err(config(
                    "no (n, d) pair in range: need 2 <= d <= (n+2)/2 and n <= q²+1",
                ));
            }
            Ok(enumerate_pairs(field, &pairs, budget)?)
        }
        Some(family) => {
            let instances = family_instances(field, family, a)?;
            if instances.is_empty() {
                return Err(config(
                    "no valid family member matches the given parameters",
                ));
            }
            let parts = par::map(&instances, |fam| family_records(field, fam, budget));
            let mut records = Vec::new();
            for p in parts {
                records.extend(p?);
            }
            sort_records(&mut records);
            Ok(records)
        }
    }
}

/// The field line followed by one JSON object per record.
pub fn render_jsonl(field: &FieldTower, records: &[DiscoveryRecord]) -> String {
    let mut out = field.header();
    out.push('\n');
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub const CSV_COLUMNS: [&str; 13] = [
    "q", "family", "n", "k", "d", "hull_dim", "level", "eq_n", "eq_k", "eq_d", "eq_c", "defect",
    "mds",
];

/// The field line followed by a CSV table with a header row.
pub fn render_csv(field: &FieldTower, records: &[DiscoveryRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in records {
        w.write_record([
            r.q.to_string(),
            r.family.name().to_string(),
            r.classical.n.to_string(),
            r.classical.k.to_string(),
            r.classical.d.to_string(),
            r.hull_dim.to_string(),
            r.level.to_string(),
            r.eaqec.n.to_string(),
            r.eaqec.k.to_string(),
            r.eaqec.d.to_string(),
            r.eaqec.c.to_string(),
            r.defect.to_string(),
            r.mds.to_string(),
        ])
        .expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8");
    format!("{}\n{body}", field.header())
}

/// Parses the output of [`render_jsonl`].
pub fn parse_jsonl(text: &str) -> Result<(Field, Vec<DiscoveryRecord>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty record file".into()))?;
    let field = FieldTower::parse_header(header)?;
    let records = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
        .collect::<Result<_>>()?;
    Ok((field, records))
}

fn emit(text: &str, out: &Option<PathBuf>) -> std::result::Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_enumerate(a: &EnumerateArgs) -> std::result::Result<i32, Failure> {
    let field = check_common(&a.common)?;
    let records = with_workers(a.common.workers, || enumerate_records(&field, a))??;
    let text = match a.format {
        Format::Jsonl => render_jsonl(&field, &records),
        Format::Csv => render_csv(&field, &records),
    };
    emit(&text, &a.out)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> std::result::Result<i32, Failure> {
    let suites = parse_suites(&a.theorem)?;
    let field = check_common(&a.common)?;
    let scope = Scope {
        n: a.n.clone().map(|s| s.0),
        k: a.k.clone().map(|s| s.0),
        budget: a.common.budget,
    };
    let findings = with_workers(a.common.workers, || {
        suites
            .iter()
            .flat_map(|&s| run_suite(&field, s, &scope))
            .collect::<Vec<_>>()
    })?;
    let mut stdout = std::io::stdout().lock();
    for f in &findings {
        writeln!(stdout, "{f}")?;
    }
    let failed = findings.iter().filter(|f| !f.pass).count();
    writeln!(
        stdout,
        "{} instances, {} passed, {} failed",
        findings.len(),
        findings.len() - failed,
        failed
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn cmd_mindist(a: &MindistArgs) -> std::result::Result<i32, Failure> {
    if a.budget < 1 {
        return Err(config("budget must be at least 1"));
    }
    let text = std::fs::read_to_string(&a.path)?;
    let code = LinearCode::parse_text(&text)?;
    let d = min_distance(&code, a.budget)?;
    let mds = d == code.n() - code.k() + 1;
    debug_assert!(is_mds(&code, a.budget).map_or(true, |m| m == mds));
    println!(
        "{} {} {} {}",
        code.n(),
        code.k(),
        d,
        if mds { "MDS" } else { "non-MDS" }
    );
    Ok(0)
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Mindist(a) => cmd_mindist(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("hullcraft: {f}");
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_parse() {
        assert_eq!("8".parse::<Span>().unwrap(), Span(8..=8));
        assert_eq!("4:10".parse::<Span>().unwrap(), Span(4..=10));
        assert!("5:4".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
    }

    #[test]
    fn towers_for_prime_powers() {
        assert_eq!(tower_for_q(3).unwrap().order(), 9);
        assert_eq!(tower_for_q(4).unwrap().order(), 16);
        assert!(tower_for_q(6).is_err());
    }

    #[test]
    fn invalid_configs_exit_2() {
        assert_eq!(
            run(["hullcraft", "enumerate", "--q", "3", "--n", "8", "--k", "9"]),
            2
        );
        assert_eq!(
            run(["hullcraft", "enumerate", "--q", "2", "--family", "subgroup"]),
            2
        );
        assert_eq!(run(["hullcraft", "enumerate", "--q", "6"]), 2);
        assert_eq!(
            run(["hullcraft", "verify", "--q", "3", "--theorem", "9.9"]),
            2
        );
    }

    #[test]
    fn subgroup_records_render() {
        let field = tower_for_q(3).unwrap();
        let cli = Cli::try_parse_from([
            "hullcraft",
            "enumerate",
            "--q",
            "3",
            "--family",
            "subgroup",
            "--n",
            "8",
            "--k",
            "4",
        ])
        .unwrap();
        let Command::Enumerate(a) = cli.command else {
            unreachable!()
        };
        let recs = enumerate_records(&field, &a).unwrap();
        let h = recs[0].hull_dim;
        assert_eq!(recs.len(), 1 + h.min(3));
        let text = render_jsonl(&field, &recs);
        let (f2, back) = parse_jsonl(&text).unwrap();
        assert_eq!(f2.header(), field.header());
        assert_eq!(back.len(), recs.len());
        assert!(back.iter().all(|r| r.is_consistent()));
        let csv = render_csv(&field, &recs);
        assert_eq!(csv.lines().nth(1).unwrap(), CSV_COLUMNS.join(","));
    }
}
