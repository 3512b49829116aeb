//! Sweeps over `(r, p, x)` grids: configuration, parallel execution,
//! summaries and CSV/JSON reports.
//!
//! Every task owns its own contexts and RNG stream, so a run is a pure
//! function of its [`RunConfig`]: the same config and seed give the same
//! rows in the same order for any number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modring::{is_prime, ModulusCtx, RationalInput};
use crate::polyfactor::{classify_residue, XClass};
use crate::seriesid::{self, MAX_IDENTITY_N, MAX_SERIES_ORDER};
use crate::theorems::{
    check_cor_split, check_numerics_table, check_r3_beta, check_thm_rkkmod2_multiple, run_group,
    CongruenceReport, Instance, RootSums, TheoremGroup, TheoremId, Verdict, NUMERICS_ROWS,
};

/// How the `x` values of per-instance checks are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XMode {
    Explicit(Vec<RationalInput>),
    /// This many uniform draws per `(r, p)` from the units mod `p` other than `x_0`.
    Random(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub r_values: Vec<u32>,
    pub primes: Vec<u64>,
    pub x_mode: XMode,
    pub theorems: Vec<TheoremGroup>,
    pub seed: u64,
    /// Truncation order `N` of the series checks.
    pub series_order: usize,
    /// The identities are checked for every `1 <= n <= identity_n`.
    pub identity_n: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            r_values: vec![3],
            primes: Vec::new(),
            x_mode: XMode::Random(10),
            theorems: TheoremGroup::ALL.to_vec(),
            seed: 0,
            series_order: 20,
            identity_n: 10,
            format: OutputFormat::Csv,
            out: None,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r_values.contains(&0) {
            return Err(Error::Config("r must be positive".into()));
        }
        if let Some(&p) = self
            .primes
            .iter()
            .find(|&&p| p == 2 || !is_prime(p) || p > ModulusCtx::MAX_PRIME)
        {
            return Err(Error::Config(format!(
                "{p} is not an odd prime below {}",
                ModulusCtx::MAX_PRIME + 1
            )));
        }
        if self.series_order < 2 || self.series_order > MAX_SERIES_ORDER {
            return Err(Error::Config(format!(
                "series order must be in 2..={MAX_SERIES_ORDER}"
            )));
        }
        if self.identity_n == 0 || self.identity_n > MAX_IDENTITY_N {
            return Err(Error::Config(format!(
                "identity n must be in 1..={MAX_IDENTITY_N}"
            )));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        if self.theorems.is_empty() {
            return Err(Error::Config("no theorems selected".into()));
        }
        Ok(())
    }
}

/// Parses `"lo..hi"` (inclusive), `"lo..=hi"`, a single prime, or a comma
/// list. Ranges keep the odd primes they contain; listed values must be odd primes.
pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::Config(format!("bad number {t:?} in {s:?}")))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        return Ok((lo..=hi).filter(|&p| p != 2 && is_prime(p)).collect());
    }
    let primes = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(num)
        .collect::<Result<Vec<_>>>()?;
    match primes.iter().find(|&&p| p == 2 || !is_prime(p)) {
        Some(p) => Err(Error::Config(format!("{p} is not an odd prime"))),
        None => Ok(primes),
    }
}

/// Comma list of positive integers.
pub fn parse_r_values(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| match t.trim().parse::<u32>() {
            Ok(r) if r > 0 => Ok(r),
            _ => Err(Error::Config(format!("bad r value {t:?}"))),
        })
        .collect()
}

/// Comma list of rationals such as `2,1/8,-2`.
pub fn parse_x_values(s: &str) -> Result<Vec<RationalInput>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<RationalInput>()
                .map_err(|_| Error::Config(format!("bad x value {t:?}")))
        })
        .collect()
}

/// Comma list of group tags, or `all`.
pub fn parse_theorems(s: &str) -> Result<Vec<TheoremGroup>> {
    if s.trim() == "all" {
        return Ok(TheoremGroup::ALL.to_vec());
    }
    let mut groups = s
        .split(',')
        .map(TheoremGroup::from_str)
        .collect::<Result<Vec<_>>>()?;
    groups.sort();
    groups.dedup();
    Ok(groups)
}

/// Counts of a finished run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub skip_reasons: BTreeMap<String, usize>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunSummary {
    pub fn from_rows(rows: &[CongruenceReport]) -> Self {
        let mut s = RunSummary {
            total: rows.len(),
            ..Default::default()
        };
        for row in rows {
            match &row.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::Fail => s.failed += 1,
                Verdict::Skipped(reason) => {
                    s.skipped += 1;
                    *s.skip_reasons.entry(reason.to_string()).or_default() += 1;
                }
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checks: {} passed, {} failed, {} skipped",
            self.total, self.passed, self.failed, self.skipped
        )?;
        for (reason, n) in &self.skip_reasons {
            write!(f, " [{reason}: {n}]")?;
        }
        write!(f, " in {:.2?}", self.wall_time)
    }
}

/// One serialized row; residues are canonical integers in `[0, p^e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    #[serde(rename = "theoremId")]
    pub theorem_id: String,
    pub r: u32,
    pub p: u64,
    pub e: u32,
    pub x_num: Option<i64>,
    pub x_den: Option<i64>,
    pub m: Option<u32>,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub modulus: u64,
    pub verdict: String,
}

impl From<&CongruenceReport> for ReportRow {
    fn from(c: &CongruenceReport) -> Self {
        ReportRow {
            theorem_id: c.theorem.tag(),
            r: c.r,
            p: c.p,
            e: c.e,
            x_num: c.x.map(|x| x.num),
            x_den: c.x.map(|x| x.den),
            m: c.m,
            lhs: c.lhs.map(|v| v.value()),
            rhs: c.rhs.map(|v| v.value()),
            modulus: c.modulus(),
            verdict: c.verdict.tag(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub rows: Vec<ReportRow>,
    pub summary: RunSummary,
}

/// Writes the rows in the chosen format.
pub fn write_report<W: Write>(
    rows: &[CongruenceReport],
    format: OutputFormat,
    out: W,
) -> Result<()> {
    let summary = RunSummary::from_rows(rows);
    let rows: Vec<ReportRow> = rows.iter().map(ReportRow::from).collect();
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            w.write_record([
                "theoremId",
                "r",
                "p",
                "e",
                "x_num",
                "x_den",
                "m",
                "lhs",
                "rhs",
                "modulus",
                "verdict",
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
            for row in &rows {
                w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &JsonReport { rows, summary })
                .map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit_report(
    rows: &[CongruenceReport],
    format: OutputFormat,
    path: Option<&Path>,
) -> Result<()> {
    match path {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            write_report(rows, format, std::io::BufWriter::new(file))
        }
        None => write_report(rows, format, std::io::stdout().lock()),
    }
}

/// One schedulable unit of work.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Task {
    /// All selected per-`x` groups at one `(r, p)`.
    Instances {
        r: u32,
        p: u64,
        groups: Vec<TheoremGroup>,
    },
    Split {
        r: u32,
        p: u64,
    },
    DoubleRoot {
        r: u32,
        p: u64,
    },
    Beta {
        p: u64,
    },
    Numerics {
        p: u64,
    },
    Series {
        r: u32,
    },
    Identities {
        r: u32,
        n: usize,
    },
}

/// Independent RNG stream for each `(r, p)`; `r = 0` is the beta stream.
fn task_rng(seed: u64, r: u32, p: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((r as u64) << 32) | p);
    rng
}

fn plan(cfg: &RunConfig) -> Vec<Task> {
    let has = |g: TheoremGroup| cfg.theorems.contains(&g);
    let mut tasks = Vec::new();
    for &r in &cfg.r_values {
        if has(TheoremGroup::Series) {
            tasks.push(Task::Series { r });
        }
        if has(TheoremGroup::Identities) {
            tasks.extend((1..=cfg.identity_n).map(|n| Task::Identities { r, n }));
        }
    }
    for &p in &cfg.primes {
        for &r in &cfg.r_values {
            let groups: Vec<TheoremGroup> = cfg
                .theorems
                .iter()
                .copied()
                .filter(|g| g.uses_random_x() && g.admissible(r, p))
                .collect();
            if !groups.is_empty() {
                tasks.push(Task::Instances { r, p, groups });
            }
            if has(TheoremGroup::Split) && TheoremGroup::Split.admissible(r, p) {
                tasks.push(Task::Split { r, p });
            }
            if has(TheoremGroup::PlainDoubleRoot) && TheoremGroup::PlainDoubleRoot.admissible(r, p)
            {
                tasks.push(Task::DoubleRoot { r, p });
            }
        }
        if has(TheoremGroup::Beta) && TheoremGroup::Beta.admissible(3, p) {
            tasks.push(Task::Beta { p });
        }
        if has(TheoremGroup::Numerics) && TheoremGroup::Numerics.admissible(0, p) {
            tasks.push(Task::Numerics { p });
        }
    }
    tasks
}

/// Units mod `p` other than the double-root value, in increasing order.
pub fn nondegenerate_units(r: u32, p: u64) -> Result<Vec<RationalInput>> {
    let ctx = ModulusCtx::new(p, 1)?;
    Ok((1..p)
        .filter(|&a| classify_residue(r as usize, ctx.from_u64(a)) == XClass::Nondegenerate)
        .map(|a| RationalInput::integer(a as i64))
        .collect())
}

fn x_values(cfg: &RunConfig, r: u32, p: u64) -> Result<Vec<RationalInput>> {
    match &cfg.x_mode {
        XMode::Explicit(xs) => Ok(xs.clone()),
        XMode::Random(count) => {
            let pool = nondegenerate_units(r, p)?;
            if pool.is_empty() {
                return Ok(Vec::new());
            }
            let mut rng = task_rng(cfg.seed, r, p);
            Ok((0..*count)
                .map(|_| *pool.choose(&mut rng).expect("nonempty"))
                .collect())
        }
    }
}

fn failed_task(theorem: TheoremId, inst: Instance, err: &Error) -> Vec<CongruenceReport> {
    vec![CongruenceReport::from_error(theorem, inst, 1, err)]
}

fn execute(cfg: &RunConfig, task: &Task) -> Vec<CongruenceReport> {
    let start = Instant::now();
    let rows = match *task {
        Task::Instances { r, p, ref groups } => {
            let e = groups
                .iter()
                .map(TheoremGroup::precision)
                .max()
                .unwrap_or(1);
            match x_values(cfg, r, p) {
                Ok(xs) => xs
                    .into_iter()
                    .flat_map(|x| {
                        let inst = Instance::new(r, p, Some(x));
                        let rs = RootSums::new(r as usize, x, p, e);
                        groups
                            .iter()
                            .flat_map(|&g| run_group(g, rs.as_ref(), inst))
                            .collect::<Vec<_>>()
                    })
                    .collect(),
                Err(err) => failed_task(groups[0].ids()[0], Instance::new(r, p, None), &err),
            }
        }
        Task::Split { r, p } => check_cor_split(r as usize, p).unwrap_or_else(|err| {
            failed_task(TheoremId::SplitFull, Instance::new(r, p, None), &err)
        }),
        Task::DoubleRoot { r, p } => match check_thm_rkkmod2_multiple(r as usize, p) {
            Ok(row) => vec![row],
            Err(err) => failed_task(TheoremId::PlainDoubleRoot, Instance::new(r, p, None), &err),
        },
        Task::Beta { p } => {
            let count = match cfg.x_mode {
                XMode::Random(n) => n,
                XMode::Explicit(ref xs) => xs.len(),
            };
            check_r3_beta(p, count, &mut task_rng(cfg.seed, 0, p)).unwrap_or_else(|err| {
                failed_task(TheoremId::BetaFull, Instance::new(3, p, None), &err)
            })
        }
        Task::Numerics { p } => check_numerics_table(p).unwrap_or_else(|err| {
            failed_task(
                TheoremId::Numerics(NUMERICS_ROWS[0]),
                Instance::new(0, p, None),
                &err,
            )
        }),
        Task::Series { r } => {
            let n = cfg.series_order;
            let log = seriesid::check_series_log_identity(r, n);
            let fc = seriesid::check_fuss_catalan_equation(r, n);
            vec![
                CongruenceReport::exact(TheoremId::SeriesLog, r, n, log.unwrap_or(false)),
                CongruenceReport::exact(TheoremId::FussCatalan, r, n, fc.unwrap_or(false)),
            ]
        }
        Task::Identities { r, n } => {
            let v = seriesid::check_identities(r, n).unwrap_or_default();
            vec![
                CongruenceReport::exact(TheoremId::Id0, r, n, v.id0),
                CongruenceReport::exact(TheoremId::Id1b, r, n, v.id1b),
                CongruenceReport::exact(TheoremId::Id2b, r, n, v.id2b),
                CongruenceReport::exact(TheoremId::LadderId1b, r, n, v.ladder_id1b),
                CongruenceReport::exact(TheoremId::LadderId2b, r, n, v.ladder_id2b),
            ]
        }
    };
    // the per-row timings from the checkers are kept; whole-task rows get an even share
    if rows.iter().all(|r| r.elapsed.is_zero()) {
        let share = start.elapsed() / rows.len().max(1) as u32;
        rows.into_iter().map(|r| r.with_elapsed(share)).collect()
    } else {
        rows
    }
}

/// Runs every selected check and returns the rows in plan order.
pub fn run_checks(cfg: &RunConfig) -> Result<(RunSummary, Vec<CongruenceReport>)> {
    cfg.validate()?;
    let start = Instant::now();
    let tasks = plan(cfg);
    let work = || {
        tasks
            .par_iter()
            .flat_map_iter(|t| execute(cfg, t))
            .collect::<Vec<_>>()
    };
    let rows = match cfg.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut summary = RunSummary::from_rows(&rows);
    summary.wall_time = start.elapsed();
    Ok((summary, rows))
}

/// [`run_checks`], then writes the report to the configured destination.
pub fn run(cfg: &RunConfig) -> Result<RunSummary> {
    let (summary, rows) = run_checks(cfg)?;
    emit_report(&rows, cfg.format, cfg.out.as_deref())?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(theorems: &str, r: &str, primes: &str) -> RunConfig {
        RunConfig {
            r_values: parse_r_values(r).unwrap(),
            primes: parse_primes(primes).unwrap(),
            theorems: parse_theorems(theorems).unwrap(),
            x_mode: XMode::Random(3),
            seed: 7,
            ..RunConfig::default()
        }
    }

    #[test]
    fn prime_parsing() {
        assert_eq!(parse_primes("5..20").unwrap(), vec![5, 7, 11, 13, 17, 19]);
        assert_eq!(parse_primes("2..=7").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_primes("101").unwrap(), vec![101]);
        assert_eq!(parse_primes("7, 11").unwrap(), vec![7, 11]);
        assert!(parse_primes("20..5").unwrap().is_empty());
        assert!(parse_primes("9").is_err());
        assert!(parse_primes("2").is_err());
        assert!(parse_primes("x..5").is_err());
    }

    #[test]
    fn other_parsers() {
        assert_eq!(parse_r_values("1,3").unwrap(), vec![1, 3]);
        assert!(parse_r_values("0").is_err());
        assert_eq!(
            parse_x_values("2,1/8,-2").unwrap()[1],
            RationalInput::new(1, 8)
        );
        assert!(parse_x_values("1/0x").is_err());
        assert_eq!(
            parse_theorems("rkk,rkk").unwrap(),
            vec![TheoremGroup::Plain]
        );
        assert!(parse_theorems("nope").is_err());
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
    }

    #[test]
    fn random_x_avoids_x0() {
        // r = 3, p = 7: x_0 = 4/27 = 3 mod 7
        let pool = nondegenerate_units(3, 7).unwrap();
        assert_eq!(pool.len(), 5);
        assert!(!pool.contains(&RationalInput::integer(3)));
        assert!(nondegenerate_units(1, 3).unwrap().len() == 1);
    }

    #[test]
    fn empty_prime_range() {
        let (summary, rows) = run_checks(&cfg("rkk", "3", "20..10")).unwrap();
        assert!(rows.is_empty());
        assert_eq!(summary.total, 0);
        assert_eq!(summary.exit_code(), 0);
    }

    #[test]
    fn parallel_matches_serial() {
        let mut c = cfg("rkksuk,rkk,mystery,cor_split", "2,3", "5..31");
        c.jobs = Some(1);
        let (_, serial) = run_checks(&c).unwrap();
        c.jobs = Some(4);
        let (summary, parallel) = run_checks(&c).unwrap();
        let key =
            |rows: &[CongruenceReport]| rows.iter().map(|r| format!("{r}")).collect::<Vec<_>>();
        assert_eq!(key(&serial), key(&parallel));
        assert_eq!(summary.failed, 0);
        assert_eq!(
            summary.total,
            summary.passed + summary.failed + summary.skipped
        );
    }

    #[test]
    fn explicit_degenerate_x_is_skipped() {
        let mut c = cfg("rkk", "3", "7");
        c.x_mode = XMode::Explicit(vec![RationalInput::new(4, 27), 5.into()]);
        let (summary, rows) = run_checks(&c).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(summary.skip_reasons.get("DegenerateX"), Some(&2));
        assert_eq!(summary.passed, 2);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let c = cfg("rkksukmod2,series", "3", "5..13");
        let (_, rows) = run_checks(&c).unwrap();
        let mut buf = Vec::new();
        write_report(&rows, OutputFormat::Csv, &mut buf).unwrap();
        let mut reader = csv::Reader::from_reader(buf.as_slice());
        let back: Vec<ReportRow> = reader
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .unwrap();
        let direct: Vec<ReportRow> = rows.iter().map(ReportRow::from).collect();
        assert_eq!(back, direct);

        let mut buf = Vec::new();
        write_report(&rows, OutputFormat::Json, &mut buf).unwrap();
        let parsed: JsonReport = serde_json::from_slice(&buf).unwrap();
        assert_eq!(parsed.rows, direct);
        assert_eq!(parsed.summary, RunSummary::from_rows(&rows));
    }

    #[test]
    fn config_validation() {
        let mut c = cfg("rkk", "3", "7");
        c.series_order = 1;
        assert!(matches!(run_checks(&c), Err(Error::Config(_))));
        let mut c = cfg("rkk", "3", "7");
        c.primes = vec![9];
        assert!(c.validate().is_err());
    }
}
