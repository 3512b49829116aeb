//! One checker per congruence: the left side is a brute-force binomial sum,
//! the right side is assembled from root-sum traces and finite-polylog
//! constants, and the verdict is exact equality of residues.
//!
//! Each report carries a tag naming the congruence it checks. The tags are
//! the strings accepted by `--theorems` (see [`TheoremGroup`]).

mod checks;
mod numerics;
mod roots;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::modring::{RationalInput, ResidueInt};

pub use checks::*;
pub use numerics::{check_numerics_table, NumericsRow, NUMERICS_ROWS};
pub use roots::{terms, RootSums};

/// The individual congruence a report row checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Half-range central binomial sum against `(1-4x)^{(p-1)/2}`, mod `p`.
    CentralPol,
    /// `p/r` times the sum of `binom(rk,k) x^k / k` over one block `A*(r, m)`,
    /// against an elementary symmetric function of `(c_i/(c_i-1))^p`, mod `p^2`.
    LogBlock,
    /// The block congruences added over `m` agree with the full-range one.
    LogBlockSum,
    /// `p/r` times the full log sum against `-x^p + prod(1 - (c_i/(c_i-1))^p)`, mod `p^2`.
    LogFullModP2,
    /// Full log sum against `-r x^p sum £_1(c_i)`, mod `p`.
    LogFull,
    /// Short log sum against `-sum £_1(c_i)/(1-c_i)^p`, mod `p`.
    LogShort,
    /// `sum 1/(1-c_i)^p = (r-1) sum c_i^p/(c_i-1)^p`, mod `p^2`.
    RootPowerLemma,
    /// `(r-1) sum c_i^p + r sum (1-c_i)^p = x^{-p} + r(r-1)`, mod `p^2`.
    RootPowerSum,
    /// `sum c_i^{-p} + r sum (1-1/c_i)^p = r` (or `x^{-p} + 2` for `r = 2`), mod `p^2`.
    RootPowerSumInverse,
    /// Full plain sum against `-r x^p sum (c_i - c_i^p)/(r-1+c_i)`, mod `p`.
    PlainFull,
    /// Short plain sum against `-sum (c_i - c_i^p)/((1-c_i^p)(r-1+c_i))`, mod `p`.
    PlainShort,
    /// Full plain sum vanishes when the root polynomial splits over `F_p`.
    SplitFull,
    /// Short plain sum vanishes when the root polynomial splits over `F_p`.
    SplitShort,
    /// Full `1/k^2` sum against the `p^2`-bracket plus `r x^p sum £_2(1-c_i)`, mod `p`.
    DilogFull,
    /// The `p^2`-bracket of [`TheoremId::DilogFull`] vanishes mod `p^2`.
    DilogBracket,
    /// Full log sum against the `p`-bracket plus a `£_2` correction, mod `p^2`.
    LogFullDilogCorrection,
    /// The `p`-bracket of [`TheoremId::LogFullDilogCorrection`] vanishes mod `p`.
    LogBracket,
    /// Plain sum over `0 <= k < p` against root traces, mod `p^2`.
    PlainWithZeroModP2,
    /// Plain sum over `0 < k < p` against root traces, mod `p^2`.
    PlainModP2,
    /// The two right sides above differ by the `k = 0` term `1`.
    PlainModP2Difference,
    /// Plain sum over `0 <= k < p` at the double-root value `x_0`, mod `p^2`.
    PlainDoubleRoot,
    /// `r = 3`, `x = c^2/(1-c)^3` with `c = beta(1-beta)`: full log sum, mod `p`.
    BetaFull,
    /// Same parametrization, short log sum, mod `p`.
    BetaShort,
    /// One row of the table of closed-form evaluations.
    Numerics(NumericsRow),
    /// `sum binom(rk,k) x^k/k = r log B_r(x)` as power series over `Q`.
    SeriesLog,
    /// `B_r = 1 + x B_r^r` as power series over `Q`.
    FussCatalan,
    /// First polynomial identity in `Q[y]` (right side in `s_k'`).
    Id0,
    /// Second polynomial identity in `Q[y]` (right side in `s_k - r`).
    Id1b,
    /// Third polynomial identity in `Q[y]` (nested harmonic-type sum).
    Id2b,
    /// `d/dy` of the second right side is the first right side.
    LadderId1b,
    /// `y d/dy` of the third right side is the second right side.
    LadderId2b,
    /// The second identity at `n = p`, `y = 1/x`, times `p`, mod `p^2`, with trace power sums.
    ShadowLog,
    /// The third identity at `n = p`, `y = 1/x`, times `p^2`, mod `p^3`, with trace power sums.
    ShadowDilog,
    /// Newton's `s_p(1/x)` against the trace of `c^p`, mod `p^3`.
    ShadowPowerSum,
}

impl TheoremId {
    pub fn tag(&self) -> String {
        let s = match self {
            TheoremId::CentralPol => "central_pol",
            TheoremId::LogBlock => "rkksuk_z",
            TheoremId::LogBlockSum => "rkksuk_z_sum",
            TheoremId::LogFullModP2 => "rkksuk_long",
            TheoremId::LogFull => "rkksuk",
            TheoremId::LogShort => "rkksuk_short",
            TheoremId::RootPowerLemma => "lemma_technical",
            TheoremId::RootPowerSum => "mystery",
            TheoremId::RootPowerSumInverse => "mystery_inv",
            TheoremId::PlainFull => "rkk",
            TheoremId::PlainShort => "rkk_short",
            TheoremId::SplitFull => "cor_split",
            TheoremId::SplitShort => "cor_split_short",
            TheoremId::DilogFull => "rkksukk",
            TheoremId::DilogBracket => "rkksukk_bracket",
            TheoremId::LogFullDilogCorrection => "rkksukmod2",
            TheoremId::LogBracket => "rkksukmod2_bracket",
            TheoremId::PlainWithZeroModP2 => "rkkmod2",
            TheoremId::PlainModP2 => "rkkmod2_var",
            TheoremId::PlainModP2Difference => "rkkmod2_diff",
            TheoremId::PlainDoubleRoot => "rkkmod2_multiple",
            TheoremId::BetaFull => "r3_beta",
            TheoremId::BetaShort => "r3_beta_short",
            TheoremId::Numerics(row) => return format!("numerics:{}", row.tag()),
            TheoremId::SeriesLog => "series_log",
            TheoremId::FussCatalan => "fuss_catalan",
            TheoremId::Id0 => "id0",
            TheoremId::Id1b => "id1b",
            TheoremId::Id2b => "id2b",
            TheoremId::LadderId1b => "ladder_id1b",
            TheoremId::LadderId2b => "ladder_id2b",
            TheoremId::ShadowLog => "shadow_id1b",
            TheoremId::ShadowDilog => "shadow_id2b",
            TheoremId::ShadowPowerSum => "shadow_power_sum",
        };
        s.to_string()
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// A selectable family of checks; one group can emit several [`TheoremId`]s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremGroup {
    CentralPol,
    LogBlock,
    LogFullModP2,
    LogFull,
    RootPowerLemma,
    RootPowerSum,
    Plain,
    Split,
    DilogFull,
    LogFullDilogCorrection,
    PlainModP2,
    PlainDoubleRoot,
    Beta,
    Numerics,
    Series,
    Identities,
    Shadow,
}

impl TheoremGroup {
    pub const ALL: [TheoremGroup; 17] = [
        TheoremGroup::CentralPol,
        TheoremGroup::LogBlock,
        TheoremGroup::LogFullModP2,
        TheoremGroup::LogFull,
        TheoremGroup::RootPowerLemma,
        TheoremGroup::RootPowerSum,
        TheoremGroup::Plain,
        TheoremGroup::Split,
        TheoremGroup::DilogFull,
        TheoremGroup::LogFullDilogCorrection,
        TheoremGroup::PlainModP2,
        TheoremGroup::PlainDoubleRoot,
        TheoremGroup::Beta,
        TheoremGroup::Numerics,
        TheoremGroup::Series,
        TheoremGroup::Identities,
        TheoremGroup::Shadow,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            TheoremGroup::CentralPol => "central_pol",
            TheoremGroup::LogBlock => "rkksuk_z",
            TheoremGroup::LogFullModP2 => "rkksuk_long",
            TheoremGroup::LogFull => "rkksuk",
            TheoremGroup::RootPowerLemma => "lemma_technical",
            TheoremGroup::RootPowerSum => "mystery",
            TheoremGroup::Plain => "rkk",
            TheoremGroup::Split => "cor_split",
            TheoremGroup::DilogFull => "rkksukk",
            TheoremGroup::LogFullDilogCorrection => "rkksukmod2",
            TheoremGroup::PlainModP2 => "rkkmod2",
            TheoremGroup::PlainDoubleRoot => "rkkmod2_multiple",
            TheoremGroup::Beta => "r3_beta",
            TheoremGroup::Numerics => "numerics",
            TheoremGroup::Series => "series",
            TheoremGroup::Identities => "identities",
            TheoremGroup::Shadow => "shadow",
        }
    }

    /// Highest `p`-adic precision the group's root sums need.
    pub fn precision(&self) -> u32 {
        match self {
            TheoremGroup::DilogFull
            | TheoremGroup::LogFullDilogCorrection
            | TheoremGroup::Shadow => 3,
            TheoremGroup::LogBlock
            | TheoremGroup::LogFullModP2
            | TheoremGroup::RootPowerLemma
            | TheoremGroup::RootPowerSum
            | TheoremGroup::PlainModP2
            | TheoremGroup::PlainDoubleRoot => 2,
            _ => 1,
        }
    }

    /// Groups driven by a `(r, p, x)` triple with a nondegenerate `x`.
    pub fn uses_random_x(&self) -> bool {
        !matches!(
            self,
            TheoremGroup::Split
                | TheoremGroup::PlainDoubleRoot
                | TheoremGroup::Beta
                | TheoremGroup::Numerics
                | TheoremGroup::Series
                | TheoremGroup::Identities
        )
    }
}

impl FromStr for TheoremGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremGroup::ALL
            .iter()
            .copied()
            .find(|g| g.tag() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown theorem tag {s:?}")))
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(&'static str),
}

impl Verdict {
    pub fn tag(&self) -> String {
        match self {
            Verdict::Pass => "pass".into(),
            Verdict::Fail => "fail".into(),
            Verdict::Skipped(reason) => format!("skip:{reason}"),
        }
    }
}

/// One row of output: parameters, both sides and the verdict.
#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub theorem: TheoremId,
    pub r: u32,
    pub p: u64,
    /// Exponent of the modulus `p^e` the comparison is made in.
    pub e: u32,
    pub x: Option<RationalInput>,
    pub m: Option<u32>,
    pub lhs: Option<ResidueInt>,
    pub rhs: Option<ResidueInt>,
    pub verdict: Verdict,
    /// Error text for failures that have no residues to show.
    pub detail: Option<String>,
    pub elapsed: Duration,
}

/// Parameters shared by the rows of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Instance {
    pub r: u32,
    pub p: u64,
    pub x: Option<RationalInput>,
    pub m: Option<u32>,
}

impl Instance {
    pub fn new(r: u32, p: u64, x: Option<RationalInput>) -> Self {
        Instance { r, p, x, m: None }
    }

    pub fn with_m(self, m: u32) -> Self {
        Instance { m: Some(m), ..self }
    }
}

impl CongruenceReport {
    /// Compares two residues of the same modulus.
    pub fn compare(theorem: TheoremId, inst: Instance, lhs: ResidueInt, rhs: ResidueInt) -> Self {
        assert_eq!(
            lhs.ctx(),
            rhs.ctx(),
            "{theorem}: sides computed in different moduli"
        );
        CongruenceReport {
            theorem,
            r: inst.r,
            p: inst.p,
            e: lhs.ctx().e(),
            x: inst.x,
            m: inst.m,
            verdict: if lhs == rhs {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            lhs: Some(lhs),
            rhs: Some(rhs),
            detail: None,
            elapsed: Duration::ZERO,
        }
    }

    /// A row for a check that could not be carried out: skipped when the
    /// error is a recognised inapplicability, failed otherwise.
    pub fn from_error(theorem: TheoremId, inst: Instance, e: u32, err: &Error) -> Self {
        CongruenceReport {
            theorem,
            r: inst.r,
            p: inst.p,
            e,
            x: inst.x,
            m: inst.m,
            lhs: None,
            rhs: None,
            verdict: match err.skip_reason() {
                Some(reason) => Verdict::Skipped(reason),
                None => Verdict::Fail,
            },
            detail: Some(err.to_string()),
            elapsed: Duration::ZERO,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// A row for an exact identity over `Q`; `p` and `e` are `0` and `m` holds the order.
    pub fn exact(theorem: TheoremId, r: u32, order: usize, holds: bool) -> Self {
        CongruenceReport {
            theorem,
            r,
            p: 0,
            e: 0,
            x: None,
            m: Some(order as u32),
            lhs: None,
            rhs: None,
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            detail: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<ResidueInt>| {
            v.map(|v| v.value().to_string())
                .unwrap_or_else(|| "-".into())
        };
        write!(
            f,
            "{} r={} p={} mod p^{}",
            self.theorem, self.r, self.p, self.e
        )?;
        if let Some(x) = self.x {
            write!(f, " x={x}")?;
        }
        if let Some(m) = self.m {
            write!(f, " m={m}")?;
        }
        write!(
            f,
            ": lhs={} rhs={} {}",
            show(&self.lhs),
            show(&self.rhs),
            self.verdict.tag()
        )?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}
