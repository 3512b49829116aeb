//! Closed-form evaluations of particular binomial sums in terms of Fermat
//! quotients, the Lucas quotient, Euler and Bernoulli numbers.
//!
//! Each row fixes `(r, x, d, range)` and a modulus, and compares the brute
//! force sum with its closed form built from a [`ConstantsTable`].

use super::checks::binomial_sum;
use super::{CongruenceReport, Instance, TheoremId};
use crate::binomsums::NamedRange;
use crate::error::Result;
use crate::finlog::ConstantsTable;
use crate::modring::{ModulusCtx, RationalInput, ResidueInt};

/// One closed-form evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumericsRow {
    /// `r=3, x=2`: `sum_{0<k<p} binom(3k,k) 2^k/k = -3p q_p(2)^2` mod `p^2`
    ThreeTwoLog,
    /// `r=3, x=2`: `sum_{0<k<p} binom(3k,k) 2^k/k^2 = 6(-1)^{(p-1)/2} E_{p-3}` mod `p`
    ThreeTwoDilog,
    /// `r=3, x=2`: `sum_{0<=k<p} binom(3k,k) 2^k = (6(-1)^{(p-1)/2}-1)/5 + (6/5)p q_p(2)` mod `p^2`, `p != 5`
    ThreeTwoPlain,
    /// `r=3, x=2`: `sum_{0<k<p/3} binom(3k,k) 2^k/k = -3 q_p(2)` mod `p`
    ThreeTwoLogShort,
    /// `r=3, x=1/8`: full log sum `= 3q_p(2) - (3/4) q_L` mod `p`, `p != 5`
    ThreeEighthLog,
    /// `r=3, x=1/8`: short log sum `= 3q_p(2) - (3/2) q_L` mod `p`, `p != 5`
    ThreeEighthLogShort,
    /// `r=3, x=1/8`: plain sum over `0<=k<p` `= 1/4 + (3/4)(p|5) + (9/10)(p|5) p q_L` mod `p^2`, `p != 5`
    ThreeEighthPlain,
    /// `r=3, x=4/27`: full log sum `= -(8/3) q_p(2) + 3 q_p(3)` mod `p`
    ThreeX0Log,
    /// `r=3, x=4/27`: short log sum `= -4 q_p(2) + 3 q_p(3)` mod `p`
    ThreeX0LogShort,
    /// `r=3, x=4/27`: plain sum over `0<=k<p` `= 1/9 + (8/27) p (3 + q_p(2))` mod `p^2`
    ThreeX0Plain,
    /// `r=4, x=27/256`: plain sum over `0<=k<p` `= 11/72 + (1/288)(-2|p)` mod `p`
    FourX0Plain,
    /// `r=2, x=1/3`: full log sum `= q_p(3) - (1/2) p q_p(3)^2` mod `p^2`
    TwoThirdLog,
    /// `r=2, x=1/3`: full dilog sum `= (1/9)(p|3) B_{p-2}(1/3) - (1/2) q_p(3)^2` mod `p`
    TwoThirdDilog,
    /// `r=2, x=-2`: full log sum `= -4 q_p(2) + 4p q_p(2)^2` mod `p^2`
    TwoMinusTwoLog,
    /// `r=2, x=-2`: full dilog sum `= -2 q_p(2)^2` mod `p`
    TwoMinusTwoDilog,
}

pub const NUMERICS_ROWS: [NumericsRow; 15] = [
    NumericsRow::ThreeTwoLog,
    NumericsRow::ThreeTwoDilog,
    NumericsRow::ThreeTwoPlain,
    NumericsRow::ThreeTwoLogShort,
    NumericsRow::ThreeEighthLog,
    NumericsRow::ThreeEighthLogShort,
    NumericsRow::ThreeEighthPlain,
    NumericsRow::ThreeX0Log,
    NumericsRow::ThreeX0LogShort,
    NumericsRow::ThreeX0Plain,
    NumericsRow::FourX0Plain,
    NumericsRow::TwoThirdLog,
    NumericsRow::TwoThirdDilog,
    NumericsRow::TwoMinusTwoLog,
    NumericsRow::TwoMinusTwoDilog,
];

struct RowSpec {
    r: usize,
    x: RationalInput,
    d: u32,
    range: NamedRange,
    e: u32,
    /// The row needs `p != 5`.
    avoid_five: bool,
}

impl NumericsRow {
    pub fn tag(&self) -> &'static str {
        match self {
            NumericsRow::ThreeTwoLog => "r3_x2_log",
            NumericsRow::ThreeTwoDilog => "r3_x2_dilog",
            NumericsRow::ThreeTwoPlain => "r3_x2_plain",
            NumericsRow::ThreeTwoLogShort => "r3_x2_log_short",
            NumericsRow::ThreeEighthLog => "r3_x1/8_log",
            NumericsRow::ThreeEighthLogShort => "r3_x1/8_log_short",
            NumericsRow::ThreeEighthPlain => "r3_x1/8_plain",
            NumericsRow::ThreeX0Log => "r3_x4/27_log",
            NumericsRow::ThreeX0LogShort => "r3_x4/27_log_short",
            NumericsRow::ThreeX0Plain => "r3_x4/27_plain",
            NumericsRow::FourX0Plain => "r4_x27/256_plain",
            NumericsRow::TwoThirdLog => "r2_x1/3_log",
            NumericsRow::TwoThirdDilog => "r2_x1/3_dilog",
            NumericsRow::TwoMinusTwoLog => "r2_x-2_log",
            NumericsRow::TwoMinusTwoDilog => "r2_x-2_dilog",
        }
    }

    fn spec(&self) -> RowSpec {
        use NamedRange::{Full, Full0, Short};
        let row = |r, x: RationalInput, d, range, e, avoid_five| RowSpec {
            r,
            x,
            d,
            range,
            e,
            avoid_five,
        };
        let q = RationalInput::new;
        match self {
            NumericsRow::ThreeTwoLog => row(3, q(2, 1), 1, Full, 2, false),
            NumericsRow::ThreeTwoDilog => row(3, q(2, 1), 2, Full, 1, false),
            NumericsRow::ThreeTwoPlain => row(3, q(2, 1), 0, Full0, 2, true),
            NumericsRow::ThreeTwoLogShort => row(3, q(2, 1), 1, Short, 1, false),
            NumericsRow::ThreeEighthLog => row(3, q(1, 8), 1, Full, 1, true),
            NumericsRow::ThreeEighthLogShort => row(3, q(1, 8), 1, Short, 1, true),
            NumericsRow::ThreeEighthPlain => row(3, q(1, 8), 0, Full0, 2, true),
            NumericsRow::ThreeX0Log => row(3, q(4, 27), 1, Full, 1, false),
            NumericsRow::ThreeX0LogShort => row(3, q(4, 27), 1, Short, 1, false),
            NumericsRow::ThreeX0Plain => row(3, q(4, 27), 0, Full0, 2, false),
            NumericsRow::FourX0Plain => row(4, q(27, 256), 0, Full0, 1, false),
            NumericsRow::TwoThirdLog => row(2, q(1, 3), 1, Full, 2, false),
            NumericsRow::TwoThirdDilog => row(2, q(1, 3), 2, Full, 1, false),
            NumericsRow::TwoMinusTwoLog => row(2, q(-2, 1), 1, Full, 2, false),
            NumericsRow::TwoMinusTwoDilog => row(2, q(-2, 1), 2, Full, 1, false),
        }
    }

    /// Whether the row applies at `p`.
    pub fn admissible(&self, p: u64) -> bool {
        p > 3 && !(self.spec().avoid_five && p == 5)
    }

    /// The closed-form value at `p`.
    pub fn closed_form(&self, k: &ConstantsTable) -> Result<ResidueInt> {
        let spec = self.spec();
        let p = k.p;
        let ctx = ModulusCtx::new(p, spec.e)?;
        let c1 = ModulusCtx::new(p, 1)?;
        let rat = |n: i64, d: i64| ctx.from_rational(RationalInput::new(n, d));
        let rat1 = |n: i64, d: i64| c1.from_rational(RationalInput::new(n, d));
        let int = |v: i64| ctx.from_i64(v);
        // p * v for a value v known mod p, landing in Z/p^2
        let times_p = |v: ResidueInt| v.reduce_to(1).times_p_lifted();
        let q2 = k.qp2.reduce_to(spec.e);
        let q3 = k.qp3.reduce_to(spec.e);
        let sign = if ((p - 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let lucas = || k.lucas_q.expect("p != 5");
        Ok(match self {
            NumericsRow::ThreeTwoLog => {
                times_p(-(rat1(3, 1)? * q2.reduce_to(1) * q2.reduce_to(1)))?
            }
            NumericsRow::ThreeTwoDilog => int(6 * sign) * k.euler_pm3,
            NumericsRow::ThreeTwoPlain => {
                rat(6 * sign - 1, 5)? + times_p(rat1(6, 5)? * q2.reduce_to(1))?
            }
            NumericsRow::ThreeTwoLogShort => -(int(3) * q2),
            NumericsRow::ThreeEighthLog => int(3) * q2 - rat(3, 4)? * lucas(),
            NumericsRow::ThreeEighthLogShort => int(3) * q2 - rat(3, 2)? * lucas(),
            NumericsRow::ThreeEighthPlain => {
                let l5 = crate::finlog::legendre(p as i64, 5);
                rat(1, 4)? + rat(3 * l5, 4)? + times_p(rat1(9 * l5, 10)? * lucas())?
            }
            NumericsRow::ThreeX0Log => -(rat(8, 3)? * q2) + int(3) * q3,
            NumericsRow::ThreeX0LogShort => -(int(4) * q2) + int(3) * q3,
            NumericsRow::ThreeX0Plain => {
                rat(1, 9)? + times_p(rat1(8, 27)? * (rat1(3, 1)? + q2.reduce_to(1)))?
            }
            NumericsRow::FourX0Plain => rat(11, 72)? + rat(k.legendre(-2), 288)?,
            NumericsRow::TwoThirdLog => {
                let q = q3.reduce_to(1);
                q3 - times_p(rat1(1, 2)? * q * q)?
            }
            NumericsRow::TwoThirdDilog => {
                let l3 = crate::finlog::legendre(p as i64, 3);
                rat(l3, 9)? * k.bernoulli_pm2_third - rat(1, 2)? * q3 * q3
            }
            NumericsRow::TwoMinusTwoLog => {
                let q = q2.reduce_to(1);
                -(int(4) * q2) + times_p(rat1(4, 1)? * q * q)?
            }
            NumericsRow::TwoMinusTwoDilog => -(int(2) * q2 * q2),
        })
    }

    /// Brute-force left side at `p`.
    pub fn brute_force(&self, p: u64) -> Result<ResidueInt> {
        let spec = self.spec();
        let x = ModulusCtx::new(p, spec.e)?.from_rational(spec.x)?;
        binomial_sum(spec.r, x, spec.d, spec.range)
    }

    pub fn check(&self, k: &ConstantsTable) -> Result<CongruenceReport> {
        let spec = self.spec();
        let lhs = self.brute_force(k.p)?;
        let rhs = self.closed_form(k)?;
        let inst = Instance::new(spec.r as u32, k.p, Some(spec.x));
        Ok(CongruenceReport::compare(
            TheoremId::Numerics(*self),
            inst,
            lhs,
            rhs,
        ))
    }
}

/// Every admissible row at `p`.
pub fn check_numerics_table(p: u64) -> Result<Vec<CongruenceReport>> {
    let k = ConstantsTable::new(p)?;
    NUMERICS_ROWS
        .iter()
        .filter(|row| row.admissible(p))
        .map(|row| row.check(&k))
        .collect()
}
