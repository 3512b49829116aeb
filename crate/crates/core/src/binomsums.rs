//! Truncated binomial sums `sum_{k in range} binom(rk, k) x^k / k^d mod p^e`.
//!
//! Binomial coefficients are tabulated once per `(r, p, e)`. The default
//! table uses exact big integers; for large `rk` a valuation-tracking path
//! keeps `binom(rk, k) = p^v * unit` with the unit reduced mod `p^e`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::modring::{ModulusCtx, ResidueInt};

/// Largest `r * p` for which [`BinomCache::new`] uses exact integers.
pub const EXACT_LIMIT: u64 = 40_000;

/// A half-open interval `[lo, hi)` of summation indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumRange {
    pub r: u32,
    /// `m` for the ranges `A(r, m)`; `0` for the named full and short ranges.
    pub m: u32,
    pub lo: u64,
    pub hi: u64,
}

/// The index sets the congruences sum over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedRange {
    /// `0 <= k < p`
    Full0,
    /// `0 < k < p`
    Full,
    /// `0 < k < p/r`
    Short,
    /// `A(r, m)` including `k = 0` when `m = 1`
    A(u32),
    /// `A(r, m)` without `k = 0`
    AStar(u32),
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// `A(r, m) = [ceil((m-1)p/(r-1)), ceil(mp/r))` for `1 <= m < r`.
pub fn range_a(r: u32, m: u32, p: u64) -> Result<SumRange> {
    if m < 1 || m >= r {
        return Err(Error::InvalidParameters(format!(
            "A(r, m) needs 1 <= m < r, got r = {r}, m = {m}"
        )));
    }
    let (r64, m64) = (r as u64, m as u64);
    Ok(SumRange {
        r,
        m,
        lo: ceil_div((m64 - 1) * p, r64 - 1),
        hi: ceil_div(m64 * p, r64),
    })
}

impl SumRange {
    pub fn named(kind: NamedRange, r: u32, p: u64) -> Result<SumRange> {
        let plain = |lo, hi| SumRange { r, m: 0, lo, hi };
        Ok(match kind {
            NamedRange::Full0 => plain(0, p),
            NamedRange::Full => plain(1, p),
            NamedRange::Short => plain(1, ceil_div(p, r.max(1) as u64)),
            NamedRange::A(m) => range_a(r, m, p)?,
            NamedRange::AStar(m) => {
                let a = range_a(r, m, p)?;
                SumRange {
                    lo: a.lo.max(1),
                    ..a
                }
            }
        })
    }

    pub fn contains(&self, k: u64) -> bool {
        self.lo <= k && k < self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn len(&self) -> u64 {
        self.hi.saturating_sub(self.lo)
    }

    pub fn iter(&self) -> std::ops::Range<u64> {
        self.lo..self.hi
    }
}

/// `binom(rk, k) mod p^e` for `0 <= k < p`.
#[derive(Clone, Debug)]
pub struct BinomCache {
    r: u32,
    ctx: ModulusCtx,
    entries: Vec<ResidueInt>,
}

impl BinomCache {
    /// Exact integers when `r * p <= EXACT_LIMIT`, otherwise the valuation path.
    pub fn new(r: u32, ctx: ModulusCtx) -> Self {
        if r as u64 * ctx.p() <= EXACT_LIMIT {
            Self::exact(r, ctx)
        } else {
            Self::by_valuation(r, ctx)
        }
    }

    /// Exact big-integer products, reduced at the end of each step.
    pub fn exact(r: u32, ctx: ModulusCtx) -> Self {
        let p = ctx.p();
        let r64 = r as u64;
        let modulus = BigUint::from(ctx.modulus());
        let mut cur = BigUint::one();
        let mut entries = Vec::with_capacity(p as usize);
        for k in 0..p {
            entries.push(ctx.from_u64((&cur % &modulus).to_u64().expect("below modulus")));
            if k + 1 == p {
                break;
            }
            // binom(r(k+1), k+1) = binom(rk, k) * prod_{j=1}^{r} (rk+j) / ((k+1) * prod_{j=1}^{r-1} ((r-1)k+j))
            for j in 1..=r64 {
                cur *= r64 * k + j;
            }
            let mut den = BigUint::from(k + 1);
            for j in 1..r64 {
                den *= (r64 - 1) * k + j;
            }
            cur /= den;
        }
        BinomCache { r, ctx, entries }
    }

    /// Tracks `p`-adic valuation and the unit part mod `p^e` separately.
    pub fn by_valuation(r: u32, ctx: ModulusCtx) -> Self {
        let p = ctx.p();
        let r64 = r as u64;
        let split = |mut n: u64| {
            let mut v = 0i64;
            while n.is_multiple_of(p) {
                n /= p;
                v += 1;
            }
            (v, ctx.from_u64(n))
        };
        let mut val = 0i64;
        let mut unit = ctx.one();
        let mut entries = Vec::with_capacity(p as usize);
        for k in 0..p {
            let entry = if val >= ctx.e() as i64 {
                ctx.zero()
            } else {
                unit * ctx.from_u64(p.pow(val as u32))
            };
            entries.push(entry);
            if k + 1 == p {
                break;
            }
            for j in 1..=r64 {
                let (v, u) = split(r64 * k + j);
                val += v;
                unit *= u;
            }
            let mut den = vec![k + 1];
            den.extend((1..r64).map(|j| (r64 - 1) * k + j));
            for d in den {
                let (v, u) = split(d);
                val -= v;
                unit *= u.inv().expect("unit part");
            }
        }
        BinomCache { r, ctx, entries }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.ctx
    }

    /// `binom(rk, k) mod p^e`, `0 <= k < p`.
    pub fn get(&self, k: u64) -> ResidueInt {
        self.entries[k as usize]
    }
}

/// `binom_table(r, p, e)`.
pub fn binom_table(r: u32, p: u64, e: u32) -> Result<BinomCache> {
    Ok(BinomCache::new(r, ModulusCtx::new(p, e)?))
}

/// `sum_{k in range} binom(rk, k) x^k k^{-d}` in the cache's ring.
pub fn lhs_sum(cache: &BinomCache, x: ResidueInt, d: u32, range: &SumRange) -> Result<ResidueInt> {
    let ctx = cache.ctx();
    assert_eq!(x.ctx(), ctx, "x reduced in another modulus");
    if d > 2 {
        return Err(Error::InvalidParameters(format!(
            "weight exponent d = {d} not in 0..=2"
        )));
    }
    if range.is_empty() {
        return Ok(ctx.zero());
    }
    if range.hi > ctx.p() {
        return Err(Error::InvalidParameters(format!(
            "range end {} exceeds p = {}",
            range.hi,
            ctx.p()
        )));
    }
    if d >= 1 && range.contains(0) {
        return Err(Error::ZeroInRange);
    }
    let mut xk = x.pow(range.lo);
    let mut total = ctx.zero();
    for k in range.iter() {
        let mut term = cache.get(k) * xk;
        if d > 0 {
            term *= ctx.from_u64(k).inv()?.pow(d as u64);
        }
        total += term;
        xk *= x;
    }
    Ok(total)
}
