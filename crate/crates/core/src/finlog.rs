//! Finite polylogarithms `£_s(t) = sum_{k=1}^{p-1} t^k / k^s` and the special
//! constants that closed forms are written in.
//!
//! `£_s` is evaluated in any [`Ring`], so the same code computes `£_1(c)` for
//! a residue and for the class of `c` in a Galois ring. The coefficient table
//! `k^{-s}` is built once per `(p, e)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::modring::{ModulusCtx, RationalInput, ResidueInt, Ring};

/// Order `s` of a finite polylogarithm; only `0, 1, 2` are needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolylogOrder(u8);

impl PolylogOrder {
    pub const ZERO: PolylogOrder = PolylogOrder(0);
    pub const ONE: PolylogOrder = PolylogOrder(1);
    pub const TWO: PolylogOrder = PolylogOrder(2);

    pub fn new(s: u8) -> Result<Self> {
        if s > 2 {
            return Err(Error::InvalidParameters(format!(
                "polylog order {s} not in 0..=2"
            )));
        }
        Ok(PolylogOrder(s))
    }

    pub fn get(&self) -> u8 {
        self.0
    }
}

/// Precomputed `k^{-s} mod p^e` for `1 <= k < p`, `s = 0, 1, 2`.
#[derive(Clone, Debug)]
pub struct PolylogTable {
    ctx: ModulusCtx,
    inv_pows: [Vec<ResidueInt>; 3],
}

impl PolylogTable {
    pub fn new(ctx: ModulusCtx) -> Self {
        let p = ctx.p();
        let ones = vec![ctx.one(); p as usize - 1];
        let inv1: Vec<ResidueInt> = (1..p)
            .map(|k| ctx.from_u64(k).inv().expect("k < p is a unit"))
            .collect();
        let inv2 = inv1.iter().map(|&v| v * v).collect();
        PolylogTable {
            ctx,
            inv_pows: [ones, inv1, inv2],
        }
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.ctx
    }

    /// `k^{-s}` for `1 <= k < p`.
    pub fn weight(&self, s: PolylogOrder, k: u64) -> ResidueInt {
        self.inv_pows[s.0 as usize][k as usize - 1]
    }

    /// `£_s(u)` by a single Horner pass: `p - 2` ring multiplications.
    pub fn pounds<R: Ring>(&self, s: PolylogOrder, u: &R) -> R {
        assert_eq!(
            u.modulus_ctx(),
            self.ctx,
            "polylog table built for another modulus"
        );
        let w = &self.inv_pows[s.0 as usize];
        let mut acc = u.scalar_like(*w.last().expect("p > 2"));
        for &c in w.iter().rev().skip(1) {
            acc = acc * u.clone() + u.scalar_like(c);
        }
        acc * u.clone()
    }
}

/// `£_s(u)`, building the weight table on the fly.
pub fn pounds<R: Ring>(s: PolylogOrder, u: &R) -> R {
    PolylogTable::new(u.modulus_ctx()).pounds(s, u)
}

/// Fermat quotient `q_p(x) = (x^{p-1} - 1)/p`, returned modulo `p^out_precision`.
pub fn fermat_quotient(x: RationalInput, p: u64, out_precision: u32) -> Result<ResidueInt> {
    let ctx = ModulusCtx::new(p, out_precision + 1)?;
    let xr = ctx.from_rational(x)?;
    if !xr.is_unit() {
        return Err(Error::NotAUnit);
    }
    (xr.pow(p - 1) - ctx.one()).divide_by_p_power(1)
}

/// Fermat quotient of a unit residue, returned one digit below its precision.
pub fn fermat_quotient_residue(x: ResidueInt) -> Result<ResidueInt> {
    let ctx = x.ctx();
    (x.pow(ctx.p() - 1) - ctx.one()).divide_by_p_power(1)
}

/// Legendre symbol `(a | q)` for an odd prime `q`.
pub fn legendre(a: i64, q: u64) -> i64 {
    let ctx = ModulusCtx::new(q, 1).expect("odd prime");
    let v = ctx.from_i64(a);
    if v.is_zero() {
        return 0;
    }
    if v.pow((q - 1) / 2).value() == 1 {
        1
    } else {
        -1
    }
}

/// `0!, 1!, ..., (n)!` and their inverses modulo `p`, `n < p`.
fn factorials(ctx: ModulusCtx, n: usize) -> (Vec<ResidueInt>, Vec<ResidueInt>) {
    assert!((n as u64) < ctx.p());
    let mut fact = vec![ctx.one(); n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * ctx.from_u64(i as u64);
    }
    let inv = fact.iter().map(|f| f.inv().expect("n < p")).collect();
    (fact, inv)
}

/// Euler (secant) numbers `E_0, E_2, ..., E_{2n}` modulo `p`, `2n < p`.
///
/// `sum_{k=0}^{n} binom(2n, 2k) E_{2k} = 0` for `n >= 1`, `E_0 = 1`.
pub fn euler_numbers_mod_p(p: u64, n: usize) -> Vec<ResidueInt> {
    let ctx = ModulusCtx::new(p, 1).expect("odd prime");
    let (fact, inv) = factorials(ctx, 2 * n);
    let binom = |a: usize, b: usize| fact[a] * inv[b] * inv[a - b];
    let mut e = vec![ctx.one()];
    for m in 1..=n {
        let s = (0..m).fold(ctx.zero(), |acc, k| acc + binom(2 * m, 2 * k) * e[k]);
        e.push(-s);
    }
    e
}

/// `E_{p-3} mod p`.
pub fn euler_pm3(p: u64) -> Result<ResidueInt> {
    if p <= 3 {
        return Err(Error::SmallPrime(format!("E_(p-3) needs p > 3, got {p}")));
    }
    Ok(*euler_numbers_mod_p(p, (p as usize - 3) / 2)
        .last()
        .expect("nonempty"))
}

/// Bernoulli numbers `B_0, ..., B_n` modulo `p` with `B_1 = -1/2`, `n < p - 1`.
pub fn bernoulli_numbers_mod_p(p: u64, n: usize) -> Result<Vec<ResidueInt>> {
    if n as u64 + 1 >= p {
        return Err(Error::InvalidParameters(format!(
            "B_{n} has a p-adic denominator for p = {p}"
        )));
    }
    let ctx = ModulusCtx::new(p, 1)?;
    let (fact, inv) = factorials(ctx, n + 1);
    let binom = |a: usize, b: usize| fact[a] * inv[b] * inv[a - b];
    let mut b = vec![ctx.one()];
    for m in 1..=n {
        let s = (0..m).fold(ctx.zero(), |acc, k| acc + binom(m + 1, k) * b[k]);
        b.push(-(s * ctx.from_u64(m as u64 + 1).inv()?));
    }
    Ok(b)
}

/// Bernoulli polynomial value `B_n(a) = sum_k binom(n,k) B_k a^{n-k}` modulo `p`.
pub fn bernoulli_poly_mod_p(n: usize, a: RationalInput, p: u64) -> Result<ResidueInt> {
    let ctx = ModulusCtx::new(p, 1)?;
    let a = ctx.from_rational(a)?;
    let b = bernoulli_numbers_mod_p(p, n)?;
    let (fact, inv) = factorials(ctx, n);
    Ok((0..=n).fold(ctx.zero(), |acc, k| {
        acc + fact[n] * inv[k] * inv[n - k] * b[k] * a.pow((n - k) as u64)
    }))
}

/// Lucas number `L_n = trace([[1,1],[1,0]]^n)` in `Z/p^e`.
pub fn lucas_number(n: u64, ctx: ModulusCtx) -> ResidueInt {
    type M = [[ResidueInt; 2]; 2];
    let mul = |a: &M, b: &M| -> M {
        let mut o = [[ctx.zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        o
    };
    let mut acc: M = [[ctx.one(), ctx.zero()], [ctx.zero(), ctx.one()]];
    let mut base: M = [[ctx.one(), ctx.one()], [ctx.one(), ctx.zero()]];
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        k >>= 1;
    }
    acc[0][0] + acc[1][1]
}

/// Lucas quotient `q_L = (L_p - 1)/p mod p`.
pub fn lucas_quotient(p: u64) -> Result<ResidueInt> {
    if p == 5 {
        return Err(Error::SmallPrime("q_L is not used for p = 5".into()));
    }
    let ctx = ModulusCtx::new(p, 2)?;
    (lucas_number(p, ctx) - ctx.one()).divide_by_p_power(1)
}

/// Constants that appear in closed forms, computed once per prime.
#[derive(Clone, Debug)]
pub struct ConstantsTable {
    pub p: u64,
    /// `q_p(2)`, `q_p(3)` modulo `p^2`.
    pub qp2: ResidueInt,
    pub qp3: ResidueInt,
    /// `E_{p-3} mod p` (`p > 3`).
    pub euler_pm3: ResidueInt,
    /// `B_{p-2}(1/3) mod p` (`p > 3`).
    pub bernoulli_pm2_third: ResidueInt,
    /// `q_L mod p`; absent for `p = 5`.
    pub lucas_q: Option<ResidueInt>,
}

impl ConstantsTable {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 {
            return Err(Error::SmallPrime(format!(
                "constants table needs p > 3, got {p}"
            )));
        }
        Ok(ConstantsTable {
            p,
            qp2: fermat_quotient(2.into(), p, 2)?,
            qp3: fermat_quotient(3.into(), p, 2)?,
            euler_pm3: euler_pm3(p)?,
            bernoulli_pm2_third: bernoulli_poly_mod_p(p as usize - 2, RationalInput::new(1, 3), p)?,
            lucas_q: if p == 5 {
                None
            } else {
                Some(lucas_quotient(p)?)
            },
        })
    }

    /// `(a | p)`.
    pub fn legendre(&self, a: i64) -> i64 {
        legendre(a, self.p)
    }
}

/// Outcome of one functional-equation family over the sampled arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyOutcome {
    pub name: &'static str,
    pub checked: usize,
    /// Sampled arguments (as residues mod `p^3`) where the congruence failed.
    pub failures: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquationReport {
    pub p: u64,
    pub families: Vec<FamilyOutcome>,
}

impl FunctionalEquationReport {
    pub fn all_passed(&self) -> bool {
        self.families
            .iter()
            .all(|f| f.failures.is_empty() && f.checked > 0)
    }
}

/// Samples units `x` (with `1 - x` a unit) and checks the reflection,
/// `1 - x` and `p`-th power congruences of `£_0`, `£_1`, `£_2`.
pub fn check_functional_equations<R: Rng + ?Sized>(
    p: u64,
    sample_count: usize,
    rng: &mut R,
) -> Result<FunctionalEquationReport> {
    if p <= 3 {
        return Err(Error::SmallPrime(format!(
            "functional equations need p > 3, got {p}"
        )));
    }
    let c1 = ModulusCtx::new(p, 1)?;
    let c2 = ModulusCtx::new(p, 2)?;
    let c3 = ModulusCtx::new(p, 3)?;
    let (t1, t2) = (PolylogTable::new(c1), PolylogTable::new(c2));
    let names = [
        "fe1_s0",
        "fe1_s1",
        "fe1_s2",
        "fe2",
        "pth_power_p2",
        "pth_power_p3",
        "six_orbit",
        "fermat_form",
    ];
    let mut fams: Vec<FamilyOutcome> = names
        .iter()
        .map(|&name| FamilyOutcome {
            name,
            checked: 0,
            failures: Vec::new(),
        })
        .collect();
    let mut record = |idx: usize, ok: bool, x: u64| {
        fams[idx].checked += 1;
        if !ok {
            fams[idx].failures.push(x);
        }
    };
    let mut drawn = 0;
    while drawn < sample_count {
        let x3 = c3.from_u64(rng.gen_range(0..c3.modulus()));
        let x1 = x3.reduce_to(1);
        if x1.is_zero() || x1 == c1.one() {
            continue;
        }
        drawn += 1;
        let raw = x3.value();
        let one1 = c1.one();
        let xinv = x1.inv()?;
        let xp = x1.pow(p);
        for (idx, s) in [PolylogOrder::ZERO, PolylogOrder::ONE, PolylogOrder::TWO]
            .into_iter()
            .enumerate()
        {
            let lhs = xp * t1.pounds(s, &xinv);
            let rhs = t1.pounds(s, &x1);
            let rhs = if s.get() % 2 == 1 { -rhs } else { rhs };
            record(idx, lhs == rhs, raw);
        }
        let l1 = t1.pounds(PolylogOrder::ONE, &x1);
        record(3, t1.pounds(PolylogOrder::ONE, &(one1 - x1)) == l1, raw);

        let x2 = x3.reduce_to(2);
        let one2 = c2.one();
        let lhs2 = (one2 - x2).pow(p);
        let rhs2 = one2
            - x2.pow(p)
            - t2.pounds(PolylogOrder::ONE, &x2)
                .reduce_to(1)
                .times_p_lifted()?;
        record(4, lhs2 == rhs2, raw);

        let one3 = c3.one();
        let lhs3 = (one3 - x3).pow(p);
        let p_l1 = t2.pounds(PolylogOrder::ONE, &x2).times_p_lifted()?;
        let p2_l2 = t1
            .pounds(PolylogOrder::TWO, &(one1 - x1))
            .times_p_lifted()?
            .times_p_lifted()?;
        let rhs3 = one3 - x3.pow(p) - p_l1 - p2_l2;
        record(5, lhs3 == rhs3, raw);

        // x, 1-x, 1/(1-x), x/(x-1), (x-1)/x, 1/x
        let y = one1 - x1;
        let orbit = [
            l1,
            t1.pounds(PolylogOrder::ONE, &y),
            -(y.inv()?.pow(p).inv()? * t1.pounds(PolylogOrder::ONE, &y.inv()?)),
            (x1 - one1).pow(p) * t1.pounds(PolylogOrder::ONE, &(x1 * (x1 - one1).inv()?)),
            -(xp * t1.pounds(PolylogOrder::ONE, &((x1 - one1) * xinv))),
            -(xp * t1.pounds(PolylogOrder::ONE, &xinv)),
        ];
        record(6, orbit.iter().all(|&v| v == l1), raw);

        let qx = fermat_quotient_residue(x2)?;
        let qy = fermat_quotient_residue(one2 - x2)?;
        record(7, l1 == -(x1 * qx) - y * qy, raw);
    }
    Ok(FunctionalEquationReport { p, families: fams })
}
