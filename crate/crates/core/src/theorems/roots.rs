//! Sums `sum_i F(c_i)` over the roots of the root polynomial.
//!
//! The roots are never computed. Each irreducible factor `g` of the lifted
//! factorization gives a Galois ring `Z/p^e[c]/(g)`, and the sum of `F` over
//! the roots of `g` is the trace of multiplication by `F(c)` there. When every
//! factor is linear the same terms can also be evaluated at explicit roots,
//! which is how the trace path is cross-checked.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finlog::{PolylogOrder, PolylogTable};
use crate::modring::{
    GaloisElt, GaloisRing, ModulusCtx, MonicPoly, RationalInput, ResidueInt, Ring,
};
use crate::polyfactor::{
    build_root_poly_residue, classify_residue, factor_and_lift, split_double_root, FactorSet,
    XClass,
};

pub mod terms {
    //! Summands `F(c)` written once for any [`Ring`].

    use super::*;

    /// A function of one root, evaluated in whatever ring holds the root.
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    pub enum RootTerm {
        /// `c`
        Identity,
        /// `c^p`
        CPowP,
        /// `(1-c)^p`
        OneMinusCPowP,
        /// `1/(1-c)`
        InvOneMinusC,
        /// `1/(r-1+c)`
        InvShiftedC,
        /// `£_1(c)`
        Log1,
        /// `£_2(c)`
        Dilog,
        /// `£_2(1-c)`
        DilogOneMinus,
        /// `£_1(c)/(1-c)^p`
        Log1OverOneMinusPowP,
        /// `(c - c^p)/(r-1+c)`
        PlainFull,
        /// `(c - c^p)/((1-c^p)(r-1+c))`
        PlainShort,
        /// `(c/(c-1))^p`, the `p`-th power of `1/z`
        ZInvPowP,
        /// `1/(1-c)^p`
        InvOneMinusCPowP,
        /// `c^p/(c-1)^p`
        CPowPOverCMinusOnePowP,
        /// `c^{-p}`
        CInvPowP,
        /// `(1-1/c)^p`
        OneMinusCInvPowP,
        /// `(c-1)(r - (r-1)c^p - r(1-c)^p)/(r-1+c)`
        PlainWithZeroModP2,
        /// `r(r-1 - (r-1)c^p - r(1-c)^p)/(r-1+c)`
        PlainModP2,
        /// `((c-1)/(r-1+c))(c^p + r p £_1(c))`
        DoubleRootCofactor,
    }

    impl RootTerm {
        pub const ALL: [RootTerm; 19] = [
            RootTerm::Identity,
            RootTerm::CPowP,
            RootTerm::OneMinusCPowP,
            RootTerm::InvOneMinusC,
            RootTerm::InvShiftedC,
            RootTerm::Log1,
            RootTerm::Dilog,
            RootTerm::DilogOneMinus,
            RootTerm::Log1OverOneMinusPowP,
            RootTerm::PlainFull,
            RootTerm::PlainShort,
            RootTerm::ZInvPowP,
            RootTerm::InvOneMinusCPowP,
            RootTerm::CPowPOverCMinusOnePowP,
            RootTerm::CInvPowP,
            RootTerm::OneMinusCInvPowP,
            RootTerm::PlainWithZeroModP2,
            RootTerm::PlainModP2,
            RootTerm::DoubleRootCofactor,
        ];

        /// `F(c)` for a root `c` of the degree-`r` root polynomial.
        pub fn eval<R: Ring>(&self, r: usize, c: &R, table: &PolylogTable) -> Result<R> {
            let p = c.modulus_ctx().p();
            let r_ = c.int_like(r as i64);
            let rm1 = c.int_like(r as i64 - 1);
            let one = c.one_like();
            let cp = || c.pow_u64(p);
            let omc_p = || (one.clone() - c.clone()).pow_u64(p);
            let shifted = || rm1.clone() + c.clone();
            let nonunit = |e: Error| {
                if e == Error::NotAUnit {
                    Error::NonUnitDenominator
                } else {
                    e
                }
            };
            Ok(match self {
                RootTerm::Identity => c.clone(),
                RootTerm::CPowP => cp(),
                RootTerm::OneMinusCPowP => omc_p(),
                RootTerm::InvOneMinusC => (one.clone() - c.clone()).try_inv()?,
                RootTerm::InvShiftedC => shifted().try_inv()?,
                RootTerm::Log1 => table.pounds(PolylogOrder::ONE, c),
                RootTerm::Dilog => table.pounds(PolylogOrder::TWO, c),
                RootTerm::DilogOneMinus => {
                    table.pounds(PolylogOrder::TWO, &(one.clone() - c.clone()))
                }
                RootTerm::Log1OverOneMinusPowP => {
                    table.pounds(PolylogOrder::ONE, c).try_div(&omc_p())?
                }
                RootTerm::PlainFull => (c.clone() - cp()).try_div(&shifted())?,
                RootTerm::PlainShort => {
                    let den = (one.clone() - cp()) * shifted();
                    (c.clone() - cp()).try_div(&den).map_err(nonunit)?
                }
                RootTerm::ZInvPowP => c.try_div(&(c.clone() - one.clone()))?.pow_u64(p),
                RootTerm::InvOneMinusCPowP => omc_p().try_inv()?,
                RootTerm::CPowPOverCMinusOnePowP => {
                    cp().try_div(&(c.clone() - one.clone()).pow_u64(p))?
                }
                RootTerm::CInvPowP => c.try_inv()?.pow_u64(p),
                RootTerm::OneMinusCInvPowP => (one.clone() - c.try_inv()?).pow_u64(p),
                RootTerm::PlainWithZeroModP2 => {
                    let inner = r_.clone() - rm1.clone() * cp() - r_.clone() * omc_p();
                    ((c.clone() - one.clone()) * inner).try_div(&shifted())?
                }
                RootTerm::PlainModP2 => {
                    let inner = rm1.clone() - rm1.clone() * cp() - r_.clone() * omc_p();
                    (r_.clone() * inner).try_div(&shifted())?
                }
                RootTerm::DoubleRootCofactor => {
                    let rp = c.int_like(r as i64 * p as i64);
                    let lead = (c.clone() - one.clone()).try_div(&shifted())?;
                    lead * (cp() + rp * table.pounds(PolylogOrder::ONE, c))
                }
            })
        }
    }
}

use terms::RootTerm;

/// The lifted factorization of one root polynomial, with its Galois rings at
/// every precision up to the lift precision.
#[derive(Clone, Debug)]
pub struct RootSums {
    r: usize,
    x: ResidueInt,
    factors: FactorSet,
    /// `levels[e-1]`: one ring per factor with its multiplicity.
    levels: Vec<Vec<(Arc<GaloisRing>, usize)>>,
    tables: Vec<PolylogTable>,
}

fn factor_seed(r: usize, x: ResidueInt) -> u64 {
    (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ x.value() ^ x.ctx().p().rotate_left(32)
}

impl RootSums {
    /// Factors and lifts the root polynomial for a nondegenerate `x` mod `p^e`.
    pub fn new(r: usize, x: RationalInput, p: u64, e: u32) -> Result<Self> {
        let ctx = ModulusCtx::new(p, e)?;
        let xr = ctx.from_rational(x).map_err(|err| match err {
            Error::DenominatorNotUnit { .. } => Error::NonUnitDenominator,
            other => other,
        })?;
        Self::from_residue(r, xr)
    }

    /// As [`RootSums::new`] with `x` already reduced; the precision is `x`'s.
    pub fn from_residue(r: usize, x: ResidueInt) -> Result<Self> {
        if r == 0 || r as u64 >= x.ctx().p() {
            return Err(Error::SmallPrime(format!(
                "need 1 <= r < p, got r = {r}, p = {}",
                x.ctx().p()
            )));
        }
        match classify_residue(r, x) {
            XClass::ZeroX => return Err(Error::DegenerateX("x = 0 mod p")),
            XClass::DoubleRootX0 => return Err(Error::DegenerateX("x = x_0 mod p")),
            XClass::Nondegenerate => {}
        }
        let f = build_root_poly_residue(r, x)?;
        let mut rng = ChaCha8Rng::seed_from_u64(factor_seed(r, x));
        let fs = factor_and_lift(&f, &mut rng)?;
        Ok(Self::from_factor_set(r, x, fs))
    }

    /// The squarefree cofactor left after removing the double root `1-r` at `x_0`.
    pub fn double_root_cofactor(r: usize, p: u64, e: u32) -> Result<(Self, ResidueInt)> {
        let mut rng = ChaCha8Rng::seed_from_u64(factor_seed(r, ModulusCtx::new(p, 1)?.zero()));
        let split = split_double_root(r, p, e, &mut rng)?;
        let ctx = split.cofactor.ctx();
        let x0 = ctx.from_rational(crate::polyfactor::double_root_x0(r))?;
        Ok((
            Self::from_factor_set(r, x0, split.cofactor),
            split.double_root,
        ))
    }

    fn from_factor_set(r: usize, x: ResidueInt, factors: FactorSet) -> Self {
        let e_max = factors.ctx().e();
        let mut levels = Vec::new();
        let mut tables = Vec::new();
        for e in 1..=e_max {
            let fs = factors.reduce_to(e);
            levels.push(
                fs.factors()
                    .iter()
                    .zip(fs.multiplicities())
                    .map(|(g, &m)| (GaloisRing::new(g.clone()), m))
                    .collect(),
            );
            tables.push(PolylogTable::new(fs.ctx()));
        }
        RootSums {
            r,
            x,
            factors,
            levels,
            tables,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> u64 {
        self.x.ctx().p()
    }

    /// Precision the factorization was lifted to.
    pub fn precision(&self) -> u32 {
        self.x.ctx().e()
    }

    pub fn ctx(&self, e: u32) -> ModulusCtx {
        self.check_level(e);
        self.x.ctx().with_precision(e).expect("same prime")
    }

    pub fn x(&self, e: u32) -> ResidueInt {
        self.check_level(e);
        self.x.reduce_to(e)
    }

    pub fn factor_set(&self) -> &FactorSet {
        &self.factors
    }

    pub fn polylog_table(&self, e: u32) -> &PolylogTable {
        self.check_level(e);
        &self.tables[e as usize - 1]
    }

    fn check_level(&self, e: u32) {
        assert!(
            (1..=self.precision()).contains(&e),
            "precision {e} requested from roots lifted to {}",
            self.precision()
        );
    }

    /// `sum_i F(c_i)` via traces, modulo `p^e`.
    pub fn trace_sum(&self, e: u32, term: RootTerm) -> Result<ResidueInt> {
        let table = self.polylog_table(e);
        let mut acc = self.ctx(e).zero();
        for (ring, mult) in &self.levels[e as usize - 1] {
            let c = GaloisElt::generator(ring);
            let v = term.eval(self.r, &c, table)?;
            acc += v.mult_trace() * self.ctx(e).from_u64(*mult as u64);
        }
        Ok(acc)
    }

    /// The lifted roots with multiplicities, when every factor is linear.
    pub fn explicit_roots(&self, e: u32) -> Option<Vec<(ResidueInt, usize)>> {
        let fs = self.factors.reduce_to(e);
        if !fs.is_all_linear() {
            return None;
        }
        Some(
            fs.factors()
                .iter()
                .zip(fs.multiplicities())
                .map(|(g, &m)| (-g.coeff(0), m))
                .collect(),
        )
    }

    /// `sum_i F(c_i)` evaluated at explicit roots; `None` unless all factors are linear.
    pub fn explicit_sum(&self, e: u32, term: RootTerm) -> Option<Result<ResidueInt>> {
        let roots = self.explicit_roots(e)?;
        let table = self.polylog_table(e);
        let ctx = self.ctx(e);
        Some(roots.iter().try_fold(ctx.zero(), |acc, (c, m)| {
            Ok(acc + term.eval(self.r, c, table)? * ctx.from_u64(*m as u64))
        }))
    }

    /// `prod_i (T - F(c_i))`, modulo `p^e`.
    pub fn charpoly(&self, e: u32, term: RootTerm) -> Result<MonicPoly> {
        let table = self.polylog_table(e);
        let mut acc = MonicPoly::one(self.ctx(e));
        for (ring, mult) in &self.levels[e as usize - 1] {
            let c = GaloisElt::generator(ring);
            let cp = term.eval(self.r, &c, table)?.mult_charpoly();
            for _ in 0..*mult {
                acc = acc.mul(&cp);
            }
        }
        Ok(acc)
    }

    /// Power sums `s_k = sum_i c_i^k` for `0 <= k <= n`, modulo `p^e`.
    pub fn power_sums(&self, e: u32, n: usize) -> Vec<ResidueInt> {
        let ctx = self.ctx(e);
        let mut out = vec![ctx.zero(); n + 1];
        for (ring, mult) in &self.levels[e as usize - 1] {
            let c = GaloisElt::generator(ring);
            let m = ctx.from_u64(*mult as u64);
            let mut pow = GaloisElt::scalar(ring, ctx.one());
            for slot in out.iter_mut() {
                *slot += pow.mult_trace() * m;
                pow = &pow * &c;
            }
        }
        out
    }

    /// `prod_i c_i`, modulo `p^e`.
    pub fn root_product(&self, e: u32) -> ResidueInt {
        let mut acc = self.ctx(e).one();
        for (ring, mult) in &self.levels[e as usize - 1] {
            acc *= GaloisElt::generator(ring).norm().pow(*mult as u64);
        }
        acc
    }
}
