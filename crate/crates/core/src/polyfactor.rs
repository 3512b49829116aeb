//! The root polynomial `(c-1)^r + x^{-1} c^{r-1}` and its factorization.
//!
//! Its roots `c_1, ..., c_r` satisfy `x(c-1)^r + c^{r-1} = x prod (c - c_i)`.
//! The polynomial is factored over `F_p` (distinct-degree, then randomized
//! equal-degree splitting) and the coprime factorization is Hensel-lifted to
//! `Z/p^e`. The double-root value `x_0 = (r-1)^{r-1}/r^r` has its own path.

use rand::Rng;

use crate::error::{Error, Result};
use crate::modring::{ModulusCtx, MonicPoly, Poly, RationalInput, ResidueInt};

/// Parameters of one root polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootPolySpec {
    pub r: usize,
    pub x: RationalInput,
    pub ctx: ModulusCtx,
}

/// Degeneracy class of `x` for a given `r`, decided modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XClass {
    Nondegenerate,
    ZeroX,
    /// `r^r x = (r-1)^{r-1}`: the discriminant vanishes and `1-r` is a double root.
    DoubleRootX0,
}

/// Irreducible-mod-`p` monic factors with multiplicities, at some precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    factors: Vec<MonicPoly>,
    multiplicities: Vec<usize>,
    degenerate: bool,
    ctx: ModulusCtx,
}

impl FactorSet {
    pub fn new(
        ctx: ModulusCtx,
        factors: Vec<MonicPoly>,
        multiplicities: Vec<usize>,
        degenerate: bool,
    ) -> Self {
        assert_eq!(factors.len(), multiplicities.len());
        FactorSet {
            factors,
            multiplicities,
            degenerate,
            ctx,
        }
    }

    fn squarefree(ctx: ModulusCtx, factors: Vec<MonicPoly>) -> Self {
        let n = factors.len();
        FactorSet::new(ctx, factors, vec![1; n], false)
    }

    pub fn factors(&self) -> &[MonicPoly] {
        &self.factors
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.ctx
    }

    /// `sum multiplicity * degree`.
    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .zip(&self.multiplicities)
            .map(|(f, m)| f.degree() * m)
            .sum()
    }

    /// Sorted factor degrees, one entry per factor and multiplicity.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(f, &m)| std::iter::repeat_n(f.degree(), m))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn is_all_linear(&self) -> bool {
        self.factors.iter().all(|f| f.degree() == 1)
    }

    /// Product of `factor^multiplicity`.
    pub fn product(&self) -> MonicPoly {
        let mut acc = MonicPoly::one(self.ctx);
        for (f, &m) in self.factors.iter().zip(&self.multiplicities) {
            for _ in 0..m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn reduce_to(&self, e: u32) -> FactorSet {
        FactorSet {
            factors: self.factors.iter().map(|f| f.reduce_to(e)).collect(),
            multiplicities: self.multiplicities.clone(),
            degenerate: self.degenerate,
            ctx: self.ctx.with_precision(e).expect("same prime"),
        }
    }
}

/// `(r-1)^{r-1} / r^r` with `0^0 = 1`.
pub fn double_root_x0(r: usize) -> RationalInput {
    assert!((1..=12).contains(&r), "r = {r} outside the supported range");
    let num = (r as i64 - 1).pow(r as u32 - 1);
    let den = (r as i64).pow(r as u32);
    RationalInput::new(num, den)
}

/// `(c-1)^r + x^{-1} c^{r-1}` for a residue `x`.
pub fn build_root_poly_residue(r: usize, x: ResidueInt) -> Result<MonicPoly> {
    assert!(r >= 1);
    let ctx = x.ctx();
    if !x.is_unit() {
        return Err(Error::XNotUnit);
    }
    let mut binom = 1u64;
    let mut coeffs = vec![ctx.zero(); r + 1];
    // (c-1)^r = sum binom(r,k) c^k (-1)^{r-k}
    for (k, slot) in coeffs.iter_mut().enumerate() {
        let sign = if (r - k).is_multiple_of(2) { 1 } else { -1 };
        *slot = ctx.from_i64(sign * binom as i64);
        binom = binom * (r - k) as u64 / (k as u64 + 1);
    }
    coeffs[r - 1] += x.inv()?;
    MonicPoly::new(Poly::from_residues(ctx, &coeffs))
}

pub fn build_root_poly(spec: &RootPolySpec) -> Result<MonicPoly> {
    let x = spec.ctx.from_rational(spec.x)?;
    build_root_poly_residue(spec.r, x)
}

/// Classifies a residue `x` (any precision; only its image mod `p` matters).
pub fn classify_residue(r: usize, x: ResidueInt) -> XClass {
    let ctx = x.ctx().with_precision(1).expect("same prime");
    let x = x.reduce_to(1);
    if x.is_zero() {
        return XClass::ZeroX;
    }
    let lhs = ctx.from_u64(r as u64).pow(r as u64) * x;
    let rhs = ctx.from_u64(r as u64 - 1).pow(r as u64 - 1);
    if lhs == rhs {
        XClass::DoubleRootX0
    } else {
        XClass::Nondegenerate
    }
}

/// Classifies a rational `x` modulo `p`; a non-p-integral `x` is an error.
pub fn classify_x(r: usize, x: RationalInput, p: u64) -> Result<XClass> {
    let ctx = ModulusCtx::new(p, 1)?;
    Ok(classify_residue(r, ctx.from_rational(x)?))
}

/// Canonical order: by degree, then by coefficient vector.
fn sort_factors(factors: &mut [MonicPoly]) {
    factors.sort_by_key(|f| {
        (
            f.degree(),
            f.as_poly()
                .coeffs()
                .iter()
                .map(|c| c.value())
                .collect::<Vec<_>>(),
        )
    });
}

/// Complete factorization of a squarefree monic polynomial over `F_p`.
pub fn factor_mod_p<R: Rng + ?Sized>(f: &MonicPoly, rng: &mut R) -> Result<FactorSet> {
    let ctx = f.ctx();
    if ctx.e() != 1 {
        return Err(Error::InvalidParameters(
            "factor_mod_p expects e = 1".into(),
        ));
    }
    let fp = f.as_poly();
    if fp.degree() == Some(0) {
        return Ok(FactorSet::squarefree(ctx, Vec::new()));
    }
    if fp.gcd(&fp.derivative()) != Poly::one(ctx) {
        return Err(Error::NotSquarefree);
    }
    let p = ctx.p();
    let x = Poly::monomial(ctx, 1);
    let mut rest = fp.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(p, &rest)?;
        let g = (&h - &x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            equal_degree_split(&g, d, rng, &mut out)?;
            rest = rest.divrem(&g)?.0;
            h = h.rem(&rest)?;
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.make_monic()?);
    }
    sort_factors(&mut out);
    Ok(FactorSet::squarefree(ctx, out))
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor-Zassenhaus, odd `p`).
fn equal_degree_split<R: Rng + ?Sized>(
    g: &Poly,
    d: usize,
    rng: &mut R,
    out: &mut Vec<MonicPoly>,
) -> Result<()> {
    let n = g.degree().expect("nonzero");
    if n == d {
        out.push(g.make_monic()?);
        return Ok(());
    }
    let ctx = g.ctx();
    let p = ctx.p();
    let one = Poly::one(ctx);
    loop {
        let a = Poly::from_raw(ctx, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        // a^{(p^d - 1)/2} = (a^{1 + p + ... + p^{d-1}})^{(p-1)/2}
        let mut frob = a.clone();
        let mut norm = a.clone();
        for _ in 1..d {
            frob = frob.powmod(p, g)?;
            norm = (&norm * &frob).rem(g)?;
        }
        let b = norm.powmod((p - 1) / 2, g)?;
        let h = (&b - &one).gcd(g);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let q = g.divrem(&h)?.0;
            equal_degree_split(&h, d, rng, out)?;
            equal_degree_split(&q, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Drops the p-adic digits at and above `p^prec` while staying in the ambient context.
fn truncate(p: &Poly, prec: u32) -> Poly {
    if prec >= p.ctx().e() {
        return p.clone();
    }
    p.reduce_to(prec).recast(p.ctx())
}

/// Quadratic Hensel lifting of `f = g h` (all monic) from `mod p` to `mod p^E`,
/// with `E = f.ctx().e()`; `g`, `h` are given at precision 1.
fn lift_pair(f: &Poly, g1: &Poly, h1: &Poly) -> Result<(Poly, Poly)> {
    let ctx = f.ctx();
    let (d, s1, t1) = g1.xgcd(h1);
    if d != Poly::one(g1.ctx()) {
        return Err(Error::NotCoprime);
    }
    let (mut g, mut h) = (g1.recast(ctx), h1.recast(ctx));
    let (mut s, mut t) = (s1.recast(ctx), t1.recast(ctx));
    let one = Poly::one(ctx);
    let mut prec = 1;
    while prec < ctx.e() {
        let next = (2 * prec).min(ctx.e());
        let err = truncate(&(f - &(&g * &h)), next);
        let (q, r) = (&s * &err).divrem(&h)?;
        let g_new = truncate(&(&(&g + &(&t * &err)) + &(&q * &g)), next);
        let h_new = truncate(&(&h + &r), next);
        let b = truncate(&(&(&(&s * &g_new) + &(&t * &h_new)) - &one), next);
        let (c, dd) = (&s * &b).divrem(&h_new)?;
        s = truncate(&(&s - &dd), next);
        t = truncate(&(&(&t - &(&t * &b)) - &(&c * &g_new)), next);
        g = g_new;
        h = h_new;
        prec = next;
    }
    Ok((g, h))
}

fn lift_all(f: &Poly, factors: &[MonicPoly]) -> Result<Vec<MonicPoly>> {
    match factors.len() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![MonicPoly::new(f.clone())?]),
        n => {
            let (left, right) = factors.split_at(n / 2);
            let ctx1 = factors[0].ctx();
            let prod = |fs: &[MonicPoly]| fs.iter().fold(Poly::one(ctx1), |a, b| &a * b.as_poly());
            let (g, h) = lift_pair(f, &prod(left), &prod(right))?;
            let mut out = lift_all(&g, left)?;
            out.extend(lift_all(&h, right)?);
            Ok(out)
        }
    }
}

/// Lifts a pairwise-coprime factorization mod `p` of `f` to the precision of `f`.
///
/// `target_e` must equal `f.ctx().e()`; the lifted factors reduce to the
/// originals mod `p` and multiply to `f` exactly.
pub fn hensel_lift(fs: &FactorSet, f: &MonicPoly, target_e: u32) -> Result<FactorSet> {
    if fs.ctx().e() != 1 || f.ctx().e() != target_e || f.ctx().p() != fs.ctx().p() {
        return Err(Error::InvalidParameters(
            "hensel_lift precision mismatch".into(),
        ));
    }
    if fs.multiplicities().iter().any(|&m| m != 1) {
        return Err(Error::NotCoprime);
    }
    if fs.product() != f.reduce_to(1) {
        return Err(Error::InvalidParameters(
            "factors do not multiply to f mod p".into(),
        ));
    }
    if target_e == 1 {
        return Ok(fs.clone());
    }
    let lifted = lift_all(f.as_poly(), fs.factors())?;
    let out = FactorSet::squarefree(f.ctx(), lifted);
    if &out.product() != f {
        return Err(Error::NotCoprime);
    }
    Ok(out)
}

/// Factors mod `p` and lifts to the precision of `f`.
pub fn factor_and_lift<R: Rng + ?Sized>(f: &MonicPoly, rng: &mut R) -> Result<FactorSet> {
    let fs = factor_mod_p(&f.reduce_to(1), rng)?;
    hensel_lift(&fs, f, f.ctx().e())
}

/// The root polynomial at `x_0`, split as `(c - (1-r))^2` times a squarefree cofactor.
#[derive(Clone, Debug)]
pub struct DoubleRootSplit {
    pub double_root: ResidueInt,
    pub cofactor: FactorSet,
}

impl DoubleRootSplit {
    /// Factor set of the whole root polynomial, double root included.
    pub fn full_factor_set(&self) -> FactorSet {
        let ctx = self.cofactor.ctx();
        let mut factors = vec![MonicPoly::new(Poly::linear(self.double_root)).expect("monic")];
        let mut mult = vec![2];
        factors.extend(self.cofactor.factors().iter().cloned());
        mult.extend(self.cofactor.multiplicities().iter().copied());
        FactorSet::new(ctx, factors, mult, true)
    }
}

/// Divides `(c - (1-r))^2` out of the root polynomial at `x_0` and factors the rest.
pub fn split_double_root<R: Rng + ?Sized>(
    r: usize,
    p: u64,
    e: u32,
    rng: &mut R,
) -> Result<DoubleRootSplit> {
    if r < 2 {
        return Err(Error::InvalidParameters("double root needs r > 1".into()));
    }
    if p <= 3 || (r as u64 * (r as u64 - 1)).is_multiple_of(p) || r as u64 >= p {
        return Err(Error::SmallPrime(format!(
            "p = {p} invalid for the x_0 case with r = {r}"
        )));
    }
    let ctx = ModulusCtx::new(p, e)?;
    let f = build_root_poly(&RootPolySpec {
        r,
        x: double_root_x0(r),
        ctx,
    })?;
    let root = ctx.from_i64(1 - r as i64);
    let lin = Poly::linear(root);
    let (q1, r1) = f.as_poly().divrem(&lin)?;
    let (q2, r2) = q1.divrem(&lin)?;
    if !r1.is_zero() || !r2.is_zero() {
        return Err(Error::DegenerateDivisionFailure);
    }
    let cof = MonicPoly::new(q2)?;
    if !cof.eval(root).is_unit() {
        return Err(Error::DegenerateDivisionFailure);
    }
    let cofactor = factor_and_lift(&cof, rng)?;
    Ok(DoubleRootSplit {
        double_root: root,
        cofactor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, e: u32) -> ModulusCtx {
        ModulusCtx::new(p, e).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn roots_by_search(f: &MonicPoly) -> Vec<u64> {
        let ctx = f.ctx();
        (0..ctx.modulus())
            .filter(|&v| f.eval(ctx.from_u64(v)).is_zero())
            .collect()
    }

    #[test]
    fn linear_case() {
        let c = ctx(11, 2);
        let f = build_root_poly(&RootPolySpec {
            r: 1,
            x: RationalInput::integer(3),
            ctx: c,
        })
        .unwrap();
        let root = c.one() - c.from_u64(3).inv().unwrap();
        assert!(f.eval(root).is_zero());
        assert_eq!(f.degree(), 1);
        let fs = factor_mod_p(&f.reduce_to(1), &mut rng()).unwrap();
        assert_eq!(fs.factors(), &[f.reduce_to(1)]);
    }

    #[test]
    fn r3_x2_roots_mod_13() {
        let f = build_root_poly(&RootPolySpec {
            r: 3,
            x: RationalInput::integer(2),
            ctx: ctx(13, 1),
        })
        .unwrap();
        assert_eq!(roots_by_search(&f), vec![6, 7, 9]);
        let fs = factor_mod_p(&f, &mut rng()).unwrap();
        assert_eq!(fs.degree_multiset(), vec![1, 1, 1]);
    }

    #[test]
    fn r3_x2_mod_7_has_quadratic() {
        let f = build_root_poly(&RootPolySpec {
            r: 3,
            x: RationalInput::integer(2),
            ctx: ctx(7, 1),
        })
        .unwrap();
        assert_eq!(roots_by_search(&f), vec![4]);
        let fs = factor_mod_p(&f, &mut rng()).unwrap();
        assert_eq!(fs.degree_multiset(), vec![1, 2]);
        assert_eq!(
            fs.factors()[0].as_poly(),
            &Poly::from_i64s(ctx(7, 1), &[-4, 1])
        );
        assert_eq!(fs.product(), f);
    }

    #[test]
    fn classification() {
        for p in [5, 7, 11, 13, 101] {
            assert_eq!(
                classify_x(3, RationalInput::new(4, 27), p).unwrap(),
                XClass::DoubleRootX0
            );
            assert_eq!(
                classify_x(2, RationalInput::new(1, 4), p).unwrap(),
                XClass::DoubleRootX0
            );
            assert_eq!(
                classify_x(3, RationalInput::integer(0), p).unwrap(),
                XClass::ZeroX
            );
        }
        assert_eq!(
            classify_x(3, RationalInput::integer(2), 7).unwrap(),
            XClass::Nondegenerate
        );
        assert_eq!(
            classify_x(3, RationalInput::integer(2), 5).unwrap(),
            XClass::DoubleRootX0
        );
        assert!(classify_x(3, RationalInput::new(1, 7), 7).is_err());
        assert_eq!(double_root_x0(4), RationalInput::new(27, 256));
    }

    #[test]
    fn not_squarefree_rejected() {
        let c = ctx(7, 1);
        let f = MonicPoly::from_roots(c, &[c.from_u64(2), c.from_u64(2), c.from_u64(3)]);
        assert_eq!(
            factor_mod_p(&f, &mut rng()).unwrap_err(),
            Error::NotSquarefree
        );
    }

    #[test]
    fn hensel_r2_p5() {
        // x = 2: c^2 + c + 1 is irreducible mod 5; the lift is the polynomial itself
        let f = build_root_poly(&RootPolySpec {
            r: 2,
            x: RationalInput::integer(2),
            ctx: ctx(5, 3),
        })
        .unwrap();
        let fs = factor_mod_p(&f.reduce_to(1), &mut rng()).unwrap();
        assert_eq!(fs.degree_multiset(), vec![2]);
        assert_eq!(hensel_lift(&fs, &f, 3).unwrap().product(), f);

        // x = 3: 1 - 4x = 4 is a square, two linear factors
        let f = build_root_poly(&RootPolySpec {
            r: 2,
            x: RationalInput::integer(3),
            ctx: ctx(5, 3),
        })
        .unwrap();
        let fs = factor_mod_p(&f.reduce_to(1), &mut rng()).unwrap();
        assert_eq!(fs.degree_multiset(), vec![1, 1]);
        let lifted = hensel_lift(&fs, &f, 3).unwrap();
        assert_eq!(lifted.product(), f);
        for (a, b) in lifted.factors().iter().zip(fs.factors()) {
            assert_eq!(&a.reduce_to(1), b);
        }
        let found = roots_by_search(&f);
        let mut from_lift: Vec<u64> = lifted
            .factors()
            .iter()
            .map(|g| (-g.coeff(0)).value())
            .collect();
        from_lift.sort_unstable();
        assert_eq!(found, from_lift);
        assert_eq!(hensel_lift(&fs, &f.reduce_to(1), 1).unwrap(), fs);
    }

    #[test]
    fn hensel_consistent_across_precisions() {
        let f3 = build_root_poly(&RootPolySpec {
            r: 5,
            x: RationalInput::new(3, 7),
            ctx: ctx(31, 3),
        })
        .unwrap();
        let l3 = factor_and_lift(&f3, &mut rng()).unwrap();
        let l2 = factor_and_lift(&f3.reduce_to(2), &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(l3.reduce_to(2), l2);
    }

    #[test]
    fn double_root_r3_r4() {
        let s = split_double_root(3, 11, 2, &mut rng()).unwrap();
        assert_eq!(s.double_root.signed(), -2);
        let c = s.double_root.ctx();
        let quarter = c.from_u64(4).inv().unwrap();
        assert_eq!(
            s.cofactor.factors(),
            &[MonicPoly::new(Poly::linear(quarter)).unwrap()]
        );
        let f = build_root_poly(&RootPolySpec {
            r: 3,
            x: RationalInput::new(4, 27),
            ctx: c,
        })
        .unwrap();
        assert_eq!(s.full_factor_set().product(), f);
        assert_eq!(s.full_factor_set().total_degree(), 3);

        // r = 4: cofactor roots (7 +- 4 sqrt(-2))/27, i.e. 27^2 c^2 - 14*27 c + 81 = 0
        let s4 = split_double_root(4, 13, 2, &mut rng()).unwrap();
        assert_eq!(s4.double_root.signed(), -3);
        let c = s4.double_root.ctx();
        let expected = Poly::from_i64s(c, &[81, -14 * 27, 27 * 27])
            .make_monic()
            .unwrap();
        assert_eq!(s4.cofactor.product(), expected);

        let s2 = split_double_root(2, 7, 2, &mut rng()).unwrap();
        assert_eq!(s2.double_root.signed(), -1);
        assert!(s2.cofactor.factors().is_empty());
    }
}
