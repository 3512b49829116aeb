//! Dense univariate polynomials over `Z/p^e`.
//!
//! Coefficients are stored low degree first with trailing zeros trimmed, so
//! the zero polynomial is the empty vector. Division is available whenever
//! the divisor's leading coefficient is a unit; the gcd family requires
//! `e = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ModulusCtx, ResidueInt};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: ModulusCtx,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(ctx: ModulusCtx) -> Self {
        Poly {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: ModulusCtx) -> Self {
        Poly::constant(ctx.one())
    }

    pub fn constant(c: ResidueInt) -> Self {
        Poly::from_raw(c.ctx(), vec![c.value()])
    }

    /// `c^n`.
    pub fn monomial(ctx: ModulusCtx, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1 % ctx.modulus();
        Poly::from_raw(ctx, coeffs)
    }

    /// `c - a`.
    pub fn linear(a: ResidueInt) -> Self {
        Poly::from_raw(a.ctx(), vec![(-a).value(), 1])
    }

    pub fn from_residues(ctx: ModulusCtx, coeffs: &[ResidueInt]) -> Self {
        Poly::from_raw(ctx, coeffs.iter().map(|c| c.value()).collect())
    }

    pub fn from_i64s(ctx: ModulusCtx, coeffs: &[i64]) -> Self {
        Poly::from_raw(
            ctx,
            coeffs.iter().map(|&c| ctx.from_i64(c).value()).collect(),
        )
    }

    pub(crate) fn from_raw(ctx: ModulusCtx, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= ctx.modulus();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.ctx
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> ResidueInt {
        self.ctx.from_u64(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<ResidueInt> {
        self.coeffs.iter().map(|&c| self.ctx.from_u64(c)).collect()
    }

    pub fn leading(&self) -> ResidueInt {
        self.ctx.from_u64(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn eval(&self, at: ResidueInt) -> ResidueInt {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, &c| acc * at + self.ctx.from_u64(c))
    }

    pub fn scale(&self, k: ResidueInt) -> Poly {
        Poly::from_raw(
            self.ctx,
            self.coeffs
                .iter()
                .map(|&c| self.ctx.mul_raw(c, k.value()))
                .collect(),
        )
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.ctx.mul_raw(c, i as u64 % self.ctx.modulus()))
            .collect();
        Poly::from_raw(self.ctx, coeffs)
    }

    pub fn reduce_to(&self, e: u32) -> Poly {
        let ctx = self.ctx.with_precision(e).expect("same prime");
        assert!(e <= self.ctx.e());
        Poly::from_raw(ctx, self.coeffs.clone())
    }

    /// Reinterprets the coefficients (as integers in `[0, p^e)`) at another precision.
    pub fn recast(&self, ctx: ModulusCtx) -> Poly {
        assert_eq!(ctx.p(), self.ctx.p());
        Poly::from_raw(ctx, self.coeffs.clone())
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a unit.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        assert_eq!(self.ctx, d.ctx, "mixed moduli");
        let dd = d.degree().ok_or(Error::NotAUnit)?;
        let lead_inv = self.ctx.inv_raw(*d.coeffs.last().unwrap())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.ctx), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = self.ctx.mul_raw(rem[i], lead_inv);
            quot[i - dd] = q;
            if q == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = self.ctx.sub_raw(rem[k], self.ctx.mul_raw(q, dc));
            }
        }
        rem.truncate(dd);
        Ok((
            Poly::from_raw(self.ctx, quot),
            Poly::from_raw(self.ctx, rem),
        ))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Scales so the leading coefficient is 1.
    pub fn make_monic(&self) -> Result<MonicPoly> {
        let inv = self.leading().inv()?;
        MonicPoly::new(self.scale(inv))
    }

    /// `self^n mod m`.
    pub fn powmod(&self, mut n: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.ctx).rem(m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            n >>= 1;
            if n > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    fn require_field(&self) {
        assert_eq!(self.ctx.e(), 1, "gcd computations need a prime modulus");
    }

    /// Monic gcd over `F_p`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.require_field();
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor over a field");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.make_monic().expect("field").into_poly()
        }
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic, over `F_p`.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.require_field();
        let ctx = self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
        let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor over a field");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv().expect("field");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.ctx.modulus())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*c")?,
                _ => write!(f, "{c}*c^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ctx, rhs.ctx, "mixed moduli");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.ctx.add_raw(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    rhs.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Poly::from_raw(self.ctx, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_raw(
            self.ctx,
            self.coeffs
                .iter()
                .map(|&c| self.ctx.sub_raw(0, c))
                .collect(),
        )
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ctx, rhs.ctx, "mixed moduli");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.ctx);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = self.ctx.add_raw(out[i + j], self.ctx.mul_raw(a, b));
            }
        }
        Poly::from_raw(self.ctx, out)
    }
}

/// A polynomial whose leading coefficient is exactly 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    pub fn new(p: Poly) -> Result<Self> {
        if p.is_zero() || p.leading().value() != 1 % p.ctx().modulus() {
            return Err(Error::InvalidParameters(format!("{p:?} is not monic")));
        }
        Ok(MonicPoly(p))
    }

    pub fn one(ctx: ModulusCtx) -> Self {
        MonicPoly(Poly::one(ctx))
    }

    /// `prod (c - a_i)`.
    pub fn from_roots(ctx: ModulusCtx, roots: &[ResidueInt]) -> Self {
        let p = roots
            .iter()
            .fold(Poly::one(ctx), |acc, &a| &acc * &Poly::linear(a));
        MonicPoly(p)
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("monic polynomials are nonzero")
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.0.ctx()
    }

    pub fn coeff(&self, i: usize) -> ResidueInt {
        self.0.coeff(i)
    }

    pub fn eval(&self, at: ResidueInt) -> ResidueInt {
        self.0.eval(at)
    }

    pub fn reduce_to(&self, e: u32) -> MonicPoly {
        MonicPoly(self.0.reduce_to(e))
    }

    pub fn mul(&self, other: &MonicPoly) -> MonicPoly {
        MonicPoly(&self.0 * &other.0)
    }
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32) -> ModulusCtx {
        ModulusCtx::new(p, e).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let c = ctx(7, 2);
        let a = Poly::from_i64s(c, &[3, -1, 4, 1, -5, 9]);
        let d = Poly::from_i64s(c, &[2, 0, 3]);
        let (q, r) = a.divrem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
        let bad = Poly::from_i64s(c, &[1, 7]);
        assert_eq!(a.divrem(&bad), Err(Error::NotAUnit));
    }

    #[test]
    fn xgcd_bezout() {
        let c = ctx(11, 1);
        let a = Poly::from_i64s(c, &[1, 2, 0, 1]);
        let b = Poly::from_i64s(c, &[-3, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn from_roots_evaluates_to_zero() {
        let c = ctx(5, 3);
        let roots = [c.from_u64(7), c.from_u64(33), c.from_u64(100)];
        let f = MonicPoly::from_roots(c, &roots);
        assert_eq!(f.degree(), 3);
        for r in roots {
            assert!(f.eval(r).is_zero());
        }
    }
}
