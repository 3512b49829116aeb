//! Exact arithmetic in `Z/p^e` and in unramified extensions `Z/p^e[c]/(g)`.
//!
//! Everything bottoms out in [`ResidueInt`], a reduced machine word tagged with
//! its [`ModulusCtx`]. Polynomials over `Z/p^e` live in [`poly`], and the
//! quotient rings used to reach the roots of the root polynomial live in
//! [`galois`].

pub mod galois;
pub mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

pub use galois::{GaloisElt, GaloisRing};
pub use poly::{MonicPoly, Poly};

/// The ambient ring `Z/p^e` for an odd prime `p` and `1 <= e <= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModulusCtx {
    p: u64,
    e: u32,
    modulus: u64,
}

/// Deterministic trial-division primality test; adequate for `p < 2^21`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl ModulusCtx {
    /// Largest prime whose cube fits below `2^63`.
    pub const MAX_PRIME: u64 = 2_097_143;

    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !(1..=3).contains(&e) {
            return Err(Error::InvalidModulus(format!(
                "precision exponent {e} not in 1..=3"
            )));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidModulus(format!("{p} is not an odd prime")));
        }
        if p > Self::MAX_PRIME {
            return Err(Error::InvalidModulus(format!(
                "{p}^3 does not fit in 63 bits"
            )));
        }
        Ok(ModulusCtx {
            p,
            e,
            modulus: p.pow(e),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime, different precision.
    pub fn with_precision(&self, e: u32) -> Result<Self> {
        ModulusCtx::new(self.p, e)
    }

    pub fn zero(&self) -> ResidueInt {
        ResidueInt {
            value: 0,
            ctx: *self,
        }
    }

    pub fn one(&self) -> ResidueInt {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> ResidueInt {
        ResidueInt {
            value: v % self.modulus,
            ctx: *self,
        }
    }

    pub fn from_i64(&self, v: i64) -> ResidueInt {
        let m = self.modulus as i128;
        ResidueInt {
            value: (v as i128).rem_euclid(m) as u64,
            ctx: *self,
        }
    }

    /// `num * den^{-1} mod p^e`.
    pub fn from_rational(&self, q: RationalInput) -> Result<ResidueInt> {
        let den = self.from_i64(q.den);
        if den.value.is_multiple_of(self.p) {
            return Err(Error::DenominatorNotUnit {
                den: q.den,
                p: self.p,
            });
        }
        Ok(self.from_i64(q.num) * den.inv()?)
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::NotAUnit);
        }
        let (mut old_r, mut r) = (a as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(old_s.rem_euclid(self.modulus as i128) as u64)
    }
}

impl fmt::Display for ModulusCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "Z/{}", self.p)
        } else {
            write!(f, "Z/{}^{}", self.p, self.e)
        }
    }
}

/// A p-integral rational number `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalInput {
    pub num: i64,
    pub den: i64,
}

impl RationalInput {
    /// Normalizes the sign and reduces by the gcd. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num_integer::gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        RationalInput {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn integer(n: i64) -> Self {
        RationalInput { num: n, den: 1 }
    }
}

impl From<i64> for RationalInput {
    fn from(n: i64) -> Self {
        RationalInput::integer(n)
    }
}

impl fmt::Display for RationalInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::str::FromStr for RationalInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse rational '{s}'"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let num: i64 = n.trim().parse().map_err(|_| bad())?;
                let den: i64 = d.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(bad());
                }
                Ok(RationalInput::new(num, den))
            }
            None => Ok(RationalInput::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// An element of `Z/p^e`, always stored reduced in `[0, p^e)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueInt {
    value: u64,
    ctx: ModulusCtx,
}

impl ResidueInt {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.ctx.p)
    }

    pub fn inv(&self) -> Result<ResidueInt> {
        Ok(ResidueInt {
            value: self.ctx.inv_raw(self.value)?,
            ctx: self.ctx,
        })
    }

    pub fn pow(&self, mut n: u64) -> ResidueInt {
        let mut base = self.value;
        let mut acc = 1 % self.ctx.modulus;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.ctx.mul_raw(acc, base);
            }
            base = self.ctx.mul_raw(base, base);
            n >>= 1;
        }
        ResidueInt {
            value: acc,
            ctx: self.ctx,
        }
    }

    /// Image under the reduction `Z/p^e -> Z/p^{e'}`, `e' <= e`.
    pub fn reduce_to(&self, e: u32) -> ResidueInt {
        assert!(
            e <= self.ctx.e,
            "cannot reduce {} to higher precision {e}",
            self.ctx
        );
        let ctx = self.ctx.with_precision(e).expect("same prime");
        ctx.from_u64(self.value)
    }

    /// Exact division by `p^k`, landing in `Z/p^{e-k}`.
    pub fn divide_by_p_power(&self, k: u32) -> Result<ResidueInt> {
        assert!(
            k < self.ctx.e,
            "dividing by p^{k} leaves nothing of {}",
            self.ctx
        );
        let pk = self.ctx.p.pow(k);
        if !self.value.is_multiple_of(pk) {
            return Err(Error::NotDivisible(k));
        }
        let ctx = self.ctx.with_precision(self.ctx.e - k)?;
        Ok(ctx.from_u64(self.value / pk))
    }

    /// `p * a` viewed in `Z/p^{e+1}`; well defined because `a` is known mod `p^e`.
    pub fn times_p_lifted(&self) -> Result<ResidueInt> {
        let ctx = self.ctx.with_precision(self.ctx.e + 1)?;
        Ok(ctx.from_u64(self.value * self.ctx.p))
    }

    /// Representative in `(-p^e/2, p^e/2]`.
    pub fn signed(&self) -> i64 {
        if self.value > self.ctx.modulus / 2 {
            self.value as i64 - self.ctx.modulus as i64
        } else {
            self.value as i64
        }
    }

    fn check_ctx(&self, other: &ResidueInt) {
        assert_eq!(self.ctx, other.ctx, "mixed moduli");
    }
}

impl fmt::Debug for ResidueInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.ctx.modulus)
    }
}

impl fmt::Display for ResidueInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for ResidueInt {
    type Output = ResidueInt;
    fn add(self, rhs: ResidueInt) -> ResidueInt {
        self.check_ctx(&rhs);
        ResidueInt {
            value: self.ctx.add_raw(self.value, rhs.value),
            ctx: self.ctx,
        }
    }
}

impl Sub for ResidueInt {
    type Output = ResidueInt;
    fn sub(self, rhs: ResidueInt) -> ResidueInt {
        self.check_ctx(&rhs);
        ResidueInt {
            value: self.ctx.sub_raw(self.value, rhs.value),
            ctx: self.ctx,
        }
    }
}

impl Mul for ResidueInt {
    type Output = ResidueInt;
    fn mul(self, rhs: ResidueInt) -> ResidueInt {
        self.check_ctx(&rhs);
        ResidueInt {
            value: self.ctx.mul_raw(self.value, rhs.value),
            ctx: self.ctx,
        }
    }
}

impl Neg for ResidueInt {
    type Output = ResidueInt;
    fn neg(self) -> ResidueInt {
        ResidueInt {
            value: self.ctx.sub_raw(0, self.value),
            ctx: self.ctx,
        }
    }
}

impl AddAssign for ResidueInt {
    fn add_assign(&mut self, rhs: ResidueInt) {
        *self = *self + rhs;
    }
}

impl SubAssign for ResidueInt {
    fn sub_assign(&mut self, rhs: ResidueInt) {
        *self = *self - rhs;
    }
}

impl MulAssign for ResidueInt {
    fn mul_assign(&mut self, rhs: ResidueInt) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for ResidueInt {
    fn sum<I: Iterator<Item = ResidueInt>>(mut iter: I) -> ResidueInt {
        let first = iter
            .next()
            .expect("sum of an empty residue iterator has no modulus");
        iter.fold(first, |a, b| a + b)
    }
}

/// Commutative ring operations shared by [`ResidueInt`] and [`GaloisElt`].
///
/// Root-sum terms and finite polylogarithms are written once against this
/// trait, so the same expression can be evaluated on a residue (an explicit
/// root) or on the class of `c` in a factor ring.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn modulus_ctx(&self) -> ModulusCtx;

    /// Embeds a scalar of `Z/p^e` into the ring of `self`.
    fn scalar_like(&self, k: ResidueInt) -> Self;

    fn try_inv(&self) -> Result<Self>;

    fn zero_like(&self) -> Self {
        self.scalar_like(self.modulus_ctx().zero())
    }

    fn one_like(&self) -> Self {
        self.scalar_like(self.modulus_ctx().one())
    }

    fn int_like(&self, k: i64) -> Self {
        self.scalar_like(self.modulus_ctx().from_i64(k))
    }

    fn scale(&self, k: ResidueInt) -> Self {
        self.clone() * self.scalar_like(k)
    }

    fn pow_u64(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn try_div(&self, den: &Self) -> Result<Self> {
        Ok(self.clone() * den.try_inv()?)
    }
}

impl Ring for ResidueInt {
    fn modulus_ctx(&self) -> ModulusCtx {
        self.ctx
    }

    fn scalar_like(&self, k: ResidueInt) -> Self {
        self.check_ctx(&k);
        k
    }

    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }

    fn pow_u64(&self, n: u64) -> Self {
        self.pow(n)
    }
}
