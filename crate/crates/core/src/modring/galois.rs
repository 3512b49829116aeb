//! Quotient rings `Z/p^e[c]/(g)` for a monic `g`.
//!
//! When `g` lifts an irreducible factor of the root polynomial this is the
//! unramified Galois ring holding one orbit of roots, and the trace and
//! characteristic polynomial of multiplication-by-`u` give the sum and the
//! elementary symmetric functions of `u` evaluated at those roots. Nothing
//! here requires `g` to be irreducible, which the tests use to compare
//! against explicit roots of a split `g`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly::{MonicPoly, Poly};
use super::{ModulusCtx, ResidueInt, Ring};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
pub struct GaloisRing {
    modulus: MonicPoly,
    /// `Tr(c^j)` for `j < m`.
    basis_traces: Vec<u64>,
}

impl GaloisRing {
    pub fn new(modulus: MonicPoly) -> Arc<GaloisRing> {
        let basis_traces = newton_power_sums(&modulus);
        Arc::new(GaloisRing {
            modulus,
            basis_traces,
        })
    }

    pub fn modulus(&self) -> &MonicPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.modulus.ctx()
    }

    /// Same modulus polynomial read at a lower precision.
    pub fn reduce_to(&self, e: u32) -> Arc<GaloisRing> {
        GaloisRing::new(self.modulus.reduce_to(e))
    }
}

/// Power sums `p_0, ..., p_{m-1}` of the roots of a monic polynomial by
/// Newton's identities; no divisions are involved.
fn newton_power_sums(g: &MonicPoly) -> Vec<u64> {
    let ctx = g.ctx();
    let m = g.degree();
    // a[i] = coefficient of c^i
    let a: Vec<ResidueInt> = (0..=m).map(|i| g.coeff(i)).collect();
    let mut ps: Vec<ResidueInt> = Vec::with_capacity(m);
    if m == 0 {
        return Vec::new();
    }
    ps.push(ctx.from_u64(m as u64));
    for k in 1..m {
        let mut acc = ctx.from_u64(k as u64) * a[m - k];
        for i in 1..k {
            acc += a[m - i] * ps[k - i];
        }
        ps.push(-acc);
    }
    ps.into_iter().map(|v| v.value()).collect()
}

/// An element of a [`GaloisRing`], stored as `m` coefficients in the basis `1, c, ..., c^{m-1}`.
#[derive(Clone)]
pub struct GaloisElt {
    ring: Arc<GaloisRing>,
    coeffs: Vec<u64>,
}

impl PartialEq for GaloisElt {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring.modulus == other.ring.modulus)
            && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for GaloisElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in {}[c]/({})",
            Poly::from_raw(self.ctx(), self.coeffs.clone()),
            self.ctx(),
            self.ring.modulus
        )
    }
}

impl GaloisElt {
    /// Reduces an arbitrary polynomial modulo the ring's modulus.
    pub fn from_poly(ring: &Arc<GaloisRing>, p: &Poly) -> GaloisElt {
        let r = p.rem(ring.modulus.as_poly()).expect("monic modulus");
        let mut coeffs = r.raw().to_vec();
        coeffs.resize(ring.degree(), 0);
        GaloisElt {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn scalar(ring: &Arc<GaloisRing>, k: ResidueInt) -> GaloisElt {
        assert_eq!(k.ctx(), ring.ctx(), "mixed moduli");
        let mut coeffs = vec![0; ring.degree()];
        if !coeffs.is_empty() {
            coeffs[0] = k.value();
        }
        GaloisElt {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// The class of `c`.
    pub fn generator(ring: &Arc<GaloisRing>) -> GaloisElt {
        GaloisElt::from_poly(ring, &Poly::monomial(ring.ctx(), 1))
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn ctx(&self) -> ModulusCtx {
        self.ring.ctx()
    }

    pub fn coeffs(&self) -> Vec<ResidueInt> {
        let ctx = self.ctx();
        self.coeffs.iter().map(|&c| ctx.from_u64(c)).collect()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_raw(self.ctx(), self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Image in a ring over the same modulus polynomial at lower precision.
    pub fn reduce_into(&self, ring: &Arc<GaloisRing>) -> GaloisElt {
        assert_eq!(ring.modulus, self.ring.modulus.reduce_to(ring.ctx().e()));
        GaloisElt::from_poly(ring, &self.to_poly().reduce_to(ring.ctx().e()))
    }

    fn check_ring(&self, other: &GaloisElt) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring.modulus == other.ring.modulus,
            "operands live in different rings"
        );
    }

    fn mul_ref(&self, other: &GaloisElt) -> GaloisElt {
        self.check_ring(other);
        let ctx = self.ctx();
        let m = self.ring.degree();
        if m == 0 {
            return self.clone();
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = ctx.add_raw(prod[i + j], ctx.mul_raw(a, b));
            }
        }
        let g = self.ring.modulus.as_poly().raw();
        for top in (m..prod.len()).rev() {
            let t = prod[top];
            if t == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &gc) in g.iter().enumerate().take(m) {
                let k = top - m + j;
                prod[k] = ctx.sub_raw(prod[k], ctx.mul_raw(t, gc));
            }
        }
        prod.truncate(m);
        GaloisElt {
            ring: self.ring.clone(),
            coeffs: prod,
        }
    }

    /// Inverse: Bezout modulo `p`, then Newton iteration `b <- b(2 - ab)`.
    pub fn inv(&self) -> Result<GaloisElt> {
        let ctx = self.ctx();
        let ctx1 = ctx.with_precision(1)?;
        let a1 = self.to_poly().reduce_to(1);
        let g1 = self.ring.modulus.as_poly().reduce_to(1);
        if a1.is_zero() {
            return Err(Error::NotAUnit);
        }
        let (d, s, _) = a1.xgcd(&g1);
        if d != Poly::one(ctx1) {
            return Err(Error::NotAUnit);
        }
        let mut b = GaloisElt::from_poly(&self.ring, &s.recast(ctx));
        let two = GaloisElt::scalar(&self.ring, ctx.from_u64(2));
        let mut prec = 1;
        while prec < ctx.e() {
            b = &b * &(&two - &(self * &b));
            prec *= 2;
        }
        debug_assert!((self * &b).is_one());
        Ok(b)
    }

    pub fn is_one(&self) -> bool {
        *self == GaloisElt::scalar(&self.ring, self.ctx().one())
    }

    pub fn pow(&self, n: u64) -> GaloisElt {
        Ring::pow_u64(self, n)
    }

    /// The `m x m` matrix of `v -> u v` in the basis `1, c, ..., c^{m-1}`;
    /// entry `[i][j]` is the coefficient of `c^i` in `u c^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<ResidueInt>> {
        let m = self.ring.degree();
        let ctx = self.ctx();
        let c = GaloisElt::generator(&self.ring);
        let mut col = self.clone();
        let mut mat = vec![vec![ctx.zero(); m]; m];
        for j in 0..m {
            for (i, row) in mat.iter_mut().enumerate() {
                row[j] = ctx.from_u64(col.coeffs[i]);
            }
            col = &col * &c;
        }
        mat
    }

    /// Trace of multiplication-by-`self`: the sum of `self` evaluated at the roots of the modulus.
    pub fn mult_trace(&self) -> ResidueInt {
        let ctx = self.ctx();
        self.coeffs
            .iter()
            .zip(&self.ring.basis_traces)
            .fold(ctx.zero(), |acc, (&u, &t)| {
                acc + ctx.from_u64(ctx.mul_raw(u, t))
            })
    }

    /// Characteristic polynomial of multiplication-by-`self` (Faddeev-LeVerrier).
    ///
    /// The only divisions are by `1..=m`, which are units because `m < p`.
    pub fn mult_charpoly(&self) -> MonicPoly {
        let ctx = self.ctx();
        let m = self.ring.degree();
        let a = self.multiplication_matrix();
        // coefficients c[k] of T^k, c[m] = 1
        let mut c = vec![ctx.zero(); m + 1];
        c[m] = ctx.one();
        let mut mk = vec![vec![ctx.zero(); m]; m];
        for k in 1..=m {
            // M_k = A M_{k-1} + c_{m-k+1} I
            let mut next = mat_mul(&a, &mk, ctx);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += c[m - k + 1];
            }
            mk = next;
            let am = mat_mul(&a, &mk, ctx);
            let tr = (0..m).fold(ctx.zero(), |acc, i| acc + am[i][i]);
            let k_inv = ctx.from_u64(k as u64).inv().expect("k < p is a unit");
            c[m - k] = -(tr * k_inv);
        }
        MonicPoly::new(Poly::from_residues(ctx, &c)).expect("leading coefficient is 1")
    }

    /// `det(mult-by-self)`, the product of the conjugates.
    pub fn norm(&self) -> ResidueInt {
        let cp = self.mult_charpoly();
        let c0 = cp.coeff(0);
        if cp.degree().is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }
}

fn mat_mul(a: &[Vec<ResidueInt>], b: &[Vec<ResidueInt>], ctx: ModulusCtx) -> Vec<Vec<ResidueInt>> {
    let n = a.len();
    let mut out = vec![vec![ctx.zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

impl Add for &GaloisElt {
    type Output = GaloisElt;
    fn add(self, rhs: &GaloisElt) -> GaloisElt {
        self.check_ring(rhs);
        let ctx = self.ctx();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| ctx.add_raw(a, b))
            .collect();
        GaloisElt {
            ring: self.ring.clone(),
            coeffs,
        }
    }
}

impl Sub for &GaloisElt {
    type Output = GaloisElt;
    fn sub(self, rhs: &GaloisElt) -> GaloisElt {
        self.check_ring(rhs);
        let ctx = self.ctx();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| ctx.sub_raw(a, b))
            .collect();
        GaloisElt {
            ring: self.ring.clone(),
            coeffs,
        }
    }
}

impl Mul for &GaloisElt {
    type Output = GaloisElt;
    fn mul(self, rhs: &GaloisElt) -> GaloisElt {
        self.mul_ref(rhs)
    }
}

impl Neg for &GaloisElt {
    type Output = GaloisElt;
    fn neg(self) -> GaloisElt {
        let ctx = self.ctx();
        GaloisElt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|&a| ctx.sub_raw(0, a)).collect(),
        }
    }
}

impl Add for GaloisElt {
    type Output = GaloisElt;
    fn add(self, rhs: GaloisElt) -> GaloisElt {
        &self + &rhs
    }
}

impl Sub for GaloisElt {
    type Output = GaloisElt;
    fn sub(self, rhs: GaloisElt) -> GaloisElt {
        &self - &rhs
    }
}

impl Mul for GaloisElt {
    type Output = GaloisElt;
    fn mul(self, rhs: GaloisElt) -> GaloisElt {
        self.mul_ref(&rhs)
    }
}

impl Neg for GaloisElt {
    type Output = GaloisElt;
    fn neg(self) -> GaloisElt {
        -&self
    }
}

impl Ring for GaloisElt {
    fn modulus_ctx(&self) -> ModulusCtx {
        self.ctx()
    }

    fn scalar_like(&self, k: ResidueInt) -> Self {
        GaloisElt::scalar(&self.ring, k)
    }

    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, e: u32, coeffs: &[i64]) -> Arc<GaloisRing> {
        let ctx = ModulusCtx::new(p, e).unwrap();
        GaloisRing::new(MonicPoly::new(Poly::from_i64s(ctx, coeffs)).unwrap())
    }

    #[test]
    fn gaussian_frobenius_mod_7() {
        // (1+i)^7 = 1 - i when p = 3 mod 4
        let r = ring(7, 1, &[1, 0, 1]);
        let ctx = r.ctx();
        let u = &GaloisElt::scalar(&r, ctx.one()) + &GaloisElt::generator(&r);
        let expected = &GaloisElt::scalar(&r, ctx.one()) - &GaloisElt::generator(&r);
        assert_eq!(u.pow(7), expected);
    }

    #[test]
    fn generator_power_matches_remainder() {
        let r = ring(11, 3, &[3, -2, 5, 1]);
        let ctx = r.ctx();
        let c = GaloisElt::generator(&r);
        for n in 0..10 {
            let direct = Poly::monomial(ctx, n).rem(r.modulus().as_poly()).unwrap();
            assert_eq!(c.pow(n as u64).to_poly(), direct);
        }
    }

    #[test]
    fn trace_examples() {
        // roots +-i of c^2+1 mod 25: i^2 + (-i)^2 = -2
        let r = ring(5, 2, &[1, 0, 1]);
        let ctx = r.ctx();
        let c = GaloisElt::generator(&r);
        assert_eq!((&c * &c).mult_trace().value(), 23);
        let g = ring(13, 2, &[4, 1, -6, 1]);
        let cg = GaloisElt::generator(&g);
        assert_eq!(cg.mult_trace(), -g.modulus().coeff(2));
        let k = GaloisElt::scalar(&g, g.ctx().from_u64(5));
        assert_eq!(k.mult_trace().value(), 15);
        let _ = ctx;
    }

    #[test]
    fn trace_agrees_with_matrix_trace() {
        let r = ring(7, 3, &[2, 1, 0, 3, 1]);
        let ctx = r.ctx();
        let u = GaloisElt::from_poly(&r, &Poly::from_i64s(ctx, &[5, -3, 11, 2]));
        let m = u.multiplication_matrix();
        let tr = (0..4).fold(ctx.zero(), |a, i| a + m[i][i]);
        assert_eq!(u.mult_trace(), tr);
    }

    #[test]
    fn charpoly_examples() {
        let r = ring(13, 2, &[4, 1, -6, 1]);
        let c = GaloisElt::generator(&r);
        assert_eq!(&c.mult_charpoly(), r.modulus());
        let q = ring(13, 2, &[3, 1]);
        let q2 = ring(13, 2, &[7, 0, 1]);
        let _ = q;
        let k = GaloisElt::scalar(&q2, q2.ctx().from_u64(4));
        let ctx = q2.ctx();
        let expected = MonicPoly::from_roots(ctx, &[ctx.from_u64(4), ctx.from_u64(4)]);
        assert_eq!(k.mult_charpoly(), expected);
    }

    #[test]
    fn inverse_and_non_units() {
        let r = ring(5, 3, &[2, 0, 1]); // c^2 + 2 irreducible mod 5
        let ctx = r.ctx();
        let u = GaloisElt::from_poly(&r, &Poly::from_i64s(ctx, &[3, 7]));
        assert!((&u * &u.inv().unwrap()).is_one());
        let pu = GaloisElt::from_poly(&r, &Poly::from_i64s(ctx, &[5, 10]));
        assert_eq!(pu.inv().unwrap_err(), Error::NotAUnit);
        // split modulus (c-1)(c-2): c-1 is a zero divisor
        let s = ring(5, 2, &[2, -3, 1]);
        let z = GaloisElt::from_poly(&s, &Poly::from_i64s(s.ctx(), &[-1, 1]));
        assert_eq!(z.inv().unwrap_err(), Error::NotAUnit);
    }
}
