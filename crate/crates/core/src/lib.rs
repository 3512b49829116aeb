//! Exact verification of congruences for sums of `binom(rk, k) x^k / k^d`
//! modulo `p`, `p^2` and `p^3`.
//!
//! The right-hand sides of these congruences are symmetric functions of the
//! roots `c_1, ..., c_r` of `x(c-1)^r + c^{r-1}` together with finite
//! polylogarithms of those roots. The roots are never enumerated: the root
//! polynomial is factored mod `p`, Hensel-lifted to `Z/p^e`, and every root
//! sum is the trace of a multiplication operator in the corresponding Galois
//! ring.
//!
//! - [`modring`]: `Z/p^e`, polynomials, Galois rings, traces, char polys
//! - [`polyfactor`]: root polynomial, degeneracy, factorization, Hensel lifting
//! - [`finlog`]: finite polylogarithms, Fermat and Lucas quotients, Euler/Bernoulli numbers
//! - [`binomsums`]: the left-hand sums over their ranges
//! - [`theorems`]: one checker per congruence
//! - [`seriesid`]: exact characteristic-zero series and polynomial identities
//! - [`harness`]: sweep configuration, parallel execution and reports

pub mod binomsums;
pub mod error;
pub mod finlog;
pub mod harness;
pub mod modring;
pub mod polyfactor;
pub mod seriesid;
pub mod theorems;

pub use error::{Error, Result};
pub use modring::{
    GaloisElt, GaloisRing, ModulusCtx, MonicPoly, Poly, RationalInput, ResidueInt, Ring,
};
