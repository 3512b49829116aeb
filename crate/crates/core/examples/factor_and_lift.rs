//! Factor the root polynomial `x(c-1)^r + c^{r-1}` over `F_p` and lift the
//! factorization to `Z/p^3`.
//!
//! `cargo run --example factor_and_lift -- 3 2 13` (arguments: r x p)

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rkk_congruences::polyfactor::{
    build_root_poly_residue, classify_residue, factor_mod_p, hensel_lift,
};
use rkk_congruences::{ModulusCtx, RationalInput};

fn main() -> rkk_congruences::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let r: usize = arg(0, "3").parse().expect("r");
    let x: RationalInput = arg(1, "2").parse().expect("x");
    let p: u64 = arg(2, "13").parse().expect("p");

    let ctx1 = ModulusCtx::new(p, 1)?;
    let x1 = ctx1.from_rational(x)?;
    println!("r = {r}, x = {x}, p = {p}: {:?}", classify_residue(r, x1));
    let f1 = build_root_poly_residue(r, x1)?;
    println!("root polynomial mod p:   {f1}");

    let factors = factor_mod_p(&f1, &mut ChaCha8Rng::seed_from_u64(1))?;
    for g in factors.factors() {
        println!("  factor mod p:          {g}");
    }

    let ctx3 = ModulusCtx::new(p, 3)?;
    let f3 = build_root_poly_residue(r, ctx3.from_rational(x)?)?;
    let lifted = hensel_lift(&factors, &f3, 3)?;
    for g in lifted.factors() {
        println!("  factor mod p^3:        {g}");
    }
    println!("product reproduces f mod p^3: {}", lifted.product() == f3);
    Ok(())
}
