//! The plain sum at the double-root value `x_0 = (r-1)^{r-1}/r^r`, mod `p^2`.
//!
//! `cargo run --example double_root`

use rkk_congruences::harness::parse_primes;
use rkk_congruences::polyfactor::double_root_x0;
use rkk_congruences::theorems::check_thm_rkkmod2_multiple;

fn main() -> rkk_congruences::Result<()> {
    for r in 2..=5usize {
        println!("r = {r}, x_0 = {}", double_root_x0(r));
        for p in parse_primes("7..50")? {
            if ((r * (r - 1)) as u64).is_multiple_of(p) {
                continue;
            }
            println!("  {}", check_thm_rkkmod2_multiple(r, p)?);
        }
    }
    Ok(())
}
