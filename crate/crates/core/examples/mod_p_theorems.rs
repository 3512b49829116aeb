//! The mod `p` congruences for one `(r, x)` over a range of primes:
//! full and short log sums, full and short plain sums.
//!
//! `cargo run --example mod_p_theorems -- 4 3`

use rkk_congruences::harness::parse_primes;
use rkk_congruences::theorems::{check_thm_rkk, check_thm_rkksuk, Instance, RootSums};
use rkk_congruences::RationalInput;

fn main() -> rkk_congruences::Result<()> {
    let r: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("r"))
        .unwrap_or(4);
    let x: RationalInput = std::env::args()
        .nth(2)
        .map(|s| s.parse().expect("x"))
        .unwrap_or(3.into());
    for p in parse_primes("5..40")? {
        let rs = match RootSums::new(r, x, p, 1) {
            Ok(rs) => rs,
            Err(e) => {
                println!("p = {p}: skipped ({e})");
                continue;
            }
        };
        let inst = Instance::new(r as u32, p, Some(x));
        for row in check_thm_rkksuk(&rs, inst)?
            .into_iter()
            .chain(check_thm_rkk(&rs, inst)?)
        {
            println!("{row}");
        }
    }
    Ok(())
}
