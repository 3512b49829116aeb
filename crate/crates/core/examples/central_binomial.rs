//! Half-range central binomial sums against `(1-4x)^{(p-1)/2}` mod `p`.
//!
//! `cargo run --example central_binomial`

use rkk_congruences::theorems::check_central_pol;
use rkk_congruences::RationalInput;

fn main() -> rkk_congruences::Result<()> {
    for p in [5u64, 7, 11, 13, 101] {
        for x in [
            RationalInput::integer(2),
            RationalInput::new(1, 4),
            RationalInput::integer(-3),
        ] {
            println!("{}", check_central_pol(x, p)?);
        }
    }
    Ok(())
}
