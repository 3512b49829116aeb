//! Exact identities over `Q`: Fuss-Catalan series, the series logarithm,
//! the three polynomial identities in `y`, and their reduction at `n = p`.
//!
//! `cargo run --example series_identities`

use rkk_congruences::seriesid::{
    check_fuss_catalan_equation, check_identities, check_series_log_identity, check_shadow,
    fuss_catalan, identity_sides,
};
use rkk_congruences::theorems::{Instance, RootSums};

fn main() -> rkk_congruences::Result<()> {
    let b = fuss_catalan(3, 8)?;
    let coeffs: Vec<String> = b.coeffs().iter().map(|c| c.to_string()).collect();
    println!("B_3(x) = {} + ...", coeffs.join(", "));
    for r in 1..=5 {
        println!(
            "r = {r}: B = 1 + x B^r {}, log identity {}",
            check_fuss_catalan_equation(r, 30)?,
            check_series_log_identity(r, 30)?
        );
    }

    let sides = identity_sides(2, 3)?;
    let lhs: Vec<String> = sides
        .id1b
        .0
        .coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!(
        "r = 2, n = 3, second identity, left side in y: [{}]",
        lhs.join(", ")
    );
    for (r, n) in [(2, 10), (3, 20), (5, 25)] {
        println!("r = {r}, n = {n}: {:?}", check_identities(r, n)?);
    }

    let (r, x, p) = (3usize, 2i64, 11u64);
    let rs = RootSums::new(r, x.into(), p, 3)?;
    for row in check_shadow(&rs, Instance::new(r as u32, p, Some(x.into())))? {
        println!("{row}");
    }
    Ok(())
}
