//! Finite polylogarithms and the constants that appear in closed forms:
//! Fermat and Lucas quotients, Euler and Bernoulli numbers mod `p`.
//!
//! `cargo run --example polylog_constants -- 31`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rkk_congruences::finlog::{
    check_functional_equations, ConstantsTable, PolylogOrder, PolylogTable,
};
use rkk_congruences::ModulusCtx;

fn main() -> rkk_congruences::Result<()> {
    let p: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("p"))
        .unwrap_or(31);
    let k = ConstantsTable::new(p)?;
    println!("p = {p}");
    println!("  q_p(2) mod p^2 = {}", k.qp2);
    println!("  q_p(3) mod p^2 = {}", k.qp3);
    println!("  E_(p-3) mod p  = {}", k.euler_pm3);
    println!("  B_(p-2)(1/3)   = {}", k.bernoulli_pm2_third);
    match k.lucas_q {
        Some(q) => println!("  q_L mod p      = {q}"),
        None => println!("  q_L undefined at p = 5"),
    }
    println!("  (-1|p) = {}, (5|p) = {}", k.legendre(-1), k.legendre(5));

    let c2 = ModulusCtx::new(p, 2)?;
    let t = PolylogTable::new(c2);
    println!(
        "  £_1(1) mod p^2 = {}",
        t.pounds(PolylogOrder::ONE, &c2.one())
    );
    println!(
        "  £_1(2) mod p^2 = {}",
        t.pounds(PolylogOrder::ONE, &c2.from_u64(2))
    );

    let report = check_functional_equations(p, 20, &mut ChaCha8Rng::seed_from_u64(0))?;
    for fam in &report.families {
        println!(
            "  {:<14} {} samples, {} failures",
            fam.name,
            fam.checked,
            fam.failures.len()
        );
    }
    Ok(())
}
