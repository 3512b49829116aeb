//! Root sums as traces in Galois rings, compared with explicit roots when
//! the root polynomial splits.
//!
//! `cargo run --example galois_traces`

use rkk_congruences::theorems::terms::RootTerm;
use rkk_congruences::theorems::RootSums;

fn main() -> rkk_congruences::Result<()> {
    for (r, x, p) in [(3usize, 2i64, 7u64), (3, 2, 13), (4, 5, 11)] {
        let rs = RootSums::new(r, x.into(), p, 3)?;
        println!(
            "r = {r}, x = {x}, p = {p}, factor degrees {:?}",
            rs.factor_set().degree_multiset()
        );
        for term in [
            RootTerm::Identity,
            RootTerm::InvOneMinusC,
            RootTerm::InvShiftedC,
            RootTerm::CPowP,
            RootTerm::Log1,
        ] {
            let trace = rs.trace_sum(3, term)?;
            let explicit = rs.explicit_sum(3, term).transpose()?;
            match explicit {
                Some(v) => println!("  sum {term:?}: trace {trace}, explicit {v}"),
                None => println!("  sum {term:?}: trace {trace}"),
            }
        }
        println!("  prod c_i = {}", rs.root_product(3));
        println!("  char poly of c^p: {}", rs.charpoly(3, RootTerm::CPowP)?);
    }
    Ok(())
}
