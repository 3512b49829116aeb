//! Congruences modulo `p^2`: block sums over `A*(r, m)`, the full log sum
//! with its dilogarithmic correction, the plain sums and the root power sums.
//!
//! `cargo run --example mod_p2_theorems`

use rkk_congruences::theorems::{
    check_lemma_technical, check_mystery, check_thm_rkkmod2, check_thm_rkksuk_z, check_thm_rkksukk,
    check_thm_rkksukmod2, Instance, RootSums,
};

fn main() -> rkk_congruences::Result<()> {
    let (r, x, p) = (3usize, 2i64, 13u64);
    let rs = RootSums::new(r, x.into(), p, 3)?;
    let inst = Instance::new(r as u32, p, Some(x.into()));
    let rows = [
        check_thm_rkksuk_z(&rs, inst)?,
        check_thm_rkksukk(&rs, inst)?,
        check_thm_rkksukmod2(&rs, inst)?,
        check_thm_rkkmod2(&rs, inst)?,
        vec![check_lemma_technical(&rs, inst)?],
        check_mystery(&rs, inst)?,
    ];
    for row in rows.iter().flatten() {
        println!("{row}");
    }
    Ok(())
}
