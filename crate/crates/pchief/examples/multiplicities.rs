//! The full multiplicity table: restricted and ordinary split counts per
//! irreducible class next to the cohomological right-hand side they must
//! equal, illustrating the main theorem and the strictness of
//! [L:S]_p-split ≤ [L:S]_split.
//!
//! Run with: cargo run --example multiplicities

use pchief::chief::multiplicity_report;
use pchief::reslie::fixtures;
use pchief::uenv::{irreducibles, UEnvelope};
use std::sync::Arc;

fn main() -> pchief::Result<()> {
    for (name, alg) in [
        ("heis3 / F_3", fixtures::heis3(3)),
        ("aff2 / F_3", fixtures::aff2(3)),
        ("ab2 / F_3", fixtures::ab2(3)),
        ("sl2 / F_3", fixtures::sl2(3)),
    ] {
        let l = Arc::new(alg);
        let env = UEnvelope::new(l.clone())?;
        let irr = irreducibles(&env, 0)?;
        let report = multiplicity_report(&l, &irr, 0)?;
        println!("{name}:");
        println!(
            "  {:<10} {:>8} {:>8} {:>10} {:>8}",
            "class", "p-split", "split", "rhs(main)", "h1/D"
        );
        for (i, s) in irr.iter().enumerate() {
            println!(
                "  {:<10} {:>8} {:>8} {:>10} {:>8}",
                format!("S{i} (d{})", s.dim()),
                report.p_split[i],
                report.split_ordinary[i],
                report.rhs_main[i],
                report.h1_dim_over_d[i]
            );
        }
        println!();
    }
    println!("note: ab2 shows the strict inequality (1 restricted vs 2 ordinary),");
    println!("and sl2 has h1/D = 2 for the 2-dim class with p-split count 0.");
    Ok(())
}
