//! Compute p-chief series of a few standard algebras and classify each
//! factor: dimension, strong abelianity, and whether the defining
//! restricted extension splits.
//!
//! Run with: cargo run --example chief_series

use pchief::chief::p_chief_series;
use pchief::reslie::fixtures;
use std::sync::Arc;

fn main() -> pchief::Result<()> {
    for (name, alg) in [
        ("heis3 / F_3", fixtures::heis3(3)),
        ("aff2 / F_3", fixtures::aff2(3)),
        ("ab2 / F_3", fixtures::ab2(3)),
        ("sl2 / F_3", fixtures::sl2(3)),
    ] {
        let l = Arc::new(alg);
        println!("{name} (dim {}):", l.dim());
        // two different seeds pick possibly different minimal p-ideals;
        // the factor statistics must nonetheless agree
        for seed in [0, 17] {
            let series = p_chief_series(&l, seed)?;
            let dims: Vec<String> =
                series.chain.iter().map(|s| s.dim().to_string()).collect();
            println!("  seed {seed}: chain 0 = {} = L", dims.join(" < "));
            for (k, f) in series.factors.iter().enumerate() {
                println!(
                    "    factor {k}: dim {}, strongly abelian {}, split {:?}",
                    f.dim(),
                    f.strongly_abelian,
                    f.split
                );
            }
        }
        println!();
    }
    Ok(())
}
