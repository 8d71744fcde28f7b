//! Build the projective cover of the trivial module by lifting the
//! corresponding central idempotent, then read off its Loewy layers.
//! For sl2 over F_3 the second layer contains the 2-dimensional class
//! with multiplicity 2, while its p-split count is 0 — equality in the
//! second-layer bound characterizes solvability.
//!
//! Run with: cargo run --example loewy_layers

use pchief::chief::{p_chief_series, p_split_counts};
use pchief::reslie::fixtures;
use pchief::uenv::{
    irreducibles, loewy_layer_multiplicities, projective_cover_trivial, radical, UEnvelope,
};
use std::sync::Arc;

fn main() -> pchief::Result<()> {
    for (name, alg) in [
        ("aff2 / F_3", fixtures::aff2(3)),
        ("heis3 / F_2", fixtures::heis3(2)),
        ("sl2 / F_3", fixtures::sl2(3)),
    ] {
        let l = Arc::new(alg);
        let env = UEnvelope::new(l.clone())?;
        let irr = irreducibles(&env, 0)?;
        let rad = radical(&env, &irr)?;
        let cover = projective_cover_trivial(&env, &irr, &rad)?;
        let layers = loewy_layer_multiplicities(&env, &cover.module, &rad, &irr)?;
        println!(
            "{name}: dim P_L(F) = {}, solvable = {}",
            cover.space.dim(),
            l.is_solvable()
        );
        for (k, layer) in layers.iter().enumerate() {
            let parts: Vec<String> = layer
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| format!("S{i}^{m}"))
                .collect();
            println!("  layer {}: {}", k + 1, parts.join(" + "));
        }
        let counts = p_split_counts(&p_chief_series(&l, 0)?, &irr);
        println!("  p-split counts: {counts:?} (second layer bounds these from above)");
        println!();
    }
    Ok(())
}
