//! Representation theory of the restricted enveloping algebra u(L):
//! chop the regular module into irreducibles with the meataxe, compute the
//! Jacobson radical, and partition the irreducible classes into blocks by
//! Ext¹-linkage.
//!
//! Run with: cargo run --example irreducibles_and_blocks

use pchief::cohom::end_dim;
use pchief::reslie::fixtures;
use pchief::uenv::{blocks, ext1, irreducibles, principal_block, radical, UEnvelope};
use std::sync::Arc;

fn main() -> pchief::Result<()> {
    for (name, alg) in [
        ("torus1 / F_3", fixtures::torus1(3)),
        ("heis3 / F_3", fixtures::heis3(3)),
        ("sl2 / F_3", fixtures::sl2(3)),
    ] {
        let l = Arc::new(alg);
        let env = UEnvelope::new(l.clone())?;
        println!("{name}: dim u(L) = {}", env.dim());
        let irr = irreducibles(&env, 0)?;
        for (i, s) in irr.iter().enumerate() {
            println!("  S{i}: dim {}, dim End_L = {}", s.dim(), end_dim(s));
        }
        let rad = radical(&env, &irr)?;
        println!("  dim Jac(u(L)) = {}", rad.dim());
        let bl = blocks(&irr);
        let principal = principal_block(&irr);
        for b in &bl {
            let tag = if Some(b) == principal.as_ref() { " (principal)" } else { "" };
            println!("  block {b:?}{tag}");
        }
        if irr.len() > 1 {
            println!("  ext1(S0, S1) = {}", ext1(&irr[0], &irr[1]));
        }
        println!();
    }
    Ok(())
}
