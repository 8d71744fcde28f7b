//! Run the whole verification harness over the built-in catalog and over
//! the exhaustive enumeration of all restricted structures of dimension
//! at most 2: one machine-readable line per (theorem, algebra) pair.
//!
//! Run with: cargo run --example verify_theorems

use pchief::clikit::{catalog, small_family, verify, THEOREMS};

fn main() -> pchief::Result<()> {
    let mut failures = 0usize;
    for entry in catalog() {
        for theorem in THEOREMS {
            let report = verify(&entry.name, &entry.algebra, theorem, 0)?;
            println!("{}", report.machine_line());
            if !report.pass {
                failures += 1;
            }
        }
    }
    // the exhaustive dim ≤ 2 families check the main formula only — the
    // remaining statements follow from it and the catalog already
    // exercises them
    for p in [2u32, 3] {
        let family = small_family(p);
        let mut family_failures = 0usize;
        for entry in &family {
            let report = verify(&entry.name, &entry.algebra, "main", 0)?;
            if !report.pass {
                family_failures += 1;
            }
        }
        println!(
            "exhaustive dim <= 2 over F_{p}: {} structures, {} failures",
            family.len(),
            family_failures
        );
        failures += family_failures;
    }
    println!("total failures: {failures}");
    std::process::exit(if failures == 0 { 0 } else { 1 });
}
