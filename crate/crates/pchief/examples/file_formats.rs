//! The text formats: serialize an algebra and a module canonically, parse
//! them back, and watch validation reject an inconsistent p-map.
//!
//! Run with: cargo run --example file_formats

use pchief::clikit::{parse_algebra, parse_module, serialize_algebra, serialize_module};
use pchief::cohom::RestrictedModule;
use pchief::reslie::fixtures;
use std::sync::Arc;

fn main() -> pchief::Result<()> {
    let sl2 = fixtures::sl2(3);
    let text = serialize_algebra("sl2_3", &sl2);
    println!("--- canonical algebra file ---\n{text}");
    let parsed = parse_algebra(&text)?;
    assert_eq!(parsed.algebra.as_ref(), &sl2);
    assert_eq!(serialize_algebra(&parsed.name, &parsed.algebra), text);
    println!("round-trip: byte-identical\n");

    let arc = Arc::new(sl2);
    let adjoint =
        RestrictedModule::new(arc.clone(), (0..3).map(|i| arc.ad_basis(i)).collect())?;
    let mtext = serialize_module("adjoint", &adjoint);
    println!("--- canonical module file ---\n{mtext}");
    let back = parse_module(&mtext, &arc)?;
    assert_eq!(back.actions(), adjoint.actions());
    println!("module round-trip: ok\n");

    // a well-formed file describing an invalid structure: in [x,y] = y with
    // x^{[3]} = x, setting y^{[3]} = x breaks ad-compatibility
    let bad = r#"
p = 3
basis = ["x", "y"]

[brackets]
"x,y" = { y = 1 }

[pmap]
x = { x = 1 }
y = { x = 1 }
"#;
    match parse_algebra(bad) {
        Err(e) => println!("invalid structure rejected: {e}"),
        Ok(_) => unreachable!("validation must reject this p-map"),
    }
    Ok(())
}
