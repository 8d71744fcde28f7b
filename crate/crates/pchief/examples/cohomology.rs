//! Restricted and ordinary first cohomology of small modules, the main
//! multiplicity formula's right-hand side, and the five-term dimension
//! bounds for a p-ideal.
//!
//! Run with: cargo run --example cohomology

use pchief::cohom::{
    five_term_bounds, h1_ordinary, h1_restricted, rhs_main_formula, RestrictedModule,
};
use pchief::ffla::Subspace;
use pchief::reslie::fixtures;
use std::sync::Arc;

fn main() -> pchief::Result<()> {
    // Heisenberg algebra: H¹_*(L, F) is 2-dimensional, so the trivial
    // factor occurs twice as a split strongly abelian p-chief factor.
    let heis = Arc::new(fixtures::heis3(3));
    let triv = RestrictedModule::trivial(heis.clone());
    println!(
        "heis3/F_3, trivial module: dim H¹_* = {}, dim H¹ = {}, rhs(main) = {}",
        h1_restricted(&triv).dim_f,
        h1_ordinary(&triv).dim_f,
        rhs_main_formula(&triv)?
    );

    // the 1-dimensional torus has ordinary cohomology but no restricted one
    let torus = Arc::new(fixtures::torus1(3));
    let t_triv = RestrictedModule::trivial(torus);
    println!(
        "torus1/F_3, trivial module: dim H¹_* = {}, dim H¹ = {}",
        h1_restricted(&t_triv).dim_f,
        h1_ordinary(&t_triv).dim_f
    );

    // weight modules of the affine algebra [x,y] = y, x^{[3]} = x
    let aff = Arc::new(fixtures::aff2(3));
    for w in 0..3 {
        let line = RestrictedModule::weight_line(aff.clone(), &[w, 0])?;
        println!(
            "aff2/F_3, weight-{w} line: dim H¹_* = {}, rhs(main) = {}",
            h1_restricted(&line).dim_f,
            rhs_main_formula(&line)?
        );
    }

    // five-term bounds for the center of the Heisenberg algebra:
    // dim H¹(L/I) ≤ dim H¹(L) ≤ dim H¹(L/I) + dim Hom_L(Ī, F)
    let center = Subspace::from_vectors(3, 3, &[vec![0, 0, 1]])?;
    let report = five_term_bounds(&center, &triv)?;
    println!(
        "heis3, I = center: {} <= {} <= {} + {}",
        report.h1_quotient,
        report.h1_total,
        report.h1_quotient,
        report.hom_ibar
    );
    Ok(())
}
