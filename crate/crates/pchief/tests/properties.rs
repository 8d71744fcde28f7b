//! Randomized property tests: structural identities that must hold for
//! arbitrary valid inputs, sampled with proptest.

use pchief::chief::{exhaustive_split_oracle, p_chief_series, p_split_counts};
use pchief::clikit::{parse_algebra, serialize_algebra, small_family};
use pchief::cohom::{h1_ordinary, h1_restricted, RestrictedModule};
use pchief::ffla::FpMatrix;
use pchief::reslie::fixtures;
use pchief::uenv::{ext1_from_trivial_oracle, irreducibles, UEnvelope};
use pchief::Error;
use proptest::prelude::*;
use std::sync::Arc;

fn small_algebras() -> Vec<Arc<pchief::reslie::RestrictedLieAlgebra>> {
    let mut out: Vec<_> = small_family(2).into_iter().map(|e| e.algebra).collect();
    out.extend(small_family(3).into_iter().map(|e| e.algebra));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Jacobson's formula: (a+b)^{[p]} expands consistently, i.e. the p-map
    /// evaluation commutes with the adjoint representation on arbitrary
    /// elements: ad(v^{[p]}) = ad(v)^p.
    #[test]
    fn pmap_eval_ad_compatible(
        idx in 0usize..6,
        coeffs in proptest::collection::vec(0u32..3, 3),
    ) {
        let alg = match idx {
            0 => fixtures::sl2(3),
            1 => fixtures::heis3(3),
            2 => fixtures::heis3(2),
            3 => fixtures::aff2(3),
            4 => fixtures::ab2(2),
            _ => fixtures::torus2(3),
        };
        let p = alg.p();
        let v: Vec<u32> = coeffs.iter().take(alg.dim()).map(|&c| c % p).collect();
        let v = if v.len() < alg.dim() {
            let mut w = v; w.resize(alg.dim(), 0); w
        } else { v };
        let vp = alg.pmap_eval(&v);
        prop_assert_eq!(alg.ad(&v).pow(p), alg.ad(&vp));
    }

    /// Every seeded p-chief series of every small algebra yields the same
    /// multiplicity table.
    #[test]
    fn series_counts_seed_invariant(which in 0usize..200, s1 in 0u64..500, s2 in 0u64..500) {
        let algs = small_algebras();
        let l = &algs[which % algs.len()];
        let env = UEnvelope::new(l.clone()).unwrap();
        let irr = irreducibles(&env, 0).unwrap();
        let a = p_split_counts(&p_chief_series(l, s1).unwrap(), &irr);
        let b = p_split_counts(&p_chief_series(l, s2).unwrap(), &irr);
        prop_assert_eq!(a, b);
    }

    /// The affine split decision agrees with exhaustive complement search on
    /// every strongly abelian factor of every small algebra.
    #[test]
    fn split_matches_oracle(which in 0usize..200, seed in 0u64..100) {
        let algs = small_algebras();
        let l = &algs[which % algs.len()];
        let series = p_chief_series(l, seed).unwrap();
        for f in &series.factors {
            if !f.strongly_abelian { continue; }
            match exhaustive_split_oracle(l, &f.lower, &f.upper, true) {
                Ok(oracle) => prop_assert_eq!(f.split, Some(oracle)),
                Err(Error::ThresholdExceeded(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    /// Restricted H¹ never exceeds ordinary H¹ (restricted cocycles satisfy
    /// one more linear condition, coboundaries agree).
    #[test]
    fn restricted_h1_bounded_by_ordinary(which in 0usize..200, w0 in 0u32..3, w1 in 0u32..3) {
        let algs = small_algebras();
        let l = &algs[which % algs.len()];
        let p = l.p();
        let weights: Vec<u32> = [w0 % p, w1 % p][..l.dim()].to_vec();
        if let Ok(m) = RestrictedModule::weight_line(l.clone(), &weights) {
            if m.validate().passed() {
                prop_assert!(h1_restricted(&m).dim_f <= h1_ordinary(&m).dim_f);
            }
        }
    }

    /// H¹(L, S) agrees with the augmentation-ideal Ext¹ computation for
    /// every irreducible of every small algebra.
    #[test]
    fn h1_matches_ext_oracle(which in 0usize..200) {
        let algs = small_algebras();
        let l = &algs[which % algs.len()];
        let env = UEnvelope::new(l.clone()).unwrap();
        for s in irreducibles(&env, 0).unwrap() {
            prop_assert_eq!(h1_restricted(&s).dim_f, ext1_from_trivial_oracle(&env, &s));
        }
    }

    /// Serialization round-trips every small algebra exactly.
    #[test]
    fn file_format_round_trip(which in 0usize..200) {
        let algs = small_algebras();
        let l = &algs[which % algs.len()];
        let text = serialize_algebra("sample", l);
        let parsed = parse_algebra(&text).unwrap();
        prop_assert_eq!(parsed.algebra.as_ref(), l.as_ref());
        prop_assert_eq!(serialize_algebra("sample", &parsed.algebra), text);
    }

    /// rref is idempotent and rank is transpose-invariant on random matrices.
    #[test]
    fn rref_properties(
        entries in proptest::collection::vec(0u32..5, 20),
    ) {
        let m = FpMatrix::from_rows_with_cols(
            5, 5,
            &entries.chunks(5).map(|c| c.to_vec()).collect::<Vec<_>>(),
        ).unwrap();
        let (r, rank, _) = m.rref();
        let (r2, rank2, _) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(rank, rank2);
        prop_assert_eq!(rank, m.transpose().rank());
    }
}
