//! p-chief series, classification of chief factors, the split decision, and
//! the multiplicities of split (strongly) abelian chief factors.
//!
//! Splitness is decided by solvability of an affine linear system in a
//! correcting map τ; the exponential complement search survives only as the
//! exhaustive oracle used by the test suites.

use crate::cohom::{hom_modules, h1_restricted, rhs_main_formula, RestrictedModule};
use crate::ffla::{solve_affine, FpMatrix, Subspace};
use crate::reslie::{unit, RestrictedLieAlgebra};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Certification threshold for exhaustive vector enumeration (p^dim).
pub const CERT_LIMIT: u64 = 10_000;

/// One factor of a p-chief series, with its classification.
#[derive(Debug, Clone)]
pub struct ChiefFactor {
    pub lower: Subspace,
    pub upper: Subspace,
    pub strongly_abelian: bool,
    /// Defined only for strongly abelian factors.
    pub split: Option<bool>,
    /// The L-module structure on upper/lower; present exactly when the
    /// factor is strongly abelian (general p-chief factors need not be
    /// irreducible and are never classified).
    pub module: Option<RestrictedModule>,
}

impl ChiefFactor {
    pub fn dim(&self) -> usize {
        self.upper.dim() - self.lower.dim()
    }
}

/// An ascending chain of p-ideals from 0 to L with minimal p-ideal factors.
#[derive(Debug, Clone)]
pub struct PChiefSeries {
    pub chain: Vec<Subspace>,
    pub factors: Vec<ChiefFactor>,
    pub seed: u64,
}

/// An ordinary chief series: the same machinery with every p-map condition
/// deleted.
#[derive(Debug, Clone)]
pub struct OrdinaryChiefSeries {
    pub chain: Vec<Subspace>,
    pub factors: Vec<ChiefFactor>,
    pub seed: u64,
}

fn guard_enum(p: u32, dim: usize, what: &str) -> Result<u64> {
    match (p as u64).checked_pow(dim as u32) {
        Some(c) if c <= CERT_LIMIT => Ok(c),
        _ => Err(Error::ThresholdExceeded(format!(
            "{what}: p^dim = {p}^{dim} exceeds {CERT_LIMIT}"
        ))),
    }
}

/// A minimal p-ideal of `q` inside the nonzero p-ideal `within`, certified
/// minimal by exhausting single-vector closures.
pub fn minimal_p_ideal(
    q: &RestrictedLieAlgebra,
    within: &Subspace,
    rng: &mut ChaCha8Rng,
) -> Result<Subspace> {
    if within.is_zero() || !q.is_p_ideal(within) {
        return Err(Error::NotPIdeal("minimal_p_ideal needs a nonzero p-ideal".into()));
    }
    guard_enum(q.p(), within.dim(), "minimal p-ideal scan")?;
    let n = q.dim();
    let mut candidates: Vec<Subspace> = Vec::new();
    for v in within.enumerate() {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let seed = Subspace::from_vectors(q.p(), n, &[v])?;
        let c = q.p_closure(&seed);
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    }
    let min_dim = candidates.iter().map(|c| c.dim()).min().expect("nonzero space");
    let minimal: Vec<&Subspace> = candidates.iter().filter(|c| c.dim() == min_dim).collect();
    let chosen = minimal[rng.gen_range(0..minimal.len())].clone();
    // certify: every nonzero vector of the choice closes up to the choice
    guard_enum(q.p(), chosen.dim(), "minimal p-ideal certification")?;
    for w in chosen.enumerate() {
        if w.iter().all(|&c| c == 0) {
            continue;
        }
        let c = q.p_closure(&Subspace::from_vectors(q.p(), n, &[w])?);
        if c != chosen {
            return Err(Error::Certification(
                "candidate minimal p-ideal contains a smaller closure".into(),
            ));
        }
    }
    Ok(chosen)
}

/// Basis vectors of a complement of `inner` inside `outer` (inner ⊆ outer).
fn relative_complement(inner: &Subspace, outer: &Subspace) -> Vec<Vec<u32>> {
    let mut current = inner.clone();
    let mut reps = Vec::new();
    for row in outer.basis_rows() {
        let cand = current
            .sum(&Subspace::from_vectors(outer.p(), outer.ambient_dim(), &[row.clone()]).unwrap())
            .unwrap();
        if cand.dim() > current.dim() {
            reps.push(row);
            current = cand;
        }
    }
    reps
}

/// Coordinate frame for a factor upper/lower inside L: factor
/// representatives, complement representatives spanning L/upper, and the
/// coordinate projection.
struct SplitFrame {
    f_reps: Vec<Vec<u32>>,
    g_reps: Vec<Vec<u32>>,
    inv: FpMatrix,
}

impl SplitFrame {
    fn build(l: &RestrictedLieAlgebra, lower: &Subspace, upper: &Subspace) -> Result<Self> {
        if !upper.contains(lower) {
            return Err(Error::Validation("lower must be contained in upper".into()));
        }
        let p = l.p();
        let n = l.dim();
        let f_reps = relative_complement(lower, upper);
        let g_reps = relative_complement(upper, &Subspace::full(p, n));
        let mut cols: Vec<Vec<u32>> = f_reps.clone();
        cols.extend(g_reps.clone());
        cols.extend(lower.basis_rows());
        let basis = FpMatrix::from_rows_with_cols(p, n, &cols)?.transpose();
        let inv = basis.inverse().expect("factor frame spans the algebra");
        Ok(Self { f_reps, g_reps, inv })
    }

    /// Factor coordinates and complement coordinates of an element of L.
    fn coords(&self, w: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let all = self.inv.apply(w);
        let d = self.f_reps.len();
        let k = self.g_reps.len();
        (all[..d].to_vec(), all[d..d + k].to_vec())
    }

    /// Action of the a-th complement representative on the factor.
    fn action(&self, l: &RestrictedLieAlgebra, a: usize) -> FpMatrix {
        let d = self.f_reps.len();
        let mut m = FpMatrix::zeros(l.p(), d, d);
        for (c, f) in self.f_reps.iter().enumerate() {
            let img = l.bracket_eval(&self.g_reps[a], f);
            let (fc, kc) = self.coords(&img);
            debug_assert!(kc.iter().all(|&x| x == 0), "factor is not an ideal modulo lower");
            for (r, &v) in fc.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }
}

fn factor_is_abelian(l: &RestrictedLieAlgebra, lower: &Subspace, f_reps: &[Vec<u32>]) -> bool {
    f_reps.iter().enumerate().all(|(i, a)| {
        f_reps[i + 1..]
            .iter()
            .all(|b| lower.contains_vec(&l.bracket_eval(a, b)))
    })
}

fn factor_is_strongly_abelian(
    l: &RestrictedLieAlgebra,
    lower: &Subspace,
    f_reps: &[Vec<u32>],
) -> bool {
    factor_is_abelian(l, lower, f_reps)
        && f_reps.iter().all(|a| lower.contains_vec(&l.pmap_eval(a)))
}

/// Decide splitness of the extension 0 -> upper/lower -> L/lower -> L/upper -> 0
/// by solvability of the affine system in the correcting map τ. With the
/// p-map conditions (`restricted`) this is splitness in the restricted
/// category; without, in the ordinary category.
pub fn is_split(
    l: &RestrictedLieAlgebra,
    lower: &Subspace,
    upper: &Subspace,
    restricted: bool,
) -> Result<bool> {
    let p = l.p();
    let frame = SplitFrame::build(l, lower, upper)?;
    if restricted {
        if !factor_is_strongly_abelian(l, lower, &frame.f_reps) {
            return Err(Error::Validation("factor is not strongly abelian".into()));
        }
    } else if !factor_is_abelian(l, lower, &frame.f_reps) {
        return Err(Error::Validation("factor is not abelian".into()));
    }
    let d = frame.f_reps.len();
    let k = frame.g_reps.len();
    // unknown τ: a d x k matrix, flattened row-major
    let flat = |r: usize, c: usize| r * k + c;
    let actions: Vec<FpMatrix> = (0..k).map(|a| frame.action(l, a)).collect();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    // bracket defect: u·τ(v) − v·τ(u) − τ([u,v]) = σ([u,v]) − [σu, σv]
    for a in 0..k {
        for b in (a + 1)..k {
            let br = l.bracket_eval(&frame.g_reps[a], &frame.g_reps[b]);
            let (gamma, delta) = frame.coords(&br);
            for r in 0..d {
                let mut row = vec![0u32; d * k];
                for s in 0..d {
                    row[flat(s, b)] = (row[flat(s, b)] + actions[a].get(r, s)) % p;
                    row[flat(s, a)] = (row[flat(s, a)] + p - actions[b].get(r, s) % p) % p;
                }
                for (c, &dc) in delta.iter().enumerate() {
                    row[flat(r, c)] = (row[flat(r, c)] + p - dc % p) % p;
                }
                rows.push(row);
                // σ([u,v]) − [σu,σv] has factor coordinates −γ
                rhs.push((p - gamma[r] % p) % p);
            }
        }
    }
    if restricted {
        // p-map defect: τ(u^{[p]}) − u^{p−1}·τ(u) = (σu)^{[p]} − σ(u^{[p]})
        for a in 0..k {
            let pm = l.pmap_eval(&frame.g_reps[a]);
            let (pi, kappa) = frame.coords(&pm);
            let pw = actions[a].pow(p - 1);
            for r in 0..d {
                let mut row = vec![0u32; d * k];
                for (c, &kc) in kappa.iter().enumerate() {
                    row[flat(r, c)] = (row[flat(r, c)] + kc) % p;
                }
                for s in 0..d {
                    row[flat(s, a)] = (row[flat(s, a)] + p - pw.get(r, s) % p) % p;
                }
                rows.push(row);
                rhs.push(pi[r]);
            }
        }
    }
    let sys = FpMatrix::from_rows_with_cols(p, d * k, &rows)?;
    Ok(solve_affine(&sys, &rhs)?.is_some())
}

/// Splitness of a minimal strongly abelian p-ideal `ideal` of the algebra
/// `q` (the quotient at the relevant stage of a series).
pub fn is_split_factor(q: &RestrictedLieAlgebra, ideal: &Subspace) -> Result<bool> {
    is_split(q, &Subspace::zero(q.p(), q.dim()), ideal, true)
}

/// Exhaustive complement oracle: enumerate every candidate correcting map
/// and test subalgebra closure directly. Feasible only when p^(dim factor ·
/// dim complement) is at most [`CERT_LIMIT`]; kept as a redundant check of
/// [`is_split`].
pub fn exhaustive_split_oracle(
    l: &RestrictedLieAlgebra,
    lower: &Subspace,
    upper: &Subspace,
    restricted: bool,
) -> Result<bool> {
    let p = l.p();
    let n = l.dim();
    let frame = SplitFrame::build(l, lower, upper)?;
    let d = frame.f_reps.len();
    let k = frame.g_reps.len();
    let total = guard_enum(p, d * k, "split oracle")?;
    for idx in 0..total {
        let mut tau = vec![0u32; d * k];
        let mut t = idx;
        for entry in tau.iter_mut() {
            *entry = (t % p as u64) as u32;
            t /= p as u64;
        }
        // candidate complement generators g_a + Σ_r τ[r][a] f_r
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|a| {
                let mut g = frame.g_reps[a].clone();
                for r in 0..d {
                    let c = tau[r * k + a];
                    for (j, gj) in g.iter_mut().enumerate() {
                        *gj = (*gj + c * frame.f_reps[r][j]) % p;
                    }
                }
                g
            })
            .collect();
        let mut span_rows = gens.clone();
        span_rows.extend(lower.basis_rows());
        let span = Subspace::from_vectors(p, n, &span_rows)?;
        let mut ok = true;
        'outer: for a in 0..k {
            for b in (a + 1)..k {
                if !span.contains_vec(&l.bracket_eval(&gens[a], &gens[b])) {
                    ok = false;
                    break 'outer;
                }
            }
            if restricted && !span.contains_vec(&l.pmap_eval(&gens[a])) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Assert that every nonzero vector of the module generates the whole space
/// under the action (exhaustive spin).
fn assert_irreducible_by_spin(module: &RestrictedModule) -> Result<()> {
    let d = module.dim();
    let p = module.p();
    guard_enum(p, d, "irreducibility spin")?;
    for v in Subspace::full(p, d).enumerate() {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let mut span = Subspace::from_vectors(p, d, &[v])?;
        loop {
            let mut rows = span.basis_rows();
            for b in span.basis_rows() {
                for i in 0..module.algebra().dim() {
                    rows.push(module.action(i).apply(&b));
                }
            }
            let next = Subspace::from_vectors(p, d, &rows)?;
            if next.dim() == span.dim() {
                break;
            }
            span = next;
        }
        if span.dim() != d {
            return Err(Error::Certification(
                "strongly abelian chief factor is not an irreducible module".into(),
            ));
        }
    }
    Ok(())
}

/// The L-module on the factor upper/lower, via the adjoint action.
fn factor_module(
    l: &Arc<RestrictedLieAlgebra>,
    lower: &Subspace,
    upper: &Subspace,
) -> Result<RestrictedModule> {
    let p = l.p();
    let n = l.dim();
    let frame = SplitFrame::build(l, lower, upper)?;
    let d = frame.f_reps.len();
    let mut action = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = FpMatrix::zeros(p, d, d);
        for (c, f) in frame.f_reps.iter().enumerate() {
            let img = l.bracket_eval(&unit(n, i), f);
            let (fc, _) = frame.coords(&img);
            for (r, &v) in fc.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        action.push(m);
    }
    let module = RestrictedModule::new(l.clone(), action)?;
    debug_assert!(module.validate().passed());
    Ok(module)
}

fn build_factor(
    l: &Arc<RestrictedLieAlgebra>,
    lower: &Subspace,
    upper: &Subspace,
    restricted: bool,
) -> Result<ChiefFactor> {
    let frame = SplitFrame::build(l, lower, upper)?;
    let classify = if restricted {
        factor_is_strongly_abelian(l, lower, &frame.f_reps)
    } else {
        factor_is_abelian(l, lower, &frame.f_reps)
    };
    let (split, module) = if classify {
        let module = factor_module(l, lower, upper)?;
        assert_irreducible_by_spin(&module)?;
        (Some(is_split(l, lower, upper, restricted)?), Some(module))
    } else {
        (None, None)
    };
    Ok(ChiefFactor {
        lower: lower.clone(),
        upper: upper.clone(),
        strongly_abelian: classify,
        split,
        module,
    })
}

/// Build a p-chief series with a seeded choice among the minimal p-ideals
/// of each successive quotient.
pub fn p_chief_series(l: &Arc<RestrictedLieAlgebra>, seed: u64) -> Result<PChiefSeries> {
    let p = l.p();
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = vec![Subspace::zero(p, n)];
    let mut factors = Vec::new();
    while chain.last().unwrap().dim() < n {
        let lower = chain.last().unwrap().clone();
        let quo = l.quotient(&lower)?;
        let c = minimal_p_ideal(&quo.algebra, &quo.algebra.full_space(), &mut rng)?;
        // pull back to L: {v : proj(v) ∈ C}
        let w = c.kernel_description();
        let upper = Subspace::from_rows(w.mul(&quo.proj).kernel())?;
        debug_assert!(upper.contains(&lower) && l.is_p_ideal(&upper));
        factors.push(build_factor(l, &lower, &upper, true)?);
        chain.push(upper);
    }
    Ok(PChiefSeries { chain, factors, seed })
}

fn ordinary_closure(l: &RestrictedLieAlgebra, seed: &Subspace) -> Subspace {
    let full = l.full_space();
    let mut v = seed.clone();
    loop {
        let next = v.sum(&l.bracket_space(&full, &v)).expect("sum");
        if next.dim() == v.dim() {
            return v;
        }
        v = next;
    }
}

/// An ideal of L minimal among ideals strictly containing `lower`.
fn minimal_ideal_over(
    l: &RestrictedLieAlgebra,
    lower: &Subspace,
    rng: &mut ChaCha8Rng,
) -> Result<Subspace> {
    let p = l.p();
    let n = l.dim();
    let comp = relative_complement(lower, &Subspace::full(p, n));
    guard_enum(p, comp.len(), "minimal ideal scan")?;
    let comp_space = Subspace::from_vectors(p, n, &comp)?;
    let mut candidates: Vec<Subspace> = Vec::new();
    for v in comp_space.enumerate() {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let mut rows = lower.basis_rows();
        rows.push(v);
        let c = ordinary_closure(l, &Subspace::from_vectors(p, n, &rows)?);
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    }
    let min_dim = candidates.iter().map(|c| c.dim()).min().expect("proper lower");
    let minimal: Vec<&Subspace> = candidates.iter().filter(|c| c.dim() == min_dim).collect();
    let chosen = minimal[rng.gen_range(0..minimal.len())].clone();
    // certification over the cosets of lower inside the choice
    let rel = relative_complement(lower, &chosen);
    guard_enum(p, rel.len(), "minimal ideal certification")?;
    for w in Subspace::from_vectors(p, n, &rel)?.enumerate() {
        if w.iter().all(|&c| c == 0) {
            continue;
        }
        let mut rows = lower.basis_rows();
        rows.push(w);
        let c = ordinary_closure(l, &Subspace::from_vectors(p, n, &rows)?);
        if c != chosen {
            return Err(Error::Certification(
                "candidate minimal ideal contains a smaller closure".into(),
            ));
        }
    }
    Ok(chosen)
}

/// Chief series of the underlying ordinary Lie algebra.
pub fn ordinary_chief_series(
    l: &Arc<RestrictedLieAlgebra>,
    seed: u64,
) -> Result<OrdinaryChiefSeries> {
    let p = l.p();
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = vec![Subspace::zero(p, n)];
    let mut factors = Vec::new();
    while chain.last().unwrap().dim() < n {
        let lower = chain.last().unwrap().clone();
        let upper = minimal_ideal_over(l, &lower, &mut rng)?;
        factors.push(build_factor(l, &lower, &upper, false)?);
        chain.push(upper);
    }
    Ok(OrdinaryChiefSeries { chain, factors, seed })
}

/// True when two irreducible modules are isomorphic (Schur: any nonzero
/// homomorphism between irreducibles is invertible).
pub fn module_iso_irreducible(a: &RestrictedModule, b: &RestrictedModule) -> bool {
    a.dim() == b.dim() && hom_modules(a, b).dim() > 0
}

/// Index of the irreducible class of `module` in the catalog.
pub fn classify_module(
    module: &RestrictedModule,
    irreducibles: &[RestrictedModule],
) -> Option<usize> {
    irreducibles
        .iter()
        .position(|s| module_iso_irreducible(module, s))
}

fn split_counts(factors: &[ChiefFactor], irreducibles: &[RestrictedModule]) -> Vec<usize> {
    let mut counts = vec![0usize; irreducibles.len()];
    for f in factors {
        if !f.strongly_abelian || f.split != Some(true) {
            continue;
        }
        let m = f.module.as_ref().expect("classified factor carries its module");
        if let Some(idx) = classify_module(m, irreducibles) {
            counts[idx] += 1;
        }
    }
    counts
}

/// [L:S]_{p-split} per catalog class, from a given series.
pub fn p_split_counts(series: &PChiefSeries, irreducibles: &[RestrictedModule]) -> Vec<usize> {
    split_counts(&series.factors, irreducibles)
}

/// [L:S]_{split} per catalog class, from a given ordinary series.
pub fn ordinary_split_counts(
    series: &OrdinaryChiefSeries,
    irreducibles: &[RestrictedModule],
) -> Vec<usize> {
    split_counts(&series.factors, irreducibles)
}

/// Per-class multiplicity data: the two split counts, the right-hand side
/// of the main formula, and dim_D H¹_*(L, S).
#[derive(Debug, Clone)]
pub struct MultiplicityReport {
    pub p_split: Vec<usize>,
    pub split_ordinary: Vec<usize>,
    pub rhs_main: Vec<usize>,
    pub h1_dim_over_d: Vec<usize>,
}

pub fn multiplicity_report(
    l: &Arc<RestrictedLieAlgebra>,
    irreducibles: &[RestrictedModule],
    seed: u64,
) -> Result<MultiplicityReport> {
    let series = p_chief_series(l, seed)?;
    let ordinary = ordinary_chief_series(l, seed)?;
    let p_split = p_split_counts(&series, irreducibles);
    let split_ordinary = ordinary_split_counts(&ordinary, irreducibles);
    let mut rhs_main = Vec::with_capacity(irreducibles.len());
    let mut h1_dims = Vec::with_capacity(irreducibles.len());
    for s in irreducibles {
        rhs_main.push(rhs_main_formula(s)?);
        h1_dims.push(h1_restricted(s).dim_over_d_checked()?);
    }
    Ok(MultiplicityReport { p_split, split_ordinary, rhs_main, h1_dim_over_d: h1_dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslie::fixtures::*;
    use crate::reslie::semidirect_product;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn aff2_lines(a: &Arc<RestrictedLieAlgebra>) -> Vec<RestrictedModule> {
        (0..3)
            .map(|w| RestrictedModule::weight_line(a.clone(), &[w, 0]).unwrap())
            .collect()
    }

    #[test]
    fn minimal_p_ideal_examples() {
        let t = Arc::new(torus1(3));
        let c = minimal_p_ideal(&t, &t.full_space(), &mut rng(0)).unwrap();
        assert_eq!(c.dim(), 1);

        let h = Arc::new(heis3(3));
        let c = minimal_p_ideal(&h, &h.full_space(), &mut rng(0)).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains_vec(&[0, 0, 1]));

        let s = Arc::new(sl2(3));
        let c = minimal_p_ideal(&s, &s.full_space(), &mut rng(0)).unwrap();
        assert_eq!(c.dim(), 3);
    }

    #[test]
    fn p_chief_series_shapes() {
        let t = Arc::new(torus1(3));
        let series = p_chief_series(&t, 1).unwrap();
        assert_eq!(series.factors.len(), 1);
        assert!(!series.factors[0].strongly_abelian);

        let a = Arc::new(aff2(3));
        let series = p_chief_series(&a, 1).unwrap();
        assert_eq!(series.factors.len(), 2);
        assert!(series.chain[1].contains_vec(&[0, 1]));
        assert!(series.factors[0].strongly_abelian);
        assert!(!series.factors[1].strongly_abelian);

        let h = Arc::new(heis3(3));
        let series = p_chief_series(&h, 1).unwrap();
        assert_eq!(series.factors.len(), 3);
        assert!(series.factors.iter().all(|f| f.strongly_abelian && f.dim() == 1));
    }

    #[test]
    fn factor_dims_sum_to_dim() {
        for (alg, seed) in [(sl2(3), 7u64), (heis3(3), 3), (aff2(2), 5), (ab2(3), 11)] {
            let l = Arc::new(alg);
            let series = p_chief_series(&l, seed).unwrap();
            let total: usize = series.factors.iter().map(|f| f.dim()).sum();
            assert_eq!(total, l.dim());
        }
    }

    #[test]
    fn split_semidirect_product() {
        let k = Arc::new(torus1(3));
        let m = RestrictedModule::weight_line(k.clone(), &[1]).unwrap();
        let e = Arc::new(semidirect_product(&k, &m).unwrap());
        // M occupies the first coordinate
        let ideal = Subspace::from_vectors(3, 2, &[vec![1, 0]]).unwrap();
        assert!(is_split_factor(&e, &ideal).unwrap());
    }

    #[test]
    fn split_ab2_and_heis() {
        let a = ab2(3);
        let y = Subspace::from_vectors(3, 2, &[vec![0, 1]]).unwrap();
        assert!(!is_split_factor(&a, &y).unwrap());
        assert!(!exhaustive_split_oracle(&a, &Subspace::zero(3, 2), &y, true).unwrap());

        let h = Arc::new(heis3(3));
        let z = Subspace::from_vectors(3, 3, &[vec![0, 0, 1]]).unwrap();
        assert!(!is_split_factor(&h, &z).unwrap());
        // the two factors above <z> split
        let series = p_chief_series(&h, 0).unwrap();
        assert_eq!(series.factors[0].split, Some(false));
        assert_eq!(series.factors[1].split, Some(true));
        assert_eq!(series.factors[2].split, Some(true));
    }

    #[test]
    fn split_system_matches_oracle() {
        // every strongly abelian factor of every seeded series agrees with
        // the exhaustive complement oracle
        for alg in [heis3(3), aff2(3), ab2(3), ab2(2), heis3(2), aff2(2)] {
            let l = Arc::new(alg);
            for seed in 0..4 {
                let series = p_chief_series(&l, seed).unwrap();
                for f in &series.factors {
                    if !f.strongly_abelian {
                        continue;
                    }
                    let oracle =
                        exhaustive_split_oracle(&l, &f.lower, &f.upper, true).unwrap();
                    assert_eq!(f.split, Some(oracle));
                }
            }
        }
    }

    #[test]
    fn multiplicity_heis3() {
        let h = Arc::new(heis3(3));
        let triv = RestrictedModule::trivial(h.clone());
        let series = p_chief_series(&h, 0).unwrap();
        assert_eq!(p_split_counts(&series, &[triv]), vec![2]);
    }

    #[test]
    fn multiplicity_aff2() {
        let a = Arc::new(aff2(3));
        let lines = aff2_lines(&a);
        let series = p_chief_series(&a, 0).unwrap();
        assert_eq!(p_split_counts(&series, &lines), vec![0, 1, 0]);
    }

    #[test]
    fn multiplicity_sl2_all_zero() {
        let s = Arc::new(sl2(3));
        let triv = RestrictedModule::trivial(s.clone());
        let nat = RestrictedModule::sl2_natural(s.clone());
        let adj = RestrictedModule::new(
            s.clone(),
            (0..3).map(|i| s.ad_basis(i)).collect(),
        )
        .unwrap();
        let series = p_chief_series(&s, 0).unwrap();
        assert_eq!(p_split_counts(&series, &[triv, nat, adj]), vec![0, 0, 0]);
    }

    #[test]
    fn module_iso_examples() {
        let a = Arc::new(aff2(3));
        let lines = aff2_lines(&a);
        assert!(module_iso_irreducible(&lines[1], &lines[1]));
        assert!(!module_iso_irreducible(&lines[0], &lines[1]));
        // the adjoint factor <y> of aff2 is the weight-1 line
        let y = Subspace::from_vectors(3, 2, &[vec![0, 1]]).unwrap();
        let m = factor_module(&a, &Subspace::zero(3, 2), &y).unwrap();
        assert_eq!(classify_module(&m, &lines), Some(1));
    }

    #[test]
    fn ordinary_multiplicities() {
        let a = Arc::new(aff2(3));
        let lines = aff2_lines(&a);
        let series = ordinary_chief_series(&a, 0).unwrap();
        // both factors abelian and split as ordinary Lie algebras
        assert_eq!(ordinary_split_counts(&series, &lines), vec![1, 1, 0]);

        let b = Arc::new(ab2(3));
        let triv = RestrictedModule::trivial(b.clone());
        let series = ordinary_chief_series(&b, 0).unwrap();
        assert_eq!(ordinary_split_counts(&series, &[triv]), vec![2]);

        let s = Arc::new(sl2(3));
        let trivs = RestrictedModule::trivial(s.clone());
        let series = ordinary_chief_series(&s, 0).unwrap();
        assert_eq!(series.factors.len(), 1);
        assert_eq!(ordinary_split_counts(&series, &[trivs]), vec![0]);
    }

    #[test]
    fn series_independence_of_counts() {
        let h = Arc::new(heis3(3));
        let triv = RestrictedModule::trivial(h.clone());
        let reference = p_split_counts(&p_chief_series(&h, 0).unwrap(), &[triv.clone()]);
        for seed in 1..10 {
            let counts = p_split_counts(&p_chief_series(&h, seed).unwrap(), &[triv.clone()]);
            assert_eq!(counts, reference);
        }
    }

    #[test]
    fn p_split_bounded_by_ordinary_split() {
        let a = Arc::new(ab2(3));
        let triv = RestrictedModule::trivial(a.clone());
        let p_counts = p_split_counts(&p_chief_series(&a, 0).unwrap(), &[triv.clone()]);
        let o_counts =
            ordinary_split_counts(&ordinary_chief_series(&a, 0).unwrap(), &[triv]);
        // strict inequality here: 1 restricted vs 2 ordinary
        assert_eq!(p_counts, vec![1]);
        assert_eq!(o_counts, vec![2]);
    }
}
