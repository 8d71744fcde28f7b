//! Restricted modules, restricted and ordinary derivations, first
//! cohomology, and Hom/End spaces.
//!
//! H¹ is computed as derivations modulo inner derivations; the resolution
//! route through u(L) survives only as an oracle in [`crate::uenv`].

use crate::ffla::{FpMatrix, Subspace};
use crate::reslie::{Quotient, RestrictedLieAlgebra};
use crate::{Error, Result};
use std::sync::Arc;

/// A finite-dimensional restricted L-module given by the action matrices of
/// the Lie basis elements.
#[derive(Debug, Clone)]
pub struct RestrictedModule {
    algebra: Arc<RestrictedLieAlgebra>,
    action: Vec<FpMatrix>,
}

/// Outcome of module validation: offending index pairs and indices.
#[derive(Debug, Clone, Default)]
pub struct ModuleValidationReport {
    /// Pairs (i, j) with ρ([e_i,e_j]) != [ρ(e_i), ρ(e_j)].
    pub bracket_failures: Vec<(usize, usize)>,
    /// Indices i with ρ(e_i^{[p]}) != ρ(e_i)^p.
    pub pmap_failures: Vec<usize>,
}

impl ModuleValidationReport {
    pub fn passed(&self) -> bool {
        self.bracket_failures.is_empty() && self.pmap_failures.is_empty()
    }
}

impl std::fmt::Display for ModuleValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return write!(f, "valid");
        }
        for &(i, j) in &self.bracket_failures {
            writeln!(f, "action incompatible with bracket on pair ({i}, {j})")?;
        }
        for &i in &self.pmap_failures {
            writeln!(f, "action incompatible with p-map at index {i}")?;
        }
        Ok(())
    }
}

impl RestrictedModule {
    pub fn new(algebra: Arc<RestrictedLieAlgebra>, action: Vec<FpMatrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "need {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        let m = action.first().map(|a| a.rows()).unwrap_or(0);
        for a in &action {
            if a.rows() != m || a.cols() != m || a.p() != algebra.p() {
                return Err(Error::DimensionMismatch(
                    "action matrices must be square of equal size over F_p".into(),
                ));
            }
        }
        Ok(Self { algebra, action })
    }

    /// The one-dimensional trivial module.
    pub fn trivial(algebra: Arc<RestrictedLieAlgebra>) -> Self {
        let p = algebra.p();
        let action = vec![FpMatrix::zeros(p, 1, 1); algebra.dim()];
        Self { algebra, action }
    }

    /// One-dimensional module where basis element i acts as the scalar
    /// `weights[i]`. Caller is responsible for compatibility; validate.
    pub fn weight_line(algebra: Arc<RestrictedLieAlgebra>, weights: &[u32]) -> Result<Self> {
        let p = algebra.p();
        let action = weights
            .iter()
            .map(|&w| FpMatrix::new(p, 1, 1, vec![w]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, action)
    }

    pub fn algebra(&self) -> &Arc<RestrictedLieAlgebra> {
        &self.algebra
    }
    pub fn p(&self) -> u32 {
        self.algebra.p()
    }
    pub fn dim(&self) -> usize {
        self.action.first().map(|a| a.rows()).unwrap_or(0)
    }
    pub fn action(&self, i: usize) -> &FpMatrix {
        &self.action[i]
    }
    pub fn actions(&self) -> &[FpMatrix] {
        &self.action
    }

    /// Action matrix of an arbitrary Lie element.
    pub fn act(&self, x: &[u32]) -> FpMatrix {
        let p = self.p();
        let m = self.dim();
        let mut out = FpMatrix::zeros(p, m, m);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    pub fn validate(&self) -> ModuleValidationReport {
        let mut report = ModuleValidationReport::default();
        let n = self.algebra.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.act(&self.algebra.bracket_basis(i, j));
                let rhs = self.action[i]
                    .mul(&self.action[j])
                    .sub(&self.action[j].mul(&self.action[i]));
                if lhs != rhs {
                    report.bracket_failures.push((i, j));
                }
            }
        }
        for i in 0..n {
            let lhs = self.act(self.algebra.pmap_basis(i));
            let rhs = self.action[i].pow(self.algebra.p());
            if lhs != rhs {
                report.pmap_failures.push(i);
            }
        }
        report
    }

    /// Re-express the module over a quotient algebra of its algebra. Valid
    /// when the quotiented ideal acts as zero; the representative rows of
    /// the quotient provide the action.
    pub fn over_quotient(&self, quotient: &Quotient) -> Result<RestrictedModule> {
        let q = quotient.algebra.dim();
        let action = (0..q).map(|k| self.act(&quotient.reps.row(k))).collect();
        let module = RestrictedModule::new(quotient.algebra.clone(), action)?;
        let report = module.validate();
        if !report.passed() {
            return Err(Error::Validation(format!(
                "module does not descend to the quotient: {report}"
            )));
        }
        Ok(module)
    }

    /// Hom_F(self, other) as a restricted module with action
    /// (x·f)(s) = x·f(s) − f(x·s).
    pub fn hom_space_module(&self, other: &RestrictedModule) -> RestrictedModule {
        let p = self.p();
        let (s, t) = (self.dim(), other.dim());
        let n = self.algebra.dim();
        // f is a t x s matrix, flattened row-major
        let mut action = Vec::with_capacity(n);
        for i in 0..n {
            let rho_s = self.action(i);
            let rho_t = other.action(i);
            let mut big = FpMatrix::zeros(p, t * s, t * s);
            for r in 0..t {
                for c in 0..s {
                    let row = r * s + c;
                    for k in 0..t {
                        let v = big.get(row, k * s + c);
                        big.set(row, k * s + c, (v + rho_t.get(r, k)) % p);
                    }
                    for k in 0..s {
                        let v = big.get(row, r * s + k);
                        big.set(row, r * s + k, (v + p - rho_s.get(k, c) % p) % p);
                    }
                }
            }
            action.push(big);
        }
        RestrictedModule { algebra: self.algebra.clone(), action }
    }
}

/// First-cohomology data: cocycles are maps L -> M flattened row-major as
/// m x n matrices.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    pub cocycle_basis: Subspace,
    pub coboundary_basis: Subspace,
    pub dim_f: usize,
    /// dim End of the coefficient module.
    pub d_s: usize,
    /// dim_f / d_s when the division is exact (always for irreducible
    /// coefficients; the centralizer is a field).
    pub dim_over_d: Option<usize>,
}

impl CohomologySpace {
    pub fn dim_over_d_checked(&self) -> Result<usize> {
        self.dim_over_d.ok_or_else(|| {
            Error::Certification(format!(
                "dim_F H^1 = {} is not divisible by d_S = {}",
                self.dim_f, self.d_s
            ))
        })
    }
}

fn derivation_system(module: &RestrictedModule, restricted: bool) -> FpMatrix {
    let alg = module.algebra();
    let p = module.p();
    let n = alg.dim();
    let m = module.dim();
    let flat = |r: usize, c: usize| r * n + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    // bracket compatibility: ρ(e_i) D(e_j) − ρ(e_j) D(e_i) − D([e_i,e_j]) = 0
    for i in 0..n {
        for j in (i + 1)..n {
            let br = alg.bracket_basis(i, j);
            for r in 0..m {
                let mut row = vec![0u32; m * n];
                for s in 0..m {
                    row[flat(s, j)] = (row[flat(s, j)] + module.action(i).get(r, s)) % p;
                    row[flat(s, i)] =
                        (row[flat(s, i)] + p - module.action(j).get(r, s) % p) % p;
                }
                for (k, &c) in br.iter().enumerate() {
                    row[flat(r, k)] = (row[flat(r, k)] + p - c % p) % p;
                }
                rows.push(row);
            }
        }
    }
    if restricted {
        // p-compatibility: D(e_i^{[p]}) − ρ(e_i)^{p−1} D(e_i) = 0
        for i in 0..n {
            let pm = alg.pmap_basis(i);
            let pw = module.action(i).pow(p - 1);
            for r in 0..m {
                let mut row = vec![0u32; m * n];
                for (k, &c) in pm.iter().enumerate() {
                    row[flat(r, k)] = (row[flat(r, k)] + c) % p;
                }
                for s in 0..m {
                    row[flat(s, i)] = (row[flat(s, i)] + p - pw.get(r, s) % p) % p;
                }
                rows.push(row);
            }
        }
    }
    FpMatrix::from_rows_with_cols(p, m * n, &rows).expect("derivation system")
}

/// Solution space of the restricted derivation equations, as flattened
/// m x n matrices.
pub fn restricted_derivations(module: &RestrictedModule) -> Subspace {
    Subspace::from_rows(derivation_system(module, true).kernel()).expect("derivations")
}

/// Ordinary (Chevalley–Eilenberg degree 1) derivations: the p-compatibility
/// equations are dropped.
pub fn ordinary_derivations(module: &RestrictedModule) -> Subspace {
    Subspace::from_rows(derivation_system(module, false).kernel()).expect("derivations")
}

/// Inner derivations x -> x·v, flattened like the cocycles.
pub fn inner_derivations(module: &RestrictedModule) -> Subspace {
    let n = module.algebra().dim();
    let m = module.dim();
    let mut rows = Vec::with_capacity(m);
    for v in 0..m {
        let mut row = vec![0u32; m * n];
        for i in 0..n {
            for r in 0..m {
                row[r * n + i] = module.action(i).get(r, v);
            }
        }
        rows.push(row);
    }
    Subspace::from_vectors(module.p(), m * n, &rows).expect("inner derivations")
}

fn h1_from(cocycles: Subspace, module: &RestrictedModule) -> CohomologySpace {
    let coboundaries = inner_derivations(module);
    debug_assert!(cocycles.contains(&coboundaries));
    let dim_f = cocycles.dim() - coboundaries.dim();
    let d_s = end_dim(module);
    let dim_over_d = (d_s > 0 && dim_f % d_s == 0).then(|| dim_f / d_s);
    CohomologySpace { cocycle_basis: cocycles, coboundary_basis: coboundaries, dim_f, d_s, dim_over_d }
}

/// Restricted first cohomology H¹_*(L, M).
pub fn h1_restricted(module: &RestrictedModule) -> CohomologySpace {
    h1_from(restricted_derivations(module), module)
}

/// Ordinary first cohomology H¹(L, M).
pub fn h1_ordinary(module: &RestrictedModule) -> CohomologySpace {
    h1_from(ordinary_derivations(module), module)
}

/// Intertwiners A -> B, flattened row-major as dim(B) x dim(A) matrices.
pub fn hom_modules(a: &RestrictedModule, b: &RestrictedModule) -> Subspace {
    let p = a.p();
    let n = a.algebra().dim();
    assert_eq!(n, b.algebra().dim(), "modules over the same algebra");
    let (ma, mb) = (a.dim(), b.dim());
    let flat = |r: usize, c: usize| r * ma + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        let ra = a.action(i);
        let rb = b.action(i);
        for r in 0..mb {
            for c in 0..ma {
                let mut row = vec![0u32; mb * ma];
                for s in 0..ma {
                    row[flat(r, s)] = (row[flat(r, s)] + ra.get(s, c)) % p;
                }
                for s in 0..mb {
                    row[flat(s, c)] = (row[flat(s, c)] + p - rb.get(r, s) % p) % p;
                }
                rows.push(row);
            }
        }
    }
    let sys = FpMatrix::from_rows_with_cols(p, mb * ma, &rows).expect("intertwiner system");
    Subspace::from_rows(sys.kernel()).expect("hom space")
}

/// dim End_L(S).
pub fn end_dim(s: &RestrictedModule) -> usize {
    hom_modules(s, s).dim()
}

/// The right-hand side of the main multiplicity formula:
/// dim_D H¹_*(L, S) − dim_D H¹_*(L/ann_L(S), S), for irreducible S.
pub fn rhs_main_formula(s: &RestrictedModule) -> Result<usize> {
    let alg = s.algebra().clone();
    let h1_l = h1_restricted(s);
    let lhs = h1_l.dim_over_d_checked()?;
    let ann = alg.annihilator(s);
    let quo = alg.quotient(&ann)?;
    let s_q = s.over_quotient(&quo)?;
    let h1_q = h1_restricted(&s_q);
    // End is unchanged under passage to the quotient
    let d = h1_l.d_s;
    if h1_q.dim_f % d != 0 {
        return Err(Error::Certification(format!(
            "dim_F H^1 of the quotient ({}) not divisible by d_S = {d}",
            h1_q.dim_f
        )));
    }
    let rhs = h1_q.dim_f / d;
    if lhs < rhs {
        return Err(Error::Certification(
            "inflation dimension exceeds total dimension".into(),
        ));
    }
    Ok(lhs - rhs)
}

/// Dimension inequalities extracted from the five-term exact sequence
/// 0 → H¹(L/I, S) → H¹(L, S) → Hom_L(Ī, S) → H²(L/I, S), for a p-ideal I
/// contained in the annihilator of S and Ī = I/([I,I] + ⟨I^{[p]}⟩).
#[derive(Debug, Clone, Copy)]
pub struct FiveTermReport {
    pub h1_quotient: usize,
    pub h1_total: usize,
    pub hom_ibar: usize,
}

pub fn five_term_bounds(
    ideal: &Subspace,
    s: &RestrictedModule,
) -> Result<FiveTermReport> {
    let alg = s.algebra().clone();
    let p = alg.p();
    let n = alg.dim();
    let ann = alg.annihilator(s);
    if !ann.contains(ideal) {
        return Err(Error::Validation(
            "the ideal must annihilate the coefficient module".into(),
        ));
    }
    let quo = alg.quotient(ideal)?;
    let h1_q = h1_restricted(&s.over_quotient(&quo)?).dim_f;
    let h1_l = h1_restricted(s).dim_f;

    // Ī = I / ([I,I] + <I^{[p]}>) as an L-module under the adjoint action
    let derived = alg.bracket_space(ideal, ideal);
    let ppow = alg.p_power_span_of(ideal)?;
    let sub = derived.sum(&ppow)?;
    // relative complement of `sub` inside `ideal`
    let mut reps: Vec<Vec<u32>> = Vec::new();
    let mut current = sub.clone();
    for row in ideal.basis_rows() {
        let cand = current
            .sum(&Subspace::from_vectors(p, n, &[row.clone()])?)?;
        if cand.dim() > current.dim() {
            reps.push(row);
            current = cand;
        }
    }
    let dim_bar = reps.len();
    // coordinates in Ī: solve against [reps | sub-basis]
    let mut cols = reps.clone();
    cols.extend(sub.basis_rows());
    let solve_mat = FpMatrix::from_rows_with_cols(p, n, &cols)
        .expect("ideal basis")
        .transpose();
    let coords_in_bar = |w: &[u32]| -> Vec<u32> {
        let (sol, _) = crate::ffla::solve_affine(&solve_mat, w)
            .expect("shape")
            .expect("vector lies in the ideal");
        sol[..dim_bar].to_vec()
    };
    let mut bar_action = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = FpMatrix::zeros(p, dim_bar, dim_bar);
        for (c, rep) in reps.iter().enumerate() {
            let img = alg.bracket_eval(&crate::reslie::unit(n, i), rep);
            for (r, &v) in coords_in_bar(&img).iter().enumerate() {
                m.set(r, c, v);
            }
        }
        bar_action.push(m);
    }
    let ibar = RestrictedModule::new(alg.clone(), bar_action)?;
    let hom = hom_modules(&ibar, s).dim();

    if !(h1_q <= h1_l && h1_l <= h1_q + hom) {
        return Err(Error::Certification(format!(
            "five-term bounds violated: {h1_q} <= {h1_l} <= {h1_q} + {hom} fails"
        )));
    }
    Ok(FiveTermReport { h1_quotient: h1_q, h1_total: h1_l, hom_ibar: hom })
}

#[cfg(test)]
impl RestrictedModule {
    /// Natural 2-dimensional module of sl2 (basis e, h, f acting on F^2).
    pub fn sl2_natural(algebra: Arc<RestrictedLieAlgebra>) -> Self {
        let p = algebra.p();
        let e = FpMatrix::new(p, 2, 2, vec![0, 1, 0, 0]).unwrap();
        let h = FpMatrix::new(p, 2, 2, vec![1, 0, 0, p - 1]).unwrap();
        let f = FpMatrix::new(p, 2, 2, vec![0, 0, 1, 0]).unwrap();
        Self::new(algebra, vec![e, h, f]).unwrap()
    }
}
