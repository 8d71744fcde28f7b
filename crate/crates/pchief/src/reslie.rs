//! Restricted Lie algebras over F_p given by structure constants on a basis
//! together with the p-map images of the basis elements.
//!
//! Only brackets `[e_i, e_j]` with `i < j` are stored; `[e_i, e_i] = 0` is
//! built into the representation, which keeps characteristic 2 correct. The
//! p-map on general elements is evaluated with the Jacobson formula, never
//! stored.

use crate::cohom::RestrictedModule;
use crate::ffla::{inv_mod, is_prime, FpMatrix, Subspace};
use crate::{Error, Result};
use std::sync::Arc;

/// Elements are coefficient vectors over the algebra basis.
pub type LieElement = Vec<u32>;

/// Certification threshold for exhaustive element enumeration (p^dim).
pub const ENUM_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedLieAlgebra {
    p: u32,
    n: usize,
    basis_names: Vec<String>,
    /// Flat upper-triangular storage: entry for the pair (i, j), i < j, is
    /// the coefficient vector of [e_i, e_j].
    brackets: Vec<Vec<u32>>,
    /// pmap[i] is the coefficient vector of e_i^{[p]}.
    pmap: Vec<Vec<u32>>,
}

#[inline]
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // index into the list of pairs (0,1), (0,2), .., ordered by i then j
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Outcome of the structural validation gate.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    /// Basis triples (i, j, k) violating the Jacobi identity.
    pub jacobi_failures: Vec<(usize, usize, usize)>,
    /// Basis indices i with ad(e_i)^p != ad(e_i^{[p]}).
    pub pmap_failures: Vec<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.jacobi_failures.is_empty() && self.pmap_failures.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return write!(f, "valid");
        }
        for &(i, j, k) in &self.jacobi_failures {
            writeln!(f, "Jacobi identity fails on basis triple ({i}, {j}, {k})")?;
        }
        for &i in &self.pmap_failures {
            writeln!(f, "ad(e_{i})^p differs from ad(e_{i}^[p])")?;
        }
        Ok(())
    }
}

impl RestrictedLieAlgebra {
    /// `brackets` maps pairs (i, j) with i < j to coefficient vectors; pairs
    /// not listed are zero. `pmap` has one coefficient vector per basis
    /// element. Structural shape is checked here; the mathematical axioms
    /// are checked by [`validate`](Self::validate).
    pub fn new(
        p: u32,
        basis_names: Vec<String>,
        brackets: &[((usize, usize), Vec<u32>)],
        pmap: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let n = basis_names.len();
        if pmap.len() != n || pmap.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(
                "pmap must have one length-n vector per basis element".into(),
            ));
        }
        let mut table = vec![vec![0u32; n]; n.saturating_sub(1) * n / 2];
        for ((i, j), v) in brackets {
            if *i >= *j || *j >= n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket pair ({i}, {j}) must satisfy i < j < {n}"
                )));
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket [{i}, {j}] coefficient vector must have length {n}"
                )));
            }
            table[pair_index(n, *i, *j)] = v.iter().map(|&c| c % p).collect();
        }
        let pmap = pmap
            .into_iter()
            .map(|v| v.into_iter().map(|c| c % p).collect())
            .collect();
        Ok(Self { p, n, basis_names, brackets: table, pmap })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }
    pub fn pmap_basis(&self, i: usize) -> &[u32] {
        &self.pmap[i]
    }

    /// Coefficient vector of [e_i, e_j] for arbitrary i, j.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<u32> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => vec![0; self.n],
            Less => self.brackets[pair_index(self.n, i, j)].clone(),
            Greater => self.brackets[pair_index(self.n, j, i)]
                .iter()
                .map(|&c| (self.p - c) % self.p)
                .collect(),
        }
    }

    /// The matrix of ad(e_i) acting on column vectors: column j is [e_i, e_j].
    pub fn ad_basis(&self, i: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.n, self.n);
        for j in 0..self.n {
            let col = self.bracket_basis(i, j);
            for (r, &c) in col.iter().enumerate() {
                m.set(r, j, c);
            }
        }
        m
    }

    /// ad(v) for an arbitrary element.
    pub fn ad(&self, v: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.n, self.n);
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.ad_basis(i).scale(c));
            }
        }
        m
    }

    pub fn bracket_eval(&self, u: &[u32], v: &[u32]) -> LieElement {
        self.ad(u).apply(v)
    }

    /// Checks the Jacobi identity on all basis triples and ad-compatibility
    /// of the stored p-map on all basis elements.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for k in (j + 1)..self.n {
                    let a = self.bracket_eval(&self.bracket_basis(i, j), &unit(self.n, k));
                    let b = self.bracket_eval(&self.bracket_basis(j, k), &unit(self.n, i));
                    let c = self.bracket_eval(&self.bracket_basis(k, i), &unit(self.n, j));
                    let sum: Vec<u32> = (0..self.n)
                        .map(|t| (a[t] + b[t] + c[t]) % self.p)
                        .collect();
                    if sum.iter().any(|&x| x != 0) {
                        report.jacobi_failures.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..self.n {
            let lhs = self.ad_basis(i).pow(self.p);
            let rhs = self.ad(&self.pmap[i]);
            if lhs != rhs {
                report.pmap_failures.push(i);
            }
        }
        report
    }

    /// p-map of an arbitrary element via the Jacobson formula:
    /// (a+b)^{[p]} = a^{[p]} + b^{[p]} + sum_i s_i(a,b), where i*s_i(a,b) is
    /// the coefficient of t^{i-1} in (t*ad(a) + ad(b))^{p-1} applied to a.
    pub fn pmap_eval(&self, v: &[u32]) -> LieElement {
        let nz: Vec<usize> = (0..self.n).filter(|&i| v[i] % self.p != 0).collect();
        match nz.len() {
            0 => vec![0; self.n],
            1 => {
                // (λ e_i)^{[p]} = λ^p e_i^{[p]} = λ e_i^{[p]} over F_p
                let i = nz[0];
                scale_vec(&self.pmap[i], v[i], self.p)
            }
            _ => {
                let i = nz[0];
                let mut a = vec![0u32; self.n];
                a[i] = v[i] % self.p;
                let mut b = v.to_vec();
                b[i] = 0;
                let mut out = add_vec(&self.pmap_eval(&a), &self.pmap_eval(&b), self.p);
                // (t*ad(a) + ad(b))^{p-1} as a polynomial with matrix
                // coefficients, degree <= p-1
                let ad_a = self.ad(&a);
                let ad_b = self.ad(&b);
                let mut poly: Vec<FpMatrix> = vec![FpMatrix::identity(self.p, self.n)];
                for _ in 0..(self.p - 1) {
                    poly = poly_mul_linear(&poly, &ad_a, &ad_b);
                }
                for s in 1..self.p {
                    let coeff = &poly[(s - 1) as usize];
                    let w = coeff.apply(&a);
                    let si = scale_vec(&w, inv_mod(s, self.p), self.p);
                    out = add_vec(&out, &si, self.p);
                }
                out
            }
        }
    }

    /// Span of all brackets [u, v] with u in U, v in V.
    pub fn bracket_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for a in u.basis_rows() {
            for b in v.basis_rows() {
                rows.push(self.bracket_eval(&a, &b));
            }
        }
        Subspace::from_vectors(self.p, self.n, &rows).expect("bracket span")
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.p, self.n)
    }

    /// Derived series L ⊇ [L,L] ⊇ ... down to stabilization.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.full_space()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_space(last, last);
            if next.dim() == last.dim() {
                break;
            }
            let stop = next.is_zero();
            series.push(next);
            if stop {
                break;
            }
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    /// The span of {v^{[p]} : v in V}, certified by exhaustive enumeration.
    pub fn p_power_span_of(&self, v: &Subspace) -> Result<Subspace> {
        let count = (self.p as u64).checked_pow(v.dim() as u32);
        match count {
            Some(c) if c <= ENUM_LIMIT => {}
            _ => {
                return Err(Error::ThresholdExceeded(format!(
                    "p^dim = {}^{} exceeds the enumeration limit {ENUM_LIMIT}",
                    self.p,
                    v.dim()
                )))
            }
        }
        let mut rows = Vec::new();
        for w in v.enumerate() {
            rows.push(self.pmap_eval(&w));
        }
        Subspace::from_vectors(self.p, self.n, &rows)
    }

    /// ⟨L^{[p]}⟩_F.
    pub fn p_power_span(&self) -> Result<Subspace> {
        self.p_power_span_of(&self.full_space())
    }

    pub fn is_p_perfect(&self) -> Result<bool> {
        let full = self.full_space();
        let derived = self.bracket_space(&full, &full);
        let span = derived.sum(&self.p_power_span()?)?;
        Ok(span.dim() == self.n)
    }

    /// Abelian with identically zero p-map. Over F_p the basis conditions
    /// suffice: with zero brackets the p-map is additive and homogeneous.
    pub fn is_strongly_abelian(&self) -> bool {
        self.brackets.iter().all(|v| v.iter().all(|&c| c == 0))
            && self.pmap.iter().all(|v| v.iter().all(|&c| c == 0))
    }

    pub fn is_ideal(&self, v: &Subspace) -> bool {
        v.contains(&self.bracket_space(&self.full_space(), v))
    }

    /// Once V is an ideal, closure under basis p-images suffices: Jacobson
    /// correction terms of sums of V-elements are iterated brackets inside V.
    pub fn is_p_ideal(&self, v: &Subspace) -> bool {
        self.is_ideal(v) && v.basis_rows().iter().all(|b| v.contains_vec(&self.pmap_eval(b)))
    }

    /// Smallest p-ideal containing `seed`.
    pub fn p_closure(&self, seed: &Subspace) -> Subspace {
        let full = self.full_space();
        let mut v = seed.clone();
        loop {
            // close under brackets with L
            loop {
                let next = v.sum(&self.bracket_space(&full, &v)).expect("sum");
                if next.dim() == v.dim() {
                    break;
                }
                v = next;
            }
            // add p-images of a basis
            let mut rows = v.basis_rows();
            for b in v.basis_rows() {
                rows.push(self.pmap_eval(&b));
            }
            let next = Subspace::from_vectors(self.p, self.n, &rows).expect("span");
            if next.dim() == v.dim() {
                return v;
            }
            v = next;
        }
    }

    /// Quotient by a p-ideal, together with the projection and a section.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_p_ideal(ideal) {
            return Err(Error::NotPIdeal(format!(
                "{}-dimensional subspace of {}",
                ideal.dim(),
                self.n
            )));
        }
        let comp = ideal.extend_to_complement();
        let q = comp.dim();
        // rows: complement reps first, then the ideal basis; the inverse
        // transpose projects onto complement coordinates
        let reps = comp.basis().clone();
        let full_rows = reps.vstack(ideal.basis());
        let inv = full_rows
            .transpose()
            .inverse()
            .expect("complement plus ideal bases span the algebra");
        let mut proj = FpMatrix::zeros(self.p, q, self.n);
        for r in 0..q {
            for c in 0..self.n {
                proj.set(r, c, inv.get(r, c));
            }
        }
        let names: Vec<String> = (0..q).map(|i| format!("q{i}")).collect();
        let mut brackets = Vec::new();
        for i in 0..q {
            for j in (i + 1)..q {
                let br = self.bracket_eval(&reps.row(i), &reps.row(j));
                brackets.push(((i, j), proj.apply(&br)));
            }
        }
        let mut pmap = Vec::new();
        for i in 0..q {
            pmap.push(proj.apply(&self.pmap_eval(&reps.row(i))));
        }
        let algebra = RestrictedLieAlgebra::new(self.p, names, &brackets, pmap)?;
        let report = algebra.validate();
        if !report.passed() {
            return Err(Error::Certification(format!(
                "quotient algebra failed validation: {report}"
            )));
        }
        Ok(Quotient { algebra: Arc::new(algebra), proj, reps })
    }

    /// Annihilator of a module: the kernel of x -> action matrix of x.
    pub fn annihilator(&self, module: &RestrictedModule) -> Subspace {
        let m = module.dim();
        let mut sys = FpMatrix::zeros(self.p, m * m, self.n);
        for i in 0..self.n {
            let rho = module.action(i);
            for r in 0..m {
                for c in 0..m {
                    sys.set(r * m + c, i, rho.get(r, c));
                }
            }
        }
        let ann = Subspace::from_rows(sys.kernel()).expect("annihilator");
        debug_assert!(self.is_p_ideal(&ann));
        ann
    }
}

/// A quotient algebra with the projection matrix (quotient coordinates of an
/// algebra element) and representative rows (a linear section).
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: Arc<RestrictedLieAlgebra>,
    /// q x n: maps an element of L to its class coordinates.
    pub proj: FpMatrix,
    /// q x n: row i is a representative of quotient basis element i.
    pub reps: FpMatrix,
}

/// Semidirect product E = M ⋊ K for a strongly abelian coefficient module M,
/// with p-map (m, x)^{[p]} = (x^{p-1}·m, x^{[p]}). M occupies the leading
/// coordinates of E.
pub fn semidirect_product(
    k: &RestrictedLieAlgebra,
    module: &RestrictedModule,
) -> Result<RestrictedLieAlgebra> {
    let report = module.validate();
    if !report.passed() {
        return Err(Error::Validation(format!("coefficient module invalid: {report}")));
    }
    let p = k.p();
    let m = module.dim();
    let kd = k.dim();
    let n = m + kd;
    let mut names: Vec<String> = (0..m).map(|i| format!("m{i}")).collect();
    names.extend(k.basis_names().iter().map(|s| format!("k_{s}")));
    let embed_m = |v: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; n];
        out[..m].copy_from_slice(v);
        out
    };
    let embed_k = |v: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; n];
        out[m..].copy_from_slice(v);
        out
    };
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in 0..kd {
            // [(e_i, 0), (0, f_j)] = (-f_j · e_i, 0)
            let mut col = module.action(j).col(i);
            for c in col.iter_mut() {
                *c = (p - *c) % p;
            }
            brackets.push(((i, m + j), embed_m(&col)));
        }
    }
    for a in 0..kd {
        for b in (a + 1)..kd {
            brackets.push(((m + a, m + b), embed_k(&k.bracket_basis(a, b))));
        }
    }
    let mut pmap = vec![vec![0u32; n]; m];
    for a in 0..kd {
        pmap.push(embed_k(k.pmap_basis(a)));
    }
    let e = RestrictedLieAlgebra::new(p, names, &brackets, pmap)?;
    let report = e.validate();
    if !report.passed() {
        return Err(Error::Certification(format!(
            "semidirect product failed validation: {report}"
        )));
    }
    Ok(e)
}

/// External direct sum of two restricted Lie algebras over the same prime.
pub fn direct_sum(
    a: &RestrictedLieAlgebra,
    b: &RestrictedLieAlgebra,
) -> Result<RestrictedLieAlgebra> {
    assert_eq!(a.p(), b.p(), "direct sum over the same prime field");
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut names: Vec<String> = a.basis_names().iter().map(|s| format!("a_{s}")).collect();
    names.extend(b.basis_names().iter().map(|s| format!("b_{s}")));
    let mut brackets = Vec::new();
    for i in 0..na {
        for j in (i + 1)..na {
            let mut v = a.bracket_basis(i, j);
            v.resize(n, 0);
            brackets.push(((i, j), v));
        }
    }
    for i in 0..nb {
        for j in (i + 1)..nb {
            let mut v = vec![0u32; na];
            v.extend(b.bracket_basis(i, j));
            brackets.push(((na + i, na + j), v));
        }
    }
    let mut pmap = Vec::new();
    for i in 0..na {
        let mut v = a.pmap_basis(i).to_vec();
        v.resize(n, 0);
        pmap.push(v);
    }
    for i in 0..nb {
        let mut v = vec![0u32; na];
        v.extend_from_slice(b.pmap_basis(i));
        pmap.push(v);
    }
    RestrictedLieAlgebra::new(a.p(), names, &brackets, pmap)
}

pub fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[i] = 1;
    v
}

pub fn add_vec(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

pub fn sub_vec(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

pub fn scale_vec(a: &[u32], s: u32, p: u32) -> Vec<u32> {
    a.iter().map(|&x| x * (s % p) % p).collect()
}

/// Multiply a matrix polynomial by (t*A + B).
fn poly_mul_linear(poly: &[FpMatrix], a: &FpMatrix, b: &FpMatrix) -> Vec<FpMatrix> {
    let p = a.p();
    let n = a.rows();
    let mut out = vec![FpMatrix::zeros(p, n, n); poly.len() + 1];
    for (d, coeff) in poly.iter().enumerate() {
        out[d + 1] = out[d + 1].add(&a.mul(coeff));
        out[d] = out[d].add(&b.mul(coeff));
    }
    out
}

/// Small standard algebras used throughout the test suites, the built-in
/// catalog, and the examples.
pub mod fixtures {
    use super::RestrictedLieAlgebra;

    pub fn sl2(p: u32) -> RestrictedLieAlgebra {
        // basis e, h, f; [h,e] = 2e, [h,f] = -2f, [e,f] = h
        let names = vec!["e".into(), "h".into(), "f".into()];
        let brackets = vec![
            ((0, 1), vec![(2 * p - 2) % p, 0, 0]), // [e,h] = -2e
            ((0, 2), vec![0, 1, 0]),               // [e,f] = h
            ((1, 2), vec![0, 0, (2 * p - 2) % p]), // [h,f] = -2f
        ];
        let pmap = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]];
        RestrictedLieAlgebra::new(p, names, &brackets, pmap).unwrap()
    }

    pub fn heis3(p: u32) -> RestrictedLieAlgebra {
        let names = vec!["x".into(), "y".into(), "z".into()];
        let brackets = vec![((0, 1), vec![0, 0, 1])];
        let pmap = vec![vec![0; 3]; 3];
        RestrictedLieAlgebra::new(p, names, &brackets, pmap).unwrap()
    }

    pub fn aff2(p: u32) -> RestrictedLieAlgebra {
        let names = vec!["x".into(), "y".into()];
        let brackets = vec![((0, 1), vec![0, 1])];
        let pmap = vec![vec![1, 0], vec![0, 0]];
        RestrictedLieAlgebra::new(p, names, &brackets, pmap).unwrap()
    }

    pub fn ab2(p: u32) -> RestrictedLieAlgebra {
        let names = vec!["x".into(), "y".into()];
        let pmap = vec![vec![0, 1], vec![0, 0]];
        RestrictedLieAlgebra::new(p, names, &[], pmap).unwrap()
    }

    pub fn torus1(p: u32) -> RestrictedLieAlgebra {
        RestrictedLieAlgebra::new(p, vec!["t".into()], &[], vec![vec![1]]).unwrap()
    }

    pub fn ab1_null(p: u32) -> RestrictedLieAlgebra {
        RestrictedLieAlgebra::new(p, vec!["x".into()], &[], vec![vec![0]]).unwrap()
    }

    pub fn torus2(p: u32) -> RestrictedLieAlgebra {
        let names = vec!["s".into(), "t".into()];
        let pmap = vec![vec![1, 0], vec![0, 1]];
        RestrictedLieAlgebra::new(p, names, &[], pmap).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_sl2_and_torus() {
        assert!(sl2(3).validate().passed());
        assert!(torus1(3).validate().passed());
        assert!(torus1(2).validate().passed());
        assert!(heis3(3).validate().passed());
        assert!(aff2(3).validate().passed());
        assert!(ab2(3).validate().passed());
    }

    #[test]
    fn validate_rejects_bad_pmap() {
        // [x,y] = y with y^{[p]} = x: ad(y)^p = 0 but ad(x) != 0
        let names = vec!["x".into(), "y".into()];
        let brackets = vec![((0, 1), vec![0, 1])];
        let pmap = vec![vec![1, 0], vec![1, 0]];
        let l = RestrictedLieAlgebra::new(3, names, &brackets, pmap).unwrap();
        let report = l.validate();
        assert!(!report.passed());
        assert_eq!(report.pmap_failures, vec![1]);
    }

    #[test]
    fn bracket_eval_sl2() {
        let l = sl2(3);
        // [e, f] = h
        assert_eq!(l.bracket_eval(&[1, 0, 0], &[0, 0, 1]), vec![0, 1, 0]);
        // [v, v] = 0
        assert_eq!(l.bracket_eval(&[1, 2, 1], &[1, 2, 1]), vec![0, 0, 0]);
        // abelian algebra: any pair brackets to zero
        let a = ab2(3);
        assert_eq!(a.bracket_eval(&[1, 2], &[2, 1]), vec![0, 0]);
    }

    #[test]
    fn pmap_eval_basis_and_heisenberg() {
        let l = sl2(3);
        assert_eq!(l.pmap_eval(&[0, 1, 0]), vec![0, 1, 0]);
        // Heisenberg p=3: (x+y)^{[3]} = 0, and ad-compatibility holds
        let h = heis3(3);
        let v = vec![1, 1, 0];
        let pv = h.pmap_eval(&v);
        assert_eq!(pv, vec![0, 0, 0]);
        assert_eq!(h.ad(&v).pow(3), h.ad(&pv));
    }

    #[test]
    fn pmap_eval_ab2() {
        // abelian, x^{[3]} = y: (x+y)^{[3]} = y
        let l = ab2(3);
        assert_eq!(l.pmap_eval(&[1, 1]), vec![0, 1]);
    }

    #[test]
    fn pmap_eval_jacobson_consistency_random() {
        let l = sl2(3);
        for v in Subspace::full(3, 3).enumerate() {
            let pv = l.pmap_eval(&v);
            assert_eq!(l.ad(&v).pow(3), l.ad(&pv), "ad-compatibility at {v:?}");
            for s in 0..3 {
                let sv = scale_vec(&v, s, 3);
                assert_eq!(l.pmap_eval(&sv), scale_vec(&pv, s, 3));
            }
        }
    }

    #[test]
    fn derived_series_and_solvability() {
        assert!(ab2(3).is_solvable());
        let a = aff2(3);
        let series = a.derived_series();
        assert_eq!(series.len(), 3);
        assert_eq!(series[1].dim(), 1);
        assert!(series[1].contains_vec(&[0, 1]));
        assert!(a.is_solvable());
        let s = sl2(3);
        assert_eq!(s.derived_series().len(), 1);
        assert!(!s.is_solvable());
    }

    #[test]
    fn p_power_span_examples() {
        let t = torus1(3);
        assert_eq!(t.p_power_span().unwrap().dim(), 1);
        let h = heis3(3);
        assert!(h.p_power_span().unwrap().is_zero());
        let a = ab2(3);
        let span = a.p_power_span().unwrap();
        assert_eq!(span.dim(), 1);
        assert!(span.contains_vec(&[0, 1]));
    }

    #[test]
    fn p_perfect_and_strongly_abelian() {
        assert!(sl2(3).is_p_perfect().unwrap());
        assert!(!sl2(3).is_strongly_abelian());
        assert!(torus1(3).is_p_perfect().unwrap());
        assert!(!torus1(3).is_strongly_abelian());
        assert!(!ab1_null(3).is_p_perfect().unwrap());
        assert!(ab1_null(3).is_strongly_abelian());
    }

    #[test]
    fn p_closure_examples() {
        let h = heis3(3);
        let zero = Subspace::zero(3, 3);
        assert!(h.p_closure(&zero).is_zero());
        let z = Subspace::from_vectors(3, 3, &[vec![0, 0, 1]]).unwrap();
        assert_eq!(h.p_closure(&z), z);
        let a = ab2(3);
        let x = Subspace::from_vectors(3, 2, &[vec![1, 0]]).unwrap();
        assert_eq!(a.p_closure(&x).dim(), 2);
    }

    #[test]
    fn quotient_examples() {
        let a = aff2(3);
        let y = Subspace::from_vectors(3, 2, &[vec![0, 1]]).unwrap();
        let q = a.quotient(&y).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        // quotient is a 1-dimensional torus
        assert_eq!(q.algebra.pmap_basis(0), &[1]);

        let h = heis3(3);
        let z = Subspace::from_vectors(3, 3, &[vec![0, 0, 1]]).unwrap();
        let q = h.quotient(&z).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.is_strongly_abelian());

        // quotient by the zero ideal is the algebra itself (up to names)
        let q = a.quotient(&Subspace::zero(3, 2)).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert_eq!(q.algebra.bracket_basis(0, 1), a.bracket_basis(0, 1));
        assert_eq!(q.algebra.pmap_basis(0), a.pmap_basis(0));
    }

    #[test]
    fn quotient_rejects_non_p_ideal() {
        let a = ab2(3);
        // <x> is an ideal (abelian) but not p-closed: x^{[3]} = y
        let x = Subspace::from_vectors(3, 2, &[vec![1, 0]]).unwrap();
        assert!(a.quotient(&x).is_err());
    }

    #[test]
    fn quotient_of_closure_validates() {
        let l = sl2(3);
        for v in Subspace::full(3, 3).enumerate() {
            let seed = Subspace::from_vectors(3, 3, &[v]).unwrap();
            let c = l.p_closure(&seed);
            assert!(l.quotient(&c).is_ok());
        }
    }

    #[test]
    fn semidirect_torus_with_weight_one_line() {
        // K = 1-dim torus acting as 1 on a line gives aff2 up to relabeling
        let k = Arc::new(torus1(3));
        let module = RestrictedModule::new(
            k.clone(),
            vec![FpMatrix::identity(3, 1)],
        )
        .unwrap();
        let e = semidirect_product(&k, &module).unwrap();
        assert_eq!(e.dim(), 2);
        // basis (m0, t): [m0, t] = -t·m0 = -m0; t^{[3]} = t
        assert_eq!(e.bracket_basis(0, 1), vec![2, 0]);
        assert_eq!(e.pmap_basis(1), &[0, 1]);
        assert!(e.validate().passed());
        // structurally aff2: swap basis order and negate
        let q = e.quotient(&Subspace::from_vectors(3, 2, &[vec![1, 0]]).unwrap()).unwrap();
        assert_eq!(q.algebra.pmap_basis(0), &[1]);
    }

    #[test]
    fn semidirect_trivial_action_is_strongly_abelian_sum() {
        let k = Arc::new(ab1_null(3));
        let module = RestrictedModule::new(k.clone(), vec![FpMatrix::zeros(3, 1, 1)]).unwrap();
        let e = semidirect_product(&k, &module).unwrap();
        assert!(e.is_strongly_abelian());
    }

    #[test]
    fn annihilator_examples() {
        let a = Arc::new(aff2(3));
        // trivial module: annihilator is everything
        let triv = RestrictedModule::trivial(a.clone());
        assert_eq!(a.annihilator(&triv).dim(), 2);
        // x acts as 1, y as 0: annihilator is <y>
        let f1 = RestrictedModule::new(
            a.clone(),
            vec![FpMatrix::identity(3, 1), FpMatrix::zeros(3, 1, 1)],
        )
        .unwrap();
        let ann = a.annihilator(&f1);
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains_vec(&[0, 1]));
        // sl2 on its natural module is faithful
        let s = Arc::new(sl2(3));
        let nat = RestrictedModule::sl2_natural(s.clone());
        assert!(s.annihilator(&nat).is_zero());
    }

    #[test]
    fn direct_sum_validates() {
        let l = direct_sum(&aff2(3), &torus1(3)).unwrap();
        assert!(l.validate().passed());
        assert_eq!(l.dim(), 3);
    }
}
