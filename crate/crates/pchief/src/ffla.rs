//! Dense exact linear algebra over the prime field F_p.
//!
//! Everything else in the crate reduces to the operations here: reduced
//! row-echelon form, affine system solving, and subspace arithmetic with a
//! canonical (rref) basis so that subspace equality is structural equality.

use crate::{Error, Result};

/// Trial-division primality check. Inputs here are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` modulo the prime `p`, `a` nonzero mod p.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    // Fermat; p is tiny.
    let mut acc: u64 = 1;
    let mut base: u64 = (a % p) as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A dense matrix over F_p with entries stored row-major as canonical
/// residues in `{0, .., p-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(Self { p, rows, cols, entries })
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self::new(p, rows, cols, vec![0; rows * cols]).expect("zero matrix")
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from rows of equal length; `rows` may be empty only via
    /// `zeros`/`from_rows_with_cols`.
    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend_from_slice(r);
        }
        Self::new(p, rows.len(), cols, entries)
    }

    pub fn from_rows_with_cols(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if rows.is_empty() {
            return Self::new(p, 0, cols, vec![]);
        }
        let m = Self::from_rows(p, rows)?;
        if m.cols != cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {cols} columns, got {}",
                m.cols
            )));
        }
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.p - 1)
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let s = s % self.p;
        let entries = self.entries.iter().map(|&a| a * s % self.p).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = (out.get(r, c) as u64 + a * other.get(k, c) as u64) % p;
                    out.set(r, c, v as u32);
                }
            }
        }
        out
    }

    /// Matrix-vector product, `v` of length `cols`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc += self.get(r, c) as u64 * v[c] as u64;
                }
                (acc % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Stack `self` above `other`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Place `self` left of `other`.
    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMatrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Reduced row-echelon form together with rank and pivot columns.
    pub fn rref(&self) -> (FpMatrix, usize, Vec<usize>) {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = inv_mod(m.get(r, c), m.p) as u64;
            for j in 0..m.cols {
                m.set(r, j, (m.get(r, j) as u64 * inv % p) as u32);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c) == 0 {
                    continue;
                }
                let f = m.get(i, c) as u64;
                for j in 0..m.cols {
                    let v = (m.get(i, j) as u64 + (p - f) * m.get(r, j) as u64) % p;
                    m.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right null space `{x : self * x = 0}`, returned as the
    /// rows of a matrix with `cols` columns.
    pub fn kernel(&self) -> FpMatrix {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u32; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = (self.p - r.get(i, f)) % self.p;
            }
            rows.push(v);
        }
        FpMatrix::from_rows_with_cols(self.p, self.cols, &rows).expect("kernel basis")
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hstack(&FpMatrix::identity(self.p, self.rows));
        let (r, rank, _) = aug.rref();
        if rank < self.rows {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                inv.set(i, j, r.get(i, self.rows + j));
            }
        }
        Some(inv)
    }
}

/// Solve `a x = b` for a column vector `b`. Returns a particular solution
/// together with a basis of the homogeneous solution space, or `None` when
/// the system is inconsistent.
pub fn solve_affine(a: &FpMatrix, b: &[u32]) -> Result<Option<(Vec<u32>, Subspace)>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but rhs has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let bcol = FpMatrix::new(a.p(), a.rows(), 1, b.to_vec())?;
    let aug = a.hstack(&bcol);
    let (r, rank, pivots) = aug.rref();
    if pivots.contains(&a.cols()) {
        return Ok(None); // pivot in the rhs column: inconsistent
    }
    let mut particular = vec![0u32; a.cols()];
    for (i, &pc) in pivots.iter().enumerate().take(rank) {
        particular[pc] = r.get(i, a.cols());
    }
    let null = Subspace::from_rows(a.kernel())?;
    Ok(Some((particular, null)))
}

/// A subspace of F_p^n held as a reduced row-echelon basis of full row rank,
/// so two equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Self {
            ambient,
            basis: FpMatrix::zeros(p, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self::from_rows(FpMatrix::identity(p, ambient)).expect("full space")
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: FpMatrix) -> Result<Self> {
        let ambient = m.cols();
        let (r, rank, pivots) = m.rref();
        let mut rows = Vec::with_capacity(rank);
        for i in 0..rank {
            rows.push(r.row(i));
        }
        let basis = FpMatrix::from_rows_with_cols(m.p(), ambient, &rows)?;
        Ok(Self { ambient, basis, pivots })
    }

    pub fn from_vectors(p: u32, ambient: usize, vs: &[Vec<u32>]) -> Result<Self> {
        Self::from_rows(FpMatrix::from_rows_with_cols(p, ambient, vs)?)
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains_vec(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the rref basis; membership iff it reduces to 0.
        let p = self.p() as u64;
        let mut v = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc] as u64;
            if f == 0 {
                continue;
            }
            for c in 0..self.ambient {
                v[c] = ((v[c] as u64 + (p - f) * self.basis.get(i, c) as u64) % p) as u32;
            }
        }
        v.iter().all(|&e| e == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|r| self.contains_vec(r))
    }

    /// Coordinates of a member vector in the rref basis (pivot entries).
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        debug_assert!(self.contains_vec(v));
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// The member vector with the given coordinates.
    pub fn from_coords(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let p = self.p() as u64;
        let mut v = vec![0u32; self.ambient];
        for (i, &c) in coords.iter().enumerate() {
            for j in 0..self.ambient {
                v[j] = ((v[j] as u64 + c as u64 * self.basis.get(i, j) as u64) % p) as u32;
            }
        }
        v
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Subspace::from_rows(self.basis.vstack(&other.basis))
    }

    /// Intersection via the Zassenhaus double-echelon method.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let p = self.p();
        let n = self.ambient;
        // Block matrix [[U, U], [V, 0]]; after elimination, rows with zero
        // left half carry an intersection basis in the right half.
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&FpMatrix::zeros(p, other.dim(), n));
        let (r, rank, _) = top.vstack(&bottom).rref();
        let mut rows = Vec::new();
        for i in 0..rank {
            if (0..n).all(|c| r.get(i, c) == 0) {
                rows.push((n..2 * n).map(|c| r.get(i, c)).collect());
            }
        }
        Subspace::from_vectors(p, n, &rows)
    }

    /// A complement `C` with `self ⊕ C` equal to the given ambient space
    /// (the full space), built from standard basis vectors.
    pub fn extend_to_complement(&self) -> Subspace {
        let p = self.p();
        let mut current = self.basis.clone();
        let mut rank = self.dim();
        let mut comp_rows = Vec::new();
        for j in 0..self.ambient {
            let mut e = vec![0u32; self.ambient];
            e[j] = 1;
            let cand = current.vstack(
                &FpMatrix::from_rows_with_cols(p, self.ambient, &[e.clone()]).expect("unit row"),
            );
            if cand.rank() > rank {
                rank += 1;
                current = cand;
                comp_rows.push(e);
            }
            if rank == self.ambient {
                break;
            }
        }
        Subspace::from_vectors(p, self.ambient, &comp_rows).expect("complement")
    }

    /// A matrix `W` with `ker W = self` (double orthogonal complement).
    pub fn kernel_description(&self) -> FpMatrix {
        self.basis.kernel()
    }

    /// All vectors of the subspace, enumerated by coordinates. Count is
    /// p^dim; callers guard the size.
    pub fn enumerate(&self) -> Vec<Vec<u32>> {
        let p = self.p();
        let d = self.dim();
        let total = (p as u64).pow(d as u32);
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut coords = vec![0u32; d];
            let mut k = idx;
            for c in coords.iter_mut() {
                *c = (k % p as u64) as u32;
                k /= p as u64;
            }
            out.push(self.from_coords(&coords));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: u32, rows: &[&[u32]]) -> FpMatrix {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        FpMatrix::from_rows(p, &rows).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FpMatrix::identity(3, 3);
        let (r, rank, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
        assert_eq!(pivots, vec![0, 1, 2]);

        let z = FpMatrix::zeros(3, 2, 4);
        let (r, rank, _) = z.rref();
        assert_eq!(r, z);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let m = mat(5, &[&[1, 2], &[2, 4]]);
        let (r, rank, pivots) = m.rref();
        assert_eq!(r, mat(5, &[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_idempotent_and_rank_transpose() {
        let m = mat(3, &[&[1, 2, 0], &[2, 1, 1], &[0, 0, 2], &[1, 2, 2]]);
        let (r, _, _) = m.rref();
        let (rr, _, _) = r.rref();
        assert_eq!(r, rr);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = FpMatrix::identity(7, 3);
        let (part, null) = solve_affine(&id, &[3, 5, 6]).unwrap().unwrap();
        assert_eq!(part, vec![3, 5, 6]);
        assert_eq!(null.dim(), 0);

        let z = FpMatrix::zeros(7, 2, 3);
        assert!(solve_affine(&z, &[1, 0]).unwrap().is_none());
    }

    #[test]
    fn solve_affine_f2_line() {
        // x + y = 1 over F_2
        let a = mat(2, &[&[1, 1]]);
        let (part, null) = solve_affine(&a, &[1]).unwrap().unwrap();
        assert_eq!(part, vec![1, 0]);
        assert_eq!(null.dim(), 1);
        assert!(null.contains_vec(&[1, 1]));
        // oracle: enumerate all 4 vectors
        let sols: Vec<Vec<u32>> = (0..4u32)
            .map(|k| vec![k & 1, (k >> 1) & 1])
            .filter(|v| (v[0] + v[1]) % 2 == 1)
            .collect();
        assert_eq!(sols.len(), 2);
        for s in sols {
            let diff = vec![(s[0] + 2 - part[0]) % 2, (s[1] + 2 - part[1]) % 2];
            assert!(null.contains_vec(&diff));
        }
    }

    #[test]
    fn subspace_sum_intersect_lines() {
        let u = Subspace::from_vectors(3, 2, &[vec![1, 0]]).unwrap();
        let v = Subspace::from_vectors(3, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(u.sum(&v).unwrap().dim(), 2);
        assert_eq!(u.intersect(&v).unwrap().dim(), 0);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn complement_direct_sum() {
        let u = Subspace::from_vectors(2, 5, &[vec![1, 1, 0, 0, 1], vec![0, 0, 1, 1, 0]]).unwrap();
        let c = u.extend_to_complement();
        assert_eq!(u.dim() + c.dim(), 5);
        assert_eq!(u.sum(&c).unwrap().dim(), 5);
        assert_eq!(u.intersect(&c).unwrap().dim(), 0);
    }

    #[test]
    fn kernel_description_round_trip() {
        let u = Subspace::from_vectors(3, 4, &[vec![1, 2, 0, 1], vec![0, 0, 1, 2]]).unwrap();
        let w = u.kernel_description();
        let back = Subspace::from_rows(w.kernel()).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn dimension_formula_exhaustive_f2() {
        // random-ish U, V in F_2^5, membership checked by enumeration
        let u = Subspace::from_vectors(2, 5, &[vec![1, 0, 1, 0, 1], vec![0, 1, 1, 0, 0]]).unwrap();
        let v = Subspace::from_vectors(2, 5, &[vec![1, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]]).unwrap();
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        // exhaustive membership count over all 32 vectors
        let mut count_i = 0u32;
        for k in 0..32u32 {
            let vec: Vec<u32> = (0..5).map(|b| (k >> b) & 1).collect();
            let in_u = u.contains_vec(&vec);
            let in_v = v.contains_vec(&vec);
            assert_eq!(in_u && in_v, i.contains_vec(&vec));
            if in_u && in_v {
                count_i += 1;
            }
        }
        assert_eq!(count_i, 2u32.pow(i.dim() as u32));
    }

    #[test]
    fn non_prime_rejected() {
        assert!(FpMatrix::new(4, 1, 1, vec![0]).is_err());
        assert!(FpMatrix::new(1, 1, 1, vec![0]).is_err());
    }
}
