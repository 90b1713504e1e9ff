//! Dense complex operators on the 2^n-dimensional computational basis.
//!
//! Operators are stored block-diagonally with respect to a [`Sectors`]
//! partition of the basis. For a two-part Hamiltonian the partition is the
//! set of connected components of the nonzero pattern of both parts, so every
//! function of H1, H2 and H (propagators, products, commutators) stays block
//! diagonal in it. A model with no such structure gets a single block and the
//! representation degenerates to an ordinary dense matrix.

use std::sync::Arc;

use faer::{c64, Mat};

use crate::error::{input, Error, Result};
use crate::pauli::PauliSum;

/// Largest qubit count accepted by [`to_dense`] and friends.
pub const MAX_DENSE_QUBITS: usize = 14;

pub(crate) fn check_dense_cap(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Resource(format!(
            "dense representation of {n} qubits exceeds the cap of {MAX_DENSE_QUBITS}"
        )));
    }
    Ok(())
}

/// A partition of basis indices `0..dim` into invariant blocks.
#[derive(Debug, PartialEq, Eq)]
pub struct Sectors {
    dim: usize,
    blocks: Vec<Vec<usize>>,
    // basis index -> (block, position within block)
    locate: Vec<(u32, u32)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Groups the terms of a sum by flip mask. Terms sharing a mask land on the
/// same matrix entries and must be summed before testing for zero.
fn by_flip_mask(sum: &PauliSum) -> Vec<(u64, Vec<(c64, crate::pauli::PauliString)>)> {
    let mut groups: Vec<(u64, Vec<(c64, crate::pauli::PauliString)>)> = Vec::new();
    for (p, c) in sum.iter() {
        match groups.iter_mut().find(|(m, _)| *m == p.x_mask()) {
            Some((_, g)) => g.push((*c, *p)),
            None => groups.push((p.x_mask(), vec![(*c, *p)])),
        }
    }
    groups
}

const PATTERN_TOL: f64 = 1e-13;

impl Sectors {
    /// One block holding every basis state.
    pub fn trivial(dim: usize) -> Arc<Self> {
        Arc::new(Self {
            dim,
            blocks: vec![(0..dim).collect()],
            locate: (0..dim).map(|i| (0, i as u32)).collect(),
        })
    }

    fn from_blocks(dim: usize, blocks: Vec<Vec<usize>>) -> Arc<Self> {
        let mut locate = vec![(0u32, 0u32); dim];
        for (b, members) in blocks.iter().enumerate() {
            for (k, &i) in members.iter().enumerate() {
                locate[i] = (b as u32, k as u32);
            }
        }
        Arc::new(Self { dim, blocks, locate })
    }

    /// Connected components of the combined nonzero pattern of `sums`.
    pub fn from_sums(n: usize, sums: &[&PauliSum]) -> Result<Arc<Self>> {
        check_dense_cap(n)?;
        let dim = 1usize << n;
        let mut uf = UnionFind((0..dim).collect());
        for sum in sums {
            if sum.n() != n {
                return Err(input(format!("sum has {} qubits, expected {n}", sum.n())));
            }
            for (mask, terms) in by_flip_mask(sum) {
                if mask == 0 {
                    continue;
                }
                for col in 0..dim {
                    let v: c64 = terms.iter().map(|(c, p)| c * p.phase_on(col as u64)).sum();
                    if v.norm() > PATTERN_TOL {
                        uf.union(col, col ^ mask as usize);
                    }
                }
            }
        }
        let mut block_of_root = vec![usize::MAX; dim];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..dim {
            let r = uf.find(i);
            if block_of_root[r] == usize::MAX {
                block_of_root[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of_root[r]].push(i);
        }
        Ok(Self::from_blocks(dim, blocks))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block and in-block position of basis index `i`.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let (b, k) = self.locate[i];
        (b as usize, k as usize)
    }
}

/// A 2^n × 2^n complex matrix, block diagonal in its [`Sectors`].
#[derive(Debug, Clone)]
pub struct DenseOperator {
    sectors: Arc<Sectors>,
    blocks: Vec<Mat<c64>>,
}

impl DenseOperator {
    pub fn from_blocks(sectors: Arc<Sectors>, blocks: Vec<Mat<c64>>) -> Self {
        assert_eq!(sectors.num_blocks(), blocks.len(), "block count mismatch");
        for (b, m) in blocks.iter().enumerate() {
            let d = sectors.block(b).len();
            assert!(m.nrows() == d && m.ncols() == d, "block {b} has wrong shape");
        }
        Self { sectors, blocks }
    }

    pub fn identity(sectors: &Arc<Sectors>) -> Self {
        let blocks = sectors.blocks.iter().map(|b| Mat::identity(b.len(), b.len())).collect();
        Self { sectors: sectors.clone(), blocks }
    }

    pub fn zeros(sectors: &Arc<Sectors>) -> Self {
        let blocks = sectors.blocks.iter().map(|b| Mat::zeros(b.len(), b.len())).collect();
        Self { sectors: sectors.clone(), blocks }
    }

    /// Wraps a full square matrix whose dimension is a power of two.
    pub fn from_full(m: Mat<c64>) -> Result<Self> {
        let d = m.nrows();
        if m.ncols() != d || !d.is_power_of_two() {
            return Err(input(format!(
                "operator must be square with power-of-two dimension, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Self { sectors: Sectors::trivial(d), blocks: vec![m] })
    }

    /// Densifies `sum` into the blocks of `sectors`; fails if the sum couples
    /// two blocks.
    pub fn from_sum(sum: &PauliSum, sectors: &Arc<Sectors>) -> Result<Self> {
        check_dense_cap(sum.n())?;
        if sectors.dim() != 1usize << sum.n() {
            return Err(input("sector partition does not match the qubit count"));
        }
        let groups = by_flip_mask(sum);
        let mut op = Self::zeros(sectors);
        for (b, members) in sectors.blocks.iter().enumerate() {
            let block = &mut op.blocks[b];
            for (k, &col) in members.iter().enumerate() {
                for (mask, terms) in &groups {
                    let row = col ^ *mask as usize;
                    let (rb, rk) = sectors.locate(row);
                    let v: c64 = terms.iter().map(|(c, p)| c * p.phase_on(col as u64)).sum();
                    if rb != b {
                        if v.norm() > PATTERN_TOL {
                            return Err(input(format!(
                                "sum couples basis states {col} and {row} across symmetry sectors"
                            )));
                        }
                        continue;
                    }
                    block[(rk, k)] += v;
                }
            }
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.sectors.dim()
    }

    pub fn sectors(&self) -> &Arc<Sectors> {
        &self.sectors
    }

    pub fn blocks(&self) -> &[Mat<c64>] {
        &self.blocks
    }

    pub fn get(&self, row: usize, col: usize) -> c64 {
        let (rb, rk) = self.sectors.locate(row);
        let (cb, ck) = self.sectors.locate(col);
        if rb == cb {
            self.blocks[rb][(rk, ck)]
        } else {
            c64::new(0.0, 0.0)
        }
    }

    /// Expands to an ordinary `dim × dim` matrix.
    pub fn to_full(&self) -> Mat<c64> {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for (b, members) in self.sectors.blocks.iter().enumerate() {
            for (j, &col) in members.iter().enumerate() {
                for (i, &row) in members.iter().enumerate() {
                    m[(row, col)] = self.blocks[b][(i, j)];
                }
            }
        }
        m
    }

    fn same_layout(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.sectors, &other.sectors) || self.sectors == other.sectors,
            "operators live on different sector partitions"
        );
    }

    fn zip_with(&self, other: &Self, f: impl Fn(c64, c64) -> c64) -> Self {
        self.same_layout(other);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| Mat::from_fn(a.nrows(), a.ncols(), |i, j| f(a[(i, j)], b[(i, j)])))
            .collect();
        Self { sectors: self.sectors.clone(), blocks }
    }

    pub fn map_blocks(&self, f: impl Fn(&Mat<c64>) -> Mat<c64>) -> Self {
        Self { sectors: self.sectors.clone(), blocks: self.blocks.iter().map(f).collect() }
    }

    pub fn adjoint(&self) -> Self {
        self.map_blocks(|b| b.adjoint().to_owned())
    }

    pub fn scale(&self, c: c64) -> Self {
        self.map_blocks(|b| Mat::from_fn(b.nrows(), b.ncols(), |i, j| b[(i, j)] * c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_layout(other);
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect();
        Self { sectors: self.sectors.clone(), blocks }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| (0..b.ncols()).flat_map(move |j| (0..b.nrows()).map(move |i| b[(i, j)].norm())))
            .fold(0.0, f64::max)
    }

    /// `max |M - M^†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).max_abs()
    }

    /// Hermitian to `tol`, scaled by the largest entry when that exceeds one.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol * self.max_abs().max(1.0)
    }

    /// Matrix-vector product on a full-length state vector.
    pub fn apply(&self, v: &[c64]) -> Vec<c64> {
        assert_eq!(v.len(), self.dim(), "state length mismatch");
        let mut out = vec![c64::new(0.0, 0.0); v.len()];
        for (b, members) in self.sectors.blocks.iter().enumerate() {
            let m = &self.blocks[b];
            for (i, &row) in members.iter().enumerate() {
                out[row] = members.iter().enumerate().map(|(j, &col)| m[(i, j)] * v[col]).sum();
            }
        }
        out
    }
}

impl std::ops::Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: Self) -> DenseOperator {
        DenseOperator::mul(self, rhs)
    }
}

impl std::ops::Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: Self) -> DenseOperator {
        DenseOperator::add(self, rhs)
    }
}

impl std::ops::Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: Self) -> DenseOperator {
        DenseOperator::sub(self, rhs)
    }
}

/// Full Kronecker expansion of `sum`, qubit 0 as the most significant factor.
pub fn to_dense(sum: &PauliSum) -> Result<DenseOperator> {
    check_dense_cap(sum.n())?;
    DenseOperator::from_sum(sum, &Sectors::trivial(1usize << sum.n()))
}

/// Inner product `<a|b>`.
pub fn inner(a: &[c64], b: &[c64]) -> c64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(n: usize, terms: &[&str]) -> PauliSum {
        PauliSum::parse(n, terms).unwrap()
    }

    #[test]
    fn pauli_z_is_diagonal() {
        let z = to_dense(&sum(1, &["Z"])).unwrap().to_full();
        assert_eq!(z[(0, 0)], c64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], c64::new(-1.0, 0.0));
        assert_eq!(z[(0, 1)], c64::new(0.0, 0.0));
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        let m = to_dense(&sum(2, &["XI"])).unwrap().to_full();
        let one = c64::new(1.0, 0.0);
        for (r, c) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
            assert_eq!(m[(r, c)], one);
        }
        assert_eq!(m[(0, 1)], c64::new(0.0, 0.0));
    }

    #[test]
    fn pauli_y_entries() {
        let y = to_dense(&sum(1, &["Y"])).unwrap().to_full();
        assert_eq!(y[(0, 1)], c64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], c64::new(0.0, 1.0));
    }

    #[test]
    fn cap_is_enforced() {
        let big = PauliSum::parse(15, &["ZIIIIIIIIIIIIII"]).unwrap();
        assert!(matches!(to_dense(&big), Err(Error::Resource(_))));
    }

    #[test]
    fn heisenberg_bond_splits_by_magnetization() {
        let h = sum(2, &["XX", "YY", "ZZ"]);
        let s = Sectors::from_sums(2, &[&h]).unwrap();
        // |00>, |01>+|10> pair, |11>
        assert_eq!(s.block_sizes(), vec![1, 2, 1]);
        let blocked = DenseOperator::from_sum(&h, &s).unwrap();
        let full = to_dense(&h).unwrap();
        assert_eq!(blocked.to_full(), full.to_full());
    }

    #[test]
    fn cross_sector_terms_are_rejected() {
        let h = sum(2, &["ZZ"]);
        let s = Sectors::from_sums(2, &[&h]).unwrap();
        assert_eq!(s.num_blocks(), 4);
        assert!(DenseOperator::from_sum(&sum(2, &["XI"]), &s).is_err());
    }

    #[test]
    fn apply_matches_full_product() {
        let h = sum(2, &["XX", "YY", "0.3 ZI"]);
        let s = Sectors::from_sums(2, &[&h]).unwrap();
        let op = DenseOperator::from_sum(&h, &s).unwrap();
        let v: Vec<c64> = (0..4).map(|k| c64::new(k as f64, 1.0 - k as f64)).collect();
        let full = op.to_full();
        let got = op.apply(&v);
        for r in 0..4 {
            let want: c64 = (0..4).map(|c| full[(r, c)] * v[c]).sum();
            assert!((got[r] - want).norm() < 1e-14);
        }
    }
}
