//! Dense linear algebra over a small prime field `F_p`, entries stored as
//! `u8` (so `p ≤ 13` keeps every product below `u8::MAX²`).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::Error;

pub const MAX_PRIME: u32 = 13;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u8,
    inv: [u8; 16],
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, Error> {
        if !crate::brokemper::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p > MAX_PRIME {
            return Err(Error::ResourceGuard(alloc::format!(
                "prime {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        let mut inv = [0u8; 16];
        for a in 1..p {
            inv[a as usize] = (1..p).find(|b| a * b % p == 1).unwrap() as u8;
        }
        Ok(PrimeField { p: p as u8, inv })
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// `|GL_n(F_p)|`.
    pub fn gl_order(&self, n: u32) -> u64 {
        let q = self.p as u64;
        (0..n).map(|i| q.pow(n) - q.pow(i)).product()
    }
}

/// Row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PartialOrd for FpMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FpMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FpMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        FpMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix, f: &PrimeField) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = f.p();
        let mut out = FpMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u32 * other.get(k, j) as u32;
                }
                out.set(i, j, (acc % p) as u8);
            }
        }
        out
    }

    pub fn apply(&self, v: &[u8], f: &PrimeField) -> Vec<u8> {
        let p = f.p();
        (0..self.rows)
            .map(|i| {
                let acc: u32 = (0..self.cols)
                    .map(|k| self.get(i, k) as u32 * v[k] as u32)
                    .sum();
                (acc % p) as u8
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row-echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self, f: &PrimeField) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.rows = r;
        m.data.truncate(r * m.cols);
        (m, pivots)
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis (as rows) of `{v : self · v = 0}`.
    pub fn nullspace(&self, f: &PrimeField) -> FpMatrix {
        let (r, pivots) = self.rref(f);
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMatrix::zeros(free.len(), n);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    pub fn pow(&self, e: u32, f: &PrimeField) -> FpMatrix {
        let mut out = FpMatrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self, f);
        }
        out
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, f: &PrimeField) -> Option<FpMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut aug = FpMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn stack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Subspace of `F_p^n`, stored by its canonical reduced row-echelon basis,
/// so equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subspace {
    basis: FpMatrix,
}

impl Subspace {
    pub fn span(rows: &FpMatrix, f: &PrimeField) -> Self {
        Subspace {
            basis: rows.rref(f).0,
        }
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            basis: FpMatrix::zeros(0, n),
        }
    }

    pub fn whole(n: usize) -> Self {
        Subspace {
            basis: FpMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    /// Rows spanning the annihilator under the dot product: `v ∈ self` iff
    /// `ann · v = 0`.
    pub fn annihilator(&self, f: &PrimeField) -> FpMatrix {
        self.basis.nullspace(f)
    }

    pub fn contains_vector(&self, v: &[u8], f: &PrimeField) -> bool {
        let ann = self.annihilator(f);
        ann.apply(v, f).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace, f: &PrimeField) -> bool {
        let ann = self.annihilator(f);
        ann.mul(&other.basis.transpose(), f).is_zero()
    }

    pub fn sum(&self, other: &Subspace, f: &PrimeField) -> Subspace {
        Subspace::span(&self.basis.stack(&other.basis), f)
    }

    pub fn intersect(&self, other: &Subspace, f: &PrimeField) -> Subspace {
        let ann = self.annihilator(f).stack(&other.annihilator(f));
        Subspace::span(&ann.nullspace(f), f)
    }

    /// `{m v : v ∈ self}`.
    pub fn image(&self, m: &FpMatrix, f: &PrimeField) -> Subspace {
        let rows = m.mul(&self.basis.transpose(), f).transpose();
        Subspace::span(&rows, f)
    }

    /// `{v : m v ∈ self}`.
    pub fn preimage(&self, m: &FpMatrix, f: &PrimeField) -> Subspace {
        let cond = self.annihilator(f).mul(m, f);
        if cond.rows == 0 {
            return Subspace::whole(m.cols);
        }
        Subspace::span(&cond.nullspace(f), f)
    }
}
