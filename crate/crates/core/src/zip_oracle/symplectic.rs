use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{FpMatrix, PrimeField, Subspace};

/// `F_p^{2g}` with basis `e1..eg, f1..fg` and `<e_i, f_j> = δ_ij`.
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    g: usize,
    field: PrimeField,
    gram: FpMatrix,
}

impl SymplecticSpace {
    pub fn new(g: usize, field: PrimeField) -> Self {
        let n = 2 * g;
        let mut gram = FpMatrix::zeros(n, n);
        for i in 0..g {
            gram.set(i, g + i, 1);
            gram.set(g + i, i, field.neg(1));
        }
        SymplecticSpace { g, field, gram }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn gram(&self) -> &FpMatrix {
        &self.gram
    }

    pub fn form(&self, x: &[u8], y: &[u8]) -> u8 {
        let f = &self.field;
        let jy = self.gram.apply(y, f);
        x.iter()
            .zip(&jy)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    pub fn perp(&self, u: &Subspace) -> Subspace {
        let f = &self.field;
        Subspace::span(&u.basis().mul(&self.gram, f).nullspace(f), f)
    }

    pub fn is_isotropic(&self, u: &Subspace) -> bool {
        let b = u.basis();
        b.mul(&self.gram, &self.field)
            .mul(&b.transpose(), &self.field)
            .is_zero()
    }

    pub fn is_lagrangian(&self, u: &Subspace) -> bool {
        u.dim() == self.g && self.is_isotropic(u)
    }

    /// `s^T J s = J`.
    pub fn is_symplectic(&self, s: &FpMatrix) -> bool {
        let f = &self.field;
        s.transpose().mul(&self.gram, f).mul(s, f) == self.gram
    }

    pub fn unit(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.dim()];
        v[i] = 1;
        v
    }

    /// Transvection `x ↦ x + c<v, x> v`.
    pub fn transvection(&self, v: &[u8], c: u8) -> FpMatrix {
        let f = &self.field;
        let n = self.dim();
        let mut m = FpMatrix::identity(n);
        for j in 0..n {
            let ve = self.form(v, &self.unit(j));
            for (i, &vi) in v.iter().enumerate() {
                let add = f.mul(c, f.mul(ve, vi));
                m.set(i, j, f.add(m.get(i, j), add));
            }
        }
        m
    }

    /// Generators of `Sp_{2g}(F_p)` as `(s, s^{-1})` pairs: transvections
    /// along every `e_i`, `f_i`, `e_i + e_{i+1}` and `e_i + f_{i+1}`.
    pub fn generators(&self) -> Vec<(FpMatrix, FpMatrix)> {
        let g = self.g;
        let mut dirs: Vec<Vec<u8>> = Vec::new();
        for i in 0..g {
            dirs.push(self.unit(i));
            dirs.push(self.unit(g + i));
        }
        for i in 0..g.saturating_sub(1) {
            let mut v = self.unit(i);
            v[i + 1] = 1;
            dirs.push(v);
            let mut v = self.unit(i);
            v[g + i + 1] = 1;
            dirs.push(v);
        }
        let minus_one = self.field.neg(1);
        dirs.iter()
            .map(|v| (self.transvection(v, 1), self.transvection(v, minus_one)))
            .collect()
    }

    /// `|Sp_{2g}(F_p)| = p^{g²} Π (p^{2i} - 1)`.
    pub fn group_order(&self) -> u64 {
        let q = self.field.p() as u64;
        let g = self.g as u32;
        q.pow(g * g) * (1..=g).map(|i| q.pow(2 * i) - 1).product::<u64>()
    }

    /// Closes the generator set under multiplication. Exponential; only for
    /// validating the generators on tiny groups.
    pub fn generated_group_order(&self, limit: usize) -> Option<usize> {
        let f = &self.field;
        let gens: Vec<FpMatrix> = self.generators().into_iter().map(|(s, _)| s).collect();
        let id = FpMatrix::identity(self.dim());
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for s in &gens {
                let next = m.mul(s, f);
                if seen.insert(next.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(next);
                }
            }
        }
        Some(seen.len())
    }
}
