use alloc::vec;
use alloc::vec::Vec;

use super::Rational;
use crate::Error;

/// Dense matrix over ℚ, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Arity {
                expected: cols,
                found: bad.len(),
            });
        }
        let nrows = rows.len();
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, Error> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Reduced row-echelon form and pivot columns (strictly increasing).
    /// Zero rows are kept at the bottom so the shape is unchanged.
    pub fn row_reduce(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= &v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl core::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Sparse row vector: sorted `(column, value)` pairs with nonzero values.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incrementally maintained reduced row-echelon basis of a row space.
///
/// Rows are stored fully reduced: every stored row is zero in every other
/// row's pivot column, so reducing a vector costs one pass over its
/// entries in pivot columns.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    cols: usize,
    // pivot column -> row (with leading 1 at the pivot)
    rows: alloc::collections::BTreeMap<usize, SparseRow>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Default::default(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn pivot_row(&self, c: usize) -> Option<&SparseRow> {
        self.rows.get(&c)
    }

    /// Reduces a dense vector modulo the stored row space.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (&c, row) in &self.rows {
            if out[c].is_zero() {
                continue;
            }
            let f = out[c].clone();
            for (j, x) in row {
                out[*j] -= &(x * &f);
            }
        }
        out
    }

    /// Inserts a vector; returns `true` if it enlarged the row space.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(lead) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[lead].recip();
        for x in r.iter_mut().skip(lead) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let sparse: SparseRow = r
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        // keep the basis fully reduced
        for row in self.rows.values_mut() {
            let Ok(k) = row.binary_search_by_key(&lead, |(j, _)| *j) else {
                continue;
            };
            let f = row[k].1.clone();
            let mut dense = vec![Rational::zero(); self.cols];
            for (j, x) in row.drain(..) {
                dense[j] = x;
            }
            for (j, x) in &sparse {
                dense[*j] -= &(x * &f);
            }
            *row = dense
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
        self.rows.insert(lead, sparse);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_reduced() {
        let id = ExactMatrix::identity(4);
        let (r, piv) = id.row_reduce();
        assert_eq!(r, id);
        assert_eq!(piv, [0, 1, 2, 3]);
    }

    #[test]
    fn rank_one() {
        let m = ExactMatrix::from_i64(&[&[2, 4], &[1, 2]]).unwrap();
        let (r, piv) = m.row_reduce();
        assert_eq!(r, ExactMatrix::from_i64(&[&[1, 2], &[0, 0]]).unwrap());
        assert_eq!(piv, [0]);
    }

    #[test]
    fn echelon_basis_matches_dense() {
        let m =
            ExactMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]])
                .unwrap();
        let mut eb = EchelonBasis::new(4);
        let inserted: Vec<bool> = (0..4).map(|i| eb.insert(m.row(i))).collect();
        assert_eq!(inserted, [true, false, true, false]);
        let (r, piv) = m.row_reduce();
        assert_eq!(eb.pivots().collect::<Vec<_>>(), piv);
        for (k, &c) in piv.iter().enumerate() {
            let dense = {
                let mut d = vec![Rational::zero(); 4];
                for (j, x) in eb.pivot_row(c).unwrap() {
                    d[*j] = x.clone();
                }
                d
            };
            assert_eq!(dense.as_slice(), r.row(k));
        }
    }
}
