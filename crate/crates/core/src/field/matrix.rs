//! Dense matrices over a [`GaloisField`].

use super::{Acc, Fq, GaloisField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(k: &GaloisField, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        FieldMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<Fq>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, v[i]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, k: &GaloisField, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Acc::default();
                for l in 0..self.cols {
                    k.acc_mul(&mut acc, self.get(i, l), other.get(l, j));
                }
                out.set(i, j, k.reduce(&acc));
            }
        }
        out
    }

    pub fn sub(&self, k: &GaloisField, other: &FieldMatrix) -> FieldMatrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect();
        FieldMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, k: &GaloisField, e: usize) -> FieldMatrix {
        let mut r = Self::identity(k, self.rows);
        for _ in 0..e {
            r = r.mul(k, self);
        }
        r
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, k: &GaloisField) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, row * m.cols + j);
            }
            let inv = k.inv(m.get(row, col)).expect("nonzero pivot");
            for j in 0..m.cols {
                m.set(row, j, k.mul(inv, m.get(row, j)));
            }
            for i in 0..m.rows {
                let c = m.get(i, col);
                if i != row && !c.is_zero() {
                    for j in 0..m.cols {
                        let v = k.sub(m.get(i, j), k.mul(c, m.get(row, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, k: &GaloisField) -> usize {
        self.rref(k).1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self, k: &GaloisField) -> Vec<Vec<Fq>> {
        let (r, pivots) = self.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Fq::ZERO; self.cols];
                v[f] = k.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, k: &GaloisField) -> Option<FieldMatrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, k.one());
        }
        let (r, pivots) = aug.rref(k);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: &GaloisField, rows: &[&[i64]]) -> FieldMatrix {
        FieldMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect())
    }

    #[test]
    fn rank_and_nullspace() {
        let k = GaloisField::prime(5).unwrap();
        let a = m(&k, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(&k), 2);
        let ns = a.nullspace(&k);
        assert_eq!(ns.len(), 1);
        let v = FieldMatrix::from_columns(3, &ns);
        assert!(a.mul(&k, &v).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let k = GaloisField::prime(7).unwrap();
        let a = m(&k, &[&[1, 2, 0], &[3, 1, 4], &[0, 5, 1]]);
        let inv = a.inverse(&k).unwrap();
        assert_eq!(a.mul(&k, &inv), FieldMatrix::identity(&k, 3));
        let singular = m(&k, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse(&k).is_none());
    }
}
