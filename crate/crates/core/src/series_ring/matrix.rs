//! Matrices over `k[[t]] / t^N`: products, valuation-pivoting elimination,
//! Smith form and kernels.

use crate::error::{Error, Result};
use crate::field::{Embedding, FieldMatrix, Fq};

use super::{Series, SeriesPoly, SeriesRing, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Series>,
}

/// Result of diagonalizing `M` by row and column operations.
///
/// `R M C = diag(pivots)` for some invertible `R`; only the column transform
/// `C` is kept. The first `rank` pivots have certified valuations; the
/// remaining diagonal entries vanish at the recorded precision.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub pivots: Vec<Valuation>,
    pub rank: usize,
    pub column_transform: SeriesMatrix,
}

impl SeriesMatrix {
    pub fn zeros(ring: &SeriesRing, rows: usize, cols: usize) -> Self {
        SeriesMatrix { rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &SeriesRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Series>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        SeriesMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &SeriesRing, n: usize, cols: &[Vec<Series>]) -> Self {
        let mut m = Self::zeros(ring, n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
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
    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Series) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Series> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Series> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Series>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Smallest entry precision.
    pub fn precision(&self) -> usize {
        self.entries.iter().map(Series::precision).min().unwrap_or(0)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        self.map(|s| s.truncate(precision))
    }

    fn map(&self, f: impl Fn(&Series) -> Series) -> Self {
        SeriesMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn map_field(&self, ring: &SeriesRing, emb: &Embedding) -> Self {
        self.map(|s| ring.map_field(s, emb))
    }

    /// Reduction modulo `t`; every entry must have positive precision.
    pub fn mod_t(&self) -> Result<FieldMatrix> {
        let mut out = FieldMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = self.get(i, j).coeff(0).ok_or_else(|| {
                    Error::PrecisionTooLow("entry unknown modulo t".into())
                })?;
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    pub fn add(&self, ring: &SeriesRing, other: &SeriesMatrix) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect();
        SeriesMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, ring: &SeriesRing, other: &SeriesMatrix) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| ring.sub(a, b)).collect();
        SeriesMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, ring: &SeriesRing, other: &SeriesMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let a: Vec<&Series> = (0..self.cols).map(|l| self.get(i, l)).collect();
            for j in 0..other.cols {
                let b: Vec<&Series> = (0..other.rows).map(|l| other.get(l, j)).collect();
                entries.push(ring.dot(&a, &b));
            }
        }
        SeriesMatrix { rows: self.rows, cols: other.cols, entries }
    }

    pub fn mul_vec(&self, ring: &SeriesRing, v: &[Series]) -> Vec<Series> {
        let b: Vec<&Series> = v.iter().collect();
        (0..self.rows)
            .map(|i| {
                let a: Vec<&Series> = (0..self.cols).map(|l| self.get(i, l)).collect();
                ring.dot(&a, &b)
            })
            .collect()
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, ring: &SeriesRing, f: &SeriesPoly) -> Self {
        let n = self.rows;
        let d = f.degree();
        let mut acc = Self::zeros(ring, n, n);
        for i in 0..n {
            acc.set(i, i, f.coeff(d).clone());
        }
        for k in (0..d).rev() {
            acc = acc.mul(ring, self);
            for i in 0..n {
                let v = ring.add(acc.get(i, i), f.coeff(k));
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Full-pivot elimination choosing an entry of minimal certified
    /// valuation. Returns the `t`-adic valuation of the determinant.
    pub fn det_valuation(&self, ring: &SeriesRing) -> Valuation {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut total = 0u32;
        for k in 0..n {
            let (best, unknown) = a.pivot_search(k, k);
            let Some((pi, pj, v)) = best else {
                // remaining block vanishes at known precision
                return Valuation::AtLeast(total + (n - k) as u32 * unknown);
            };
            if unknown < v {
                return Valuation::AtLeast(total + (n - k) as u32 * unknown);
            }
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            total += v;
            a.eliminate_below(ring, k);
        }
        Valuation::Exact(total)
    }

    /// Smallest certified valuation in the block starting at `(r0, c0)`, and
    /// the smallest precision among entries that vanish at known digits.
    fn pivot_search(&self, r0: usize, c0: usize) -> (Option<(usize, usize, u32)>, u32) {
        let mut best: Option<(usize, usize, u32)> = None;
        let mut unknown = u32::MAX;
        for i in r0..self.rows {
            for j in c0..self.cols {
                match self.get(i, j).valuation() {
                    Valuation::Exact(v) => {
                        if best.is_none_or(|(_, _, b)| v < b) {
                            best = Some((i, j, v));
                        }
                    }
                    Valuation::AtLeast(p) => unknown = unknown.min(p),
                }
            }
        }
        (best, unknown)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.entries.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// Clears column `k` below the pivot `(k, k)` with row operations.
    fn eliminate_below(&mut self, ring: &SeriesRing, k: usize) {
        let pivot = self.get(k, k).clone();
        for i in k + 1..self.rows {
            // a vanishing entry still bounds the precision of its row
            let a = self.get(i, k);
            let q = ring.div_exact(a, &pivot).expect("pivot has minimal valuation");
            for j in k + 1..self.cols {
                let v = ring.sub(self.get(i, j), &ring.mul(&q, self.get(k, j)));
                self.set(i, j, v);
            }
            let p = self.get(i, k).precision();
            self.set(i, k, Series::zero(p));
        }
    }

    /// Diagonalizes by valuation-pivoting row and column operations.
    ///
    /// Stops when the remaining block vanishes at its known digits. Fails with
    /// `PrecisionTooLow` if an unresolved entry might have smaller valuation
    /// than the next pivot.
    pub fn smith_form(&self, ring: &SeriesRing) -> Result<SmithForm> {
        let (n, m) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut c = Self::identity(ring, m);
        let mut pivots = Vec::new();
        let steps = n.min(m);
        let mut rank = 0;
        for k in 0..steps {
            let (best, unknown) = a.pivot_search(k, k);
            let Some((pi, pj, v)) = best else {
                for _ in k..steps {
                    pivots.push(Valuation::AtLeast(unknown));
                }
                break;
            };
            if unknown < v {
                return Err(Error::PrecisionTooLow(format!(
                    "entry known only mod t^{unknown} competes with pivot of valuation {v}"
                )));
            }
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            c.swap_cols(k, pj);
            a.eliminate_below(ring, k);
            let pivot = a.get(k, k).clone();
            for j in k + 1..m {
                let x = a.get(k, j);
                let q = ring.div_exact(x, &pivot).expect("pivot has minimal valuation");
                for i in 0..m {
                    let v = ring.sub(c.get(i, j), &ring.mul(&q, c.get(i, k)));
                    c.set(i, j, v);
                }
                let p = a.get(k, j).precision();
                a.set(k, j, Series::zero(p));
            }
            pivots.push(Valuation::Exact(v));
            rank += 1;
        }
        Ok(SmithForm { pivots, rank, column_transform: c })
    }

    /// Inverse of a matrix whose determinant is a unit.
    pub fn inverse(&self, ring: &SeriesRing) -> Result<SeriesMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        let mut a = self.clone();
        let mut inv = Self::identity(ring, n);
        for k in 0..n {
            let pr = (k..n)
                .find(|&i| a.get(i, k).valuation() == Valuation::Exact(0))
                .ok_or(Error::NotAUnit)?;
            a.swap_rows(k, pr);
            inv.swap_rows(k, pr);
            let u = ring.invert_unit(a.get(k, k))?;
            for j in 0..n {
                let x = ring.mul(&u, a.get(k, j));
                a.set(k, j, x);
                let y = ring.mul(&u, inv.get(k, j));
                inv.set(k, j, y);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    let x = ring.sub(a.get(i, j), &ring.mul(&f, a.get(k, j)));
                    a.set(i, j, x);
                    let y = ring.sub(inv.get(i, j), &ring.mul(&f, inv.get(k, j)));
                    inv.set(i, j, y);
                }
            }
        }
        Ok(inv)
    }

    /// Solves `A x = b` on representatives modulo `t^P`, `P` the smallest
    /// input precision. Quotients by pivots are taken digitwise as if every
    /// input were exact; the returned `x` satisfies `A x = b` modulo `t^P`.
    ///
    /// Fails with `NotCoprime` when the matrix is singular at precision `P`
    /// and with `NoConvergence` when `b` is not divisible enough.
    pub fn solve_fixed(&self, ring: &SeriesRing, b: &[Series]) -> Result<Vec<Series>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let prec = self.precision().min(b.iter().map(Series::precision).min().unwrap_or(usize::MAX));
        let mut a = self.truncate(prec);
        let mut rhs: Vec<Series> = b.iter().map(|s| s.truncate(prec)).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut pivval = Vec::with_capacity(n);
        for k in 0..n {
            let (best, _) = a.pivot_search(k, k);
            let Some((pi, pj, v)) = best else {
                return Err(Error::NotCoprime(format!("linear system singular modulo t^{prec}")));
            };
            a.swap_rows(k, pi);
            rhs.swap(k, pi);
            a.swap_cols(k, pj);
            perm.swap(k, pj);
            pivval.push(v as usize);
            let pinv = fixed_unit_inverse(ring, a.get(k, k), v as usize, prec)?;
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let q = ring.mul_fixed(&shift_down(a.get(i, k), v as usize, prec), &pinv);
                for j in k + 1..n {
                    let x = ring.sub(a.get(i, j), &ring.mul_fixed(&q, a.get(k, j)));
                    a.set(i, j, x);
                }
                rhs[i] = ring.sub(&rhs[i], &ring.mul_fixed(&q, &rhs[k]));
                a.set(i, k, Series::zero(prec));
            }
        }
        let mut y = vec![Series::zero(prec); n];
        for k in (0..n).rev() {
            let mut num = rhs[k].clone();
            for j in k + 1..n {
                num = ring.sub(&num, &ring.mul_fixed(a.get(k, j), &y[j]));
            }
            let v = pivval[k];
            if num.valuation().lower_bound() < v as u32 {
                return Err(Error::NoConvergence(format!(
                    "right-hand side not divisible by pivot of valuation {v}"
                )));
            }
            let pinv = fixed_unit_inverse(ring, a.get(k, k), v, prec)?;
            y[k] = ring.mul_fixed(&shift_down(&num, v, prec), &pinv);
        }
        let mut x = vec![Series::zero(prec); n];
        for (k, &col) in perm.iter().enumerate() {
            x[col] = y[k].clone();
        }
        Ok(x)
    }
}

/// `a / t^v` padded with zeros back to precision `prec`.
fn shift_down(a: &Series, v: usize, prec: usize) -> Series {
    let tail: Vec<Fq> = a.coeffs()[v.min(a.precision())..].to_vec();
    Series::from_coeffs(tail).pad_to(prec)
}

/// Inverse of the unit part of a pivot `t^v u`, padded to `prec`.
fn fixed_unit_inverse(ring: &SeriesRing, p: &Series, v: usize, prec: usize) -> Result<Series> {
    ring.invert_unit(&shift_down(p, v, prec))
}
