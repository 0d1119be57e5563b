//! Polynomials in `lambda` with truncated series coefficients.

use crate::error::{Error, Result};
use crate::field::Embedding;

use super::{Series, SeriesMatrix, SeriesRing, Valuation};

/// A polynomial `sum_k c_k lambda^k` over `k[[t]] / t^N`.
///
/// Coefficients are stored in ascending degree. For a monic polynomial of
/// degree `r`, [`SeriesPoly::b`] gives the coefficient `b_i` of
/// `lambda^(r - i)`, so `f = lambda^r + b_1 lambda^(r-1) + .. + b_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesPoly {
    coeffs: Vec<Series>,
}

impl SeriesPoly {
    /// From ascending coefficients `c_0, c_1, ..`.
    pub fn from_ascending(coeffs: Vec<Series>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        SeriesPoly { coeffs }
    }

    /// From coefficients listed leading first.
    pub fn from_leading_first(mut coeffs: Vec<Series>) -> Self {
        coeffs.reverse();
        Self::from_ascending(coeffs)
    }

    /// Monic polynomial `lambda^r + b_1 lambda^(r-1) + .. + b_r`.
    pub fn monic_from_b(ring: &SeriesRing, b: &[Series]) -> Self {
        let mut c: Vec<Series> = b.iter().rev().cloned().collect();
        c.push(ring.one());
        Self::from_ascending(c)
    }

    /// Formal degree (index of the stored leading coefficient).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ascending(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn leading_first(&self) -> Vec<Series> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Coefficient of `lambda^k`.
    pub fn coeff(&self, k: usize) -> &Series {
        &self.coeffs[k]
    }

    /// Coefficient of `lambda^(deg - i)`.
    pub fn b(&self, i: usize) -> &Series {
        &self.coeffs[self.degree() - i]
    }

    /// Smallest coefficient precision.
    pub fn precision(&self) -> usize {
        self.coeffs.iter().map(Series::precision).min().unwrap_or(0)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        SeriesPoly { coeffs: self.coeffs.iter().map(|c| c.truncate(precision)).collect() }
    }

    /// Leading coefficient is one at every known digit.
    pub fn is_monic(&self, ring: &SeriesRing) -> bool {
        let lead = &self.coeffs[self.degree()];
        lead.coeff(0) == Some(ring.field().one()) && lead.coeffs()[1..].iter().all(|c| c.is_zero())
    }

    /// Coefficients agree up to `precision` (and the known digits).
    pub fn agrees_with(&self, other: &SeriesPoly, precision: usize) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
            (Some(a), Some(b)) => a.agrees_with(b, precision),
            (Some(a), None) | (None, Some(a)) => a.truncate(precision).is_zero(),
            (None, None) => true,
        })
    }

    pub fn add(&self, ring: &SeriesRing, other: &SeriesPoly) -> SeriesPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => ring.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        SeriesPoly { coeffs }
    }

    pub fn sub(&self, ring: &SeriesRing, other: &SeriesPoly) -> SeriesPoly {
        self.add(ring, &other.neg(ring))
    }

    pub fn neg(&self, ring: &SeriesRing) -> SeriesPoly {
        SeriesPoly { coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect() }
    }

    pub fn mul(&self, ring: &SeriesRing, other: &SeriesPoly) -> SeriesPoly {
        let (m, n) = (self.coeffs.len(), other.coeffs.len());
        let coeffs = (0..m + n - 1)
            .map(|d| {
                let lo = d.saturating_sub(n - 1);
                let hi = d.min(m - 1);
                let a: Vec<&Series> = (lo..=hi).map(|i| &self.coeffs[i]).collect();
                let b: Vec<&Series> = (lo..=hi).map(|i| &other.coeffs[d - i]).collect();
                ring.dot(&a, &b)
            })
            .collect();
        SeriesPoly { coeffs }
    }

    /// Product on representatives at fixed precision (see
    /// [`SeriesRing::mul_fixed`]).
    pub fn mul_fixed(&self, ring: &SeriesRing, other: &SeriesPoly) -> SeriesPoly {
        let (m, n) = (self.coeffs.len(), other.coeffs.len());
        let coeffs = (0..m + n - 1)
            .map(|d| {
                let lo = d.saturating_sub(n - 1);
                let hi = d.min(m - 1);
                (lo..=hi)
                    .map(|i| ring.mul_fixed(&self.coeffs[i], &other.coeffs[d - i]))
                    .reduce(|x, y| ring.add(&x, &y))
                    .unwrap()
            })
            .collect();
        SeriesPoly { coeffs }
    }

    /// Product of several polynomials.
    pub fn product(ring: &SeriesRing, factors: &[SeriesPoly]) -> SeriesPoly {
        factors
            .iter()
            .fold(SeriesPoly::from_ascending(vec![ring.one()]), |acc, f| acc.mul(ring, f))
    }

    pub fn map_field(&self, ring: &SeriesRing, emb: &Embedding) -> SeriesPoly {
        SeriesPoly { coeffs: self.coeffs.iter().map(|c| ring.map_field(c, emb)).collect() }
    }

    /// Eisenstein: monic, every non-leading coefficient in `tO`, and the
    /// constant term of valuation exactly one.
    pub fn is_eisenstein(&self, ring: &SeriesRing) -> bool {
        let d = self.degree();
        d >= 1
            && self.is_monic(ring)
            && self.coeffs[..d].iter().all(|c| c.valuation().lower_bound() >= 1)
            && self.coeffs[0].valuation() == Valuation::Exact(1)
    }

    /// Sylvester matrix of `self` (degree m) and `other` (degree n).
    pub fn sylvester(&self, ring: &SeriesRing, other: &SeriesPoly) -> SeriesMatrix {
        let (m, n) = (self.degree(), other.degree());
        let size = m + n;
        let mut s = SeriesMatrix::zeros(ring, size, size);
        let (f, g) = (self.leading_first(), other.leading_first());
        for i in 0..n {
            for (j, c) in f.iter().enumerate() {
                s.set(i, i + j, c.clone());
            }
        }
        for i in 0..m {
            for (j, c) in g.iter().enumerate() {
                s.set(n + i, i + j, c.clone());
            }
        }
        s
    }

    /// `t`-adic valuation of the resultant with `other`.
    pub fn resultant_valuation(&self, ring: &SeriesRing, other: &SeriesPoly) -> Valuation {
        if self.degree() + other.degree() == 0 {
            return Valuation::Exact(0);
        }
        self.sylvester(ring, other).det_valuation(ring)
    }

    /// `f(c lambda)` scaled: substitutes `lambda -> c * lambda` coefficientwise.
    pub fn scale_variable(&self, ring: &SeriesRing, c: &Series) -> SeriesPoly {
        let mut pow = ring.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(ring.mul(a, &pow));
            pow = ring.mul(&pow, c);
        }
        SeriesPoly { coeffs }
    }

    /// Rejects polynomials that are not monic.
    pub fn require_monic(&self, ring: &SeriesRing) -> Result<()> {
        if self.is_monic(ring) {
            Ok(())
        } else {
            Err(Error::InvalidInput("polynomial is not monic".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;

    fn ring(p: u32, n: usize) -> SeriesRing {
        SeriesRing::new(GaloisField::prime(p).unwrap(), n).unwrap()
    }

    /// Monic polynomial from `b_1, .., b_r` given as integer coefficient lists.
    fn monic(r: &SeriesRing, b: &[&[i64]]) -> SeriesPoly {
        let b: Vec<Series> = b.iter().map(|c| r.from_ints(c)).collect();
        SeriesPoly::monic_from_b(r, &b)
    }

    #[test]
    fn eisenstein_examples() {
        let r = ring(7, 6);
        assert!(monic(&r, &[&[0, 1], &[0, 3]]).is_eisenstein(&r));
        assert!(!monic(&r, &[&[-1]]).is_eisenstein(&r));
        assert!(!monic(&r, &[&[0], &[0, 0, 1]]).is_eisenstein(&r));
    }

    #[test]
    fn resultant_valuation_examples() {
        let r = ring(7, 8);
        let f = monic(&r, &[&[0, 1]]);
        let g = monic(&r, &[&[0, 2]]);
        assert_eq!(f.resultant_valuation(&r, &g), Valuation::Exact(1));
        // f = lambda^2 + t, g = lambda - t: Res = t^2 + t
        let f = monic(&r, &[&[0], &[0, 1]]);
        let g = monic(&r, &[&[0, -1]]);
        assert_eq!(f.resultant_valuation(&r, &g), Valuation::Exact(1));
        // Res(f, f) vanishes at every known digit
        assert!(!f.resultant_valuation(&r, &f).is_exact());
    }

    #[test]
    fn monic_layout() {
        let r = ring(5, 4);
        let f = monic(&r, &[&[1], &[2], &[3]]);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.b(1), &r.from_int(1));
        assert_eq!(f.coeff(0), &r.from_int(3));
        assert_eq!(f.leading_first()[0], r.one());
    }
}
