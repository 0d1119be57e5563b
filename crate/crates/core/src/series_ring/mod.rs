//! Truncated power series `k[[t]] / t^N` with per-element precision.
//!
//! A [`Series`] stores exactly the coefficients it knows: its precision is the
//! length of its coefficient vector. Arithmetic never claims more precision
//! than the inputs justify, so a valuation reported as [`Valuation::Exact`] is
//! certified. Polynomials over the ring live in [`poly`], matrices in
//! [`matrix`], factor lifting in [`hensel`].

pub mod hensel;
pub mod matrix;
pub mod poly;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Acc, Fq, GaloisField};

pub use hensel::hensel_lift;
pub use matrix::{SeriesMatrix, SmithForm};
pub use poly::SeriesPoly;

/// `t`-adic valuation of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Valuation {
    /// The series has a nonzero coefficient and this is the first one.
    Exact(u32),
    /// All known coefficients vanish; the true valuation is at least this.
    AtLeast(u32),
}

impl Valuation {
    pub fn lower_bound(&self) -> u32 {
        match *self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn exact(&self) -> Option<u32> {
        match *self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// An element of `k[[t]]` known modulo `t^precision`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Series {
    coeffs: Vec<Fq>,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(t^{})", self.coeffs, self.coeffs.len())
    }
}

impl Series {
    /// Series with the given coefficients; precision is their number.
    pub fn from_coeffs(coeffs: Vec<Fq>) -> Self {
        Series { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        Series { coeffs: vec![Fq::ZERO; precision] }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; `None` beyond the precision.
    pub fn coeff(&self, i: usize) -> Option<Fq> {
        self.coeffs.get(i).copied()
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Valuation::Exact(v as u32),
            None => Valuation::AtLeast(self.coeffs.len() as u32),
        }
    }

    /// Index of the first nonzero coefficient, or the precision.
    #[inline]
    fn val_index(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drops coefficients beyond `precision`.
    pub fn truncate(&self, precision: usize) -> Series {
        Series { coeffs: self.coeffs[..precision.min(self.coeffs.len())].to_vec() }
    }

    /// Same coefficients, padded with zeros up to `precision`.
    ///
    /// This chooses a representative; it does not certify the new digits.
    pub fn pad_to(&self, precision: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < precision {
            coeffs.resize(precision, Fq::ZERO);
        }
        Series { coeffs }
    }

    /// True when `self` and `other` agree up to the smaller precision,
    /// capped at `precision`.
    pub fn agrees_with(&self, other: &Series, precision: usize) -> bool {
        let n = precision.min(self.precision()).min(other.precision());
        self.coeffs[..n] == other.coeffs[..n]
    }
}

/// The ring `k[[t]] / t^N` over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRing {
    field: GaloisField,
    precision: usize,
}

impl SeriesRing {
    pub fn new(field: GaloisField, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidInput("precision must be positive".into()));
        }
        Ok(SeriesRing { field, precision })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// Default precision `N` of elements built by this ring.
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Same field, different default precision.
    pub fn with_precision(&self, precision: usize) -> Result<Self> {
        Self::new(self.field.clone(), precision)
    }

    pub fn zero(&self) -> Series {
        Series::zero(self.precision)
    }

    pub fn one(&self) -> Series {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Fq) -> Series {
        let mut s = Series::zero(self.precision);
        s.coeffs[0] = c;
        s
    }

    pub fn from_int(&self, n: i64) -> Series {
        self.constant(self.field.from_int(n))
    }

    /// `c t^k`, zero if `k >= N`.
    pub fn monomial(&self, c: Fq, k: usize) -> Series {
        let mut s = Series::zero(self.precision);
        if k < self.precision {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series from integer coefficients, padded or truncated to `N`.
    pub fn from_ints(&self, coeffs: &[i64]) -> Series {
        let mut s = Series::zero(self.precision);
        for (i, &c) in coeffs.iter().take(self.precision).enumerate() {
            s.coeffs[i] = self.field.from_int(c);
        }
        s
    }

    /// Series from field coefficients, padded or truncated to `N`.
    pub fn from_fq(&self, coeffs: &[Fq]) -> Series {
        let mut s = Series::zero(self.precision);
        for (i, &c) in coeffs.iter().take(self.precision).enumerate() {
            s.coeffs[i] = c;
        }
        s
    }

    /// Uniformly random series of precision `N` divisible by `t^v`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, v: usize) -> Series {
        let mut s = Series::zero(self.precision);
        for i in v..self.precision {
            s.coeffs[i] = self.field.random(rng);
        }
        s
    }

    pub fn add(&self, a: &Series, b: &Series) -> Series {
        let n = a.precision().min(b.precision());
        let k = &self.field;
        Series { coeffs: (0..n).map(|i| k.add(a.coeffs[i], b.coeffs[i])).collect() }
    }

    pub fn sub(&self, a: &Series, b: &Series) -> Series {
        let n = a.precision().min(b.precision());
        let k = &self.field;
        Series { coeffs: (0..n).map(|i| k.sub(a.coeffs[i], b.coeffs[i])).collect() }
    }

    pub fn neg(&self, a: &Series) -> Series {
        Series { coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn scale(&self, c: Fq, a: &Series) -> Series {
        Series { coeffs: a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect() }
    }

    /// Product with precision `min(prec a + v(b), prec b + v(a))`, capped at
    /// the larger input precision.
    pub fn mul(&self, a: &Series, b: &Series) -> Series {
        let (pa, pb) = (a.precision(), b.precision());
        let (va, vb) = (a.val_index(), b.val_index());
        let prec = (pa + vb).min(pb + va).min(pa.max(pb));
        let k = &self.field;
        let mut coeffs = Vec::with_capacity(prec);
        for n in 0..prec {
            if n < va + vb {
                coeffs.push(Fq::ZERO);
                continue;
            }
            let lo = va.max((n + 1).saturating_sub(pb));
            let hi = (n - vb).min(pa - 1);
            let mut acc = Acc::default();
            for i in lo..=hi {
                k.acc_mul(&mut acc, a.coeffs[i], b.coeffs[n - i]);
            }
            coeffs.push(k.reduce(&acc));
        }
        Series { coeffs }
    }

    /// `a * b` on representatives: precision is the smaller input precision
    /// and digits are computed as if both inputs were exact.
    pub fn mul_fixed(&self, a: &Series, b: &Series) -> Series {
        let prec = a.precision().min(b.precision());
        let k = &self.field;
        let (va, vb) = (a.val_index(), b.val_index());
        let mut coeffs = Vec::with_capacity(prec);
        for n in 0..prec {
            if n < va + vb {
                coeffs.push(Fq::ZERO);
                continue;
            }
            let mut acc = Acc::default();
            for i in va..=n - vb {
                k.acc_mul(&mut acc, a.coeffs[i], b.coeffs[n - i]);
            }
            coeffs.push(k.reduce(&acc));
        }
        Series { coeffs }
    }

    /// `sum_l a_l * b_l`, each product following the precision rule of
    /// [`SeriesRing::mul`]. Accumulates without intermediate allocation.
    pub fn dot(&self, a: &[&Series], b: &[&Series]) -> Series {
        debug_assert_eq!(a.len(), b.len());
        let k = &self.field;
        let mut prec = usize::MAX;
        let mut shape = Vec::with_capacity(a.len());
        for (x, y) in a.iter().zip(b) {
            let (pa, pb) = (x.precision(), y.precision());
            let (va, vb) = (x.val_index(), y.val_index());
            prec = prec.min((pa + vb).min(pb + va).min(pa.max(pb)));
            shape.push((va, vb, pa, pb));
        }
        if prec == usize::MAX {
            return self.zero();
        }
        let mut coeffs = Vec::with_capacity(prec);
        for n in 0..prec {
            let mut acc = Acc::default();
            for (l, &(va, vb, pa, pb)) in shape.iter().enumerate() {
                if n < va + vb {
                    continue;
                }
                let lo = va.max((n + 1).saturating_sub(pb));
                let hi = (n - vb).min(pa - 1);
                let (x, y) = (&a[l].coeffs, &b[l].coeffs);
                for i in lo..=hi {
                    k.acc_mul(&mut acc, x[i], y[n - i]);
                }
            }
            coeffs.push(k.reduce(&acc));
        }
        Series { coeffs }
    }

    /// Inverse of a unit, at the precision of the input.
    pub fn invert_unit(&self, a: &Series) -> Result<Series> {
        let k = &self.field;
        let a0 = a.coeffs.first().copied().unwrap_or(Fq::ZERO);
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = k.inv(a0)?;
        let n = a.precision();
        let mut b = Vec::with_capacity(n);
        b.push(inv0);
        for m in 1..n {
            let mut acc = Acc::default();
            for i in 1..=m {
                k.acc_mul(&mut acc, a.coeffs[i], b[m - i]);
            }
            b.push(k.neg(k.mul(inv0, k.reduce(&acc))));
        }
        Ok(Series { coeffs: b })
    }

    /// `a / t^d`; requires `v(a) >= d` and loses `d` digits of precision.
    pub fn div_t_pow(&self, a: &Series, d: usize) -> Result<Series> {
        if a.val_index() < d {
            return Err(Error::InvalidInput(format!("series not divisible by t^{d}")));
        }
        Ok(Series { coeffs: a.coeffs[d.min(a.precision())..].to_vec() })
    }

    /// `a * t^d` with precision raised by `d`.
    pub fn mul_t_pow(&self, a: &Series, d: usize) -> Series {
        let mut coeffs = vec![Fq::ZERO; d];
        coeffs.extend_from_slice(&a.coeffs);
        Series { coeffs }
    }

    /// Exact quotient `a / b` where `v(b) <= v(a)`: precision
    /// `min(prec a, prec b + v(a)) - v(b)`.
    pub fn div_exact(&self, a: &Series, b: &Series) -> Result<Series> {
        let vb = match b.valuation() {
            Valuation::Exact(v) => v as usize,
            Valuation::AtLeast(_) => {
                return Err(Error::PrecisionTooLow("division by a series known to be 0".into()))
            }
        };
        let a_prec = a.precision().min(b.precision() + a.val_index().min(a.precision()));
        let num = self.div_t_pow(&a.truncate(a_prec), vb)?;
        let den = self.div_t_pow(b, vb)?;
        let u = self.invert_unit(&den.truncate(num.precision().max(1)))?;
        Ok(self.mul(&num, &u).truncate(num.precision()))
    }

    /// Substitutes `t -> s^e`: a series in `s` of precision `e * prec`.
    pub fn inflate(&self, a: &Series, e: usize) -> Series {
        let mut coeffs = vec![Fq::ZERO; e * a.precision()];
        for (i, &c) in a.coeffs.iter().enumerate() {
            coeffs[e * i] = c;
        }
        Series { coeffs }
    }

    /// Inverse of [`SeriesRing::inflate`]: keeps the coefficients of
    /// `s^(e i)`. Fails if any other coefficient is nonzero.
    pub fn deflate(&self, a: &Series, e: usize) -> Result<Series> {
        if a.coeffs.iter().enumerate().any(|(i, c)| i % e != 0 && !c.is_zero()) {
            return Err(Error::InvalidInput(format!("series is not a series in s^{e}")));
        }
        Ok(Series { coeffs: a.coeffs.iter().step_by(e).copied().take(a.precision() / e).collect() })
    }

    /// Image under a field embedding.
    pub fn map_field(&self, a: &Series, emb: &crate::field::Embedding) -> Series {
        Series { coeffs: a.coeffs.iter().map(|&c| emb.apply(c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: usize) -> SeriesRing {
        SeriesRing::new(GaloisField::prime(p).unwrap(), n).unwrap()
    }

    #[test]
    fn valuation_kinds() {
        let r = ring(5, 4);
        assert_eq!(r.from_ints(&[0, 0, 3]).valuation(), Valuation::Exact(2));
        assert_eq!(r.zero().valuation(), Valuation::AtLeast(4));
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let r = ring(5, 6);
        let inv = r.invert_unit(&r.from_ints(&[1, -1])).unwrap();
        assert_eq!(inv, r.from_ints(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn inverse_of_two_plus_t() {
        // 1/(2 + t) = 1/2 - t/4 + t^2/8 - .. over F_5: 3, -4 = 1, 2, ..
        let r = ring(5, 5);
        let inv = r.invert_unit(&r.from_ints(&[2, 1])).unwrap();
        let k = r.field();
        let half = k.inv(k.from_int(2)).unwrap();
        let expected: Vec<Fq> =
            (0..5).map(|i| k.mul(k.pow(half, i + 1), k.from_int(if i % 2 == 0 { 1 } else { -1 }))).collect();
        assert_eq!(inv.coeffs(), &expected[..]);
        assert_eq!(r.mul(&inv, &r.from_ints(&[2, 1])), r.one());
    }

    #[test]
    fn non_unit_rejected() {
        let r = ring(5, 4);
        assert_eq!(r.invert_unit(&r.from_ints(&[0, 1])), Err(Error::NotAUnit));
    }

    #[test]
    fn product_precision_rule() {
        let r = ring(7, 8);
        let a = r.from_ints(&[0, 0, 1]).truncate(5); // t^2 + O(t^5)
        let b = r.from_ints(&[0, 3, 1]).truncate(4); // 3t + t^2 + O(t^4)
        let c = r.mul(&a, &b);
        // min(5 + 1, 4 + 2) = 6, capped at max(5, 4) = 5
        assert_eq!(c.precision(), 5);
        assert_eq!(c.valuation(), Valuation::Exact(3));
        let z = r.mul(&r.zero().truncate(3), &r.from_ints(&[0, 1]));
        assert_eq!(z.valuation(), Valuation::AtLeast(4));
    }

    #[test]
    fn exact_division() {
        let r = ring(5, 6);
        let a = r.from_ints(&[0, 0, 2, 1, 0, 4]);
        let b = r.from_ints(&[0, 1, 1]);
        let q = r.div_exact(&a, &b).unwrap();
        assert_eq!(q.precision(), 5);
        assert!(r.mul(&q, &b).agrees_with(&a, 6));
    }

    #[test]
    fn inflate_deflate_roundtrip() {
        let r = ring(3, 4);
        let a = r.from_ints(&[1, 2, 0, 1]);
        let s = r.inflate(&a, 3);
        assert_eq!(s.precision(), 12);
        assert_eq!(r.deflate(&s, 3).unwrap(), a);
        assert!(r.deflate(&r.from_ints(&[0, 1]), 2).is_err());
    }
}
