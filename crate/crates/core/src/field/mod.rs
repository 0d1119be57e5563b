//! Finite fields `F_{p^m}` stored in a fixed-size power basis.
//!
//! The defining polynomial of `F_{p^m}` is the first monic irreducible of
//! degree `m` over `F_p` in the order used by [`upoly::smallest_irreducible`],
//! so two fields of the same order built here are always identical.

mod matrix;
pub mod upoly;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matrix::FieldMatrix;

/// Largest supported degree of a field over its prime subfield.
pub const MAX_DEGREE: usize = 12;
const ACC_LEN: usize = 2 * MAX_DEGREE - 1;

/// A field element: coordinates in the power basis `1, x, .., x^{m-1}`.
///
/// Elements carry no reference to their field; all arithmetic goes through
/// [`GaloisField`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq([u16; MAX_DEGREE]);

impl Fq {
    pub const ZERO: Fq = Fq([0; MAX_DEGREE]);

    pub fn is_zero(&self) -> bool {
        self.0 == [0; MAX_DEGREE]
    }

    /// Raw power-basis coordinates (unused trailing slots are zero).
    pub fn coords(&self) -> &[u16; MAX_DEGREE] {
        &self.0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        if last == 0 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", &self.0[..=last])
        }
    }
}

/// Unreduced product accumulator for sums of products.
#[derive(Clone, Copy)]
pub struct Acc([u64; ACC_LEN]);

impl Default for Acc {
    fn default() -> Self {
        Acc([0; ACC_LEN])
    }
}

/// `(p, m)` pair naming the field `F_{p^m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub m: usize,
}

fn one() -> usize {
    1
}

/// The field `F_{p^m}` together with its reduction tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    degree: usize,
    /// Monic defining polynomial, ascending coefficients, length `degree + 1`.
    modulus: Vec<u32>,
    /// `x^(degree + k) mod modulus` for `k = 0 .. degree - 1`.
    reduction: Vec<[u32; MAX_DEGREE]>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i64) as u32
}

impl GaloisField {
    /// The prime field `F_p`. Requires `p` prime and `p < 2^16`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p >= 1 << 16 {
            return Err(Error::InvalidInput(format!(
                "characteristic {p} too large (must be below 65536)"
            )));
        }
        Ok(GaloisField { p, degree: 1, modulus: vec![0, 1], reduction: Vec::new() })
    }

    /// The field `F_{p^m}` with its deterministic defining polynomial.
    pub fn new(p: u32, m: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "field degree {m} outside 1..={MAX_DEGREE}"
            )));
        }
        if (m as f64) * (p as f64).log2() > 126.0 {
            return Err(Error::InvalidInput(format!("field {p}^{m} too large")));
        }
        if m == 1 {
            return Ok(base);
        }
        let modulus = upoly::smallest_irreducible(&base, m);
        Ok(Self::with_modulus(p, modulus))
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        Self::new(spec.p, spec.m)
    }

    fn with_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let degree = modulus.len() - 1;
        let mut reduction = Vec::with_capacity(degree.saturating_sub(1));
        let mut cur = [0u32; MAX_DEGREE];
        for i in 0..degree {
            cur[i] = (p - modulus[i]) % p;
        }
        for _ in 0..degree.saturating_sub(1) {
            reduction.push(cur);
            // multiply by x and reduce
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..degree {
                cur[i] = ((cur[i] as u64 + top as u64 * ((p - modulus[i]) % p) as u64) % p as u64) as u32;
            }
        }
        GaloisField { p, degree, modulus, reduction }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, m: self.degree }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree as u32)
    }

    /// Monic defining polynomial over `F_p`, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The field `F_{p^(m e)}` containing this one.
    pub fn extension(&self, e: usize) -> Result<Self> {
        Self::new(self.p, self.degree * e)
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let mut c = Fq::ZERO;
        c.0[0] = n.rem_euclid(self.p as i64) as u16;
        c
    }

    /// Element from power-basis coordinates (missing ones are zero).
    pub fn from_coords(&self, coords: &[i64]) -> Result<Fq> {
        if coords.len() > self.degree {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for a degree {} field",
                coords.len(),
                self.degree
            )));
        }
        let mut c = Fq::ZERO;
        for (i, &v) in coords.iter().enumerate() {
            c.0[i] = v.rem_euclid(self.p as i64) as u16;
        }
        Ok(c)
    }

    /// Power-basis coordinates, length equal to the degree.
    pub fn to_coords(&self, a: Fq) -> Vec<u32> {
        a.0[..self.degree].iter().map(|&c| c as u32).collect()
    }

    /// The generator `x` of the power basis.
    pub fn generator(&self) -> Fq {
        if self.degree == 1 {
            return self.from_int(0);
        }
        let mut c = Fq::ZERO;
        c.0[1] = 1;
        c
    }

    /// Element with index `i` in base-`p` digits (constant coordinate lowest).
    pub fn element(&self, mut i: u128) -> Fq {
        let mut c = Fq::ZERO;
        for k in 0..self.degree {
            c.0[k] = (i % self.p as u128) as u16;
            i /= self.p as u128;
        }
        c
    }

    /// Element lying in the prime field, if any.
    pub fn as_prime(&self, a: Fq) -> Option<u32> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0] as u32)
        } else {
            None
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        let mut c = Fq::ZERO;
        for k in 0..self.degree {
            c.0[k] = rng.gen_range(0..self.p) as u16;
        }
        c
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let mut c = Fq::ZERO;
        for i in 0..self.degree {
            let s = a.0[i] as u32 + b.0[i] as u32;
            c.0[i] = if s >= self.p { s - self.p } else { s } as u16;
        }
        c
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        let mut c = Fq::ZERO;
        for i in 0..self.degree {
            let s = a.0[i] as u32 + self.p - b.0[i] as u32;
            c.0[i] = if s >= self.p { s - self.p } else { s } as u16;
        }
        c
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.sub(Fq::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.degree == 1 {
            let mut c = Fq::ZERO;
            c.0[0] = (a.0[0] as u32 * b.0[0] as u32 % self.p) as u16;
            return c;
        }
        let mut acc = Acc::default();
        self.acc_mul(&mut acc, a, b);
        self.reduce(&acc)
    }

    /// `acc += a * b` without reduction.
    #[inline]
    pub fn acc_mul(&self, acc: &mut Acc, a: Fq, b: Fq) {
        if self.degree == 1 {
            acc.0[0] += a.0[0] as u64 * b.0[0] as u64;
            return;
        }
        for i in 0..self.degree {
            let ai = a.0[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..self.degree {
                acc.0[i + j] += ai * b.0[j] as u64;
            }
        }
    }

    /// Reduces an accumulator to a field element.
    #[inline]
    pub fn reduce(&self, acc: &Acc) -> Fq {
        let p = self.p as u64;
        let mut c = Fq::ZERO;
        if self.degree == 1 {
            c.0[0] = (acc.0[0] % p) as u16;
            return c;
        }
        let d = self.degree;
        let mut low = [0u64; MAX_DEGREE];
        low[..d].copy_from_slice(&acc.0[..d]);
        for k in 0..d - 1 {
            let h = acc.0[d + k] % p;
            if h == 0 {
                continue;
            }
            let row = &self.reduction[k];
            for i in 0..d {
                low[i] += h * row[i] as u64;
            }
        }
        for i in 0..d {
            c.0[i] = (low[i] % p) as u16;
        }
        c
    }

    pub fn scale_int(&self, n: i64, a: Fq) -> Fq {
        self.mul(self.from_int(n), a)
    }

    pub fn pow(&self, a: Fq, mut e: u128) -> Fq {
        let mut base = a;
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::NotAUnit);
        }
        if self.degree == 1 {
            return Ok(self.from_int(inv_mod(a.0[0] as u32, self.p) as i64));
        }
        // extended Euclid in F_p[x] against the modulus
        let p = self.p;
        let prime = GaloisField { p, degree: 1, modulus: vec![0, 1], reduction: Vec::new() };
        let lift = |v: &[u32]| -> Vec<Fq> { v.iter().map(|&c| prime.from_int(c as i64)).collect() };
        let mut r0 = lift(&self.modulus);
        let mut r1 = lift(&a.0[..self.degree].iter().map(|&c| c as u32).collect::<Vec<_>>());
        upoly::trim(&mut r1);
        let mut s0: Vec<Fq> = Vec::new();
        let mut s1: Vec<Fq> = vec![prime.one()];
        while !r1.is_empty() {
            let (q, r) = upoly::divrem(&prime, &r0, &r1);
            let s = upoly::sub(&prime, &s0, &upoly::mul(&prime, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant
        let c = prime.inv(r0[0])?;
        let s = upoly::scale(&prime, c, &s0);
        let mut out = Fq::ZERO;
        for (i, v) in s.iter().enumerate() {
            out.0[i] = v.0[0];
        }
        Ok(out)
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// An embedding `F_{p^m} -> F_{p^(m e)}` fixed by the image of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: GaloisField,
    target: GaloisField,
    /// Images of `1, x, .., x^{m-1}`.
    powers: Vec<Fq>,
}

impl Embedding {
    /// The embedding sending the generator to the smallest root of the source
    /// modulus in the target.
    pub fn new(source: &GaloisField, target: &GaloisField) -> Result<Self> {
        if source.p != target.p || !target.degree.is_multiple_of(source.degree) {
            return Err(Error::InvalidInput(format!(
                "F_{}^{} does not embed in F_{}^{}",
                source.p, source.degree, target.p, target.degree
            )));
        }
        let mut powers = vec![target.one()];
        if source.degree > 1 {
            let modulus: Vec<Fq> =
                source.modulus.iter().map(|&c| target.from_int(c as i64)).collect();
            let roots = upoly::roots(target, &modulus);
            let beta = *roots.first().ok_or_else(|| {
                Error::InvalidInput("defining polynomial has no root in target".into())
            })?;
            for _ in 1..source.degree {
                let last = *powers.last().unwrap();
                powers.push(target.mul(last, beta));
            }
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), powers })
    }

    pub fn identity(field: &GaloisField) -> Self {
        Self::new(field, field).expect("identity embedding")
    }

    pub fn source(&self) -> &GaloisField {
        &self.source
    }

    pub fn target(&self) -> &GaloisField {
        &self.target
    }

    pub fn apply(&self, a: Fq) -> Fq {
        if self.source.degree == 1 {
            return a;
        }
        let mut acc = Acc::default();
        for (i, &w) in self.powers.iter().enumerate() {
            let c = a.0[i];
            if c != 0 {
                self.target.acc_mul(&mut acc, self.target.from_int(c as i64), w);
            }
        }
        self.target.reduce(&acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_composite_and_large_characteristic() {
        assert!(GaloisField::prime(9).is_err());
        assert!(GaloisField::prime(65537).is_err());
        assert!(GaloisField::new(5, 0).is_err());
        assert!(GaloisField::new(5, 13).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let k = GaloisField::prime(101).unwrap();
        for a in 1..101 {
            let x = k.from_int(a);
            assert_eq!(k.mul(x, k.inv(x).unwrap()), k.one());
        }
        assert_eq!(k.inv(k.zero()), Err(Error::NotAUnit));
    }

    #[test]
    fn extension_field_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, m) in [(2, 1), (2, 5), (3, 4), (5, 3), (7, 2), (101, 6)] {
            let k = GaloisField::new(p, m).unwrap();
            for _ in 0..50 {
                let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
                assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                assert_eq!(k.sub(k.add(a, b), b), a);
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
                    // Lagrange: a^(q-1) = 1
                    assert_eq!(k.pow(a, k.order() - 1), k.one());
                }
            }
        }
    }

    #[test]
    fn small_field_is_a_field() {
        let k = GaloisField::new(3, 2).unwrap();
        let elems: Vec<Fq> = (0..9).map(|i| k.element(i)).collect();
        for &a in &elems[1..] {
            let invs = elems.iter().filter(|&&b| k.mul(a, b) == k.one()).count();
            assert_eq!(invs, 1);
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let small = GaloisField::new(5, 2).unwrap();
        let big = small.extension(3).unwrap();
        let emb = Embedding::new(&small, &big).unwrap();
        for _ in 0..100 {
            let (a, b) = (small.random(&mut rng), small.random(&mut rng));
            assert_eq!(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
            assert_eq!(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
        }
        assert!(Embedding::new(&big, &small).is_err());
    }
}
