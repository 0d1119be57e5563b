//! JSON forms of field elements, series, polynomials and matrices.
//!
//! A field element is an integer over a prime field and a coordinate array
//! (power basis, constant first) otherwise. A series is the array of its known
//! coefficients, constant first. Polynomials list their coefficients leading
//! first; matrices are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fq, GaloisField};
use crate::series_ring::{Series, SeriesMatrix, SeriesPoly, SeriesRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementLiteral {
    Prime(i64),
    Coords(Vec<i64>),
}

pub type SeriesLiteral = Vec<ElementLiteral>;
pub type PolyLiteral = Vec<SeriesLiteral>;
pub type MatrixLiteral = Vec<Vec<SeriesLiteral>>;

pub fn encode_element(k: &GaloisField, a: Fq) -> ElementLiteral {
    match k.as_prime(a) {
        Some(n) if k.degree() == 1 => ElementLiteral::Prime(n as i64),
        _ => ElementLiteral::Coords(k.to_coords(a).into_iter().map(i64::from).collect()),
    }
}

pub fn decode_element(k: &GaloisField, lit: &ElementLiteral) -> Result<Fq> {
    match lit {
        ElementLiteral::Prime(n) => Ok(k.from_int(*n)),
        ElementLiteral::Coords(c) => k.from_coords(c),
    }
}

pub fn encode_series(k: &GaloisField, a: &Series) -> SeriesLiteral {
    a.coeffs().iter().map(|&c| encode_element(k, c)).collect()
}

/// An exact series: missing digits are zero up to the ring precision.
pub fn decode_series(ring: &SeriesRing, lit: &SeriesLiteral) -> Result<Series> {
    if lit.len() > ring.precision() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients exceed precision {}",
            lit.len(),
            ring.precision()
        )));
    }
    let coeffs = lit.iter().map(|c| decode_element(ring.field(), c)).collect::<Result<Vec<_>>>()?;
    Ok(ring.from_fq(&coeffs))
}

pub fn encode_poly(k: &GaloisField, f: &SeriesPoly) -> PolyLiteral {
    f.leading_first().iter().map(|c| encode_series(k, c)).collect()
}

pub fn decode_poly(ring: &SeriesRing, lit: &PolyLiteral) -> Result<SeriesPoly> {
    if lit.is_empty() {
        return Err(Error::InvalidInput("empty polynomial".into()));
    }
    let coeffs = lit.iter().map(|c| decode_series(ring, c)).collect::<Result<Vec<_>>>()?;
    Ok(SeriesPoly::from_leading_first(coeffs))
}

pub fn encode_matrix(k: &GaloisField, m: &SeriesMatrix) -> MatrixLiteral {
    m.to_rows().iter().map(|row| row.iter().map(|c| encode_series(k, c)).collect()).collect()
}

pub fn decode_matrix(ring: &SeriesRing, lit: &MatrixLiteral) -> Result<SeriesMatrix> {
    let rows = lit
        .iter()
        .map(|row| row.iter().map(|c| decode_series(ring, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::InvalidInput("ragged matrix rows".into()));
    }
    Ok(SeriesMatrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_round_trip() {
        let r = SeriesRing::new(GaloisField::prime(7).unwrap(), 4).unwrap();
        let a = r.from_ints(&[1, 0, 6]);
        let lit = encode_series(r.field(), &a);
        assert_eq!(serde_json::to_string(&lit).unwrap(), "[1,0,6,0]");
        assert_eq!(decode_series(&r, &lit).unwrap(), a);
        let f = SeriesPoly::monic_from_b(&r, &[r.from_ints(&[0, 1])]);
        let text = serde_json::to_string(&encode_poly(r.field(), &f)).unwrap();
        assert_eq!(text, "[[1,0,0,0],[0,1,0,0]]");
        let back: PolyLiteral = serde_json::from_str(&text).unwrap();
        assert_eq!(decode_poly(&r, &back).unwrap(), f);
    }

    #[test]
    fn extension_field_round_trip() {
        let k = GaloisField::new(3, 2).unwrap();
        let r = SeriesRing::new(k.clone(), 3).unwrap();
        let x = k.generator();
        let m = SeriesMatrix::from_rows(vec![vec![r.constant(x), r.one()], vec![r.zero(), r.constant(k.mul(x, x))]]);
        let lit = encode_matrix(&k, &m);
        let text = serde_json::to_string(&lit).unwrap();
        assert!(text.starts_with("[[[[0,1],[0,0],[0,0]]"));
        let back: MatrixLiteral = serde_json::from_str(&text).unwrap();
        assert_eq!(decode_matrix(&r, &back).unwrap(), m);
    }

    #[test]
    fn rejects_overlong_series() {
        let r = SeriesRing::new(GaloisField::prime(5).unwrap(), 2).unwrap();
        assert!(decode_series(&r, &vec![ElementLiteral::Prime(1); 3]).is_err());
    }
}
