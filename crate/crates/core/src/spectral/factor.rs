//! Factorization along the Newton polygon.
//!
//! Edges are peeled off in order of increasing slope. For an edge of slope
//! `h / mu` the substitution `t = s^mu`, `lambda = s^h y` turns the current
//! polynomial `H` of degree `d` into `F(y) = s^(-h d) H(s^h y)`, whose
//! reduction modulo `s` is `y^(d - k mu) prod_j (y^mu - alpha_j)` with
//! `alpha_j` the edge roots. These residues are pairwise coprime, so ordinary
//! Hensel lifting splits `F`; undoing the substitution gives the factors of
//! this edge and the cofactor carrying the remaining edges.

use crate::error::{Error, Result};
use crate::field::{upoly, Embedding, Fq, GaloisField};
use crate::series_ring::{hensel_lift, Series, SeriesPoly, SeriesRing, Valuation};

use super::{edge_polynomial, newton_polygon, ramification_profile, BranchProfile, NewtonPolygon};

/// Largest splitting-field degree accepted by default.
pub const DEFAULT_EXTENSION_CAP: usize = 6;

/// One factor of a spectral polynomial. Its roots all have valuation
/// `slope.0 / slope.1`; with `slope.0 = 1` the factor is Eisenstein.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinFactor {
    pub factor: SeriesPoly,
    pub degree: usize,
    pub slope: (u32, u32),
}

/// Factors of `f` over the splitting field of its edge polynomials.
#[derive(Clone, Debug)]
pub struct SpectralFactorization {
    pub polygon: NewtonPolygon,
    /// Degree of the splitting field over the base field.
    pub extension_degree: usize,
    /// Series ring over the splitting field.
    pub ring: SeriesRing,
    pub embedding: Embedding,
    /// Sorted by degree (descending), then by constant term.
    pub factors: Vec<EisensteinFactor>,
}

impl SpectralFactorization {
    pub fn polys(&self) -> Vec<SeriesPoly> {
        self.factors.iter().map(|f| f.factor.clone()).collect()
    }

    pub fn product(&self) -> SeriesPoly {
        SeriesPoly::product(&self.ring, &self.polys())
    }

    pub fn profile(&self) -> BranchProfile {
        ramification_profile(&self.factors)
    }
}

fn monomial_poly(ring: &SeriesRing, constant: Fq, degree: usize) -> SeriesPoly {
    let mut c = vec![ring.zero(); degree + 1];
    c[0] = ring.constant(constant);
    c[degree] = ring.add(&c[degree], &ring.one());
    SeriesPoly::from_ascending(c)
}

/// `s^(-h d) H(s^h y)` with `t = s^mu`, over a ring of the largest precision
/// at which every coefficient is known.
fn substitute(ring: &SeriesRing, hpoly: &SeriesPoly, h: usize, mu: usize) -> Result<(SeriesRing, SeriesPoly)> {
    let d = hpoly.degree();
    let mut coeffs = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let a = ring.inflate(hpoly.coeff(m), mu);
        let c = ring.div_t_pow(&a, h * (d - m)).map_err(|_| {
            Error::PrecisionTooLow(format!("coefficient of lambda^{m} is too short for the edge substitution"))
        })?;
        coeffs.push(c);
    }
    let prec = coeffs.iter().map(Series::precision).min().unwrap_or(0);
    if prec == 0 {
        return Err(Error::PrecisionTooLow("no digits survive the edge substitution".into()));
    }
    let ring_s = ring.with_precision(prec)?;
    let coeffs = coeffs.into_iter().map(|c| c.truncate(prec)).collect();
    Ok((ring_s, SeriesPoly::from_ascending(coeffs)))
}

/// Inverse of [`substitute`] for a factor `G(y)` of degree `e`:
/// `g(lambda) = s^(h e) G(lambda / s^h)` as a polynomial over `t`.
fn unsubstitute(ring: &SeriesRing, g: &SeriesPoly, h: usize, mu: usize) -> Result<SeriesPoly> {
    let e = g.degree();
    let mut coeffs = Vec::with_capacity(e + 1);
    for m in 0..=e {
        let shifted = ring.mul_t_pow(g.coeff(m), h * (e - m));
        let c = ring.deflate(&shifted, mu).map_err(|_| {
            Error::NoConvergence("lifted factor is not a polynomial over t".into())
        })?;
        coeffs.push(c);
    }
    Ok(SeriesPoly::from_ascending(coeffs))
}

/// Splits `f` into `residues` (pairwise coprime, product congruent to `f`
/// modulo `s`), lifting one factor at a time.
fn split_all(ring: &SeriesRing, f: &SeriesPoly, residues: &[SeriesPoly]) -> Result<Vec<SeriesPoly>> {
    let mut out = Vec::with_capacity(residues.len());
    let mut rest = f.clone();
    for (i, g0) in residues.iter().enumerate() {
        if i + 1 == residues.len() {
            out.push(rest);
            break;
        }
        let h0 = SeriesPoly::product(ring, &residues[i + 1..]);
        let (g, h) = hensel_lift(ring, &rest, g0, &h0)?;
        out.push(g);
        rest = h;
    }
    Ok(out)
}

/// Factors a monic `f` whose edge polynomials have distinct nonzero roots.
///
/// Works over the smallest extension of the base field splitting every edge
/// polynomial; fails with `ExtensionCapExceeded` beyond `cap`.
pub fn factor_spectral(ring: &SeriesRing, f: &SeriesPoly, cap: usize) -> Result<SpectralFactorization> {
    f.require_monic(ring)?;
    let k = ring.field();
    let polygon = newton_polygon(f)?;
    let edges = polygon.edges();
    let mut edge_polys = Vec::with_capacity(edges.len());
    let mut ext = 1usize;
    for edge in &edges {
        if edge.height() == 0 {
            return Err(Error::GenericityViolation(format!(
                "edge {:?}-{:?} has slope 0",
                edge.start, edge.end
            )));
        }
        let e = edge_polynomial(f, edge)?;
        if e[0].is_zero() || !upoly::is_squarefree(k, &e) {
            return Err(Error::GenericityViolation(format!(
                "edge {:?}-{:?} has a repeated or zero root",
                edge.start, edge.end
            )));
        }
        ext = lcm(ext, upoly::splitting_degree(k, &e));
        edge_polys.push(e);
    }
    if ext > cap {
        return Err(Error::ExtensionCapExceeded { needed: ext, cap });
    }
    let big: GaloisField = if ext == 1 { k.clone() } else { k.extension(ext)? };
    let embedding = if ext == 1 { Embedding::identity(k) } else { Embedding::new(k, &big)? };
    let ring_k = SeriesRing::new(big.clone(), ring.precision())?;

    let mut factors = Vec::new();
    let mut current = f.map_field(&ring_k, &embedding);
    for (edge, e) in edges.iter().zip(&edge_polys) {
        let (h, mu) = edge.slope();
        let (h, mu) = (h as usize, mu as usize);
        let steps = edge.steps() as usize;
        let d = current.degree();
        let rest_degree = d - steps * mu;
        if rest_degree == 0 && steps == 1 {
            factors.push(EisensteinFactor { degree: d, slope: edge.slope(), factor: current.clone() });
            break;
        }
        let e_big: Vec<Fq> = e.iter().map(|&c| embedding.apply(c)).collect();
        let roots = upoly::roots(&big, &e_big);
        debug_assert_eq!(roots.len(), steps);
        let (ring_s, fs) = substitute(&ring_k, &current, h, mu)?;
        let residues: Vec<SeriesPoly> =
            roots.iter().map(|&a| monomial_poly(&ring_s, big.neg(a), mu)).collect();
        let pieces = if rest_degree > 0 {
            let edge_part = SeriesPoly::product(&ring_s, &residues);
            let rest0 = monomial_poly(&ring_s, Fq::ZERO, rest_degree);
            let (a, b) = hensel_lift(&ring_s, &fs, &edge_part, &rest0)?;
            current = unsubstitute(&ring_k, &b, h, mu)?;
            split_all(&ring_s, &a, &residues)?
        } else {
            split_all(&ring_s, &fs, &residues)?
        };
        for g in pieces {
            let g = unsubstitute(&ring_k, &g, h, mu)?;
            factors.push(EisensteinFactor { degree: mu, slope: edge.slope(), factor: g });
        }
    }
    factors.sort_by(|a, b| {
        b.degree.cmp(&a.degree).then_with(|| a.factor.coeff(0).coeffs().cmp(b.factor.coeff(0).coeffs()))
    });
    Ok(SpectralFactorization { polygon, extension_degree: ext, ring: ring_k, embedding, factors })
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Sum of the pairwise resultant valuations of the factors: the local delta
/// invariant of the spectral curve.
pub fn local_delta(fact: &SpectralFactorization) -> Result<u64> {
    let mut total = 0u64;
    for i in 0..fact.factors.len() {
        for j in i + 1..fact.factors.len() {
            match fact.factors[i].factor.resultant_valuation(&fact.ring, &fact.factors[j].factor) {
                Valuation::Exact(v) => total += v as u64,
                Valuation::AtLeast(b) => {
                    return Err(Error::PrecisionTooLow(format!(
                        "resultant of factors {i} and {j} vanishes modulo t^{b}"
                    )))
                }
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{level_function, LeviType, Partition};
    use crate::spectral::{is_generic_for, random_spectral_polynomial};

    fn ring(p: u32, n: usize) -> SeriesRing {
        SeriesRing::new(GaloisField::prime(p).unwrap(), n).unwrap()
    }

    fn monic(r: &SeriesRing, b: &[&[i64]]) -> SeriesPoly {
        let b: Vec<Series> = b.iter().map(|c| r.from_ints(c)).collect();
        SeriesPoly::monic_from_b(r, &b)
    }

    #[test]
    fn splits_distinct_linear_roots() {
        let r = ring(5, 8);
        let f = monic(&r, &[&[0, -3], &[0, 0, 2]]);
        let fact = factor_spectral(&r, &f, DEFAULT_EXTENSION_CAP).unwrap();
        assert_eq!(fact.extension_degree, 1);
        let got: Vec<SeriesPoly> = fact.polys();
        // lambda - t and lambda - 2t, ordered by constant term (-t = 4t, -2t = 3t)
        assert!(got[0].agrees_with(&monic(&r, &[&[0, -2]]), 6));
        assert!(got[1].agrees_with(&monic(&r, &[&[0, -1]]), 6));
        assert_eq!(local_delta(&fact).unwrap(), 1);
    }

    #[test]
    fn eisenstein_is_its_own_factor() {
        let r = ring(3, 6);
        let f = monic(&r, &[&[0], &[0], &[0], &[0, 1]]);
        let fact = factor_spectral(&r, &f, DEFAULT_EXTENSION_CAP).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0].factor, f);
        assert_eq!(local_delta(&fact).unwrap(), 0);
    }

    #[test]
    fn plus_minus_roots() {
        let r = ring(7, 8);
        let f = monic(&r, &[&[0], &[0, 0, -1]]);
        let fact = factor_spectral(&r, &f, DEFAULT_EXTENSION_CAP).unwrap();
        assert_eq!(fact.factors.len(), 2);
        assert!(fact.product().agrees_with(&f, 6));
    }

    #[test]
    fn irreducible_edge_needs_an_extension() {
        // lambda^2 - 3 t^2 over F_7: 3 is not a square
        let r = ring(7, 8);
        let f = monic(&r, &[&[0], &[0, 0, -3]]);
        let fact = factor_spectral(&r, &f, DEFAULT_EXTENSION_CAP).unwrap();
        assert_eq!(fact.extension_degree, 2);
        assert!(fact.product().agrees_with(&f.map_field(&fact.ring, &fact.embedding), 6));
        assert!(matches!(factor_spectral(&r, &f, 1), Err(Error::ExtensionCapExceeded { needed: 2, cap: 1 })));
    }

    #[test]
    fn rejects_repeated_edge_roots() {
        let r = ring(7, 8);
        let f = monic(&r, &[&[0, -2], &[0, 0, 1]]);
        assert!(matches!(factor_spectral(&r, &f, 6), Err(Error::GenericityViolation(_))));
    }

    #[test]
    fn seeded_generic_two_one() {
        let r = ring(101, 10);
        let levi = LeviType::new(vec![2, 1]).unwrap();
        let gamma = level_function(&levi);
        let f = random_spectral_polynomial(&gamma, &r, 1);
        assert!(is_generic_for(&f, &gamma, r.field()));
        let fact = factor_spectral(&r, &f, 6).unwrap();
        assert_eq!(fact.profile().degrees, Partition::new(vec![2, 1]).unwrap());
        assert!(fact.factors[0].factor.is_eisenstein(&fact.ring));
        assert!(fact.product().agrees_with(&f.map_field(&fact.ring, &fact.embedding), 10 - 3));
    }

    #[test]
    fn five_four_two_profile_and_delta() {
        let r = ring(101, 24);
        let levi = LeviType::new(vec![5, 4, 2]).unwrap();
        let gamma = level_function(&levi);
        let mut seed = 0;
        let f = loop {
            let f = random_spectral_polynomial(&gamma, &r, seed);
            if is_generic_for(&f, &gamma, r.field()) {
                break f;
            }
            seed += 1;
        };
        let fact = factor_spectral(&r, &f, 6).unwrap();
        assert_eq!(fact.profile().degrees, Partition::new(vec![3, 3, 2, 2, 1]).unwrap());
        assert_eq!(fact.profile().branches, 5);
        assert_eq!(local_delta(&fact).unwrap(), 17);
        assert!(fact.product().agrees_with(&f.map_field(&fact.ring, &fact.embedding), 24 - 11));
    }
}
