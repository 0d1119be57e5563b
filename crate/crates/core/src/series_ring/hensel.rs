//! Lifting an approximate factorization `f ~ g0 h0` to an exact one.

use crate::error::{Error, Result};

use super::{Series, SeriesMatrix, SeriesPoly, SeriesRing, Valuation};

fn min_valuation(p: &SeriesPoly) -> Valuation {
    let mut exact: Option<u32> = None;
    let mut bound = u32::MAX;
    for c in p.ascending() {
        match c.valuation() {
            Valuation::Exact(v) => exact = Some(exact.map_or(v, |e| e.min(v))),
            Valuation::AtLeast(b) => bound = bound.min(b),
        }
    }
    match exact {
        Some(v) if v < bound => Valuation::Exact(v),
        _ => Valuation::AtLeast(bound.min(exact.unwrap_or(u32::MAX))),
    }
}

fn pad(p: &SeriesPoly, prec: usize) -> SeriesPoly {
    SeriesPoly::from_ascending(p.ascending().iter().map(|c| c.truncate(prec).pad_to(prec)).collect())
}

/// Lifts monic `g0`, `h0` with `f = g0 h0 + e` to monic `g`, `h` with
/// `f = g h` modulo `t^P`, `P` the precision of `f`.
///
/// Let `rho` be the valuation of `Res(g0, h0)`. The lift runs Newton's
/// iteration on the Sylvester system and needs `v(e) > 2 rho`; the factors are
/// then unique modulo `t^(P - rho)` and agree with `g0`, `h0` modulo
/// `t^(v(e) - rho)`. Inputs are treated as exact representatives modulo
/// `t^P`, and the outputs carry precision `P`.
pub fn hensel_lift(
    ring: &SeriesRing,
    f: &SeriesPoly,
    g0: &SeriesPoly,
    h0: &SeriesPoly,
) -> Result<(SeriesPoly, SeriesPoly)> {
    for (name, p) in [("f", f), ("g0", g0), ("h0", h0)] {
        if !p.is_monic(ring) {
            return Err(Error::InvalidInput(format!("{name} is not monic")));
        }
    }
    let (a, b, n) = (g0.degree(), h0.degree(), f.degree());
    if a + b != n {
        return Err(Error::InvalidInput(format!("degrees {a} + {b} do not add up to {n}")));
    }
    let prec = f.precision();
    let f = pad(f, prec);
    if a == 0 {
        return Ok((pad(g0, prec), f));
    }
    if b == 0 {
        return Ok((f, pad(h0, prec)));
    }
    let mut g = pad(g0, prec);
    let mut h = pad(h0, prec);
    let rho = match g.resultant_valuation(ring, &h) {
        Valuation::Exact(v) => v,
        Valuation::AtLeast(_) => {
            return Err(Error::NotCoprime("resultant of the initial factors vanishes".into()))
        }
    };
    let err = |g: &SeriesPoly, h: &SeriesPoly| -> SeriesPoly {
        let gh = g.mul_fixed(ring, h);
        SeriesPoly::from_ascending(
            (0..n).map(|k| ring.sub(f.coeff(k), gh.coeff(k))).collect(),
        )
    };
    let mut e = err(&g, &h);
    let mut ve = match min_valuation(&e) {
        Valuation::AtLeast(_) => return Ok((g, h)),
        Valuation::Exact(v) => v,
    };
    if ve <= 2 * rho {
        return Err(Error::NoConvergence(format!(
            "initial error has valuation {ve}, lifting needs more than {}",
            2 * rho
        )));
    }
    for _ in 0..64 {
        // unknowns: coefficients of dg (degree < a) then dh (degree < b)
        let mut s = SeriesMatrix::zeros(ring, n, n);
        for i in 0..a {
            for (k, c) in h.ascending().iter().enumerate() {
                s.set(i + k, i, c.clone());
            }
        }
        for j in 0..b {
            for (k, c) in g.ascending().iter().enumerate() {
                s.set(j + k, a + j, c.clone());
            }
        }
        let x = s.solve_fixed(ring, e.ascending())?;
        let mut gc: Vec<Series> = g.ascending().to_vec();
        for i in 0..a {
            gc[i] = ring.add(&gc[i], &x[i]);
        }
        let mut hc: Vec<Series> = h.ascending().to_vec();
        for j in 0..b {
            hc[j] = ring.add(&hc[j], &x[a + j]);
        }
        g = SeriesPoly::from_ascending(gc);
        h = SeriesPoly::from_ascending(hc);
        e = err(&g, &h);
        match min_valuation(&e) {
            Valuation::AtLeast(_) => return Ok((g, h)),
            Valuation::Exact(v) if v > ve => ve = v,
            Valuation::Exact(v) => {
                return Err(Error::NoConvergence(format!("error valuation stalled at {v}")))
            }
        }
    }
    Err(Error::NoConvergence("iteration limit reached".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;

    fn ring(p: u32, n: usize) -> SeriesRing {
        SeriesRing::new(GaloisField::prime(p).unwrap(), n).unwrap()
    }

    fn monic(r: &SeriesRing, b: &[&[i64]]) -> SeriesPoly {
        let b: Vec<Series> = b.iter().map(|c| r.from_ints(c)).collect();
        SeriesPoly::monic_from_b(r, &b)
    }

    #[test]
    fn lifts_coprime_residues() {
        // f = lambda^2 - 3 lambda + 2 + t, residues lambda - 1 and lambda - 2
        let r = ring(7, 10);
        let f = monic(&r, &[&[-3], &[2, 1]]);
        let (g, h) = hensel_lift(&r, &f, &monic(&r, &[&[-1]]), &monic(&r, &[&[-2]])).unwrap();
        assert!(g.mul(&r, &h).agrees_with(&f, 10));
        assert_eq!(g.coeff(0).coeff(0), Some(r.field().from_int(-1)));
    }

    #[test]
    fn lifts_factors_with_close_roots() {
        // f = (lambda + t)(lambda + t + t^2); start one factor off at order t^5
        let r = ring(101, 12);
        let g_true = monic(&r, &[&[0, 1]]);
        let h_true = monic(&r, &[&[0, 1, 1]]);
        let f = g_true.mul(&r, &h_true);
        let g0 = monic(&r, &[&[0, 1, 0, 0, 0, 1]]);
        let (g, h) = hensel_lift(&r, &f, &g0, &h_true).unwrap();
        assert!(g.mul(&r, &h).agrees_with(&f, 12));
        // unique modulo t^(P - rho) with rho = 2
        assert!(g.agrees_with(&g_true, 10));
        assert!(h.agrees_with(&h_true, 10));
    }

    #[test]
    fn trivial_split() {
        let r = ring(5, 6);
        let f = monic(&r, &[&[0, 1], &[0, 2]]);
        let one = SeriesPoly::from_ascending(vec![r.one()]);
        let (g, h) = hensel_lift(&r, &f, &f, &one).unwrap();
        assert_eq!(g, f);
        assert_eq!(h, one);
    }

    #[test]
    fn rejects_insufficient_initial_error() {
        // rho = 2 but the initial error has valuation 2
        let r = ring(101, 12);
        let f = monic(&r, &[&[0, 1]]).mul(&r, &monic(&r, &[&[0, 1, 1]]));
        let g0 = monic(&r, &[&[0, 1, 1, 1]]);
        let h0 = monic(&r, &[&[0, 1, 0, 1]]);
        assert!(matches!(hensel_lift(&r, &f, &g0, &h0), Err(Error::NoConvergence(_))));
    }

    #[test]
    fn rejects_common_factor() {
        let r = ring(5, 6);
        let g0 = monic(&r, &[&[0, 1]]);
        let f = g0.mul(&r, &g0);
        assert!(matches!(hensel_lift(&r, &f, &g0, &g0), Err(Error::NotCoprime(_))));
    }
}
