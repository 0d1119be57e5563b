//! Spectral polynomials: Newton polygons, edge polynomials, factorization
//! into Eisenstein pieces, and the reverse spectral construction.
//!
//! For a monic `f = lambda^r + b_1 lambda^(r-1) + .. + b_r` the Newton polygon
//! is the lower convex hull of the points `(i, v(b_i))`. An edge of slope
//! `h / mu` (in lowest terms) spanning `k` lattice steps carries the edge
//! polynomial `E(z) = sum_j c_j z^(k-j)`, where `c_j` is the coefficient of
//! `t^(y0 + j h)` in `b_(x0 + j mu)`. Each root of `E` gives one factor of `f`
//! of degree `mu` whose roots have valuation `h / mu`.

mod bnr;
mod factor;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{LevelFunction, Partition};
use crate::error::{Error, Result};
use crate::field::{upoly, Fq, GaloisField};
use crate::series_ring::{Series, SeriesPoly, SeriesRing, Valuation};

pub use bnr::{bnr_reverse, random_eisenstein_factors};
pub use factor::{factor_spectral, local_delta, EisensteinFactor, SpectralFactorization, DEFAULT_EXTENSION_CAP};

/// One edge of a Newton polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub start: (u32, u32),
    pub end: (u32, u32),
}

impl Edge {
    pub fn length(&self) -> u32 {
        self.end.0 - self.start.0
    }

    pub fn height(&self) -> u32 {
        self.end.1 - self.start.1
    }

    /// Number of lattice steps `k = gcd(length, height)`.
    pub fn steps(&self) -> u32 {
        gcd(self.length(), self.height())
    }

    /// Slope `h / mu` in lowest terms, as `(h, mu)`.
    pub fn slope(&self) -> (u32, u32) {
        let k = self.steps();
        (self.height() / k, self.length() / k)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lower convex hull of `(i, v(b_i))`, given by its corner vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(u32, u32)>,
}

impl NewtonPolygon {
    pub fn edges(&self) -> Vec<Edge> {
        self.vertices.windows(2).map(|w| Edge { start: w[0], end: w[1] }).collect()
    }

    /// Height of the polygon above `x`, as the fraction `(num, den)`.
    fn height_at(&self, x: u32) -> (u64, u64) {
        for e in self.edges() {
            if e.start.0 <= x && x <= e.end.0 {
                let dx = e.length() as u64;
                return (e.start.1 as u64 * dx + e.height() as u64 * (x - e.start.0) as u64, dx);
            }
        }
        (self.vertices.last().map_or(0, |v| v.1) as u64, 1)
    }

    /// Multiset of factor degrees predicted by the polygon: each edge of
    /// slope `h / mu` with `k` steps contributes `k` copies of `mu`.
    pub fn predicted_degrees(&self) -> Partition {
        let mut d: Vec<u32> = Vec::new();
        for e in self.edges() {
            let (_, mu) = e.slope();
            d.extend(std::iter::repeat_n(mu, e.steps() as usize));
        }
        d.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(d).expect("positive degrees")
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn lower_hull(points: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let c = cross((a.0 as i64, a.1 as i64), (b.0 as i64, b.1 as i64), (p.0 as i64, p.1 as i64));
            if c <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Newton polygon of a monic polynomial.
///
/// Fails with `PrecisionTooLow` when `b_r` vanishes at every known digit or a
/// vanishing coefficient is not known far enough to stay above the hull.
pub fn newton_polygon(f: &SeriesPoly) -> Result<NewtonPolygon> {
    let r = f.degree();
    let mut points = vec![(0u32, 0u32)];
    let mut unknown = Vec::new();
    for i in 1..=r {
        match f.b(i).valuation() {
            Valuation::Exact(v) => points.push((i as u32, v)),
            Valuation::AtLeast(p) => {
                if i == r {
                    return Err(Error::PrecisionTooLow(format!(
                        "constant coefficient vanishes modulo t^{p}"
                    )));
                }
                unknown.push((i as u32, p));
            }
        }
    }
    let poly = NewtonPolygon { vertices: lower_hull(&points) };
    for (i, p) in unknown {
        let (num, den) = poly.height_at(i);
        if (p as u64) * den < num {
            return Err(Error::PrecisionTooLow(format!(
                "b_{i} is known only modulo t^{p}, below the polygon"
            )));
        }
    }
    Ok(poly)
}

/// Polygon of the generic polynomial with `v(b_i) = gamma_i`.
pub fn expected_polygon(gamma: &LevelFunction) -> NewtonPolygon {
    let mut points = vec![(0u32, 0u32)];
    points.extend(gamma.values().iter().enumerate().map(|(i, &g)| (i as u32 + 1, g)));
    NewtonPolygon { vertices: lower_hull(&points) }
}

/// Edge polynomial of `edge`, ascending in `z`.
pub fn edge_polynomial(f: &SeriesPoly, edge: &Edge) -> Result<Vec<Fq>> {
    let (h, mu) = edge.slope();
    let k = edge.steps();
    let mut e = vec![Fq::ZERO; k as usize + 1];
    for j in 0..=k {
        let i = (edge.start.0 + j * mu) as usize;
        let y = (edge.start.1 + j * h) as usize;
        e[(k - j) as usize] = f.b(i).coeff(y).ok_or_else(|| {
            Error::PrecisionTooLow(format!("coefficient t^{y} of b_{i} is unknown"))
        })?;
    }
    Ok(e)
}

/// Per-edge outcome of the genericity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDiagnostic {
    pub edge: Edge,
    pub squarefree: bool,
    pub zero_root: bool,
}

/// Outcome of [`genericity_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub generic: bool,
    pub polygon: Option<NewtonPolygon>,
    pub edges: Vec<EdgeDiagnostic>,
    /// Why the polynomial is not generic, when it is not.
    pub reason: Option<String>,
}

/// True when every edge polynomial has distinct nonzero roots.
pub fn genericity_check(f: &SeriesPoly, field: &GaloisField) -> GenericityReport {
    let polygon = match newton_polygon(f) {
        Ok(p) => p,
        Err(e) => {
            return GenericityReport { generic: false, polygon: None, edges: Vec::new(), reason: Some(e.to_string()) }
        }
    };
    let mut edges = Vec::new();
    let mut reason = None;
    for edge in polygon.edges() {
        match edge_polynomial(f, &edge) {
            Ok(e) => {
                let squarefree = upoly::is_squarefree(field, &e);
                let zero_root = e[0].is_zero();
                if reason.is_none() && (!squarefree || zero_root) {
                    reason = Some(format!(
                        "edge {:?}-{:?} has {}",
                        edge.start,
                        edge.end,
                        if zero_root { "a zero root" } else { "a repeated root" }
                    ));
                }
                edges.push(EdgeDiagnostic { edge, squarefree, zero_root });
            }
            Err(err) => {
                if reason.is_none() {
                    reason = Some(err.to_string());
                }
                edges.push(EdgeDiagnostic { edge, squarefree: false, zero_root: false });
            }
        }
    }
    GenericityReport { generic: reason.is_none(), polygon: Some(polygon), edges, reason }
}

/// Factor degrees and the number of branches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchProfile {
    pub degrees: Partition,
    pub branches: usize,
}

pub fn ramification_profile(factors: &[EisensteinFactor]) -> BranchProfile {
    let mut d: Vec<u32> = factors.iter().map(|f| f.degree as u32).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    BranchProfile { degrees: Partition::new(d).expect("positive degrees"), branches: factors.len() }
}

/// Random `f` with `b_i` uniform in `t^(gamma_i) O`.
pub fn random_spectral_polynomial(gamma: &LevelFunction, ring: &SeriesRing, seed: u64) -> SeriesPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b: Vec<Series> = gamma.values().iter().map(|&g| ring.random(&mut rng, g as usize)).collect();
    SeriesPoly::monic_from_b(ring, &b)
}

/// Whether `f` is a generic point of the local parabolic base: its polygon
/// is the expected one and every edge polynomial has distinct nonzero roots.
pub fn is_generic_for(f: &SeriesPoly, gamma: &LevelFunction, field: &GaloisField) -> bool {
    let report = genericity_check(f, field);
    report.generic && report.polygon.as_ref() == Some(&expected_polygon(gamma))
}
