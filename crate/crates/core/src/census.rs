//! Closed-form global invariants of parabolic Hitchin systems and the
//! identities tying them together.
//!
//! A marked point carries a Levi type `m = (m_1, .., m_s)` and weights
//! `0 = a_0 < a_1 < .. < a_s = 1`. Single-point statements (the genus of the
//! normalized spectral curve, the degree of the spectral line bundle) are
//! summed over points when several are given; reports label this as an
//! extension.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{
    conjugate, flag_dimension, level_function, min_pair_sum, sort_to_partition, weyl_coset_count, LeviType,
};
use crate::error::{Error, Result};

/// Exact rational, serialized as `{"num": .., "den": ..}` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalRepr {
    num: i64,
    den: i64,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr { num: *self.0.numer(), den: *self.0.denom() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        Rational::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}

/// A marked point: flag type and parabolic weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedPoint {
    levi: LeviType,
    weights: Vec<Rational>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkedPointRepr {
    levi: LeviType,
    #[serde(default)]
    weights: Option<Vec<Rational>>,
}

impl<'de> Deserialize<'de> for MarkedPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MarkedPointRepr::deserialize(d)?;
        match r.weights {
            Some(w) => MarkedPoint::new(r.levi, w),
            None => Ok(MarkedPoint::uniform(r.levi)),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl MarkedPoint {
    /// Weights must be `s + 1` strictly increasing values from 0 to 1.
    pub fn new(levi: LeviType, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != levi.blocks() + 1 {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} flag steps",
                weights.len(),
                levi.blocks()
            )));
        }
        if weights[0] != Rational::integer(0) || *weights.last().unwrap() != Rational::integer(1) {
            return Err(Error::InvalidInput("weights must start at 0 and end at 1".into()));
        }
        if weights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("weights must be strictly increasing".into()));
        }
        Ok(MarkedPoint { levi, weights })
    }

    /// Weights `j / s`.
    pub fn uniform(levi: LeviType) -> Self {
        let s = levi.blocks() as i64;
        let weights = (0..=s).map(|j| Rational(Ratio::new(j, s))).collect();
        MarkedPoint { levi, weights }
    }

    pub fn levi(&self) -> &LeviType {
        &self.levi
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// Genus, rank, degree and marked points of a parabolic bundle problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicData {
    genus: u32,
    rank: u32,
    degree: i64,
    points: Vec<MarkedPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParabolicDataRepr {
    genus: u32,
    rank: u32,
    #[serde(default)]
    degree: i64,
    #[serde(default)]
    points: Vec<MarkedPoint>,
}

impl<'de> Deserialize<'de> for ParabolicData {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ParabolicDataRepr::deserialize(d)?;
        ParabolicData::new(r.genus, r.rank, r.degree, r.points).map_err(serde::de::Error::custom)
    }
}

impl ParabolicData {
    /// Needs `g >= 2`, `r >= 1` and every Levi type of rank `r`.
    pub fn new(genus: u32, rank: u32, degree: i64, points: Vec<MarkedPoint>) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidInput(format!("genus {genus} < 2")));
        }
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.levi.rank() != rank) {
            return Err(Error::InvalidInput(format!("Levi type {} does not have rank {rank}", p.levi)));
        }
        Ok(ParabolicData { genus, rank, degree, points })
    }

    /// Characteristic 2 needs rank at least 3.
    pub fn check_characteristic(&self, p: u32) -> Result<()> {
        if p == 2 && self.rank < 3 {
            return Err(Error::InvalidInput("characteristic 2 needs rank at least 3".into()));
        }
        Ok(())
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    fn g(&self) -> i64 {
        self.genus as i64
    }

    fn r(&self) -> i64 {
        self.rank as i64
    }

    fn deg_d(&self) -> i64 {
        self.points.len() as i64
    }

    fn flag_sum(&self) -> i64 {
        self.points.iter().map(|p| flag_dimension(&p.levi) as i64).sum()
    }

    fn gamma_sum(&self) -> i64 {
        self.points.iter().map(|p| level_function(&p.levi).sum() as i64).sum()
    }
}

/// `deg E + sum_x sum_j a_j(x) m_j(x)`.
pub fn par_degree(pd: &ParabolicData) -> Rational {
    let mut acc = Ratio::from_integer(pd.degree);
    for p in &pd.points {
        for (j, &m) in p.levi.parts().iter().enumerate() {
            acc += p.weights[j + 1].0 * Ratio::from_integer(m as i64);
        }
    }
    Rational(acc)
}

pub fn par_slope(pd: &ParabolicData) -> Rational {
    Rational(par_degree(pd).0 / Ratio::from_integer(pd.r()))
}

/// `(g - 1) r^2 + 1 + sum_x dim(G / P_x)`.
pub fn dim_moduli(pd: &ParabolicData) -> i64 {
    (pd.g() - 1) * pd.r() * pd.r() + 1 + pd.flag_sum()
}

/// `2 (g - 1) r^2 + 2 + 2 sum_x dim(G / P_x)`.
pub fn dim_higgs(pd: &ParabolicData) -> i64 {
    2 * (pd.g() - 1) * pd.r() * pd.r() + 2 + 2 * pd.flag_sum()
}

/// `(2g - 2 + deg D) r^2 + 1`.
pub fn dim_higgs_weak(pd: &ParabolicData) -> i64 {
    (2 * pd.g() - 2 + pd.deg_d()) * pd.r() * pd.r() + 1
}

/// `r^2 (g - 1) + r (r + 1) deg D / 2`.
pub fn dim_hitchin_base(pd: &ParabolicData) -> i64 {
    pd.r() * pd.r() * (pd.g() - 1) + pd.r() * (pd.r() + 1) * pd.deg_d() / 2
}

/// `1 + r^2 (g - 1) + r (r + 1) deg D / 2 - sum_x sum_j gamma_j(x)`.
pub fn dim_parabolic_base(pd: &ParabolicData) -> i64 {
    1 + dim_hitchin_base(pd) - pd.gamma_sum()
}

/// Arithmetic genus of the spectral curve: `1 + r^2 (g - 1) + r (r - 1) deg D / 2`.
pub fn genus_spectral(pd: &ParabolicData) -> i64 {
    1 + pd.r() * pd.r() * (pd.g() - 1) + pd.r() * (pd.r() - 1) * pd.deg_d() / 2
}

/// Genus of the normalized spectral curve: `r^2 (g - 1) + 1 + sum_x dim(G / P_x)`.
pub fn genus_normalized(pd: &ParabolicData) -> i64 {
    pd.r() * pd.r() * (pd.g() - 1) + 1 + pd.flag_sum()
}

/// Degree of the line bundle on the normalized spectral curve:
/// `(r^2 - r)(g - 1) + sum_x dim(G / P_x) + d`.
pub fn bnr_degree(pd: &ParabolicData) -> i64 {
    (pd.r() * pd.r() - pd.r()) * (pd.g() - 1) + pd.flag_sum() + pd.degree
}

/// Product over points of `r! / prod m_j!`.
pub fn weak_fiber_components(pd: &ParabolicData) -> Result<u128> {
    pd.points.iter().try_fold(1u128, |acc, p| {
        acc.checked_mul(weyl_coset_count(&p.levi)?).ok_or(Error::Overflow("weak_fiber_components"))
    })
}

/// Dimensions of the strongly parabolic and the weakly parabolic nilpotent cones.
pub fn nilpotent_cone_dims(pd: &ParabolicData) -> (i64, i64) {
    (dim_moduli(pd), genus_spectral(pd))
}

/// Base dimension for trace-free fields: the parabolic base without its
/// first factor `H^0(omega)` of dimension `g`.
pub fn sl_variant_base_dim(pd: &ParabolicData) -> i64 {
    dim_parabolic_base(pd) - pd.g()
}

/// Sum over points of `sum_j m_j (m_j - 1) / 2`.
pub fn local_delta_sum(pd: &ParabolicData) -> i64 {
    pd.points
        .iter()
        .map(|p| p.levi.parts().iter().map(|&m| (m as i64) * (m as i64 - 1) / 2).sum::<i64>())
        .sum()
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    fn eq(name: &str, lhs: i64, rhs: i64) -> Self {
        IdentityCheck { name: name.into(), lhs, rhs, holds: lhs == rhs }
    }
}

/// Every invariant, plus the identity checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub genus: u32,
    pub rank: u32,
    pub degree: i64,
    pub marked_points: usize,
    pub par_degree: Rational,
    pub par_slope: Rational,
    pub dim_moduli: i64,
    pub dim_higgs: i64,
    pub dim_higgs_weak: i64,
    pub dim_hitchin_base: i64,
    pub dim_parabolic_base: i64,
    pub genus_spectral: i64,
    pub genus_normalized: i64,
    pub local_delta: i64,
    pub bnr_degree: i64,
    pub weak_fiber_components: u128,
    pub nilpotent_cone_dim: i64,
    pub weak_nilpotent_cone_dim: i64,
    pub sl_variant_base_dim: i64,
    /// Invariants computed by summing single-point formulas over several points.
    pub extensions: Vec<String>,
    pub identities: Vec<IdentityCheck>,
}

impl CensusReport {
    pub fn all_identities_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

/// The identities between the invariants of `pd`.
pub fn check_identities(pd: &ParabolicData) -> Result<Vec<IdentityCheck>> {
    let min_pairs: i64 = pd
        .points
        .iter()
        .map(|p| min_pair_sum(&conjugate(&sort_to_partition(&p.levi))) as i64)
        .sum();
    let all_trivial = pd.points.iter().all(|p| p.levi.blocks() == 1);
    let components = weak_fiber_components(pd)?;
    let delta = genus_spectral(pd) - genus_normalized(pd);
    Ok(vec![
        IdentityCheck::eq("half_dimension", 2 * dim_parabolic_base(pd), dim_higgs(pd)),
        IdentityCheck::eq("higgs_twice_moduli", dim_higgs(pd), 2 * dim_moduli(pd)),
        IdentityCheck::eq("delta_block_pairs", delta, local_delta_sum(pd)),
        IdentityCheck::eq("delta_min_pair_sum", delta, min_pairs),
        IdentityCheck::eq(
            "parabolic_base_gap",
            dim_hitchin_base(pd) + 1 - dim_parabolic_base(pd),
            pd.gamma_sum(),
        ),
        IdentityCheck::eq("nilpotent_cones", nilpotent_cone_dims(pd).0, dim_higgs(pd) / 2),
        IdentityCheck::eq(
            "single_component_iff_trivial_flags",
            (components == 1) as i64,
            all_trivial as i64,
        ),
    ])
}

/// Evaluates every invariant of `pd`.
pub fn census(pd: &ParabolicData) -> Result<CensusReport> {
    let mut extensions = Vec::new();
    if pd.points.len() > 1 {
        for name in ["genus_normalized", "local_delta", "bnr_degree"] {
            extensions.push(format!("{name}: summed over marked points"));
        }
    }
    let (nil, nil_weak) = nilpotent_cone_dims(pd);
    Ok(CensusReport {
        genus: pd.genus,
        rank: pd.rank,
        degree: pd.degree,
        marked_points: pd.points.len(),
        par_degree: par_degree(pd),
        par_slope: par_slope(pd),
        dim_moduli: dim_moduli(pd),
        dim_higgs: dim_higgs(pd),
        dim_higgs_weak: dim_higgs_weak(pd),
        dim_hitchin_base: dim_hitchin_base(pd),
        dim_parabolic_base: dim_parabolic_base(pd),
        genus_spectral: genus_spectral(pd),
        genus_normalized: genus_normalized(pd),
        local_delta: genus_spectral(pd) - genus_normalized(pd),
        bnr_degree: bnr_degree(pd),
        weak_fiber_components: weak_fiber_components(pd)?,
        nilpotent_cone_dim: nil,
        weak_nilpotent_cone_dim: nil_weak,
        sl_variant_base_dim: sl_variant_base_dim(pd),
        extensions,
        identities: check_identities(pd)?,
    })
}
