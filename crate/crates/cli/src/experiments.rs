//! The experiment registry: one seeded trial of each experiment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hitchin_core::census::{census, genus_normalized, genus_spectral, MarkedPoint, ParabolicData};
use hitchin_core::combinatorics::{level_function, LevelFunction, LeviType, Partition};
use hitchin_core::literal::{encode_matrix, encode_poly, MatrixLiteral, PolyLiteral};
use hitchin_core::local_higgs::{
    char_poly, decompose, is_strongly_parabolic, jordan_type_mod_t, random_strong_parabolic, resample_seed,
    verify_valuation_bounds, FlaggedLattice, StrongParabolicEndo,
};
use hitchin_core::series_ring::{SeriesPoly, SeriesRing, Valuation};
use hitchin_core::spectral::{
    bnr_reverse, factor_spectral, is_generic_for, local_delta, random_eisenstein_factors,
    random_spectral_polynomial, SpectralFactorization,
};
use hitchin_core::{Error, Result};

use crate::config::ExperimentName;

/// splitmix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` of an experiment with base seed `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index))
}

/// Everything a trial needs besides its seed.
#[derive(Clone, Debug)]
pub struct Setup {
    pub ring: SeriesRing,
    /// Genus used for the census cross-check of `delta_match`.
    pub genus: u32,
    pub levi: Option<LeviType>,
    pub extension_cap: usize,
    pub max_resamples: u32,
}

impl Setup {
    fn levi(&self) -> &LeviType {
        self.levi.as_ref().expect("local experiments carry a Levi type")
    }

    fn lattice(&self) -> Result<FlaggedLattice> {
        FlaggedLattice::new(self.levi().clone(), self.ring.clone())
    }

    fn gamma(&self) -> LevelFunction {
        level_function(self.levi())
    }

    fn spectral_degrees(&self) -> Partition {
        hitchin_core::combinatorics::conjugate(&hitchin_core::combinatorics::sort_to_partition(self.levi()))
    }

    /// Precision at which products of factors must reproduce the input.
    fn product_precision(&self) -> usize {
        self.ring.precision().saturating_sub(self.levi().rank() as usize)
    }
}

/// A failed trial with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: u64,
    pub seed: u64,
    /// Resample attempt at which a generic sample was accepted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempt: Option<u32>,
    /// `mismatch` for a failed check, otherwise the error kind.
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<MatrixLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<PolyLiteral>,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Default)]
struct Trace {
    attempt: Option<u32>,
    theta: Option<MatrixLiteral>,
    char_poly: Option<PolyLiteral>,
}

impl Trace {
    fn theta(&mut self, theta: &StrongParabolicEndo) {
        self.theta = Some(encode_matrix(theta.ring().field(), theta.matrix()));
    }

    fn poly(&mut self, ring: &SeriesRing, f: &SeriesPoly) {
        self.char_poly = Some(encode_poly(ring.field(), f));
    }
}

enum Check {
    Pass,
    Mismatch { message: String, expected: Value, actual: Value },
}

fn mismatch(message: impl Into<String>, expected: Value, actual: Value) -> Check {
    Check::Mismatch { message: message.into(), expected, actual }
}

/// Runs trial `index` with the given trial seed; `None` when it passes.
pub fn run_trial(setup: &Setup, name: ExperimentName, index: u64, seed: u64) -> Option<FailureRecord> {
    let mut trace = Trace::default();
    let outcome = match name {
        ExperimentName::ValuationBounds => valuation_bounds(setup, seed, &mut trace),
        ExperimentName::Decomposition => decomposition(setup, seed, &mut trace),
        ExperimentName::JordanType => jordan(setup, seed, &mut trace),
        ExperimentName::PolygonProfile => polygon_profile(setup, seed, &mut trace),
        ExperimentName::BnrRoundtrip => bnr_roundtrip(setup, seed, &mut trace),
        ExperimentName::DeltaMatch => delta_match(setup, seed, &mut trace),
        ExperimentName::CensusIdentities => census_identities(seed),
    };
    let (kind, message, expected, actual) = match outcome {
        Ok(Check::Pass) => return None,
        Ok(Check::Mismatch { message, expected, actual }) => ("mismatch".to_string(), message, expected, actual),
        Err(e) => (e.kind().to_string(), e.to_string(), Value::Null, Value::Null),
    };
    Some(FailureRecord {
        trial: index,
        seed,
        attempt: trace.attempt,
        kind,
        message,
        theta: trace.theta,
        char_poly: trace.char_poly,
        expected,
        actual,
    })
}

fn valuation_bounds(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<Check> {
    let theta = random_strong_parabolic(&setup.lattice()?, seed);
    trace.theta(&theta);
    let f = char_poly(&theta);
    trace.poly(&setup.ring, &f);
    let report = verify_valuation_bounds(&f, &setup.gamma())?;
    if report.holds {
        Ok(Check::Pass)
    } else {
        Ok(mismatch(
            format!("bound fails at indices {:?}", report.violations),
            json!(report.level),
            json!(report.valuations),
        ))
    }
}

/// Draws strongly parabolic samples until the characteristic polynomial is
/// generic for the Levi type.
fn generic_theta(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<(StrongParabolicEndo, SeriesPoly)> {
    let gamma = setup.gamma();
    let field = setup.ring.field().clone();
    let lattice = setup.lattice()?;
    let (theta, f, attempt) = hitchin_core::local_higgs::sample_until(&lattice, seed, setup.max_resamples, |t| {
        let f = char_poly(t);
        is_generic_for(&f, &gamma, &field).then_some(f)
    })?;
    trace.attempt = Some(attempt);
    trace.theta(&theta);
    trace.poly(&setup.ring, &f);
    Ok((theta, f))
}

/// Draws spectral polynomials with `v(b_i) >= gamma_i` until one is generic.
fn generic_spectral(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<SeriesPoly> {
    let gamma = setup.gamma();
    for attempt in 0..setup.max_resamples {
        let f = random_spectral_polynomial(&gamma, &setup.ring, resample_seed(seed, attempt));
        if is_generic_for(&f, &gamma, setup.ring.field()) {
            trace.attempt = Some(attempt);
            trace.poly(&setup.ring, &f);
            return Ok(f);
        }
    }
    Err(Error::ResampleCapExceeded(setup.max_resamples as usize))
}

fn product_matches(setup: &Setup, fact: &SpectralFactorization, f: &SeriesPoly) -> bool {
    fact.product().agrees_with(&f.map_field(&fact.ring, &fact.embedding), setup.product_precision())
}

fn decomposition(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<Check> {
    let (theta, f) = generic_theta(setup, seed, trace)?;
    let fact = factor_spectral(&setup.ring, &f, setup.extension_cap)?;
    let theta_k = theta.base_change(&fact.embedding)?;
    let d = decompose(&theta_k, &fact.polys())?;
    if d.assembly_det_valuation != Valuation::Exact(0) {
        return Ok(mismatch("assembly matrix is not invertible", json!(Valuation::Exact(0)), json!(d.assembly_det_valuation)));
    }
    let blocks = d.block_char_polys(&theta_k)?;
    let product = SeriesPoly::product(theta_k.ring(), &blocks);
    let f_k = f.map_field(theta_k.ring(), &fact.embedding);
    if !product.agrees_with(&f_k, setup.product_precision()) {
        return Ok(mismatch(
            "block characteristic polynomials do not multiply back",
            json!(encode_poly(theta_k.ring().field(), &f_k)),
            json!(encode_poly(theta_k.ring().field(), &product)),
        ));
    }
    Ok(Check::Pass)
}

fn jordan(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<Check> {
    let (theta, _) = generic_theta(setup, seed, trace)?;
    let found = jordan_type_mod_t(&theta)?;
    let expected = setup.spectral_degrees();
    if found == expected {
        Ok(Check::Pass)
    } else {
        Ok(mismatch("Jordan type differs from the conjugate partition", json!(expected), json!(found)))
    }
}

fn polygon_profile(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<Check> {
    let f = generic_spectral(setup, seed, trace)?;
    let fact = factor_spectral(&setup.ring, &f, setup.extension_cap)?;
    let profile = fact.profile();
    let expected = setup.spectral_degrees();
    let branches = expected.len();
    if profile.degrees != expected || profile.branches != branches {
        return Ok(mismatch(
            "ramification profile differs",
            json!({"degrees": expected, "branches": branches}),
            json!(profile),
        ));
    }
    if !product_matches(setup, &fact, &f) {
        return Ok(mismatch("factors do not multiply back", Value::Null, Value::Null));
    }
    Ok(Check::Pass)
}

fn delta_match(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<Check> {
    let f = generic_spectral(setup, seed, trace)?;
    let fact = factor_spectral(&setup.ring, &f, setup.extension_cap)?;
    let delta = local_delta(&fact)? as i64;
    let levi = setup.levi();
    let block_pairs: i64 = levi.parts().iter().map(|&m| (m as i64) * (m as i64 - 1) / 2).sum();
    let pd = ParabolicData::new(setup.genus, levi.rank(), 0, vec![MarkedPoint::uniform(levi.clone())])?;
    let genus_gap = genus_spectral(&pd) - genus_normalized(&pd);
    if delta == block_pairs && delta == genus_gap {
        Ok(Check::Pass)
    } else {
        Ok(mismatch(
            "local delta differs from the genus drop",
            json!({"block_pairs": block_pairs, "genus_gap": genus_gap}),
            json!(delta),
        ))
    }
}

fn bnr_roundtrip(setup: &Setup, seed: u64, trace: &mut Trace) -> Result<Check> {
    let ring = &setup.ring;
    let levi = setup.levi();
    let factors = random_eisenstein_factors(ring, levi, seed)?;
    let product = SeriesPoly::product(ring, &factors);
    trace.poly(ring, &product);
    let theta = bnr_reverse(ring, &factors, levi)?;
    trace.theta(&theta);
    if !is_strongly_parabolic(theta.lattice(), theta.matrix()) {
        return Ok(mismatch("output is not strongly parabolic", Value::Null, Value::Null));
    }
    let f = char_poly(&theta);
    if !f.agrees_with(&product, ring.precision()) {
        return Ok(mismatch(
            "characteristic polynomial differs from the product of factors",
            json!(encode_poly(ring.field(), &product)),
            json!(encode_poly(ring.field(), &f)),
        ));
    }
    let d = decompose(&theta, &factors)?;
    let mut found: Vec<u32> = d.summands.iter().map(|s| s.basis.len() as u32).collect();
    found.sort_unstable_by(|a, b| b.cmp(a));
    let expected = setup.spectral_degrees();
    if found != expected.parts() {
        return Ok(mismatch("summand ranks differ from the factor degrees", json!(expected), json!(found)));
    }
    let jt = jordan_type_mod_t(&theta)?;
    if jt != expected {
        return Ok(mismatch("Jordan type differs from the conjugate partition", json!(expected), json!(jt)));
    }
    Ok(Check::Pass)
}

/// Random parabolic data with `g <= 5`, `r <= 8` and at most three points.
pub fn random_parabolic_data(seed: u64) -> ParabolicData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let genus = rng.gen_range(2..=5);
    let rank = rng.gen_range(1..=8);
    let degree = rng.gen_range(-10..=10);
    let types = LeviType::all(rank);
    let points = (0..rng.gen_range(0..=3))
        .map(|_| MarkedPoint::uniform(types[rng.gen_range(0..types.len())].clone()))
        .collect();
    ParabolicData::new(genus, rank, degree, points).expect("valid by construction")
}

fn census_identities(seed: u64) -> Result<Check> {
    let pd = random_parabolic_data(seed);
    let report = census(&pd)?;
    let failing: Vec<_> = report.identities.iter().filter(|c| !c.holds).collect();
    if failing.is_empty() {
        Ok(Check::Pass)
    } else {
        Ok(mismatch("census identities fail", json!(pd), json!(failing)))
    }
}
