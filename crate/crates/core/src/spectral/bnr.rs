//! Reverse spectral construction: from Eisenstein factors to a strongly
//! parabolic endomorphism.
//!
//! `V = sum_i O[lambda]/(f_i)` with `theta` acting by `lambda`. In the summand
//! of degree `mu` the powers `1, lambda, .., lambda^(mu - 1)` form a basis and
//! `lambda` is a uniformizer. The flag is `L_j = sum_i lambda^(c_i(j)) A_i`,
//! where `c_i` climbs by one at exactly the steps `j` with `m_j >= rank(i)`
//! (factors ranked by decreasing degree). Its graded pieces have dimensions
//! `m_1, .., m_s` and `theta L_(j-1) ⊆ L_j`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{conjugate, sort_to_partition, LeviType};
use crate::error::{Error, Result};
use crate::local_higgs::{FlaggedLattice, StrongParabolicEndo};
use crate::series_ring::{SeriesMatrix, SeriesPoly, SeriesRing};

fn check_factors(ring: &SeriesRing, factors: &[SeriesPoly], levi: &LeviType) -> Result<Vec<u32>> {
    let expected = conjugate(&sort_to_partition(levi)).parts().to_vec();
    let mut found: Vec<u32> = factors.iter().map(|f| f.degree() as u32).collect();
    found.sort_unstable_by(|a, b| b.cmp(a));
    if found != expected {
        return Err(Error::DegreeMismatch { expected, found });
    }
    for (i, f) in factors.iter().enumerate() {
        if !f.is_eisenstein(ring) {
            return Err(Error::GenericityViolation(format!("factor {i} is not Eisenstein")));
        }
        for (j, g) in factors.iter().enumerate().skip(i + 1) {
            if f.degree() == g.degree() && f.coeff(0).coeff(1) == g.coeff(0).coeff(1) {
                return Err(Error::GenericityViolation(format!(
                    "factors {i} and {j} have equal constant terms modulo t^2"
                )));
            }
        }
    }
    Ok(expected)
}

/// Builds the strongly parabolic endomorphism with characteristic polynomial
/// `prod f_i` for the flag of type `levi`.
pub fn bnr_reverse(ring: &SeriesRing, factors: &[SeriesPoly], levi: &LeviType) -> Result<StrongParabolicEndo> {
    check_factors(ring, factors, levi)?;
    let m = levi.parts();
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by(|&a, &b| factors[b].degree().cmp(&factors[a].degree()));
    let mut rank_of = vec![0usize; factors.len()];
    for (rank, &i) in order.iter().enumerate() {
        rank_of[i] = rank + 1;
    }
    // (step, factor, power) for every basis vector lambda^power of A_factor
    let mut slots: Vec<(usize, usize, usize)> = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let steps: Vec<usize> = (0..m.len()).filter(|&j| m[j] as usize >= rank_of[i]).collect();
        debug_assert_eq!(steps.len(), f.degree());
        for (power, &step) in steps.iter().enumerate() {
            slots.push((step, i, power));
        }
    }
    slots.sort_unstable();
    let r = slots.len();
    let mut position = vec![Vec::new(); factors.len()];
    for (i, f) in factors.iter().enumerate() {
        position[i] = vec![0usize; f.degree()];
    }
    for (pos, &(_, i, power)) in slots.iter().enumerate() {
        position[i][power] = pos;
    }
    let mut theta = SeriesMatrix::zeros(ring, r, r);
    for (i, f) in factors.iter().enumerate() {
        let mu = f.degree();
        for a in 0..mu - 1 {
            theta.set(position[i][a + 1], position[i][a], ring.one());
        }
        for k in 0..mu {
            theta.set(position[i][k], position[i][mu - 1], ring.neg(f.coeff(k)));
        }
    }
    let lattice = FlaggedLattice::new(levi.clone(), ring.clone())?;
    StrongParabolicEndo::new(lattice, theta)
}

/// Random Eisenstein factors of the degrees required by `levi`, with equal
/// degree factors having distinct constant terms modulo `t^2`.
pub fn random_eisenstein_factors(ring: &SeriesRing, levi: &LeviType, seed: u64) -> Result<Vec<SeriesPoly>> {
    let degrees = conjugate(&sort_to_partition(levi));
    let k = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<SeriesPoly> = Vec::new();
    for &mu in degrees.parts() {
        let taken: Vec<_> =
            out.iter().filter(|g| g.degree() == mu as usize).map(|g| g.coeff(0).coeff(1)).collect();
        if taken.len() as u128 + 1 >= k.order() {
            return Err(Error::InvalidInput(format!(
                "F_{} has too few units for {} factors of degree {mu}",
                k.order(),
                taken.len() + 1
            )));
        }
        let mut coeffs: Vec<_> = (0..mu).map(|_| ring.random(&mut rng, 1)).collect();
        loop {
            let u = k.random(&mut rng);
            if !u.is_zero() && !taken.contains(&Some(u)) {
                let head = ring.monomial(u, 1);
                let tail = ring.random(&mut rng, 2);
                coeffs[0] = ring.add(&head, &tail);
                break;
            }
        }
        coeffs.push(ring.one());
        out.push(SeriesPoly::from_ascending(coeffs));
    }
    Ok(out)
}
