//! Strongly parabolic endomorphisms of a flagged lattice `V = O^r`.
//!
//! The flag is fixed by the adapted basis: block `j` of the Levi type spans
//! the basis vectors `m_1 + .. + m_(j-1) + 1 ..= m_1 + .. + m_j`, and the
//! graded piece in step `j` is that block. An endomorphism is strongly
//! parabolic when it maps each block into strictly later blocks modulo `t`,
//! i.e. it has the shape `N0 + t M` with `N0` strictly block lower
//! triangular.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{conjugate, level_function, sort_to_partition, LevelFunction, LeviType, Partition};
use crate::error::{Error, Result};
use crate::field::{Embedding, FieldMatrix, Fq, GaloisField};
use crate::series_ring::{Series, SeriesMatrix, SeriesPoly, SeriesRing, Valuation};

/// `O^r` with the partial flag of a Levi type, over a fixed series ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlaggedLattice {
    levi: LeviType,
    ring: SeriesRing,
}

impl FlaggedLattice {
    /// Rejects characteristic 2 in rank below 3, where the sampled
    /// endomorphisms are too degenerate to be generic.
    pub fn new(levi: LeviType, ring: SeriesRing) -> Result<Self> {
        if ring.field().characteristic() == 2 && levi.rank() < 3 {
            return Err(Error::InvalidInput("characteristic 2 needs rank at least 3".into()));
        }
        Ok(FlaggedLattice { levi, ring })
    }

    pub fn levi(&self) -> &LeviType {
        &self.levi
    }

    pub fn ring(&self) -> &SeriesRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.levi.rank() as usize
    }

    pub fn level_function(&self) -> LevelFunction {
        level_function(&self.levi)
    }

    /// Conjugate of the sorted Levi type: the expected spectral degrees.
    pub fn spectral_degrees(&self) -> Partition {
        conjugate(&sort_to_partition(&self.levi))
    }

    /// Same flag over a larger field.
    pub fn base_change(&self, emb: &Embedding) -> Result<FlaggedLattice> {
        let ring = SeriesRing::new(emb.target().clone(), self.ring.precision())?;
        Ok(FlaggedLattice { levi: self.levi.clone(), ring })
    }
}

/// An endomorphism of a flagged lattice preserving the flag strongly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongParabolicEndo {
    lattice: FlaggedLattice,
    matrix: SeriesMatrix,
}

/// True when `matrix` maps each block into strictly later blocks mod `t`.
pub fn is_strongly_parabolic(lattice: &FlaggedLattice, matrix: &SeriesMatrix) -> bool {
    let blocks = lattice.levi.block_of_index();
    let r = blocks.len();
    if matrix.rows() != r || matrix.cols() != r {
        return false;
    }
    (0..r).all(|i| {
        (0..r).all(|j| blocks[i] > blocks[j] || matrix.get(i, j).coeff(0).is_some_and(|c| c.is_zero()))
    })
}

impl StrongParabolicEndo {
    pub fn new(lattice: FlaggedLattice, matrix: SeriesMatrix) -> Result<Self> {
        if !is_strongly_parabolic(&lattice, &matrix) {
            return Err(Error::InvalidInput("matrix is not strongly parabolic for the flag".into()));
        }
        Ok(StrongParabolicEndo { lattice, matrix })
    }

    pub fn lattice(&self) -> &FlaggedLattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &SeriesMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> &SeriesRing {
        &self.lattice.ring
    }

    pub fn base_change(&self, emb: &Embedding) -> Result<StrongParabolicEndo> {
        let lattice = self.lattice.base_change(emb)?;
        let matrix = self.matrix.map_field(lattice.ring(), emb);
        Ok(StrongParabolicEndo { lattice, matrix })
    }
}

/// Uniform sample of `N0 + t M`: `N0` strictly block lower triangular with
/// entries in `k`, `M` with entries in `O`, both from a ChaCha stream.
pub fn random_strong_parabolic(lattice: &FlaggedLattice, seed: u64) -> StrongParabolicEndo {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = lattice.ring();
    let blocks = lattice.levi.block_of_index();
    let r = blocks.len();
    let mut m = SeriesMatrix::zeros(ring, r, r);
    for i in 0..r {
        for j in 0..r {
            let constant = if blocks[i] > blocks[j] { ring.field().random(&mut rng) } else { Fq::ZERO };
            let mut entry = ring.random(&mut rng, 1);
            entry = ring.add(&entry, &ring.constant(constant));
            m.set(i, j, entry);
        }
    }
    StrongParabolicEndo { lattice: lattice.clone(), matrix: m }
}

/// Seed of the `attempt`-th resample derived from a base seed.
pub fn resample_seed(seed: u64, attempt: u32) -> u64 {
    if attempt == 0 {
        return seed;
    }
    // splitmix64 step
    let mut z = seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws samples with [`resample_seed`] until `accept` holds, at most
/// `max_tries` times. Returns the sample, the accepted value and the attempt.
pub fn sample_until<T>(
    lattice: &FlaggedLattice,
    seed: u64,
    max_tries: u32,
    mut accept: impl FnMut(&StrongParabolicEndo) -> Option<T>,
) -> Result<(StrongParabolicEndo, T, u32)> {
    for attempt in 0..max_tries {
        let theta = random_strong_parabolic(lattice, resample_seed(seed, attempt));
        if let Some(v) = accept(&theta) {
            return Ok((theta, v, attempt));
        }
    }
    Err(Error::ResampleCapExceeded(max_tries as usize))
}

/// Characteristic polynomial `det(lambda - A)` by Berkowitz's division-free
/// recurrence.
pub fn char_poly_matrix(ring: &SeriesRing, a: &SeriesMatrix) -> SeriesPoly {
    let n = a.rows();
    assert_eq!(n, a.cols(), "characteristic polynomial of a non-square matrix");
    if n == 0 {
        return SeriesPoly::from_ascending(vec![ring.one()]);
    }
    // p holds the characteristic polynomial of the leading k x k block,
    // leading coefficient first
    let mut p: Vec<Series> = vec![ring.one(), ring.neg(a.get(0, 0))];
    for k in 1..n {
        // column (1, -a_kk, -R C, -R A C, .., -R A^(k-1) C)
        let row: Vec<&Series> = (0..k).map(|j| a.get(k, j)).collect();
        let mut v: Vec<Series> = (0..k).map(|i| a.get(i, k).clone()).collect();
        let mut col = vec![ring.one(), ring.neg(a.get(k, k))];
        for step in 0..k {
            let vr: Vec<&Series> = v.iter().collect();
            col.push(ring.neg(&ring.dot(&row, &vr)));
            if step + 1 < k {
                v = (0..k)
                    .map(|i| {
                        let ai: Vec<&Series> = (0..k).map(|j| a.get(i, j)).collect();
                        ring.dot(&ai, &vr)
                    })
                    .collect();
            }
        }
        // multiply by the lower triangular Toeplitz matrix with first column col
        let next: Vec<Series> = (0..k + 2)
            .map(|i| {
                let (lo, hi) = (i.saturating_sub(k + 1), i.min(k));
                let x: Vec<&Series> = (lo..=hi).map(|j| &col[i - j]).collect();
                let y: Vec<&Series> = (lo..=hi).map(|j| &p[j]).collect();
                ring.dot(&x, &y)
            })
            .collect();
        p = next;
    }
    SeriesPoly::from_leading_first(p)
}

/// Characteristic polynomial of a strongly parabolic endomorphism.
pub fn char_poly(theta: &StrongParabolicEndo) -> SeriesPoly {
    char_poly_matrix(theta.ring(), &theta.matrix)
}

/// Outcome of comparing `v(b_i)` against the level function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub level: Vec<u32>,
    pub valuations: Vec<Valuation>,
    /// `v(b_i) >= gamma_i` for every `i`.
    pub holds: bool,
    /// `v(b_i) = gamma_i` for every `i`.
    pub sharp: bool,
    /// Indices `i` (1-based) where the bound fails.
    pub violations: Vec<usize>,
}

/// Checks `v(b_i) >= gamma_i` for the coefficients of a monic `f`.
///
/// A coefficient that vanishes at all known digits certifies the bound when
/// its precision reaches `gamma_i`; otherwise the check is `PrecisionTooLow`.
pub fn verify_valuation_bounds(f: &SeriesPoly, gamma: &LevelFunction) -> Result<BoundReport> {
    let r = f.degree();
    if r != gamma.rank() {
        return Err(Error::InvalidInput(format!(
            "polynomial of degree {r} against a level function of rank {}",
            gamma.rank()
        )));
    }
    let mut valuations = Vec::with_capacity(r);
    let mut violations = Vec::new();
    let mut sharp = true;
    for i in 1..=r {
        let v = f.b(i).valuation();
        let g = gamma.gamma(i);
        match v {
            Valuation::Exact(e) => {
                if e < g {
                    violations.push(i);
                }
                sharp &= e == g;
            }
            Valuation::AtLeast(p) => {
                if p < g {
                    return Err(Error::PrecisionTooLow(format!(
                        "b_{i} vanishes modulo t^{p} but the bound needs t^{g}"
                    )));
                }
                sharp = false;
            }
        }
        valuations.push(v);
    }
    Ok(BoundReport {
        level: gamma.values().to_vec(),
        valuations,
        holds: violations.is_empty(),
        sharp,
        violations,
    })
}

/// A saturated kernel: `O`-basis of `Ker f(theta)` and the Smith valuations
/// of `f(theta)`.
#[derive(Clone, Debug)]
pub struct KernelLattice {
    pub basis: Vec<Vec<Series>>,
    pub smith_pivots: Vec<Valuation>,
}

/// Saturated kernel of `f(theta)`; its rank must equal `deg f`.
pub fn kernel_lattice(theta: &StrongParabolicEndo, f: &SeriesPoly) -> Result<KernelLattice> {
    let ring = theta.ring();
    let r = theta.lattice.rank();
    let d = f.degree();
    let m = theta.matrix.eval_poly(ring, f);
    let smith = m.smith_form(ring)?;
    let expected_pivots = r.saturating_sub(d);
    if smith.rank > expected_pivots {
        return Err(Error::RankMismatch { expected: d, found: r - smith.rank });
    }
    if smith.rank < expected_pivots {
        return Err(Error::PrecisionTooLow(format!(
            "only {} of {expected_pivots} pivots of f(theta) certified",
            smith.rank
        )));
    }
    let basis = (smith.rank..r).map(|j| smith.column_transform.column(j)).collect();
    Ok(KernelLattice { basis, smith_pivots: smith.pivots })
}

/// One kernel summand of a decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    pub factor: SeriesPoly,
    pub basis: Vec<Vec<Series>>,
}

/// `V = sum_i Ker f_i(theta)` with the assembly matrix of concatenated bases.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub summands: Vec<Summand>,
    pub assembly: SeriesMatrix,
    pub assembly_det_valuation: Valuation,
}

/// Splits the lattice along the factors of the characteristic polynomial.
///
/// The factors must be Eisenstein, their degrees must form the conjugate of
/// the sorted Levi type, and factors of equal degree must have constant terms
/// that differ modulo `t^2`.
pub fn decompose(theta: &StrongParabolicEndo, factors: &[SeriesPoly]) -> Result<DecompositionResult> {
    let ring = theta.ring();
    let r = theta.lattice.rank();
    let mut degrees: Vec<u32> = factors.iter().map(|f| f.degree() as u32).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let expected = theta.lattice.spectral_degrees();
    if degrees != expected.parts() {
        return Err(Error::GenericityViolation(format!(
            "factor degrees {degrees:?} differ from the conjugate partition {expected}"
        )));
    }
    for (i, f) in factors.iter().enumerate() {
        if !f.is_eisenstein(ring) {
            return Err(Error::GenericityViolation(format!("factor {i} is not Eisenstein")));
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let (fi, fj) = (&factors[i], &factors[j]);
            if fi.degree() == fj.degree() && fi.coeff(0).coeff(1) == fj.coeff(0).coeff(1) {
                return Err(Error::GenericityViolation(format!(
                    "factors {i} and {j} have equal degree and equal constant terms modulo t^2"
                )));
            }
        }
    }
    let mut summands = Vec::with_capacity(factors.len());
    let mut columns = Vec::with_capacity(r);
    for f in factors {
        let k = kernel_lattice(theta, f)?;
        columns.extend(k.basis.iter().cloned());
        summands.push(Summand { factor: f.clone(), basis: k.basis });
    }
    let assembly = SeriesMatrix::from_columns(ring, r, &columns);
    let det = assembly.det_valuation(ring);
    if det != Valuation::Exact(0) {
        return Err(Error::NotDirectSum(det));
    }
    Ok(DecompositionResult { summands, assembly, assembly_det_valuation: det })
}

/// `theta` restricted to the summands, read off from `P^-1 theta P`.
#[derive(Clone, Debug)]
pub struct BlockView {
    pub conjugated: SeriesMatrix,
    pub blocks: Vec<SeriesMatrix>,
    /// Every entry outside the diagonal blocks vanishes at its known digits.
    pub off_blocks_vanish: bool,
}

impl DecompositionResult {
    pub fn block_view(&self, theta: &StrongParabolicEndo) -> Result<BlockView> {
        let ring = theta.ring();
        let inv = self.assembly.inverse(ring)?;
        let conj = inv.mul(ring, &theta.matrix.mul(ring, &self.assembly));
        let sizes: Vec<usize> = self.summands.iter().map(|s| s.basis.len()).collect();
        let mut owner = Vec::new();
        for (b, &s) in sizes.iter().enumerate() {
            owner.extend(std::iter::repeat_n(b, s));
        }
        let n = owner.len();
        let off_blocks_vanish = (0..n)
            .all(|i| (0..n).all(|j| owner[i] == owner[j] || conj.get(i, j).is_zero()));
        let mut blocks = Vec::new();
        let mut start = 0;
        for &s in &sizes {
            let rows = (start..start + s)
                .map(|i| (start..start + s).map(|j| conj.get(i, j).clone()).collect())
                .collect();
            blocks.push(SeriesMatrix::from_rows(rows));
            start += s;
        }
        Ok(BlockView { conjugated: conj, blocks, off_blocks_vanish })
    }

    /// Characteristic polynomials of the diagonal blocks.
    pub fn block_char_polys(&self, theta: &StrongParabolicEndo) -> Result<Vec<SeriesPoly>> {
        let ring = theta.ring();
        Ok(self.block_view(theta)?.blocks.iter().map(|b| char_poly_matrix(ring, b)).collect())
    }
}

/// Jordan type of the nilpotent `theta mod t`, as a partition of block sizes.
pub fn jordan_type_mod_t(theta: &StrongParabolicEndo) -> Result<Partition> {
    let k = theta.ring().field();
    let nil = theta.matrix.mod_t()?;
    jordan_type(k, &nil)
}

/// Jordan type of a nilpotent matrix over a field.
pub fn jordan_type(k: &GaloisField, nil: &FieldMatrix) -> Result<Partition> {
    let n = nil.rows();
    let mut ranks = vec![n];
    let mut pow = FieldMatrix::identity(k, n);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return Err(Error::NotNilpotent);
        }
        pow = pow.mul(k, nil);
        ranks.push(pow.rank(k));
    }
    // blocks of size >= s: ranks[s-1] - ranks[s]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for s in (1..=at_least.len()).rev() {
        let exactly = at_least[s - 1] - at_least.get(s).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(s as u32, exactly));
    }
    Partition::new(sizes)
}

/// Nilpotent matrix in Jordan form with the given block sizes (ones on the
/// subdiagonal).
pub fn jordan_matrix(k: &GaloisField, blocks: &Partition) -> FieldMatrix {
    let n = blocks.size() as usize;
    let mut m = FieldMatrix::zeros(n, n);
    let mut start = 0;
    for &b in blocks.parts() {
        for i in 1..b as usize {
            m.set(start + i, start + i - 1, k.one());
        }
        start += b as usize;
    }
    m
}

/// Surjectivity of `ad(N) : p -> n` where `p` stabilizes the kernel flag
/// `Ker N ⊂ Ker N^2 ⊂ ..` and `n` maps each step into the previous one.
pub fn ad_surjectivity_check(k: &GaloisField, nil: &FieldMatrix) -> Result<bool> {
    let n = nil.rows();
    if nil.cols() != n {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    // basis adapted to the kernel flag
    let mut basis: Vec<Vec<Fq>> = Vec::new();
    let mut step_of: Vec<usize> = Vec::new();
    let mut pow = FieldMatrix::identity(k, n);
    let mut step = 0;
    while basis.len() < n {
        step += 1;
        if step > n {
            return Err(Error::NotNilpotent);
        }
        pow = pow.mul(k, nil);
        for v in pow.nullspace(k) {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if FieldMatrix::from_columns(n, &trial).rank(k) == trial.len() {
                basis = trial;
                step_of.push(step);
            }
        }
    }
    let b = FieldMatrix::from_columns(n, &basis);
    let binv = b.inverse(k).expect("adapted basis is a basis");
    let x = binv.mul(k, &nil.mul(k, &b));
    let p_pos: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| step_of[i] <= step_of[j]).collect();
    let n_pos: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| step_of[i] < step_of[j]).collect();
    let mut image = FieldMatrix::zeros(n_pos.len(), p_pos.len());
    for (col, &(a, c)) in p_pos.iter().enumerate() {
        // [x, E_ac] = x E_ac - E_ac x
        let mut br = FieldMatrix::zeros(n, n);
        for i in 0..n {
            br.set(i, c, k.add(br.get(i, c), x.get(i, a)));
        }
        for j in 0..n {
            br.set(a, j, k.sub(br.get(a, j), x.get(c, j)));
        }
        for (row, &(i, j)) in n_pos.iter().enumerate() {
            image.set(row, col, br.get(i, j));
        }
        debug_assert!((0..n).all(|i| (0..n).all(|j| step_of[i] < step_of[j] || br.get(i, j).is_zero())));
    }
    Ok(image.rank(k) == n_pos.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;

    fn lattice(levi: &[u32], p: u32, n: usize) -> FlaggedLattice {
        let ring = SeriesRing::new(GaloisField::prime(p).unwrap(), n).unwrap();
        FlaggedLattice::new(LeviType::new(levi.to_vec()).unwrap(), ring).unwrap()
    }

    /// `det(lambda - A)` by expansion over permutations.
    fn leibniz(ring: &SeriesRing, a: &SeriesMatrix) -> SeriesPoly {
        let n = a.rows();
        let entry = |i: usize, j: usize| -> SeriesPoly {
            let c = ring.neg(a.get(i, j));
            if i == j {
                SeriesPoly::from_ascending(vec![c, ring.one()])
            } else {
                SeriesPoly::from_ascending(vec![c])
            }
        };
        let mut total = SeriesPoly::from_ascending(vec![ring.zero()]);
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let mut term = SeriesPoly::from_ascending(vec![ring.one()]);
            for (i, &p) in perm.iter().enumerate() {
                term = term.mul(ring, &entry(i, p));
            }
            total = if inversions % 2 == 0 { total.add(ring, &term) } else { total.sub(ring, &term) };
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    #[test]
    fn berkowitz_matches_permutation_expansion() {
        for (levi, seed) in [(vec![1, 1], 1), (vec![2, 1], 2), (vec![1, 2, 1], 3), (vec![2, 3], 4), (vec![1, 1, 1, 1, 1], 5)] {
            let l = lattice(&levi, 7, 6);
            let theta = random_strong_parabolic(&l, seed);
            let f = char_poly(&theta);
            let g = leibniz(l.ring(), theta.matrix());
            assert!(f.agrees_with(&g, 6), "levi {levi:?}");
            assert!(f.is_monic(l.ring()));
        }
    }

    #[test]
    fn samples_are_strongly_parabolic_and_reproducible() {
        let l = lattice(&[2, 1, 2], 5, 5);
        let a = random_strong_parabolic(&l, 11);
        assert!(is_strongly_parabolic(&l, a.matrix()));
        assert_eq!(a, random_strong_parabolic(&l, 11));
        assert_ne!(a, random_strong_parabolic(&l, 12));
    }

    #[test]
    fn rejects_tiny_characteristic_two_lattices() {
        let ring = SeriesRing::new(GaloisField::prime(2).unwrap(), 4).unwrap();
        assert!(FlaggedLattice::new(LeviType::new(vec![1, 1]).unwrap(), ring.clone()).is_err());
        assert!(FlaggedLattice::new(LeviType::new(vec![1, 1, 1]).unwrap(), ring).is_ok());
    }

    #[test]
    fn char_poly_of_t_times_diagonal() {
        let l = lattice(&[2], 7, 5);
        let r = l.ring();
        let m = SeriesMatrix::from_rows(vec![
            vec![r.from_ints(&[0, 1]), r.zero()],
            vec![r.zero(), r.from_ints(&[0, 2])],
        ]);
        let theta = StrongParabolicEndo::new(l.clone(), m).unwrap();
        let f = char_poly(&theta);
        // (lambda - t)(lambda - 2t) = lambda^2 - 3t lambda + 2t^2
        assert_eq!(f.b(1), &r.from_ints(&[0, -3]));
        assert_eq!(f.b(2), &r.from_ints(&[0, 0, 2]));
    }

    #[test]
    fn bound_check_examples() {
        let l = lattice(&[1, 1, 1], 7, 6);
        let r = l.ring();
        let gamma = l.level_function();
        // lambda^3 passes any bound
        let f = SeriesPoly::monic_from_b(r, &[r.zero(), r.zero(), r.zero()]);
        let rep = verify_valuation_bounds(&f, &gamma).unwrap();
        assert!(rep.holds && !rep.sharp);
        // b_1 a unit violates gamma_1 = 1
        let g = SeriesPoly::monic_from_b(r, &[r.from_int(1), r.zero(), r.zero()]);
        let rep = verify_valuation_bounds(&g, &gamma).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.violations, vec![1]);
        // a zero known only mod t^1 cannot certify gamma_3 = 3 for levi (3)
        let g3 = level_function(&LeviType::new(vec![3]).unwrap());
        let short = SeriesPoly::monic_from_b(r, &[r.zero(), r.zero(), r.zero().truncate(1)]);
        assert!(matches!(verify_valuation_bounds(&short, &g3), Err(Error::PrecisionTooLow(_))));
    }

    #[test]
    fn decomposition_of_t_times_diagonal() {
        let l = lattice(&[2], 7, 6);
        let r = &l.ring().clone();
        let m = SeriesMatrix::from_rows(vec![
            vec![r.from_ints(&[0, 1]), r.zero()],
            vec![r.zero(), r.from_ints(&[0, 2])],
        ]);
        let theta = StrongParabolicEndo::new(l, m).unwrap();
        let f1 = SeriesPoly::monic_from_b(r, &[r.from_ints(&[0, -1])]);
        let f2 = SeriesPoly::monic_from_b(r, &[r.from_ints(&[0, -2])]);
        let d = decompose(&theta, &[f1, f2]).unwrap();
        assert_eq!(d.assembly_det_valuation, Valuation::Exact(0));
        // first summand spanned by a unit multiple of e_1
        let b = &d.summands[0].basis[0];
        assert_eq!(b[0].valuation(), Valuation::Exact(0));
        assert!(b[1].is_zero());
        let view = d.block_view(&theta).unwrap();
        assert!(view.off_blocks_vanish);
    }

    #[test]
    fn decomposition_rejects_colliding_constant_terms() {
        let l = lattice(&[2], 7, 6);
        let r = &l.ring().clone();
        let m = SeriesMatrix::from_rows(vec![
            vec![r.from_ints(&[0, 1]), r.zero()],
            vec![r.zero(), r.from_ints(&[0, 1, 1])],
        ]);
        let theta = StrongParabolicEndo::new(l, m).unwrap();
        let f1 = SeriesPoly::monic_from_b(r, &[r.from_ints(&[0, -1])]);
        let f2 = SeriesPoly::monic_from_b(r, &[r.from_ints(&[0, -1, -1])]);
        assert!(matches!(decompose(&theta, &[f1, f2]), Err(Error::GenericityViolation(_))));
    }

    #[test]
    fn kernel_rank_mismatch() {
        let l = lattice(&[2], 7, 6);
        let r = &l.ring().clone();
        let m = SeriesMatrix::from_rows(vec![
            vec![r.from_ints(&[0, 1]), r.zero()],
            vec![r.zero(), r.from_ints(&[0, 2])],
        ]);
        let theta = StrongParabolicEndo::new(l, m).unwrap();
        // lambda - 3t is not a factor: f(theta) is invertible up to t
        let f = SeriesPoly::monic_from_b(r, &[r.from_ints(&[0, -3])]);
        assert!(matches!(kernel_lattice(&theta, &f), Err(Error::RankMismatch { expected: 1, found: 0 })));
    }

    #[test]
    fn jordan_types() {
        let k = GaloisField::prime(5).unwrap();
        for p in Partition::all(5) {
            let m = jordan_matrix(&k, &p);
            assert_eq!(jordan_type(&k, &m).unwrap(), p);
        }
        assert_eq!(jordan_type(&k, &FieldMatrix::identity(&k, 2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn ad_surjectivity_on_jordan_forms() {
        let k = GaloisField::prime(7).unwrap();
        for r in 1..=4 {
            for p in Partition::all(r) {
                assert!(ad_surjectivity_check(&k, &jordan_matrix(&k, &p)).unwrap(), "{p}");
            }
        }
    }

    #[test]
    fn ad_check_edge_cases() {
        // zero matrix: kernel flag is trivial, so n = 0 and the map is onto
        let k = GaloisField::prime(3).unwrap();
        assert!(ad_surjectivity_check(&k, &FieldMatrix::zeros(3, 3)).unwrap());
        assert_eq!(ad_surjectivity_check(&k, &FieldMatrix::identity(&k, 2)), Err(Error::NotNilpotent));
    }
}
