//! Dense univariate polynomials over a [`GaloisField`].
//!
//! Polynomials are `Vec<Fq>` with ascending coefficients and no trailing
//! zeros; the zero polynomial is the empty vector.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Acc, Fq, GaloisField};

pub fn trim(a: &mut Vec<Fq>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn degree(a: &[Fq]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(k: &GaloisField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let n = a.len().max(b.len());
    let mut c: Vec<Fq> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            k.add(x, y)
        })
        .collect();
    trim(&mut c);
    c
}

pub fn sub(k: &GaloisField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let n = a.len().max(b.len());
    let mut c: Vec<Fq> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            k.sub(x, y)
        })
        .collect();
    trim(&mut c);
    c
}

pub fn scale(k: &GaloisField, s: Fq, a: &[Fq]) -> Vec<Fq> {
    let mut c: Vec<Fq> = a.iter().map(|&x| k.mul(s, x)).collect();
    trim(&mut c);
    c
}

pub fn mul(k: &GaloisField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = Vec::with_capacity(a.len() + b.len() - 1);
    for n in 0..a.len() + b.len() - 1 {
        let mut acc = Acc::default();
        let lo = n.saturating_sub(b.len() - 1);
        for i in lo..=n.min(a.len() - 1) {
            k.acc_mul(&mut acc, a[i], b[n - i]);
        }
        c.push(k.reduce(&acc));
    }
    trim(&mut c);
    c
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(k: &GaloisField, a: &[Fq], b: &[Fq]) -> (Vec<Fq>, Vec<Fq>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = k.inv(b[db]).expect("nonzero leading coefficient");
    let mut r: Vec<Fq> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Fq::ZERO; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = k.mul(r[i + db], lead_inv);
        q[i] = c;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i + j] = k.sub(r[i + j], k.mul(c, b[j]));
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub fn rem(k: &GaloisField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    divrem(k, a, b).1
}

pub fn monic(k: &GaloisField, a: &[Fq]) -> Vec<Fq> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(k, k.inv(a[d]).expect("nonzero"), &a[..=d]),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(k: &GaloisField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    monic(k, &x)
}

pub fn derivative(k: &GaloisField, a: &[Fq]) -> Vec<Fq> {
    let mut c: Vec<Fq> =
        a.iter().enumerate().skip(1).map(|(i, &x)| k.scale_int(i as i64, x)).collect();
    trim(&mut c);
    c
}

pub fn eval(k: &GaloisField, a: &[Fq], x: Fq) -> Fq {
    a.iter().rev().fold(Fq::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
}

/// `base^e mod m`.
pub fn powmod(k: &GaloisField, base: &[Fq], mut e: u128, m: &[Fq]) -> Vec<Fq> {
    let mut b = rem(k, base, m);
    let mut r = rem(k, &[k.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(k, &mul(k, &r, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(k, &mul(k, &b, &b), m);
        }
    }
    r
}

pub fn is_squarefree(k: &GaloisField, a: &[Fq]) -> bool {
    degree(&gcd(k, a, &derivative(k, a))) == Some(0)
}

fn x_poly(k: &GaloisField) -> Vec<Fq> {
    vec![Fq::ZERO, k.one()]
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(q^j) mod m` where `q = |k|`.
fn frobenius_power(k: &GaloisField, j: usize, m: &[Fq]) -> Vec<Fq> {
    let mut y = rem(k, &x_poly(k), m);
    for _ in 0..j {
        y = powmod(k, &y, k.order(), m);
    }
    y
}

/// Rabin's irreducibility test over `k`.
pub fn is_irreducible(k: &GaloisField, f: &[Fq]) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let f = monic(k, f);
    let x = x_poly(k);
    if sub(k, &frobenius_power(k, n, &f), &rem(k, &x, &f)).iter().any(|c| !c.is_zero()) {
        return false;
    }
    prime_factors(n).into_iter().all(|l| {
        let h = sub(k, &frobenius_power(k, n / l, &f), &x);
        degree(&gcd(k, &f, &h)) == Some(0)
    })
}

/// First monic irreducible of degree `n` over the prime field `k`.
///
/// Candidates `x^n + c_{n-1} x^{n-1} + .. + c_0` are tried in increasing order
/// of the base-`p` numeral with `c_0` as the lowest digit.
pub fn smallest_irreducible(k: &GaloisField, n: usize) -> Vec<u32> {
    assert_eq!(k.degree(), 1, "irreducible search runs over a prime field");
    let p = k.characteristic() as u128;
    let mut idx: u128 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut i = idx;
        for _ in 0..n {
            coeffs.push((i % p) as u32);
            i /= p;
        }
        coeffs.push(1);
        if coeffs[0] != 0 || n == 1 {
            let f: Vec<Fq> = coeffs.iter().map(|&c| k.from_int(c as i64)).collect();
            if is_irreducible(k, &f) {
                return coeffs;
            }
        }
        idx += 1;
    }
}

/// Degrees of the irreducible factors of a squarefree polynomial, with
/// multiplicity, in increasing order.
pub fn factor_degrees(k: &GaloisField, f: &[Fq]) -> Vec<usize> {
    let mut rest = monic(k, f);
    let mut out = Vec::new();
    let x = x_poly(k);
    let mut xq = rem(k, &x, &rest);
    let mut d = 0;
    while degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        let n = degree(&rest).unwrap();
        if 2 * d > n {
            out.push(n);
            break;
        }
        xq = powmod(k, &xq, k.order(), &rest);
        let g = gcd(k, &rest, &sub(k, &xq, &x));
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(d, dg / d));
            rest = divrem(k, &rest, &g).0;
            xq = rem(k, &xq, &rest);
        }
    }
    out
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

/// Degree of the splitting field over `k` of a squarefree polynomial.
pub fn splitting_degree(k: &GaloisField, f: &[Fq]) -> usize {
    factor_degrees(k, f).into_iter().fold(1, lcm)
}

/// Distinct roots of `f` in `k`, sorted.
pub fn roots(k: &GaloisField, f: &[Fq]) -> Vec<Fq> {
    let f = monic(k, f);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = x_poly(k);
    let xq = powmod(k, &x, k.order(), &f);
    let g = gcd(k, &f, &sub(k, &xq, &x));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x726f_6f74);
    split_linear(k, &g, &mut rng, &mut out);
    out.sort();
    out
}

/// Splits a monic product of distinct linear factors.
fn split_linear(k: &GaloisField, g: &[Fq], rng: &mut ChaCha8Rng, out: &mut Vec<Fq>) {
    match degree(g) {
        None | Some(0) => return,
        Some(1) => {
            out.push(k.neg(g[0]));
            return;
        }
        Some(_) => {}
    }
    loop {
        let a = k.random(rng);
        let h = if k.characteristic() == 2 {
            // absolute trace of a*x
            let y = rem(k, &[Fq::ZERO, a], g);
            let mut t = y.clone();
            let mut acc = y;
            for _ in 1..k.degree() {
                t = rem(k, &mul(k, &t, &t), g);
                acc = add(k, &acc, &t);
            }
            acc
        } else {
            let s = powmod(k, &[a, k.one()], (k.order() - 1) / 2, g);
            sub(k, &s, &[k.one()])
        };
        let d = gcd(k, g, &h);
        let dd = degree(&d).unwrap_or(0);
        if dd > 0 && dd < degree(g).unwrap() {
            let (q, _) = divrem(k, g, &d);
            split_linear(k, &d, rng, out);
            split_linear(k, &monic(k, &q), rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(k: &GaloisField, c: &[i64]) -> Vec<Fq> {
        let mut v: Vec<Fq> = c.iter().map(|&x| k.from_int(x)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn division_identity() {
        let k = GaloisField::prime(7).unwrap();
        let a = poly(&k, &[1, 2, 3, 4, 5, 6]);
        let b = poly(&k, &[3, 0, 1]);
        let (q, r) = divrem(&k, &a, &b);
        assert_eq!(add(&k, &mul(&k, &q, &b), &r), a);
        assert!(degree(&r).unwrap_or(0) < 2);
    }

    #[test]
    fn small_irreducibles() {
        let f2 = GaloisField::prime(2).unwrap();
        assert_eq!(smallest_irreducible(&f2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(&f2, 3), vec![1, 1, 0, 1]);
        let f3 = GaloisField::prime(3).unwrap();
        assert_eq!(smallest_irreducible(&f3, 2), vec![1, 0, 1]);
        // x^2 + 1 is reducible mod 5 (2^2 = -1), x^2 + 2 is not
        let f5 = GaloisField::prime(5).unwrap();
        assert_eq!(smallest_irreducible(&f5, 2), vec![2, 0, 1]);
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_3 is (81 - 9) / 4 = 18
        let k = GaloisField::prime(3).unwrap();
        let mut count = 0;
        for idx in 0..81u32 {
            let c: Vec<i64> = (0..4).map(|j| ((idx / 3u32.pow(j)) % 3) as i64).chain([1]).collect();
            if is_irreducible(&k, &poly(&k, &c)) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }

    #[test]
    fn roots_of_split_polynomials() {
        for p in [2u32, 3, 5, 101] {
            let k = GaloisField::prime(p).unwrap();
            let rs: Vec<i64> = [0i64, 1, 2, 4].iter().copied().filter(|&r| r < p as i64).collect();
            let mut f = vec![k.one()];
            for &r in &rs {
                f = mul(&k, &f, &poly(&k, &[-r, 1]));
            }
            // an irreducible quadratic factor contributes no roots
            let q: Vec<Fq> =
                smallest_irreducible(&k, 2).iter().map(|&c| k.from_int(c as i64)).collect();
            let f = mul(&k, &f, &q);
            let mut expected: Vec<Fq> = rs.iter().map(|&r| k.from_int(r)).collect();
            expected.sort();
            assert_eq!(roots(&k, &f), expected);
        }
    }

    #[test]
    fn roots_in_extension_fields() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (101, 3)] {
            let k = GaloisField::new(p, m).unwrap();
            let mut f = vec![k.one()];
            let picks: Vec<Fq> = (1..5).map(|i| k.element(i * 7 + 3)).collect();
            for &r in &picks {
                f = mul(&k, &f, &[k.neg(r), k.one()]);
            }
            let mut expected = picks.clone();
            expected.sort();
            expected.dedup();
            assert_eq!(roots(&k, &f), expected);
        }
    }

    #[test]
    fn splitting_degrees() {
        let k = GaloisField::prime(5).unwrap();
        let q2: Vec<Fq> = smallest_irreducible(&k, 2).iter().map(|&c| k.from_int(c as i64)).collect();
        let q3: Vec<Fq> = smallest_irreducible(&k, 3).iter().map(|&c| k.from_int(c as i64)).collect();
        let lin = poly(&k, &[-1, 1]);
        let f = mul(&k, &mul(&k, &q2, &q3), &lin);
        assert_eq!(factor_degrees(&k, &f), vec![1, 2, 3]);
        assert_eq!(splitting_degree(&k, &f), 6);
        assert_eq!(splitting_degree(&k, &lin), 1);
    }

    #[test]
    fn squarefree_detection() {
        let k = GaloisField::prime(3).unwrap();
        let f = poly(&k, &[1, 2, 1]); // (x + 1)^2
        assert!(!is_squarefree(&k, &f));
        assert!(is_squarefree(&k, &poly(&k, &[-1, 0, 1])));
        assert!(is_squarefree(&k, &poly(&k, &[0, -1, 0, 1])));
        // x^3 + 1 = (x + 1)^3 in char 3
        assert!(!is_squarefree(&k, &poly(&k, &[1, 0, 0, 1])));
    }
}
