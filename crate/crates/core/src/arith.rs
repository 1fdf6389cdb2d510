//! Arithmetic on `Z_n`: factorization, the divisor lattice, the `Ω`/`Ω*`
//! counting functions and the classification of cyclic Schur orders.
//!
//! The classification is computed twice, by two routes that share nothing
//! beyond [`factorize`]: [`classify_families`] matches the five family
//! shapes literally, [`find_nonschur_split`] searches coprime splittings.
//! [`classify`] insists that exactly one of them answers.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Prime factorization `n = p_1^{k_1} ... p_s^{k_s}` with strictly
/// increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Number of distinct primes.
    pub fn distinct(&self) -> usize {
        self.factors.len()
    }

    pub fn omega(&self) -> u32 {
        self.factors.iter().map(|&(_, k)| k).sum()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The `p`-part of `n`.
    pub fn part(&self, p: u64) -> u64 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(1, |&(q, k)| q.pow(k))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the base set is exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard–Brent rho; `n` must be odd and composite.
fn rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Exact factorization. Trial division covers every prime below `2^20`;
/// a cofactor left over after that is split with Miller–Rabin and rho.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize: n must be positive");
    let mut rest = n;
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= rest && p < TRIAL_LIMIT {
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest < p * p {
            primes.push(rest);
        } else {
            split_into(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, k)) if *last == q => *k += 1,
            _ => factors.push((q, 1)),
        }
    }
    Factorization { n, factors }
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let f = factorize(n);
    let mut out = vec![1u64];
    for &(p, k) in &f.factors {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Total number of prime factors, counted with multiplicity.
pub fn omega(n: u64) -> u32 {
    factorize(n).omega()
}

/// `Ω(n)` for odd `n`, `Ω(n/2)` for even `n`.
pub fn omega_star(n: u64) -> u32 {
    if n.is_multiple_of(2) {
        omega(n / 2)
    } else {
        omega(n)
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Units of `Z_n` in increasing order. `Z_1` has the single unit `0`.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&x| gcd(x, n) == 1).collect()
}

/// The five shapes of cyclic Schur orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `p^k`
    Pk,
    /// `p q^k`
    Pqk,
    /// `2 p q^k`
    TwoPqk,
    /// `p q r`
    Pqr,
    /// `2 p q r`
    TwoPqr,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Pk,
        Family::Pqk,
        Family::TwoPqk,
        Family::Pqr,
        Family::TwoPqr,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::Pk => "p^k",
            Family::Pqk => "pq^k",
            Family::TwoPqk => "2pq^k",
            Family::Pqr => "pqr",
            Family::TwoPqr => "2pqr",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

// `p q^k` with p != q and k >= 0; covers the primes (k = 0).
fn is_pqk(f: &Factorization) -> bool {
    match f.factors.as_slice() {
        [(_, 1)] => true,
        [(_, a), (_, b)] => *a == 1 || *b == 1,
        _ => false,
    }
}

fn is_pqr(f: &Factorization) -> bool {
    f.factors.len() == 3 && f.factors.iter().all(|&(_, k)| k == 1)
}

/// Which of the five family shapes `n` matches. The primes in a shape are
/// distinct but otherwise unrestricted, so `2` may play any of `p, q, r`.
pub fn classify_families(n: u64) -> BTreeSet<Family> {
    let f = factorize(n);
    let half = n.is_multiple_of(2).then(|| factorize(n / 2));
    let mut out = BTreeSet::new();
    if f.distinct() <= 1 {
        out.insert(Family::Pk);
    }
    if is_pqk(&f) {
        out.insert(Family::Pqk);
    }
    if is_pqr(&f) {
        out.insert(Family::Pqr);
    }
    if let Some(h) = &half {
        if is_pqk(h) {
            out.insert(Family::TwoPqk);
        }
        if is_pqr(h) {
            out.insert(Family::TwoPqr);
        }
    }
    out
}

/// The coprime splitting `n = n1 * n2` with `Ω*(n1), Ω*(n2) >= 2` and
/// `n1 < n2`, taking the smallest admissible `n1`.
pub fn find_nonschur_split(n: u64) -> Option<(u64, u64)> {
    let f = factorize(n);
    let parts: Vec<u64> = f.factors.iter().map(|&(p, k)| p.pow(k)).collect();
    let mut best: Option<(u64, u64)> = None;
    for mask in 0u32..(1 << parts.len()) {
        let n1: u64 = parts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &q)| q)
            .product();
        let n2 = n / n1;
        if n1 >= n2 || omega_star(n1) < 2 || omega_star(n2) < 2 {
            continue;
        }
        if best.is_none_or(|(b, _)| n1 < b) {
            best = Some((n1, n2));
        }
    }
    best
}

/// Verdict for a cyclic group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub n: u64,
    pub families: BTreeSet<Family>,
    pub nonschur_split: Option<(u64, u64)>,
}

impl Classification {
    pub fn is_schur(&self) -> bool {
        self.nonschur_split.is_none()
    }
}

/// Combines both classification routes. Disagreement between them is a bug
/// and is reported as [`Error::Internal`].
pub fn classify(n: u64) -> Result<Classification> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let families = classify_families(n);
    let nonschur_split = find_nonschur_split(n);
    if families.is_empty() == nonschur_split.is_none() {
        return Err(Error::Internal(format!(
            "classification routes disagree at n = {n}: families {families:?}, split {nonschur_split:?}"
        )));
    }
    Ok(Classification {
        n,
        families,
        nonschur_split,
    })
}

/// Elements of the subgroup of order `d` in `Z_n`, i.e. the multiples of `n/d`.
pub fn subgroup_elements(n: u64, d: u64) -> Result<Vec<u64>> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, n });
    }
    let step = n / d;
    Ok((0..d).map(|k| k * step).collect())
}

/// The canonical projection `Z_n -> Z_m`.
pub fn project(n: u64, m: u64, x: u64) -> Result<u64> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotADivisor { d: m, n });
    }
    Ok(x % m)
}

/// `x^{-1} mod n` for a unit `x`.
pub fn inverse_mod(x: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (x % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).factors.is_empty());
        assert_eq!(factorize(72).factors, vec![(2, 3), (3, 2)]);
        assert_eq!(factorize(120).factors, vec![(2, 3), (3, 1), (5, 1)]);
    }

    #[test]
    fn factorize_large() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 2_147_483_647u64;
        assert_eq!(factorize(p * q).factors, vec![(q, 1), (p, 1)]);
        let f = factorize((1u64 << 63) - 1);
        let prod: u64 = f.factors.iter().map(|&(p, k)| p.pow(k)).product();
        assert_eq!(prod, (1u64 << 63) - 1);
        assert!(f.factors.iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1), 0);
        assert_eq!(omega(12), 3);
        assert_eq!(omega(30), 3);
        assert_eq!(omega_star(8), 2);
        assert_eq!(omega_star(9), 2);
        assert_eq!(omega_star(6), 1);
    }

    #[test]
    fn family_examples() {
        assert_eq!(classify_families(60), BTreeSet::from([Family::TwoPqr]));
        assert!(classify_families(72).is_empty());
        assert_eq!(
            classify_families(7),
            BTreeSet::from([Family::Pk, Family::Pqk])
        );
        assert!(classify_families(1).contains(&Family::Pk));
        assert!(classify_families(24).contains(&Family::TwoPqk));
    }

    #[test]
    fn split_examples() {
        assert_eq!(find_nonschur_split(72), Some((8, 9)));
        assert_eq!(find_nonschur_split(60), None);
        assert_eq!(find_nonschur_split(144), Some((9, 16)));
        // 210 = 2*3*5*7 is 2pqr; no coprime split has both Ω* >= 2
        assert_eq!(find_nonschur_split(210), None);
    }

    #[test]
    fn classify_examples() {
        let c = classify(71).unwrap();
        assert!(c.is_schur());
        assert_eq!(c.families, BTreeSet::from([Family::Pk, Family::Pqk]));
        let c = classify(72).unwrap();
        assert_eq!(c.nonschur_split, Some((8, 9)));
        assert!(c.families.is_empty());
        let c = classify(210).unwrap();
        assert_eq!(c.families, BTreeSet::from([Family::TwoPqr]));
        assert!(classify(0).is_err());
    }

    #[test]
    fn subgroup_and_projection() {
        assert_eq!(subgroup_elements(12, 3).unwrap(), vec![0, 4, 8]);
        assert_eq!(
            subgroup_elements(12, 12).unwrap(),
            (0..12).collect::<Vec<_>>()
        );
        assert_eq!(
            subgroup_elements(72, 8).unwrap(),
            vec![0, 9, 18, 27, 36, 45, 54, 63]
        );
        assert!(subgroup_elements(12, 5).is_err());
        assert_eq!(project(12, 4, 7).unwrap(), 3);
        assert_eq!(project(72, 9, 70).unwrap(), 7);
        assert_eq!(project(6, 6, 5).unwrap(), 5);
        assert!(project(12, 5, 1).is_err());
    }

    #[test]
    fn small_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(totient(72), 24);
        assert_eq!(units(8), vec![1, 3, 5, 7]);
        assert_eq!(inverse_mod(5, 12), Some(5));
        assert_eq!(inverse_mod(4, 12), None);
    }
}
