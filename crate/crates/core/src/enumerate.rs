//! Catalogs of S-rings over `Z_n` for small `n`.
//!
//! [`enumerate`] closes the cyclotomic and rank 2 rings under tensor
//! products and generalized wreath products, bottom-up over the divisor
//! lattice. [`brute_force_enumerate`] checks every partition of `Z_n` and is
//! kept as an independent oracle for tiny orders.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::arith::{classify, divisors, gcd, units, Family};
use crate::construct::{cyclotomic, gen_wreath, rank2, tensor};
use crate::error::{Error, Result};
use crate::multiplier::unit_subgroups;
use crate::schurity::{AutSearch, SchurityVerdict};
use crate::sring::{group_by_key, SRing};

pub const DEFAULT_CAP: usize = 72;
pub const BRUTE_FORCE_CAP: usize = 13;

#[derive(Debug, Clone)]
pub struct Catalog {
    pub n: usize,
    /// Canonical, deduplicated, sorted by `(rank, classes)`.
    pub rings: Vec<SRing>,
    pub count_exact: usize,
    /// Orbits under `A -> mA`, `m` a unit.
    pub count_up_to_cayley: usize,
}

impl Catalog {
    fn new(n: usize, rings: BTreeSet<SRing>) -> Catalog {
        let rings: Vec<SRing> = rings.into_iter().collect();
        let count_up_to_cayley = cayley_classes(n, &rings);
        Catalog {
            n,
            count_exact: rings.len(),
            count_up_to_cayley,
            rings,
        }
    }

    pub fn contains(&self, a: &SRing) -> bool {
        self.rings.binary_search(a).is_ok()
    }
}

fn cayley_classes(n: usize, rings: &[SRing]) -> usize {
    let mult: Vec<usize> = units(n as u64).into_iter().map(|m| m as usize).collect();
    let mut seen = vec![false; rings.len()];
    let mut orbits = 0;
    for i in 0..rings.len() {
        if seen[i] {
            continue;
        }
        orbits += 1;
        for &m in &mult {
            let j = rings
                .binary_search(&rings[i].multiply(m))
                .expect("catalog is closed under multipliers");
            seen[j] = true;
        }
    }
    orbits
}

/// All S-rings over `Z_n`, `n <= 72`.
pub fn enumerate(n: usize) -> Result<Catalog> {
    enumerate_with_cap(n, DEFAULT_CAP)
}

pub fn enumerate_with_cap(n: usize, cap: usize) -> Result<Catalog> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut levels: HashMap<usize, Vec<SRing>> = HashMap::new();
    for d in divisors(n as u64).into_iter().map(|d| d as usize) {
        let rings = level(d, &levels)?;
        levels.insert(d, rings.into_iter().collect());
    }
    let top = levels.remove(&n).unwrap();
    Ok(Catalog::new(n, top.into_iter().collect()))
}

fn level(d: usize, below: &HashMap<usize, Vec<SRing>>) -> Result<BTreeSet<SRing>> {
    let mut out = BTreeSet::new();
    for k in unit_subgroups(d) {
        out.insert(cyclotomic(&k));
    }
    if d >= 2 {
        out.insert(rank2(d)?);
    }
    let divs: Vec<usize> = divisors(d as u64).into_iter().map(|x| x as usize).collect();

    for &d1 in &divs {
        let d2 = d / d1;
        if d1 > 1 && d1 < d2 && gcd(d1 as u64, d2 as u64) == 1 {
            let pairs: Vec<(&SRing, &SRing)> = below[&d1]
                .iter()
                .flat_map(|a| below[&d2].iter().map(move |b| (a, b)))
                .collect();
            let made: Result<Vec<SRing>> = pairs.par_iter().map(|(a, b)| tensor(a, b)).collect();
            out.extend(made?);
        }
    }

    // A1 over Z_{n1} with A-group of order l, A2 over Z_{d/l} with A-group of
    // order m = n1/l; glued along the section of order m
    let mut jobs: Vec<(&SRing, &SRing, usize)> = Vec::new();
    for &n1 in &divs {
        if n1 == 1 || n1 == d {
            continue;
        }
        for &l in divs.iter().filter(|&&l| l > 1 && n1 % l == 0) {
            let m = n1 / l;
            let n2 = d / l;
            let lefts: Vec<&SRing> = below[&n1].iter().filter(|a| a.is_a_group(l)).collect();
            let grouped = group_by_key(&lefts, |a| a.quotient(l).expect("A-group"));
            let mut rights: HashMap<SRing, Vec<&SRing>> = HashMap::new();
            for b in below[&n2].iter().filter(|b| b.is_a_group(m)) {
                rights
                    .entry(b.restrict(m).expect("A-group"))
                    .or_default()
                    .push(b);
            }
            for (key, ls) in grouped {
                if let Some(rs) = rights.get(&key) {
                    for a in &ls {
                        for b in rs {
                            jobs.push((a, b, m));
                        }
                    }
                }
            }
        }
    }
    let made: Result<Vec<SRing>> = jobs
        .par_iter()
        .map(|(a, b, m)| gen_wreath(a, b, *m))
        .collect();
    out.extend(made?);
    Ok(out)
}

/// Every partition of `Z_n` passing the S-ring axioms, `n <= 13`.
pub fn brute_force_enumerate(n: usize) -> Result<Catalog> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut found = BTreeSet::new();
    let mut state = Brute {
        n,
        class: vec![usize::MAX; n],
        neg: Vec::new(),
        count: 0,
    };
    state.class[0] = 0;
    state.go(1, &mut found);
    Ok(Catalog::new(n, found))
}

// Restricted-growth assignment of 1..n-1 to classes 1.., keeping the class
// negation map a consistent involution.
struct Brute {
    n: usize,
    class: Vec<usize>,
    /// `neg[c]` is the class of `-x` for `x` in class `c + 1`, once known.
    neg: Vec<Option<usize>>,
    count: usize,
}

impl Brute {
    fn go(&mut self, x: usize, found: &mut BTreeSet<SRing>) {
        let n = self.n;
        if x == n {
            let mut classes = vec![vec![0]];
            classes.resize(self.count + 1, Vec::new());
            for y in 1..n {
                classes[self.class[y]].push(y);
            }
            if let Ok(ring) = SRing::validate(n, classes) {
                found.insert(ring);
            }
            return;
        }
        let y = n - x;
        for c in 1..=self.count + 1 {
            let fresh = c == self.count + 1;
            if fresh {
                self.count += 1;
                self.neg.push(None);
            }
            self.class[x] = c;
            let saved = self.neg.clone();
            if self.pair(x, y) {
                self.go(x + 1, found);
            }
            self.neg = saved;
            if fresh {
                self.count -= 1;
                self.neg.pop();
            }
        }
        self.class[x] = usize::MAX;
    }

    fn pair(&mut self, x: usize, y: usize) -> bool {
        if y > x {
            return true;
        }
        let (c, d) = (self.class[x], self.class[y]);
        let ok = |slot: Option<usize>, want: usize| slot.is_none_or(|s| s == want);
        if !ok(self.neg[c - 1], d) || !ok(self.neg[d - 1], c) {
            return false;
        }
        self.neg[c - 1] = Some(d);
        self.neg[d - 1] = Some(c);
        true
    }
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub n: usize,
    pub families: Vec<Family>,
    pub total: usize,
    pub schurian: usize,
    /// Lowest catalog entry that is not schurian, with its verdict.
    pub first_non_schurian: Option<(SRing, SchurityVerdict)>,
    /// Tally of rings by rank.
    pub by_rank: BTreeMap<usize, usize>,
}

impl CensusReport {
    pub fn all_schurian(&self) -> bool {
        self.schurian == self.total
    }

    /// Whether the census agrees with the arithmetic classification: a
    /// family order has only schurian rings, other orders have a
    /// non-schurian one.
    pub fn consistent_with_classification(&self) -> bool {
        self.families.is_empty() != self.all_schurian()
    }
}

pub fn census(n: usize) -> Result<CensusReport> {
    census_with(n, DEFAULT_CAP, AutSearch::from_env())
}

/// Decides schurity of every ring in `enumerate(n)`.
pub fn census_with(n: usize, cap: usize, search: AutSearch) -> Result<CensusReport> {
    let catalog = enumerate_with_cap(n, cap)?;
    let verdicts: Result<Vec<SchurityVerdict>> = catalog
        .rings
        .par_iter()
        .map(|a| search.is_schurian(a))
        .collect();
    let verdicts = verdicts?;
    let families = classify(n as u64)?.families.into_iter().collect();
    let mut by_rank = BTreeMap::new();
    for a in &catalog.rings {
        *by_rank.entry(a.rank()).or_insert(0) += 1;
    }
    let schurian = verdicts.iter().filter(|v| v.schurian).count();
    let first_non_schurian = catalog
        .rings
        .iter()
        .zip(verdicts)
        .find(|(_, v)| !v.schurian)
        .map(|(a, v)| (a.clone(), v));
    Ok(CensusReport {
        n,
        families,
        total: catalog.count_exact,
        schurian,
        first_non_schurian,
        by_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(1).unwrap().count_exact, 1);
        assert_eq!(enumerate(4).unwrap().count_exact, 3);
        assert_eq!(enumerate(5).unwrap().count_exact, 3);
        assert_eq!(brute_force_enumerate(2).unwrap().count_exact, 1);
        assert_eq!(brute_force_enumerate(3).unwrap().count_exact, 2);
        assert_eq!(brute_force_enumerate(4).unwrap().count_exact, 3);
    }

    #[test]
    fn closure_matches_brute_force_at_the_cap() {
        let n = BRUTE_FORCE_CAP;
        assert_eq!(
            enumerate(n).unwrap().rings,
            brute_force_enumerate(n).unwrap().rings
        );
    }

    #[test]
    fn caps() {
        assert!(matches!(
            enumerate(73),
            Err(Error::CapExceeded { n: 73, cap: 72 })
        ));
        assert!(matches!(
            brute_force_enumerate(14),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn catalog_is_sorted_and_closed_under_multipliers() {
        let c = enumerate(12).unwrap();
        assert!(c.rings.windows(2).all(|w| w[0] < w[1]));
        for a in &c.rings {
            for m in units(12) {
                assert!(c.contains(&a.multiply(m as usize)));
            }
        }
        assert!(c.count_up_to_cayley <= c.count_exact);
    }

    #[test]
    fn prime_order_rings_are_cyclotomic() {
        let c = enumerate(7).unwrap();
        assert_eq!(c.count_exact, 4);
        assert!(c.rings.iter().all(|a| a.is_cyclotomic().is_some()));
    }
}
