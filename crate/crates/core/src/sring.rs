//! S-rings over `Z_n` represented by their partition into basic sets.
//!
//! An [`SRing`] is always in canonical form: elements of a class ascend and
//! classes are ordered by their minimum, so class `0` is `{0}`. Canonical
//! form is the equality notion; every operation here returns it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::arith::{divisors, gcd, is_prime, units};
use crate::error::{Error, Result};
use crate::multiplier::MultiplierGroup;

#[derive(Clone)]
pub struct SRing {
    n: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// A section `U/L` given by the orders `u = |U|` and `l = |L|`, `l | u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Section {
    pub u: usize,
    pub l: usize,
}

impl Section {
    pub fn new(u: usize, l: usize) -> Self {
        Section { u, l }
    }

    pub fn order(&self) -> usize {
        self.u / self.l
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.u, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    /// `|rad(X)|` for every class `X`, by class index.
    pub per_class_radical: Vec<usize>,
    /// `|rad(A)|`.
    pub ring_radical: usize,
    /// All highest classes have the same radical.
    pub well_defined: bool,
}

fn canonicalize(mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort_unstable_by_key(|c| c[0]);
    classes
}

impl SRing {
    /// Checks the S-ring axioms and returns the canonical ring.
    pub fn validate(n: usize, classes: Vec<Vec<usize>>) -> Result<SRing> {
        if n == 0 {
            return Err(Error::InvalidArgument("order must be positive".into()));
        }
        let mut seen = vec![false; n];
        for class in &classes {
            if class.is_empty() {
                return Err(Error::NotAPartition {
                    n,
                    reason: "empty class".into(),
                });
            }
            for &x in class {
                if x >= n {
                    return Err(Error::NotAPartition {
                        n,
                        reason: format!("element {x} out of range"),
                    });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAPartition {
                        n,
                        reason: format!("element {x} occurs twice"),
                    });
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition {
                n,
                reason: format!("element {x} is missing"),
            });
        }
        let ring = SRing::from_classes_unchecked(n, classes);
        if ring.classes[0].len() != 1 {
            return Err(Error::ZeroClassNotSingleton {
                class: ring.classes[0].clone(),
            });
        }
        ring.check_inverse_closed()?;
        ring.check_structure_constants()?;
        Ok(ring)
    }

    /// Builds the canonical form of a partition that is known to be an
    /// S-ring.
    pub(crate) fn from_classes_unchecked(n: usize, classes: Vec<Vec<usize>>) -> SRing {
        let classes = canonicalize(classes);
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        SRing {
            n,
            classes,
            class_of,
        }
    }

    fn check_inverse_closed(&self) -> Result<()> {
        let n = self.n;
        for class in &self.classes {
            let target = self.class_of[(n - class[0]) % n];
            let ok = self.classes[target].len() == class.len()
                && class.iter().all(|&x| self.class_of[(n - x) % n] == target);
            if !ok {
                return Err(Error::NotInverseClosed {
                    class: class.clone(),
                });
            }
        }
        Ok(())
    }

    // For every pair of classes, the multiplicity of z in X + Y must be
    // constant along each class.
    fn check_structure_constants(&self) -> Result<()> {
        let n = self.n;
        let rank = self.rank();
        let mut counts = vec![0usize; n];
        for i in 1..rank {
            for j in i..rank {
                counts.iter_mut().for_each(|c| *c = 0);
                for &x in &self.classes[i] {
                    for &y in &self.classes[j] {
                        let z = if x + y >= n { x + y - n } else { x + y };
                        counts[z] += 1;
                    }
                }
                for class in &self.classes {
                    let z1 = class[0];
                    if let Some(&z2) = class.iter().find(|&&z| counts[z] != counts[z1]) {
                        return Err(Error::NotClosedUnderProduct {
                            x: self.classes[i].clone(),
                            y: self.classes[j].clone(),
                            z1,
                            z2,
                            c1: counts[z1],
                            c2: counts[z2],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The group ring `Z Z_n`: all classes are singletons.
    pub fn group_ring(n: usize) -> SRing {
        SRing::from_classes_unchecked(n, (0..n).map(|x| vec![x]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<Vec<usize>> {
        self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x % self.n]
    }

    pub fn class_index_table(&self) -> &[usize] {
        &self.class_of
    }

    /// The class index of `-X` for every class `X`.
    pub fn negation_map(&self) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.class_of[(self.n - c[0]) % self.n])
            .collect()
    }

    /// `true` iff the subgroup of order `d` is a union of classes.
    pub fn is_a_group(&self, d: usize) -> bool {
        if d == 0 || !self.n.is_multiple_of(d) {
            return false;
        }
        let step = self.n / d;
        (0..d).all(|k| {
            self.classes[self.class_of[k * step]]
                .iter()
                .all(|&y| y % step == 0)
        })
    }

    /// Orders of all A-groups, ascending.
    pub fn a_groups(&self) -> Vec<usize> {
        divisors(self.n as u64)
            .into_iter()
            .map(|d| d as usize)
            .filter(|&d| self.is_a_group(d))
            .collect()
    }

    fn require_a_group(&self, d: usize) -> Result<()> {
        if self.is_a_group(d) {
            Ok(())
        } else {
            Err(Error::NotAnAGroup { d, n: self.n })
        }
    }

    /// `A_H` for the A-group `H` of order `d`, relabeled onto `Z_d`.
    pub fn restrict(&self, d: usize) -> Result<SRing> {
        self.require_a_group(d)?;
        let step = self.n / d;
        let classes = self
            .classes
            .iter()
            .filter(|c| c[0] % step == 0)
            .map(|c| c.iter().map(|&x| x / step).collect())
            .collect();
        Ok(SRing::from_classes_unchecked(d, classes))
    }

    /// `A_{G/L}` for the A-group `L` of order `l`, as an S-ring over `Z_{n/l}`.
    pub fn quotient(&self, l: usize) -> Result<SRing> {
        self.require_a_group(l)?;
        let m = self.n / l;
        let mut images: Vec<Vec<usize>> = Vec::new();
        let mut owner = vec![usize::MAX; m];
        for c in &self.classes {
            let mut img: Vec<usize> = c.iter().map(|&x| x % m).collect();
            img.sort_unstable();
            img.dedup();
            let first = owner[img[0]];
            if first == usize::MAX {
                if let Some(&clash) = img.iter().find(|&&y| owner[y] != usize::MAX) {
                    return Err(Error::Internal(format!(
                        "quotient images overlap at {clash} in Z_{m}"
                    )));
                }
                for &y in &img {
                    owner[y] = images.len();
                }
                images.push(img);
            } else if images[first] != img {
                return Err(Error::Internal(format!(
                    "quotient images of classes are neither equal nor disjoint in Z_{m}"
                )));
            }
        }
        Ok(SRing::from_classes_unchecked(m, images))
    }

    /// `A_S` for the section `S = U/L`.
    pub fn restrict_section(&self, s: Section) -> Result<SRing> {
        if s.l == 0 || !s.u.is_multiple_of(s.l) {
            return Err(Error::NotADivisor {
                d: s.l as u64,
                n: s.u as u64,
            });
        }
        self.require_a_group(s.l)?;
        self.restrict(s.u)?.quotient(s.l)
    }

    /// All A-sections `U/L`, sorted by `(u, l)`.
    pub fn sections(&self) -> Vec<Section> {
        let groups = self.a_groups();
        let mut out = Vec::new();
        for &u in &groups {
            for &l in &groups {
                if u % l == 0 {
                    out.push(Section { u, l });
                }
            }
        }
        out
    }

    /// `|rad(X)|` where `rad(X) = {g : g + X = X}`.
    pub fn radical_of_class(&self, i: usize) -> usize {
        let class = &self.classes[i];
        let n = self.n;
        let mut member = vec![false; n];
        for &x in class {
            member[x] = true;
        }
        divisors(n as u64)
            .into_iter()
            .rev()
            .map(|d| d as usize)
            .find(|&d| {
                let shift = n / d;
                class.iter().all(|&x| member[(x + shift) % n])
            })
            .unwrap_or(1)
    }

    /// Indices of the classes generating `Z_n`.
    pub fn highest_classes(&self) -> Vec<usize> {
        let n = self.n as u64;
        (0..self.rank())
            .filter(|&i| self.classes[i].iter().fold(n, |g, &x| gcd(g, x as u64)) == 1)
            .collect()
    }

    pub fn radical(&self) -> RadicalReport {
        let per_class_radical: Vec<usize> =
            (0..self.rank()).map(|i| self.radical_of_class(i)).collect();
        let highest: Vec<usize> = self
            .highest_classes()
            .into_iter()
            .map(|i| per_class_radical[i])
            .collect();
        let well_defined = highest.windows(2).all(|w| w[0] == w[1]);
        // The intersection of subgroups of a cyclic group has order gcd.
        let ring_radical = highest.iter().fold(0u64, |g, &r| gcd(g, r as u64)).max(1) as usize;
        RadicalReport {
            per_class_radical,
            ring_radical,
            well_defined,
        }
    }

    /// No A-groups besides the trivial ones, and `n > 1`.
    pub fn is_primitive(&self) -> bool {
        self.n > 1 && self.a_groups().len() == 2
    }

    /// Every primitive A-section has prime order.
    pub fn is_quasidense(&self) -> bool {
        self.sections().into_iter().all(|s| {
            let section_ring = self.restrict_section(s).expect("A-section");
            !section_ring.is_primitive() || is_prime(s.order() as u64)
        })
    }

    /// Every subgroup of `Z_n` is an A-group.
    pub fn is_dense(&self) -> bool {
        self.a_groups().len() == divisors(self.n as u64).len()
    }

    /// Sections `U/L` for which the ring is a `U/L`-wreath product: every
    /// class outside `U` is a union of `L`-cosets. Only proper ones are
    /// returned (`l > 1` and `u < n`), sorted by `(u, l)`.
    pub fn wreath_decompositions(&self) -> Vec<Section> {
        let radicals: Vec<usize> = (0..self.rank()).map(|i| self.radical_of_class(i)).collect();
        self.sections()
            .into_iter()
            .filter(|s| s.l > 1 && s.u < self.n)
            .filter(|s| {
                let step = self.n / s.u;
                self.classes
                    .iter()
                    .zip(&radicals)
                    .filter(|(c, _)| c[0] % step != 0)
                    .all(|(_, &r)| r % s.l == 0)
            })
            .collect()
    }

    /// The multiplier group `K*` of units fixing every class, provided the
    /// ring equals the orbit partition of `K*`.
    pub fn is_cyclotomic(&self) -> Option<MultiplierGroup> {
        let n = self.n;
        let fixing: Vec<usize> = units(n as u64)
            .into_iter()
            .map(|m| m as usize)
            .filter(|&m| {
                self.classes.iter().all(|c| {
                    c.iter()
                        .all(|&x| self.class_of[x * m % n] == self.class_of[x])
                })
            })
            .collect();
        let k = MultiplierGroup::new(n, fixing).expect("units");
        (k.orbits() == self.classes).then_some(k)
    }

    /// Whether `A = A_H (x) A_{H'}` for the subgroup `H` of order `d` and its
    /// complement `H'` of order `n/d`.
    ///
    /// `d` must be an A-group coprime to its index. A complement that is not
    /// an A-group means the ring does not split, so the answer is `false`.
    pub fn tensor_split(&self, d: usize) -> Result<bool> {
        let n = self.n;
        let e = if d > 0 && n.is_multiple_of(d) {
            n / d
        } else {
            0
        };
        if e == 0 || gcd(d as u64, e as u64) != 1 || !self.is_a_group(d) {
            return Err(Error::NotComplementary { d, e, n });
        }
        if !self.is_a_group(e) {
            return Ok(false);
        }
        // H = multiples of e (order d), H' = multiples of d (order e).
        let in_h: Vec<&Vec<usize>> = self.classes.iter().filter(|c| c[0] % e == 0).collect();
        let in_h2: Vec<&Vec<usize>> = self.classes.iter().filter(|c| c[0] % d == 0).collect();
        if in_h.len() * in_h2.len() != self.rank() {
            return Ok(false);
        }
        for x in in_h.iter() {
            for y in in_h2.iter() {
                let target = self.class_of[(x[0] + y[0]) % n];
                if self.classes[target].len() != x.len() * y.len() {
                    return Ok(false);
                }
                for &a in x.iter() {
                    for &b in y.iter() {
                        if self.class_of[(a + b) % n] != target {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// The image `m A` under multiplication by a unit `m`.
    pub fn multiply(&self, m: usize) -> SRing {
        let n = self.n;
        debug_assert!(n == 1 || gcd(m as u64, n as u64) == 1);
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().map(|&x| x * m % n).collect())
            .collect();
        SRing::from_classes_unchecked(n, classes)
    }

    /// Class sizes, by class index.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class sizes in ascending order, with multiplicity.
    pub fn size_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.len()).or_insert(0) += 1;
        }
        out
    }
}

/// Group classes by a key, keeping first-occurrence order.
pub(crate) fn group_by_key<K: Hash + Eq + Clone, T: Clone>(
    items: &[T],
    key: impl Fn(&T) -> K,
) -> Vec<(K, Vec<T>)> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut out: Vec<(K, Vec<T>)> = Vec::new();
    for it in items {
        let k = key(it);
        match index.get(&k) {
            Some(&i) => out[i].1.push(it.clone()),
            None => {
                index.insert(k.clone(), out.len());
                out.push((k, vec![it.clone()]));
            }
        }
    }
    out
}

impl PartialEq for SRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.classes == other.classes
    }
}

impl Eq for SRing {}

impl Hash for SRing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.classes.hash(state);
    }
}

impl Ord for SRing {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.rank(), &self.classes).cmp(&(other.n, other.rank(), &other.classes))
    }
}

impl PartialOrd for SRing {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SRing(Z_{}, {:?})", self.n, self.classes)
    }
}
