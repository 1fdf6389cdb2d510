//! Permutation groups given by generators, backed by a stabilizer chain
//! built with the deterministic Schreier–Sims algorithm.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Group order kept as a prime factorization, so that `Sym(72)` and friends
/// do not overflow.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupOrder(BTreeMap<u64, u32>);

impl GroupOrder {
    pub fn one() -> Self {
        GroupOrder::default()
    }

    pub fn from_u64(x: u64) -> Self {
        let mut o = GroupOrder::one();
        o.mul_u64(x);
        o
    }

    pub fn factorial(n: u64) -> Self {
        let mut o = GroupOrder::one();
        for k in 2..=n {
            o.mul_u64(k);
        }
        o
    }

    pub fn mul_u64(&mut self, x: u64) {
        assert!(x > 0, "group order factor must be positive");
        for (p, k) in factorize(x).factors {
            *self.0.entry(p).or_insert(0) += k;
        }
    }

    pub fn factors(&self) -> Vec<(u64, u32)> {
        self.0.iter().map(|(&p, &k)| (p, k)).collect()
    }

    /// The exact value, if it fits.
    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (&p, &k) in &self.0 {
            for _ in 0..k {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    /// `true` iff `x` divides the order.
    pub fn divisible_by(&self, x: u64) -> bool {
        factorize(x)
            .factors
            .iter()
            .all(|&(p, k)| self.0.get(&p).copied().unwrap_or(0) >= k)
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_u128() {
            return write!(f, "{v}");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, k)| {
                if *k == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{k}")
                }
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[g]` maps the base point to `g`.
    transversal: Vec<Option<Perm>>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            checked: HashSet::new(),
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        // extend the Schreier tree; existing representatives never change
        let mut queue: VecDeque<usize> = self.orbit.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for gi in 0..self.gens.len() {
                let y = self.gens[gi].apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(&self.gens[gi]);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
}

/// A base and strong generating set with Schreier trees.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Schreier–Sims, with `base_prefix` forced to the front of the base.
    pub fn build(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: base_prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        };
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.fixes(l.base)) {
                let b = g.first_moved().unwrap();
                chain.levels.push(Level::new(degree, b));
            }
        }
        for g in gens {
            let depth = chain.fixed_prefix(&g);
            chain.insert_strong(g, 0, depth);
        }
        chain.complete();
        chain
    }

    /// Trusts that `strong` is a strong generating set relative to `base`.
    pub(crate) fn from_bsgs(degree: usize, base: &[usize], strong: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: base.iter().map(|&b| Level::new(degree, b)).collect(),
        };
        for g in strong.iter().filter(|g| !g.is_identity()) {
            let depth = chain.fixed_prefix(g);
            assert!(
                depth < chain.levels.len(),
                "strong generator fixes the whole base"
            );
            chain.insert_strong(g.clone(), 0, depth);
        }
        chain
    }

    fn fixed_prefix(&self, g: &Perm) -> usize {
        self.levels.iter().take_while(|l| g.fixes(l.base)).count()
    }

    // add g to levels from..=to
    fn insert_strong(&mut self, g: Perm, from: usize, to: usize) {
        for l in from..=to {
            self.levels[l].add_gen(g.clone());
        }
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut restart_at = None;
            'scan: for oi in 0..self.levels[iu].orbit.len() {
                let beta = self.levels[iu].orbit[oi];
                for si in 0..self.levels[iu].gens.len() {
                    if self.levels[iu].checked.contains(&(beta, si)) {
                        continue;
                    }
                    let level = &self.levels[iu];
                    let s = &level.gens[si];
                    let image = s.apply(beta);
                    let h = level.transversal[beta]
                        .as_ref()
                        .unwrap()
                        .then(s)
                        .then(&level.transversal[image].as_ref().unwrap().inverse());
                    let (residue, j) = self.strip(h, iu + 1);
                    if j < self.levels.len() || !residue.is_identity() {
                        if j == self.levels.len() {
                            let b = residue.first_moved().unwrap();
                            self.levels.push(Level::new(self.degree, b));
                        }
                        self.insert_strong(residue, iu + 1, j);
                        restart_at = Some(j);
                        break 'scan;
                    }
                    self.levels[iu].checked.insert((beta, si));
                }
            }
            match restart_at {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it went all the way through).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let b = g.apply(level.base);
            match &level.transversal[b] {
                None => return (g, l),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        let k = self.levels.len();
        (g, k)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> GroupOrder {
        let mut o = GroupOrder::one();
        for l in &self.levels {
            o.mul_u64(l.orbit.len() as u64);
        }
        o
    }

    /// Orbit lengths of the basic stabilizers, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the pointwise stabilizer of the first `depth`
    /// base points.
    pub fn stabilizer_gens(&self, depth: usize) -> &[Perm] {
        self.levels.get(depth).map_or(&[], |l| &l.gens[..])
    }

    /// Representative mapping the base point of `level` to `target`, if any.
    pub fn transversal(&self, level: usize, target: usize) -> Option<&Perm> {
        self.levels[level].transversal[target].as_ref()
    }
}

/// A permutation group with a lazily built stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::NotAPermutation { degree });
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Builds a group whose base and strong generating set are already known.
    pub(crate) fn from_bsgs(degree: usize, base: &[usize], strong: Vec<Perm>) -> PermGroup {
        let chain = StabChain::from_bsgs(degree, base, &strong);
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        PermGroup {
            degree,
            generators: strong,
            chain: lock,
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![]).unwrap()
    }

    /// The regular cyclic group generated by `x -> x + 1 mod n`.
    pub fn translations(n: usize) -> PermGroup {
        let gens = if n > 1 {
            vec![Perm::translation(n, 1)]
        } else {
            vec![]
        };
        PermGroup::new(n, gens).unwrap()
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n > 1 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n > 2 {
            gens.push(Perm::translation(n, 1));
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> GroupOrder {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    /// Orbits of the whole group, each sorted, listed by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Generators of the stabilizer of `x`.
    pub fn stabilizer_gens(&self, x: usize) -> Vec<Perm> {
        let chain = self.chain();
        if chain.levels.first().map(|l| l.base) == Some(x) {
            return chain.stabilizer_gens(1).to_vec();
        }
        if self.generators.iter().all(|g| g.fixes(x)) {
            return self.generators.clone();
        }
        StabChain::build(self.degree, &self.generators, &[x])
            .stabilizer_gens(1)
            .to_vec()
    }

    /// Orbits of the stabilizer of `x`.
    pub fn point_stabilizer_orbits(&self, x: usize) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.stabilizer_gens(x))
    }

    /// `true` iff `sub` is normal in `self`; its generators must lie in
    /// `self`.
    pub fn is_normal_subgroup(&self, sub: &PermGroup) -> Result<bool> {
        if sub.degree != self.degree || !sub.generators.iter().all(|d| self.contains(d)) {
            return Err(Error::NotASubgroup);
        }
        Ok(self.generators.iter().all(|g| {
            let gi = g.inverse();
            sub.generators
                .iter()
                .all(|d| sub.contains(&gi.then(d).then(g)))
        }))
    }

    /// All elements, by closure. Only sensible for small groups.
    pub fn elements(&self) -> HashSet<Perm> {
        let id = Perm::identity(self.degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }
}

/// Orbits of the group generated by `gens`, each sorted, listed by minimum.
pub fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}
