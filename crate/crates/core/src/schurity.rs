//! Schurity of S-rings.
//!
//! An S-ring `A` over `Z_n` is the transitivity module of some group
//! between the translations and `Sym(Z_n)` iff it is the transitivity
//! module of the largest such group, `aut(A)`: the automorphism group of
//! the Cayley color graph `(x, y) -> class of y - x`. Every `aut(A)_0`-orbit
//! lies inside a class, so `A` is schurian iff the number of orbits equals
//! the rank.
//!
//! `aut(A)` is found by a backtracking search over ordered partitions with
//! individualization and color refinement. The search is organized along a
//! fixed base `0, b_1, .., b_k` taken from the leftmost branch: for each
//! level, deepest first, it looks for automorphisms fixing `b_1..b_{i-1}`
//! that move `b_i` outside the orbit found so far. The generators collected
//! this way form a strong generating set, so the group order and
//! stabilizer orbits come for free.

use std::collections::VecDeque;
use std::env;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::permgroup::{orbits_of, GroupOrder, PermGroup};
use crate::sring::{SRing, Section};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "SCHURRING_BUDGET";

/// The color of the pair `(x, y)`: the class of `y - x`.
pub fn color(a: &SRing, x: usize, y: usize) -> usize {
    let n = a.n();
    a.class_of((y + n - x % n) % n)
}

#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub group: PermGroup,
    /// Base points after `0`.
    pub base: Vec<usize>,
    /// Generators of the stabilizer of `0`.
    pub stabilizer_gens: Vec<Perm>,
    pub order: GroupOrder,
    /// Search nodes spent.
    pub nodes: u64,
}

impl AutomorphismGroup {
    pub fn stabilizer_orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.group.degree(), &self.stabilizer_gens)
    }
}

/// Configuration of the automorphism search.
#[derive(Debug, Clone, Copy)]
pub struct AutSearch {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
}

impl Default for AutSearch {
    fn default() -> Self {
        AutSearch {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl AutSearch {
    pub fn with_budget(budget: u64) -> Self {
        AutSearch { budget }
    }

    /// Default budget, overridden by `SCHURRING_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let budget = env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        AutSearch { budget }
    }

    pub fn automorphism_group(&self, a: &SRing) -> Result<AutomorphismGroup> {
        Search::new(a, self.budget).run()
    }

    pub fn is_schurian(&self, a: &SRing) -> Result<SchurityVerdict> {
        let aut = self.automorphism_group(a)?;
        Ok(SchurityVerdict::from_aut(a, &aut))
    }

    pub fn is_normal_sring(&self, a: &SRing) -> Result<bool> {
        let aut = self.automorphism_group(a)?;
        aut.group
            .is_normal_subgroup(&PermGroup::translations(a.n()))
    }

    /// Whether every proper section ring `A_S`, `S != G/1`, is schurian.
    /// `A` itself must be non-schurian.
    pub fn minimal_nonschurian_check(&self, a: &SRing) -> Result<bool> {
        if self.is_schurian(a)?.schurian {
            return Err(Error::NotNonSchurian);
        }
        let full = Section::new(a.n(), 1);
        let mut sections: Vec<Section> = a
            .sections()
            .into_iter()
            .filter(|&s| s != full && s.order() > 1)
            .collect();
        // big sections first: they are the likely offenders
        sections.sort_by_key(|s| std::cmp::Reverse(s.order()));
        for s in sections {
            if !self.is_schurian(&a.restrict_section(s)?)?.schurian {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `aut(A)` with the default budget.
pub fn automorphism_group(a: &SRing) -> Result<PermGroup> {
    Ok(AutSearch::default().automorphism_group(a)?.group)
}

/// Schurity with the default budget.
pub fn is_schurian(a: &SRing) -> Result<SchurityVerdict> {
    AutSearch::default().is_schurian(a)
}

/// Whether the translations form a normal subgroup of `aut(A)`.
pub fn is_normal_sring(a: &SRing) -> Result<bool> {
    AutSearch::default().is_normal_sring(a)
}

pub fn minimal_nonschurian_check(a: &SRing) -> Result<bool> {
    AutSearch::default().minimal_nonschurian_check(a)
}

/// A stabilizer orbit strictly smaller than the class containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub orbit: Vec<usize>,
    pub class_index: usize,
    pub class: Vec<usize>,
    /// All stabilizer orbits the class breaks into.
    pub class_orbits: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct SchurityVerdict {
    pub schurian: bool,
    pub aut_order: GroupOrder,
    pub stabilizer_orbits: Vec<Vec<usize>>,
    pub witness_mismatch: Option<Mismatch>,
    pub nodes: u64,
}

impl SchurityVerdict {
    fn from_aut(a: &SRing, aut: &AutomorphismGroup) -> SchurityVerdict {
        let orbits = aut.stabilizer_orbits();
        for orbit in &orbits {
            let c = a.class_of(orbit[0]);
            assert!(
                orbit.iter().all(|&x| a.class_of(x) == c),
                "stabilizer orbit {orbit:?} crosses classes"
            );
        }
        let schurian = orbits.as_slice() == a.classes();
        let witness_mismatch = (!schurian).then(|| {
            let orbit = orbits
                .iter()
                .find(|o| o.len() < a.class(a.class_of(o[0])).len())
                .expect("a split class")
                .clone();
            let class_index = a.class_of(orbit[0]);
            let class_orbits = orbits
                .iter()
                .filter(|o| a.class_of(o[0]) == class_index)
                .cloned()
                .collect();
            Mismatch {
                orbit,
                class_index,
                class: a.class(class_index).to_vec(),
                class_orbits,
            }
        });
        SchurityVerdict {
            schurian,
            aut_order: aut.order.clone(),
            stabilizer_orbits: orbits,
            witness_mismatch,
            nodes: aut.nodes,
        }
    }
}

#[derive(Clone, Debug)]
struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    fn new(n: usize, cells: Vec<Vec<usize>>) -> Partition {
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &x in c {
                cell_of[x] = i;
            }
        }
        Partition { cells, cell_of }
    }

    /// Smallest non-singleton cell, lowest index on ties.
    fn target_cell(&self) -> Option<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].len() > 1)
            .min_by_key(|&i| (self.cells[i].len(), i))
    }

    /// Splits `v` off its cell: the cell becomes `{v}`, the rest is appended.
    fn individualize(&mut self, v: usize) -> usize {
        let ci = self.cell_of[v];
        let rest: Vec<usize> = self.cells[ci].iter().copied().filter(|&x| x != v).collect();
        self.cells[ci] = vec![v];
        let ri = self.cells.len();
        for &x in &rest {
            self.cell_of[x] = ri;
        }
        self.cells.push(rest);
        ci
    }
}

// Multiset hash of colors: sum of a mixed image per color.
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Search {
    n: usize,
    /// `colors[x * n + y]`
    colors: Vec<u32>,
    color_hash: Vec<u64>,
    budget: u64,
    nodes: u64,
}

impl Search {
    fn new(a: &SRing, budget: u64) -> Search {
        let n = a.n();
        let mut colors = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                colors[x * n + y] = color(a, x, y) as u32;
            }
        }
        let color_hash = (0..a.rank() as u64).map(mix).collect();
        Search {
            n,
            colors,
            color_hash,
            budget,
            nodes: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::SearchBudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Refines `src` and `tgt` with identical operations, starting from the
    /// queued splitter cells. Returns `false` as soon as the two sides stop
    /// looking alike, which rules out any automorphism mapping one to the
    /// other cellwise.
    fn refine(&self, src: &mut Partition, tgt: &mut Partition, start: &[usize]) -> bool {
        let n = self.n;
        let mut queue: VecDeque<usize> = start.iter().copied().collect();
        let mut queued = vec![false; n];
        for &c in start {
            queued[c] = true;
        }
        let mut hs = vec![0u64; n];
        let mut ht = vec![0u64; n];
        let mut ks: Vec<(u64, usize)> = Vec::with_capacity(n);
        let mut kt: Vec<(u64, usize)> = Vec::with_capacity(n);
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            self.signatures(&src.cells[w], &mut hs);
            self.signatures(&tgt.cells[w], &mut ht);
            let cell_count = src.cells.len();
            for ci in 0..cell_count {
                if src.cells[ci].len() == 1 {
                    if hs[src.cells[ci][0]] != ht[tgt.cells[ci][0]] {
                        return false;
                    }
                    continue;
                }
                ks.clear();
                kt.clear();
                ks.extend(src.cells[ci].iter().map(|&v| (hs[v], v)));
                kt.extend(tgt.cells[ci].iter().map(|&v| (ht[v], v)));
                ks.sort_unstable();
                kt.sort_unstable();
                if ks.iter().zip(&kt).any(|(a, b)| a.0 != b.0) {
                    return false;
                }
                if ks[0].0 == ks[ks.len() - 1].0 {
                    continue;
                }
                let mut groups: Vec<(usize, usize)> = Vec::new();
                let mut start_ix = 0;
                for i in 1..=ks.len() {
                    if i == ks.len() || ks[i].0 != ks[start_ix].0 {
                        groups.push((start_ix, i));
                        start_ix = i;
                    }
                }
                for (g, &(lo, hi)) in groups.iter().enumerate() {
                    let idx = if g == 0 { ci } else { src.cells.len() };
                    let cs: Vec<usize> = ks[lo..hi].iter().map(|p| p.1).collect();
                    let ct: Vec<usize> = kt[lo..hi].iter().map(|p| p.1).collect();
                    for &v in &cs {
                        src.cell_of[v] = idx;
                    }
                    for &v in &ct {
                        tgt.cell_of[v] = idx;
                    }
                    if g == 0 {
                        src.cells[ci] = cs;
                        tgt.cells[ci] = ct;
                    } else {
                        src.cells.push(cs);
                        tgt.cells.push(ct);
                    }
                    if !queued[idx] {
                        queued[idx] = true;
                        queue.push_back(idx);
                    }
                }
            }
        }
        true
    }

    fn signatures(&self, splitter: &[usize], out: &mut [u64]) {
        let n = self.n;
        for (v, slot) in out.iter_mut().enumerate() {
            let row = &self.colors[v * n..(v + 1) * n];
            *slot = splitter.iter().fold(0u64, |acc, &w| {
                acc.wrapping_add(self.color_hash[row[w] as usize])
            });
        }
    }

    fn is_automorphism(&self, f: &[usize]) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            let fx = f[x];
            (0..n).all(|y| self.colors[x * n + y] == self.colors[fx * n + f[y]])
        })
    }

    fn leaf(&self, src: &Partition, tgt: &Partition) -> Option<Perm> {
        let mut f = vec![0; self.n];
        for (cs, ct) in src.cells.iter().zip(&tgt.cells) {
            f[cs[0]] = ct[0];
        }
        self.is_automorphism(&f)
            .then(|| Perm::from_images_unchecked(f))
    }

    fn individualized(
        &self,
        src: &Partition,
        tgt: &Partition,
        b: usize,
        c: usize,
    ) -> Option<(Partition, Partition)> {
        let (mut s, mut t) = (src.clone(), tgt.clone());
        let cs = s.individualize(b);
        let ct = t.individualize(c);
        debug_assert_eq!(cs, ct);
        self.refine(&mut s, &mut t, &[cs]).then_some((s, t))
    }

    // Looks for an automorphism extending the correspondence src -> tgt,
    // following the fixed base from `depth` on.
    fn extend(
        &mut self,
        path: &[Partition],
        base: &[usize],
        depth: usize,
        src: &Partition,
        tgt: &Partition,
    ) -> Result<Option<Perm>> {
        self.tick()?;
        if depth == base.len() {
            return Ok(self.leaf(src, tgt));
        }
        let b = base[depth];
        let ci = path[depth].cell_of[b];
        let mut candidates = tgt.cells[ci].clone();
        candidates.sort_unstable();
        for t in candidates {
            if let Some((s2, t2)) = self.individualized(src, tgt, b, t) {
                if let Some(g) = self.extend(path, base, depth + 1, &s2, &t2)? {
                    return Ok(Some(g));
                }
            }
        }
        Ok(None)
    }

    fn run(mut self) -> Result<AutomorphismGroup> {
        let n = self.n;
        if n == 1 {
            return Ok(AutomorphismGroup {
                group: PermGroup::trivial(1),
                base: vec![],
                stabilizer_gens: vec![],
                order: GroupOrder::one(),
                nodes: 0,
            });
        }
        let start = Partition::new(n, vec![vec![0], (1..n).collect()]);
        let (mut p, mut q) = (start.clone(), start);
        let ok = self.refine(&mut p, &mut q, &[0, 1]);
        debug_assert!(ok);

        // leftmost path
        let mut path = vec![p];
        let mut base = Vec::new();
        while let Some(ci) = path.last().unwrap().target_cell() {
            let last = path.last().unwrap();
            let b = *last.cells[ci].iter().min().unwrap();
            let (s, _) = self
                .individualized(last, last, b, b)
                .expect("identity survives refinement");
            base.push(b);
            path.push(s);
        }

        let mut gens: Vec<Perm> = Vec::new();
        let mut order = GroupOrder::from_u64(n as u64);
        for level in (0..base.len()).rev() {
            let b = base[level];
            let node = &path[level];
            let mut cell = node.cells[node.cell_of[b]].clone();
            cell.sort_unstable();
            let mut in_orbit = orbit_mask(n, b, &gens);
            let mut failed = vec![false; n];
            for c in cell {
                if in_orbit[c] || failed[c] {
                    continue;
                }
                self.tick()?;
                let found = match self.individualized(node, node, b, c) {
                    Some((s, t)) => self.extend(&path, &base, level + 1, &s, &t)?,
                    None => None,
                };
                match found {
                    Some(g) => {
                        gens.push(g);
                        in_orbit = orbit_mask(n, b, &gens);
                    }
                    None => {
                        for (x, hit) in orbit_mask(n, c, &gens).into_iter().enumerate() {
                            failed[x] |= hit;
                        }
                    }
                }
            }
            order.mul_u64(in_orbit.iter().filter(|&&x| x).count() as u64);
        }

        let mut full_base = vec![0];
        full_base.extend(&base);
        let mut strong = vec![Perm::translation(n, 1)];
        strong.extend(gens.iter().cloned());
        let group = PermGroup::from_bsgs(n, &full_base, strong);
        debug_assert_eq!(group.order(), order);
        Ok(AutomorphismGroup {
            group,
            base,
            stabilizer_gens: gens,
            order,
            nodes: self.nodes,
        })
    }
}

fn orbit_mask(n: usize, x: usize, gens: &[Perm]) -> Vec<bool> {
    let mut mask = vec![false; n];
    mask[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if !mask[z] {
                mask[z] = true;
                stack.push(z);
            }
        }
    }
    mask
}
