//! Groups of multipliers: subgroups of the unit group of `Z_n` acting on
//! `Z_n` by multiplication.

use std::collections::BTreeSet;

use crate::arith::{gcd, units};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplierGroup {
    n: usize,
    generators: Vec<usize>,
    elements: Vec<usize>,
}

impl MultiplierGroup {
    /// The subgroup of `units(n)` generated by `generators`.
    pub fn new(n: usize, generators: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let generators: Vec<usize> = generators.into_iter().map(|g| g % n).collect();
        if let Some(&g) = generators
            .iter()
            .find(|&&g| gcd(g as u64, n as u64) != 1 && n > 1)
        {
            return Err(Error::InvalidArgument(format!("{g} is not a unit mod {n}")));
        }
        let elements = close(n, &generators);
        Ok(MultiplierGroup {
            n,
            generators,
            elements,
        })
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, vec![]).expect("trivial group")
    }

    /// The full unit group of `Z_n`.
    pub fn units(n: usize) -> Self {
        let gens = units(n as u64).into_iter().map(|u| u as usize).collect();
        Self::new(n, gens).expect("units are units")
    }

    /// `K_m = {1, -1}`; trivial for `m <= 2`.
    pub fn k_m(m: usize) -> Self {
        if m <= 2 {
            Self::trivial(m.max(1))
        } else {
            Self::new(m, vec![m - 1]).expect("-1 is a unit")
        }
    }

    /// `K_a x K_c` realized inside `units(ac)` through the Chinese remainder
    /// isomorphism `Z_ac = Z_a x Z_c`.
    pub fn crt_product(a: &MultiplierGroup, c: &MultiplierGroup) -> Result<Self> {
        let (na, nc) = (a.n, c.n);
        if gcd(na as u64, nc as u64) != 1 {
            return Err(Error::NotCoprime { n1: na, n2: nc });
        }
        let n = na * nc;
        let sa: BTreeSet<usize> = a.elements.iter().copied().collect();
        let sc: BTreeSet<usize> = c.elements.iter().copied().collect();
        let gens: Vec<usize> = (0..n)
            .filter(|&m| gcd(m as u64, n as u64) == 1 || n == 1)
            .filter(|&m| sa.contains(&(m % na)) && sc.contains(&(m % nc)))
            .collect();
        let g = Self::new(n, gens)?;
        debug_assert_eq!(g.order(), a.order() * c.order());
        Ok(g)
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: usize) -> bool {
        self.elements.binary_search(&(m % self.n)).is_ok()
    }

    /// Orbits on `Z_n`, each sorted, listed by minimum element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.elements.iter().map(|&m| m * x % n).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }
}

fn close(n: usize, generators: &[usize]) -> Vec<usize> {
    let one = 1 % n;
    let mut seen = BTreeSet::from([one]);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for &g in generators {
            let y = x * g % n;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every subgroup of `units(n)`, ordered by `(order, elements)`.
pub fn unit_subgroups(n: usize) -> Vec<MultiplierGroup> {
    let all = MultiplierGroup::units(n);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut groups = Vec::new();
    let mut queue = vec![MultiplierGroup::trivial(n)];
    found.insert(queue[0].elements.clone());
    while let Some(h) = queue.pop() {
        for &u in all.elements() {
            if h.contains(u) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(u);
            let bigger = MultiplierGroup::new(n, gens).expect("units");
            if found.insert(bigger.elements.clone()) {
                queue.push(bigger);
            }
        }
        groups.push(h);
    }
    groups.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    groups
}
