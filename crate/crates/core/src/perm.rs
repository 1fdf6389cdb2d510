use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}` stored as its image list.
///
/// Products act on the right: `p.then(q)` applies `p` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in &images {
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation { degree });
            }
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm(images)
    }

    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree).collect())
    }

    /// Product of disjoint-or-not cycles, applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut p = Perm::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= degree || y >= degree {
                    return Err(Error::NotAPermutation { degree });
                }
                images[x] = y;
            }
            p = p.then(&Perm::from_images(images)?);
        }
        Ok(p)
    }

    /// `x -> x + shift mod n`.
    pub fn translation(n: usize, shift: usize) -> Perm {
        Perm((0..n).map(|x| (x + shift) % n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(x, &y)| *x != y)
            .map(|(x, _)| x)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.0[x] == x
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            write!(
                f,
                "({})",
                cycle
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_acts_on_the_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(b.then(&a).apply(0), 1);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn debug_prints_cycles() {
        let p = Perm::from_cycles(5, &[&[0, 2], &[1, 3, 4]]).unwrap();
        assert_eq!(format!("{p:?}"), "(0 2)(1 3 4)");
        assert_eq!(format!("{:?}", Perm::identity(3)), "()");
    }
}
