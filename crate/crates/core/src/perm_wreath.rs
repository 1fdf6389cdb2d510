//! The canonical generalized wreath product of permutation groups.
//!
//! Coordinates: `U` is the subgroup of order `u` of `Z_n`, identified with
//! `Z_u` by `k -> k * n/u`. `G/L` is identified with `Z_{n/l}` by reduction
//! mod `n/l`, and `U/L` with `Z_{u/l}` in both pictures (by `k mod u/l` on the
//! `U` side and by `j -> j * n/u` on the `G/L` side). The coset `X = r + U`
//! with `0 <= r < n/u` gets the fixed bijection `h_X: U -> X`, `y -> y + r`.

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::permgroup::{PermGroup, StabChain};

fn mismatch(msg: impl Into<String>) -> Error {
    Error::SectionActionMismatch(msg.into())
}

// Action on block points of a permutation preserving the classes of `block`.
fn induced(g: &Perm, blocks: usize, block: impl Fn(usize) -> usize) -> Option<Vec<usize>> {
    let mut img = vec![usize::MAX; blocks];
    for x in 0..g.degree() {
        let (b, c) = (block(x), block(g.apply(x)));
        if img[b] == usize::MAX {
            img[b] = c;
        } else if img[b] != c {
            return None;
        }
    }
    Some(img)
}

// `g` on its own points followed by the induced action on `blocks` extra points.
fn extend(g: &Perm, induced: &[usize]) -> Perm {
    let d = g.degree();
    let mut images = g.images().to_vec();
    images.extend(induced.iter().map(|&b| d + b));
    Perm::from_images_unchecked(images)
}

fn same_group(degree: usize, a: &[Perm], b: &[Perm]) -> bool {
    let ga = PermGroup::new(degree, a.to_vec()).unwrap();
    let gb = PermGroup::new(degree, b.to_vec()).unwrap();
    ga.order() == gb.order() && b.iter().all(|g| ga.contains(g))
}

/// Generators of `Δ1 wr_{U/L} Δ0` acting on `Z_n`.
///
/// `delta1` acts on `U ≅ Z_u`, `delta0` on `G/L ≅ Z_{n/l}`. Both must
/// contain their translations and induce the same group on `U/L`.
pub fn perm_gen_wreath(
    delta1: &PermGroup,
    delta0: &PermGroup,
    n: usize,
    u: usize,
    l: usize,
) -> Result<PermGroup> {
    if n == 0 || u == 0 || l == 0 || !n.is_multiple_of(u) || !u.is_multiple_of(l) {
        return Err(Error::InvalidArgument(format!(
            "need l | u | n, got n = {n}, u = {u}, l = {l}"
        )));
    }
    let (ul, gl, gu) = (u / l, n / l, n / u);
    if delta1.degree() != u || delta0.degree() != gl {
        return Err(Error::InvalidArgument(format!(
            "degrees {} and {} do not match u = {u} and n/l = {gl}",
            delta1.degree(),
            delta0.degree()
        )));
    }

    // Δ1 on U must preserve L-cosets; lift to Z_u plus the U/L block points
    let mut ext1 = Vec::new();
    let mut top1 = Vec::new();
    for g in delta1.generators() {
        let img = induced(g, ul, |x| x % ul)
            .ok_or_else(|| mismatch("Δ1 does not preserve the cosets of L in U"))?;
        top1.push(Perm::from_images_unchecked(img.clone()));
        ext1.push(extend(g, &img));
    }
    // Δ0 on G/L must preserve the cosets of U/L; block r is the residue mod n/u
    let mut ext0 = Vec::new();
    for g in delta0.generators() {
        let img = induced(g, gu, |x| x % gu)
            .ok_or_else(|| mismatch("Δ0 does not preserve the cosets of U/L in G/L"))?;
        ext0.push(extend(g, &img));
    }

    // (Δ0)^{U/L}: stabilizer of the block U/L, restricted to it
    let chain0 = StabChain::build(gl + gu, &ext0, &[gl]);
    let top0: Vec<Perm> = chain0
        .stabilizer_gens(1)
        .iter()
        .map(|g| Perm::from_images_unchecked((0..ul).map(|j| g.apply(j * gu) / gu).collect()))
        .collect();
    if !same_group(ul, &top0, &top1) {
        return Err(mismatch(format!(
            "Δ0 and Δ1 induce different groups on U/L (Z_{ul})"
        )));
    }
    if !delta1.contains(&Perm::translation(u, 1)) || !delta0.contains(&Perm::translation(gl, 1)) {
        return Err(Error::InvalidArgument(
            "Δ1 and Δ0 must contain the translations of U and G/L".into(),
        ));
    }

    // chain of Δ1 with the block points first: lifting and kernel
    let block_points: Vec<usize> = (u..u + ul).collect();
    let chain1 = StabChain::build(u + ul, &ext1, &block_points);
    let kernel: Vec<Perm> = chain1
        .stabilizer_gens(ul)
        .iter()
        .map(|g| Perm::from_images_unchecked(g.images()[..u].to_vec()))
        .collect();
    let lift = |sigma: &[usize]| -> Result<Perm> {
        let mut g = Perm::identity(u + ul);
        for (i, &target) in sigma.iter().enumerate() {
            let want = g.inverse().apply(u + target);
            let s = chain1
                .transversal(i, want)
                .ok_or_else(|| mismatch("section action does not lift to Δ1"))?;
            g = s.then(&g);
        }
        Ok(Perm::from_images_unchecked(g.images()[..u].to_vec()))
    };

    let mut gens = Vec::new();
    for kappa in &kernel {
        for r in 0..gu {
            let mut images: Vec<usize> = (0..n).collect();
            for k in 0..u {
                images[k * gu + r] = kappa.apply(k) * gu + r;
            }
            gens.push(Perm::from_images_unchecked(images));
        }
    }
    for f0 in delta0.generators() {
        let mut images = vec![0; n];
        for r in 0..gu {
            let r2 = f0.apply(r % gl) % gu;
            let sigma: Vec<usize> = (0..ul)
                .map(|j| ((f0.apply((r + j * gu) % gl) + gl - r2) % gl) / gu)
                .collect();
            let fx = lift(&sigma)?;
            for k in 0..u {
                images[k * gu + r] = fx.apply(k) * gu + r2;
            }
        }
        gens.push(Perm::from_images_unchecked(images));
    }
    gens.retain(|g| !g.is_identity());
    PermGroup::new(n, gens)
}
