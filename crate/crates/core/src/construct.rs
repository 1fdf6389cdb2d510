//! Builders for S-rings: cyclotomic rings, rank 2 rings, tensor products,
//! generalized wreath products and the non-schurian witness over
//! `Z_{n1 n2}`.

use std::fmt;

use crate::arith::{gcd, omega_star};
use crate::error::{Error, Result};
use crate::multiplier::MultiplierGroup;
use crate::sring::SRing;

/// The orbit partition of `K` acting on `Z_n` by multiplication.
pub fn cyclotomic(k: &MultiplierGroup) -> SRing {
    let ring = SRing::validate(k.modulus(), k.orbits());
    ring.expect("orbit partition of a multiplier group is an S-ring")
}

/// `cyc(K_m, Z_m)`.
pub fn cyclotomic_sign(m: usize) -> SRing {
    cyclotomic(&MultiplierGroup::k_m(m))
}

/// Classes `{0}` and `Z_n \ {0}`.
pub fn rank2(n: usize) -> Result<SRing> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank 2 ring needs n >= 2, got {n}"
        )));
    }
    SRing::validate(n, vec![vec![0], (1..n).collect()])
}

/// Tensor product over `Z_{n1 n2}` for coprime `n1`, `n2`, using the
/// identification `x -> (x mod n1, x mod n2)`.
pub fn tensor(a1: &SRing, a2: &SRing) -> Result<SRing> {
    let (n1, n2) = (a1.n(), a2.n());
    if gcd(n1 as u64, n2 as u64) != 1 {
        return Err(Error::NotCoprime { n1, n2 });
    }
    let n = n1 * n2;
    let r2 = a2.rank();
    let mut classes = vec![Vec::new(); a1.rank() * r2];
    for x in 0..n {
        classes[a1.class_of(x % n1) * r2 + a2.class_of(x % n2)].push(x);
    }
    SRing::validate(n, classes)
}

/// The generalized wreath product `A1 wr_m A2` over `Z_N`, `N = n1 n2 / m`.
///
/// Inside `U` (order `n1`) the classes are those of `A1`, embedded by
/// `x -> x * N/n1`. Outside `U` they are the full preimages under
/// `Z_N -> Z_{n2}` of the classes of `A2` lying outside its subgroup of
/// order `m`. Requires `A1^m = (A2)_m`, i.e. the quotient of `A1` by its
/// subgroup of order `n1/m` equals the restriction of `A2` to order `m`.
pub fn gen_wreath(a1: &SRing, a2: &SRing, m: usize) -> Result<SRing> {
    let (n1, n2) = (a1.n(), a2.n());
    if m == 0 || n1 % m != 0 {
        return Err(Error::NotADivisor {
            d: m as u64,
            n: n1 as u64,
        });
    }
    if n2 % m != 0 {
        return Err(Error::NotADivisor {
            d: m as u64,
            n: n2 as u64,
        });
    }
    let top = a1.quotient(n1 / m)?;
    let bottom = a2.restrict(m)?;
    if top != bottom {
        return Err(Error::IncompatibleSection {
            m,
            left: top.into_classes(),
            right: bottom.into_classes(),
        });
    }
    let big_n = n1 * n2 / m;
    let embed = big_n / n1;
    let inner_step = n2 / m;
    let mut classes: Vec<Vec<usize>> = a1
        .classes()
        .iter()
        .map(|c| c.iter().map(|&x| x * embed).collect())
        .collect();
    let offset = classes.len();
    let outer: Vec<usize> = (0..a2.rank())
        .filter(|&i| !a2.class(i)[0].is_multiple_of(inner_step))
        .collect();
    let mut slot = vec![usize::MAX; a2.rank()];
    for (k, &i) in outer.iter().enumerate() {
        slot[i] = offset + k;
    }
    classes.resize(offset + outer.len(), Vec::new());
    for x in 0..big_n {
        if x % embed == 0 {
            continue;
        }
        classes[slot[a2.class_of(x % n2)]].push(x);
    }
    SRing::validate(big_n, classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessBranch {
    /// `n1 = ab`, `n2 = cd` with `a, b, c, d >= 3`.
    Generic,
    /// `n1 = 8 = ab/2` with `a = b = 4`.
    Eight,
}

impl fmt::Display for WitnessBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessBranch::Generic => f.write_str("generic"),
            WitnessBranch::Eight => f.write_str("eight"),
        }
    }
}

/// The non-schurian ring over `Z_{n1 n2}` together with the pieces it is
/// glued from.
#[derive(Debug, Clone)]
pub struct Witness {
    pub n1: usize,
    pub n2: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub branch: WitnessBranch,
    /// `cyc(K_a x K_c, Z_ac)`, `cyc(K_bc, Z_bc)`, `cyc(K_ad, Z_ad)`, `cyc(K_bd, Z_bd)`.
    pub parts: [SRing; 4],
    pub a12: SRing,
    pub a34: SRing,
    pub ring: SRing,
}

fn split_at_least_three(x: usize, odd: bool) -> Option<(usize, usize)> {
    (3..x)
        .filter(|&a| x.is_multiple_of(a) && x / a >= 3)
        .find(|&a| !odd || (a % 2 == 1 && (x / a) % 2 == 1))
        .map(|a| (a, x / a))
}

/// Builds the generalized wreath product `A_{1,2} wr_{n1} A_{3,4}` over
/// `Z_{n1 n2}` from four cyclotomic rings with sign multiplier groups.
///
/// Needs coprime `n1`, `n2` with `Ω*(n1), Ω*(n2) >= 2`. When one of them is
/// `8` it is moved to the first position and the eight branch is used.
pub fn witness(n1: usize, n2: usize) -> Result<Witness> {
    let (mut n1, mut n2) = (n1, n2);
    if n1 == 0 || n2 == 0 {
        return Err(Error::WitnessPrecondition("orders must be positive".into()));
    }
    if gcd(n1 as u64, n2 as u64) != 1 {
        return Err(Error::WitnessPrecondition(format!(
            "{n1} and {n2} are not coprime"
        )));
    }
    for x in [n1, n2] {
        if omega_star(x as u64) < 2 {
            return Err(Error::WitnessPrecondition(format!(
                "Ω*({x}) = {} < 2",
                omega_star(x as u64)
            )));
        }
    }
    if n2 == 8 {
        std::mem::swap(&mut n1, &mut n2);
    }
    let branch = if n1 == 8 {
        WitnessBranch::Eight
    } else {
        WitnessBranch::Generic
    };
    let (a, b) = match branch {
        WitnessBranch::Eight => (4, 4),
        WitnessBranch::Generic => split_at_least_three(n1, false)
            .ok_or_else(|| Error::Internal(format!("no factorization {n1} = ab with a, b >= 3")))?,
    };
    let (c, d) = split_at_least_three(n2, branch == WitnessBranch::Eight)
        .ok_or_else(|| Error::Internal(format!("no factorization {n2} = cd with c, d >= 3")))?;

    let k = MultiplierGroup::k_m;
    let a1 = cyclotomic(&MultiplierGroup::crt_product(&k(a), &k(c))?);
    let a2 = cyclotomic_sign(b * c);
    let a3 = cyclotomic_sign(a * d);
    let a4 = cyclotomic_sign(b * d);

    let (m12, m34) = match branch {
        WitnessBranch::Generic => (c, d),
        WitnessBranch::Eight => (2 * c, 2 * d),
    };
    let glue = |x: &SRing, y: &SRing, m: usize| {
        gen_wreath(x, y, m).map_err(|e| Error::Internal(format!("witness gluing failed: {e}")))
    };
    let a12 = glue(&a1, &a2, m12)?;
    let a34 = glue(&a3, &a4, m34)?;

    // (A_{1,2})^{n1} = cyc(K_a) wr_t cyc(K_b) = (A_{3,4})_{n1}
    let inner = match branch {
        WitnessBranch::Generic => glue(&cyclotomic_sign(a), &cyclotomic_sign(b), 1)?,
        WitnessBranch::Eight => glue(&cyclotomic_sign(a), &cyclotomic_sign(b), 2)?,
    };
    if a12.quotient(a12.n() / n1)? != inner || a34.restrict(n1)? != inner {
        return Err(Error::Internal(
            "witness middle section does not match cyc(K_a) wr cyc(K_b)".into(),
        ));
    }
    let ring = glue(&a12, &a34, n1)?;
    debug_assert_eq!(ring.n(), n1 * n2);
    Ok(Witness {
        n1,
        n2,
        a,
        b,
        c,
        d,
        branch,
        parts: [a1, a2, a3, a4],
        a12,
        a34,
        ring,
    })
}
