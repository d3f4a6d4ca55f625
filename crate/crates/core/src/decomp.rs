//! The solution sets `S_p = {(a, b, c, d) : ab + cd = p, min(a, b) > max(c, d)}`,
//! their Klein four-group orbits, sums of two squares, and the companion
//! count of irreducible 2×2 matrices of given determinant.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::lattice2d::{gauss_reduce, IVec2, LatticeBasis, SlopeClass};
use crate::numtheory::{ensure_odd_prime, sqrt_minus_one};
use crate::windmill::{fast_solution_for_pair, Solution};

/// Largest prime accepted by [`enumerate_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 1_000_000;
/// Largest `n` accepted by [`irreducible_count`].
pub const IRREDUCIBLE_COUNT_LIMIT: u64 = 1_000_000_000;
/// Largest `n` accepted by [`irreducible_enumerate`].
pub const IRREDUCIBLE_ENUM_LIMIT: u64 = 10_000;

/// A Klein four-group orbit with its decreasing representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbitEntry {
    /// Decreasing: `a >= b > c >= d`.
    pub rep: Solution,
    /// 1, 2 or 4.
    pub size: u8,
}

/// A matrix `[[a, b], [c, d]]` with `ad - bc = n` and `min(a, d) > max(b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleMatrix {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub n: u64,
}

fn sort_descending(sols: &mut [Solution]) {
    sols.sort_by(|x, y| y.cmp(x));
}

/// Pairs `(a, n / a)` and `(n / a, a)` of divisors of `n` with both factors
/// strictly greater than `floor`.
fn factor_pairs_above(n: u64, floor: u64) -> impl Iterator<Item = (u64, u64)> {
    (floor + 1..=n.isqrt())
        .filter(move |a| n.is_multiple_of(*a))
        .flat_map(move |a| {
            let b = n / a;
            let swapped = (a != b).then_some((b, a));
            std::iter::once((a, b)).chain(swapped)
        })
}

/// All of `S_p` by direct search over `(c, d)` and factor pairs of `p - cd`.
pub fn enumerate_bruteforce(p: u64) -> Result<Vec<Solution>> {
    ensure_odd_prime(p)?;
    if p > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "p",
            value: p,
            bound: BRUTEFORCE_LIMIT,
        });
    }
    let mut out = Vec::new();
    let r = p.isqrt();
    for c in 0..=r {
        for d in 0..=r {
            let t = c.max(d);
            // ab >= (t + 1)^2
            if (t + 1) * (t + 1) + c * d > p {
                continue;
            }
            for (a, b) in factor_pairs_above(p - c * d, t) {
                out.push(Solution::checked(p, a, b, c, d)?);
            }
        }
    }
    sort_descending(&mut out);
    Ok(out)
}

/// `S_p` from the lattices `Λ_μ(p)`: the two degenerate solutions plus one
/// solution per pair `{μ, p - μ}` with `2 <= μ <= (p - 1) / 2`.
pub fn enumerate_fast(p: u64) -> Result<Vec<Solution>> {
    ensure_odd_prime(p)?;
    let mut out = vec![
        Solution::checked(p, p, 1, 0, 0)?,
        Solution::checked(p, 1, p, 0, 0)?,
    ];
    for mu in 2..=(p - 1) / 2 {
        let (_, sol) = fast_solution_for_pair(&SlopeClass::finite(p, mu)?)?;
        out.push(sol);
    }
    sort_descending(&mut out);
    Ok(out)
}

/// Orbits of the Klein four-group generated by swapping `(a, b)` and
/// swapping `(c, d)`, sorted by descending representative.
pub fn vierergruppe_orbits(sols: &[Solution]) -> Result<Vec<OrbitEntry>> {
    let set: HashSet<Solution> = sols.iter().copied().collect();
    let mut orbits = BTreeMap::new();
    for s in &set {
        for image in [s.swap_ab(), s.swap_cd(), s.swap_both()] {
            if !set.contains(&image) {
                return Err(Error::NotClosed);
            }
        }
        let (a, b, c, d) = s.tuple();
        let rep = Solution::checked(s.p(), a.max(b), a.min(b), c.max(d), c.min(d))?;
        let size = match (a == b, c == d) {
            (true, true) => 1,
            (false, false) => 4,
            _ => 2,
        };
        orbits.insert(rep, size);
    }
    Ok(orbits
        .into_iter()
        .rev()
        .map(|(rep, size)| OrbitEntry { rep, size })
        .collect())
}

/// `(a, c)` with `a > c` and `a² + c² = p`, read off the fixed point
/// `(a, a, c, c)` of the four-group on `S_p`. Walks the fast path one mirror
/// pair of slopes at a time and stops at the fixed point.
pub fn two_squares_fixed_point(p: u64) -> Result<(u64, u64)> {
    ensure_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::NotOneModFour(p));
    }
    for mu in 2..=(p - 1) / 2 {
        let (_, sol) = fast_solution_for_pair(&SlopeClass::finite(p, mu)?)?;
        if sol.a() == sol.b() && sol.c() == sol.d() {
            return Ok((sol.a(), sol.c()));
        }
    }
    unreachable!("S_p has odd size for p = 1 mod 4")
}

/// `(a, b)` with `a >= b >= 1` and `a² + b² = p`, from a minimal vector of
/// the lattice spanned by `(p, 0)` and `(-ι, 1)` where `ι² ≡ -1 (mod p)`.
pub fn two_squares_grace(p: u64) -> Result<(u64, u64)> {
    let iota = sqrt_minus_one(p)?;
    let basis = LatticeBasis::new(
        IVec2::new(p as i64, 0),
        IVec2::new(-(iota.value() as i64), 1),
    )?;
    let m = gauss_reduce(&basis).u();
    let (x, y) = (m.x.unsigned_abs(), m.y.unsigned_abs());
    Ok((x.max(y), x.min(y)))
}

/// `Σ_{d | n, d² >= n} (d + 1 - n/d)`, the number of irreducible matrices of
/// determinant `n`.
pub fn irreducible_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    if n > IRREDUCIBLE_COUNT_LIMIT {
        return Err(Error::TooLarge {
            what: "n",
            value: n,
            bound: IRREDUCIBLE_COUNT_LIMIT,
        });
    }
    // Divisors d with d² >= n are exactly the cofactors n / e for e <= √n.
    Ok((1..=n.isqrt())
        .filter(|e| n.is_multiple_of(*e))
        .map(|e| {
            let d = n / e;
            d + 1 - e
        })
        .sum())
}

/// Every irreducible matrix of determinant `n`, scanning `(b, c)` and the
/// factor pairs of `n + bc`. Sorted descending.
pub fn irreducible_enumerate(n: u64) -> Result<Vec<IrreducibleMatrix>> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    if n > IRREDUCIBLE_ENUM_LIMIT {
        return Err(Error::TooLarge {
            what: "n",
            value: n,
            bound: IRREDUCIBLE_ENUM_LIMIT,
        });
    }
    let mut out = Vec::new();
    // (t + 1)² <= ad = n + bc <= n + t² forces t = max(b, c) <= (n - 1) / 2.
    let t_max = (n - 1) / 2;
    for b in 0..=t_max {
        for c in 0..=t_max {
            for (a, d) in factor_pairs_above(n + b * c, b.max(c)) {
                out.push(IrreducibleMatrix { a, b, c, d, n });
            }
        }
    }
    out.sort_by(|x, y| y.cmp(x));
    Ok(out)
}
