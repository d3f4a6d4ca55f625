//! Windmill cones and windmill bases.
//!
//! The lines `x = 0`, `y = 0`, `y = x` and `y = -x` cut the plane into eight
//! open cones, coloured alternately black and white starting with a black
//! E-NE cone `{0 < y < x}`. A windmill basis has one vector in each of the
//! two upper cones of one colour: E-NE and N-NW (black) or N-NE and W-NW
//! (white). For `2 <= μ <= p-2` the lattice `Λ_μ(p)` has windmill bases, all
//! of one colour, and a black one carries a unique standard basis
//! `u = (a, c), v = (-d, b)` encoding `p = ab + cd`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice2d::{
    gauss_reduce, lambda_mu, voronoi_vectors, IVec2, LatticeBasis, Slope, SlopeClass,
};
use crate::numtheory::{ensure_odd_prime, is_odd_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cone {
    /// `0 < y < x`
    Ene,
    /// `0 < x < y`
    Nne,
    /// `0 < -x < y`
    Nnw,
    /// `0 < y < -x`
    Wnw,
    /// `0 < -y < -x`
    Wsw,
    /// `0 < -x < -y`
    Ssw,
    /// `0 < x < -y`
    Sse,
    /// `0 < -y < x`
    Ese,
    /// On the x-axis `y = 0`, origin excluded.
    BoundaryX,
    /// On the y-axis `x = 0`, origin excluded.
    BoundaryY,
    /// On `y = x`, origin excluded.
    BoundaryDiag,
    /// On `y = -x`, origin excluded.
    BoundaryAntidiag,
    Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Cone {
    /// Colour of an open cone; `None` on the boundary lines.
    pub fn color(self) -> Option<Color> {
        match self {
            Cone::Ene | Cone::Nnw | Cone::Wsw | Cone::Sse => Some(Color::Black),
            Cone::Nne | Cone::Wnw | Cone::Ssw | Cone::Ese => Some(Color::White),
            _ => None,
        }
    }

    /// Two linear forms `(a, b)` with the open cone equal to
    /// `{a x + b y > 0} ∩ {a' x + b' y > 0}`.
    fn forms(self) -> Option<[(i64, i64); 2]> {
        Some(match self {
            Cone::Ene => [(0, 1), (1, -1)],
            Cone::Nne => [(1, 0), (-1, 1)],
            Cone::Nnw => [(-1, 0), (1, 1)],
            Cone::Wnw => [(0, 1), (-1, -1)],
            Cone::Wsw => [(0, -1), (-1, 1)],
            Cone::Ssw => [(-1, 0), (1, -1)],
            Cone::Sse => [(1, 0), (-1, -1)],
            Cone::Ese => [(0, -1), (1, 1)],
            _ => return None,
        })
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Cone::Ene => "E-NE",
            Cone::Nne => "N-NE",
            Cone::Nnw => "N-NW",
            Cone::Wnw => "W-NW",
            Cone::Wsw => "W-SW",
            Cone::Ssw => "S-SW",
            Cone::Sse => "S-SE",
            Cone::Ese => "E-SE",
            Cone::BoundaryX => "boundary y=0",
            Cone::BoundaryY => "boundary x=0",
            Cone::BoundaryDiag => "boundary y=x",
            Cone::BoundaryAntidiag => "boundary y=-x",
            Cone::Origin => "origin",
        };
        f.write_str(s)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Black => "Black",
            Color::White => "White",
        })
    }
}

pub fn classify_cone(w: IVec2) -> Cone {
    let (x, y) = (w.x as i128, w.y as i128);
    if x == 0 && y == 0 {
        return Cone::Origin;
    }
    if y == 0 {
        return Cone::BoundaryX;
    }
    if x == 0 {
        return Cone::BoundaryY;
    }
    if x == y {
        return Cone::BoundaryDiag;
    }
    if x == -y {
        return Cone::BoundaryAntidiag;
    }
    match (x > 0, y > 0) {
        (true, true) if y < x => Cone::Ene,
        (true, true) => Cone::Nne,
        (false, true) if y > -x => Cone::Nnw,
        (false, true) => Cone::Wnw,
        (false, false) if -y < -x => Cone::Wsw,
        (false, false) => Cone::Ssw,
        (true, false) if -y > x => Cone::Sse,
        (true, false) => Cone::Ese,
    }
}

/// Colour of the windmill pair `{e, f}`, or `None` if it is not one.
pub fn windmill_basis_color(e: IVec2, f: IVec2) -> Option<Color> {
    use Cone::*;
    match (classify_cone(e), classify_cone(f)) {
        (Ene, Nnw) | (Nnw, Ene) => Some(Color::Black),
        (Nne, Wnw) | (Wnw, Nne) => Some(Color::White),
        _ => None,
    }
}

fn is_right_cone(c: Cone) -> bool {
    matches!(c, Cone::Ene | Cone::Nne)
}

/// Orders a windmill pair as (member of E-NE or N-NE, member of N-NW or W-NW).
fn right_left(e: IVec2, f: IVec2) -> (IVec2, IVec2) {
    if is_right_cone(classify_cone(e)) {
        (e, f)
    } else {
        (f, e)
    }
}

fn windmill_basis(e: IVec2, f: IVec2) -> LatticeBasis {
    let (u, v) = right_left(e, f);
    LatticeBasis::new(u, v).expect("windmill pairs are independent")
}

/// The integers `s` with `base + s * step` in the open `cone`, as an
/// inclusive range. `base` must lie in the cone and `step` must not lie in
/// its closure, which bounds the range on both sides.
fn translate_range(base: IVec2, step: IVec2, cone: Cone) -> (i128, i128) {
    let mut lo = i128::MIN;
    let mut hi = i128::MAX;
    for (a, b) in cone.forms().expect("open cone") {
        let at_base = a as i128 * base.x as i128 + b as i128 * base.y as i128;
        let at_step = a as i128 * step.x as i128 + b as i128 * step.y as i128;
        debug_assert!(at_base > 0);
        if at_step > 0 {
            // s > -at_base / at_step
            lo = lo.max(Integer::div_floor(&-at_base, &at_step) + 1);
        } else if at_step < 0 {
            // s < at_base / -at_step
            hi = hi.min(-Integer::div_floor(&-at_base, &-at_step) - 1);
        }
    }
    assert!(
        lo > i128::MIN && hi < i128::MAX,
        "unbounded translate range"
    );
    (lo, hi)
}

/// A windmill basis made of Voronoi vectors, ordered (right cone, left
/// cone), with its colour. `None` iff the lattice has no windmill basis.
pub fn find_windmill_basis(b: &LatticeBasis) -> Option<(LatticeBasis, Color)> {
    let vectors = voronoi_vectors(b);
    let n = vectors.len();
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    pairs
        .map(|(i, j)| (vectors[i], vectors[j]))
        .find_map(|(e, f)| {
            for (se, sf) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let (e, f) = (e * se, f * sf);
                if let Some(color) = windmill_basis_color(e, f) {
                    return Some((windmill_basis(e, f), color));
                }
            }
            None
        })
}

/// All windmill bases of a lattice: `(m, f + s m)` for `s` in `0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindmillBasisSet {
    pub color: Color,
    /// Common element. When `count >= 2` it is the unique minimal vector of
    /// the lattice in the upper half-plane.
    pub m: IVec2,
    pub f: IVec2,
    pub count: u64,
}

impl WindmillBasisSet {
    pub fn basis(&self, s: u64) -> LatticeBasis {
        windmill_basis(self.m, self.f.add_scaled(s as i128, self.m))
    }

    /// Every basis, each ordered (right cone, left cone). Linear in `count`.
    pub fn bases(&self) -> Vec<LatticeBasis> {
        (0..self.count).map(|s| self.basis(s)).collect()
    }
}

/// The complete set of windmill bases of the lattice, or `None` if it has
/// none.
///
/// Any two windmill bases share a vector, and a second basis through a
/// shared vector differs from the first by integer translates along it, so
/// the whole set is read off from one basis by intersecting the affine
/// lines through its two vectors with their cones.
pub fn all_windmill_bases(b: &LatticeBasis) -> Option<WindmillBasisSet> {
    let (found, color) = find_windmill_basis(b)?;
    let (u, v) = (found.u(), found.v());
    let (lo_v, hi_v) = translate_range(v, u, classify_cone(v));
    let (lo_u, hi_u) = translate_range(u, v, classify_cone(u));
    debug_assert!(hi_v == lo_v || hi_u == lo_u);
    let set = if hi_v > lo_v {
        WindmillBasisSet {
            color,
            m: u,
            f: v.add_scaled(lo_v, u),
            count: (hi_v - lo_v + 1) as u64,
        }
    } else if hi_u > lo_u {
        WindmillBasisSet {
            color,
            m: v,
            f: u.add_scaled(lo_u, v),
            count: (hi_u - lo_u + 1) as u64,
        }
    } else {
        WindmillBasisSet {
            color,
            m: u,
            f: v,
            count: 1,
        }
    };
    Some(set)
}

/// A decomposition `p = ab + cd` with `min(a, b) > max(c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    p: u64,
}

impl Solution {
    /// Validates the quadruple; `p` must be an odd prime.
    pub fn new(p: u64, a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        ensure_odd_prime(p)?;
        Self::checked(p, a, b, c, d)
    }

    /// Like [`Solution::new`] but trusts that `p` is an odd prime.
    pub(crate) fn checked(p: u64, a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        let invalid = |reason| Error::InvalidSolution {
            p,
            a,
            b,
            c,
            d,
            reason,
        };
        if a as u128 * b as u128 + c as u128 * d as u128 != p as u128 {
            return Err(invalid("ab + cd != p"));
        }
        if a.min(b) <= c.max(d) {
            return Err(invalid("min(a, b) <= max(c, d)"));
        }
        Ok(Self { a, b, c, d, p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn swap_ab(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            ..*self
        }
    }

    pub fn swap_cd(&self) -> Self {
        Self {
            c: self.d,
            d: self.c,
            ..*self
        }
    }

    pub fn swap_both(&self) -> Self {
        self.swap_ab().swap_cd()
    }

    /// `u = (a, c)`, `v = (-d, b)`, a basis of an index-`p` sublattice.
    pub fn basis(&self) -> LatticeBasis {
        LatticeBasis::new(
            IVec2::new(self.a as i64, self.c as i64),
            IVec2::new(-(self.d as i64), self.b as i64),
        )
        .expect("ab + cd = p > 0")
    }

    /// The slope class of the lattice spanned by [`Solution::basis`].
    pub fn slope(&self) -> SlopeClass {
        let p = self.p;
        // (a, c) ∈ Λ_μ: a + μc ≡ 0, so μ ≡ -a/c; c = 0 means a = p or a = 1.
        if self.c == 0 {
            return if self.a.is_multiple_of(p) {
                SlopeClass::finite(p, 0).unwrap()
            } else {
                SlopeClass::infinity(p).unwrap()
            };
        }
        let inv = crate::numtheory::inverse_mod(self.c, p).unwrap();
        let mu = ((p - self.a % p) as u128 * inv as u128 % p as u128) as u64;
        SlopeClass::finite(p, mu).unwrap()
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

fn nondegenerate_mu(s: &SlopeClass) -> Result<u64> {
    match s.slope() {
        Slope::Finite(mu) if !s.is_degenerate() => Ok(mu),
        _ => Err(Error::DegenerateSlope(s.to_string())),
    }
}

/// The standard black windmill basis of `Λ_μ(p)`, `2 <= μ <= p-2`, as a
/// solution, or `None` when the lattice's windmill bases are white.
///
/// Selects `u` as the lowest E-NE member (smallest `y`, then smallest `x`)
/// and `v` as the rightmost N-NW member (largest `x`, then smallest `y`)
/// over the full basis set, so the cost is linear in the number of bases.
pub fn standard_black_basis(s: &SlopeClass) -> Result<Option<Solution>> {
    nondegenerate_mu(s)?;
    let set = all_windmill_bases(&lambda_mu(s))
        .expect("lattices with 2 <= mu <= p-2 have windmill bases");
    if set.color == Color::White {
        return Ok(None);
    }
    let bases = set.bases();
    let u = bases
        .iter()
        .map(|b| b.u())
        .min_by_key(|w| (w.y, w.x))
        .unwrap();
    let v = bases
        .iter()
        .map(|b| b.v())
        .max_by_key(|w| (w.x, -w.y))
        .unwrap();
    Solution::checked(
        s.p(),
        u.x as u64,
        v.y as u64,
        u.y as u64,
        v.x.unsigned_abs(),
    )
    .map(Some)
}

/// The solution carried by the pair `{Λ_μ(p), Λ_{p-μ}(p)}`: exactly one of
/// the two lattices has black windmill bases. Returns that lattice's slope
/// and its standard basis.
///
/// Reduces the lattice, takes a windmill basis among its Voronoi vectors,
/// reflects it through `(x, y) ↦ (-x, y)` when it is white, and jumps along
/// the minimal vector to the lowest/rightmost translates. `O(log p)`.
pub fn fast_solution_for_pair(s: &SlopeClass) -> Result<(SlopeClass, Solution)> {
    nondegenerate_mu(s)?;
    let lattice = gauss_reduce(&lambda_mu(s));
    let (found, color) =
        find_windmill_basis(&lattice).expect("lattices with 2 <= mu <= p-2 have windmill bases");
    let flip = |w: IVec2| IVec2::new(-w.x, w.y);
    let (u, v, target) = match color {
        Color::Black => (found.u(), found.v(), *s),
        // σ sends N-NE to N-NW and W-NW to E-NE.
        Color::White => (flip(found.v()), flip(found.u()), s.reflect_vertical()),
    };
    // At most one of the two ranges is nontrivial. Moving u along v raises
    // it (v.y > 0); moving v along u pushes it right (u.x > 0).
    let (lo_u, _) = translate_range(u, v, Cone::Ene);
    let (_, hi_v) = translate_range(v, u, Cone::Nnw);
    let (u, v) = (u.add_scaled(lo_u, v), v.add_scaled(hi_v, u));
    let sol = Solution::checked(
        s.p(),
        u.x as u64,
        v.y as u64,
        u.y as u64,
        v.x.unsigned_abs(),
    )?;
    Ok((target, sol))
}

/// Colour of the windmill bases of `Λ_s`, `None` when it has none.
pub fn lattice_color(s: &SlopeClass) -> Option<Color> {
    find_windmill_basis(&lambda_mu(s)).map(|(_, c)| c)
}

/// Brute-force windmill bases of `Λ_s`: every upper half-plane pair in
/// `[-p, p]^2` that is a windmill pair and a basis. Cubic in `p`; test use.
pub fn windmill_bases_bruteforce(s: &SlopeClass) -> Vec<(LatticeBasis, Color)> {
    debug_assert!(is_odd_prime(s.p()));
    let n = s.p() as i64;
    let pts: Vec<IVec2> = crate::lattice2d::points_in_box(s, (-n, n), (1, n)).collect();
    let mut out = Vec::new();
    for (i, &e) in pts.iter().enumerate() {
        for &f in &pts[i + 1..] {
            if let Some(color) = windmill_basis_color(e, f) {
                let b = windmill_basis(e, f);
                if crate::lattice2d::is_basis_of_slope(&b, s) {
                    out.push((b, color));
                }
            }
        }
    }
    out
}
