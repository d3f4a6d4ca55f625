//! Rank-2 sublattices of `Z^2`.
//!
//! The index-`p` sublattices are the kernels `Λ_μ(p) = {(x, y) : x + μy ≡ 0
//! (mod p)}`, one per point `μ` of the projective line over `F_p`
//! (`μ = ∞` meaning `y ≡ 0`). On top of construction and membership this
//! module provides Gaussian reduction, minimal and Voronoi vectors, exact
//! Voronoi cells and the interlacedness predicate on pairs of bases.
//!
//! All arithmetic is exact. Coordinates are bounded by `2^62` in absolute
//! value so that dot products and determinants fit in `i128`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::numtheory::{ensure_odd_prime, inverse_mod};

/// Largest absolute value of a coordinate accepted by [`LatticeBasis::new`].
pub const COORD_BOUND: i64 = 1 << 62;

/// Exact rational number with positive denominator in lowest terms.
pub type Rational = Ratio<i128>;

/// A point of the integer plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IVec2 {
    pub x: i64,
    pub y: i64,
}

impl IVec2 {
    pub const ZERO: IVec2 = IVec2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: IVec2) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    /// Squared Euclidean length.
    pub fn norm2(self) -> i128 {
        self.dot(self)
    }

    /// The determinant `self.x * other.y - self.y * other.x`.
    pub fn cross(self, other: IVec2) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// True on the open upper half-plane together with the positive x-axis.
    pub fn is_upper(self) -> bool {
        self.y > 0 || (self.y == 0 && self.x > 0)
    }

    /// The representative of `±self` in the upper half-plane (`y > 0`, or
    /// `y = 0` and `x > 0`).
    pub fn canonical(self) -> Self {
        if self.is_upper() || self.is_zero() {
            self
        } else {
            -self
        }
    }

    /// `self + k * other`, computed in 128 bits.
    ///
    /// Panics if the result leaves the `i64` range.
    pub fn add_scaled(self, k: i128, other: IVec2) -> Self {
        let x = self.x as i128 + k * other.x as i128;
        let y = self.y as i128 + k * other.y as i128;
        Self::new(
            i64::try_from(x).expect("coordinate overflow"),
            i64::try_from(y).expect("coordinate overflow"),
        )
    }

    fn in_bounds(self) -> bool {
        self.x.unsigned_abs() <= COORD_BOUND as u64 && self.y.unsigned_abs() <= COORD_BOUND as u64
    }
}

impl fmt::Display for IVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for IVec2 {
    type Output = IVec2;
    fn add(self, rhs: IVec2) -> IVec2 {
        IVec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for IVec2 {
    type Output = IVec2;
    fn sub(self, rhs: IVec2) -> IVec2 {
        IVec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for IVec2 {
    type Output = IVec2;
    fn neg(self) -> IVec2 {
        IVec2::new(-self.x, -self.y)
    }
}

impl Mul<i64> for IVec2 {
    type Output = IVec2;
    fn mul(self, k: i64) -> IVec2 {
        IVec2::new(self.x * k, self.y * k)
    }
}

/// Compares the polar angles of two nonzero vectors in `[0, 2π)`.
pub(crate) fn cmp_angle(a: IVec2, b: IVec2) -> Ordering {
    let half = |v: IVec2| if v.is_upper() { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// An ordered pair of linearly independent integer vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    u: IVec2,
    v: IVec2,
}

impl LatticeBasis {
    /// Rejects dependent pairs and coordinates beyond [`COORD_BOUND`].
    pub fn new(u: IVec2, v: IVec2) -> Result<Self> {
        for w in [u, v] {
            if !w.in_bounds() {
                let bad = if w.x.unsigned_abs() > COORD_BOUND as u64 {
                    w.x
                } else {
                    w.y
                };
                return Err(Error::CoordinateOutOfRange(bad));
            }
        }
        if u.cross(v) == 0 {
            return Err(Error::DependentBasis);
        }
        Ok(Self { u, v })
    }

    pub fn u(&self) -> IVec2 {
        self.u
    }

    pub fn v(&self) -> IVec2 {
        self.v
    }

    /// Swaps the two vectors.
    pub fn swapped(&self) -> Self {
        Self {
            u: self.v,
            v: self.u,
        }
    }

    /// Whether `w` is an integer combination of `u` and `v`.
    pub fn contains(&self, w: IVec2) -> bool {
        let d = det(self);
        w.cross(self.v) % d == 0 && self.u.cross(w) % d == 0
    }

    /// Whether both bases generate the same lattice.
    pub fn same_lattice(&self, other: &LatticeBasis) -> bool {
        det(self).abs() == det(other).abs() && other.contains(self.u) && other.contains(self.v)
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.u, self.v)
    }
}

/// A point of the projective line over `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(u64),
    Infinity,
}

/// Labels the index-`p` sublattice `Λ_μ(p)` of `Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlopeClass {
    p: u64,
    slope: Slope,
}

impl SlopeClass {
    pub fn finite(p: u64, mu: u64) -> Result<Self> {
        ensure_odd_prime(p)?;
        if mu >= p {
            return Err(Error::SlopeOutOfRange { p, mu });
        }
        Ok(Self {
            p,
            slope: Slope::Finite(mu),
        })
    }

    pub fn infinity(p: u64) -> Result<Self> {
        ensure_odd_prime(p)?;
        Ok(Self {
            p,
            slope: Slope::Infinity,
        })
    }

    /// All `p + 1` slope classes: `0, 1, ..., p-1, ∞`.
    pub fn all(p: u64) -> Result<Vec<Self>> {
        ensure_odd_prime(p)?;
        Ok((0..p)
            .map(Slope::Finite)
            .chain(std::iter::once(Slope::Infinity))
            .map(|slope| Self { p, slope })
            .collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    pub fn mu(&self) -> Option<u64> {
        match self.slope {
            Slope::Finite(mu) => Some(mu),
            Slope::Infinity => None,
        }
    }

    /// Image under `(x, y) ↦ (-x, y)`: `μ ↦ -μ`.
    pub fn reflect_vertical(&self) -> Self {
        let slope = match self.slope {
            Slope::Finite(mu) => Slope::Finite((self.p - mu) % self.p),
            Slope::Infinity => Slope::Infinity,
        };
        Self { p: self.p, slope }
    }

    /// Image under `(x, y) ↦ (y, x)`: `μ ↦ μ⁻¹`, exchanging `0` and `∞`.
    pub fn reflect_diagonal(&self) -> Self {
        let slope = match self.slope {
            Slope::Finite(0) => Slope::Infinity,
            Slope::Finite(mu) => Slope::Finite(inverse_mod(mu, self.p).unwrap()),
            Slope::Infinity => Slope::Finite(0),
        };
        Self { p: self.p, slope }
    }

    /// Whether the slope is one of `0, 1, p-1, ∞`.
    pub fn is_degenerate(&self) -> bool {
        match self.slope {
            Slope::Finite(mu) => mu <= 1 || mu == self.p - 1,
            Slope::Infinity => true,
        }
    }
}

impl fmt::Display for SlopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slope {
            Slope::Finite(mu) => write!(f, "Λ_{}({})", mu, self.p),
            Slope::Infinity => write!(f, "Λ_∞({})", self.p),
        }
    }
}

/// Voronoi-relevant vectors and the exact Voronoi cell of the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiData {
    /// One representative (upper half-plane) per `±` pair; two for a
    /// rectangular cell, three for a hexagonal one.
    pub vectors: Vec<IVec2>,
    /// Cell vertices in counterclockwise order.
    pub cell_vertices: Vec<(Rational, Rational)>,
}

/// `u.x * v.y - u.y * v.x`; its absolute value is the index of the lattice
/// in `Z^2`.
pub fn det(b: &LatticeBasis) -> i128 {
    b.u.cross(b.v)
}

/// The basis `(p, 0), (-μ, 1)` of `Λ_μ(p)`, or `(1, 0), (0, p)` for `μ = ∞`.
pub fn lambda_mu(s: &SlopeClass) -> LatticeBasis {
    let p = s.p as i64;
    let (u, v) = match s.slope {
        Slope::Finite(mu) => (IVec2::new(p, 0), IVec2::new(-(mu as i64), 1)),
        Slope::Infinity => (IVec2::new(1, 0), IVec2::new(0, p)),
    };
    LatticeBasis { u, v }
}

/// Membership in `Λ_s`.
pub fn contains(s: &SlopeClass, w: IVec2) -> bool {
    let p = s.p as i128;
    match s.slope {
        Slope::Finite(mu) => (w.x as i128 + mu as i128 * w.y as i128).rem_euclid(p) == 0,
        Slope::Infinity => (w.y as i128).rem_euclid(p) == 0,
    }
}

/// Lattice points of `Λ_s` in the closed box `[x0, x1] × [y0, y1]`, row by row.
pub fn points_in_box(
    s: &SlopeClass,
    (x0, x1): (i64, i64),
    (y0, y1): (i64, i64),
) -> impl Iterator<Item = IVec2> + '_ {
    let p = s.p as i64;
    (y0..=y1).flat_map(move |y| {
        let (start, step) = match s.slope {
            Slope::Finite(mu) => {
                // x ≡ -μy (mod p)
                let r = (-(mu as i128) * y as i128).rem_euclid(p as i128) as i64;
                let first = x0 + (r - x0).rem_euclid(p);
                (first, p)
            }
            Slope::Infinity if y.rem_euclid(p) == 0 => (x0, 1),
            Slope::Infinity => (x1 + 1, 1),
        };
        (0..)
            .map(move |i| start + i * step)
            .take_while(move |&x| x <= x1)
            .map(move |x| IVec2::new(x, y))
    })
}

/// The integer `k` minimizing `|long + k * short|`, i.e. the nearest integer
/// to `-<long, short> / <short, short>`. An exact half is resolved towards
/// the `k` of smaller absolute value.
fn nearest_shift(long: IVec2, short: IVec2) -> i128 {
    let num = -long.dot(short);
    let den = short.norm2();
    let (floor, rem) = num.div_mod_floor(&den);
    match (2 * rem).cmp(&den) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor >= 0 {
                floor
            } else {
                floor + 1
            }
        }
    }
}

/// Gaussian (Lagrange) reduction.
///
/// Returns `(r, s)` spanning the same lattice with `<r,r> <= <s,s>` and
/// `2|<r,s>| <= <r,r>`, so `r` is a minimal vector. Both vectors are
/// canonicalized to the upper half-plane; when their norms tie, `r` is the
/// one with larger `y`, then larger `x`.
pub fn gauss_reduce(b: &LatticeBasis) -> LatticeBasis {
    let (mut long, mut short) = if b.u.norm2() >= b.v.norm2() {
        (b.u, b.v)
    } else {
        (b.v, b.u)
    };
    loop {
        let k = nearest_shift(long, short);
        let candidate = long.add_scaled(k, short);
        if candidate.norm2() < short.norm2() {
            long = short;
            short = candidate;
        } else {
            long = candidate;
            break;
        }
    }
    let (mut r, mut s) = (short.canonical(), long.canonical());
    if r.norm2() == s.norm2() && (s.y, s.x) > (r.y, r.x) {
        std::mem::swap(&mut r, &mut s);
    }
    LatticeBasis { u: r, v: s }
}

/// Whether `b` is a basis of `Λ_s`.
pub fn is_basis_of_slope(b: &LatticeBasis, s: &SlopeClass) -> bool {
    contains(s, b.u) && contains(s, b.v) && det(b).unsigned_abs() == s.p as u128
}

fn in_closed_triangle(a: IVec2, b: IVec2, c: IVec2, q: IVec2) -> bool {
    let d1 = (b - a).cross(q - a).signum();
    let d2 = (c - b).cross(q - b).signum();
    let d3 = (a - c).cross(q - c).signum();
    let has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    let has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(has_neg && has_pos)
}

/// Basis test by direct scan: `e, f` is a basis of `Λ_s` iff the closed
/// triangle `0, e, f` holds no lattice point besides its vertices.
///
/// Scans the triangle's bounding box, so the cost grows with its area.
/// Returns `false` if `e` or `f` is outside `Λ_s` or the pair is dependent.
pub fn triangle_basis_test(e: IVec2, f: IVec2, s: &SlopeClass) -> bool {
    if e.cross(f) == 0 || !contains(s, e) || !contains(s, f) {
        return false;
    }
    let o = IVec2::ZERO;
    let xs = (e.x.min(f.x).min(0), e.x.max(f.x).max(0));
    let ys = (e.y.min(f.y).min(0), e.y.max(f.y).max(0));
    !points_in_box(s, xs, ys).any(|q| q != o && q != e && q != f && in_closed_triangle(o, e, f, q))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `w ∈ Λ_s` is primitive, i.e. `w / k ∉ Λ_s` for every integer
/// `k > 1`. It suffices to test the prime divisors of `gcd(x, y)`.
pub fn is_primitive(w: IVec2, s: &SlopeClass) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !contains(s, w) {
        return Err(Error::NotInLattice(w.to_string()));
    }
    let g = w.x.unsigned_abs().gcd(&w.y.unsigned_abs());
    Ok(prime_factors(g).into_iter().all(|q| {
        let q = q as i64;
        !contains(s, IVec2::new(w.x / q, w.y / q))
    }))
}

/// A shortest nonzero vector, in its canonical upper half-plane sign.
pub fn minimal_vector(b: &LatticeBasis) -> IVec2 {
    gauss_reduce(b).u
}

/// Voronoi-relevant vectors from the reduced basis `e, f`: `{e, f}` when
/// they are orthogonal, otherwise `{e, f, e - εf}` with `ε` the sign of
/// `<e, f>`. Each is returned as its upper half-plane representative.
pub fn voronoi_vectors(b: &LatticeBasis) -> Vec<IVec2> {
    let r = gauss_reduce(b);
    let (e, f) = (r.u, r.v);
    match e.dot(f).signum() {
        0 => vec![e, f],
        eps => vec![e, f, e.add_scaled(-eps, f).canonical()],
    }
}

/// Intersection of the edge lines `2<x, w1> = <w1, w1>` and
/// `2<x, w2> = <w2, w2>`.
fn edge_intersection(w1: IVec2, w2: IVec2) -> (Rational, Rational) {
    let (n1, n2) = (w1.norm2(), w2.norm2());
    let den = 2 * w1.cross(w2);
    let x = n1 * w2.y as i128 - n2 * w1.y as i128;
    let y = n2 * w1.x as i128 - n1 * w2.x as i128;
    (Rational::new(x, den), Rational::new(y, den))
}

fn rational_is_upper((x, y): &(Rational, Rational)) -> bool {
    *y > Rational::from(0) || (y.numer() == &0 && *x > Rational::from(0))
}

/// The exact Voronoi cell `{x : 2<x, w> <= <w, w>}` of the origin.
///
/// Vertices come in counterclockwise order, starting from the vertex whose
/// polar angle is the largest one below `π`.
pub fn voronoi_cell(b: &LatticeBasis) -> VoronoiData {
    let vectors = voronoi_vectors(b);
    let mut normals: Vec<IVec2> = vectors.iter().flat_map(|&w| [w, -w]).collect();
    normals.sort_by(|&a, &b| cmp_angle(a, b));
    let n = normals.len();
    let mut vertices: Vec<_> = (0..n)
        .map(|i| edge_intersection(normals[i], normals[(i + 1) % n]))
        .collect();
    // The cell is centrally symmetric, so exactly one upper vertex is
    // followed by a lower one.
    let start = (0..n)
        .find(|&i| rational_is_upper(&vertices[i]) && !rational_is_upper(&vertices[(i + 1) % n]))
        .expect("centrally symmetric cell");
    vertices.rotate_left(start);
    VoronoiData {
        vectors,
        cell_vertices: vertices,
    }
}

/// Shoelace area of a polygon with rational vertices.
pub fn polygon_area(vertices: &[(Rational, Rational)]) -> Rational {
    let n = vertices.len();
    let twice: Rational = (0..n)
        .map(|i| {
            let (x0, y0) = vertices[i];
            let (x1, y1) = vertices[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    num_traits::Signed::abs(&(twice / 2))
}

/// Whether the lines spanned by `f1, f2` separate those spanned by `g1, g2`
/// on the projective circle (all four lines distinct).
pub fn interlaced(f1: IVec2, f2: IVec2, g1: IVec2, g2: IVec2) -> Result<bool> {
    let lines = [f1, f2, g1, g2];
    if lines.iter().any(|w| w.is_zero()) {
        return Err(Error::ZeroVector);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if lines[i].cross(lines[j]) == 0 {
                return Ok(false);
            }
        }
    }
    // Upper half-plane representatives have angles in [0, π), so the cross
    // product orders them.
    let (mut a, mut b) = (f1.canonical(), f2.canonical());
    if a.cross(b) < 0 {
        std::mem::swap(&mut a, &mut b);
    }
    let between = |g: IVec2| {
        let g = g.canonical();
        a.cross(g) > 0 && g.cross(b) > 0
    };
    Ok(between(g1) != between(g2))
}
