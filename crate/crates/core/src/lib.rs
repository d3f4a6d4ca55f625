//! Decompositions `p = ab + cd` of an odd prime with `min(a, b) > max(c, d)`.
//!
//! There are exactly `(p + 1) / 2` of them. Apart from the two degenerate
//! ones `p·1 + 0·0` and `1·p + 0·0`, each one is the standard black windmill
//! basis `(a, c), (-d, b)` of exactly one index-`p` sublattice `Λ_μ(p)` of
//! `Z^2`, and the mirror pair `{Λ_μ(p), Λ_{p-μ}(p)}` carries exactly one
//! such basis. [`decomp::enumerate_fast`] walks these pairs with Gaussian
//! reduction and Voronoi vectors; [`decomp::enumerate_bruteforce`] is the
//! independent check.
//!
//! Modules:
//! - [`numtheory`]: primality, modular powers, square roots of -1.
//! - [`lattice2d`]: sublattices of `Z^2`, reduction, Voronoi cells.
//! - [`windmill`]: windmill cones and bases, standard bases, the fast path.
//! - [`decomp`]: solution sets, four-group orbits, sums of two squares,
//!   irreducible matrices.
//! - [`render`]: SVG tilings and lattice pictures.

pub mod decomp;
pub mod error;
pub mod lattice2d;
pub mod numtheory;
pub mod render;
pub mod windmill;

pub use error::{Error, Result};
pub use lattice2d::{IVec2, LatticeBasis, Rational, Slope, SlopeClass, VoronoiData};
pub use windmill::{Color, Cone, Solution, WindmillBasisSet};
