//! SVG pictures: two-rectangle tilings of solutions and lattice diagrams
//! with windmill cones, the Voronoi cell and basis arrows.
//!
//! Output is plain SVG 1.1 text at a fixed 10 pixels per lattice unit, with
//! the y-axis pointing up in lattice coordinates.

use std::fmt::{self, Write};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice2d::{gauss_reduce, lambda_mu, points_in_box, voronoi_cell, IVec2, SlopeClass};
use crate::windmill::{standard_black_basis, Solution};

/// Pixels per lattice unit.
pub const SCALE: i64 = 10;
/// Largest `extent` accepted by [`tiling_svg`].
pub const MAX_TILING_EXTENT: u32 = 50;
/// Largest `extent` accepted by [`lattice_svg`].
pub const MAX_LATTICE_EXTENT: u32 = 200;
/// Largest prime accepted by [`lattice_svg`].
pub const MAX_LATTICE_P: u64 = 1000;

const LARGE_FILL: &str = "#3b6ea5";
const SMALL_FILL: &str = "#f0a830";
const CONE_FILL: &str = "#d9d9d9";
const POINT_FILL: &str = "#202020";
const VORONOI_STROKE: &str = "#c0392b";
const REDUCED_STROKE: &str = "#2e86c1";
const STANDARD_STROKE: &str = "#27ae60";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument {
    pub width: u32,
    pub height: u32,
    pub body: String,
}

impl fmt::Display for SvgDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
        writeln!(
            f,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = self.width,
            h = self.height
        )?;
        f.write_str(&self.body)?;
        writeln!(f, "</svg>")
    }
}

fn check_extent(extent: u32, max: u32) -> Result<()> {
    if extent == 0 {
        return Err(Error::NonPositive);
    }
    if extent > max {
        return Err(Error::TooLarge {
            what: "extent",
            value: extent as u64,
            bound: max as u64,
        });
    }
    Ok(())
}

/// Maps lattice coordinates to pixels for a viewport `[x0, x0 + w] × [y0, y0 + h]`.
#[derive(Clone, Copy)]
struct Frame {
    x0: i64,
    y0: i64,
    h: i64,
}

impl Frame {
    fn px(&self, x: i64) -> i64 {
        (x - self.x0) * SCALE
    }

    fn py(&self, y: i64) -> i64 {
        (self.y0 + self.h - y) * SCALE
    }

    fn fx(&self, x: f64) -> f64 {
        (x - self.x0 as f64) * SCALE as f64
    }

    fn fy(&self, y: f64) -> f64 {
        (self.y0 as f64 + self.h as f64 - y) * SCALE as f64
    }
}

/// The two rectangles of the fundamental domain of a solution, as
/// `(x0, y0, width, height)` in lattice units: the `a×b` rectangle at the
/// origin and the `d×c` rectangle on top of it, flush with its right edge.
pub fn fundamental_domain(sol: &Solution) -> [(i64, i64, i64, i64); 2] {
    let (a, b, c, d) = sol.tuple();
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    [(0, 0, a, b), (a - d, b, d, c)]
}

/// Tiling of the plane by translates of the fundamental domain under
/// `Z(a, c) + Z(-d, b)`.
///
/// The viewport is `[0, extent·(a+d)] × [0, extent·(b+c)]`. Degenerate
/// solutions (`cd = 0`) draw the single `a×b` brick.
pub fn tiling_svg(sol: &Solution, extent: u32) -> Result<SvgDocument> {
    check_extent(extent, MAX_TILING_EXTENT)?;
    let (a, b, c, d) = sol.tuple();
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    let p = sol.p() as i64;
    let e = extent as i64;
    let (w, h) = (e * (a + d), e * (b + c));
    let frame = Frame { x0: 0, y0: 0, h };

    // A translate t meets the viewport only if t lies in the box below.
    let (bx0, bx1, by0, by1) = (-a, w, -(b + c), h);
    // Coordinates of t in the basis u = (a, c), v = (-d, b).
    let coord_i = |x: i64, y: i64| b * x + d * y;
    let coord_j = |x: i64, y: i64| -c * x + a * y;
    let corners = [(bx0, by0), (bx0, by1), (bx1, by0), (bx1, by1)];
    let range = |f: &dyn Fn(i64, i64) -> i64| {
        let vals = corners.map(|(x, y)| f(x, y));
        let lo = Integer::div_floor(vals.iter().min().unwrap(), &p);
        let hi = Integer::div_ceil(vals.iter().max().unwrap(), &p);
        lo..=hi
    };

    let mut body = String::new();
    writeln!(
        body,
        r#"<rect class="background" x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        w * SCALE,
        h * SCALE
    )
    .unwrap();
    let domain = fundamental_domain(sol);
    for i in range(&coord_i) {
        for j in range(&coord_j) {
            let (tx, ty) = (i * a - j * d, i * c + j * b);
            if tx >= w || tx + a <= 0 || ty >= h || ty + b + c <= 0 {
                continue;
            }
            for (k, &(x0, y0, rw, rh)) in domain.iter().enumerate() {
                if rw == 0 || rh == 0 {
                    continue;
                }
                let (class, fill) = if k == 0 {
                    ("large", LARGE_FILL)
                } else {
                    ("small", SMALL_FILL)
                };
                writeln!(
                    body,
                    r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="white" stroke-width="1"/>"#,
                    frame.px(tx + x0),
                    frame.py(ty + y0 + rh),
                    rw * SCALE,
                    rh * SCALE
                )
                .unwrap();
            }
        }
    }
    Ok(SvgDocument {
        width: (w * SCALE) as u32,
        height: (h * SCALE) as u32,
        body,
    })
}

fn arrow(body: &mut String, frame: &Frame, w: IVec2, class: &str, stroke: &str) {
    writeln!(
        body,
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="2" marker-end="url(#head-{class})"/>"#,
        frame.px(0),
        frame.py(0),
        frame.px(w.x),
        frame.py(w.y)
    )
    .unwrap();
}

/// Points of `Λ_s` in `[-extent, extent]²` over the shaded black windmill
/// cones, with the Voronoi cell of the origin, the reduced basis and, for
/// black lattices, the standard windmill basis.
pub fn lattice_svg(s: &SlopeClass, extent: u32) -> Result<SvgDocument> {
    check_extent(extent, MAX_LATTICE_EXTENT)?;
    if s.p() > MAX_LATTICE_P {
        return Err(Error::TooLarge {
            what: "p",
            value: s.p(),
            bound: MAX_LATTICE_P,
        });
    }
    let e = extent as i64;
    let frame = Frame {
        x0: -e,
        y0: -e,
        h: 2 * e,
    };
    let side = 2 * e * SCALE;
    let mut body = String::new();

    body.push_str("<defs>\n");
    for (class, stroke) in [("reduced", REDUCED_STROKE), ("standard", STANDARD_STROKE)] {
        writeln!(
            body,
            r#"<marker id="head-{class}" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="{stroke}"/></marker>"#
        )
        .unwrap();
    }
    body.push_str("</defs>\n");
    writeln!(
        body,
        r#"<rect class="background" x="0" y="0" width="{side}" height="{side}" fill="white"/>"#
    )
    .unwrap();

    // E-NE, N-NW, W-SW, S-SE
    let cones = [
        [(0, 0), (e, 0), (e, e)],
        [(0, 0), (0, e), (-e, e)],
        [(0, 0), (-e, 0), (-e, -e)],
        [(0, 0), (0, -e), (e, -e)],
    ];
    for tri in cones {
        let pts: Vec<String> = tri
            .iter()
            .map(|&(x, y)| format!("{},{}", frame.px(x), frame.py(y)))
            .collect();
        writeln!(
            body,
            r#"<polygon class="cone" points="{}" fill="{CONE_FILL}"/>"#,
            pts.join(" ")
        )
        .unwrap();
    }
    for (x1, y1, x2, y2) in [(-e, 0, e, 0), (0, -e, 0, e), (-e, -e, e, e), (-e, e, e, -e)] {
        writeln!(
            body,
            r##"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-width="0.5"/>"##,
            frame.px(x1),
            frame.py(y1),
            frame.px(x2),
            frame.py(y2)
        )
        .unwrap();
    }

    let basis = lambda_mu(s);
    let cell = voronoi_cell(&basis);
    let pts: Vec<String> = cell
        .cell_vertices
        .iter()
        .map(|(x, y)| {
            let x = *x.numer() as f64 / *x.denom() as f64;
            let y = *y.numer() as f64 / *y.denom() as f64;
            format!("{:.3},{:.3}", frame.fx(x), frame.fy(y))
        })
        .collect();
    writeln!(
        body,
        r#"<polygon class="voronoi" points="{}" fill="none" stroke="{VORONOI_STROKE}" stroke-width="1.5"/>"#,
        pts.join(" ")
    )
    .unwrap();

    let reduced = gauss_reduce(&basis);
    arrow(&mut body, &frame, reduced.u(), "reduced", REDUCED_STROKE);
    arrow(&mut body, &frame, reduced.v(), "reduced", REDUCED_STROKE);
    if !s.is_degenerate() {
        if let Some(sol) = standard_black_basis(s)? {
            let std_basis = sol.basis();
            arrow(
                &mut body,
                &frame,
                std_basis.u(),
                "standard",
                STANDARD_STROKE,
            );
            arrow(
                &mut body,
                &frame,
                std_basis.v(),
                "standard",
                STANDARD_STROKE,
            );
        }
    }

    for w in points_in_box(s, (-e, e), (-e, e)) {
        writeln!(
            body,
            r#"<circle class="point" cx="{}" cy="{}" r="2.5" fill="{POINT_FILL}"/>"#,
            frame.px(w.x),
            frame.py(w.y)
        )
        .unwrap();
    }

    Ok(SvgDocument {
        width: side as u32,
        height: side as u32,
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(p: u64, a: u64, b: u64, c: u64, d: u64) -> Solution {
        Solution::new(p, a, b, c, d).unwrap()
    }

    #[test]
    fn fundamental_domain_layout() {
        assert_eq!(
            fundamental_domain(&sol(37, 7, 5, 2, 1)),
            [(0, 0, 7, 5), (6, 5, 1, 2)]
        );
    }

    #[test]
    fn tiling_rejects_bad_extent() {
        let s = sol(5, 2, 2, 1, 1);
        assert_eq!(tiling_svg(&s, 0), Err(Error::NonPositive));
        assert!(tiling_svg(&s, 51).is_err());
    }

    #[test]
    fn degenerate_tiling_has_single_bricks() {
        let doc = tiling_svg(&sol(7, 7, 1, 0, 0), 2).unwrap().to_string();
        assert!(!doc.contains(r#"class="small""#));
        assert!(doc.contains(r#"class="large""#));
    }

    #[test]
    fn lattice_svg_guards() {
        let s = SlopeClass::finite(1009, 7).unwrap();
        assert!(lattice_svg(&s, 8).is_err());
        let s = SlopeClass::finite(13, 7).unwrap();
        assert!(lattice_svg(&s, 201).is_err());
    }

    #[test]
    fn lattice_svg_is_deterministic() {
        let s = SlopeClass::finite(13, 7).unwrap();
        assert_eq!(lattice_svg(&s, 8).unwrap(), lattice_svg(&s, 8).unwrap());
    }
}
