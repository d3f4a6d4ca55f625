use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use windmill::lattice2d::{contains, points_in_box};
use windmill::render::{lattice_svg, tiling_svg, SCALE};
use windmill::{IVec2, SlopeClass, Solution};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn attr(node: &roxmltree::Node, name: &str) -> i64 {
    node.attribute(name)
        .unwrap_or_else(|| panic!("missing {name}"))
        .parse()
        .unwrap_or_else(|_| panic!("{name} is not an integer"))
}

/// `(class, x0, y0, x1, y1)` in lattice units, y pointing up.
type Rect = (String, i64, i64, i64, i64);

fn tiling_rects(svg: &str) -> (i64, i64, Vec<Rect>) {
    let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let w = attr(&root, "width") / SCALE;
    let h = attr(&root, "height") / SCALE;
    let rects = root
        .descendants()
        .filter(|n| n.has_tag_name("rect"))
        .filter_map(|n| {
            let class = n.attribute("class")?;
            if class == "background" {
                return None;
            }
            let (x, y) = (attr(&n, "x"), attr(&n, "y"));
            let (rw, rh) = (attr(&n, "width"), attr(&n, "height"));
            assert!([x, y, rw, rh].iter().all(|v| v % SCALE == 0));
            let x0 = x / SCALE;
            let y1 = h - y / SCALE;
            Some((class.to_owned(), x0, y1 - rh / SCALE, x0 + rw / SCALE, y1))
        })
        .collect();
    (w, h, rects)
}

fn check_tiling(sol: &Solution, extent: u32) {
    let svg = tiling_svg(sol, extent).unwrap().to_string();
    let (w, h, rects) = tiling_rects(&svg);
    let (a, b, c, d) = sol.tuple();
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);

    for (class, x0, y0, x1, y1) in &rects {
        let dims = (x1 - x0, y1 - y0);
        match class.as_str() {
            "large" => assert_eq!(dims, (a, b)),
            "small" => assert_eq!(dims, (d, c)),
            other => panic!("unexpected class {other}"),
        }
    }

    // Every unit square of the viewport is covered exactly once.
    for x in 0..w {
        for y in 0..h {
            let n = rects
                .iter()
                .filter(|(_, x0, y0, x1, y1)| *x0 <= x && x < *x1 && *y0 <= y && y < *y1)
                .count();
            assert_eq!(n, 1, "unit square at ({x},{y}) covered {n} times");
        }
    }

    // Corner set is invariant under both generators away from the border.
    let corners: HashSet<(i64, i64)> = rects
        .iter()
        .flat_map(|&(_, x0, y0, x1, y1)| [(x0, y0), (x0, y1), (x1, y0), (x1, y1)])
        .collect();
    let (mx, my) = (a + d, b + c);
    let interior = |(x, y): (i64, i64)| mx <= x && x <= w - mx && my <= y && y <= h - my;
    let mut checked = 0;
    for &q in &corners {
        for (gx, gy) in [(a, c), (-d, b), (-a, -c), (d, -b)] {
            let image = (q.0 + gx, q.1 + gy);
            if interior(q) && interior(image) {
                assert!(corners.contains(&image), "{q:?} + ({gx},{gy}) missing");
                checked += 1;
            }
        }
    }
    assert!(checked > 0, "viewport interior is empty");
}

#[test]
fn tiling_for_p37() {
    check_tiling(&Solution::new(37, 7, 5, 2, 1).unwrap(), 4);
    check_tiling(&Solution::new(37, 7, 5, 1, 2).unwrap(), 4);
}

#[test]
fn tiling_square_pair_for_p5() {
    check_tiling(&Solution::new(5, 2, 2, 1, 1).unwrap(), 6);
}

#[test]
fn tiling_every_solution_small_primes() {
    for p in [3u64, 7, 13, 29, 31] {
        for sol in windmill::decomp::enumerate_fast(p).unwrap() {
            check_tiling(&sol, 3);
        }
    }
}

#[test]
fn degenerate_tiling_is_bricks() {
    let svg = tiling_svg(&Solution::new(7, 7, 1, 0, 0).unwrap(), 3)
        .unwrap()
        .to_string();
    let (_, _, rects) = tiling_rects(&svg);
    assert!(rects
        .iter()
        .all(|r| r.0 == "large" && r.3 - r.1 == 7 && r.4 - r.2 == 1));
}

fn circles(svg: &str, extent: i64) -> BTreeSet<IVec2> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
    doc.descendants()
        .filter(|n| n.has_tag_name("circle") && n.attribute("class") == Some("point"))
        .map(|n| {
            let (cx, cy) = (attr(&n, "cx"), attr(&n, "cy"));
            assert!(cx % SCALE == 0 && cy % SCALE == 0);
            IVec2::new(cx / SCALE - extent, extent - cy / SCALE)
        })
        .collect()
}

fn count_class(svg: &str, tag: &str, class: &str) -> usize {
    let doc = roxmltree::Document::parse(svg).unwrap();
    doc.descendants()
        .filter(|n| n.has_tag_name(tag) && n.attribute("class") == Some(class))
        .count()
}

#[test]
fn lattice_points_are_members() {
    for p in [3u64, 5, 13, 31] {
        for s in SlopeClass::all(p).unwrap() {
            let svg = lattice_svg(&s, 8).unwrap().to_string();
            let pts = circles(&svg, 8);
            assert!(pts.iter().all(|&w| contains(&s, w)), "{s}");
            let expected: BTreeSet<IVec2> = points_in_box(&s, (-8, 8), (-8, 8)).collect();
            assert_eq!(pts, expected, "{s}");
            assert_eq!(count_class(&svg, "polygon", "voronoi"), 1);
            assert_eq!(count_class(&svg, "polygon", "cone"), 4);
        }
    }
}

#[test]
fn running_example_picture() {
    let s = SlopeClass::finite(13, 7).unwrap();
    let svg = lattice_svg(&s, 8).unwrap().to_string();
    let pts = circles(&svg, 8);
    for (x, y) in [(-1, 2), (5, 3), (6, 1), (0, 0), (1, -2)] {
        assert!(pts.contains(&IVec2::new(x, y)));
    }
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let cell = doc
        .descendants()
        .find(|n| n.attribute("class") == Some("voronoi"))
        .unwrap();
    assert_eq!(cell.attribute("points").unwrap().split(' ').count(), 6);
    assert_eq!(count_class(&svg, "line", "reduced"), 2);
    assert_eq!(count_class(&svg, "line", "standard"), 2);

    // (13, 0) lies outside extent 8; widen to see it.
    let wide = lattice_svg(&s, 13).unwrap().to_string();
    assert!(circles(&wide, 13).contains(&IVec2::new(13, 0)));
}

#[test]
fn degenerate_picture_has_no_windmill_arrows() {
    let s = SlopeClass::finite(13, 0).unwrap();
    let svg = lattice_svg(&s, 8).unwrap().to_string();
    assert_eq!(count_class(&svg, "line", "standard"), 0);
    assert_eq!(count_class(&svg, "line", "reduced"), 2);
}

#[test]
fn white_picture_has_no_standard_arrows() {
    let s = SlopeClass::finite(13, 6).unwrap();
    let svg = lattice_svg(&s, 8).unwrap().to_string();
    assert_eq!(count_class(&svg, "line", "standard"), 0);
}

#[test]
fn golden_running_example_lattice() {
    let svg = lattice_svg(&SlopeClass::finite(13, 7).unwrap(), 8)
        .unwrap()
        .to_string();
    let golden = std::fs::read_to_string(golden_path("lattice_13_7.svg")).unwrap();
    assert_eq!(svg, golden);
}

#[test]
fn golden_tiling_p37() {
    let svg = tiling_svg(&Solution::new(37, 7, 5, 2, 1).unwrap(), 4)
        .unwrap()
        .to_string();
    let golden = std::fs::read_to_string(golden_path("tiling_37_7_5_2_1.svg")).unwrap();
    assert_eq!(svg, golden);
}
