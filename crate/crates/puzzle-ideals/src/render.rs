//! Tiling renderers.
//!
//! Two output formats are provided: a compact ASCII picture with one glyph
//! per unit triangle (side labels on demand), and an SVG 1.1 drawing of the
//! triangle lattice using the reference color scheme (red 0-triangles, blue
//! 1-triangles, green rhombi, dark-green equivariant pieces annotated with
//! their drag weight).  Both renderers are pure functions of the tiling and
//! produce byte-identical output on repeated invocations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::constants::{drag_weight, StitchedPiece, Tiling};
use crate::gf3::F3;
use crate::grid::{Orientation, RhombusDirection, TriangleGrid};

/// Output format selector for [`render_tiling`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    /// One glyph per unit triangle, with trailing side labels.
    Ascii,
    /// SVG 1.1 lattice drawing.
    Svg,
}

/// Renders a tiling in the requested format.
pub fn render_tiling(tiling: &Tiling, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(tiling, true),
        RenderFormat::Svg => render_svg(tiling),
    }
}

/// Whether a stitched rhombus is an equivariant piece (bottom direction with
/// boundary values `(0,1,0,1)`).
fn is_equivariant(direction: RhombusDirection, values: [F3; 4]) -> bool {
    direction == RhombusDirection::Bottom
        && values == [F3::ZERO, F3::ONE, F3::ZERO, F3::ONE]
}

/// The display glyph for one unit triangle, derived from the stitched piece
/// covering it: `0`/`1` for the lone 0- and 1-triangles, `2` for any other
/// lone triangle, `L`/`R`/`B` for a rhombus half by direction, `E` for an
/// equivariant rhombus half.
fn glyph_map(tiling: &Tiling) -> BTreeMap<(Orientation, (usize, usize)), char> {
    let grid = TriangleGrid::new(tiling.n);
    let mut glyphs = BTreeMap::new();
    for piece in tiling.stitched() {
        match piece {
            StitchedPiece::Triangle { orientation, position, values } => {
                let glyph = if values == [F3::ZERO; 3] {
                    '0'
                } else if values == [F3::ONE; 3] {
                    '1'
                } else {
                    '2'
                };
                glyphs.insert((orientation, position), glyph);
            }
            StitchedPiece::Rhombus { direction, position, values } => {
                let glyph = if is_equivariant(direction, values) {
                    'E'
                } else {
                    match direction {
                        RhombusDirection::Left => 'L',
                        RhombusDirection::Right => 'R',
                        RhombusDirection::Bottom => 'B',
                    }
                };
                let placement = grid.rhombus(direction, position.0, position.1);
                glyphs.insert((Orientation::Up, placement.up), glyph);
                glyphs.insert((Orientation::Down, placement.down), glyph);
            }
        }
    }
    glyphs
}

/// Renders a tiling as an ASCII picture, one glyph per unit triangle.  Row
/// `r` lists its `2r - 1` triangles left to right; with `labels` set, the
/// side values of every unit triangle follow the picture.
pub fn render_ascii(tiling: &Tiling, labels: bool) -> String {
    let n = tiling.n;
    let glyphs = glyph_map(tiling);
    let mut out = String::new();
    for r in 1..=n {
        for _ in 0..(n - r) {
            out.push(' ');
        }
        for y in 1..=r {
            out.push(glyphs[&(Orientation::Up, (r, y))]);
            if y < r {
                out.push(glyphs[&(Orientation::Down, (r, y))]);
            }
        }
        out.push('\n');
    }
    if labels {
        for (orientation, (r, y), values) in tiling.atomic_pieces() {
            let name = match orientation {
                Orientation::Up => "up",
                Orientation::Down => "down",
            };
            let _ = writeln!(
                out,
                "{name} {r},{y}: {} {} {}",
                values[0].value(),
                values[1].value(),
                values[2].value()
            );
        }
    }
    out
}

/// Side length of a unit triangle in SVG user units.
const SIDE: f64 = 60.0;

/// Formats an SVG coordinate with a fixed precision so output is
/// byte-stable.
fn coord(v: f64) -> String {
    format!("{v:.2}")
}

/// The three vertices of a unit triangle, as `(x, y)` pairs with the apex of
/// the size-`n` triangle at the top.
fn triangle_vertices(n: usize, o: Orientation, r: usize, y: usize) -> [(f64, f64); 3] {
    let height = SIDE * 3.0_f64.sqrt() / 2.0;
    let half = SIDE / 2.0;
    let left = (n - r) as f64 * half + (y - 1) as f64 * SIDE;
    let top = (r - 1) as f64 * height;
    match o {
        Orientation::Up => [
            (left + half, top),
            (left + SIDE, top + height),
            (left, top + height),
        ],
        Orientation::Down => [
            (left + half, top),
            (left + SIDE + half, top),
            (left + SIDE, top + height),
        ],
    }
}

/// The four corners of a rhombus, computed as the union of its two unit
/// triangles with the shared edge removed.
fn rhombus_vertices(
    n: usize,
    up: (usize, usize),
    down: (usize, usize),
) -> [(f64, f64); 4] {
    let a = triangle_vertices(n, Orientation::Up, up.0, up.1);
    let b = triangle_vertices(n, Orientation::Down, down.0, down.1);
    let key = |p: (f64, f64)| ((p.0 * 100.0).round() as i64, (p.1 * 100.0).round() as i64);
    let shared: Vec<(f64, f64)> = a
        .iter()
        .copied()
        .filter(|&p| b.iter().any(|&q| key(q) == key(p)))
        .collect();
    let apex_a = a.iter().copied().find(|&p| !b.iter().any(|&q| key(q) == key(p)));
    let apex_b = b.iter().copied().find(|&p| !a.iter().any(|&q| key(q) == key(p)));
    let (apex_a, apex_b) = (apex_a.unwrap(), apex_b.unwrap());
    [apex_a, shared[0], apex_b, shared[1]]
}

/// Emits one SVG polygon element.
fn svg_polygon(out: &mut String, points: &[(f64, f64)], fill: &str) {
    let list: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{},{}", coord(x), coord(y)))
        .collect();
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"1\"/>",
        list.join(" ")
    );
}

/// Renders a tiling as a standalone SVG 1.1 document.
pub fn render_svg(tiling: &Tiling) -> String {
    let n = tiling.n;
    let grid = TriangleGrid::new(n);
    let height = SIDE * 3.0_f64.sqrt() / 2.0;
    let margin = 10.0;
    let width_px = SIDE * n as f64 + 2.0 * margin;
    let height_px = height * n as f64 + 2.0 * margin;
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        coord(width_px),
        coord(height_px),
        coord(width_px),
        coord(height_px)
    );
    let _ = writeln!(out, "<g transform=\"translate({margin},{margin})\">");
    let mut annotations = Vec::new();
    for piece in tiling.stitched() {
        match piece {
            StitchedPiece::Triangle { orientation, position, values } => {
                let fill = if values == [F3::ZERO; 3] {
                    "red"
                } else if values == [F3::ONE; 3] {
                    "blue"
                } else {
                    "gray"
                };
                let points = triangle_vertices(n, orientation, position.0, position.1);
                svg_polygon(&mut out, &points, fill);
            }
            StitchedPiece::Rhombus { direction, position, values } => {
                let placement = grid.rhombus(direction, position.0, position.1);
                let points = rhombus_vertices(n, placement.up, placement.down);
                if is_equivariant(direction, values) {
                    svg_polygon(&mut out, &points, "darkgreen");
                    let cx = points.iter().map(|p| p.0).sum::<f64>() / 4.0;
                    let cy = points.iter().map(|p| p.1).sum::<f64>() / 4.0;
                    let (i, j) = drag_weight(n, position);
                    annotations.push((cx, cy, i, j));
                } else {
                    svg_polygon(&mut out, &points, "green");
                }
            }
        }
    }
    for (cx, cy, i, j) in annotations {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" fill=\"white\">({i},{j})</text>",
            coord(cx),
            coord(cy + 5.0)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
