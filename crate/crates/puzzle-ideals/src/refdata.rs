//! Known-good reference data frozen into the library.
//!
//! This module collects the reference fixtures used by the regression and
//! acceptance tests: the two variety points of the size-6 reference
//! instance together with their stitched tilings, the eleven-row side-free
//! sweep table of the size-16 instance, the printed template polynomial
//! instances with their constraint tables, and the size-6 equivariant
//! reference tiling.

use crate::constants::{StitchedPiece, Tiling};
use crate::gf3::F3;
use crate::grid::{Orientation, RhombusDirection};
use crate::poly::PolyF3;

/// Left boundary word of the size-6 reference instance (partition (2,1)).
pub const SIZE6_LAMBDA: &str = "010101";
/// Right boundary word of the size-6 reference instance (partition (2,1)).
pub const SIZE6_MU: &str = "010101";
/// Bottom boundary word of the size-6 reference instance (partition
/// (3,2,1)).
pub const SIZE6_NU: &str = "101010";

/// The two points of the size-6 reference variety, as values of the 63
/// interval variables in index order.
pub const SIZE6_VARIETY_POINTS: [[u8; 63]; 2] = [
    [
        1, 0, 2, 0, 0, 1, 1, 0, 1, 1, 0, 0, 2, 0, 0, 2, 1, 0, 0, 0, 1, 1, 1, 1, 2, 1, 0, 1, 1, 0,
        1, 1, 2, 1, 1, 1, 1, 0, 0, 0, 1, 0, 1, 2, 0, 0, 2, 0, 0, 0, 2, 0, 0, 1, 1, 2, 1, 1, 0, 1,
        0, 1, 0,
    ],
    [
        1, 0, 2, 0, 0, 1, 1, 0, 1, 1, 1, 2, 1, 1, 0, 1, 0, 2, 0, 2, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1,
        1, 1, 1, 0, 0, 0, 0, 2, 0, 0, 1, 2, 0, 1, 0, 0, 2, 0, 0, 1, 1, 2, 1, 1, 1, 2, 1, 1, 0, 1,
        0, 1, 0,
    ],
];

/// The reference variety points as `F3` assignment vectors.
pub fn size6_variety_points() -> [Vec<F3>; 2] {
    SIZE6_VARIETY_POINTS.map(|point| point.iter().map(|&v| F3::new(i64::from(v))).collect())
}

/// A position-level signature of one stitched piece: `L`/`R`/`B` for rhombi
/// by direction, `0`/`1`/`2` plus `u`/`d` for lone triangles by value class
/// and orientation, each at its `(row, pos)` placement.
pub fn stitched_signature(tiling: &Tiling) -> Vec<String> {
    let mut out: Vec<String> = tiling
        .stitched()
        .iter()
        .map(|piece| match piece {
            StitchedPiece::Rhombus { direction, position, .. } => {
                let tag = match direction {
                    RhombusDirection::Left => 'L',
                    RhombusDirection::Right => 'R',
                    RhombusDirection::Bottom => 'B',
                };
                format!("{tag} {},{}", position.0, position.1)
            }
            StitchedPiece::Triangle { orientation, position, values } => {
                let class = if *values == [F3::ZERO; 3] {
                    '0'
                } else if *values == [F3::ONE; 3] {
                    '1'
                } else {
                    '2'
                };
                let tag = match orientation {
                    Orientation::Up => 'u',
                    Orientation::Down => 'd',
                };
                format!("{class}{tag} {},{}", position.0, position.1)
            }
        })
        .collect();
    out.sort();
    out
}

/// The stitched views of the two size-6 reference tilings, in
/// [`stitched_signature`] format (rhombi, then 0-triangles, then
/// 1-triangles, per figure).
pub fn size6_stitched_signatures() -> [Vec<String>; 2] {
    let raw: [&[&str]; 2] = [
        &[
            "R 6,1", "R 6,3", "R 3,2", "B 5,4", "B 3,1", "B 1,1", "L 6,5", "L 5,1", "L 4,3",
            "0u 6,2", "0u 6,4", "0u 5,5", "0u 4,1", "0u 3,3", "0u 2,1", "0d 6,2", "0d 5,4",
            "0d 3,1", "1u 6,5", "1u 5,1", "1u 5,3", "1u 4,2", "1u 4,3", "1u 2,2", "1d 5,2",
            "1d 5,3", "1d 4,2",
        ],
        &[
            "R 6,1", "R 5,4", "R 4,1", "B 5,2", "B 3,3", "B 1,1", "L 6,3", "L 6,5", "L 3,1",
            "0u 6,2", "0u 5,3", "0u 5,5", "0u 4,2", "0u 4,3", "0u 2,1", "0d 5,2", "0d 5,3",
            "0d 4,2", "1u 6,3", "1u 6,5", "1u 5,1", "1u 4,4", "1u 3,1", "1u 2,2", "1d 6,4",
            "1d 5,1", "1d 3,2",
        ],
    ];
    raw.map(|list| {
        let mut out: Vec<String> = list.iter().map(|s| s.to_string()).collect();
        out.sort();
        out
    })
}

/// Left boundary word of the size-16 sweep instance (partition
/// (8,7,6,5,4,3,2,1)).
pub const SWEEP16_LAMBDA: &str = "1010101010101010";
/// Right boundary word of the size-16 sweep instance (partition
/// (6,5,4,3,2,1,1)).
pub const SWEEP16_MU: &str = "0010101010101101";

/// The full side-free sweep table of the size-16 instance: the eleven
/// bottom words with nonzero counts.  The word set is reference data; the
/// counts are frozen from the tiling oracle, with the entry at
/// [`SWEEP16_HIGHLIGHT`] independently known good.
pub const SWEEP16_TABLE: [(&str, u64); 11] = [
    ("1101111110000000", 1),
    ("1110111101000000", 5),
    ("1111011011000000", 9),
    ("1111011100100000", 10),
    ("1111100111000000", 5),
    ("1111101010100000", 16),
    ("1111101100010000", 10),
    ("1111110001100000", 5),
    ("1111110010010000", 9),
    ("1111110100001000", 5),
    ("1111111000000100", 1),
];

/// The reference entry of the size-16 sweep table.
pub const SWEEP16_HIGHLIGHT: (&str, u64) = ("1111110100001000", 5);

/// The reference distinguishing polynomial for the plain refinement set
/// (both orientations), in variables `x1, x2, x3` for the sides in
/// canonical order.
pub fn printed_distinguishing_omega0() -> PolyF3 {
    PolyF3::parse("x1 + x1^2 + 2*x2 + x2^2 + x3^2 + x1*x2*x3 + 2*x1^2*x2*x3").unwrap()
}

/// The reference upward distinguishing polynomial for the equivariant
/// refinement set, in `x1, x2, x3` = (left, right, bottom).
pub fn printed_up_distinguishing_omega_t() -> PolyF3 {
    PolyF3::parse("x1^2*x2 + 2*x1*x2^2 + 2*x1^2 + x1").unwrap()
}

/// The reference downward distinguishing polynomial for the equivariant
/// refinement set, in `x1, x2, x3` = (left, right, top).
pub fn printed_down_distinguishing_omega_t() -> PolyF3 {
    PolyF3::parse("x1*x2^2 + 2*x1^2 + x1*x2 + 2*x2^2 + x1 + 2*x2").unwrap()
}

/// The reference upward distinguishing polynomial for the hexagon-piece
/// refinement set.
pub fn printed_up_distinguishing_omega_c() -> PolyF3 {
    PolyF3::parse("x2^2*x3 + 2*x2*x3^2 + 2*x2^2 + x2").unwrap()
}

/// The reference downward distinguishing polynomial for the hexagon-piece
/// refinement set.
pub fn printed_down_distinguishing_omega_c() -> PolyF3 {
    PolyF3::parse("x2*x3^2 + 2*x2^2 + x2*x3 + 2*x3^2 + x2 + 2*x3").unwrap()
}

/// The reference forbidding polynomial for bottom rhombi of the equivariant
/// refinement set (also the left-rhombus forbidding polynomial of the
/// hexagon-piece set), in `x1..x5` = (up left, up right, up bottom, down
/// left, down right).
pub fn printed_forbidding_rhombus() -> PolyF3 {
    PolyF3::parse("x1^2*x4 + x2^2*x4 + 2*x1^2 + 2*x1*x2 + 2*x2^2 + x2*x4 + x1 + 2*x2").unwrap()
}

/// The constraint table of [`printed_forbidding_rhombus`]: rows of side
/// values with the required polynomial value (0 on stitchable piece pairs,
/// 1 on the two forbidden rhombi).
pub const FORBIDDING_RHOMBUS_ROWS: [([u8; 5], u8); 12] = [
    ([0, 0, 0, 0, 0], 0),
    ([0, 0, 0, 1, 2], 0),
    ([1, 1, 1, 2, 0], 0),
    ([1, 0, 2, 0, 1], 0),
    ([1, 1, 1, 1, 1], 0),
    ([2, 1, 0, 0, 0], 0),
    ([2, 1, 0, 1, 2], 0),
    ([0, 2, 1, 1, 1], 0),
    ([0, 2, 1, 2, 0], 0),
    ([0, 1, 2, 1, 0], 0),
    ([1, 0, 2, 1, 0], 1),
    ([0, 1, 2, 0, 1], 1),
];

/// The reference implying polynomial for the hexagon piece, in `x1..x4`
/// the four determining interval variables of an F2-valued hexagon.  One
/// term of the published form carries a typographical error (a duplicated
/// monomial); the duplicate is corrected here to `2*x1*x2^2*x3*x4`, which
/// restores the defining constraint table.
pub fn printed_implying_hexagon() -> PolyF3 {
    PolyF3::parse(concat!(
        "2*x1^2*x2^2*x3^2*x4^2 + x1^2*x2^2*x3^2*x4 + 2*x1^2*x2^2*x3*x4^2 + ",
        "2*x1^2*x2*x3^2*x4^2 + x1*x2^2*x3^2*x4^2 + x1^2*x2^2*x3*x4 + ",
        "x1^2*x2*x3^2*x4 + 2*x1^2*x2*x3*x4^2 + 2*x1*x2^2*x3^2*x4 + ",
        "x1*x2^2*x3*x4^2 + x1*x2*x3^2*x4^2 + x1^2*x2*x3*x4 + ",
        "2*x1*x2^2*x3*x4 + 2*x1*x2*x3^2*x4 + x1*x2*x3*x4^2 + 2*x1*x2*x3*x4 + ",
        "x3^2*x4^2 + 2*x3^2*x4 + x3*x4^2 + 2*x3*x4",
    ))
    .unwrap()
}

/// Left boundary word of the size-6 equivariant reference instance
/// (partition (3,1)).
pub const FIG5_LAMBDA: &str = "100101";
/// Right boundary word of the size-6 equivariant reference instance
/// (partition (3,2,1)).
pub const FIG5_MU: &str = "101010";
/// Bottom boundary word of the size-6 equivariant reference instance
/// (partition (3,3,2)).
pub const FIG5_NU: &str = "110100";

/// Bottom-rhombus positions of the equivariant pieces in the reference
/// tiling of the equivariant instance.
pub const FIG5_EQUIVARIANT_POSITIONS: [(usize, usize); 2] = [(2, 1), (5, 5)];

/// Drag weights `(i, j)` of the reference tiling's equivariant pieces: the
/// weight factors `(y5 - y1)(y6 - y5)`.
pub const FIG5_WEIGHT_FACTORS: [(usize, usize); 2] = [(5, 1), (6, 5)];
