//! Geometry and interval indexing of the size-`n` triangle.
//!
//! The triangle of side `n` is cut into `n^2` unit triangles whose sides are
//! `N = 3n(n+1)/2` unit intervals, numbered 1..N row by row from the top.
//! Rows are indexed `r = 1..n` from the top; within row `r` the upward unit
//! triangles sit at positions `y = 1..r` and the downward ones at
//! `y = 1..r-1`, both counted from the left.  Writing `base = 3r(r-1)/2`:
//!
//! * upward triangle `(r, y)`: left side `base - 1 + 2y`, right side
//!   `base + 2y`, bottom side `3r(r+1)/2 - r + y`;
//! * downward triangle `(r, y)`: left side `base + 2y` (shared with the
//!   upward neighbour on its left), right side `base + 2y + 1`, top side
//!   `base - (r - 1) + y` (shared with row `r - 1`).
//!
//! Canonical side orders are (left, right, bottom) for upward and
//! (left, top, right) for downward triangles; rhombi and polygons list their
//! sides in the fixed orders documented on the corresponding types.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Orientation of a unit triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// Apex pointing up.
    Up,
    /// Apex pointing down.
    Down,
}

/// Direction of a rhombus (union of one upward and one downward triangle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhombusDirection {
    /// Down-triangle left of the up-triangle's upper neighbour: long axis
    /// tilted towards the north-east.
    Left,
    /// Up-triangle left of a down-triangle in the same row: long axis tilted
    /// towards the north-west.
    Right,
    /// Up-triangle on top of the down-triangle below it: vertical long axis.
    Bottom,
}

impl RhombusDirection {
    /// All three directions.
    pub const ALL: [RhombusDirection; 3] = [
        RhombusDirection::Left,
        RhombusDirection::Right,
        RhombusDirection::Bottom,
    ];
}

/// Supported polygon shapes for the K-theoretic piece sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolygonShape {
    /// Side-2 upward triangle (four unit triangles, 9 intervals).
    Side2Up,
    /// Side-2 downward triangle (four unit triangles, 9 intervals).
    Side2Down,
    /// Unit hexagon (six unit triangles, 12 intervals).
    Hexagon,
}

impl PolygonShape {
    /// Number of intervals of a placement of this shape.
    pub fn interval_count(self) -> usize {
        match self {
            PolygonShape::Hexagon => 12,
            _ => 9,
        }
    }

    /// Number of boundary intervals (the F2-valued sides of the piece).
    pub fn boundary_count(self) -> usize {
        6
    }
}

/// A rhombus placement: four outer intervals in canonical order plus the
/// middle interval shared by its two unit triangles.
///
/// Canonical outer orders (clockwise from the top):
/// * left rhombus: (top, right, bottom, left);
/// * right rhombus: (top, right, bottom, left);
/// * bottom rhombus: (north-west, north-east, south-east, south-west).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhombusPlacement {
    /// Direction of the rhombus.
    pub direction: RhombusDirection,
    /// Row of the placement (row of the upper/first triangle, see `new`).
    pub row: usize,
    /// Position within the row, counted from the left.
    pub pos: usize,
    /// The four outer intervals in canonical order.
    pub outer: [u32; 4],
    /// The interval shared by the two unit triangles.
    pub middle: u32,
    /// The upward triangle `(row, pos)` coordinates.
    pub up: (usize, usize),
    /// The downward triangle `(row, pos)` coordinates.
    pub down: (usize, usize),
}

/// A polygon placement: its intervals in slot order plus the slot indices of
/// each contained unit triangle.
///
/// Slot orders (boundary slots 0..5 first, interior slots after):
/// * hexagon at `(r, y)`: 0 NW, 1 top, 2 NE, 3 SE, 4 bottom, 5 SW, then
///   interior 6..11;
/// * side-2 upward triangle at `(r, y)`: 0 upper-left, 1 lower-left,
///   2 bottom-left, 3 bottom-right, 4 lower-right, 5 upper-right, then the
///   central downward triangle's (left, top, right) as 6..8;
/// * side-2 downward triangle at `(r, y)`: 0 lower-left, 1 upper-left,
///   2 top-left, 3 top-right, 4 upper-right, 5 lower-right, then the central
///   upward triangle's (left, right, bottom) as 6..8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonPlacement {
    /// Shape of the polygon.
    pub shape: PolygonShape,
    /// Row of the anchor triangle.
    pub row: usize,
    /// Position of the anchor triangle within its row.
    pub pos: usize,
    /// Grid intervals by slot.
    pub slots: Vec<u32>,
    /// Contained unit triangles as (orientation, (row, pos), slot indices in
    /// the triangle's canonical side order).
    pub triangles: Vec<(Orientation, (usize, usize), [usize; 3])>,
}

/// Boundary side of the big triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundarySide {
    /// Left side, read bottom to top (the word lambda).
    Left,
    /// Right side, read top to bottom (the word mu).
    Right,
    /// Bottom side, read left to right (the word nu).
    Bottom,
}

/// The size-`n` triangle with all placement enumerations materialized.
#[derive(Debug, Clone)]
pub struct TriangleGrid {
    n: usize,
    /// For every interval, the unit triangles it bounds as (orientation,
    /// (row, pos), side index in canonical order).
    touching: BTreeMap<u32, Vec<(Orientation, (usize, usize), usize)>>,
}

/// Builds the size-`n` grid.
pub fn build_grid(n: usize) -> TriangleGrid {
    TriangleGrid::new(n)
}

impl TriangleGrid {
    /// Builds the size-`n` grid.
    ///
    /// # Panics
    /// Panics when `n = 0`.
    pub fn new(n: usize) -> TriangleGrid {
        assert!(n >= 1, "grid size must be positive");
        let mut touching: BTreeMap<u32, Vec<(Orientation, (usize, usize), usize)>> =
            BTreeMap::new();
        let grid = TriangleGrid {
            n,
            touching: BTreeMap::new(),
        };
        for (r, y) in grid.up_triangles() {
            for (i, iv) in grid.up_sides(r, y).into_iter().enumerate() {
                touching.entry(iv).or_default().push((Orientation::Up, (r, y), i));
            }
        }
        for (r, y) in grid.down_triangles() {
            for (i, iv) in grid.down_sides(r, y).into_iter().enumerate() {
                touching
                    .entry(iv)
                    .or_default()
                    .push((Orientation::Down, (r, y), i));
            }
        }
        TriangleGrid { n, touching }
    }

    /// The side length `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The interval count `N = 3n(n+1)/2`.
    pub fn interval_count(&self) -> usize {
        3 * self.n * (self.n + 1) / 2
    }

    /// All upward triangle coordinates, row by row then left to right.
    pub fn up_triangles(&self) -> Vec<(usize, usize)> {
        (1..=self.n).flat_map(|r| (1..=r).map(move |y| (r, y))).collect()
    }

    /// All downward triangle coordinates, row by row then left to right.
    pub fn down_triangles(&self) -> Vec<(usize, usize)> {
        (2..=self.n)
            .flat_map(|r| (1..r).map(move |y| (r, y)))
            .collect()
    }

    /// Sides (left, right, bottom) of the upward triangle `(r, y)`.
    pub fn up_sides(&self, r: usize, y: usize) -> [u32; 3] {
        debug_assert!(r >= 1 && r <= self.n && y >= 1 && y <= r);
        let base = 3 * r * (r - 1) / 2;
        [
            (base + 2 * y - 1) as u32,
            (base + 2 * y) as u32,
            (3 * r * (r + 1) / 2 - r + y) as u32,
        ]
    }

    /// Sides (left, top, right) of the downward triangle `(r, y)`.
    pub fn down_sides(&self, r: usize, y: usize) -> [u32; 3] {
        debug_assert!(r >= 2 && r <= self.n && y >= 1 && y < r);
        let base = 3 * r * (r - 1) / 2;
        [
            (base + 2 * y) as u32,
            (base - (r - 1) + y) as u32,
            (base + 2 * y + 1) as u32,
        ]
    }

    /// Sides of a triangle in canonical order.
    pub fn triangle_sides(&self, o: Orientation, r: usize, y: usize) -> [u32; 3] {
        match o {
            Orientation::Up => self.up_sides(r, y),
            Orientation::Down => self.down_sides(r, y),
        }
    }

    /// The unit triangles bounded by `interval`, with the side index each
    /// uses for it.  Interior intervals bound exactly two triangles.
    pub fn triangles_touching(&self, interval: u32) -> &[(Orientation, (usize, usize), usize)] {
        self.touching
            .get(&interval)
            .map_or(&[], Vec::as_slice)
    }

    /// The rhombus of the given direction anchored at `(r, y)`.
    ///
    /// Anchors: left rhombus `(r, y)` is `down(r, y) + up(r, y + 1)` for
    /// `y < r`; right rhombus `(r, y)` is `up(r, y) + down(r, y)` for
    /// `y < r`; bottom rhombus `(r, y)` is `up(r, y) + down(r + 1, y)` for
    /// `r < n`.
    pub fn rhombus(&self, direction: RhombusDirection, r: usize, y: usize) -> RhombusPlacement {
        match direction {
            RhombusDirection::Left => {
                let d = self.down_sides(r, y);
                let u = self.up_sides(r, y + 1);
                debug_assert_eq!(d[2], u[0]);
                RhombusPlacement {
                    direction,
                    row: r,
                    pos: y,
                    outer: [d[1], u[1], u[2], d[0]],
                    middle: d[2],
                    up: (r, y + 1),
                    down: (r, y),
                }
            }
            RhombusDirection::Right => {
                let u = self.up_sides(r, y);
                let d = self.down_sides(r, y);
                debug_assert_eq!(u[1], d[0]);
                RhombusPlacement {
                    direction,
                    row: r,
                    pos: y,
                    outer: [d[1], d[2], u[2], u[0]],
                    middle: u[1],
                    up: (r, y),
                    down: (r, y),
                }
            }
            RhombusDirection::Bottom => {
                let u = self.up_sides(r, y);
                let d = self.down_sides(r + 1, y);
                debug_assert_eq!(u[2], d[1]);
                RhombusPlacement {
                    direction,
                    row: r,
                    pos: y,
                    outer: [u[0], u[1], d[2], d[0]],
                    middle: u[2],
                    up: (r, y),
                    down: (r + 1, y),
                }
            }
        }
    }

    /// All rhombi of one direction, row by row then left to right; each
    /// direction has `n(n-1)/2` members.
    pub fn rhombi(&self, direction: RhombusDirection) -> Vec<RhombusPlacement> {
        let mut out = Vec::new();
        match direction {
            RhombusDirection::Left | RhombusDirection::Right => {
                for r in 2..=self.n {
                    for y in 1..r {
                        out.push(self.rhombus(direction, r, y));
                    }
                }
            }
            RhombusDirection::Bottom => {
                for r in 1..self.n {
                    for y in 1..=r {
                        out.push(self.rhombus(direction, r, y));
                    }
                }
            }
        }
        out
    }

    /// The polygon placement of `shape` anchored at `(r, y)`, if it fits.
    ///
    /// Anchors: hexagon `(r, y)` is centred on `down(r, y)`'s row pair, with
    /// `up(r, y)` as its NW triangle; side-2 upward triangle `(r, y)` has
    /// `up(r, y)` on top; side-2 downward triangle `(r, y)` has `down(r, y)`
    /// as its upper-left triangle.
    pub fn polygon(&self, shape: PolygonShape, r: usize, y: usize) -> Option<PolygonPlacement> {
        match shape {
            PolygonShape::Hexagon => {
                if !(2..self.n).contains(&r) || !(1..r).contains(&y) {
                    return None;
                }
                let u0 = self.up_sides(r, y);
                let d0 = self.down_sides(r, y);
                let u1 = self.up_sides(r, y + 1);
                let d1 = self.down_sides(r + 1, y);
                let u2 = self.up_sides(r + 1, y + 1);
                let d2 = self.down_sides(r + 1, y + 1);
                let slots = vec![
                    u0[0], d0[1], u1[1], d2[2], u2[2], d1[0], u0[1], d0[2], u0[2], u1[2],
                    d1[2], u2[1],
                ];
                let triangles = vec![
                    (Orientation::Up, (r, y), [0, 6, 8]),
                    (Orientation::Down, (r, y), [6, 1, 7]),
                    (Orientation::Up, (r, y + 1), [7, 2, 9]),
                    (Orientation::Down, (r + 1, y), [5, 8, 10]),
                    (Orientation::Up, (r + 1, y + 1), [10, 11, 4]),
                    (Orientation::Down, (r + 1, y + 1), [11, 9, 3]),
                ];
                Some(PolygonPlacement {
                    shape,
                    row: r,
                    pos: y,
                    slots,
                    triangles,
                })
            }
            PolygonShape::Side2Up => {
                if r + 1 > self.n || !(1..=r).contains(&y) {
                    return None;
                }
                let top = self.up_sides(r, y);
                let ul = self.up_sides(r + 1, y);
                let ur = self.up_sides(r + 1, y + 1);
                let slots = vec![
                    top[0], ul[0], ul[2], ur[2], ur[1], top[1], ul[1], top[2], ur[0],
                ];
                let triangles = vec![
                    (Orientation::Up, (r, y), [0, 5, 7]),
                    (Orientation::Up, (r + 1, y), [1, 6, 2]),
                    (Orientation::Down, (r + 1, y), [6, 7, 8]),
                    (Orientation::Up, (r + 1, y + 1), [8, 4, 3]),
                ];
                Some(PolygonPlacement {
                    shape,
                    row: r,
                    pos: y,
                    slots,
                    triangles,
                })
            }
            PolygonShape::Side2Down => {
                if r + 1 > self.n || r < 3 || !(1..=r.saturating_sub(2)).contains(&y) {
                    return None;
                }
                let dl = self.down_sides(r, y);
                let uc = self.up_sides(r, y + 1);
                let dr = self.down_sides(r, y + 1);
                let db = self.down_sides(r + 1, y + 1);
                let slots = vec![
                    db[0], dl[0], dl[1], dr[1], dr[2], db[2], uc[0], uc[1], uc[2],
                ];
                let triangles = vec![
                    (Orientation::Down, (r, y), [1, 2, 6]),
                    (Orientation::Up, (r, y + 1), [6, 7, 8]),
                    (Orientation::Down, (r, y + 1), [7, 3, 4]),
                    (Orientation::Down, (r + 1, y + 1), [0, 8, 5]),
                ];
                Some(PolygonPlacement {
                    shape,
                    row: r,
                    pos: y,
                    slots,
                    triangles,
                })
            }
        }
    }

    /// All placements of `shape` inside the grid, row by row then left to
    /// right; translations only, no rotation or mirroring.
    pub fn polygon_placements(&self, shape: PolygonShape) -> Vec<PolygonPlacement> {
        let mut out = Vec::new();
        for r in 1..=self.n {
            for y in 1..=r {
                if let Some(p) = self.polygon(shape, r, y) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// The interval indices of one boundary side, in the reading order of
    /// its word: left bottom-to-top, right top-to-bottom, bottom
    /// left-to-right.
    pub fn boundary_intervals(&self, side: BoundarySide) -> Vec<u32> {
        match side {
            BoundarySide::Left => (1..=self.n)
                .rev()
                .map(|r| self.up_sides(r, 1)[0])
                .collect(),
            BoundarySide::Right => (1..=self.n).map(|r| self.up_sides(r, r)[1]).collect(),
            BoundarySide::Bottom => (1..=self.n)
                .map(|y| self.up_sides(self.n, y)[2])
                .collect(),
        }
    }
}

/// Parses a binary word like `100101` into its letter vector.
pub fn parse_word(text: &str) -> Result<Vec<u8>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("bad letter `{c}` in binary word"))),
        })
        .collect()
}

/// Converts a partition inside the `k x (n-k)` box to its binary word of
/// length `n` with `k` ones: the `i`-th one (from the left) has exactly
/// `lambda_i` zeros to its right.
pub fn partition_to_binary(partition: &[usize], n: usize, k: usize) -> Result<Vec<u8>> {
    if k > n {
        return Err(Error::DoesNotFit { rows: k, cols: 0 });
    }
    let cols = n - k;
    if partition.len() > k
        || partition.first().is_some_and(|&p| p > cols)
        || partition.windows(2).any(|w| w[0] < w[1])
    {
        return Err(Error::DoesNotFit { rows: k, cols });
    }
    let mut word = vec![0u8; n];
    for i in 1..=k {
        let part = partition.get(i - 1).copied().unwrap_or(0);
        let from_right = part + (k - i);
        word[n - 1 - from_right] = 1;
    }
    Ok(word)
}

/// Converts a binary word with `k` ones into the partition it encodes plus
/// `k`; inverse of [`partition_to_binary`] (trailing zero parts dropped).
pub fn binary_to_partition(word: &[u8]) -> (Vec<usize>, usize) {
    let mut parts = Vec::new();
    for (i, &c) in word.iter().enumerate() {
        if c == 1 {
            let zeros = word[i + 1..].iter().filter(|&&x| x == 0).count();
            parts.push(zeros);
        }
    }
    let k = parts.len();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    (parts, k)
}
