//! Piece sets, atomic refinement, stitching, and the derivation of implicit
//! and forbidden pieces.
//!
//! A piece set `Omega = Omega_t + Omega_r + Omega_b` consists of F2-valued
//! unit triangles, rhombi, and at most one polygon shape.  Every piece is cut
//! into *atomic* pieces - F3-valued unit triangles whose sides sum to zero -
//! by introducing 2-valued interior intervals; the union of the pieces
//! appearing in the chosen refinements is the refinement set `Omega-bar`.
//! Stitching merges pairs of regular atomic pieces sharing a 2-side back
//! into F2 rhombi; rhombi hidden in a polygon's stitching that are not
//! themselves members of `Omega` are *implicit*, and F2 rhombi tileable with
//! `Omega-bar` but not with `Omega` that are not implicit are *forbidden*.

use crate::error::{Error, Result};
use crate::gf3::F3;
use crate::grid::{Orientation, PolygonShape, RhombusDirection};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// An F3-valued unit triangle whose side values sum to zero.
///
/// Side order is (left, right, bottom) for upward and (left, top, right)
/// for downward triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicPiece {
    /// Orientation of the triangle.
    pub orientation: Orientation,
    /// Side values in canonical order.
    pub values: [F3; 3],
}

impl AtomicPiece {
    /// Builds an atomic piece, checking the zero-sum invariant.
    pub fn new(orientation: Orientation, values: [F3; 3]) -> AtomicPiece {
        assert!(
            (values[0] + values[1] + values[2]).is_zero(),
            "atomic piece sides must sum to zero"
        );
        AtomicPiece { orientation, values }
    }

    /// Shorthand constructor from residues.
    pub fn from_u8(orientation: Orientation, v: [u8; 3]) -> AtomicPiece {
        AtomicPiece::new(orientation, [F3::from(v[0]), F3::from(v[1]), F3::from(v[2])])
    }

    /// True for the all-2s piece, the only atomic piece that is not
    /// *regular* (a regular piece has at most one 2-valued side).
    pub fn is_all_twos(&self) -> bool {
        self.values == [F3::TWO, F3::TWO, F3::TWO]
    }
}

impl fmt::Display for AtomicPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Up => "up",
            Orientation::Down => "down",
        };
        write!(f, "{o}({},{},{})", self.values[0], self.values[1], self.values[2])
    }
}

/// The universe `Phi` of all 18 atomic pieces (9 per orientation).
pub fn phi() -> Vec<AtomicPiece> {
    let mut out = Vec::with_capacity(18);
    for orientation in [Orientation::Up, Orientation::Down] {
        for a in F3::ALL {
            for b in F3::ALL {
                out.push(AtomicPiece::new(orientation, [a, b, -(a + b)]));
            }
        }
    }
    out
}

/// An F2-valued unit-triangle piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrianglePiece {
    /// Orientation of the triangle.
    pub orientation: Orientation,
    /// Side values (in {0, 1}) in canonical order.
    pub values: [u8; 3],
}

/// An F2-valued rhombus piece.
///
/// Value order matches [`crate::grid::RhombusPlacement::outer`]: (top,
/// right, bottom, left) for the tilted directions, (NW, NE, SE, SW) for the
/// bottom direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RhombusPiece {
    /// Direction of the rhombus.
    pub direction: RhombusDirection,
    /// Outer side values (in {0, 1}) in canonical order.
    pub values: [u8; 4],
}

/// A region expressed in abstract slot coordinates, used to refine and
/// stitch pieces independently of any concrete grid placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotRegion {
    /// Number of slots.
    pub slot_count: usize,
    /// Unit triangles as (orientation, slot indices in canonical side order).
    pub triangles: Vec<(Orientation, [usize; 3])>,
}

impl SlotRegion {
    /// The slot region of a rhombus: outer slots 0..4 in canonical order,
    /// middle slot 4.
    pub fn rhombus(direction: RhombusDirection) -> SlotRegion {
        let triangles = match direction {
            RhombusDirection::Left => vec![
                (Orientation::Down, [3, 0, 4]),
                (Orientation::Up, [4, 1, 2]),
            ],
            RhombusDirection::Right => vec![
                (Orientation::Up, [3, 4, 2]),
                (Orientation::Down, [4, 0, 1]),
            ],
            RhombusDirection::Bottom => vec![
                (Orientation::Up, [0, 1, 4]),
                (Orientation::Down, [3, 4, 2]),
            ],
        };
        SlotRegion { slot_count: 5, triangles }
    }

    /// The slot region of a polygon shape; slot numbering matches
    /// [`crate::grid::PolygonPlacement`].
    pub fn polygon(shape: PolygonShape) -> SlotRegion {
        let triangles = match shape {
            PolygonShape::Hexagon => vec![
                (Orientation::Up, [0, 6, 8]),
                (Orientation::Down, [6, 1, 7]),
                (Orientation::Up, [7, 2, 9]),
                (Orientation::Down, [5, 8, 10]),
                (Orientation::Up, [10, 11, 4]),
                (Orientation::Down, [11, 9, 3]),
            ],
            PolygonShape::Side2Up => vec![
                (Orientation::Up, [0, 5, 7]),
                (Orientation::Up, [1, 6, 2]),
                (Orientation::Down, [6, 7, 8]),
                (Orientation::Up, [8, 4, 3]),
            ],
            PolygonShape::Side2Down => vec![
                (Orientation::Down, [1, 2, 6]),
                (Orientation::Up, [6, 7, 8]),
                (Orientation::Down, [7, 3, 4]),
                (Orientation::Down, [0, 8, 5]),
            ],
        };
        SlotRegion {
            slot_count: shape.interval_count(),
            triangles,
        }
    }

    /// The slots shared by two triangles of the region (interior slots).
    pub fn interior_slots(&self) -> BTreeSet<usize> {
        let mut seen = BTreeMap::new();
        for (_, slots) in &self.triangles {
            for &s in slots {
                *seen.entry(s).or_insert(0usize) += 1;
            }
        }
        seen.into_iter().filter(|&(_, c)| c == 2).map(|(s, _)| s).collect()
    }
}

/// All assignments of the region's slots by atomic pieces, with the given
/// slots pinned.  Returns every full slot assignment, sorted; the list is
/// empty when no atomic tiling exists.
pub fn atomic_refinement(region: &SlotRegion, fixed: &[(usize, F3)]) -> Vec<Vec<F3>> {
    let mut assignment: Vec<Option<F3>> = vec![None; region.slot_count];
    for &(slot, v) in fixed {
        assignment[slot] = Some(v);
    }
    let mut out = Vec::new();
    search_refinement(region, &mut assignment, 0, &mut out);
    out.sort();
    out
}

fn search_refinement(
    region: &SlotRegion,
    assignment: &mut Vec<Option<F3>>,
    slot: usize,
    out: &mut Vec<Vec<F3>>,
) {
    let consistent = |assignment: &[Option<F3>]| {
        region.triangles.iter().all(|(_, slots)| {
            let vals: Vec<Option<F3>> = slots.iter().map(|&s| assignment[s]).collect();
            match (vals[0], vals[1], vals[2]) {
                (Some(a), Some(b), Some(c)) => (a + b + c).is_zero(),
                _ => true,
            }
        })
    };
    if slot == region.slot_count {
        if consistent(assignment) {
            out.push(assignment.iter().map(|v| v.unwrap()).collect());
        }
        return;
    }
    if assignment[slot].is_some() {
        if consistent(assignment) {
            search_refinement(region, assignment, slot + 1, out);
        }
        return;
    }
    for v in F3::ALL {
        assignment[slot] = Some(v);
        if consistent(assignment) {
            search_refinement(region, assignment, slot + 1, out);
        }
    }
    assignment[slot] = None;
}

/// One piece of a stitched tiling, in slot coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StitchedItem {
    /// An atomic triangle left unmerged (including any all-2s piece).
    Triangle {
        /// Orientation.
        orientation: Orientation,
        /// Slot indices in canonical side order.
        slots: [usize; 3],
        /// Side values.
        values: [F3; 3],
    },
    /// Two regular atomic pieces merged across a shared 2-side.
    Rhombus {
        /// Direction of the merged rhombus.
        direction: RhombusDirection,
        /// Outer slot indices in canonical order.
        outer_slots: [usize; 4],
        /// The removed middle slot.
        middle_slot: usize,
        /// Outer values (always in {0, 1}).
        values: [u8; 4],
    },
}

/// Stitches an atomic tiling of a slot region: every interior 2-side between
/// two regular atomic pieces is removed and the pair merged into an F2
/// rhombus.  The result is unique because a regular atomic piece carries at
/// most one 2-side.
pub fn stitch(region: &SlotRegion, assignment: &[F3]) -> Vec<StitchedItem> {
    let interior = region.interior_slots();
    let n_tris = region.triangles.len();
    let mut merged = vec![false; n_tris];
    let mut out = Vec::new();
    for i in 0..n_tris {
        if merged[i] {
            continue;
        }
        let (oi, si) = region.triangles[i];
        let regular_i = !si.iter().all(|&s| assignment[s] == F3::TWO);
        let mut partner = None;
        if regular_i {
            'outer: for (j, &(oj, sj)) in region.triangles.iter().enumerate() {
                if j == i || merged[j] || oi == oj {
                    continue;
                }
                let regular_j = !sj.iter().all(|&s| assignment[s] == F3::TWO);
                if !regular_j {
                    continue;
                }
                for &s in &si {
                    if assignment[s] == F3::TWO && interior.contains(&s) && sj.contains(&s) {
                        partner = Some((j, s));
                        break 'outer;
                    }
                }
            }
        }
        match partner {
            Some((j, shared)) => {
                merged[i] = true;
                merged[j] = true;
                let (up_slots, down_slots) = if oi == Orientation::Up {
                    (si, region.triangles[j].1)
                } else {
                    (region.triangles[j].1, si)
                };
                let (direction, outer_slots) = if up_slots[1] == shared && down_slots[0] == shared {
                    (
                        RhombusDirection::Right,
                        [down_slots[1], down_slots[2], up_slots[2], up_slots[0]],
                    )
                } else if up_slots[0] == shared && down_slots[2] == shared {
                    (
                        RhombusDirection::Left,
                        [down_slots[1], up_slots[1], up_slots[2], down_slots[0]],
                    )
                } else if up_slots[2] == shared && down_slots[1] == shared {
                    (
                        RhombusDirection::Bottom,
                        [up_slots[0], up_slots[1], down_slots[2], down_slots[0]],
                    )
                } else {
                    unreachable!("shared slot is not a matching side pair")
                };
                let values = outer_slots.map(|s| assignment[s].value());
                debug_assert!(values.iter().all(|&v| v < 2), "stitched rhombus must be F2");
                out.push(StitchedItem::Rhombus {
                    direction,
                    outer_slots,
                    middle_slot: shared,
                    values,
                });
            }
            None => out.push(StitchedItem::Triangle {
                orientation: oi,
                slots: si,
                values: si.map(|s| assignment[s]),
            }),
        }
    }
    out
}

/// An F2-valued polygon piece together with its chosen refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonPiece {
    /// Shape of the polygon.
    pub shape: PolygonShape,
    /// Boundary values (slots 0..6) in {0, 1}.
    pub boundary: [u8; 6],
    /// The chosen atomic refinement: values of all slots.
    pub refinement: Vec<F3>,
    /// The stitching of the chosen refinement.
    pub stitched: Vec<StitchedItem>,
}

/// The kind and values of an implicit piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ImplicitKind {
    /// An F2 rhombus hidden in a polygon's stitching.
    Rhombus(RhombusDirection, [u8; 4]),
    /// The all-2s atomic triangle.
    AllTwos(Orientation),
}

/// An implicit piece: its kind plus the designated position inside its host
/// polygon where it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitPiece {
    /// Kind and values.
    pub kind: ImplicitKind,
    /// Index of the host polygon in [`PieceSet::polygons`].
    pub host: usize,
    /// Slot indices of the designated sides inside the host's placement
    /// (4 outer slots for a rhombus, 3 sides for the all-2s triangle).
    pub designated_slots: Vec<usize>,
    /// The values carried on the designated slots.
    pub designated_values: Vec<F3>,
}

/// Identifier of a piece set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceSetId {
    /// The classical cohomology pieces.
    Omega0,
    /// Equivariant: adds the reversed bottom rhombus.
    OmegaT,
    /// K-theory: adds the side-2 downward triangle.
    OmegaA,
    /// K-theory: adds the side-2 upward triangle.
    OmegaB,
    /// K-theory: adds the hexagon with alternating boundary 1,0,...
    OmegaC,
    /// K-theory: adds the hexagon with alternating boundary 0,1,...
    OmegaD,
    /// A user-supplied set.
    Custom,
}

impl PieceSetId {
    /// The six builtin identifiers.
    pub const BUILTINS: [PieceSetId; 6] = [
        PieceSetId::Omega0,
        PieceSetId::OmegaT,
        PieceSetId::OmegaA,
        PieceSetId::OmegaB,
        PieceSetId::OmegaC,
        PieceSetId::OmegaD,
    ];

    /// Whether this is one of the K-theoretic sets (signed constants).
    pub fn is_k_theoretic(self) -> bool {
        matches!(
            self,
            PieceSetId::OmegaA | PieceSetId::OmegaB | PieceSetId::OmegaC | PieceSetId::OmegaD
        )
    }
}

impl fmt::Display for PieceSetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PieceSetId::Omega0 => "Omega0",
            PieceSetId::OmegaT => "OmegaT",
            PieceSetId::OmegaA => "OmegaA",
            PieceSetId::OmegaB => "OmegaB",
            PieceSetId::OmegaC => "OmegaC",
            PieceSetId::OmegaD => "OmegaD",
            PieceSetId::Custom => "custom",
        };
        write!(f, "{s}")
    }
}

/// A complete piece set with its derived refinement, implicit, and
/// forbidden data.
#[derive(Debug, Clone)]
pub struct PieceSet {
    /// Identifier.
    pub id: PieceSetId,
    /// The F2 triangle pieces `Omega_t`.
    pub triangles: Vec<TrianglePiece>,
    /// The F2 rhombus pieces `Omega_r`.
    pub rhombi: Vec<RhombusPiece>,
    /// The polygon pieces `Omega_b`.
    pub polygons: Vec<PolygonPiece>,
    /// The refinement set `Omega-bar`.
    pub refinement: BTreeSet<AtomicPiece>,
    /// The implicit set `Omega-bar_i`.
    pub implicit: Vec<ImplicitPiece>,
    /// The forbidden set `Omega-bar_f`, keyed by direction.
    pub forbidden: BTreeMap<RhombusDirection, BTreeSet<[u8; 4]>>,
    /// Whether the separability conditions hold.
    pub separable: bool,
}

impl PieceSet {
    /// The atomic pieces of the given orientation in the refinement set.
    pub fn refinement_of(&self, orientation: Orientation) -> Vec<[F3; 3]> {
        self.refinement
            .iter()
            .filter(|p| p.orientation == orientation)
            .map(|p| p.values)
            .collect()
    }

    /// The forbidden tuples of one direction (empty set when none).
    pub fn forbidden_of(&self, direction: RhombusDirection) -> BTreeSet<[u8; 4]> {
        self.forbidden.get(&direction).cloned().unwrap_or_default()
    }

    /// Whether the refinement set contains the atomic piece.
    pub fn refines(&self, piece: &AtomicPiece) -> bool {
        self.refinement.contains(piece)
    }
}

/// Returns the fully derived builtin piece set.
pub fn builtin_piece_set(id: PieceSetId) -> PieceSet {
    builtin_piece_set_with_refinement(id, None)
        .expect("builtin piece sets are always derivable")
}

/// Returns a builtin piece set, optionally overriding the polygon refinement
/// choice by its index in the sorted refinement enumeration.
pub fn builtin_piece_set_with_refinement(
    id: PieceSetId,
    refinement_index: Option<usize>,
) -> Result<PieceSet> {
    let up = |v| TrianglePiece { orientation: Orientation::Up, values: v };
    let down = |v| TrianglePiece { orientation: Orientation::Down, values: v };
    let rh = |d, v| RhombusPiece { direction: d, values: v };
    let triangles = vec![up([0, 0, 0]), up([1, 1, 1]), down([0, 0, 0]), down([1, 1, 1])];
    let mut rhombi = vec![
        rh(RhombusDirection::Left, [0, 1, 0, 1]),
        rh(RhombusDirection::Right, [1, 0, 1, 0]),
        rh(RhombusDirection::Bottom, [1, 0, 1, 0]),
    ];
    let mut polygon_spec: Option<(PolygonShape, [u8; 6], usize)> = None;
    match id {
        PieceSetId::Omega0 => {}
        PieceSetId::OmegaT => rhombi.push(rh(RhombusDirection::Bottom, [0, 1, 0, 1])),
        PieceSetId::OmegaA => {
            polygon_spec = Some((PolygonShape::Side2Down, [0, 1, 0, 1, 0, 1], 0));
        }
        PieceSetId::OmegaB => {
            polygon_spec = Some((PolygonShape::Side2Up, [1, 0, 1, 0, 1, 0], 0));
        }
        PieceSetId::OmegaC => {
            polygon_spec = Some((PolygonShape::Hexagon, [1, 0, 1, 0, 1, 0], 1));
        }
        PieceSetId::OmegaD => {
            polygon_spec = Some((PolygonShape::Hexagon, [0, 1, 0, 1, 0, 1], 0));
        }
        PieceSetId::Custom => {
            return Err(Error::Parse(
                "custom sets are built from a description file".into(),
            ))
        }
    }
    let mut polygons = Vec::new();
    if let Some((shape, boundary, default_index)) = polygon_spec {
        let index = refinement_index.unwrap_or(default_index);
        polygons.push(build_polygon_piece(shape, boundary, index)?);
    }
    derive_piece_set(id, triangles, rhombi, polygons)
}

/// Builds a polygon piece by enumerating its atomic refinements and
/// selecting the one at `index` in the sorted enumeration.
pub fn build_polygon_piece(
    shape: PolygonShape,
    boundary: [u8; 6],
    index: usize,
) -> Result<PolygonPiece> {
    let region = SlotRegion::polygon(shape);
    let fixed: Vec<(usize, F3)> = boundary
        .iter()
        .enumerate()
        .map(|(i, &v)| (i, F3::from(v)))
        .collect();
    let tilings = atomic_refinement(&region, &fixed);
    if tilings.is_empty() {
        return Err(Error::NotRefinable);
    }
    let refinement = tilings
        .get(index)
        .ok_or_else(|| {
            Error::Parse(format!(
                "refinement index {index} out of range (the piece has {} refinements)",
                tilings.len()
            ))
        })?
        .clone();
    let stitched = stitch(&region, &refinement);
    Ok(PolygonPiece { shape, boundary, refinement, stitched })
}

/// The unique atomic refinement of an F2 rhombus piece: two atomic triangles
/// sharing a 2-valued middle.
pub fn rhombus_refinement(piece: &RhombusPiece) -> Result<(AtomicPiece, AtomicPiece)> {
    let region = SlotRegion::rhombus(piece.direction);
    let fixed: Vec<(usize, F3)> = piece
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| (i, F3::from(v)))
        .collect();
    let tilings: Vec<Vec<F3>> = atomic_refinement(&region, &fixed)
        .into_iter()
        .filter(|t| t[4] == F3::TWO)
        .collect();
    let [tiling] = tilings.as_slice() else {
        return Err(Error::NotRefinable);
    };
    let piece_of = |orientation: Orientation| {
        let &(o, slots) = region
            .triangles
            .iter()
            .find(|&&(o, _)| o == orientation)
            .expect("rhombus region has one triangle per orientation");
        AtomicPiece::new(o, slots.map(|s| tiling[s]))
    };
    Ok((piece_of(Orientation::Down), piece_of(Orientation::Up)))
}

/// Derives refinement, implicit, and forbidden data for a piece inventory
/// and assembles the [`PieceSet`].
pub fn derive_piece_set(
    id: PieceSetId,
    triangles: Vec<TrianglePiece>,
    rhombi: Vec<RhombusPiece>,
    polygons: Vec<PolygonPiece>,
) -> Result<PieceSet> {
    let mut refinement: BTreeSet<AtomicPiece> = BTreeSet::new();
    for t in &triangles {
        refinement.insert(AtomicPiece::from_u8(t.orientation, t.values));
    }
    for r in &rhombi {
        let (a, b) = rhombus_refinement(r)?;
        refinement.insert(a);
        refinement.insert(b);
    }
    for p in &polygons {
        let region = SlotRegion::polygon(p.shape);
        for &(o, slots) in &region.triangles {
            refinement.insert(AtomicPiece::new(o, slots.map(|s| p.refinement[s])));
        }
    }

    let set = PieceSet {
        id,
        triangles,
        rhombi,
        polygons,
        refinement,
        implicit: Vec::new(),
        forbidden: BTreeMap::new(),
        separable: true,
    };
    derive_implicit_forbidden(set)
}

/// Computes the implicit set, the forbidden set, and the separability flag
/// of a piece set whose refinement has already been fixed.
pub fn derive_implicit_forbidden(mut set: PieceSet) -> Result<PieceSet> {
    let mut implicit: Vec<ImplicitPiece> = Vec::new();
    let mut separable = true;

    for (host, p) in set.polygons.iter().enumerate() {
        let mut host_implicit: Vec<ImplicitPiece> = Vec::new();
        for item in &p.stitched {
            match item {
                StitchedItem::Rhombus { direction, outer_slots, values, .. } => {
                    let in_omega = set
                        .rhombi
                        .iter()
                        .any(|r| r.direction == *direction && r.values == *values);
                    if !in_omega {
                        host_implicit.push(ImplicitPiece {
                            kind: ImplicitKind::Rhombus(*direction, *values),
                            host,
                            designated_slots: outer_slots.to_vec(),
                            designated_values: values.iter().map(|&v| F3::from(v)).collect(),
                        });
                    }
                }
                StitchedItem::Triangle { orientation, slots, values } => {
                    if *values == [F3::TWO; 3] {
                        host_implicit.push(ImplicitPiece {
                            kind: ImplicitKind::AllTwos(*orientation),
                            host,
                            designated_slots: slots.to_vec(),
                            designated_values: values.to_vec(),
                        });
                    }
                }
            }
        }
        // Separability condition 1: each implicit piece occurs exactly once
        // in the stitching of its host.
        for ip in &host_implicit {
            let occurrences = p
                .stitched
                .iter()
                .filter(|item| match (item, &ip.kind) {
                    (
                        StitchedItem::Rhombus { direction, values, .. },
                        ImplicitKind::Rhombus(d, v),
                    ) => direction == d && values == v,
                    (StitchedItem::Triangle { orientation, values, .. }, ImplicitKind::AllTwos(o)) => {
                        orientation == o && *values == [F3::TWO; 3]
                    }
                    _ => false,
                })
                .count();
            if occurrences != 1 {
                separable = false;
            }
        }
        // Separability condition 2: implicit sets of distinct polygons are
        // pairwise disjoint.
        for earlier in &implicit {
            if host_implicit.iter().any(|ip| ip.kind == earlier.kind) {
                separable = false;
            }
        }
        implicit.extend(host_implicit);
    }

    // Forbidden rhombi: F2 rhombi tileable with the refinement set but not
    // with the original pieces, minus the implicit ones.
    let mut forbidden: BTreeMap<RhombusDirection, BTreeSet<[u8; 4]>> = BTreeMap::new();
    for direction in RhombusDirection::ALL {
        let mut dir_forbidden = BTreeSet::new();
        for code in 0..16u8 {
            let values = [code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1];
            if !rhombus_tileable_with_refinement(&set, direction, values) {
                continue;
            }
            if rhombus_tileable_with_omega(&set, direction, values) {
                continue;
            }
            let is_implicit = implicit
                .iter()
                .any(|ip| ip.kind == ImplicitKind::Rhombus(direction, values));
            if !is_implicit {
                dir_forbidden.insert(values);
            }
        }
        forbidden.insert(direction, dir_forbidden);
    }

    set.implicit = implicit;
    set.forbidden = forbidden;
    set.separable = separable;
    if !set.separable {
        return Err(Error::NotSeparable(format!("piece set {}", set.id)));
    }
    Ok(set)
}

/// The rhombus value universe for one direction: all F3 tuples of outer side
/// values admitting an atomic cover (both covering triangles sum to zero for
/// some middle value).  Each direction has exactly 27 members.
pub fn psi(direction: RhombusDirection) -> Vec<[F3; 4]> {
    let mut members = Vec::new();
    for code in 0..81u16 {
        let v = [
            F3::from((code % 3) as u8),
            F3::from((code / 3 % 3) as u8),
            F3::from((code / 9 % 3) as u8),
            F3::from((code / 27) as u8),
        ];
        let tileable = F3::ALL.iter().any(|&m| {
            let (d, u) = rhombus_cover_f3(direction, v, m);
            atomic_sum_zero(&d) && atomic_sum_zero(&u)
        });
        if tileable {
            members.push(v);
        }
    }
    members
}

/// The two atomic triangles covering a rhombus of the given direction and
/// outer values, as functions of the middle value `m`; returned as
/// (down, up) with values in canonical side order.
fn rhombus_cover(
    direction: RhombusDirection,
    values: [u8; 4],
    m: F3,
) -> (AtomicPiece, AtomicPiece) {
    rhombus_cover_f3(direction, values.map(F3::from), m)
}

fn atomic_sum_zero(p: &AtomicPiece) -> bool {
    (p.values[0] + p.values[1] + p.values[2]).is_zero()
}

/// Whether the rhombus with the given outer values admits a tiling by
/// members of the refinement set.
fn rhombus_tileable_with_refinement(
    set: &PieceSet,
    direction: RhombusDirection,
    values: [u8; 4],
) -> bool {
    F3::ALL.iter().any(|&m| {
        let (d, u) = rhombus_cover(direction, values, m);
        atomic_sum_zero(&d) && atomic_sum_zero(&u) && set.refines(&d) && set.refines(&u)
    })
}

/// Whether the rhombus with the given outer values admits a tiling by the
/// original pieces (either the rhombus piece itself or two F2 triangles).
fn rhombus_tileable_with_omega(
    set: &PieceSet,
    direction: RhombusDirection,
    values: [u8; 4],
) -> bool {
    if set
        .rhombi
        .iter()
        .any(|r| r.direction == direction && r.values == values)
    {
        return true;
    }
    [F3::ZERO, F3::ONE].iter().any(|&m| {
        let (d, u) = rhombus_cover(direction, values, m);
        atomic_sum_zero(&d)
            && atomic_sum_zero(&u)
            && set.triangles.iter().any(|t| {
                t.orientation == Orientation::Down
                    && t.values.map(F3::from) == d.values
            })
            && set.triangles.iter().any(|t| {
                t.orientation == Orientation::Up && t.values.map(F3::from) == u.values
            })
    })
}

/// Parses a piece-set description file into a derived [`PieceSet`].
///
/// Line-oriented format; `#` starts a comment.  Each line is a shape keyword
/// followed by its side values, with an optional `refine` clause giving the
/// interior values of the chosen refinement for polygons:
///
/// ```text
/// up 0 0 0
/// down 1 1 1
/// left 0 1 0 1
/// right 1 0 1 0
/// bottom 1 0 1 0
/// hexagon 1 0 1 0 1 0 refine 1 2 1 0 2 0
/// side2up 1 0 1 0 1 0 refine 2 2 2
/// side2down 0 1 0 1 0 1
/// ```
///
/// When `refine` is omitted for a polygon the first refinement in the sorted
/// enumeration is used.
pub fn piece_set_from_description(text: &str) -> Result<PieceSet> {
    let mut triangles = Vec::new();
    let mut rhombi = Vec::new();
    let mut polygons = Vec::new();
    let mut polygon_shapes = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let f2_values = |tokens: &[&str], count: usize| -> Result<Vec<u8>> {
            if tokens.len() != count {
                return Err(err(&format!("expected {count} side values")));
            }
            tokens
                .iter()
                .map(|t| match *t {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    _ => Err(err("side values must be 0 or 1")),
                })
                .collect()
        };
        match keyword {
            "up" | "down" => {
                let v = f2_values(&rest, 3)?;
                let orientation = if keyword == "up" { Orientation::Up } else { Orientation::Down };
                if (v[0] + v[1] + v[2]) % 3 != 0 {
                    return Err(err("triangle side values must sum to 0 mod 3"));
                }
                triangles.push(TrianglePiece { orientation, values: [v[0], v[1], v[2]] });
            }
            "left" | "right" | "bottom" => {
                let v = f2_values(&rest, 4)?;
                let direction = match keyword {
                    "left" => RhombusDirection::Left,
                    "right" => RhombusDirection::Right,
                    _ => RhombusDirection::Bottom,
                };
                rhombi.push(RhombusPiece { direction, values: [v[0], v[1], v[2], v[3]] });
            }
            "hexagon" | "side2up" | "side2down" => {
                let shape = match keyword {
                    "hexagon" => PolygonShape::Hexagon,
                    "side2up" => PolygonShape::Side2Up,
                    _ => PolygonShape::Side2Down,
                };
                let split = rest.iter().position(|&t| t == "refine");
                let boundary_tokens = &rest[..split.unwrap_or(rest.len())];
                let v = f2_values(boundary_tokens, 6)?;
                let boundary = [v[0], v[1], v[2], v[3], v[4], v[5]];
                let piece = match split {
                    None => build_polygon_piece(shape, boundary, 0)?,
                    Some(at) => {
                        let interior: Vec<F3> = rest[at + 1..]
                            .iter()
                            .map(|t| {
                                t.parse::<u8>()
                                    .map(F3::from)
                                    .map_err(|_| err("refine values must be 0, 1, or 2"))
                            })
                            .collect::<Result<_>>()?;
                        let m = shape.interval_count();
                        if interior.len() != m - 6 {
                            return Err(err(&format!("expected {} refine values", m - 6)));
                        }
                        let region = SlotRegion::polygon(shape);
                        let mut assignment: Vec<F3> =
                            boundary.iter().map(|&b| F3::from(b)).collect();
                        assignment.extend(interior);
                        let fixed: Vec<(usize, F3)> =
                            assignment.iter().copied().enumerate().collect();
                        if atomic_refinement(&region, &fixed).is_empty() {
                            return Err(err("refine values are not an atomic tiling"));
                        }
                        let stitched = stitch(&region, &assignment);
                        PolygonPiece { shape, boundary, refinement: assignment, stitched }
                    }
                };
                polygon_shapes.insert(shape);
                if polygon_shapes.len() > 1 {
                    return Err(err("at most one polygon shape is supported"));
                }
                polygons.push(piece);
            }
            other => return Err(err(&format!("unknown shape keyword `{other}`"))),
        }
    }
    derive_piece_set(PieceSetId::Custom, triangles, rhombi, polygons)
}


/// Internal helper shared with tests: the atomic cover of a rhombus with F3
/// outer values.
fn rhombus_cover_f3(
    direction: RhombusDirection,
    v: [F3; 4],
    m: F3,
) -> (AtomicPiece, AtomicPiece) {
    match direction {
        RhombusDirection::Left => (
            AtomicPiece { orientation: Orientation::Down, values: [v[3], v[0], m] },
            AtomicPiece { orientation: Orientation::Up, values: [m, v[1], v[2]] },
        ),
        RhombusDirection::Right => (
            AtomicPiece { orientation: Orientation::Down, values: [m, v[0], v[1]] },
            AtomicPiece { orientation: Orientation::Up, values: [v[3], m, v[2]] },
        ),
        RhombusDirection::Bottom => (
            AtomicPiece { orientation: Orientation::Down, values: [v[3], m, v[2]] },
            AtomicPiece { orientation: Orientation::Up, values: [v[0], v[1], m] },
        ),
    }
}
