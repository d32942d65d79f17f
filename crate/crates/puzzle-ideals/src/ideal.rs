//! Assembly of puzzle ideals from the generator families F1..F6.
//!
//! A puzzle ideal encodes the tilings of the size-`n` triangle as its variety
//! over F3.  The six families are: F1 field equations, F2 boundary bindings,
//! F3 triangle sum conditions, F4 distinguishing instances per triangle,
//! F5 forbidding instances per rhombus placement, and F6 implying instances
//! per polygon placement and implicit piece.  The side-free variant leaves
//! one boundary word unbound, replacing the field equations of its intervals
//! by Boolean ones and dropping their F2 bindings.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf3::F3;
use crate::grid::{BoundarySide, Orientation, TriangleGrid};
use crate::pieces::{ImplicitKind, PieceSet};
use crate::poly::PolyF3;
use crate::synthesis::{synthesize, TemplateBundle};

/// One side of the boundary: either a fixed binary word or left free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundarySpec {
    /// The side's intervals are bound to the letters of this word.
    Word(Vec<u8>),
    /// The side is unconstrained (side-free puzzles).
    Free,
}

impl BoundarySpec {
    /// Wraps a letter vector, validating that it is binary.
    pub fn word(letters: Vec<u8>) -> Result<BoundarySpec> {
        if letters.iter().any(|&l| l > 1) {
            return Err(Error::BadBoundary("boundary letters must be 0 or 1".into()));
        }
        Ok(BoundarySpec::Word(letters))
    }

    /// Whether this side is free.
    pub fn is_free(&self) -> bool {
        matches!(self, BoundarySpec::Free)
    }

    fn letters(&self) -> Option<&[u8]> {
        match self {
            BoundarySpec::Word(w) => Some(w),
            BoundarySpec::Free => None,
        }
    }
}

/// Which generator families the ideal includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealKind {
    /// F1..F4 only.
    Atomic,
    /// F1..F5.
    Forbidding,
    /// F1..F6.
    Full,
    /// F1..F6 with one free side (Boolean field equations, no bindings).
    SideFree,
}

/// A puzzle ideal: the grid, piece set, boundary data, and the generator
/// families F1..F6.  Families excluded by the kind are empty; structurally
/// zero polynomials (for example forbidding instances of a set with nothing
/// to forbid) are kept in the family lists so that the documented
/// cardinalities hold, and dropped only when the flat generator list is
/// requested.
#[derive(Debug, Clone)]
pub struct PuzzleIdeal {
    /// The underlying triangular grid.
    pub grid: TriangleGrid,
    /// The piece set the ideal encodes.
    pub piece_set: PieceSet,
    /// Boundary sides in the order (lambda, mu, nu) = (left, right, bottom).
    pub boundary: [BoundarySpec; 3],
    /// Which families are included.
    pub kind: IdealKind,
    /// The families F1..F6 (index 0 holds F1).
    pub families: [Vec<PolyF3>; 6],
}

/// Per-family generator counts, as reported by [`PuzzleIdeal::stats`].
pub type IdealStats = [usize; 6];

impl PuzzleIdeal {
    /// The number of grid intervals (variables).
    pub fn variable_count(&self) -> usize {
        self.grid.interval_count()
    }

    /// Cardinality of each family, zero polynomials included.
    pub fn stats(&self) -> IdealStats {
        [
            self.families[0].len(),
            self.families[1].len(),
            self.families[2].len(),
            self.families[3].len(),
            self.families[4].len(),
            self.families[5].len(),
        ]
    }

    /// The flat generator list: families concatenated, syntactic duplicates
    /// and zero polynomials removed, first occurrence order preserved.
    pub fn generators(&self) -> Vec<PolyF3> {
        let mut seen: HashSet<PolyF3> = HashSet::new();
        let mut out = Vec::new();
        for family in &self.families {
            for poly in family {
                if poly.is_zero() {
                    continue;
                }
                if seen.insert(poly.clone()) {
                    out.push(poly.clone());
                }
            }
        }
        out
    }

    /// Dumps the ideal in the regression-fixture format: a `# F<k>` header
    /// per family followed by one generator per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (index, family) in self.families.iter().enumerate() {
            out.push_str(&format!("# F{}\n", index + 1));
            for poly in family {
                out.push_str(&format!("{poly}\n"));
            }
        }
        out
    }
}

const SIDES: [BoundarySide; 3] = [BoundarySide::Left, BoundarySide::Right, BoundarySide::Bottom];

/// Validates the boundary triple and returns `(n, k)`.
pub(crate) fn check_boundary(
    boundary: &[BoundarySpec; 3],
    kind: IdealKind,
) -> Result<(usize, usize)> {
    let free_count = boundary.iter().filter(|b| b.is_free()).count();
    match kind {
        IdealKind::SideFree => {
            if free_count != 1 {
                return Err(Error::BadBoundary(
                    "side-free ideals need exactly one free side".into(),
                ));
            }
        }
        _ => {
            if free_count != 0 {
                return Err(Error::BadBoundary(format!(
                    "free sides require the side-free kind, got {free_count}"
                )));
            }
        }
    }
    let words: Vec<&[u8]> = boundary.iter().filter_map(|b| b.letters()).collect();
    let n = words[0].len();
    if n == 0 {
        return Err(Error::BadBoundary("empty boundary word".into()));
    }
    if words.iter().any(|w| w.len() != n) {
        return Err(Error::BadBoundary("boundary words differ in length".into()));
    }
    let k = words[0].iter().filter(|&&l| l == 1).count();
    if words.iter().any(|w| w.iter().filter(|&&l| l == 1).count() != k) {
        return Err(Error::BadBoundary(
            "boundary words differ in number of ones".into(),
        ));
    }
    Ok((n, k))
}

/// Builds the puzzle ideal for the boundary triple (lambda, mu, nu) bound to
/// the (left, right, bottom) sides, over the given piece set.
pub fn build_ideal(
    lambda: &BoundarySpec,
    mu: &BoundarySpec,
    nu: &BoundarySpec,
    piece_set: &PieceSet,
    kind: IdealKind,
) -> Result<PuzzleIdeal> {
    if !piece_set.separable {
        return Err(Error::NotSeparable(format!("piece set {}", piece_set.id)));
    }
    let boundary = [lambda.clone(), mu.clone(), nu.clone()];
    let (n, _k) = check_boundary(&boundary, kind)?;
    let grid = TriangleGrid::new(n);
    let bundle = synthesize(piece_set);
    let families = build_families(&grid, piece_set, &bundle, &boundary, kind);
    Ok(PuzzleIdeal {
        grid,
        piece_set: piece_set.clone(),
        boundary,
        kind,
        families,
    })
}

/// The product of the match factors `1 - (x_v - value)^2` over the listed
/// interval bindings: 1 exactly when every interval carries its value, 0
/// otherwise.
fn occurrence_selector(bindings: impl IntoIterator<Item = (u32, F3)>) -> PolyF3 {
    let mut out = PolyF3::constant(F3::ONE);
    for (var, value) in bindings {
        let diff = PolyF3::variable(var).sub(&PolyF3::constant(value));
        out = out.mul(&PolyF3::constant(F3::ONE).sub(&diff.mul(&diff)));
    }
    out.normalize()
}

fn build_families(
    grid: &TriangleGrid,
    piece_set: &PieceSet,
    bundle: &TemplateBundle,
    boundary: &[BoundarySpec; 3],
    kind: IdealKind,
) -> [Vec<PolyF3>; 6] {
    let free_intervals: HashSet<u32> = boundary
        .iter()
        .zip(SIDES)
        .filter(|(spec, _)| spec.is_free())
        .flat_map(|(_, side)| grid.boundary_intervals(side))
        .collect();

    // F1: field equations, Boolean on free-side intervals.
    let f1: Vec<PolyF3> = (1..=grid.interval_count() as u32)
        .map(|var| {
            if free_intervals.contains(&var) {
                PolyF3::boolean_equation(var)
            } else {
                PolyF3::field_equation(var)
            }
        })
        .collect();

    // F2: boundary bindings on the bound sides.
    let mut f2 = Vec::new();
    for (spec, side) in boundary.iter().zip(SIDES) {
        let Some(letters) = spec.letters() else { continue };
        for (var, &letter) in grid.boundary_intervals(side).iter().zip(letters) {
            let binding =
                PolyF3::variable(*var).sub(&PolyF3::constant(F3::from(letter)));
            f2.push(binding);
        }
    }

    // F3: the sum of the three sides of every triangle vanishes.
    let mut triangles = Vec::new();
    for (r, y) in grid.up_triangles() {
        triangles.push((crate::grid::Orientation::Up, r, y));
    }
    for (r, y) in grid.down_triangles() {
        triangles.push((crate::grid::Orientation::Down, r, y));
    }
    let f3: Vec<PolyF3> = triangles
        .iter()
        .map(|&(o, r, y)| {
            let sides = grid.triangle_sides(o, r, y);
            sides
                .iter()
                .fold(PolyF3::zero(), |acc, &v| acc.add(&PolyF3::variable(v)))
        })
        .collect();

    // F4: one distinguishing instance per triangle.
    let f4: Vec<PolyF3> = triangles
        .iter()
        .map(|&(o, r, y)| {
            let sides = grid.triangle_sides(o, r, y);
            bundle
                .distinguishing(o)
                .rename_variables(|v| sides[(v - 1) as usize])
        })
        .collect();

    // F5: one forbidding instance per rhombus placement of each direction.
    let mut f5 = Vec::new();
    if kind != IdealKind::Atomic {
        for direction in crate::grid::RhombusDirection::ALL {
            let template = bundle.forbidding(direction);
            for placement in grid.rhombi(direction) {
                f5.push(
                    template.rename_variables(|v| placement.outer[(v - 1) as usize]),
                );
            }
        }
    }

    // F6: one implying instance per implicit piece and polygon placement of
    // its host shape.  Occurrence positions of the implicit piece that no
    // host placement covers (near the boundary, or on boards too small for
    // the polygon) can never be recovered, so their occurrence selector is
    // added as a generator to forbid them outright.
    let mut f6 = Vec::new();
    if matches!(kind, IdealKind::Full | IdealKind::SideFree) {
        for (index, piece) in piece_set.implicit.iter().enumerate() {
            let shape = piece_set.polygons[piece.host].shape;
            let template = bundle.implying(index);
            let placements = grid.polygon_placements(shape);
            for placement in &placements {
                f6.push(
                    template.rename_variables(|v| placement.slots[(v - 1) as usize]),
                );
            }
            match piece.kind {
                ImplicitKind::Rhombus(direction, values) => {
                    let covered: HashSet<[u32; 4]> = placements
                        .iter()
                        .map(|pp| {
                            let mut key = [0u32; 4];
                            for (i, &slot) in piece.designated_slots.iter().enumerate() {
                                key[i] = pp.slots[slot];
                            }
                            key
                        })
                        .collect();
                    for rp in grid.rhombi(direction) {
                        if !covered.contains(&rp.outer) {
                            f6.push(occurrence_selector(
                                rp.outer
                                    .iter()
                                    .copied()
                                    .zip(values.iter().map(|&v| F3::new(i64::from(v)))),
                            ));
                        }
                    }
                }
                ImplicitKind::AllTwos(orientation) => {
                    let designated: [usize; 3] = [
                        piece.designated_slots[0],
                        piece.designated_slots[1],
                        piece.designated_slots[2],
                    ];
                    let covered: HashSet<(usize, usize)> = placements
                        .iter()
                        .flat_map(|pp| {
                            pp.triangles
                                .iter()
                                .filter(|(o, _, slots)| *o == orientation && *slots == designated)
                                .map(|&(_, pos, _)| pos)
                        })
                        .collect();
                    let positions = match orientation {
                        Orientation::Up => grid.up_triangles(),
                        Orientation::Down => grid.down_triangles(),
                    };
                    for (r, y) in positions {
                        if !covered.contains(&(r, y)) {
                            let sides = grid.triangle_sides(orientation, r, y);
                            f6.push(occurrence_selector(
                                sides.iter().copied().zip([F3::TWO; 3]),
                            ));
                        }
                    }
                }
            }
        }
    }

    [f1, f2, f3, f4, f5, f6]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{parse_word, PolygonShape};
    use crate::pieces::{builtin_piece_set, PieceSetId};

    fn word(text: &str) -> BoundarySpec {
        BoundarySpec::Word(parse_word(text).unwrap())
    }

    #[test]
    fn reference_size6_family_contents() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let ideal = build_ideal(
            &word("010101"),
            &word("010101"),
            &word("101010"),
            &set,
            IdealKind::Atomic,
        )
        .unwrap();
        let f2: Vec<String> = ideal.families[1].iter().map(|p| p.to_string()).collect();
        for expected in ["x46", "x31 + 2", "x19", "x10 + 2", "x4", "x1 + 2"] {
            assert!(f2.contains(&expected.to_string()), "{expected} missing: {f2:?}");
        }
        let f3: Vec<String> = ideal.families[2].iter().map(|p| p.to_string()).collect();
        assert!(f3.contains(&"x1 + x2 + x3".to_string()));
        assert!(f3.contains(&"x56 + x57 + x63".to_string()));
    }

    #[test]
    fn family_cardinalities() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let ideal = build_ideal(
            &word("010101"),
            &word("010101"),
            &word("101010"),
            &set,
            IdealKind::Full,
        )
        .unwrap();
        let n = 6;
        let big_n = 3 * n * (n + 1) / 2;
        assert_eq!(ideal.stats(), [big_n, 3 * n, n * n, n * n, 3 * n * (n - 1) / 2, 0]);
    }

    #[test]
    fn hexagonal_set_f6_cardinality() {
        let set = builtin_piece_set(PieceSetId::OmegaC);
        let ideal = build_ideal(
            &word("010101"),
            &word("010101"),
            &word("101010"),
            &set,
            IdealKind::Full,
        )
        .unwrap();
        let placements = ideal.grid.polygon_placements(PolygonShape::Hexagon).len();
        assert_eq!(placements, 10);
        // One implying instance per hexagon placement, plus one occurrence
        // blocker for each of the 15 left-rhombus positions the 10 hexagon
        // placements do not cover.
        let left_rhombi = ideal
            .grid
            .rhombi(crate::grid::RhombusDirection::Left)
            .len();
        assert_eq!(left_rhombi, 15);
        assert_eq!(
            ideal.stats()[5],
            (placements + (left_rhombi - placements)) * set.implicit.len()
        );
    }

    #[test]
    fn atomic_kind_omits_f5_and_f6() {
        let set = builtin_piece_set(PieceSetId::OmegaT);
        let ideal = build_ideal(
            &word("0101"),
            &word("0101"),
            &word("0110"),
            &set,
            IdealKind::Atomic,
        )
        .unwrap();
        assert!(ideal.families[4].is_empty());
        assert!(ideal.families[5].is_empty());
        let forb = build_ideal(
            &word("0101"),
            &word("0101"),
            &word("0110"),
            &set,
            IdealKind::Forbidding,
        )
        .unwrap();
        assert_eq!(forb.stats()[4], 3 * 4 * 3 / 2);
    }

    #[test]
    fn side_free_swaps_field_equations_and_drops_bindings() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let ideal = build_ideal(
            &word("0101"),
            &word("0110"),
            &BoundarySpec::Free,
            &set,
            IdealKind::SideFree,
        )
        .unwrap();
        let n = 4;
        assert_eq!(ideal.stats()[1], 2 * n);
        let bottom = ideal.grid.boundary_intervals(BoundarySide::Bottom);
        for &var in &bottom {
            assert!(ideal.families[0].contains(&PolyF3::boolean_equation(var)));
        }
        assert!(ideal.families[0].contains(&PolyF3::field_equation(1)));
    }

    #[test]
    fn boundary_validation_errors() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let bad = build_ideal(&word("0101"), &word("011"), &word("0110"), &set, IdealKind::Full);
        assert!(matches!(bad, Err(Error::BadBoundary(_))));
        let bad = build_ideal(&word("0101"), &word("0111"), &word("0110"), &set, IdealKind::Full);
        assert!(matches!(bad, Err(Error::BadBoundary(_))));
        let bad = build_ideal(
            &word("0101"),
            &BoundarySpec::Free,
            &word("0110"),
            &set,
            IdealKind::Full,
        );
        assert!(matches!(bad, Err(Error::BadBoundary(_))));
    }

    #[test]
    fn size1_ideal_forces_the_zero_point() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let ideal = build_ideal(&word("0"), &word("0"), &word("0"), &set, IdealKind::Full)
            .unwrap();
        for gen in ideal.generators() {
            assert_eq!(gen.eval(&[F3::ZERO, F3::ZERO, F3::ZERO]).unwrap(), F3::ZERO);
        }
        // The point (1,1,1) violates the boundary bindings.
        assert!(ideal
            .generators()
            .iter()
            .any(|g| g.eval(&[F3::ONE, F3::ONE, F3::ONE]).unwrap() != F3::ZERO));
    }

    #[test]
    fn dump_has_family_headers_and_generators_drop_zeros() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let ideal = build_ideal(
            &word("01"),
            &word("01"),
            &word("10"),
            &set,
            IdealKind::Full,
        )
        .unwrap();
        let dump = ideal.dump();
        for header in ["# F1", "# F2", "# F3", "# F4", "# F5", "# F6"] {
            assert!(dump.contains(header));
        }
        assert!(ideal.generators().iter().all(|g| !g.is_zero()));
    }
}
