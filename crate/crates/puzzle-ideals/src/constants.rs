//! High-level structure-constant API joining the Groebner and oracle
//! backends: tiling recovery from variety points, plain and K-theoretic
//! counts, equivariant weight polynomials, and side-free sweeps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf3::F3;
use crate::grid::{
    binary_to_partition, BoundarySide, Orientation, PolygonShape, RhombusDirection, TriangleGrid,
};
use crate::groebner::{
    buchberger, eliminate, enumerate_variety, point_decomposition, GroebnerBasis, VarietyPoint,
};
use crate::ideal::{build_ideal, BoundarySpec, IdealKind, PuzzleIdeal};
use crate::oracle::{brute_force_tilings, lr_coefficient_tableaux};
use crate::par::par_map;
use crate::pieces::{PieceSet, PieceSetId};
use crate::poly::MonomialOrder;

/// Which computational backend resolves a puzzle instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Ideal construction, Buchberger, variety enumeration.
    Groebner,
    /// Combinatorial backtracking search.
    Oracle,
}

/// Default size guard for the Groebner backend; `PUZZLE_MAX_GB_N` overrides.
const DEFAULT_MAX_GB_N: usize = 8;

/// The largest triangle size the Groebner backend accepts.
pub fn max_gb_n() -> usize {
    std::env::var("PUZZLE_MAX_GB_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_GB_N)
}

fn guard_gb(n: usize) -> Result<()> {
    let limit = max_gb_n();
    if n > limit {
        return Err(Error::BackendInfeasible { n, limit });
    }
    Ok(())
}

/// A complete interval assignment of the size-`n` triangle, with derived
/// piece views.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    /// Triangle size.
    pub n: usize,
    /// Value of interval `i` at index `i - 1`.
    pub assignment: Vec<F3>,
}

/// One piece of the stitched view: atomic triangles merged across 2-valued
/// intervals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum StitchedPiece {
    /// A lone atomic triangle (no 2-valued side, or the all-twos piece).
    Triangle {
        orientation: Orientation,
        position: (usize, usize),
        values: [F3; 3],
    },
    /// Two triangles merged across their shared 2-valued middle interval.
    Rhombus {
        direction: RhombusDirection,
        position: (usize, usize),
        values: [F3; 4],
    },
}

/// One piece of the recovered view: the stitched view with each full polygon
/// stitching replaced by the polygon piece itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum RecoveredPiece {
    /// An F2 triangle of the original piece set.
    Triangle {
        orientation: Orientation,
        position: (usize, usize),
        values: [F3; 3],
    },
    /// An F2 rhombus of the original piece set.
    Rhombus {
        direction: RhombusDirection,
        position: (usize, usize),
        values: [F3; 4],
    },
    /// A polygon piece at its placement position.
    Polygon {
        shape: PolygonShape,
        position: (usize, usize),
    },
}

impl Tiling {
    /// The value of interval `i` (1-based).
    pub fn value(&self, interval: u32) -> F3 {
        self.assignment[(interval - 1) as usize]
    }

    /// The atomic view: every unit triangle with its side values in
    /// canonical order.
    pub fn atomic_pieces(&self) -> Vec<(Orientation, (usize, usize), [F3; 3])> {
        let grid = TriangleGrid::new(self.n);
        let mut out = Vec::new();
        for orientation in [Orientation::Up, Orientation::Down] {
            let positions = match orientation {
                Orientation::Up => grid.up_triangles(),
                Orientation::Down => grid.down_triangles(),
            };
            for (r, y) in positions {
                let values = grid
                    .triangle_sides(orientation, r, y)
                    .map(|s| self.value(s));
                out.push((orientation, (r, y), values));
            }
        }
        out
    }

    /// The stitched view: triangles sharing a 2-valued interval merged into
    /// rhombi.  The all-twos triangle (when a piece set admits it) stays a
    /// lone triangle.
    pub fn stitched(&self) -> Vec<StitchedPiece> {
        let grid = TriangleGrid::new(self.n);
        // Map each interior interval to the unique rhombus placement whose
        // middle it is.
        let mut middle_to_placement = BTreeMap::new();
        for direction in RhombusDirection::ALL {
            for placement in grid.rhombi(direction) {
                middle_to_placement.insert(placement.middle, placement);
            }
        }
        let mut out = Vec::new();
        let mut consumed: BTreeMap<(Orientation, (usize, usize)), bool> = BTreeMap::new();
        for (orientation, position, values) in self.atomic_pieces() {
            consumed.entry((orientation, position)).or_insert(false);
            let twos = values.iter().filter(|v| **v == F3::TWO).count();
            if twos != 1 {
                continue;
            }
            let (r, y) = position;
            let sides = grid.triangle_sides(orientation, r, y);
            let middle = sides[values.iter().position(|v| *v == F3::TWO).unwrap()];
            let placement = &middle_to_placement[&middle];
            // Emit each rhombus once, from its up triangle.
            if orientation != Orientation::Up {
                consumed.insert((orientation, position), true);
                continue;
            }
            consumed.insert((orientation, position), true);
            out.push(StitchedPiece::Rhombus {
                direction: placement.direction,
                position: (placement.row, placement.pos),
                values: placement.outer.map(|s| self.value(s)),
            });
        }
        for (orientation, position, values) in self.atomic_pieces() {
            if !consumed[&(orientation, position)] {
                out.push(StitchedPiece::Triangle {
                    orientation,
                    position,
                    values,
                });
            }
        }
        out.sort();
        out
    }

    /// The recovered view over a piece set: polygon stitchings collapsed to
    /// their pieces; everything else taken from the stitched view.
    pub fn recovered(&self, set: &PieceSet) -> Vec<RecoveredPiece> {
        let grid = TriangleGrid::new(self.n);
        // Polygon occurrences: placements whose slots carry exactly the
        // chosen refinement assignment.
        let mut absorbed: Vec<(Orientation, (usize, usize))> = Vec::new();
        let mut out = Vec::new();
        for polygon in &set.polygons {
            for pp in grid.polygon_placements(polygon.shape) {
                let matches = pp
                    .slots
                    .iter()
                    .zip(&polygon.refinement)
                    .all(|(&interval, &value)| self.value(interval) == value);
                if matches {
                    absorbed.extend(pp.triangles.iter().map(|&(o, pos, _)| (o, pos)));
                    out.push(RecoveredPiece::Polygon {
                        shape: polygon.shape,
                        position: (pp.row, pp.pos),
                    });
                }
            }
        }
        for piece in self.stitched() {
            let covered: Vec<(Orientation, (usize, usize))> = match &piece {
                StitchedPiece::Triangle { orientation, position, .. } => {
                    vec![(*orientation, *position)]
                }
                StitchedPiece::Rhombus { direction, position, .. } => {
                    let placement = grid.rhombus(*direction, position.0, position.1);
                    vec![
                        (Orientation::Up, placement.up),
                        (Orientation::Down, placement.down),
                    ]
                }
            };
            if covered.iter().any(|t| absorbed.contains(t)) {
                continue;
            }
            out.push(match piece {
                StitchedPiece::Triangle { orientation, position, values } => {
                    RecoveredPiece::Triangle { orientation, position, values }
                }
                StitchedPiece::Rhombus { direction, position, values } => {
                    RecoveredPiece::Rhombus { direction, position, values }
                }
            });
        }
        out.sort();
        out
    }

    /// The bottom boundary word of the tiling.
    pub fn bottom_word(&self) -> Vec<u8> {
        let grid = TriangleGrid::new(self.n);
        grid.boundary_intervals(BoundarySide::Bottom)
            .iter()
            .map(|&v| self.value(v).value())
            .collect()
    }
}

/// Reinterprets a variety point of a puzzle ideal as a tiling, validating
/// that every unit triangle carries an atomic refinement piece.
pub fn point_to_tiling(point: &VarietyPoint, set: &PieceSet, n: usize) -> Result<Tiling> {
    let grid = TriangleGrid::new(n);
    if point.vars.len() != grid.interval_count() {
        return Err(Error::InvalidPoint(format!(
            "expected {} interval values, got {}",
            grid.interval_count(),
            point.vars.len()
        )));
    }
    let tiling = Tiling {
        n,
        assignment: point.assignment.clone(),
    };
    for (orientation, (r, y), values) in tiling.atomic_pieces() {
        let ok = set
            .refinement_of(orientation)
            .iter()
            .any(|piece| *piece == values);
        if !ok {
            return Err(Error::InvalidPoint(format!(
                "triangle {orientation:?} ({r},{y}) carries {values:?}, not an atomic piece"
            )));
        }
    }
    Ok(tiling)
}

/// The result of a structure-constant computation.
#[derive(Debug, Clone)]
pub struct ConstantResult {
    /// Number of tilings.
    pub count: u64,
    /// The signed constant: for K-theoretic piece sets the count multiplied
    /// by `(-1)^(|nu| - |lambda| - |mu|)`; otherwise equal to the count.
    pub signed: i64,
    /// The tilings themselves.
    pub tilings: Vec<Tiling>,
}

fn word_weight(word: &[u8]) -> usize {
    let (partition, _) = binary_to_partition(word);
    partition.iter().sum()
}

fn k_sign(lambda: &[u8], mu: &[u8], nu: &[u8]) -> i64 {
    let excess = word_weight(nu) as i64 - word_weight(lambda) as i64 - word_weight(mu) as i64;
    if excess.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Computes the structure constant for a boundary word triple over a piece
/// set using the chosen backend.
pub fn constant(
    lambda: &[u8],
    mu: &[u8],
    nu: &[u8],
    set: &PieceSet,
    backend: Backend,
) -> Result<ConstantResult> {
    let l = BoundarySpec::word(lambda.to_vec())?;
    let m = BoundarySpec::word(mu.to_vec())?;
    let v = BoundarySpec::word(nu.to_vec())?;
    let tilings = match backend {
        Backend::Oracle => brute_force_tilings(&l, &m, &v, set)?
            .into_iter()
            .map(|assignment| Tiling { n: lambda.len(), assignment })
            .collect::<Vec<_>>(),
        Backend::Groebner => {
            guard_gb(lambda.len())?;
            let ideal = build_ideal(&l, &m, &v, set, IdealKind::Full)?;
            let basis = groebner_basis_of(&ideal)?;
            enumerate_variety(&basis)
                .iter()
                .map(|point| point_to_tiling(point, set, lambda.len()))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let count = tilings.len() as u64;
    let signed = if set.id.is_k_theoretic() {
        k_sign(lambda, mu, nu) * count as i64
    } else {
        count as i64
    };
    Ok(ConstantResult { count, signed, tilings })
}

/// Computes the lexicographic Groebner basis of a puzzle ideal under the
/// natural variable order.  Subject to the same size guard as the Groebner
/// backend.
pub fn groebner_basis_of(ideal: &PuzzleIdeal) -> Result<GroebnerBasis> {
    guard_gb(ideal.grid.n())?;
    let order = MonomialOrder::natural_lex(ideal.variable_count());
    buchberger(&ideal.generators(), &order)
}

/// An integer-coefficient polynomial in the equivariant parameters
/// `y_1..y_n`, kept both as the per-tiling factor lists and in expanded
/// form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPoly {
    /// For each tiling, the `(i, j)` pairs of its factors `y_i - y_j`.
    pub factors: Vec<Vec<(usize, usize)>>,
    /// Expanded sum: exponent vector (index `i` holds the power of
    /// `y_(i+1)`) mapped to its integer coefficient.
    pub expanded: BTreeMap<Vec<u8>, i64>,
}

impl WeightPoly {
    /// Whether the polynomial is a constant, and its value if so.
    pub fn as_constant(&self) -> Option<i64> {
        let nonzero: Vec<_> = self.expanded.iter().filter(|(_, &c)| c != 0).collect();
        match nonzero.as_slice() {
            [] => Some(0),
            [(exps, &c)] if exps.iter().all(|&e| e == 0) => Some(c),
            _ => None,
        }
    }
}

impl std::fmt::Display for WeightPoly {
    /// Expanded form, terms `(+|-)c*y_i...` sorted by total degree then by
    /// exponent vector.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms: Vec<(&Vec<u8>, i64)> = self
            .expanded
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e, c))
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by_key(|(exps, _)| {
            (exps.iter().map(|&e| u32::from(e)).sum::<u32>(), exps.to_vec())
        });
        let mut first = true;
        for (exps, coeff) in terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}{}", if coeff < 0 { "-" } else { "+" }, coeff.abs())?;
            for (index, &exp) in exps.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => write!(f, "*y{}", index + 1)?,
                    _ => write!(f, "*y{}^{exp}", index + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// The equivariant pieces of an Omega_T tiling: recovered bottom rhombi with
/// boundary values (0,1,0,1), reported as their `(row, pos)` placements.
pub fn equivariant_pieces(tiling: &Tiling) -> Vec<(usize, usize)> {
    tiling
        .stitched()
        .iter()
        .filter_map(|piece| match piece {
            StitchedPiece::Rhombus {
                direction: RhombusDirection::Bottom,
                position,
                values,
            } if *values == [F3::ZERO, F3::ONE, F3::ZERO, F3::ONE] => Some(*position),
            _ => None,
        })
        .collect()
}

/// The drag weight `(i, j)` of an equivariant piece at bottom-rhombus
/// position `(r, y)`: translate the piece one row at a time parallel to the
/// right side (South-East) until it exits through the bottom edge, giving
/// `i`; translating parallel to the left side (South-West) gives `j`.
pub fn drag_weight(n: usize, position: (usize, usize)) -> (usize, usize) {
    let (start_row, y) = position;
    // One SE step moves the piece one row down and one slot to the right;
    // one SW step moves it one row down keeping its slot index.
    let mut row = start_row;
    let mut se = y;
    let mut sw = y;
    while row < n {
        row += 1;
        se += 1;
        sw += 0;
    }
    (se, sw)
}

/// Computes the T-equivariant structure constant as a weight polynomial over
/// the Omega_T tilings (oracle backend; the weights require tilings, not
/// just counts).
pub fn equivariant_constant(lambda: &[u8], mu: &[u8], nu: &[u8]) -> Result<WeightPoly> {
    let n = lambda.len();
    let set = crate::pieces::builtin_piece_set(PieceSetId::OmegaT);
    let result = constant(lambda, mu, nu, &set, Backend::Oracle)?;
    let mut factors = Vec::new();
    let mut expanded: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for tiling in &result.tilings {
        let pairs: Vec<(usize, usize)> = equivariant_pieces(tiling)
            .into_iter()
            .map(|position| drag_weight(n, position))
            .collect();
        // Product of the linear factors (y_i - y_j).
        let mut product: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
        product.insert(vec![0; n], 1);
        for &(i, j) in &pairs {
            let mut next: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
            for (exps, coeff) in &product {
                for (var, sign) in [(i, 1i64), (j, -1i64)] {
                    let mut e = exps.clone();
                    e[var - 1] += 1;
                    *next.entry(e).or_insert(0) += coeff * sign;
                }
            }
            product = next;
        }
        for (e, c) in product {
            *expanded.entry(e).or_insert(0) += c;
        }
        factors.push(pairs);
    }
    expanded.retain(|_, c| *c != 0);
    Ok(WeightPoly { factors, expanded })
}

/// Computes the map from bottom boundary word to tiling count with the
/// bottom side left free.
pub fn side_free_sweep(
    lambda: &[u8],
    mu: &[u8],
    set: &PieceSet,
    backend: Backend,
) -> Result<BTreeMap<Vec<u8>, u64>> {
    let l = BoundarySpec::word(lambda.to_vec())?;
    let m = BoundarySpec::word(mu.to_vec())?;
    match backend {
        Backend::Oracle => {
            let tilings = brute_force_tilings(&l, &m, &BoundarySpec::Free, set)?;
            let n = lambda.len();
            let mut out: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
            for assignment in tilings {
                let tiling = Tiling { n, assignment };
                *out.entry(tiling.bottom_word()).or_insert(0) += 1;
            }
            Ok(out)
        }
        Backend::Groebner => {
            let n = lambda.len();
            guard_gb(n)?;
            let ideal = build_ideal(&l, &m, &BoundarySpec::Free, set, IdealKind::SideFree)?;
            let grid = TriangleGrid::new(n);
            let bottom = grid.boundary_intervals(BoundarySide::Bottom);
            let eliminated: Vec<u32> = (1..=grid.interval_count() as u32)
                .filter(|v| !bottom.contains(v))
                .collect();
            let order = MonomialOrder::block_lex(eliminated, bottom.clone());
            let basis = buchberger(&ideal.generators(), &order)?;
            let elimination = eliminate(&basis)?;
            let decomposition = point_decomposition(&elimination);
            let generators = ideal.generators();
            let natural = MonomialOrder::natural_lex(grid.interval_count());
            let entries: Vec<Result<(Vec<u8>, u64)>> =
                par_map(decomposition, |(point, prime)| {
                    let word: Vec<u8> = bottom
                        .iter()
                        .map(|&v| point.value_of(v).value())
                        .collect();
                    let mut sum_ideal = generators.clone();
                    sum_ideal.extend(prime);
                    let sum_basis = buchberger(&sum_ideal, &natural)?;
                    let count = enumerate_variety(&sum_basis).len() as u64;
                    Ok((word, count))
                });
            let mut out = BTreeMap::new();
            for entry in entries {
                let (word, count) = entry?;
                if count > 0 {
                    out.insert(word, count);
                }
            }
            Ok(out)
        }
    }
}

/// Convenience: the Littlewood-Richardson coefficient for boundary words.
pub fn lr_for_words(lambda: &[u8], mu: &[u8], nu: &[u8]) -> u64 {
    let (l, _) = binary_to_partition(lambda);
    let (m, _) = binary_to_partition(mu);
    let (v, _) = binary_to_partition(nu);
    lr_coefficient_tableaux(&l, &m, &v)
}
