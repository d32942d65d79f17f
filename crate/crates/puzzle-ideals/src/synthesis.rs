//! Template polynomial synthesis for a piece set.
//!
//! Three kinds of templates are produced.  Distinguishing polynomials (one per
//! orientation, 3 variables) vanish exactly on the atomic refinement pieces
//! of that orientation.  Forbidding polynomials (one per rhombus direction, 4
//! variables) are nonzero exactly on the forbidden rhombus values.  Implying
//! polynomials (one per implicit piece, m variables for an m-interval polygon
//! placement) force the full polygon stitching whenever the implicit piece's
//! values appear at its designated position.
//!
//! Distinguishing and forbidding templates are obtained by dense
//! interpolation over all assignments of their variables; values the
//! definitions leave free are pinned to 0, which makes each system square and
//! the output deterministic.  Implying templates use a closed product form
//! whose factors select the designated values and detect deviation from the
//! host refinement; interpolation over 3^m assignments would be intractable
//! for the 12-interval hexagon.

use std::collections::BTreeSet;

use crate::gf3::{f3_linear_solve, F3};
use crate::grid::{Orientation, RhombusDirection};
use crate::pieces::{psi, AtomicPiece, ImplicitPiece, PieceSet};
use crate::poly::{Monomial, PolyF3};

/// The full set of synthesized templates for one piece set.
///
/// Variables are local: `x1..x3` for distinguishing templates in the
/// orientation's canonical side order, `x1..x4` for forbidding templates in
/// the direction's canonical outer order, and `x1..xm` for implying templates
/// indexed by polygon slot (slot `s` maps to `x(s+1)`).
#[derive(Debug, Clone)]
pub struct TemplateBundle {
    /// Distinguishing template for upward triangles.
    pub f_up: PolyF3,
    /// Distinguishing template for downward triangles.
    pub f_down: PolyF3,
    /// Forbidding template for left rhombi.
    pub f_left: PolyF3,
    /// Forbidding template for right rhombi.
    pub f_right: PolyF3,
    /// Forbidding template for bottom rhombi.
    pub f_bottom: PolyF3,
    /// Implying templates, parallel to the piece set's implicit list.
    pub f_implying: Vec<PolyF3>,
}

impl TemplateBundle {
    /// The distinguishing template for the given orientation.
    pub fn distinguishing(&self, orientation: Orientation) -> &PolyF3 {
        match orientation {
            Orientation::Up => &self.f_up,
            Orientation::Down => &self.f_down,
        }
    }

    /// The forbidding template for the given rhombus direction.
    pub fn forbidding(&self, direction: RhombusDirection) -> &PolyF3 {
        match direction {
            RhombusDirection::Left => &self.f_left,
            RhombusDirection::Right => &self.f_right,
            RhombusDirection::Bottom => &self.f_bottom,
        }
    }

    /// The implying template for the implicit piece at the given index in the
    /// piece set's implicit list.
    pub fn implying(&self, index: usize) -> &PolyF3 {
        &self.f_implying[index]
    }
}

/// Synthesizes every template for the piece set.
pub fn synthesize(set: &PieceSet) -> TemplateBundle {
    TemplateBundle {
        f_up: synth_distinguishing(&set.refinement, Orientation::Up),
        f_down: synth_distinguishing(&set.refinement, Orientation::Down),
        f_left: synth_forbidding(set, RhombusDirection::Left),
        f_right: synth_forbidding(set, RhombusDirection::Right),
        f_bottom: synth_forbidding(set, RhombusDirection::Bottom),
        f_implying: set
            .implicit
            .iter()
            .map(|p| synth_implying(set, p))
            .collect(),
    }
}

/// Enumerates all `3^m` assignments of `m` variables in ascending base-3
/// order (first variable least significant).
fn assignments(m: usize) -> impl Iterator<Item = Vec<F3>> {
    let total = 3usize.pow(m as u32);
    (0..total).map(move |code| {
        let mut point = Vec::with_capacity(m);
        let mut rest = code;
        for _ in 0..m {
            point.push(F3::new((rest % 3) as i64));
            rest /= 3;
        }
        point
    })
}

/// Evaluates a polynomial in the variables `x1..xm` on all `3^m` assignments
/// at once.  The result is indexed like [`assignments`]: the value at code
/// `c` is the evaluation at the point whose `i`-th coordinate is digit `i` of
/// `c` in base 3 (first variable least significant).
///
/// Works by substituting the last variable with each field value and
/// recursing, which is far cheaper than `3^m` independent evaluations for
/// the 9- and 12-variable implying templates.
pub fn eval_table(poly: &PolyF3, m: usize) -> Vec<F3> {
    if m == 0 {
        return vec![poly.eval(&[]).expect("constant polynomial")];
    }
    let mut table = Vec::with_capacity(3usize.pow(m as u32));
    for value in F3::ALL {
        let reduced = poly.substitute_value(m as u32, value);
        table.extend(eval_table(&reduced, m - 1));
    }
    table
}

/// Interpolates the unique exponent-reduced polynomial in `m` variables whose
/// value at every assignment is given by `table`.
fn interpolate<T: Fn(&[F3]) -> F3>(m: usize, table: T) -> PolyF3 {
    // Basis: all monomials with per-variable exponent in {0, 1, 2}.
    let basis: Vec<Monomial> = assignments(m)
        .map(|exps| {
            Monomial::from_factors(
                exps.iter()
                    .enumerate()
                    .map(|(i, e)| (i as u32 + 1, e.value()))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut rows = Vec::with_capacity(basis.len());
    let mut rhs = Vec::with_capacity(basis.len());
    for point in assignments(m) {
        let row: Vec<F3> = basis
            .iter()
            .map(|mono| {
                mono.factors().iter().fold(F3::ONE, |acc, &(var, exp)| {
                    let mut power = F3::ONE;
                    for _ in 0..exp {
                        power *= point[(var - 1) as usize];
                    }
                    acc * power
                })
            })
            .collect();
        rows.push(row);
        rhs.push(table(&point));
    }
    let coeffs = f3_linear_solve(&rows, &rhs)
        .expect("square Vandermonde-style system over F3 is always consistent");
    let mut poly = PolyF3::zero();
    for (mono, c) in basis.into_iter().zip(coeffs) {
        poly = poly.add(&PolyF3::term(mono, c));
    }
    poly
}

/// Synthesizes the distinguishing polynomial for one orientation: a
/// 3-variable polynomial vanishing exactly on the refinement pieces of that
/// orientation among the 9 zero-sum triples, equal to 1 on the remaining
/// zero-sum triples, and 0 elsewhere.
pub fn synth_distinguishing(
    refinement: &BTreeSet<AtomicPiece>,
    orientation: Orientation,
) -> PolyF3 {
    let allowed: BTreeSet<[F3; 3]> = refinement
        .iter()
        .filter(|p| p.orientation == orientation)
        .map(|p| p.values)
        .collect();
    interpolate(3, |point| {
        let values = [point[0], point[1], point[2]];
        if !(values[0] + values[1] + values[2]).is_zero() {
            F3::ZERO
        } else if allowed.contains(&values) {
            F3::ZERO
        } else {
            F3::ONE
        }
    })
}

/// Synthesizes the forbidding polynomial for one rhombus direction: a
/// 4-variable polynomial equal to 1 on the direction's forbidden values,
/// vanishing on every other atomically coverable value tuple, and 0 off that
/// universe.
pub fn synth_forbidding(set: &PieceSet, direction: RhombusDirection) -> PolyF3 {
    let universe: BTreeSet<[F3; 4]> = psi(direction).into_iter().collect();
    let forbidden: BTreeSet<[F3; 4]> = set
        .forbidden_of(direction)
        .into_iter()
        .map(|v| v.map(F3::from))
        .collect();
    interpolate(4, |point| {
        let values = [point[0], point[1], point[2], point[3]];
        if forbidden.contains(&values) {
            F3::ONE
        } else {
            debug_assert!(!universe.contains(&values) || !forbidden.contains(&values));
            F3::ZERO
        }
    })
}

/// Synthesizes the implying polynomial for one implicit piece.
///
/// Writing `z` for the slot variables, `p` for the designated values, and `x`
/// for the host polygon's full refinement assignment, the template is
///
/// ```text
/// f = M * (1 - E),
/// M = prod over designated slots k of (1 - (z_k - p_k)^2),
/// E = prod over the remaining slots i of (1 - (z_i - x_i)^2).
/// ```
///
/// `M` is 1 exactly when the designated slots carry `p` and 0 otherwise; `E`
/// is 1 exactly when every remaining slot matches the refinement.  So `f`
/// vanishes unless the implicit piece is present with the surrounding slots
/// deviating from the stitching, in which case it is 1.
pub fn synth_implying(set: &PieceSet, piece: &ImplicitPiece) -> PolyF3 {
    let host = &set.polygons[piece.host];
    let designated: BTreeSet<usize> = piece.designated_slots.iter().copied().collect();
    let mut selector = PolyF3::constant(F3::ONE);
    for (&slot, &value) in piece.designated_slots.iter().zip(&piece.designated_values) {
        selector = selector.mul(&match_factor(slot, value));
    }
    let mut agreement = PolyF3::constant(F3::ONE);
    for (slot, &value) in host.refinement.iter().enumerate() {
        if !designated.contains(&slot) {
            agreement = agreement.mul(&match_factor(slot, value));
        }
    }
    let deviation = PolyF3::constant(F3::ONE).sub(&agreement);
    selector.mul(&deviation).normalize()
}

/// The polynomial `1 - (x_(slot+1) - value)^2`, which is 1 when the variable
/// equals `value` and 0 otherwise.
fn match_factor(slot: usize, value: F3) -> PolyF3 {
    let var = PolyF3::variable(slot as u32 + 1);
    let diff = var.sub(&PolyF3::constant(value));
    PolyF3::constant(F3::ONE).sub(&diff.mul(&diff)).normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::par_all;
    use crate::pieces::{builtin_piece_set, PieceSetId};

    fn eval(poly: &PolyF3, point: &[F3]) -> F3 {
        poly.eval(point).unwrap()
    }

    fn distinguishing_table_holds(set: &PieceSet, orientation: Orientation) -> bool {
        let poly = synth_distinguishing(&set.refinement, orientation);
        assignments(3).all(|point| {
            let values = [point[0], point[1], point[2]];
            let expected = if !(values[0] + values[1] + values[2]).is_zero() {
                F3::ZERO
            } else if set.refines(&AtomicPiece::new(orientation, values)) {
                F3::ZERO
            } else {
                F3::ONE
            };
            eval(&poly, &point) == expected
        })
    }

    fn forbidding_table_holds(set: &PieceSet, direction: RhombusDirection) -> bool {
        let poly = synth_forbidding(set, direction);
        let forbidden: BTreeSet<[F3; 4]> = set
            .forbidden_of(direction)
            .into_iter()
            .map(|v| v.map(F3::from))
            .collect();
        assignments(4).all(|point| {
            let values = [point[0], point[1], point[2], point[3]];
            let expected = if forbidden.contains(&values) { F3::ONE } else { F3::ZERO };
            eval(&poly, &point) == expected
        })
    }

    fn implying_table_holds(set: &PieceSet, index: usize) -> bool {
        let piece = &set.implicit[index];
        let poly = synth_implying(set, piece);
        let host = &set.polygons[piece.host];
        let m = host.refinement.len();
        let designated: BTreeSet<usize> = piece.designated_slots.iter().copied().collect();
        let table = eval_table(&poly, m);
        let points: Vec<(usize, Vec<F3>)> = assignments(m).enumerate().collect();
        par_all(points, |(code, point)| {
            let selected = piece
                .designated_slots
                .iter()
                .zip(&piece.designated_values)
                .all(|(&s, &v)| point[s] == v);
            let agrees = host
                .refinement
                .iter()
                .enumerate()
                .filter(|(s, _)| !designated.contains(s))
                .all(|(s, &v)| point[s] == v);
            let expected = if selected && !agrees { F3::ONE } else { F3::ZERO };
            table[code] == expected
        })
    }

    #[test]
    fn distinguishing_tables_for_all_builtin_sets() {
        for id in PieceSetId::BUILTINS {
            let set = builtin_piece_set(id);
            assert!(distinguishing_table_holds(&set, Orientation::Up), "{id} up");
            assert!(distinguishing_table_holds(&set, Orientation::Down), "{id} down");
        }
    }

    #[test]
    fn forbidding_tables_for_all_builtin_sets() {
        for id in PieceSetId::BUILTINS {
            let set = builtin_piece_set(id);
            for direction in RhombusDirection::ALL {
                assert!(forbidding_table_holds(&set, direction), "{id} {direction:?}");
            }
        }
    }

    #[test]
    fn implying_tables_for_all_builtin_sets() {
        for id in PieceSetId::BUILTINS {
            let set = builtin_piece_set(id);
            for index in 0..set.implicit.len() {
                assert!(implying_table_holds(&set, index), "{id} implicit {index}");
            }
        }
    }

    #[test]
    fn base_refinement_up_distinguishing_matches_reference_values() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let f = synth_distinguishing(&set.refinement, Orientation::Up);
        let zero_points = [[0, 0, 0], [1, 1, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
        for p in zero_points {
            assert_eq!(eval(&f, &p.map(|v| F3::from(v as u8))), F3::ZERO, "{p:?}");
        }
        let one_points = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [2, 2, 2]];
        for p in one_points {
            assert_eq!(eval(&f, &p.map(|v| F3::from(v as u8))), F3::ONE, "{p:?}");
        }
    }

    #[test]
    fn reference_distinguishing_instance_matches_synthesized_table() {
        // A known-good 2-variable upward distinguishing instance for the
        // K-theoretic triangle set; it must agree with the synthesized
        // template on every zero-sum triple.
        let reference = PolyF3::parse("x1^2*x2 + 2*x1*x2^2 + 2*x1^2 + x1").unwrap();
        let set = builtin_piece_set(PieceSetId::OmegaT);
        let synthesized = synth_distinguishing(&set.refinement, Orientation::Up);
        for point in assignments(3) {
            if !(point[0] + point[1] + point[2]).is_zero() {
                continue;
            }
            assert_eq!(
                eval(&reference, &point),
                eval(&synthesized, &point),
                "{point:?}"
            );
        }
    }

    #[test]
    fn omega0_templates_are_zero_where_nothing_is_forbidden() {
        let set = builtin_piece_set(PieceSetId::Omega0);
        let bundle = synthesize(&set);
        assert!(bundle.f_left.is_zero());
        assert!(bundle.f_right.is_zero());
        assert!(bundle.f_bottom.is_zero());
        assert!(bundle.f_implying.is_empty());
    }

    #[test]
    fn full_up_refinement_gives_zero_distinguishing_polynomial_on_phi() {
        // With all 9 upward zero-sum pieces allowed there is nothing to
        // distinguish; the synthesized polynomial vanishes on every zero-sum
        // triple (and, with off-table values pinned, is identically zero).
        let mut refinement = BTreeSet::new();
        for piece in crate::pieces::phi() {
            refinement.insert(piece);
        }
        let f = synth_distinguishing(&refinement, Orientation::Up);
        assert!(f.is_zero());
    }

    #[test]
    fn implying_consistency_across_hosts() {
        // Both hexagonal sets carry one implicit left rhombus; its implying
        // polynomial vanishes on the host's full refinement assignment.
        for id in [PieceSetId::OmegaC, PieceSetId::OmegaD] {
            let set = builtin_piece_set(id);
            let bundle = synthesize(&set);
            for (piece, poly) in set.implicit.iter().zip(&bundle.f_implying) {
                let x = &set.polygons[piece.host].refinement;
                assert_eq!(eval(poly, x), F3::ZERO, "{id}");
            }
        }
    }
}
