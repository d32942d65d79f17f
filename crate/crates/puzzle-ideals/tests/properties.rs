//! Property tests for the library invariants: backend agreement, tiling
//! round trips, area bookkeeping, sign conventions, and the core polynomial
//! and Groebner engine contracts.

use proptest::prelude::*;

use puzzle_ideals::constants::{
    constant, point_to_tiling, side_free_sweep, Backend, RecoveredPiece,
};
use puzzle_ideals::gf3::F3;
use puzzle_ideals::grid::{binary_to_partition, partition_to_binary, PolygonShape};
use puzzle_ideals::groebner::{
    buchberger, certify, enumerate_variety, normal_form, VarietyPoint,
};
use puzzle_ideals::pieces::{builtin_piece_set, PieceSetId};
use puzzle_ideals::poly::{Monomial, MonomialOrder, PolyF3};
use puzzle_ideals::synthesis::eval_table;

/// A binary word of length `n` with exactly `k` ones.
fn word_strategy(n: usize, k: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |positions| {
            let mut word = vec![0u8; n];
            for &p in positions.iter().take(k) {
                word[p] = 1;
            }
            word
        })
}

/// A boundary triple over one `(n, k)` box, sizes 2 through 4.
fn triple_strategy() -> impl Strategy<Value = (Vec<u8>, Vec<u8>, Vec<u8>)> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| {
            (
                word_strategy(n, k),
                word_strategy(n, k),
                word_strategy(n, k),
            )
        })
}

/// A boundary pair over one `(n, k)` box, sizes 2 through 3.
fn pair_strategy() -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| (word_strategy(n, k), word_strategy(n, k)))
}

/// A binary word of any length 1 through 8 and any weight.
fn any_word_strategy() -> impl Strategy<Value = Vec<u8>> {
    (1usize..=8)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| word_strategy(n, k))
}

fn any_builtin() -> impl Strategy<Value = PieceSetId> {
    prop::sample::select(PieceSetId::BUILTINS.to_vec())
}

/// A random polynomial in variables `x1..xm` with exponents at most 2.
fn poly_strategy(m: u32) -> impl Strategy<Value = PolyF3> {
    prop::collection::vec(
        (
            prop::collection::vec(0u8..3, m as usize),
            1i64..3,
        ),
        0..6,
    )
    .prop_map(move |terms| {
        PolyF3::from_terms(terms.into_iter().map(|(exps, coeff)| {
            (
                Monomial::from_factors(
                    exps.iter()
                        .enumerate()
                        .map(|(i, &e)| (i as u32 + 1, e)),
                ),
                F3::new(coeff),
            )
        }))
    })
}

/// The number of unit triangles one recovered piece covers.
fn piece_area(piece: &RecoveredPiece) -> usize {
    match piece {
        RecoveredPiece::Triangle { .. } => 1,
        RecoveredPiece::Rhombus { .. } => 2,
        RecoveredPiece::Polygon { shape, .. } => match shape {
            PolygonShape::Hexagon => 6,
            PolygonShape::Side2Up | PolygonShape::Side2Down => 4,
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The Groebner backend and the tiling oracle agree on every count.
    #[test]
    fn backends_agree((lambda, mu, nu) in triple_strategy(), id in any_builtin()) {
        let set = builtin_piece_set(id);
        let oracle = constant(&lambda, &mu, &nu, &set, Backend::Oracle).unwrap();
        let groebner = constant(&lambda, &mu, &nu, &set, Backend::Groebner).unwrap();
        prop_assert_eq!(oracle.count, groebner.count);
        let a: Vec<_> = oracle.tilings.iter().map(|t| &t.assignment).collect();
        let b: Vec<_> = groebner.tilings.iter().map(|t| &t.assignment).collect();
        prop_assert_eq!(a, b);
    }

    /// Reinterpreting a tiling's assignment as a variety point and decoding
    /// it again is the identity.
    #[test]
    fn tiling_point_round_trip((lambda, mu, nu) in triple_strategy(), id in any_builtin()) {
        let set = builtin_piece_set(id);
        let result = constant(&lambda, &mu, &nu, &set, Backend::Oracle).unwrap();
        for tiling in &result.tilings {
            let vars: Vec<u32> = (1..=tiling.assignment.len() as u32).collect();
            let point = VarietyPoint {
                vars: vars.clone(),
                assignment: tiling.assignment.clone(),
            };
            let decoded = point_to_tiling(&point, &set, lambda.len()).unwrap();
            prop_assert_eq!(&decoded, tiling);
        }
    }

    /// Recovered views consist of original pieces only and cover the
    /// triangle exactly once by area.
    #[test]
    fn recovered_views_cover_exactly((lambda, mu, nu) in triple_strategy(), id in any_builtin()) {
        let set = builtin_piece_set(id);
        let result = constant(&lambda, &mu, &nu, &set, Backend::Oracle).unwrap();
        let n = lambda.len();
        for tiling in &result.tilings {
            let area: usize = tiling.recovered(&set).iter().map(piece_area).sum();
            prop_assert_eq!(area, n * n);
        }
    }

    /// Side-free sweeps agree across backends and sum to the free count.
    #[test]
    fn sweeps_agree((lambda, mu) in pair_strategy(), id in any_builtin()) {
        let set = builtin_piece_set(id);
        let oracle = side_free_sweep(&lambda, &mu, &set, Backend::Oracle).unwrap();
        let groebner = side_free_sweep(&lambda, &mu, &set, Backend::Groebner).unwrap();
        prop_assert_eq!(oracle, groebner);
    }

    /// Reported signed constants carry sign +1 at equal boundary weight.
    #[test]
    fn k_sign_positive_at_equal_weight((lambda, mu, nu) in triple_strategy(), id in any_builtin()) {
        let set = builtin_piece_set(id);
        let (lp, _) = binary_to_partition(&lambda);
        let (mp, _) = binary_to_partition(&mu);
        let (np, _) = binary_to_partition(&nu);
        let weight = |p: &[usize]| p.iter().sum::<usize>();
        prop_assume!(weight(&np) == weight(&lp) + weight(&mp));
        let result = constant(&lambda, &mu, &nu, &set, Backend::Oracle).unwrap();
        prop_assert_eq!(result.signed, result.count as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Binary words and partitions are in bijection.
    #[test]
    fn word_partition_round_trip(word in any_word_strategy()) {
        let n = word.len();
        let (partition, k) = binary_to_partition(&word);
        prop_assert_eq!(k, word.iter().filter(|&&b| b == 1).count());
        prop_assert_eq!(partition_to_binary(&partition, n, k).unwrap(), word);
    }

    /// Parsing the display form of a polynomial is the identity.
    #[test]
    fn poly_display_round_trip(p in poly_strategy(4)) {
        let text = p.to_string();
        prop_assert_eq!(PolyF3::parse(&text).unwrap(), p);
    }

    /// Normalization preserves the evaluation table.
    #[test]
    fn normalize_preserves_values(p in poly_strategy(3)) {
        prop_assert_eq!(eval_table(&p.normalize(), 3), eval_table(&p, 3));
    }

    /// Products evaluate pointwise.
    #[test]
    fn products_evaluate_pointwise(p in poly_strategy(3), q in poly_strategy(3)) {
        let lhs = eval_table(&p.mul(&q), 3);
        let pt = eval_table(&p, 3);
        let qt = eval_table(&q, 3);
        for (l, (a, b)) in lhs.iter().zip(pt.iter().zip(&qt)) {
            prop_assert_eq!(*l, *a * *b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Buchberger output certifies, contains the generators in its ideal,
    /// and enumerates exactly the common zeros.
    #[test]
    fn groebner_engine_contract(p in poly_strategy(3), q in poly_strategy(3)) {
        let order = MonomialOrder::natural_lex(3);
        let mut generators = vec![p.clone(), q.clone()];
        for v in 1..=3 {
            generators.push(PolyF3::field_equation(v));
        }
        let basis = buchberger(&generators, &order).unwrap();
        prop_assert!(certify(&basis).unwrap());
        for g in &generators {
            prop_assert!(normal_form(g, &basis).unwrap().is_zero());
        }
        let points = enumerate_variety(&basis);
        let pt = eval_table(&p, 3);
        let qt = eval_table(&q, 3);
        let expected = pt
            .iter()
            .zip(&qt)
            .filter(|(a, b)| **a == F3::ZERO && **b == F3::ZERO)
            .count();
        prop_assert_eq!(points.len(), expected);
        for point in &points {
            prop_assert_eq!(p.eval(&point.dense(3)).unwrap(), F3::ZERO);
            prop_assert_eq!(q.eval(&point.dense(3)).unwrap(), F3::ZERO);
        }
    }
}
