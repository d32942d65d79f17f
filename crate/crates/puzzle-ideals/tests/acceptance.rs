//! Acceptance suite: the eight release criteria, run in order with one
//! PASS/FAIL line each (use `--nocapture` to see the lines as they print).
//!
//! 1. Size-6 reference regression (Groebner backend, variety points and
//!    stitched tilings).
//! 2. Size-16 side-free sweep regression (oracle backend).
//! 3. Backend equivalence over all 216 boundary triples of the (4,2) box
//!    for every builtin piece set, plus LR agreement for the plain set.
//! 4. Template truth tables, exhaustive, plus the printed instances.
//! 5. Equivariant weights: reference tiling plus 50 equal-weight cases.
//! 6. Side-free elimination algebra (radicality witness, prime
//!    intersection, sum-ideal decomposition).
//! 7. K-theory vanishing and boundary-degree agreement, exhaustive n <= 4.
//! 8. S-polynomial certification of every basis produced in 1, 3, and 6.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use puzzle_ideals::constants::{constant, equivariant_constant, groebner_basis_of, Backend};
use puzzle_ideals::gf3::F3;
use puzzle_ideals::grid::{
    binary_to_partition, parse_word, BoundarySide, Orientation, RhombusDirection, TriangleGrid,
};
use puzzle_ideals::groebner::{
    buchberger, certify, eliminate, enumerate_variety, ideals_equal, intersect_point_primes,
    normal_form, point_decomposition, GroebnerBasis,
};
use puzzle_ideals::ideal::{build_ideal, BoundarySpec, IdealKind};
use puzzle_ideals::pieces::{builtin_piece_set, PieceSetId, SlotRegion};
use puzzle_ideals::poly::{MonomialOrder, PolyF3};
use puzzle_ideals::refdata;
use puzzle_ideals::synthesis::{eval_table, synthesize};

/// All binary words of length `n` with exactly `k` ones.
fn words(n: usize, k: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n)
        .filter(|bits| bits.count_ones() as usize == k)
        .map(|bits| (0..n).map(|i| ((bits >> i) & 1) as u8).collect())
        .collect()
}

fn weight(word: &[u8]) -> usize {
    binary_to_partition(word).0.iter().sum()
}

fn spec(word: &[u8]) -> BoundarySpec {
    BoundarySpec::Word(word.to_vec())
}

/// Deterministic xorshift generator for the randomized criteria.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

fn criterion_1(bases: &mut Vec<GroebnerBasis>) -> Result<(), String> {
    let start = Instant::now();
    let set = builtin_piece_set(PieceSetId::Omega0);
    let lambda = parse_word(refdata::SIZE6_LAMBDA).unwrap();
    let mu = parse_word(refdata::SIZE6_MU).unwrap();
    let nu = parse_word(refdata::SIZE6_NU).unwrap();
    let result = constant(&lambda, &mu, &nu, &set, Backend::Groebner)
        .map_err(|e| e.to_string())?;
    if result.count != 2 {
        return Err(format!("expected 2 variety points, got {}", result.count));
    }
    let points = refdata::size6_variety_points();
    for (tiling, point) in result.tilings.iter().zip(&points) {
        if &tiling.assignment != point {
            return Err("variety point differs from the reference listing".into());
        }
    }
    let fixtures = refdata::size6_stitched_signatures();
    for (tiling, fixture) in result.tilings.iter().zip(&fixtures) {
        if &refdata::stitched_signature(tiling) != fixture {
            return Err("stitched tiling differs from the reference figure".into());
        }
    }
    let ideal = build_ideal(&spec(&lambda), &spec(&mu), &spec(&nu), &set, IdealKind::Full)
        .map_err(|e| e.to_string())?;
    bases.push(groebner_basis_of(&ideal).map_err(|e| e.to_string())?);
    let elapsed = start.elapsed();
    if elapsed.as_secs() > 60 {
        return Err(format!("exceeded the 60 s budget: {elapsed:?}"));
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let start = Instant::now();
    let set = builtin_piece_set(PieceSetId::Omega0);
    let lambda = parse_word(refdata::SWEEP16_LAMBDA).unwrap();
    let mu = parse_word(refdata::SWEEP16_MU).unwrap();
    let table = puzzle_ideals::constants::side_free_sweep(&lambda, &mu, &set, Backend::Oracle)
        .map_err(|e| e.to_string())?;
    if table.len() != 11 {
        return Err(format!("expected 11 bottom words, got {}", table.len()));
    }
    for (ref_word, ref_count) in refdata::SWEEP16_TABLE {
        let word = parse_word(ref_word).unwrap();
        if table.get(&word) != Some(&ref_count) {
            return Err(format!("entry for {ref_word} differs from the reference"));
        }
    }
    let highlight = parse_word(refdata::SWEEP16_HIGHLIGHT.0).unwrap();
    if table.get(&highlight) != Some(&refdata::SWEEP16_HIGHLIGHT.1) {
        return Err("reference entry count differs".into());
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() > 600 {
        return Err(format!("exceeded the 10 min budget: {elapsed:?}"));
    }
    Ok(())
}

fn criterion_3(bases: &mut Vec<GroebnerBasis>) -> Result<(), String> {
    let start = Instant::now();
    let box42 = words(4, 2);
    for id in PieceSetId::BUILTINS {
        let set = builtin_piece_set(id);
        for lambda in &box42 {
            for mu in &box42 {
                for nu in &box42 {
                    let oracle = constant(lambda, mu, nu, &set, Backend::Oracle)
                        .map_err(|e| e.to_string())?;
                    let groebner = constant(lambda, mu, nu, &set, Backend::Groebner)
                        .map_err(|e| e.to_string())?;
                    if oracle.count != groebner.count {
                        return Err(format!(
                            "{id:?} {lambda:?} {mu:?} {nu:?}: oracle {} != groebner {}",
                            oracle.count, groebner.count
                        ));
                    }
                    if id == PieceSetId::Omega0 {
                        let lr = puzzle_ideals::constants::lr_for_words(lambda, mu, nu);
                        if oracle.count != lr {
                            return Err(format!(
                                "{lambda:?} {mu:?} {nu:?}: count {} != LR {lr}",
                                oracle.count
                            ));
                        }
                        let ideal = build_ideal(
                            &spec(lambda),
                            &spec(mu),
                            &spec(nu),
                            &set,
                            IdealKind::Full,
                        )
                        .map_err(|e| e.to_string())?;
                        bases.push(groebner_basis_of(&ideal).map_err(|e| e.to_string())?);
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() > 900 {
        return Err(format!("exceeded the 15 min budget: {elapsed:?}"));
    }
    Ok(())
}

/// Exhaustive truth-table check of one synthesized template bundle.
fn check_bundle(id: PieceSetId) -> Result<(), String> {
    let set = builtin_piece_set(id);
    let bundle = synthesize(&set);

    // Distinguishing: vanishes exactly on the refinement pieces among the
    // sum-zero triples of each orientation.
    for orientation in [Orientation::Up, Orientation::Down] {
        let template = bundle.distinguishing(orientation);
        let table = eval_table(template, 3);
        let pieces = set.refinement_of(orientation);
        for index in 0..27usize {
            let triple = [
                F3::new((index % 3) as i64),
                F3::new((index / 3 % 3) as i64),
                F3::new((index / 9 % 3) as i64),
            ];
            if triple.iter().copied().fold(F3::ZERO, |a, b| a + b) != F3::ZERO {
                continue;
            }
            let expected = if pieces.contains(&triple) { F3::ZERO } else { F3::ONE };
            if table[index] != expected {
                return Err(format!("{id:?} distinguishing {orientation:?} at {triple:?}"));
            }
        }
    }

    // Forbidding: 1 exactly on the forbidden members of each direction's
    // stitchable universe, 0 on the rest of it.
    for direction in RhombusDirection::ALL {
        let template = bundle.forbidding(direction);
        let table = eval_table(template, 4);
        let universe: BTreeSet<[u8; 4]> = puzzle_ideals::pieces::psi(direction)
            .into_iter()
            .map(|outer| outer.map(|v| v.value()))
            .collect();
        let forbidden = set.forbidden_of(direction);
        for index in 0..81usize {
            let tuple = [
                (index % 3) as u8,
                (index / 3 % 3) as u8,
                (index / 9 % 3) as u8,
                (index / 27 % 3) as u8,
            ];
            if !universe.contains(&tuple) {
                continue;
            }
            let expected = if forbidden.contains(&tuple) { F3::ONE } else { F3::ZERO };
            if table[index] != expected {
                return Err(format!("{id:?} forbidding {direction:?} at {tuple:?}"));
            }
        }
    }

    // Implying: 1 exactly when the designated slots carry the implicit
    // piece's values and some free slot deviates from the host refinement.
    for (index, piece) in set.implicit.iter().enumerate() {
        let host = &set.polygons[piece.host];
        let region = SlotRegion::polygon(host.shape);
        let m = region.slot_count;
        let table = eval_table(bundle.implying(index), m);
        for assignment_index in 0..3usize.pow(m as u32) {
            let mut rest = assignment_index;
            let mut values = Vec::with_capacity(m);
            for _ in 0..m {
                values.push(F3::new((rest % 3) as i64));
                rest /= 3;
            }
            let designated_match = piece
                .designated_slots
                .iter()
                .zip(&piece.designated_values)
                .all(|(&slot, &value)| values[slot] == value);
            let free_match = (0..m)
                .filter(|slot| !piece.designated_slots.contains(slot))
                .all(|slot| values[slot] == host.refinement[slot]);
            let expected = if designated_match && !free_match { F3::ONE } else { F3::ZERO };
            if table[assignment_index] != expected {
                return Err(format!("{id:?} implying {index} at index {assignment_index}"));
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    for id in PieceSetId::BUILTINS {
        check_bundle(id)?;
    }

    // The printed instances pass the same constraint tables.
    let eval = |poly: &PolyF3, values: &[u8]| {
        let point: Vec<F3> = values.iter().map(|&v| F3::new(i64::from(v))).collect();
        poly.eval(&point).unwrap()
    };
    let check_printed = |poly: &PolyF3, id: PieceSetId, orientation: Orientation| {
        let pieces = builtin_piece_set(id).refinement_of(orientation);
        for a in 0..3u8 {
            for b in 0..3u8 {
                let c = (6 - a - b) % 3;
                let triple = [a, b, c].map(|v| F3::new(i64::from(v)));
                let vanishes = eval(poly, &[a, b, c]) == F3::ZERO;
                if vanishes != pieces.contains(&triple) {
                    return Err(format!("printed {id:?} {orientation:?} at {triple:?}"));
                }
            }
        }
        Ok(())
    };
    check_printed(&refdata::printed_distinguishing_omega0(), PieceSetId::Omega0, Orientation::Up)?;
    check_printed(&refdata::printed_distinguishing_omega0(), PieceSetId::Omega0, Orientation::Down)?;
    check_printed(&refdata::printed_up_distinguishing_omega_t(), PieceSetId::OmegaT, Orientation::Up)?;
    check_printed(&refdata::printed_down_distinguishing_omega_t(), PieceSetId::OmegaT, Orientation::Down)?;
    check_printed(&refdata::printed_up_distinguishing_omega_c(), PieceSetId::OmegaC, Orientation::Up)?;
    check_printed(&refdata::printed_down_distinguishing_omega_c(), PieceSetId::OmegaC, Orientation::Down)?;

    let forbidding = refdata::printed_forbidding_rhombus();
    for (row, expected) in refdata::FORBIDDING_RHOMBUS_ROWS {
        if eval(&forbidding, &row) != F3::new(i64::from(expected)) {
            return Err(format!("printed forbidding at {row:?}"));
        }
    }
    let implying = refdata::printed_implying_hexagon();
    for a in 0..3u8 {
        for b in 0..3u8 {
            let value = eval(&implying, &[a, b, 1, 2]);
            let ok = if (a, b) == (2, 1) { value == F3::ZERO } else { value != F3::ZERO };
            if !ok {
                return Err(format!("printed implying at ({a},{b},1,2)"));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    // The reference equivariant tiling carries weight (y5 - y1)(y6 - y5).
    let weight_poly = equivariant_constant(
        &parse_word(refdata::FIG5_LAMBDA).unwrap(),
        &parse_word(refdata::FIG5_MU).unwrap(),
        &parse_word(refdata::FIG5_NU).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    if !weight_poly.factors.contains(&refdata::FIG5_WEIGHT_FACTORS.to_vec()) {
        return Err("reference tiling weight factors missing".into());
    }

    // 50 equal-weight triples: the equivariant constant reduces to the LR
    // coefficient.
    let mut rng = Rng(0x9e3779b97f4a7c15);
    let mut checked = 0;
    while checked < 50 {
        let n = 2 + rng.below(4);
        let k = rng.below(n + 1);
        let pool = words(n, k);
        let lambda = pool[rng.below(pool.len())].clone();
        let mu = pool[rng.below(pool.len())].clone();
        let nu = pool[rng.below(pool.len())].clone();
        if weight(&nu) != weight(&lambda) + weight(&mu) {
            continue;
        }
        let result = equivariant_constant(&lambda, &mu, &nu).map_err(|e| e.to_string())?;
        let lr = puzzle_ideals::constants::lr_for_words(&lambda, &mu, &nu) as i64;
        if result.as_constant() != Some(lr) {
            return Err(format!(
                "{lambda:?} {mu:?} {nu:?}: weight {result} != constant {lr}"
            ));
        }
        checked += 1;
    }
    Ok(())
}

fn criterion_6(bases: &mut Vec<GroebnerBasis>) -> Result<(), String> {
    let set = builtin_piece_set(PieceSetId::Omega0);
    for n in 2..=4usize {
        let grid = TriangleGrid::new(n);
        let bottom = grid.boundary_intervals(BoundarySide::Bottom);
        let eliminated: Vec<u32> = (1..=grid.interval_count() as u32)
            .filter(|v| !bottom.contains(v))
            .collect();
        for k in 0..=n {
            for lambda in words(n, k) {
                for mu in words(n, k) {
                    let ideal = build_ideal(
                        &spec(&lambda),
                        &spec(&mu),
                        &BoundarySpec::Free,
                        &set,
                        IdealKind::SideFree,
                    )
                    .map_err(|e| e.to_string())?;
                    let order =
                        MonomialOrder::block_lex(eliminated.clone(), bottom.clone());
                    let basis = buchberger(&ideal.generators(), &order)
                        .map_err(|e| e.to_string())?;
                    let elimination = eliminate(&basis).map_err(|e| e.to_string())?;

                    // Radicality witness: x^2 - x for every retained
                    // variable lies in the elimination ideal.
                    for &v in &bottom {
                        let boolean = PolyF3::boolean_equation(v);
                        if !normal_form(&boolean, &elimination)
                            .map_err(|e| e.to_string())?
                            .is_zero()
                        {
                            return Err(format!(
                                "n={n} {lambda:?} {mu:?}: x{v}^2 - x{v} not in elimination ideal"
                            ));
                        }
                    }

                    // The point primes intersect back to the elimination
                    // ideal.
                    let decomposition = point_decomposition(&elimination);
                    let intersection = intersect_point_primes(&decomposition);
                    if !ideals_equal(&intersection, &elimination.elements, &elimination.order)
                        .map_err(|e| e.to_string())?
                    {
                        return Err(format!(
                            "n={n} {lambda:?} {mu:?}: prime intersection differs"
                        ));
                    }

                    // Per bottom word: the bound ideal equals the side-free
                    // ideal plus the point prime, by variety equality.
                    let natural = MonomialOrder::natural_lex(grid.interval_count());
                    for (point, prime) in &decomposition {
                        let word: Vec<u8> =
                            bottom.iter().map(|&v| point.value_of(v).value()).collect();
                        let bound = build_ideal(
                            &spec(&lambda),
                            &spec(&mu),
                            &spec(&word),
                            &set,
                            IdealKind::Full,
                        )
                        .map_err(|e| e.to_string())?;
                        let bound_basis = buchberger(&bound.generators(), &natural)
                            .map_err(|e| e.to_string())?;
                        let mut sum = ideal.generators();
                        sum.extend(prime.iter().cloned());
                        let sum_basis =
                            buchberger(&sum, &natural).map_err(|e| e.to_string())?;
                        let mut lhs: Vec<Vec<F3>> = enumerate_variety(&bound_basis)
                            .iter()
                            .map(|p| p.dense(grid.interval_count()))
                            .collect();
                        let mut rhs: Vec<Vec<F3>> = enumerate_variety(&sum_basis)
                            .iter()
                            .map(|p| p.dense(grid.interval_count()))
                            .collect();
                        lhs.sort();
                        rhs.sort();
                        if lhs != rhs {
                            return Err(format!(
                                "n={n} {lambda:?} {mu:?} nu={word:?}: varieties differ"
                            ));
                        }
                        bases.push(sum_basis);
                    }
                    bases.push(basis);
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    for n in 1..=4usize {
        for k in 0..=n {
            let pool = words(n, k);
            for lambda in &pool {
                for mu in &pool {
                    for nu in &pool {
                        let base = constant(lambda, mu, nu, &builtin_piece_set(PieceSetId::Omega0), Backend::Oracle)
                            .map_err(|e| e.to_string())?
                            .count;
                        let below = weight(nu) < weight(lambda) + weight(mu);
                        let above = weight(nu) > weight(lambda) + weight(mu);
                        for id in PieceSetId::BUILTINS {
                            if !id.is_k_theoretic() {
                                continue;
                            }
                            let set = builtin_piece_set(id);
                            let count = constant(lambda, mu, nu, &set, Backend::Oracle)
                                .map_err(|e| e.to_string())?
                                .count;
                            let vanishes = match id {
                                PieceSetId::OmegaA | PieceSetId::OmegaB => below,
                                _ => above,
                            };
                            if vanishes && count != 0 {
                                return Err(format!(
                                    "{id:?} {lambda:?} {mu:?} {nu:?}: expected 0, got {count}"
                                ));
                            }
                            if !below && !above && count != base {
                                return Err(format!(
                                    "{id:?} {lambda:?} {mu:?} {nu:?}: {count} != plain count {base}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_8(bases: &[GroebnerBasis]) -> Result<(), String> {
    if bases.is_empty() {
        return Err("no bases collected".into());
    }
    for (index, basis) in bases.iter().enumerate() {
        if !certify(basis).map_err(|e| e.to_string())? {
            return Err(format!("basis {index} failed S-polynomial certification"));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut bases: Vec<GroebnerBasis> = Vec::new();
    let mut failed = false;
    let mut run = |label: &str, outcome: Result<(), String>| match outcome {
        Ok(()) => println!("PASS {label}"),
        Err(message) => {
            failed = true;
            println!("FAIL {label}: {message}");
        }
    };

    run("criterion 1: size-6 reference regression (Groebner backend)", criterion_1(&mut bases));
    run("criterion 2: size-16 side-free sweep regression (oracle backend)", criterion_2());
    run("criterion 3: backend equivalence over the (4,2) box, all piece sets", criterion_3(&mut bases));
    run(
        "criterion 4: template truth tables and printed instances",
        catch_unwind(AssertUnwindSafe(criterion_4))
            .unwrap_or_else(|_| Err("panicked".into())),
    );
    run(
        "criterion 5: equivariant weights (reference tiling, 50 equal-weight cases)",
        catch_unwind(AssertUnwindSafe(criterion_5))
            .unwrap_or_else(|_| Err("panicked".into())),
    );
    run("criterion 6: side-free elimination algebra (n <= 4)", criterion_6(&mut bases));
    run("criterion 7: K-theory vanishing and degree agreement (n <= 4)", criterion_7());
    run("criterion 8: S-polynomial certification of all collected bases", criterion_8(&bases));

    assert!(!failed, "one or more acceptance criteria failed");
}
