//! Independent ground-truth backends: a combinatorial backtracking tiler and
//! Littlewood-Richardson / Schur-expansion oracles.
//!
//! The tiler enumerates tilings at the interval-assignment level, the same
//! search space as the puzzle ideal's variety: values are assigned to grid
//! intervals in index order, and a partial assignment survives only while
//! every completed triangle lies in the atomic refinement, no completed
//! rhombus carries a forbidden value tuple, and every occurrence of an
//! implicit piece extends to the full stitching of its host polygon.  A
//! one-piece lookahead on triangles with two assigned sides keeps the
//! branching factor low enough for the size-16 side-free sweep.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::gf3::F3;
use crate::grid::{Orientation, RhombusDirection, TriangleGrid};
use crate::ideal::{check_boundary, BoundarySpec, IdealKind};
use crate::par::{par_flat_map, parallel_active};
use crate::pieces::{ImplicitKind, PieceSet};

/// Number of partial states to accumulate before fanning the search out to
/// worker threads.
const PARALLEL_SPLIT_TARGET: usize = 128;

/// Enumerates all tilings of the boundary triple over the piece set; each
/// tiling is reported as its interval assignment (`result[i]` is the value of
/// interval `i + 1`).  A [`BoundarySpec::Free`] side leaves that side's
/// letters unbound over F2; the output is sorted by assignment vector.
pub fn brute_force_tilings(
    lambda: &BoundarySpec,
    mu: &BoundarySpec,
    nu: &BoundarySpec,
    set: &PieceSet,
) -> Result<Vec<Vec<F3>>> {
    let boundary = [lambda.clone(), mu.clone(), nu.clone()];
    let free = boundary.iter().any(|b| b.is_free());
    let kind = if free { IdealKind::SideFree } else { IdealKind::Full };
    let (n, _k) = check_boundary(&boundary, kind)?;
    let searcher = Searcher::new(TriangleGrid::new(n), set.clone(), &boundary);
    Ok(searcher.run())
}

/// One partial search state: interval values plus obligations imposed by
/// implicit-piece occurrences.
#[derive(Debug, Clone)]
struct State {
    values: Vec<Option<F3>>,
    forced: Vec<Option<F3>>,
}

/// A host polygon placement's obligation list: interval, required value.
type Obligations = Vec<(u32, F3)>;

struct Searcher {
    grid: TriangleGrid,
    set: PieceSet,
    /// Candidate values per interval (index 0 unused).
    domains: Vec<Vec<F3>>,
    /// Refinement pieces per orientation, precomputed for the hot loop.
    refinement_up: Vec<[F3; 3]>,
    refinement_down: Vec<[F3; 3]>,
    /// For each implicit piece of rhombus kind: the placements to check when
    /// interval `i` completes them, and the host obligation map keyed by the
    /// placement's outer intervals.
    rhombus_watch: Vec<Vec<(usize, RhombusDirection, [u32; 4], u32, [u8; 4])>>,
    rhombus_hosts: Vec<HashMap<[u32; 4], Obligations>>,
    /// For each implicit piece of all-twos kind: orientation and the host
    /// obligation map keyed by triangle position.
    triangle_hosts: Vec<(Orientation, HashMap<(usize, usize), Obligations>)>,
    /// Forbidden-value checks bucketed by the completing interval.
    forbidden_watch: Vec<Vec<(RhombusDirection, [u32; 4])>>,
}

impl Searcher {
    fn new(grid: TriangleGrid, set: PieceSet, boundary: &[BoundarySpec; 3]) -> Searcher {
        let interval_count = grid.interval_count();
        let mut domains = vec![vec![F3::ZERO, F3::ONE, F3::TWO]; interval_count + 1];
        let sides = [
            crate::grid::BoundarySide::Left,
            crate::grid::BoundarySide::Right,
            crate::grid::BoundarySide::Bottom,
        ];
        for (spec, side) in boundary.iter().zip(sides) {
            let intervals = grid.boundary_intervals(side);
            match spec {
                BoundarySpec::Word(letters) => {
                    for (&var, &letter) in intervals.iter().zip(letters) {
                        domains[var as usize] = vec![F3::from(letter)];
                    }
                }
                BoundarySpec::Free => {
                    for &var in &intervals {
                        domains[var as usize] = vec![F3::ZERO, F3::ONE];
                    }
                }
            }
        }

        // Forbidden-rhombus checks fire when the last outer interval is
        // assigned.
        let mut forbidden_watch: Vec<Vec<(RhombusDirection, [u32; 4])>> =
            vec![Vec::new(); interval_count + 1];
        for direction in RhombusDirection::ALL {
            if set.forbidden_of(direction).is_empty() {
                continue;
            }
            for placement in grid.rhombi(direction) {
                let completion = *placement.outer.iter().max().unwrap() as usize;
                forbidden_watch[completion].push((direction, placement.outer));
            }
        }

        // Implicit-piece occurrence checks and their host obligation maps.
        let mut rhombus_watch: Vec<Vec<(usize, RhombusDirection, [u32; 4], u32, [u8; 4])>> =
            vec![Vec::new(); interval_count + 1];
        let mut rhombus_hosts = Vec::new();
        let mut triangle_hosts = Vec::new();
        for (index, piece) in set.implicit.iter().enumerate() {
            let host_polygon = &set.polygons[piece.host];
            match piece.kind {
                ImplicitKind::Rhombus(direction, values) => {
                    let mut hosts: HashMap<[u32; 4], Obligations> = HashMap::new();
                    for pp in grid.polygon_placements(host_polygon.shape) {
                        let mut key = [0u32; 4];
                        for (slot_pos, &slot) in piece.designated_slots.iter().enumerate() {
                            key[slot_pos] = pp.slots[slot];
                        }
                        let obligations: Obligations = pp
                            .slots
                            .iter()
                            .zip(&host_polygon.refinement)
                            .map(|(&interval, &value)| (interval, value))
                            .collect();
                        hosts.insert(key, obligations);
                    }
                    rhombus_hosts.push(hosts);
                    for placement in grid.rhombi(direction) {
                        let completion = placement
                            .outer
                            .iter()
                            .chain([&placement.middle])
                            .max()
                            .copied()
                            .unwrap() as usize;
                        rhombus_watch[completion].push((
                            index,
                            direction,
                            placement.outer,
                            placement.middle,
                            values,
                        ));
                    }
                }
                ImplicitKind::AllTwos(orientation) => {
                    let mut hosts: HashMap<(usize, usize), Obligations> = HashMap::new();
                    for pp in grid.polygon_placements(host_polygon.shape) {
                        let designated: [usize; 3] = [
                            piece.designated_slots[0],
                            piece.designated_slots[1],
                            piece.designated_slots[2],
                        ];
                        let triangle = pp
                            .triangles
                            .iter()
                            .find(|(o, _, slots)| *o == orientation && *slots == designated)
                            .expect("designated triangle present in host placement");
                        let obligations: Obligations = pp
                            .slots
                            .iter()
                            .zip(&host_polygon.refinement)
                            .map(|(&interval, &value)| (interval, value))
                            .collect();
                        hosts.insert(triangle.1, obligations);
                    }
                    triangle_hosts.push((orientation, hosts));
                }
            }
        }
        let refinement_up = set.refinement_of(Orientation::Up);
        let refinement_down = set.refinement_of(Orientation::Down);
        Searcher {
            grid,
            set,
            domains,
            refinement_up,
            refinement_down,
            rhombus_watch,
            rhombus_hosts,
            triangle_hosts,
            forbidden_watch,
        }
    }

    fn interval_count(&self) -> usize {
        self.grid.interval_count()
    }

    fn run(&self) -> Vec<Vec<F3>> {
        let count = self.interval_count();
        let initial = State {
            values: vec![None; count + 1],
            forced: vec![None; count + 1],
        };
        // Breadth-first expansion until there are enough states to share.
        let mut states = vec![initial];
        let mut next_interval = 1u32;
        if parallel_active() {
            while (next_interval as usize) <= count && states.len() < PARALLEL_SPLIT_TARGET {
                let mut expanded = Vec::new();
                for state in &states {
                    for &value in &self.domains[next_interval as usize] {
                        let mut child = state.clone();
                        if self.apply(&mut child, next_interval, value).is_some() {
                            expanded.push(child);
                        }
                    }
                }
                states = expanded;
                next_interval += 1;
                if states.is_empty() {
                    return Vec::new();
                }
            }
        }
        let start = next_interval;
        let mut results: Vec<Vec<F3>> = par_flat_map(states, |mut state| {
            let mut found = Vec::new();
            self.dfs(&mut state, start, &mut found);
            found
        });
        results.sort_by(|a, b| {
            a.iter()
                .map(|v| v.value())
                .cmp(b.iter().map(|v| v.value()))
        });
        results
    }

    fn dfs(&self, state: &mut State, interval: u32, out: &mut Vec<Vec<F3>>) {
        if interval as usize > self.interval_count() {
            out.push(
                state.values[1..]
                    .iter()
                    .map(|v| v.expect("complete assignment"))
                    .collect(),
            );
            return;
        }
        let domain = self.domains[interval as usize].clone();
        for value in domain {
            if let Some(trail) = self.apply(state, interval, value) {
                self.dfs(state, interval + 1, out);
                for forced in trail {
                    state.forced[forced as usize] = None;
                }
            }
            state.values[interval as usize] = None;
        }
    }

    /// Attempts to assign `value` to `interval`.  On success returns the
    /// trail of newly forced intervals (for undo); on failure returns `None`
    /// with the forced map restored (the caller resets `values[interval]`).
    fn apply(&self, state: &mut State, interval: u32, value: F3) -> Option<Vec<u32>> {
        if let Some(required) = state.forced[interval as usize] {
            if required != value {
                state.values[interval as usize] = None;
                return None;
            }
        }
        state.values[interval as usize] = Some(value);
        let mut trail: Vec<u32> = Vec::new();
        if self.check(state, interval, &mut trail) {
            return Some(trail);
        }
        for forced in trail {
            state.forced[forced as usize] = None;
        }
        None
    }

    fn check(&self, state: &mut State, interval: u32, trail: &mut Vec<u32>) -> bool {
        // Triangle checks: full membership when complete, existence of an
        // extension when two sides are known.
        for &(orientation, (r, y), _) in self.grid.triangles_touching(interval) {
            let sides = self.grid.triangle_sides(orientation, r, y);
            let values: [Option<F3>; 3] = [
                state.values[sides[0] as usize],
                state.values[sides[1] as usize],
                state.values[sides[2] as usize],
            ];
            let assigned = values.iter().filter(|v| v.is_some()).count();
            let pieces = match orientation {
                Orientation::Up => &self.refinement_up,
                Orientation::Down => &self.refinement_down,
            };
            if assigned == 3 {
                let tuple = [values[0].unwrap(), values[1].unwrap(), values[2].unwrap()];
                if !pieces.iter().any(|piece| *piece == tuple) {
                    return false;
                }
                if tuple == [F3::TWO; 3] && !self.all_twos_hosted(state, orientation, (r, y), trail)
                {
                    return false;
                }
            } else if assigned == 2 {
                let open = values.iter().position(|v| v.is_none()).unwrap();
                let fits = pieces.iter().any(|piece| {
                    for (pos, v) in values.iter().enumerate() {
                        if let Some(v) = v {
                            if piece[pos] != *v {
                                return false;
                            }
                        }
                    }
                    let candidate = piece[open];
                    let slot = sides[open] as usize;
                    if let Some(required) = state.forced[slot] {
                        if required != candidate {
                            return false;
                        }
                    }
                    self.domains[slot].contains(&candidate)
                });
                if !fits {
                    return false;
                }
            }
        }

        // Forbidden rhombus values.
        for &(direction, outer) in &self.forbidden_watch[interval as usize] {
            let tuple: [F3; 4] = [
                state.values[outer[0] as usize].unwrap(),
                state.values[outer[1] as usize].unwrap(),
                state.values[outer[2] as usize].unwrap(),
                state.values[outer[3] as usize].unwrap(),
            ];
            if tuple.iter().all(|v| v.is_f2()) {
                let as_f2 = [
                    tuple[0].value(),
                    tuple[1].value(),
                    tuple[2].value(),
                    tuple[3].value(),
                ];
                if self.set.forbidden_of(direction).contains(&as_f2) {
                    return false;
                }
            }
        }

        // Implicit rhombus occurrences must extend to their host stitching.
        for &(piece_index, _direction, outer, middle, expected) in
            &self.rhombus_watch[interval as usize]
        {
            if state.values[middle as usize] != Some(F3::TWO) {
                continue;
            }
            let matches = outer
                .iter()
                .zip(&expected)
                .all(|(&o, &e)| state.values[o as usize] == Some(F3::from(e)));
            if !matches {
                continue;
            }
            let host_map = &self.rhombus_hosts[self.rhombus_host_index(piece_index)];
            let Some(obligations) = host_map.get(&outer) else {
                return false;
            };
            if !self.impose(state, obligations, trail) {
                return false;
            }
        }
        true
    }

    /// Maps an implicit-piece index to its entry in `rhombus_hosts` (the
    /// rhombus-kind pieces in order).
    fn rhombus_host_index(&self, piece_index: usize) -> usize {
        self.set.implicit[..piece_index]
            .iter()
            .filter(|p| matches!(p.kind, ImplicitKind::Rhombus(..)))
            .count()
    }

    fn all_twos_hosted(
        &self,
        state: &mut State,
        orientation: Orientation,
        position: (usize, usize),
        trail: &mut Vec<u32>,
    ) -> bool {
        for (host_orientation, hosts) in &self.triangle_hosts {
            if *host_orientation != orientation {
                continue;
            }
            let Some(obligations) = hosts.get(&position) else {
                return false;
            };
            return self.impose(state, obligations, trail);
        }
        // No implicit all-twos piece: the refinement check already accepted
        // the triangle as an ordinary atomic piece.
        true
    }

    fn impose(&self, state: &mut State, obligations: &Obligations, trail: &mut Vec<u32>) -> bool {
        for &(target, required) in obligations {
            match state.values[target as usize] {
                Some(existing) => {
                    if existing != required {
                        return false;
                    }
                }
                None => match state.forced[target as usize] {
                    Some(existing) => {
                        if existing != required {
                            return false;
                        }
                    }
                    None => {
                        state.forced[target as usize] = Some(required);
                        trail.push(target);
                    }
                },
            }
        }
        true
    }
}

/// The Littlewood-Richardson coefficient via lattice-word skew semistandard
/// tableaux: the number of fillings of the skew shape `nu / lambda` with
/// content `mu`, rows weakly and columns strictly increasing, whose reverse
/// reading word is a lattice word.  Returns 0 when `|nu| != |lambda| + |mu|`
/// or the shapes do not nest.
pub fn lr_coefficient_tableaux(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let weight = |p: &[usize]| p.iter().sum::<usize>();
    if weight(nu) != weight(lambda) + weight(mu) {
        return 0;
    }
    for (row, &lam) in lambda.iter().enumerate() {
        if lam > nu.get(row).copied().unwrap_or(0) {
            return 0;
        }
    }
    if lambda.len() > nu.len() {
        return 0;
    }
    // Cells of the skew shape in reading order: rows top to bottom, each row
    // right to left.
    let rows = nu.len();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for row in 0..rows {
        let start = lambda.get(row).copied().unwrap_or(0);
        for col in (start..nu[row]).rev() {
            cells.push((row, col));
        }
    }
    if mu.is_empty() {
        return if cells.is_empty() { 1 } else { 0 };
    }
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut content = vec![0usize; mu.len()];
    fill(&cells, 0, mu, &mut filling, &mut content)
}

fn fill(
    cells: &[(usize, usize)],
    index: usize,
    mu: &[usize],
    filling: &mut BTreeMap<(usize, usize), usize>,
    content: &mut Vec<usize>,
) -> u64 {
    if index == cells.len() {
        return u64::from(content.iter().zip(mu).all(|(c, m)| c == m));
    }
    let (row, col) = cells[index];
    let mut total = 0;
    for value in 1..=mu.len() {
        // Content bound.
        if content[value - 1] + 1 > mu[value - 1] {
            continue;
        }
        // Lattice condition on the reading word.
        if value > 1 && content[value - 1] + 1 > content[value - 2] {
            continue;
        }
        // Row weakly increasing: the cell to the right was filled earlier.
        if let Some(&right) = filling.get(&(row, col + 1)) {
            if value > right {
                continue;
            }
        }
        // Column strictly increasing.
        if row > 0 {
            match filling.get(&(row - 1, col)) {
                Some(&above) => {
                    if value <= above {
                        continue;
                    }
                }
                None => {}
            }
        }
        filling.insert((row, col), value);
        content[value - 1] += 1;
        total += fill(cells, index + 1, mu, filling, content);
        content[value - 1] -= 1;
        filling.remove(&(row, col));
    }
    total
}

/// Enumerates the monomials of the Schur polynomial `s_shape` in `nvars`
/// variables: exponent vector -> coefficient.
fn schur_monomials(shape: &[usize], nvars: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let rows = shape.len();
    if rows > nvars {
        return out;
    }
    if shape.iter().all(|&s| s == 0) || rows == 0 {
        out.insert(vec![0; nvars], 1);
        return out;
    }
    // Fill SSYT cells row-major; values 1..=nvars, rows weakly increasing,
    // columns strictly increasing.
    let mut cells = Vec::new();
    for (row, &len) in shape.iter().enumerate() {
        for col in 0..len {
            cells.push((row, col));
        }
    }
    let mut tableau: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn rec(
        cells: &[(usize, usize)],
        index: usize,
        nvars: usize,
        tableau: &mut BTreeMap<(usize, usize), usize>,
        out: &mut BTreeMap<Vec<usize>, i64>,
    ) {
        if index == cells.len() {
            let mut exps = vec![0usize; nvars];
            for &value in tableau.values() {
                exps[value - 1] += 1;
            }
            *out.entry(exps).or_insert(0) += 1;
            return;
        }
        let (row, col) = cells[index];
        let min = {
            let left = if col > 0 { tableau[&(row, col - 1)] } else { 1 };
            let above = if row > 0 { tableau[&(row - 1, col)] + 1 } else { 1 };
            left.max(above)
        };
        for value in min..=nvars {
            tableau.insert((row, col), value);
            rec(cells, index + 1, nvars, tableau, out);
            tableau.remove(&(row, col));
        }
    }
    rec(&cells, 0, nvars, &mut tableau, &mut out);
    out
}

/// Expands the product `s_lambda * s_mu` into Schur polynomials by repeated
/// subtraction of the dominant term's Schur polynomial.  Uses `nvars`
/// variables, which must be at least `|lambda| + |mu|`-row sufficient (any
/// `nvars >= len(lambda) + len(mu)` is safe).
pub fn schur_multiply(
    lambda: &[usize],
    mu: &[usize],
    nvars: usize,
) -> BTreeMap<Vec<usize>, i64> {
    let a = schur_monomials(lambda, nvars);
    let b = schur_monomials(mu, nvars);
    let mut product: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (ea, ca) in &a {
        for (eb, cb) in &b {
            let sum: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *product.entry(sum).or_insert(0) += ca * cb;
        }
    }
    let mut result: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    loop {
        // Dominant remaining term: the lexicographically greatest exponent
        // vector among those that are partitions (weakly decreasing).
        let dominant = product
            .iter()
            .filter(|(_, &c)| c != 0)
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .max_by(|(ea, _), (eb, _)| ea.cmp(eb))
            .map(|(e, &c)| (e.clone(), c));
        let Some((exps, coeff)) = dominant else {
            break;
        };
        let shape: Vec<usize> = exps.iter().copied().filter(|&e| e > 0).collect();
        for (e, c) in schur_monomials(&shape, nvars) {
            let entry = product.entry(e).or_insert(0);
            *entry -= coeff * c;
        }
        product.retain(|_, c| *c != 0);
        if !shape.is_empty() || coeff != 0 {
            *result.entry(shape).or_insert(0) += coeff;
        }
    }
    debug_assert!(product.values().all(|&c| c == 0));
    result
}
