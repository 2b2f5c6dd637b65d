//! Exact branch-and-bound solvers for `mp(G)` and `γ_b(G)` on small graphs.
//!
//! Both solvers work on bitmasks over at most [`HARD_MAX_VERTICES`]
//! vertices. Bit positions follow a fixed vertex order (degree, then id),
//! which is also the branching order, so runs are deterministic.

use std::time::{Duration, Instant};

use crate::broadcast::{grid_broadcast, is_dominating, radius_broadcast, Broadcast};
use crate::constructions::{build_multipacking, gamma_b_value, mp_value};
use crate::error::{Error, Result};
use crate::graph::{radius, GeneralGraph, GraphMetric, GridShape, Universe};
use crate::multipacking::{is_multipacking, Multipacking};

type Mask = u128;

/// Width of the solver bitmasks.
pub const HARD_MAX_VERTICES: usize = 128;

/// Default refusal threshold for both solvers.
pub const DEFAULT_ORACLE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<W> {
    pub optimum: usize,
    pub witness: W,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

fn bit(pos: usize) -> Mask {
    1 << pos
}

fn ones(m: Mask) -> usize {
    m.count_ones() as usize
}

fn check_cap<U: Universe + ?Sized>(universe: &U, cap: usize) -> Result<()> {
    let vertices = universe.vertex_count();
    if vertices == 0 {
        return Err(Error::EmptyGraph);
    }
    if vertices > cap.min(HARD_MAX_VERTICES) {
        return Err(Error::CapExceeded { vertices, cap, hard_max: HARD_MAX_VERTICES });
    }
    Ok(())
}

/// A ball `N_r(center)` in bit-position space.
#[derive(Debug, Clone, Copy)]
struct Ball {
    center: usize,
    r: usize,
    mask: Mask,
}

/// Balls and packing constraints of a universe, indexed by bit position.
struct BitUniverse {
    /// `order[pos]` is the vertex id stored at bit `pos`.
    order: Vec<usize>,
    full: Mask,
    /// Every ball `(v, r)` with `1 <= r <= max(ecc(v), 1)`.
    balls: Vec<Ball>,
    /// Non-vacuous packing constraints `(ball, r)`: at most `r` members.
    constraints: Vec<(Mask, usize)>,
    /// Constraint indices containing each bit position.
    constraints_of: Vec<Vec<usize>>,
}

impl BitUniverse {
    fn new<U: Universe + ?Sized>(universe: &U) -> Self {
        let count = universe.vertex_count();
        let rows: Vec<Vec<usize>> = (0..count).map(|v| universe.distances_from(v).dist).collect();
        let degree = |v: usize| rows[v].iter().filter(|&&d| d == 1).count();
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by_key(|&v| (degree(v), v));
        let mut pos_of = vec![0; count];
        for (p, &v) in order.iter().enumerate() {
            pos_of[v] = p;
        }
        let full = if count == HARD_MAX_VERTICES { Mask::MAX } else { bit(count) - 1 };

        let mut balls = Vec::new();
        for (v, row) in rows.iter().enumerate() {
            let ecc = row.iter().copied().max().unwrap_or(0).max(1);
            for r in 1..=ecc {
                let mask = (0..count)
                    .filter(|&u| row[u] <= r)
                    .fold(0, |acc, u| acc | bit(pos_of[u]));
                balls.push(Ball { center: v, r, mask });
            }
        }

        let mut constraints: Vec<(Mask, usize)> = balls
            .iter()
            .filter(|b| ones(b.mask) > b.r)
            .map(|b| (b.mask, b.r))
            .collect();
        // identical balls: only the smallest radius binds
        constraints.sort_unstable();
        constraints.dedup_by_key(|c| c.0);

        let mut constraints_of = vec![Vec::new(); count];
        for (ci, &(mask, _)) in constraints.iter().enumerate() {
            for (p, list) in constraints_of.iter_mut().enumerate() {
                if mask & bit(p) != 0 {
                    list.push(ci);
                }
            }
        }
        BitUniverse { order, full, balls, constraints, constraints_of }
    }

    fn ids(&self, mask: Mask) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.order.len())
            .filter(|&p| mask & bit(p) != 0)
            .map(|p| self.order[p])
            .collect();
        ids.sort_unstable();
        ids
    }

    /// Adds `pos` to `members` and strips every ball it saturates from `open`.
    fn include(&self, members: Mask, open: Mask, pos: usize) -> (Mask, Mask) {
        let members = members | bit(pos);
        let mut open = open & !bit(pos);
        for &ci in &self.constraints_of[pos] {
            let (ball, r) = self.constraints[ci];
            if ones(members & ball) >= r {
                open &= !ball;
            }
        }
        (members, open)
    }

    /// Greedy multipacking drawn from `allowed`, scanning in bit order.
    fn greedy_packing(&self, allowed: Mask) -> usize {
        let (mut members, mut open) = (0, allowed);
        while open != 0 {
            let pos = open.trailing_zeros() as usize;
            (members, open) = self.include(members, open, pos);
        }
        ones(members)
    }

    /// `|members| + min over constraints of (open room inside + open outside)`.
    fn packing_bound(&self, members: Mask, open: Mask) -> usize {
        let mut extra = ones(open);
        for &(ball, r) in &self.constraints {
            let room = r.saturating_sub(ones(members & ball)).min(ones(open & ball));
            extra = extra.min(room + ones(open & !ball));
            if extra == 0 {
                break;
            }
        }
        ones(members) + extra
    }
}

struct MpSearch<'a> {
    bits: &'a BitUniverse,
    best: usize,
    best_mask: Option<Mask>,
    ceiling: usize,
    nodes: u64,
}

impl MpSearch<'_> {
    fn run(&mut self, members: Mask, open: Mask) {
        self.nodes += 1;
        let size = ones(members);
        if size > self.best {
            self.best = size;
            self.best_mask = Some(members);
        }
        if open == 0 || self.best >= self.ceiling {
            return;
        }
        if size + ones(open) <= self.best || self.bits.packing_bound(members, open) <= self.best {
            return;
        }
        let pos = open.trailing_zeros() as usize;
        let (with, with_open) = self.bits.include(members, open, pos);
        self.run(with, with_open);
        self.run(members, open & !bit(pos));
    }
}

/// Maximum multipacking of a connected universe with at most `cap` vertices.
///
/// With `initial_lower_bound = Some(b)` the search only looks for sets of
/// size at least `b`, falling back to a full search if none exists.
pub fn exact_mp<U: Universe + ?Sized>(
    universe: &U,
    initial_lower_bound: Option<usize>,
    cap: usize,
) -> Result<SolveResult<Multipacking>> {
    check_cap(universe, cap)?;
    let start = Instant::now();
    let bits = BitUniverse::new(universe);
    let ceiling = radius(universe)?.max(1);
    let mut nodes = 0;
    let mut found = None;
    for floor in [initial_lower_bound.unwrap_or(0).saturating_sub(1), 0] {
        let mut search = MpSearch { bits: &bits, best: floor, best_mask: None, ceiling, nodes: 0 };
        search.run(0, bits.full);
        nodes += search.nodes;
        if let Some(mask) = search.best_mask {
            found = Some((search.best, mask));
            break;
        }
    }
    let (optimum, mask) = found.expect("the empty search always records a set");
    let witness = Multipacking::from_sorted_unchecked(bits.ids(mask));
    debug_assert!(is_multipacking(universe, &witness).is_ok());
    Ok(SolveResult { optimum, witness, nodes_explored: nodes, wall_time: start.elapsed() })
}

struct GammaSearch<'a> {
    bits: &'a BitUniverse,
    /// Candidate balls after dominance reduction.
    candidates: Vec<Ball>,
    /// Candidate indices covering each bit position.
    covering: Vec<Vec<usize>>,
    best: usize,
    best_choice: Option<Vec<usize>>,
    nodes: u64,
}

impl GammaSearch<'_> {
    fn run(&mut self, uncovered: Mask, cost: usize, chosen: &mut Vec<usize>, banned: &mut Vec<bool>) {
        self.nodes += 1;
        if uncovered == 0 {
            if cost < self.best {
                self.best = cost;
                self.best_choice = Some(chosen.clone());
            }
            return;
        }
        if cost + self.bits.greedy_packing(uncovered) >= self.best {
            return;
        }
        // branch on the uncovered vertex with the fewest usable balls
        let mut pick: Option<(usize, usize)> = None;
        let mut rest = uncovered;
        while rest != 0 {
            let pos = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let usable = self.covering[pos].iter().filter(|&&c| !banned[c]).count();
            if usable == 0 {
                return;
            }
            if pick.is_none_or(|(best_usable, _)| usable < best_usable) {
                pick = Some((usable, pos));
            }
        }
        let (_, pos) = pick.expect("uncovered is non-empty");

        let mut options: Vec<usize> = self.covering[pos].iter().copied().filter(|&c| !banned[c]).collect();
        // most newly covered vertices per unit of power first
        options.sort_by(|&a, &b| {
            let (ba, bb) = (self.candidates[a], self.candidates[b]);
            let (ga, gb) = (ones(ba.mask & uncovered), ones(bb.mask & uncovered));
            (gb * ba.r).cmp(&(ga * bb.r)).then(a.cmp(&b))
        });
        let mut newly_banned = Vec::with_capacity(options.len());
        for &c in &options {
            let ball = self.candidates[c];
            let left = uncovered & !ball.mask;
            if cost + ball.r + usize::from(left != 0) < self.best {
                chosen.push(c);
                self.run(left, cost + ball.r, chosen, banned);
                chosen.pop();
            }
            // later siblings never use this ball: that subtree is done
            banned[c] = true;
            newly_banned.push(c);
        }
        for c in newly_banned {
            banned[c] = false;
        }
    }
}

/// Minimum-cost dominating broadcast of a connected universe with at most
/// `cap` vertices.
pub fn exact_gamma_b<U: Universe + ?Sized>(universe: &U, cap: usize) -> Result<SolveResult<Broadcast>> {
    check_cap(universe, cap)?;
    let start = Instant::now();
    let bits = BitUniverse::new(universe);

    // a ball is dominated by a different ball that covers a superset for
    // no more power; among equal pairs the earlier one (by r, center) stays
    let mut sorted = bits.balls.clone();
    sorted.sort_by_key(|b| (b.r, b.center));
    let candidates: Vec<Ball> = sorted
        .iter()
        .enumerate()
        .filter(|&(i, a)| {
            !sorted.iter().enumerate().any(|(j, b)| {
                j != i
                    && a.mask & !b.mask == 0
                    && b.r <= a.r
                    && (a.mask != b.mask || b.r < a.r || j < i)
            })
        })
        .map(|(_, b)| *b)
        .collect();
    let mut covering = vec![Vec::new(); bits.order.len()];
    for (ci, ball) in candidates.iter().enumerate() {
        for (p, list) in covering.iter_mut().enumerate() {
            if ball.mask & bit(p) != 0 {
                list.push(ci);
            }
        }
    }

    let fallback = radius_broadcast(universe)?;
    let mut search = GammaSearch {
        bits: &bits,
        best: fallback.cost(),
        best_choice: None,
        covering,
        candidates,
        nodes: 0,
    };
    let mut banned = vec![false; search.candidates.len()];
    search.run(bits.full, 0, &mut Vec::new(), &mut banned);

    let witness = match &search.best_choice {
        None => fallback,
        Some(choice) => {
            // two chosen balls can share a center; keep the larger radius
            let mut powers = std::collections::BTreeMap::new();
            for &c in choice {
                let b = search.candidates[c];
                let p = powers.entry(b.center).or_insert(0);
                *p = b.r.max(*p);
            }
            Broadcast::new(universe, powers)?
        }
    };
    debug_assert!(is_dominating(universe, &witness).is_ok());
    Ok(SolveResult {
        optimum: witness.cost(),
        witness,
        nodes_explored: search.nodes,
        wall_time: start.elapsed(),
    })
}

/// [`exact_mp`] on an adjacency-list graph; rejects disconnected input.
pub fn exact_mp_graph(
    graph: &GeneralGraph,
    initial_lower_bound: Option<usize>,
    cap: usize,
) -> Result<SolveResult<Multipacking>> {
    check_size(graph, cap)?;
    exact_mp(&GraphMetric::new(graph.clone())?, initial_lower_bound, cap)
}

/// [`exact_gamma_b`] on an adjacency-list graph; rejects disconnected input.
pub fn exact_gamma_b_graph(graph: &GeneralGraph, cap: usize) -> Result<SolveResult<Broadcast>> {
    check_size(graph, cap)?;
    exact_gamma_b(&GraphMetric::new(graph.clone())?, cap)
}

fn check_size(graph: &GeneralGraph, cap: usize) -> Result<()> {
    let vertices = graph.vertex_count();
    if vertices > cap.min(HARD_MAX_VERTICES) {
        return Err(Error::CapExceeded { vertices, cap, hard_max: HARD_MAX_VERTICES });
    }
    Ok(())
}

/// Oracle values next to the closed forms and the construction for one grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub n: usize,
    pub m: usize,
    pub exact_mp: usize,
    pub exact_gamma_b: usize,
    pub mp_value: usize,
    /// `⌊n/2⌋ + ⌊m/2⌋`.
    pub radius_value: usize,
    pub gamma_b_value: usize,
    pub construction_size: usize,
    pub discrepancies: Vec<String>,
}

impl CrosscheckReport {
    /// `γ_b - mp`; non-zero only where the two genuinely differ.
    pub fn gap(&self) -> usize {
        self.exact_gamma_b - self.exact_mp
    }

    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn crosscheck_grid(n: usize, m: usize, cap: usize) -> Result<CrosscheckReport> {
    let shape = GridShape::new(n, m)?;
    let mp = exact_mp(&shape, None, cap)?;
    let gb = exact_gamma_b(&shape, cap)?;
    let (built, _) = build_multipacking(n, m)?;
    let mut report = CrosscheckReport {
        n,
        m,
        exact_mp: mp.optimum,
        exact_gamma_b: gb.optimum,
        mp_value: mp_value(n, m)?,
        radius_value: shape.radius(),
        gamma_b_value: gamma_b_value(n, m)?,
        construction_size: built.len(),
        discrepancies: Vec::new(),
    };
    let mut flag = |ok: bool, what: String| {
        if !ok {
            report.discrepancies.push(what);
        }
    };
    flag(
        mp.optimum == report.mp_value,
        format!("exact mp {} differs from formula {}", mp.optimum, report.mp_value),
    );
    flag(
        gb.optimum == report.gamma_b_value,
        format!("exact gamma_b {} differs from formula {}", gb.optimum, report.gamma_b_value),
    );
    flag(
        built.len() == report.mp_value,
        format!("construction size {} differs from formula {}", built.len(), report.mp_value),
    );
    flag(
        is_multipacking(&shape, built.packing()).is_ok(),
        "construction is not a multipacking".to_string(),
    );
    flag(
        is_dominating(&shape, &grid_broadcast(shape)).is_ok(),
        "reference broadcast does not dominate".to_string(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_grid, make_path};

    fn grid(n: usize, m: usize) -> GridShape {
        GridShape::new(n, m).unwrap()
    }

    fn metric(g: GeneralGraph) -> GraphMetric {
        GraphMetric::new(g).unwrap()
    }

    #[test]
    fn mp_examples() {
        assert_eq!(exact_mp(&grid(6, 4), None, 64).unwrap().optimum, 4);
        assert_eq!(exact_mp(&metric(make_cycle(6).unwrap()), None, 64).unwrap().optimum, 2);
        assert_eq!(exact_mp(&grid(7, 2), None, 64).unwrap().optimum, 3);
        let k1 = exact_mp(&metric(make_path(1).unwrap()), None, 64).unwrap();
        assert_eq!((k1.optimum, k1.witness.members()), (1, &[0][..]));
    }

    #[test]
    fn gamma_b_examples() {
        assert_eq!(exact_gamma_b(&grid(6, 4), 64).unwrap().optimum, 5);
        assert_eq!(exact_gamma_b(&grid(5, 5), 64).unwrap().optimum, 4);
        let p9 = exact_gamma_b(&metric(make_path(9).unwrap()), 64).unwrap();
        assert_eq!(p9.optimum, 3);
        assert!(is_dominating(&metric(make_path(9).unwrap()), &p9.witness).is_ok());
        assert_eq!(exact_gamma_b(&metric(make_path(1).unwrap()), 64).unwrap().optimum, 1);
    }

    #[test]
    fn lower_bound_hint_is_respected() {
        let s = grid(6, 4);
        assert_eq!(exact_mp(&s, Some(4), 64).unwrap().optimum, 4);
        // an unreachable hint falls back to the full search
        assert_eq!(exact_mp(&s, Some(5), 64).unwrap().optimum, 4);
    }

    #[test]
    fn caps_and_connectivity() {
        assert!(matches!(exact_mp(&grid(9, 8), None, 64), Err(Error::CapExceeded { .. })));
        assert!(matches!(exact_gamma_b(&grid(5, 5), 20), Err(Error::CapExceeded { .. })));
        assert!(matches!(exact_mp(&grid(12, 12), None, 1000), Err(Error::CapExceeded { .. })));
        let split = GeneralGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(exact_mp_graph(&split, None, 64), Err(Error::Disconnected { .. })));
        assert!(matches!(exact_gamma_b_graph(&split, 64), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn deterministic_witnesses() {
        let s = grid(5, 4);
        let a = exact_mp(&s, None, 64).unwrap();
        let b = exact_mp(&s, None, 64).unwrap();
        assert_eq!((a.optimum, a.witness), (b.optimum, b.witness));
        let a = exact_gamma_b(&s, 64).unwrap();
        let b = exact_gamma_b(&s, 64).unwrap();
        assert_eq!((a.optimum, a.witness), (b.optimum, b.witness));
    }

    #[test]
    fn grid_and_graph_views_agree() {
        let s = grid(5, 3);
        let g = metric(make_grid(s));
        assert_eq!(
            exact_mp(&s, None, 64).unwrap().optimum,
            exact_mp(&g, None, 64).unwrap().optimum
        );
        assert_eq!(
            exact_gamma_b(&s, 64).unwrap().optimum,
            exact_gamma_b(&g, 64).unwrap().optimum
        );
    }

    #[test]
    fn crosscheck_reports() {
        let r = crosscheck_grid(6, 6, 64).unwrap();
        assert!(r.agrees(), "{:?}", r.discrepancies);
        assert_eq!((r.exact_mp, r.exact_gamma_b, r.construction_size), (6, 6, 6));
        let r = crosscheck_grid(6, 4, 64).unwrap();
        assert!(r.agrees(), "{:?}", r.discrepancies);
        assert_eq!((r.exact_mp, r.exact_gamma_b, r.gap()), (4, 5, 1));
        let r = crosscheck_grid(8, 3, 64).unwrap();
        assert!(r.agrees(), "{:?}", r.discrepancies);
        assert_eq!((r.exact_mp, r.exact_gamma_b), (4, 5));
    }
}
