//! Dominating broadcasts: every vertex must lie within distance `f(v)` of
//! some broadcasting vertex `v`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{center, GridShape, Universe, Vertex};

/// Sparse power assignment; absent vertices broadcast with power 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Broadcast {
    powers: BTreeMap<usize, usize>,
}

impl Broadcast {
    /// Zero powers are dropped; out-of-range ids are rejected.
    pub fn new<U: Universe + ?Sized>(
        universe: &U,
        powers: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let count = universe.vertex_count();
        let mut map = BTreeMap::new();
        for (v, p) in powers {
            if v >= count {
                return Err(Error::OutOfBounds(format!("{v} in a universe of {count} vertices")));
            }
            if p > 0 && map.insert(v, p).is_some() {
                return Err(Error::Duplicate(universe.label(v)));
            }
        }
        Ok(Broadcast { powers: map })
    }

    pub fn from_vertices(shape: GridShape, powers: &[(Vertex, usize)]) -> Result<Self> {
        for &(v, _) in powers {
            shape.check(v)?;
        }
        Self::new(&shape, powers.iter().map(|&(v, p)| (shape.id(v), p)))
    }

    pub fn powers(&self) -> &BTreeMap<usize, usize> {
        &self.powers
    }

    pub fn power(&self, v: usize) -> usize {
        self.powers.get(&v).copied().unwrap_or(0)
    }

    pub fn cost(&self) -> usize {
        self.powers.values().sum()
    }

    pub fn without(&self, v: usize) -> Broadcast {
        let mut powers = self.powers.clone();
        powers.remove(&v);
        Broadcast { powers }
    }
}

/// A vertex that no broadcasting vertex reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UncoveredWitness {
    pub vertex: usize,
}

pub fn cost(b: &Broadcast) -> usize {
    b.cost()
}

/// Returns the smallest uncovered vertex id, if any.
pub fn is_dominating<U: Universe + ?Sized>(
    universe: &U,
    b: &Broadcast,
) -> std::result::Result<(), UncoveredWitness> {
    let mut covered = vec![false; universe.vertex_count()];
    for (&v, &p) in &b.powers {
        let row = universe.distances_from(v);
        for (c, &d) in covered.iter_mut().zip(&row.dist) {
            *c |= d <= p;
        }
    }
    match covered.iter().position(|&c| !c) {
        None => Ok(()),
        Some(vertex) => Err(UncoveredWitness { vertex }),
    }
}

/// One ball of radius `rad(G)` at the smallest-id center (power at least 1).
pub fn radius_broadcast<U: Universe + ?Sized>(universe: &U) -> Result<Broadcast> {
    let (c, ecc) = center(universe)?;
    Ok(Broadcast {
        powers: BTreeMap::from([(c, ecc.max(1))]),
    })
}

/// Radius-1 balls at path positions `1, 4, 7, ...`, with the last ball
/// moved onto the final vertex when needed. Cost `⌈len/3⌉`.
pub fn path_broadcast(len: usize) -> Vec<usize> {
    let mut centers: Vec<usize> = (1..len).step_by(3).collect();
    if centers.is_empty() || centers.last().unwrap() + 1 < len - 1 {
        centers.push(len - 1);
    }
    centers
}

/// Cheapest known dominating broadcast of a grid: the radius broadcast when
/// both extents are at least 2, otherwise unit balls along the path.
pub fn grid_broadcast(shape: GridShape) -> Broadcast {
    if shape.n().min(shape.m()) >= 2 {
        return radius_broadcast(&shape).expect("grids are non-empty");
    }
    let len = shape.n().max(shape.m());
    let powers = path_broadcast(len)
        .into_iter()
        .map(|t| {
            let v = if shape.m() == 1 { Vertex::new(t, 0) } else { Vertex::new(0, t) };
            (shape.id(v), 1)
        })
        .collect();
    Broadcast { powers }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_path, GraphMetric};

    fn grid(n: usize, m: usize) -> GridShape {
        GridShape::new(n, m).unwrap()
    }

    #[test]
    fn costs() {
        assert_eq!(Broadcast::default().cost(), 0);
        let s = grid(4, 4);
        let b = Broadcast::from_vertices(s, &[(Vertex::new(1, 1), 4)]).unwrap();
        assert_eq!(cost(&b), 4);
        let b = Broadcast::new(&s, [(0, 2), (5, 3)]).unwrap();
        assert_eq!(b.cost(), 5);
    }

    #[test]
    fn domination_examples() {
        let s = grid(4, 4);
        let b = Broadcast::from_vertices(s, &[(Vertex::new(1, 1), 4)]).unwrap();
        assert_eq!(is_dominating(&s, &b), Ok(()));

        let p9 = GraphMetric::new(make_path(9).unwrap()).unwrap();
        let b = Broadcast::new(&p9, [(1, 1), (4, 1), (7, 1)]).unwrap();
        assert_eq!(is_dominating(&p9, &b), Ok(()));
        assert_eq!(b.cost(), 3);

        assert_eq!(
            is_dominating(&p9, &Broadcast::default()),
            Err(UncoveredWitness { vertex: 0 })
        );
        // dropping the middle ball leaves 3 as the first uncovered vertex
        assert_eq!(
            is_dominating(&p9, &b.without(4)),
            Err(UncoveredWitness { vertex: 3 })
        );
    }

    #[test]
    fn threshold_is_inclusive() {
        // a 2x2 grid needs a radius-2 ball to reach the opposite corner
        let s = grid(2, 2);
        assert!(is_dominating(&s, &Broadcast::new(&s, [(0, 2)]).unwrap()).is_ok());
        assert!(is_dominating(&s, &Broadcast::new(&s, [(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn radius_broadcasts() {
        for (n, m, c) in [(8, 8, 8), (5, 7, 5), (4, 4, 4)] {
            let s = grid(n, m);
            let b = radius_broadcast(&s).unwrap();
            assert_eq!(b.cost(), c);
            assert!(is_dominating(&s, &b).is_ok());
        }
        let k1 = GraphMetric::new(make_path(1).unwrap()).unwrap();
        let b = radius_broadcast(&k1).unwrap();
        assert_eq!(b.powers(), &BTreeMap::from([(0, 1)]));
        assert!(is_dominating(&k1, &b).is_ok());
    }

    #[test]
    fn path_broadcasts_cover_at_third_cost() {
        for len in 1..40 {
            let s = grid(len, 1);
            let b = grid_broadcast(s);
            assert_eq!(b.cost(), len.div_ceil(3), "len {len}");
            assert!(is_dominating(&s, &b).is_ok(), "len {len}");
            let t = s.transpose();
            assert!(is_dominating(&t, &grid_broadcast(t)).is_ok());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = grid(2, 2);
        assert!(Broadcast::new(&s, [(4, 1)]).is_err());
        assert!(Broadcast::new(&s, [(1, 1), (1, 2)]).is_err());
        assert!(Broadcast::from_vertices(s, &[(Vertex::new(2, 0), 1)]).is_err());
        assert!(Broadcast::new(&s, [(1, 0)]).unwrap().powers().is_empty());
    }
}
