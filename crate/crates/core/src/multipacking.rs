//! Multipackings and exact ball-constraint validation.
//!
//! A set `M` is a multipacking when every ball `N_r(v)` with `r >= 1` holds
//! at most `r` members. Only radii up to `max(ecc(v), 1)` need checking:
//! beyond the eccentricity the ball is the whole vertex set, and the bound
//! only gets looser.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{GridShape, Universe, Vertex};

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multipacking {
    members: Vec<usize>,
}

impl Multipacking {
    /// Rejects out-of-range and repeated ids.
    pub fn new<U: Universe + ?Sized>(
        universe: &U,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        let count = universe.vertex_count();
        if let Some(&bad) = members.iter().find(|&&v| v >= count) {
            return Err(Error::OutOfBounds(format!(
                "{bad} in a universe of {count} vertices"
            )));
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate(universe.label(w[0])));
        }
        Ok(Multipacking { members })
    }

    pub fn from_vertices(shape: GridShape, vertices: &[Vertex]) -> Result<Self> {
        for &v in vertices {
            shape.check(v)?;
        }
        let mut ids: Vec<usize> = vertices.iter().map(|&v| shape.id(v)).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate(shape.vertex(w[0]).to_string()));
        }
        Ok(Multipacking { members: ids })
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Multipacking { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Members as grid points, in `(y, x)` order.
    pub fn vertices(&self, shape: GridShape) -> Vec<Vertex> {
        self.members.iter().map(|&id| shape.vertex(id)).collect()
    }

    /// Returns a copy without the given member.
    pub fn without(&self, v: usize) -> Multipacking {
        Multipacking {
            members: self.members.iter().copied().filter(|&u| u != v).collect(),
        }
    }
}

/// A ball holding more members than its radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViolationWitness {
    pub center: usize,
    pub radius: usize,
    pub count: usize,
}

impl ViolationWitness {
    pub fn describe<U: Universe + ?Sized>(&self, universe: &U) -> String {
        format!(
            "ball of radius {} around {} holds {} members",
            self.radius,
            universe.label(self.center),
            self.count
        )
    }
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ball of radius {} around vertex {} holds {} members",
            self.radius, self.center, self.count
        )
    }
}

/// Answers `|N_r(center) ∩ M|` for a fixed member set.
pub trait BallCounter: Sync {
    fn ball_count(&self, center: usize, r: usize) -> usize;

    /// Smallest radius in `1..=max_radius` whose ball is overfull.
    fn first_violation(&self, center: usize, max_radius: usize) -> Option<(usize, usize)> {
        (1..=max_radius)
            .map(|r| (r, self.ball_count(center, r)))
            .find(|&(r, c)| c > r)
    }

    /// `max over r in 1..=max_radius of count / r`, as `(count, r)`.
    fn max_ratio(&self, center: usize, max_radius: usize) -> Ratio<usize> {
        (1..=max_radius)
            .map(|r| Ratio::new(self.ball_count(center, r), r))
            .max()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }
}

/// Distance-histogram counter that works on any [`Universe`].
pub struct MetricBallCounter<'a, U: Universe + ?Sized> {
    universe: &'a U,
    members: &'a [usize],
}

impl<'a, U: Universe + ?Sized> MetricBallCounter<'a, U> {
    pub fn new(universe: &'a U, members: &'a [usize]) -> Self {
        MetricBallCounter { universe, members }
    }

    /// `profile[r] = |N_r(center) ∩ M|` for `r` in `0..=max_radius`.
    fn profile(&self, center: usize, max_radius: usize) -> Vec<usize> {
        let mut hist = vec![0usize; max_radius + 1];
        let row = self.universe.distances_from(center);
        for &u in self.members {
            let d = row.dist[u];
            if d <= max_radius {
                hist[d] += 1;
            }
        }
        for r in 1..hist.len() {
            hist[r] += hist[r - 1];
        }
        hist
    }
}

impl<U: Universe + ?Sized> BallCounter for MetricBallCounter<'_, U> {
    fn ball_count(&self, center: usize, r: usize) -> usize {
        self.members
            .iter()
            .filter(|&&u| self.universe.distance(center, u) <= r)
            .count()
    }

    fn first_violation(&self, center: usize, max_radius: usize) -> Option<(usize, usize)> {
        let profile = self.profile(center, max_radius);
        (1..=max_radius)
            .map(|r| (r, profile[r]))
            .find(|&(r, c)| c > r)
    }

    fn max_ratio(&self, center: usize, max_radius: usize) -> Ratio<usize> {
        let profile = self.profile(center, max_radius);
        (1..=max_radius)
            .map(|r| Ratio::new(profile[r], r))
            .max()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }
}

/// Constant-time grid ball counts.
///
/// Rotating by `u = x + y`, `w = x - y` turns an L1 ball into an
/// axis-aligned square, so each query is four lookups in a 2D prefix-sum
/// table over the rotated member coordinates.
pub struct GridBallCounter {
    shape: GridShape,
    side: usize,
    prefix: Vec<u32>,
}

impl GridBallCounter {
    pub fn new(shape: GridShape, members: &[usize]) -> Self {
        let side = shape.n() + shape.m() - 1;
        let stride = side + 1;
        let mut prefix = vec![0u32; stride * stride];
        for &id in members {
            let (u, w) = Self::rotate(shape, shape.vertex(id));
            prefix[(u + 1) * stride + (w + 1)] += 1;
        }
        for i in 1..stride {
            for j in 1..stride {
                prefix[i * stride + j] += prefix[(i - 1) * stride + j]
                    + prefix[i * stride + j - 1]
                    - prefix[(i - 1) * stride + j - 1];
            }
        }
        GridBallCounter { shape, side, prefix }
    }

    fn rotate(shape: GridShape, v: Vertex) -> (usize, usize) {
        (v.x + v.y, v.x + shape.m() - 1 - v.y)
    }

    /// Members with `u` in `[u0, u1)` and `w` in `[w0, w1)`.
    fn rect(&self, u0: usize, u1: usize, w0: usize, w1: usize) -> usize {
        let s = self.side + 1;
        (self.prefix[u1 * s + w1] + self.prefix[u0 * s + w0]
            - self.prefix[u0 * s + w1]
            - self.prefix[u1 * s + w0]) as usize
    }
}

impl BallCounter for GridBallCounter {
    fn ball_count(&self, center: usize, r: usize) -> usize {
        let (cu, cw) = Self::rotate(self.shape, self.shape.vertex(center));
        let u0 = cu.saturating_sub(r);
        let u1 = (cu + r + 1).min(self.side);
        let w0 = cw.saturating_sub(r);
        let w1 = (cw + r + 1).min(self.side);
        self.rect(u0, u1, w0, w1)
    }
}

/// Counts members within distance `r` of `center` by direct enumeration.
pub fn ball_count<U: Universe + ?Sized>(
    universe: &U,
    members: &[usize],
    center: usize,
    r: usize,
) -> usize {
    MetricBallCounter::new(universe, members).ball_count(center, r)
}

/// Largest radius that needs checking at `center`.
pub(crate) fn max_checked_radius<U: Universe + ?Sized>(universe: &U, center: usize) -> usize {
    universe.eccentricity(center).max(1)
}

/// Validates against an arbitrary counter; the reported violation has the
/// smallest radius, then the smallest center id.
pub fn check_with<U, C>(universe: &U, counter: &C) -> std::result::Result<(), ViolationWitness>
where
    U: Universe + ?Sized,
    C: BallCounter + ?Sized,
{
    let worst = (0..universe.vertex_count())
        .into_par_iter()
        .filter_map(|v| {
            counter
                .first_violation(v, max_checked_radius(universe, v))
                .map(|(r, count)| (r, v, count))
        })
        .min();
    match worst {
        None => Ok(()),
        Some((radius, center, count)) => Err(ViolationWitness { center, radius, count }),
    }
}

/// Exact validity check using distance histograms.
pub fn is_multipacking<U: Universe + ?Sized>(
    universe: &U,
    packing: &Multipacking,
) -> std::result::Result<(), ViolationWitness> {
    check_with(universe, &MetricBallCounter::new(universe, packing.members()))
}

/// Exact validity check on a grid, using the prefix-sum counter.
pub fn is_grid_multipacking(
    shape: GridShape,
    packing: &Multipacking,
) -> std::result::Result<(), ViolationWitness> {
    check_with(&shape, &GridBallCounter::new(shape, packing.members()))
}

/// Largest `count / r` over all balls; the set is valid iff this is `<= 1`.
pub fn max_violation_ratio<U: Universe + ?Sized>(
    universe: &U,
    packing: &Multipacking,
) -> Result<Ratio<usize>> {
    if packing.is_empty() {
        return Err(Error::EmptyMembers);
    }
    let counter = MetricBallCounter::new(universe, packing.members());
    Ok((0..universe.vertex_count())
        .into_par_iter()
        .map(|v| counter.max_ratio(v, max_checked_radius(universe, v)))
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_grid, make_path, GraphMetric};

    fn grid(n: usize, m: usize) -> GridShape {
        GridShape::new(n, m).unwrap()
    }

    fn pts(list: &[(usize, usize)]) -> Vec<Vertex> {
        list.iter().map(|&(x, y)| Vertex::new(x, y)).collect()
    }

    const FIG1_6X5: [(usize, usize); 5] = [(0, 0), (5, 0), (0, 4), (5, 4), (2, 3)];
    const FIG1_7X4: [(usize, usize); 5] = [(0, 0), (6, 0), (0, 3), (6, 3), (3, 1)];

    #[test]
    fn ball_count_examples() {
        let s = grid(7, 4);
        let m = Multipacking::from_vertices(s, &pts(&FIG1_7X4)).unwrap();
        let c = s.id(Vertex::new(3, 1));
        assert_eq!(ball_count(&s, m.members(), c, 2), 1);
        assert_eq!(GridBallCounter::new(s, m.members()).ball_count(c, 2), 1);
        assert_eq!(ball_count(&s, &[], c, 3), 0);

        let s = grid(6, 5);
        let m = Multipacking::from_vertices(s, &pts(&FIG1_6X5)).unwrap();
        // distances from (0,0): 0, 5, 4, 9, 5 -> four members within radius 5
        assert_eq!(ball_count(&s, m.members(), 0, 5), 4);
        assert!(ball_count(&s, m.members(), 0, 5) <= 5);
    }

    #[test]
    fn table_sets_are_valid() {
        for (shape, set) in [(grid(6, 5), &FIG1_6X5), (grid(7, 4), &FIG1_7X4)] {
            let m = Multipacking::from_vertices(shape, &pts(set)).unwrap();
            assert_eq!(is_multipacking(&shape, &m), Ok(()));
            assert_eq!(is_grid_multipacking(shape, &m), Ok(()));
        }
    }

    #[test]
    fn adjacent_members_violate_at_radius_one() {
        let p3 = GraphMetric::new(make_path(3).unwrap()).unwrap();
        let m = Multipacking::new(&p3, [0, 1]).unwrap();
        assert_eq!(
            is_multipacking(&p3, &m),
            Err(ViolationWitness { center: 0, radius: 1, count: 2 })
        );
        assert_eq!(max_violation_ratio(&p3, &m).unwrap(), Ratio::from_integer(2));
    }

    #[test]
    fn singletons_and_empty_sets_are_valid() {
        let k1 = GraphMetric::new(make_path(1).unwrap()).unwrap();
        assert!(is_multipacking(&k1, &Multipacking::new(&k1, [0]).unwrap()).is_ok());
        let c5 = GraphMetric::new(make_cycle(5).unwrap()).unwrap();
        for v in 0..5 {
            assert!(is_multipacking(&c5, &Multipacking::new(&c5, [v]).unwrap()).is_ok());
        }
        assert!(is_multipacking(&c5, &Multipacking::default()).is_ok());
        assert_eq!(
            max_violation_ratio(&c5, &Multipacking::default()),
            Err(Error::EmptyMembers)
        );
    }

    #[test]
    fn input_errors() {
        let s = grid(3, 3);
        assert!(matches!(
            Multipacking::from_vertices(s, &pts(&[(3, 0)])),
            Err(Error::OutOfBounds(_))
        ));
        assert!(matches!(
            Multipacking::from_vertices(s, &pts(&[(1, 1), (1, 1)])),
            Err(Error::Duplicate(_))
        ));
        assert!(matches!(Multipacking::new(&s, [9]), Err(Error::OutOfBounds(_))));
    }

    #[test]
    fn witness_prefers_small_radius_then_small_center() {
        // members 0 and 2 on P_5: radius-1 ball at 1 is the first overfull one
        let p5 = GraphMetric::new(make_path(5).unwrap()).unwrap();
        let m = Multipacking::new(&p5, [0, 2, 4]).unwrap();
        assert_eq!(
            is_multipacking(&p5, &m),
            Err(ViolationWitness { center: 1, radius: 1, count: 2 })
        );
    }

    #[test]
    fn ratio_of_valid_set_is_at_most_one() {
        let s = grid(6, 5);
        let m = Multipacking::from_vertices(s, &pts(&FIG1_6X5)).unwrap();
        assert!(max_violation_ratio(&s, &m).unwrap() <= Ratio::from_integer(1));
    }

    #[test]
    fn general_graph_and_grid_views_agree() {
        let s = grid(5, 4);
        let g = GraphMetric::new(make_grid(s)).unwrap();
        let m = Multipacking::new(&s, [0, 3, 9, 17]).unwrap();
        assert_eq!(is_multipacking(&s, &m), is_multipacking(&g, &m));
        assert_eq!(is_grid_multipacking(s, &m), is_multipacking(&g, &m));
    }
}
