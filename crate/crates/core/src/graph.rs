//! Graphs, grid coordinates and shortest-path metrics.
//!
//! Grids use `(x, y)` coordinates with `x` horizontal in `[0, n)`, `y`
//! vertical in `[0, m)` and the origin at the bottom-left corner. Vertex ids
//! are row-major: `id = y * n + x`. Every quantity computed here is
//! invariant under swapping `n` and `m` (transposing the grid).

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Anything with a shortest-path metric over vertices `0..vertex_count()`.
///
/// Implementations must be connected and non-empty.
pub trait Universe: Sync {
    fn vertex_count(&self) -> usize;

    fn distance(&self, a: usize, b: usize) -> usize;

    fn distances_from(&self, source: usize) -> DistanceRow;

    fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(v).dist.into_iter().max().unwrap_or(0)
    }

    /// Human-readable name of a vertex, used in witnesses and reports.
    fn label(&self, v: usize) -> String {
        v.to_string()
    }

    fn describe(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridShape {
    n: usize,
    m: usize,
}

impl GridShape {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidSize(format!(
                "grid extents must be positive, got {n}x{m}"
            )));
        }
        Ok(GridShape { n, m })
    }

    /// Horizontal extent.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertical extent.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn transpose(&self) -> GridShape {
        GridShape { n: self.m, m: self.n }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.x < self.n && v.y < self.m
    }

    pub fn id(&self, v: Vertex) -> usize {
        debug_assert!(self.contains(v));
        v.y * self.n + v.x
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        debug_assert!(id < self.n * self.m);
        Vertex::new(id % self.n, id / self.n)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n * self.m).map(move |id| self.vertex(id))
    }

    /// Closed-form radius `⌊n/2⌋ + ⌊m/2⌋`.
    pub fn radius(&self) -> usize {
        self.n / 2 + self.m / 2
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::OutOfBounds(format!("{v} in a {self} grid")))
        }
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n, self.m)
    }
}

/// A lattice point. Ordered by `(y, x)`, which matches vertex-id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub x: usize,
    pub y: usize,
}

impl Vertex {
    pub const fn new(x: usize, y: usize) -> Self {
        Vertex { x, y }
    }

    pub fn transpose(self) -> Vertex {
        Vertex::new(self.y, self.x)
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// L1 distance between two lattice points.
pub fn grid_distance(a: Vertex, b: Vertex) -> usize {
    a.x.abs_diff(b.x) + a.y.abs_diff(b.y)
}

impl Universe for GridShape {
    fn vertex_count(&self) -> usize {
        self.n * self.m
    }

    fn distance(&self, a: usize, b: usize) -> usize {
        grid_distance(self.vertex(a), self.vertex(b))
    }

    fn distances_from(&self, source: usize) -> DistanceRow {
        let s = self.vertex(source);
        DistanceRow {
            source,
            dist: self.vertices().map(|v| grid_distance(s, v)).collect(),
        }
    }

    fn eccentricity(&self, v: usize) -> usize {
        let p = self.vertex(v);
        p.x.max(self.n - 1 - p.x) + p.y.max(self.m - 1 - p.y)
    }

    fn label(&self, v: usize) -> String {
        self.vertex(v).to_string()
    }

    fn describe(&self) -> String {
        format!("grid {self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub dist: Vec<usize>,
}

/// Simple undirected graph stored as adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralGraph {
    adjacency: Vec<Vec<usize>>,
}

impl GeneralGraph {
    /// Checks symmetry, bounds, self-loops and duplicate edges.
    pub fn new(adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let count = adjacency.len();
        for (v, nbrs) in adjacency.iter().enumerate() {
            let mut seen = nbrs.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidAdjacency(format!("duplicate edge at vertex {v}")));
            }
            for &u in nbrs {
                if u >= count {
                    return Err(Error::InvalidAdjacency(format!(
                        "vertex {v} lists neighbour {u} but the graph has {count} vertices"
                    )));
                }
                if u == v {
                    return Err(Error::InvalidAdjacency(format!("self-loop at vertex {v}")));
                }
                if !adjacency[u].contains(&v) {
                    return Err(Error::InvalidAdjacency(format!(
                        "edge {v}-{u} is not symmetric"
                    )));
                }
            }
        }
        Ok(GeneralGraph { adjacency })
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidAdjacency(format!(
                    "edge {a}-{b} leaves the vertex range 0..{vertex_count}"
                )));
            }
            adjacency[a].push(b);
            if a != b {
                adjacency[b].push(a);
            }
        }
        Self::new(adjacency)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&u| v < u).map(|&u| (v, u)));
        }
        out
    }

    /// Breadth-first distances; fails if some vertex is unreachable.
    pub fn bfs_distances(&self, source: usize) -> Result<DistanceRow> {
        let n = self.vertex_count();
        if source >= n {
            return Err(Error::OutOfBounds(format!("{source} in a graph of {n} vertices")));
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::with_capacity(n);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        if let Some(unreachable) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Error::Disconnected { origin: source, unreachable });
        }
        Ok(DistanceRow { source, dist })
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.bfs_distances(0).is_ok()
    }
}

pub fn make_grid(shape: GridShape) -> GeneralGraph {
    let (n, m) = (shape.n(), shape.m());
    let mut adjacency = vec![Vec::with_capacity(4); n * m];
    for y in 0..m {
        for x in 0..n {
            let id = y * n + x;
            if x > 0 {
                adjacency[id].push(id - 1);
            }
            if x + 1 < n {
                adjacency[id].push(id + 1);
            }
            if y > 0 {
                adjacency[id].push(id - n);
            }
            if y + 1 < m {
                adjacency[id].push(id + n);
            }
        }
    }
    GeneralGraph { adjacency }
}

pub fn make_path(order: usize) -> Result<GeneralGraph> {
    if order == 0 {
        return Err(Error::InvalidSize("a path needs at least one vertex".into()));
    }
    let edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
    GeneralGraph::from_edges(order, &edges)
}

pub fn make_cycle(order: usize) -> Result<GeneralGraph> {
    if order < 3 {
        return Err(Error::InvalidSize(format!(
            "a cycle needs at least three vertices, got {order}"
        )));
    }
    let edges: Vec<_> = (0..order).map(|v| (v, (v + 1) % order)).collect();
    GeneralGraph::from_edges(order, &edges)
}

/// Default vertex count up to which [`GraphMetric`] keeps an all-pairs table.
pub const DEFAULT_TABLE_CAP: usize = 4096;

/// Shortest-path metric of a connected [`GeneralGraph`].
///
/// Up to `table_cap` vertices the full distance matrix is stored; above it
/// every query runs a fresh BFS.
#[derive(Debug, Clone)]
pub struct GraphMetric {
    graph: GeneralGraph,
    table: Option<Vec<Vec<u32>>>,
}

impl GraphMetric {
    pub fn new(graph: GeneralGraph) -> Result<Self> {
        Self::with_table_cap(graph, DEFAULT_TABLE_CAP)
    }

    pub fn with_table_cap(graph: GeneralGraph, table_cap: usize) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        graph.bfs_distances(0)?;
        let table = if graph.vertex_count() <= table_cap {
            let rows = (0..graph.vertex_count())
                .map(|s| {
                    let row = graph.bfs_distances(s).expect("connectivity checked");
                    row.dist.into_iter().map(|d| d as u32).collect()
                })
                .collect();
            Some(rows)
        } else {
            None
        };
        Ok(GraphMetric { graph, table })
    }

    pub fn graph(&self) -> &GeneralGraph {
        &self.graph
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }
}

impl Universe for GraphMetric {
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn distance(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a][b] as usize,
            None => self.distances_from(a).dist[b],
        }
    }

    fn distances_from(&self, source: usize) -> DistanceRow {
        match &self.table {
            Some(t) => DistanceRow {
                source,
                dist: t[source].iter().map(|&d| d as usize).collect(),
            },
            None => self.graph.bfs_distances(source).expect("connectivity checked"),
        }
    }

    fn eccentricity(&self, v: usize) -> usize {
        match &self.table {
            Some(t) => t[v].iter().copied().max().unwrap_or(0) as usize,
            None => self.distances_from(v).dist.into_iter().max().unwrap_or(0),
        }
    }

    fn describe(&self) -> String {
        format!(
            "graph with {} vertices and {} edges",
            self.graph.vertex_count(),
            self.graph.edge_count()
        )
    }
}

pub fn eccentricity<U: Universe + ?Sized>(g: &U, v: usize) -> usize {
    g.eccentricity(v)
}

/// Minimum eccentricity. Errors on an empty universe.
pub fn radius<U: Universe + ?Sized>(g: &U) -> Result<usize> {
    (0..g.vertex_count())
        .map(|v| g.eccentricity(v))
        .min()
        .ok_or(Error::EmptyGraph)
}

pub fn diameter<U: Universe + ?Sized>(g: &U) -> Result<usize> {
    (0..g.vertex_count())
        .map(|v| g.eccentricity(v))
        .max()
        .ok_or(Error::EmptyGraph)
}

/// Smallest-id vertex of minimum eccentricity, with that eccentricity.
pub fn center<U: Universe + ?Sized>(g: &U) -> Result<(usize, usize)> {
    (0..g.vertex_count())
        .map(|v| (g.eccentricity(v), v))
        .min()
        .map(|(e, v)| (v, e))
        .ok_or(Error::EmptyGraph)
}
