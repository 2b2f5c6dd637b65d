//! JSON instance documents and ASCII rendering.
//!
//! ```json
//! {"graph": {"family": "grid", "n": 6, "m": 5},
//!  "multipacking": [[0, 0], [5, 0], [2, 3], [0, 4], [5, 4]],
//!  "broadcast": {"2,2": 4}}
//! ```
//!
//! Grid members are `[x, y]` pairs sorted by `(y, x)` and broadcast keys are
//! `"x,y"`; other families use plain vertex ids for both.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::broadcast::Broadcast;
use crate::error::{Error, Result};
use crate::graph::{make_cycle, make_grid, make_path, GeneralGraph, GraphMetric, GridShape, Universe, Vertex};
use crate::multipacking::Multipacking;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GraphDescriptor {
    Grid { n: usize, m: usize },
    Path { n: usize },
    Cycle { n: usize },
    Edges { vertex_count: usize, edges: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Member {
    Coord([usize; 2]),
    Id(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub graph: GraphDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multipacking: Option<Vec<Member>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub broadcast: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mp_value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal_pair: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Vec<String>>,
}

/// The metric space a document describes.
#[derive(Debug, Clone)]
pub enum Instance {
    Grid(GridShape),
    Graph(GraphMetric),
}

impl Instance {
    pub fn universe(&self) -> &dyn Universe {
        match self {
            Instance::Grid(s) => s,
            Instance::Graph(g) => g,
        }
    }

    pub fn grid(&self) -> Option<GridShape> {
        match self {
            Instance::Grid(s) => Some(*s),
            Instance::Graph(_) => None,
        }
    }

    /// Adjacency-list form, for the exact solvers and exports.
    pub fn graph(&self) -> GeneralGraph {
        match self {
            Instance::Grid(s) => make_grid(*s),
            Instance::Graph(g) => g.graph().clone(),
        }
    }
}

impl GraphDescriptor {
    pub fn instance(&self) -> Result<Instance> {
        Ok(match self {
            GraphDescriptor::Grid { n, m } => Instance::Grid(GridShape::new(*n, *m)?),
            GraphDescriptor::Path { n } => Instance::Graph(GraphMetric::new(make_path(*n)?)?),
            GraphDescriptor::Cycle { n } => Instance::Graph(GraphMetric::new(make_cycle(*n)?)?),
            GraphDescriptor::Edges { vertex_count, edges } => {
                Instance::Graph(GraphMetric::new(GeneralGraph::from_edges(*vertex_count, edges)?)?)
            }
        })
    }
}

/// A document with its witnesses checked for bounds and duplicates.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub instance: Instance,
    pub multipacking: Option<Multipacking>,
    pub broadcast: Option<Broadcast>,
}

fn member_id(instance: &Instance, m: Member) -> Result<usize> {
    match (instance, m) {
        (Instance::Grid(s), Member::Coord([x, y])) => {
            let v = Vertex::new(x, y);
            s.check(v)?;
            Ok(s.id(v))
        }
        (Instance::Graph(g), Member::Id(id)) => {
            if id < g.vertex_count() {
                Ok(id)
            } else {
                Err(Error::OutOfBounds(format!("{id} in a graph of {} vertices", g.vertex_count())))
            }
        }
        (Instance::Grid(_), Member::Id(id)) => {
            Err(Error::OutOfBounds(format!("{id}: grid members are written as [x, y]")))
        }
        (Instance::Graph(_), Member::Coord(c)) => {
            Err(Error::OutOfBounds(format!("{c:?}: graph members are written as vertex ids")))
        }
    }
}

fn parse_key(instance: &Instance, key: &str) -> Result<usize> {
    let bad = || Error::OutOfBounds(format!("malformed broadcast key {key:?}"));
    let member = match key.split_once(',') {
        Some((x, y)) => Member::Coord([
            x.trim().parse().map_err(|_| bad())?,
            y.trim().parse().map_err(|_| bad())?,
        ]),
        None => Member::Id(key.trim().parse().map_err(|_| bad())?),
    };
    member_id(instance, member)
}

impl InstanceDocument {
    pub fn new(graph: GraphDescriptor) -> Self {
        InstanceDocument {
            graph,
            multipacking: None,
            broadcast: None,
            size: None,
            gamma_b: None,
            mp_value: None,
            optimal_pair: None,
            method: None,
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let instance = self.graph.instance()?;
        let multipacking = match &self.multipacking {
            None => None,
            Some(list) => {
                let ids = list
                    .iter()
                    .map(|&m| member_id(&instance, m))
                    .collect::<Result<Vec<_>>>()?;
                Some(Multipacking::new(instance.universe(), ids)?)
            }
        };
        let broadcast = match &self.broadcast {
            None => None,
            Some(map) => {
                let powers = map
                    .iter()
                    .map(|(k, &p)| Ok((parse_key(&instance, k)?, p)))
                    .collect::<Result<Vec<_>>>()?;
                Some(Broadcast::new(instance.universe(), powers)?)
            }
        };
        Ok(Resolved { instance, multipacking, broadcast })
    }

    /// Fills the witness fields from resolved values, in canonical order.
    pub fn set_witnesses(
        &mut self,
        instance: &Instance,
        packing: Option<&Multipacking>,
        broadcast: Option<&Broadcast>,
    ) {
        let encode = |id: usize| match instance {
            Instance::Grid(s) => {
                let v = s.vertex(id);
                (Member::Coord([v.x, v.y]), format!("{},{}", v.x, v.y))
            }
            Instance::Graph(_) => (Member::Id(id), id.to_string()),
        };
        self.multipacking = packing.map(|p| p.members().iter().map(|&id| encode(id).0).collect());
        self.broadcast = broadcast.map(|b| b.powers().iter().map(|(&v, &p)| (encode(v).1, p)).collect());
    }
}

/// `m` lines of `n` characters, top row (`y = m - 1`) first. Members are
/// `X`, broadcasting vertices show their power (`*` above 9).
pub fn render_ascii(shape: GridShape, members: &[Vertex], broadcast: Option<&Broadcast>) -> String {
    let (n, m) = (shape.n(), shape.m());
    let mut cells = vec![vec!['.'; n]; m];
    for v in members {
        cells[v.y][v.x] = 'X';
    }
    if let Some(b) = broadcast {
        for (&id, &p) in b.powers() {
            let v = shape.vertex(id);
            cells[v.y][v.x] = char::from_digit(p as u32, 10).filter(|_| p < 10).unwrap_or('*');
        }
    }
    let mut out = String::with_capacity((n + 1) * m);
    for row in cells.iter().rev() {
        out.extend(row.iter());
        out.push('\n');
    }
    out
}
