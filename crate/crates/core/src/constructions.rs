//! Explicit multipackings of size `mp(P_n □ P_m)` for every grid.
//!
//! Side selections are built from i-patterns: on a path `v_0 .. v_{z-1}`
//! take `v_0, v_3, .., v_{3(i-1)}` and then every fourth vertex from
//! `v_{3i}`. Grids with both extents even and at least 8 get patterns on
//! all four sides, grids of height 4 or 6 get patterns on the two long
//! sides only, a handful of small grids come from a table, and odd
//! extents are reduced to even ones by inserting an empty line in the
//! middle.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{GridShape, Vertex};
use crate::multipacking::Multipacking;

/// Unit step along a side path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    PlusX,
    MinusX,
    PlusY,
    MinusY,
}

/// An i-pattern laid along a straight path of `z` grid vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternSpec {
    pub i: usize,
    pub z: usize,
    pub anchor: Vertex,
    pub step: Step,
}

impl PatternSpec {
    /// Position `t` along the path, or `None` if it leaves the grid.
    fn position(&self, shape: GridShape, t: usize) -> Option<Vertex> {
        let Vertex { x, y } = self.anchor;
        let v = match self.step {
            Step::PlusX => Vertex::new(x + t, y),
            Step::MinusX => Vertex::new(x.checked_sub(t)?, y),
            Step::PlusY => Vertex::new(x, y + t),
            Step::MinusY => Vertex::new(x, y.checked_sub(t)?),
        };
        shape.contains(v).then_some(v)
    }

    pub fn vertices(&self, shape: GridShape) -> Result<Vec<Vertex>> {
        if self.z > 0 && self.position(shape, self.z - 1).is_none() {
            return Err(Error::InapplicablePattern(format!(
                "path of order {} from {} leaves the {shape} grid",
                self.z, self.anchor
            )));
        }
        Ok(i_pattern_indices(self.z, self.i)?
            .into_iter()
            .map(|t| self.position(shape, t).expect("path checked in bounds"))
            .collect())
    }
}

/// Indices selected by the `i`-pattern on a path of order `z`.
///
/// Requires `3i <= z`; the result has exactly `⌈(z+i)/4⌉` elements.
pub fn i_pattern_indices(z: usize, i: usize) -> Result<Vec<usize>> {
    if 3 * i > z {
        return Err(Error::InapplicablePattern(format!(
            "{i}-pattern needs a path of order at least {}, got {z}",
            3 * i
        )));
    }
    let mut out: Vec<usize> = (0..i).map(|j| 3 * j).collect();
    out.extend((3 * i..z).step_by(4));
    Ok(out)
}

/// Upper bound `⌈(ℓ+1+i)/4⌉` on how many `i`-pattern vertices a subpath
/// of length `ℓ` (that is, `ℓ+1` vertices) can contain.
pub fn pattern_window_bound(i: usize, len: usize) -> usize {
    (len + 1 + i).div_ceil(4)
}

/// A multipacking together with the grid it lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMultipacking {
    shape: GridShape,
    packing: Multipacking,
}

impl GridMultipacking {
    pub fn new(shape: GridShape, vertices: &[Vertex]) -> Result<Self> {
        Ok(GridMultipacking {
            shape,
            packing: Multipacking::from_vertices(shape, vertices)?,
        })
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn packing(&self) -> &Multipacking {
        &self.packing
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.packing.vertices(self.shape)
    }

    pub fn len(&self) -> usize {
        self.packing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packing.is_empty()
    }

    pub fn transpose(&self) -> GridMultipacking {
        let t: Vec<Vertex> = self.vertices().into_iter().map(Vertex::transpose).collect();
        GridMultipacking::new(self.shape.transpose(), &t).expect("transpose stays in bounds")
    }
}

/// Which construction produced a packing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Every third vertex of a path; not covered by the grid results.
    Height1Extension,
    Height2,
    Height3,
    Large,
    Long,
    Table,
    OddReduction,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Height1Extension => "height1-extension",
            Method::Height2 => "height2",
            Method::Height3 => "height3",
            Method::Large => "large",
            Method::Long => "long",
            Method::Table => "table",
            Method::OddReduction => "odd-reduction",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub shape: GridShape,
    pub method: Method,
    pub sub: Option<Box<ConstructionPlan>>,
    pub expected_size: usize,
}

impl ConstructionPlan {
    /// Methods from the outermost step down to the base case.
    pub fn methods(&self) -> Vec<Method> {
        let mut out = vec![self.method];
        let mut cur = &self.sub;
        while let Some(p) = cur {
            out.push(p.method);
            cur = &p.sub;
        }
        out
    }

    fn transpose(mut self) -> Self {
        self.shape = self.shape.transpose();
        self.sub = self.sub.map(|s| Box::new(s.transpose()));
        self
    }
}

fn shape(n: usize, m: usize) -> Result<GridShape> {
    GridShape::new(n, m)
}

/// Every third vertex of an `n x 1` path.
pub fn height1_packing(n: usize) -> Result<GridMultipacking> {
    let s = shape(n, 1)?;
    let v: Vec<Vertex> = (0..n).step_by(3).map(|x| Vertex::new(x, 0)).collect();
    GridMultipacking::new(s, &v)
}

/// `(i,0)` for `i ≡ 0 (mod 5)` and `(i,1)` for `i ≡ 2 (mod 5)`.
pub fn height2_packing(n: usize) -> Result<GridMultipacking> {
    let s = shape(n, 2)?;
    let v: Vec<Vertex> = (0..n)
        .filter_map(|x| match x % 5 {
            0 => Some(Vertex::new(x, 0)),
            2 => Some(Vertex::new(x, 1)),
            _ => None,
        })
        .collect();
    GridMultipacking::new(s, &v)
}

/// `(i,0)` for `i ≡ 0 (mod 4)` and `(i,2)` for `i ≡ 1 (mod 4)`.
pub fn height3_packing(n: usize) -> Result<GridMultipacking> {
    let s = shape(n, 3)?;
    let v: Vec<Vertex> = (0..n)
        .filter_map(|x| match x % 4 {
            0 => Some(Vertex::new(x, 0)),
            1 => Some(Vertex::new(x, 2)),
            _ => None,
        })
        .collect();
    GridMultipacking::new(s, &v)
}

/// Perimeter construction for even `n, m >= 8`.
///
/// Each side is a path running away from its corner in rotational order
/// with the last three vertices dropped, so every corner belongs to exactly
/// one side and starts that side's pattern. Top and right take the 1- or
/// 2-pattern, bottom and left the 1- or 0-pattern, depending on the parity
/// of half the side length.
pub fn large_grid_packing(n: usize, m: usize) -> Result<GridMultipacking> {
    if !n.is_multiple_of(2) || !m.is_multiple_of(2) || n < 8 || m < 8 {
        return Err(Error::InapplicableCase(format!(
            "perimeter construction needs even extents of at least 8, got {n}x{m}"
        )));
    }
    let s = shape(n, m)?;
    let (k, kp) = (n / 2, m / 2);
    let (top_i, bottom_i) = if k % 2 == 0 { (1, 1) } else { (2, 0) };
    let (right_i, left_i) = if kp % 2 == 0 { (1, 1) } else { (2, 0) };
    let sides = [
        PatternSpec { i: top_i, z: n - 3, anchor: Vertex::new(0, m - 1), step: Step::PlusX },
        PatternSpec { i: bottom_i, z: n - 3, anchor: Vertex::new(n - 1, 0), step: Step::MinusX },
        PatternSpec { i: right_i, z: m - 3, anchor: Vertex::new(n - 1, m - 1), step: Step::MinusY },
        PatternSpec { i: left_i, z: m - 3, anchor: Vertex::new(0, 0), step: Step::PlusY },
    ];
    let mut v = Vec::with_capacity(k + kp);
    for side in &sides {
        v.extend(side.vertices(s)?);
    }
    GridMultipacking::new(s, &v)
}

/// Pattern indices `(top, bottom)` for a long grid, if applicable.
fn long_grid_patterns(k: usize, kp: usize) -> Option<(usize, usize)> {
    if k % 2 == kp % 2 {
        (3 * kp <= k + 4).then_some((2 * kp - 3, 2 * kp - 3))
    } else if 3 * kp <= k + 1 {
        if kp == 2 {
            Some((0, 3))
        } else {
            Some((2 * kp - 1, 2 * kp - 5))
        }
    } else {
        None
    }
}

/// Whether [`long_grid_packing`] applies to an `n x m` grid.
pub fn long_grid_applies(n: usize, m: usize) -> bool {
    (m == 4 || m == 6) && n.is_multiple_of(2) && n >= 2 && long_grid_patterns(n / 2, m / 2).is_some()
}

/// Two-sided construction for height 4 or 6: patterns on the full top
/// (anchored left) and bottom (anchored right) rows only.
///
/// Height 4 with `n / 2` odd takes a 3-pattern on the bottom and a
/// 0-pattern on the top whose last vertex is moved to the far corner.
pub fn long_grid_packing(n: usize, m: usize) -> Result<GridMultipacking> {
    if !long_grid_applies(n, m) {
        return Err(Error::InapplicableCase(format!(
            "two-sided construction does not cover a {n}x{m} grid"
        )));
    }
    let s = shape(n, m)?;
    let (top_i, bottom_i) = long_grid_patterns(n / 2, m / 2).expect("checked");
    let top = PatternSpec { i: top_i, z: n, anchor: Vertex::new(0, m - 1), step: Step::PlusX };
    let bottom = PatternSpec { i: bottom_i, z: n, anchor: Vertex::new(n - 1, 0), step: Step::MinusX };
    let mut v = top.vertices(s)?;
    if m == 4 && (n / 2) % 2 == 1 {
        // plain 0-pattern ends at n - 2
        if let Some(last) = v.last_mut() {
            last.x = n - 1;
        }
    }
    v.extend(bottom.vertices(s)?);
    GridMultipacking::new(s, &v)
}

type TableEntry = (usize, usize, &'static [(usize, usize)]);

/// Hand-checked small grids. The 6x4 set is an optimum found by
/// [`crate::oracles::exact_mp`].
const TABLE: &[TableEntry] = &[
    (6, 4, &[(0, 0), (5, 0), (0, 3), (5, 3)]),
    (6, 5, &[(0, 0), (5, 0), (0, 4), (5, 4), (2, 3)]),
    (7, 4, &[(0, 0), (6, 0), (0, 3), (6, 3), (3, 1)]),
    (6, 6, &[(0, 0), (0, 5), (5, 0), (5, 5), (1, 2), (4, 2)]),
    (8, 6, &[(0, 0), (0, 5), (7, 0), (7, 5), (3, 0), (3, 5), (6, 3)]),
    (
        12,
        6,
        &[(0, 0), (0, 5), (4, 0), (5, 5), (7, 0), (8, 5), (11, 0), (11, 5), (2, 3)],
    ),
];

pub fn in_table(n: usize, m: usize) -> bool {
    TABLE
        .iter()
        .any(|&(a, b, _)| (a, b) == (n, m) || (b, a) == (n, m))
}

/// Table lookup, transposing `(x, y) -> (y, x)` when needed.
pub fn table_packing(n: usize, m: usize) -> Result<GridMultipacking> {
    for &(a, b, set) in TABLE {
        let pts: Vec<Vertex> = set.iter().map(|&(x, y)| Vertex::new(x, y)).collect();
        if (a, b) == (n, m) {
            return GridMultipacking::new(shape(a, b)?, &pts);
        }
        if (b, a) == (n, m) {
            return Ok(GridMultipacking::new(shape(a, b)?, &pts)?.transpose());
        }
    }
    Err(Error::NotInTable(n, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Inserts an empty column (`Axis::X`) or row (`Axis::Y`) at `position`;
/// members at or beyond it shift by one. Validity is preserved for
/// `1 <= position < extent`.
pub fn insert_blank_line(
    p: &GridMultipacking,
    axis: Axis,
    position: usize,
) -> Result<GridMultipacking> {
    let s = p.shape();
    let extent = match axis {
        Axis::X => s.n(),
        Axis::Y => s.m(),
    };
    if position == 0 || position > extent {
        return Err(Error::InvalidSize(format!(
            "line position {position} outside 1..={extent}"
        )));
    }
    let shift = |c: usize| if c >= position { c + 1 } else { c };
    let (grown, moved): (GridShape, Vec<Vertex>) = match axis {
        Axis::X => (
            shape(s.n() + 1, s.m())?,
            p.vertices().into_iter().map(|v| Vertex::new(shift(v.x), v.y)).collect(),
        ),
        Axis::Y => (
            shape(s.n(), s.m() + 1)?,
            p.vertices().into_iter().map(|v| Vertex::new(v.x, shift(v.y))).collect(),
        ),
    };
    GridMultipacking::new(grown, &moved)
}

/// `mp(P_n □ P_m)`.
pub fn mp_value(n: usize, m: usize) -> Result<usize> {
    shape(n, m)?;
    let (long, short) = (n.max(m), n.min(m));
    Ok(match short {
        1 => long.div_ceil(3),
        2 => (2 * long).div_ceil(5),
        3 => long / 2 + usize::from(long % 4 != 0),
        _ if (long, short) == (6, 4) => 4,
        _ => long / 2 + short / 2,
    })
}

/// `γ_b(P_n □ P_m)`: the radius `⌊n/2⌋ + ⌊m/2⌋` when both extents are at
/// least 2, and `⌈len/3⌉` for paths.
pub fn gamma_b_value(n: usize, m: usize) -> Result<usize> {
    let s = shape(n, m)?;
    Ok(if n.min(m) == 1 { n.max(m).div_ceil(3) } else { s.radius() })
}

/// Builds a multipacking of size [`mp_value`] and records how.
pub fn build_multipacking(n: usize, m: usize) -> Result<(GridMultipacking, ConstructionPlan)> {
    shape(n, m)?;
    if m > n {
        let (p, plan) = build_multipacking(m, n)?;
        return Ok((p.transpose(), plan.transpose()));
    }
    let expected_size = mp_value(n, m)?;
    let leaf = |method, p: GridMultipacking| {
        let plan = ConstructionPlan { shape: p.shape(), method, sub: None, expected_size };
        Ok((p, plan))
    };
    match m {
        1 => return leaf(Method::Height1Extension, height1_packing(n)?),
        2 => return leaf(Method::Height2, height2_packing(n)?),
        3 => return leaf(Method::Height3, height3_packing(n)?),
        _ => {}
    }
    if in_table(n, m) {
        return leaf(Method::Table, table_packing(n, m)?);
    }
    if n.is_multiple_of(2) && m.is_multiple_of(2) {
        if m >= 8 {
            return leaf(Method::Large, large_grid_packing(n, m)?);
        }
        if long_grid_applies(n, m) {
            return leaf(Method::Long, long_grid_packing(n, m)?);
        }
        return Err(Error::InapplicableCase(format!("no construction for {n}x{m}")));
    }
    let (axis, smaller) = if n % 2 == 1 { (Axis::X, (n - 1, m)) } else { (Axis::Y, (n, m - 1)) };
    let (inner, inner_plan) = build_multipacking(smaller.0, smaller.1)?;
    let old_extent = match axis {
        Axis::X => smaller.0,
        Axis::Y => smaller.1,
    };
    let p = insert_blank_line(&inner, axis, old_extent / 2)?;
    let plan = ConstructionPlan {
        shape: p.shape(),
        method: Method::OddReduction,
        sub: Some(Box::new(inner_plan)),
        expected_size,
    };
    Ok((p, plan))
}
