//! Finite cell decompositions of the compact phase spaces: a closed interval,
//! a disjoint union of closed intervals, and the flat 2-torus.
//!
//! Cells are half-open boxes except the last cell of each piece, which is
//! closed, so every point of the space lies in exactly one cell. Cell ids are
//! contiguous from 0, ordered piece by piece and left to right; on the torus
//! the id of column `i`, row `j` is `j * width + i`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cellset::CellSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CellSpaceError {
    #[error("point {point:?} lies outside the space")]
    PointOutsideSpace { point: Vec<f64> },
    #[error("point has dimension {got}, space has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cell id {cell} out of range for a space of {cells} cells")]
    CellOutOfRange { cell: usize, cells: usize },
    #[error("invalid space: {0}")]
    InvalidSpace(String),
}

impl CellSpaceError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::PointOutsideSpace { .. } => "PointOutsideSpace",
            Self::DimensionMismatch { .. } => "DimensionMismatch",
            Self::CellOutOfRange { .. } => "CellOutOfRange",
            Self::InvalidSpace(_) => "InvalidSpace",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Interval,
    IntervalUnion,
    Torus2,
}

/// Content-derived identifier of a [`CellSpace`]; two spaces with the same
/// geometry and resolution share an id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceId(pub u64);

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Piece {
    lo: f64,
    hi: f64,
    cells: usize,
}

impl Piece {
    fn width(&self) -> f64 {
        (self.hi - self.lo) / self.cells as f64
    }

    fn edge(&self, k: usize) -> f64 {
        if k == self.cells {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * (k as f64) / (self.cells as f64)
        }
    }
}

/// Axis-aligned closed box of a cell. Interval spaces use only axis 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellBox {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SpaceRepr {
    kind: SpaceKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pieces: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    subdivisions: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grid: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct CellSpace {
    kind: SpaceKind,
    pieces: Vec<Piece>,
    piece_offsets: Vec<usize>,
    grid: [usize; 2],
    n_cells: usize,
    id: SpaceId,
}

impl TryFrom<SpaceRepr> for CellSpace {
    type Error = CellSpaceError;

    fn try_from(repr: SpaceRepr) -> Result<Self, Self::Error> {
        match repr.kind {
            SpaceKind::Torus2 => {
                let [w, h] = repr.grid.ok_or_else(|| {
                    CellSpaceError::InvalidSpace("torus2 requires \"grid\": [w, h]".into())
                })?;
                CellSpace::torus(w, h)
            }
            kind => {
                if repr.pieces.len() != repr.subdivisions.len() {
                    return Err(CellSpaceError::InvalidSpace(format!(
                        "{} pieces but {} subdivision counts",
                        repr.pieces.len(),
                        repr.subdivisions.len()
                    )));
                }
                let pieces: Vec<(f64, f64, usize)> = repr
                    .pieces
                    .iter()
                    .zip(&repr.subdivisions)
                    .map(|(p, &n)| (p[0], p[1], n))
                    .collect();
                if kind == SpaceKind::Interval {
                    if pieces.len() != 1 {
                        return Err(CellSpaceError::InvalidSpace(
                            "interval requires exactly one piece".into(),
                        ));
                    }
                    CellSpace::interval(pieces[0].0, pieces[0].1, pieces[0].2)
                } else {
                    CellSpace::interval_union(&pieces)
                }
            }
        }
    }
}

impl From<CellSpace> for SpaceRepr {
    fn from(space: CellSpace) -> Self {
        space.repr()
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}

impl CellSpace {
    pub fn interval(lo: f64, hi: f64, cells: usize) -> Result<Self, CellSpaceError> {
        Self::build(SpaceKind::Interval, &[(lo, hi, cells)])
    }

    /// Disjoint union of closed intervals, given as `(lo, hi, cells)` in
    /// increasing order.
    pub fn interval_union(pieces: &[(f64, f64, usize)]) -> Result<Self, CellSpaceError> {
        Self::build(SpaceKind::IntervalUnion, pieces)
    }

    pub fn torus(width: usize, height: usize) -> Result<Self, CellSpaceError> {
        if width == 0 || height == 0 {
            return Err(CellSpaceError::InvalidSpace(
                "torus grid dimensions must be positive".into(),
            ));
        }
        let mut space = CellSpace {
            kind: SpaceKind::Torus2,
            pieces: Vec::new(),
            piece_offsets: Vec::new(),
            grid: [width, height],
            n_cells: width * height,
            id: SpaceId(0),
        };
        space.id = space.compute_id();
        Ok(space)
    }

    fn build(kind: SpaceKind, raw: &[(f64, f64, usize)]) -> Result<Self, CellSpaceError> {
        if raw.is_empty() {
            return Err(CellSpaceError::InvalidSpace("no pieces".into()));
        }
        let mut pieces = Vec::with_capacity(raw.len());
        let mut piece_offsets = Vec::with_capacity(raw.len());
        let mut n_cells = 0usize;
        for (i, &(lo, hi, cells)) in raw.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(CellSpaceError::InvalidSpace(format!(
                    "piece {i} = [{lo}, {hi}] is not a nondegenerate finite interval"
                )));
            }
            if cells == 0 {
                return Err(CellSpaceError::InvalidSpace(format!(
                    "piece {i} has zero subdivisions"
                )));
            }
            if let Some(prev) = pieces.last() {
                let prev: &Piece = prev;
                if prev.hi >= lo {
                    return Err(CellSpaceError::InvalidSpace(format!(
                        "pieces must be increasing and pairwise disjoint (piece {i})"
                    )));
                }
            }
            piece_offsets.push(n_cells);
            n_cells += cells;
            pieces.push(Piece { lo, hi, cells });
        }
        let mut space = CellSpace {
            kind,
            pieces,
            piece_offsets,
            grid: [0, 0],
            n_cells,
            id: SpaceId(0),
        };
        space.id = space.compute_id();
        Ok(space)
    }

    fn repr(&self) -> SpaceRepr {
        match self.kind {
            SpaceKind::Torus2 => SpaceRepr {
                kind: self.kind,
                pieces: Vec::new(),
                subdivisions: Vec::new(),
                grid: Some(self.grid),
            },
            kind => SpaceRepr {
                kind,
                pieces: self.pieces.iter().map(|p| [p.lo, p.hi]).collect(),
                subdivisions: self.pieces.iter().map(|p| p.cells).collect(),
                grid: None,
            },
        }
    }

    fn compute_id(&self) -> SpaceId {
        let text = serde_json::to_string(&self.repr()).expect("space repr serializes");
        SpaceId(fnv1a(text.as_bytes()))
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.n_cells
    }

    pub fn is_empty(&self) -> bool {
        self.n_cells == 0
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            SpaceKind::Torus2 => 2,
            _ => 1,
        }
    }

    /// Grid `[width, height]` of a torus; `[0, 0]` for interval spaces.
    pub fn grid(&self) -> [usize; 2] {
        self.grid
    }

    /// The pieces `(lo, hi, cells)` of an interval space; empty for the torus.
    pub fn pieces(&self) -> Vec<(f64, f64, usize)> {
        self.pieces.iter().map(|p| (p.lo, p.hi, p.cells)).collect()
    }

    /// Number of pieces a cell set can at most be spread over; the torus is
    /// one piece.
    pub fn piece_count(&self) -> usize {
        match self.kind {
            SpaceKind::Torus2 => 1,
            _ => self.pieces.len(),
        }
    }

    /// Index of the piece containing `cell`.
    pub fn piece_of(&self, cell: usize) -> usize {
        match self.kind {
            SpaceKind::Torus2 => 0,
            _ => self.piece_offsets.partition_point(|&off| off <= cell) - 1,
        }
    }

    /// Largest cell diameter in the space metric.
    pub fn cell_size(&self) -> f64 {
        match self.kind {
            SpaceKind::Torus2 => {
                (1.0 / self.grid[0] as f64).max(1.0 / self.grid[1] as f64)
            }
            _ => self
                .pieces
                .iter()
                .map(Piece::width)
                .fold(0.0, f64::max),
        }
    }

    /// Half the diameter of `cell`: the largest distance from its center to
    /// a point of the cell.
    pub fn cell_radius(&self, cell: usize) -> f64 {
        match self.kind {
            SpaceKind::Torus2 => 0.5 * self.cell_size(),
            _ => 0.5 * self.pieces[self.piece_of(cell)].width(),
        }
    }

    /// Diameter of the whole space.
    pub fn diameter(&self) -> f64 {
        match self.kind {
            SpaceKind::Torus2 => 0.5,
            _ => self.pieces.last().unwrap().hi - self.pieces[0].lo,
        }
    }

    pub fn cell_box(&self, cell: usize) -> CellBox {
        debug_assert!(cell < self.n_cells);
        match self.kind {
            SpaceKind::Torus2 => {
                let [w, h] = self.grid;
                let (i, j) = (cell % w, cell / w);
                CellBox {
                    lo: [i as f64 / w as f64, j as f64 / h as f64],
                    hi: [(i + 1) as f64 / w as f64, (j + 1) as f64 / h as f64],
                }
            }
            _ => {
                let p = self.piece_of(cell);
                let piece = &self.pieces[p];
                let k = cell - self.piece_offsets[p];
                CellBox {
                    lo: [piece.edge(k), 0.0],
                    hi: [piece.edge(k + 1), 0.0],
                }
            }
        }
    }

    /// Center of `cell`. Interval spaces leave the second coordinate at 0.
    pub fn center(&self, cell: usize) -> [f64; 2] {
        let b = self.cell_box(cell);
        match self.kind {
            SpaceKind::Torus2 => [0.5 * (b.lo[0] + b.hi[0]), 0.5 * (b.lo[1] + b.hi[1])],
            _ => [0.5 * (b.lo[0] + b.hi[0]), 0.0],
        }
    }

    fn check_dim(&self, point: &[f64]) -> Result<(), CellSpaceError> {
        if point.len() != self.dim() {
            return Err(CellSpaceError::DimensionMismatch {
                expected: self.dim(),
                got: point.len(),
            });
        }
        Ok(())
    }

    /// Distance in the space metric: absolute difference on interval spaces,
    /// wrapped max-metric on the torus.
    pub fn distance(&self, p: &[f64], q: &[f64]) -> f64 {
        match self.kind {
            SpaceKind::Torus2 => wrapped_gap(p[0], q[0]).max(wrapped_gap(p[1], q[1])),
            _ => (p[0] - q[0]).abs(),
        }
    }

    /// Distance between the centers of two cells.
    pub fn center_distance(&self, a: usize, b: usize) -> f64 {
        let (ca, cb) = (self.center(a), self.center(b));
        self.distance(&ca[..self.dim()], &cb[..self.dim()])
    }

    pub fn cell_of(&self, point: &[f64]) -> Result<usize, CellSpaceError> {
        self.check_dim(point)?;
        if point.iter().any(|x| !x.is_finite()) {
            return Err(CellSpaceError::PointOutsideSpace {
                point: point.to_vec(),
            });
        }
        match self.kind {
            SpaceKind::Torus2 => {
                let [w, h] = self.grid;
                let i = axis_index(point[0].rem_euclid(1.0), w);
                let j = axis_index(point[1].rem_euclid(1.0), h);
                Ok(j * w + i)
            }
            _ => {
                let x = point[0];
                for (p, piece) in self.pieces.iter().enumerate() {
                    if x >= piece.lo && x <= piece.hi {
                        let n = piece.cells;
                        let mut k = (((x - piece.lo) / (piece.hi - piece.lo)) * n as f64)
                            .floor()
                            .clamp(0.0, (n - 1) as f64) as usize;
                        // Agree exactly with the box edges used elsewhere.
                        while k > 0 && x < piece.edge(k) {
                            k -= 1;
                        }
                        while k + 1 < n && x >= piece.edge(k + 1) {
                            k += 1;
                        }
                        return Ok(self.piece_offsets[p] + k);
                    }
                }
                Err(CellSpaceError::PointOutsideSpace {
                    point: point.to_vec(),
                })
            }
        }
    }

    /// Cells whose closed box meets the open ball of `radius` around
    /// `center`, as a cell set.
    pub fn ball_cells(&self, center: &[f64], radius: f64) -> Result<CellSet, CellSpaceError> {
        self.check_dim(center)?;
        if radius.is_nan() || radius <= 0.0 || center.iter().any(|x| !x.is_finite()) {
            return Err(CellSpaceError::InvalidSpace(format!(
                "ball needs a finite center and positive radius (got {radius})"
            )));
        }
        let mut c = [0.0; 2];
        c[..center.len()].copy_from_slice(center);
        let ids = self.ball_cell_ids(c, radius);
        Ok(CellSet::from_sorted_ids(self, ids.into_iter().map(|i| i as usize)))
    }

    /// Sorted ids of the cells whose closed box meets the open ball.
    /// On the torus the center is reduced mod 1 first.
    pub(crate) fn ball_cell_ids(&self, center: [f64; 2], radius: f64) -> Vec<u32> {
        match self.kind {
            SpaceKind::Torus2 => {
                let [w, h] = self.grid;
                let xs = torus_axis_hits(center[0].rem_euclid(1.0), radius, w);
                let ys = torus_axis_hits(center[1].rem_euclid(1.0), radius, h);
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for &j in &ys {
                    for &i in &xs {
                        out.push((j * w + i) as u32);
                    }
                }
                out
            }
            _ => {
                let x = center[0];
                let mut out = Vec::new();
                for (p, piece) in self.pieces.iter().enumerate() {
                    if x - radius >= piece.hi || x + radius <= piece.lo {
                        continue;
                    }
                    let n = piece.cells as isize;
                    let scale = n as f64 / (piece.hi - piece.lo);
                    let first = (((x - radius - piece.lo) * scale).floor() as isize - 1).max(0);
                    let last = (((x + radius - piece.lo) * scale).floor() as isize + 1).min(n - 1);
                    for k in first..=last {
                        let k = k as usize;
                        let gap = interval_gap(x, piece.edge(k), piece.edge(k + 1));
                        if gap < radius {
                            out.push((self.piece_offsets[p] + k) as u32);
                        }
                    }
                }
                out
            }
        }
    }

    /// Facet neighbours of a cell. Interval pieces are not adjacent to each
    /// other; the torus wraps on both axes.
    pub fn neighbors(&self, cell: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(4);
        match self.kind {
            SpaceKind::Torus2 => {
                let [w, h] = self.grid;
                let (i, j) = (cell % w, cell / w);
                let candidates = [
                    j * w + (i + w - 1) % w,
                    j * w + (i + 1) % w,
                    ((j + h - 1) % h) * w + i,
                    ((j + 1) % h) * w + i,
                ];
                for c in candidates {
                    if c != cell && !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
            _ => {
                let p = self.piece_of(cell);
                let k = cell - self.piece_offsets[p];
                if k > 0 {
                    out.push(cell - 1);
                }
                if k + 1 < self.pieces[p].cells {
                    out.push(cell + 1);
                }
            }
        }
        out
    }

    /// Splits `set` into maximal facet-connected parts, sorted by smallest
    /// member.
    pub fn spatial_components(&self, set: &CellSet) -> Vec<CellSet> {
        assert_eq!(set.space_id(), self.id, "cell set belongs to another space");
        let mut seen = CellSet::empty(self);
        let mut parts = Vec::new();
        let mut queue = VecDeque::new();
        for start in set.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut part = CellSet::empty(self);
            seen.insert(start);
            queue.push_back(start);
            while let Some(c) = queue.pop_front() {
                part.insert(c);
                for nb in self.neighbors(c) {
                    if set.contains(nb) && !seen.contains(nb) {
                        seen.insert(nb);
                        queue.push_back(nb);
                    }
                }
            }
            parts.push(part);
        }
        parts
    }
}

fn axis_index(x: f64, n: usize) -> usize {
    let k = (x * n as f64).floor();
    if k < 0.0 {
        0
    } else {
        (k as usize).min(n - 1)
    }
}

fn interval_gap(x: f64, lo: f64, hi: f64) -> f64 {
    if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        0.0
    }
}

/// Distance between two reals on the circle R/Z.
pub(crate) fn wrapped_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Distance on R/Z from `c` to the closed arc `[lo, hi]` (with `hi - lo < 1`).
fn arc_gap(c: f64, lo: f64, hi: f64) -> f64 {
    let fwd = (lo - c).rem_euclid(1.0);
    let back = (c - hi).rem_euclid(1.0);
    if fwd + (hi - lo) >= 1.0 {
        // c lies on the arc.
        return 0.0;
    }
    fwd.min(back)
}

fn torus_axis_hits(c: f64, radius: f64, n: usize) -> Vec<usize> {
    let width = 1.0 / n as f64;
    if radius >= 0.5 + width {
        return (0..n).collect();
    }
    let first = ((c - radius) * n as f64).floor() as isize - 1;
    let last = ((c + radius) * n as f64).floor() as isize + 1;
    let mut hits: Vec<usize> = Vec::new();
    if (last - first + 1) as usize >= n {
        for k in 0..n {
            let (lo, hi) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
            if arc_gap(c, lo, hi) < radius {
                hits.push(k);
            }
        }
        return hits;
    }
    for k in first..=last {
        let k = k.rem_euclid(n as isize) as usize;
        let (lo, hi) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
        if arc_gap(c, lo, hi) < radius {
            hits.push(k);
        }
    }
    hits.sort_unstable();
    hits.dedup();
    hits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> CellSpace {
        CellSpace::interval(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn cell_of_endpoints() {
        let s = unit(4);
        assert_eq!(s.cell_of(&[0.0]).unwrap(), 0);
        assert_eq!(s.cell_of(&[1.0]).unwrap(), 3);
        assert_eq!(s.cell_of(&[0.25]).unwrap(), 1);
        assert!(matches!(
            s.cell_of(&[1.5]),
            Err(CellSpaceError::PointOutsideSpace { .. })
        ));
    }

    #[test]
    fn torus_cell_of_reduces_mod_one() {
        let s = CellSpace::torus(4, 4).unwrap();
        let a = s.cell_of(&[1.25, -0.25]).unwrap();
        let b = s.cell_of(&[0.25, 0.75]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, 3 * 4 + 1);
    }

    #[test]
    fn union_gap_is_outside() {
        let s = CellSpace::interval_union(&[(0.0, 1.0, 4), (3.0, 4.0, 4)]).unwrap();
        assert!(matches!(
            s.cell_of(&[2.0]),
            Err(CellSpaceError::PointOutsideSpace { .. })
        ));
        assert_eq!(s.cell_of(&[3.0]).unwrap(), 4);
        assert_eq!(s.cell_of(&[4.0]).unwrap(), 7);
    }

    #[test]
    fn ball_on_unit_interval() {
        // Boxes [0.4,0.5], [0.5,0.6], [0.6,0.7] are within 0.05 of 0.55.
        let s = unit(10);
        let ball = s.ball_cells(&[0.55], 0.06).unwrap();
        assert_eq!(ball.to_vec(), vec![4, 5, 6]);
    }

    #[test]
    fn huge_ball_is_everything() {
        let s = unit(10);
        assert_eq!(s.ball_cells(&[0.3], 5.0).unwrap().len(), 10);
        let t = CellSpace::torus(5, 3).unwrap();
        assert_eq!(t.ball_cells(&[0.1, 0.9], 2.0).unwrap().len(), 15);
    }

    #[test]
    fn union_ball_stays_in_first_piece() {
        let s = CellSpace::interval_union(&[(0.0, 1.0, 4), (3.0, 4.0, 4)]).unwrap();
        let ball = s.ball_cells(&[0.5], 0.6).unwrap();
        assert_eq!(ball.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn torus_ball_wraps() {
        let s = CellSpace::torus(8, 8).unwrap();
        // Center on the corner cell; radius under one cell reaches the
        // wrapped neighbours on both axes.
        let ball = s.ball_cells(&[0.01, 0.01], 0.05).unwrap();
        let v = ball.to_vec();
        assert!(v.contains(&0));
        assert!(v.contains(&7));
        assert!(v.contains(&56));
        assert!(v.contains(&63));
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn components_on_interval() {
        let s = unit(8);
        let set = CellSet::from_cells(&s, [0, 1, 2, 5, 6]).unwrap();
        let parts: Vec<Vec<usize>> = s.spatial_components(&set).iter().map(|p| p.to_vec()).collect();
        assert_eq!(parts, vec![vec![0, 1, 2], vec![5, 6]]);
        assert!(s.spatial_components(&CellSet::empty(&s)).is_empty());
    }

    #[test]
    fn components_on_torus_and_union() {
        let t = CellSpace::torus(6, 5).unwrap();
        assert_eq!(t.spatial_components(&CellSet::full(&t)).len(), 1);
        // Column 0 and column 5 touch through the wrap.
        let set = CellSet::from_cells(&t, [0, 5]).unwrap();
        assert_eq!(t.spatial_components(&set).len(), 1);

        let u = CellSpace::interval_union(&[(0.0, 1.0, 3), (3.0, 4.0, 2)]).unwrap();
        let parts = u.spatial_components(&CellSet::full(&u));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].to_vec(), vec![3, 4]);
    }

    #[test]
    fn json_shape() {
        let s = CellSpace::interval_union(&[(0.0, 1.0, 4), (3.0, 4.0, 4)]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"interval_union","pieces":[[0.0,1.0],[3.0,4.0]],"subdivisions":[4,4]}"#
        );
        let back: CellSpace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let t: CellSpace = serde_json::from_str(r#"{"kind":"torus2","grid":[3,2]}"#).unwrap();
        assert_eq!(t.len(), 6);
        assert!(serde_json::from_str::<CellSpace>(r#"{"kind":"interval","pieces":[[1,0]],"subdivisions":[3]}"#).is_err());
        assert!(serde_json::from_str::<CellSpace>(
            r#"{"kind":"interval_union","pieces":[[0,2],[1,3]],"subdivisions":[3,3]}"#
        )
        .is_err());
    }

    #[test]
    fn ids_depend_on_content() {
        assert_eq!(unit(4).id(), unit(4).id());
        assert_ne!(unit(4).id(), unit(5).id());
    }
}
