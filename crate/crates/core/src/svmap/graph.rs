use rayon::prelude::*;

use crate::cellset::CellSet;
use crate::cellspace::CellSpace;
use crate::svmap::{BaseMap, GraphError};

/// Compressed sparse row adjacency over cell ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Csr {
    pub(crate) offsets: Vec<u32>,
    pub(crate) targets: Vec<u32>,
}

impl Csr {
    pub(crate) fn from_rows(rows: &[Vec<u32>]) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        let total: usize = rows.iter().map(Vec::len).sum();
        assert!(total <= u32::MAX as usize, "edge count exceeds u32 range");
        let mut targets = Vec::with_capacity(total);
        offsets.push(0);
        for row in rows {
            targets.extend_from_slice(row);
            offsets.push(targets.len() as u32);
        }
        Csr { offsets, targets }
    }

    pub(crate) fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub(crate) fn row(&self, c: usize) -> &[u32] {
        &self.targets[self.offsets[c] as usize..self.offsets[c + 1] as usize]
    }
}

/// Where a transition graph came from.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Explicit,
    Fattened(BaseMap),
}

/// The combinatorial set-valued map: cell `c` maps to the cell set `row(c)`.
///
/// Rows are nonempty and strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionGraph {
    space: CellSpace,
    csr: Csr,
    epsilon: f64,
    source: GraphSource,
}

impl TransitionGraph {
    /// Validates and canonicalizes rows into a graph.
    pub fn from_parts(
        space: CellSpace,
        rows: Vec<Vec<usize>>,
        epsilon: f64,
        source: GraphSource,
    ) -> Result<Self, GraphError> {
        if rows.len() != space.len() {
            return Err(GraphError::RowCount {
                rows: rows.len(),
                cells: space.len(),
            });
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(GraphError::InvalidEpsilon(epsilon));
        }
        let n = space.len();
        let mut canon = Vec::with_capacity(n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.is_empty() {
                return Err(GraphError::EmptyRow { row: r });
            }
            if let Some(&id) = row.iter().find(|&&id| id >= n) {
                return Err(GraphError::IdOutOfRange { row: r, id });
            }
            let mut row: Vec<u32> = row.into_iter().map(|id| id as u32).collect();
            row.sort_unstable();
            row.dedup();
            canon.push(row);
        }
        Ok(TransitionGraph {
            space,
            csr: Csr::from_rows(&canon),
            epsilon,
            source,
        })
    }

    pub(crate) fn from_csr(
        space: CellSpace,
        csr: Csr,
        epsilon: f64,
        source: GraphSource,
    ) -> Result<Self, GraphError> {
        let n = space.len();
        if csr.len() != n {
            return Err(GraphError::RowCount {
                rows: csr.len(),
                cells: n,
            });
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(GraphError::InvalidEpsilon(epsilon));
        }
        for c in 0..n {
            let row = csr.row(c);
            if row.is_empty() {
                return Err(GraphError::EmptyRow { row: c });
            }
            if let Some(&id) = row.iter().find(|&&id| id as usize >= n) {
                return Err(GraphError::IdOutOfRange {
                    row: c,
                    id: id as usize,
                });
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Format(format!(
                    "row {c} is not strictly increasing"
                )));
            }
        }
        Ok(TransitionGraph {
            space,
            csr,
            epsilon,
            source,
        })
    }

    pub fn space(&self) -> &CellSpace {
        &self.space
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.csr.targets.len()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn source(&self) -> &GraphSource {
        &self.source
    }

    #[inline]
    pub fn row(&self, cell: usize) -> &[u32] {
        self.csr.row(cell)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.len()).map(move |c| self.row(c))
    }

    pub(crate) fn csr(&self) -> &Csr {
        &self.csr
    }

    pub fn row_set(&self, cell: usize) -> CellSet {
        CellSet::from_sorted_ids(&self.space, self.row(cell).iter().map(|&t| t as usize))
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.len()).map(|c| self.row(c).len()).max().unwrap_or(0)
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.len()).map(|c| self.row(c).len()).min().unwrap_or(0)
    }

    /// Union of the rows of the cells in `set`.
    pub fn image(&self, set: &CellSet) -> CellSet {
        assert_eq!(set.space_id(), self.space.id(), "cell set belongs to another space");
        let mut out = CellSet::empty(&self.space);
        for c in set.iter() {
            for &t in self.row(c) {
                out.insert(t as usize);
            }
        }
        out
    }

    /// `n`-fold image; `n = 0` returns `set` unchanged.
    pub fn iterate_image(&self, set: &CellSet, n: usize) -> CellSet {
        let mut cur = set.clone();
        for _ in 0..n {
            cur = self.image(&cur);
        }
        cur
    }

    /// Image of the whole space, `f(X)`.
    pub fn full_image(&self) -> CellSet {
        self.image(&CellSet::full(&self.space))
    }

    /// The relation composed with itself `n >= 1` times.
    pub fn power(&self, n: usize) -> TransitionGraph {
        assert!(n >= 1, "graph powers start at 1");
        if n == 1 {
            return self.clone();
        }
        let rows: Vec<Vec<u32>> = (0..self.len())
            .into_par_iter()
            .map(|c| {
                let start = self.row_set(c);
                self.iterate_image(&start, n - 1)
                    .iter()
                    .map(|t| t as u32)
                    .collect()
            })
            .collect();
        TransitionGraph {
            space: self.space.clone(),
            csr: Csr::from_rows(&rows),
            epsilon: self.epsilon,
            source: self.source.clone(),
        }
    }

    /// True when every row is facet-connected in the space.
    pub fn rows_connected(&self) -> bool {
        (0..self.len()).all(|c| self.space.spatial_components(&self.row_set(c)).len() <= 1)
    }
}

/// Outer enclosure of the ε-fattening of `base` on `space`.
///
/// Row `c` holds every cell meeting the open ball of radius
/// `epsilon + L * radius(c)` around the image of the center of `c`, where
/// `L` bounds the Lipschitz constant. Every `x` in `c` then has
/// `B_epsilon(base(x))` covered by the row.
pub fn fatten(space: &CellSpace, base: &BaseMap, epsilon: f64) -> Result<TransitionGraph, GraphError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(GraphError::InvalidEpsilon(epsilon));
    }
    base.check_space(space)?;
    let lipschitz = base.lipschitz_on(space);
    let wraps = base.wraps_unit_interval();
    let rows: Vec<Vec<u32>> = (0..space.len())
        .into_par_iter()
        .map(|c| {
            let image = base.eval(space.center(c));
            let radius = epsilon + lipschitz * space.cell_radius(c);
            let mut row = space.ball_cell_ids(image, radius);
            if wraps {
                row.extend(space.ball_cell_ids([image[0] - 1.0, 0.0], radius));
                row.extend(space.ball_cell_ids([image[0] + 1.0, 0.0], radius));
                row.sort_unstable();
                row.dedup();
            }
            if row.is_empty() {
                Err(GraphError::EmptyImage { cell: c })
            } else {
                Ok(row)
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(TransitionGraph {
        space: space.clone(),
        csr: Csr::from_rows(&rows),
        epsilon,
        source: GraphSource::Fattened(base.clone()),
    })
}

/// Builds a graph from hand-written rows (epsilon 0, explicit source).
pub fn explicit_graph(space: &CellSpace, rows: Vec<Vec<usize>>) -> Result<TransitionGraph, GraphError> {
    TransitionGraph::from_parts(space.clone(), rows, 0.0, GraphSource::Explicit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::svmap::MapKind;

    fn unit(n: usize) -> CellSpace {
        CellSpace::interval(0.0, 1.0, n).unwrap()
    }

    fn set(space: &CellSpace, cells: &[usize]) -> CellSet {
        CellSet::from_cells(space, cells.iter().copied()).unwrap()
    }

    #[test]
    fn explicit_validation() {
        let s = unit(2);
        assert!(matches!(
            explicit_graph(&s, vec![vec![1], vec![]]),
            Err(GraphError::EmptyRow { row: 1 })
        ));
        assert!(matches!(
            explicit_graph(&s, vec![vec![2], vec![0]]),
            Err(GraphError::IdOutOfRange { row: 0, id: 2 })
        ));
        let g = explicit_graph(&s, vec![vec![1, 0, 1], vec![0]]).unwrap();
        assert_eq!(g.row(0), &[0, 1]);
        assert_eq!(g.epsilon(), 0.0);
        assert_eq!(g.source(), &GraphSource::Explicit);
    }

    #[test]
    fn swap_and_full_images() {
        let s = CellSpace::interval_union(&[(0.0, 1.0, 1), (3.0, 4.0, 1)]).unwrap();
        let swap = explicit_graph(&s, vec![vec![1], vec![0]]).unwrap();
        assert_eq!(swap.image(&set(&s, &[0])).to_vec(), vec![1]);
        assert_eq!(swap.iterate_image(&set(&s, &[0]), 2).to_vec(), vec![0]);
        assert_eq!(swap.iterate_image(&set(&s, &[0]), 0).to_vec(), vec![0]);
        assert!(swap.image(&CellSet::empty(&s)).is_empty());

        let u = unit(2);
        let full = explicit_graph(&u, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(full.image(&set(&u, &[0])).to_vec(), vec![0, 1]);
        assert_eq!(full.full_image().to_vec(), vec![0, 1]);
    }

    #[test]
    fn identity_fattening_has_diagonal() {
        let s = unit(4);
        let g = fatten(&s, &BaseMap::identity(), 0.3).unwrap();
        assert!(g.row(0).contains(&0) && g.row(0).contains(&1));
        for c in 0..4 {
            assert!(g.row(c).contains(&(c as u32)));
        }
    }

    #[test]
    fn doubling_row_zero_wraps() {
        // Center 1/16 maps to 1/8; radius 0.01 + 2/16 reaches below 0 and
        // wraps into the last cell.
        let s = unit(8);
        let g = fatten(&s, &BaseMap::doubling(), 0.01).unwrap();
        assert_eq!(g.row(0), &[0, 1, 2, 7]);
    }

    #[test]
    fn doubling_spreads_to_everything() {
        let s = unit(64);
        let g = fatten(&s, &BaseMap::doubling(), 0.01).unwrap();
        let img = g.iterate_image(&set(&s, &[17]), 10);
        assert_eq!(img.len(), 64);
    }

    #[test]
    fn cat_map_rows_nonempty() {
        let s = CellSpace::torus(4, 4).unwrap();
        let g = fatten(&s, &BaseMap::toral([[2, 1], [1, 1]]).unwrap(), 0.3).unwrap();
        assert!(g.rows().all(|r| !r.is_empty()));
        assert!(g.edge_count() >= 16);
    }

    #[test]
    fn affine_leaving_space_is_empty_image() {
        let s = unit(4);
        let m = BaseMap::new(MapKind::Affine1d { slope: 0.0, intercept: 5.0 }).unwrap();
        assert!(matches!(fatten(&s, &m, 0.1), Err(GraphError::EmptyImage { cell: 0 })));
        assert!(matches!(fatten(&s, &BaseMap::identity(), 0.0), Err(GraphError::InvalidEpsilon(_))));
    }

    #[test]
    fn power_matches_iterated_images() {
        let s = unit(3);
        let cyc = explicit_graph(&s, vec![vec![1], vec![2], vec![0]]).unwrap();
        let p3 = cyc.power(3);
        for c in 0..3 {
            assert_eq!(p3.row(c), &[c as u32]);
        }
    }
}
