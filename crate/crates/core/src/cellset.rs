use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::cellspace::{CellSpace, CellSpaceError, SpaceId};

/// A subset of the cells of one [`CellSpace`].
///
/// Binary set operations require both operands to come from the same space
/// and panic otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    bits: FixedBitSet,
    space_id: SpaceId,
}

impl CellSet {
    pub fn empty(space: &CellSpace) -> Self {
        CellSet {
            bits: FixedBitSet::with_capacity(space.len()),
            space_id: space.id(),
        }
    }

    pub fn full(space: &CellSpace) -> Self {
        let mut set = Self::empty(space);
        set.bits.insert_range(..);
        set
    }

    pub fn from_cells<I>(space: &CellSpace, cells: I) -> Result<Self, CellSpaceError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(space);
        for c in cells {
            if c >= space.len() {
                return Err(CellSpaceError::CellOutOfRange {
                    cell: c,
                    cells: space.len(),
                });
            }
            set.bits.insert(c);
        }
        Ok(set)
    }

    pub(crate) fn from_sorted_ids<I>(space: &CellSpace, cells: I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(space);
        for c in cells {
            set.bits.insert(c);
        }
        set
    }

    pub(crate) fn with_bits(bits: FixedBitSet, space_id: SpaceId) -> Self {
        CellSet { bits, space_id }
    }

    pub fn space_id(&self) -> SpaceId {
        self.space_id
    }

    /// Number of cells in the underlying space.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.bits.contains(cell)
    }

    pub fn insert(&mut self, cell: usize) {
        self.bits.insert(cell);
    }

    pub fn remove(&mut self, cell: usize) {
        self.bits.set(cell, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    fn same_space(&self, other: &CellSet) {
        assert_eq!(
            self.space_id, other.space_id,
            "cell sets belong to different spaces"
        );
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        self.same_space(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        CellSet::with_bits(bits, self.space_id)
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        self.same_space(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        CellSet::with_bits(bits, self.space_id)
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        self.same_space(other);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        CellSet::with_bits(bits, self.space_id)
    }

    pub fn complement(&self) -> CellSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        CellSet::with_bits(bits, self.space_id)
    }

    pub fn union_with(&mut self, other: &CellSet) {
        self.same_space(other);
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.same_space(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.same_space(other);
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for CellSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
