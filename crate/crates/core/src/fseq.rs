//! F-sequences and level partitions.
//!
//! An [`FSequence`] holds the level cardinalities of a graded digraph; a
//! [`LevelPartition`] turns a prefix of one into concrete vertex-id ranges.
//! Vertex ids are consecutive integers in level-major order, so the k-th
//! level occupies `offsets[k] .. offsets[k] + sizes[k]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers denominating level cardinalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct FSequence {
    values: Vec<usize>,
    name: Option<String>,
}

impl FSequence {
    /// Builds a sequence from an explicit list of level sizes.
    pub fn explicit(values: Vec<usize>) -> Result<Self> {
        Self::with_name(values, None)
    }

    /// The sequence 1, 2, 3, ... truncated to `levels` entries.
    pub fn naturals(levels: usize) -> Result<Self> {
        Self::with_name((1..=levels).collect(), Some("naturals".into()))
    }

    /// The sequence 1, 1, 2, 3, 5, 8, ... truncated to `levels` entries.
    pub fn fibonacci(levels: usize) -> Result<Self> {
        let mut values = Vec::with_capacity(levels);
        let (mut a, mut b) = (1usize, 1usize);
        for _ in 0..levels {
            values.push(a);
            let next = a
                .checked_add(b)
                .ok_or_else(|| Error::InvalidSequence("fibonacci value overflows".into()))?;
            a = b;
            b = next;
        }
        Self::with_name(values, Some("fibonacci".into()))
    }

    /// The constant sequence c, c, c, ... truncated to `levels` entries.
    pub fn constant(c: usize, levels: usize) -> Result<Self> {
        Self::with_name(vec![c; levels], Some(format!("constant({c})")))
    }

    fn with_name(values: Vec<usize>, name: Option<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("sequence must be non-empty".into()));
        }
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(Error::InvalidSequence(format!(
                "entry {pos} is zero; all entries must be positive"
            )));
        }
        Ok(FSequence { values, name })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<usize> {
        self.values.get(k).copied()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
}

impl From<FSequence> for Vec<usize> {
    fn from(f: FSequence) -> Self {
        f.values
    }
}

impl TryFrom<Vec<usize>> for FSequence {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        FSequence::explicit(values)
    }
}

/// An ordered partition of `0..total` into consecutive levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPartition {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl LevelPartition {
    /// Builds a partition directly from a list of level sizes.
    pub fn new(sizes: &[usize]) -> Result<Self> {
        let f = FSequence::explicit(sizes.to_vec())?;
        Self::from_fsequence(&f, sizes.len())
    }

    /// Takes the first `levels` entries of `f` as level sizes and computes
    /// prefix-sum offsets.
    pub fn from_fsequence(f: &FSequence, levels: usize) -> Result<Self> {
        if levels == 0 {
            return Err(Error::Range("a partition needs at least one level".into()));
        }
        if levels > f.len() {
            return Err(Error::Range(format!(
                "{levels} levels requested but the sequence has only {}",
                f.len()
            )));
        }
        let sizes: Vec<usize> = f.values()[..levels].to_vec();
        let mut offsets = Vec::with_capacity(levels);
        let mut total = 0usize;
        for &s in &sizes {
            offsets.push(total);
            total += s;
        }
        Ok(LevelPartition {
            sizes,
            offsets,
            total,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Number of levels.
    pub fn levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    /// Vertex ids of level `k`.
    pub fn vertices_of(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k] + self.sizes[k]
    }

    /// The unique level containing vertex `v`.
    pub fn level_of(&self, v: usize) -> Result<usize> {
        if v >= self.total {
            return Err(Error::Range(format!(
                "vertex {v} out of range (total {})",
                self.total
            )));
        }
        // offsets are strictly increasing, so the level is the last offset <= v
        Ok(self.offsets.partition_point(|&o| o <= v) - 1)
    }
}
