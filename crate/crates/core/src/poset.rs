//! Graded digraphs and their posets.
//!
//! A [`GradedDigraph`] is a level partition plus the chain of biadjacency
//! blocks between consecutive levels — the Hasse diagram in compressed form.
//! The full adjacency matrix is materialized on demand. A [`GradedPoset`]
//! pairs a digraph with its zeta matrix, the reflexive-transitive closure of
//! the adjacency.

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::fseq::{FSequence, LevelPartition};
use crate::njoin::BipartiteBlock;

/// Hasse diagram of a graded poset: ranked levels plus one biadjacency
/// block per consecutive level pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDigraph {
    partition: LevelPartition,
    blocks: Vec<BipartiteBlock>,
}

impl GradedDigraph {
    /// Validates that `blocks[k]` has shape `sizes[k] x sizes[k+1]` and that
    /// there is one block per consecutive level pair.
    pub fn new(partition: LevelPartition, blocks: Vec<BipartiteBlock>) -> Result<Self> {
        if blocks.len() + 1 != partition.levels() {
            return Err(Error::Chain(format!(
                "{} levels need {} blocks, got {}",
                partition.levels(),
                partition.levels() - 1,
                blocks.len()
            )));
        }
        for (k, b) in blocks.iter().enumerate() {
            if b.rows() != partition.size(k) || b.cols() != partition.size(k + 1) {
                return Err(Error::Chain(format!(
                    "block {k} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    partition.size(k),
                    partition.size(k + 1)
                )));
            }
        }
        Ok(GradedDigraph { partition, blocks })
    }

    /// Builds a digraph from explicit level sizes and blocks. In strict mode
    /// the dom/ran condition is enforced: no block may have an all-zero
    /// column, and only the last block may have all-zero rows.
    pub fn from_blocks(
        sizes: &[usize],
        blocks: Vec<BipartiteBlock>,
        strict: bool,
    ) -> Result<Self> {
        let partition = LevelPartition::new(sizes)?;
        let g = Self::new(partition, blocks)?;
        if strict {
            g.check_dom_ran()?;
        }
        Ok(g)
    }

    fn check_dom_ran(&self) -> Result<()> {
        let last = self.blocks.len().saturating_sub(1);
        for (k, b) in self.blocks.iter().enumerate() {
            let m = b.matrix();
            for c in 0..m.cols() {
                if (0..m.rows()).all(|r| !m.get(r, c)) {
                    return Err(Error::DomRan(format!(
                        "vertex {} of level {} is unreachable (column {c} of block {k} is zero)",
                        self.partition.offset(k + 1) + c,
                        k + 1
                    )));
                }
            }
            if k < last {
                for r in 0..m.rows() {
                    if m.row_ones(r).next().is_none() {
                        return Err(Error::DomRan(format!(
                            "vertex {} of level {} has no upward arc (row {r} of block {k} is zero)",
                            self.partition.offset(k) + r,
                            k
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The complete graded digraph over the first `levels` entries of `f`:
    /// every block is all-ones.
    pub fn cobweb(f: &FSequence, levels: usize) -> Result<Self> {
        let partition = LevelPartition::from_fsequence(f, levels)?;
        let blocks = (0..levels.saturating_sub(1))
            .map(|k| BipartiteBlock::complete(partition.size(k), partition.size(k + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedDigraph { partition, blocks })
    }

    pub fn partition(&self) -> &LevelPartition {
        &self.partition
    }

    pub fn blocks(&self) -> &[BipartiteBlock] {
        &self.blocks
    }

    pub fn sizes(&self) -> &[usize] {
        self.partition.sizes()
    }

    pub fn levels(&self) -> usize {
        self.partition.levels()
    }

    pub fn total(&self) -> usize {
        self.partition.total()
    }

    pub fn is_complete_cobweb(&self) -> bool {
        self.blocks.iter().all(|b| b.is_complete())
    }

    /// Materializes the full adjacency matrix: block k sits at rows of level
    /// k and columns of level k+1. Always acyclic by construction.
    pub fn adjacency(&self) -> BoolMatrix {
        let n = self.total();
        let mut a = BoolMatrix::zeros(n, n);
        for (k, b) in self.blocks.iter().enumerate() {
            let r0 = self.partition.offset(k);
            let c0 = self.partition.offset(k + 1);
            for i in 0..b.rows() {
                for j in b.matrix().row_ones(i) {
                    a.set(r0 + i, c0 + j, true);
                }
            }
        }
        a
    }

    /// The cover relation matrix coincides with the adjacency matrix in this
    /// representation.
    pub fn cover_matrix(&self) -> BoolMatrix {
        self.adjacency()
    }

    /// Clears bit (i,j) of block k. Returns whether the bit was set.
    pub fn delete_arc(&mut self, k: usize, i: usize, j: usize) -> Result<bool> {
        let b = self.blocks.get(k).ok_or_else(|| {
            Error::Range(format!("block {k} out of range ({} blocks)", self.blocks.len()))
        })?;
        if i >= b.rows() || j >= b.cols() {
            return Err(Error::Range(format!(
                "bit ({i},{j}) out of range for block {k} of shape {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        let was_set = b.matrix().get(i, j);
        let mut m = b.matrix().clone();
        m.set(i, j, false);
        self.blocks[k] = BipartiteBlock::new(m)?;
        Ok(was_set)
    }
}

/// A graded digraph together with its zeta matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoset {
    digraph: GradedDigraph,
    zeta: BoolMatrix,
}

impl GradedPoset {
    pub fn new(digraph: GradedDigraph) -> Self {
        let zeta = digraph
            .adjacency()
            .reflexive_transitive_closure()
            .expect("adjacency is square");
        GradedPoset { digraph, zeta }
    }

    /// Pairs a digraph with an externally supplied zeta matrix without
    /// recomputing the closure. No validation is performed.
    pub fn from_raw(digraph: GradedDigraph, zeta: BoolMatrix) -> Self {
        GradedPoset { digraph, zeta }
    }

    pub fn digraph(&self) -> &GradedDigraph {
        &self.digraph
    }

    pub fn zeta(&self) -> &BoolMatrix {
        &self.zeta
    }

    /// Order query along the block-product route: x <= y iff x = y, or x
    /// lies some levels below y and the Boolean product of the intervening
    /// blocks has a 1 at their local coordinates. Kept independent of the
    /// stored zeta matrix so the two routes can cross-check each other.
    pub fn leq(&self, x: usize, y: usize) -> Result<bool> {
        let p = self.digraph.partition();
        let lx = p.level_of(x)?;
        let ly = p.level_of(y)?;
        if x == y {
            return Ok(true);
        }
        if lx >= ly {
            return Ok(false);
        }
        let mut product = self.digraph.blocks()[lx].matrix().clone();
        for t in lx + 1..ly {
            product = product
                .bool_product(self.digraph.blocks()[t].matrix())
                .expect("chain blocks are dimension-compatible");
        }
        Ok(product.get(x - p.offset(lx), y - p.offset(ly)))
    }
}

/// Closed-form zeta matrix for complete cobwebs: identity blocks on the
/// diagonal and all-ones blocks everywhere above the current level,
/// assembled directly without computing any closure.
pub fn zeta_closed_form(g: &GradedDigraph) -> Result<BoolMatrix> {
    if !g.is_complete_cobweb() {
        return Err(Error::Precondition(
            "the closed-form zeta matrix applies to complete cobwebs only".into(),
        ));
    }
    let p = g.partition();
    let n = p.total();
    let mut z = BoolMatrix::zeros(n, n);
    for i in 0..n {
        z.set(i, i, true);
    }
    for k in 0..p.levels() {
        for l in k + 1..p.levels() {
            for i in p.vertices_of(k) {
                for j in p.vertices_of(l) {
                    z.set(i, j, true);
                }
            }
        }
    }
    Ok(z)
}

/// Zeta staircase shape: ones on the diagonal, zeros at same-level
/// off-diagonal positions, zeros strictly below the staircase, and — for
/// complete cobwebs — ones everywhere above it.
pub fn staircase_check(poset: &GradedPoset) -> bool {
    let p = poset.digraph().partition();
    let z = poset.zeta();
    let n = p.total();
    for i in 0..n {
        let li = p.level_of(i).expect("vertex in range");
        for j in 0..n {
            let lj = p.level_of(j).expect("vertex in range");
            let entry = z.get(i, j);
            if i == j {
                if !entry {
                    return false;
                }
            } else if li == lj || li > lj {
                if entry {
                    return false;
                }
            }
        }
    }
    if poset.digraph().is_complete_cobweb() {
        for i in 0..n {
            let li = p.level_of(i).expect("vertex in range");
            for j in 0..n {
                if p.level_of(j).expect("vertex in range") > li && !z.get(i, j) {
                    return false;
                }
            }
        }
    }
    true
}

/// A 2x2 permutation submatrix found inside one biadjacency block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FerrersWitness {
    pub block: usize,
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

/// Scans each block for a 2x2 permutation submatrix. For a row pair (r1,r2)
/// such a submatrix exists iff some column has a 1 only in r1 and another a
/// 1 only in r2; both orientations are covered by the unordered pair scan.
pub fn permutation_submatrix_witness(g: &GradedDigraph) -> Option<FerrersWitness> {
    for (k, b) in g.blocks().iter().enumerate() {
        let m = b.matrix();
        for r1 in 0..m.rows() {
            for r2 in r1 + 1..m.rows() {
                let only_r1 = m.row_ones(r1).find(|&c| !m.get(r2, c));
                let only_r2 = m.row_ones(r2).find(|&c| !m.get(r1, c));
                if let (Some(c1), Some(c2)) = (only_r1, only_r2) {
                    return Some(FerrersWitness {
                        block: k,
                        rows: (r1, r2),
                        cols: (c1, c2),
                    });
                }
            }
        }
    }
    None
}

/// True iff no biadjacency block contains a 2x2 permutation submatrix.
pub fn is_ferrers_dim_one(g: &GradedDigraph) -> bool {
    permutation_submatrix_witness(g).is_none()
}

/// Integer partitions of `n` in reverse-lexicographic order, each written
/// as a weakly decreasing part list.
pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

fn covers_by_one_box(lo: &[usize], hi: &[usize]) -> bool {
    if hi.len() != lo.len() && hi.len() != lo.len() + 1 {
        return false;
    }
    let mut grown = 0;
    for (i, &h) in hi.iter().enumerate() {
        match h.checked_sub(lo.get(i).copied().unwrap_or(0)) {
            Some(0) => {}
            Some(1) => grown += 1,
            _ => return false,
        }
    }
    grown == 1
}

/// Young's lattice truncated at `max_rank`: level n lists the partitions of
/// n in reverse-lexicographic order, and a partition covers another when it
/// adds exactly one box.
pub fn young_lattice(max_rank: usize) -> GradedDigraph {
    let levels: Vec<Vec<Vec<usize>>> = (0..=max_rank).map(partitions_of).collect();
    let sizes: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    let blocks = (0..max_rank)
        .map(|n| {
            let lo = &levels[n];
            let hi = &levels[n + 1];
            let m = BoolMatrix::from_fn(lo.len(), hi.len(), |i, j| {
                covers_by_one_box(&lo[i], &hi[j])
            });
            BipartiteBlock::new(m).expect("partition counts are positive")
        })
        .collect();
    GradedDigraph::from_blocks(&sizes, blocks, false).expect("shapes are consistent")
}

/// `k` chains of length `depth` glued at a common root: sizes
/// (1, k, ..., k), first block all-ones, the rest identities.
pub fn fan(k: usize, depth: usize) -> Result<GradedDigraph> {
    if k == 0 || depth == 0 {
        return Err(Error::Range(format!(
            "fan needs k >= 1 and depth >= 1, got k={k}, depth={depth}"
        )));
    }
    let mut sizes = vec![1];
    sizes.extend(std::iter::repeat(k).take(depth));
    let mut blocks = vec![BipartiteBlock::complete(1, k)?];
    for _ in 1..depth {
        blocks.push(BipartiteBlock::new(BoolMatrix::identity(k))?);
    }
    GradedDigraph::from_blocks(&sizes, blocks, false)
}

/// Complete graded digraph on the fan's vertex set: the cobweb over sizes
/// (1, k, ..., k).
pub fn complete_graded(k: usize, depth: usize) -> Result<GradedDigraph> {
    if k == 0 || depth == 0 {
        return Err(Error::Range(format!(
            "complete graded digraph needs k >= 1 and depth >= 1, got k={k}, depth={depth}"
        )));
    }
    let mut sizes = vec![1];
    sizes.extend(std::iter::repeat(k).take(depth));
    let f = FSequence::explicit(sizes)?;
    GradedDigraph::cobweb(&f, depth + 1)
}

/// Perfect binary tree of the given depth: node i of level k points at
/// nodes 2i and 2i+1 of level k+1.
pub fn binary_tree(depth: usize) -> GradedDigraph {
    let sizes: Vec<usize> = (0..=depth)
        .map(|k| 1usize.checked_shl(k as u32).expect("tree level size overflows"))
        .collect();
    let blocks = (0..depth)
        .map(|k| {
            let m = BoolMatrix::from_fn(sizes[k], sizes[k + 1], |i, j| j / 2 == i);
            BipartiteBlock::new(m).expect("tree block dimensions are positive")
        })
        .collect();
    GradedDigraph::from_blocks(&sizes, blocks, false).expect("shapes are consistent")
}
