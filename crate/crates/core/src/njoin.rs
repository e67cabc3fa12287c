//! Natural join of bipartite digraph adjacency matrices.
//!
//! A bipartite digraph from a k-set to an m-set is carried by its k x m
//! biadjacency block `B`; embedded into a square adjacency matrix it takes
//! the form
//!
//! ```text
//! [ 0_(k,k)  B       ]
//! [ 0_(m,k)  0_(m,m) ]
//! ```
//!
//! Two embedded adjacencies with splits (k,m) and (m,s) can be composed
//! (`cjoin`, Boolean product of the blocks, projecting out the shared m-set)
//! or naturally joined (`njoin`, the three-band matrix keeping one copy of
//! the shared set). Chains of joins fold into a graded digraph.

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::fseq::LevelPartition;
use crate::poset::GradedDigraph;

/// Biadjacency block of a bipartite digraph; both sides must be non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteBlock {
    matrix: BoolMatrix,
}

impl BipartiteBlock {
    pub fn new(matrix: BoolMatrix) -> Result<Self> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::Shape(format!(
                "bipartite block must have positive dimensions, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(BipartiteBlock { matrix })
    }

    /// All-ones block: the di-biclique from a `rows`-set to a `cols`-set.
    pub fn complete(rows: usize, cols: usize) -> Result<Self> {
        Ok(BipartiteBlock {
            matrix: BoolMatrix::ones_block(rows, cols)?,
        })
    }

    pub fn matrix(&self) -> &BoolMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_complete(&self) -> bool {
        self.matrix.count_ones() == self.rows() * self.cols()
    }

    pub fn into_matrix(self) -> BoolMatrix {
        self.matrix
    }
}

/// A square adjacency matrix together with the (k,m) split it claims to
/// embed. The block form itself is not enforced at construction so that the
/// join condition can be asked about arbitrary candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedAdjacency {
    matrix: BoolMatrix,
    split: (usize, usize),
}

impl EmbeddedAdjacency {
    pub fn from_parts(matrix: BoolMatrix, split: (usize, usize)) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != split.0 + split.1 {
            return Err(Error::Shape(format!(
                "matrix {}x{} cannot carry split ({},{})",
                matrix.rows(),
                matrix.cols(),
                split.0,
                split.1
            )));
        }
        Ok(EmbeddedAdjacency { matrix, split })
    }

    pub fn matrix(&self) -> &BoolMatrix {
        &self.matrix
    }

    pub fn split(&self) -> (usize, usize) {
        self.split
    }

    /// True iff only the upper-right k x m block may contain ones.
    pub fn is_block_form(&self) -> bool {
        let (k, _) = self.split;
        let n = self.matrix.rows();
        for i in 0..n {
            for j in self.matrix.row_ones(i) {
                if i >= k || j < k {
                    return false;
                }
            }
        }
        true
    }

    /// Extracts the upper-right k x m block.
    pub fn block(&self) -> BoolMatrix {
        let (k, m) = self.split;
        BoolMatrix::from_fn(k, m, |i, j| self.matrix.get(i, k + j))
    }
}

/// Embeds a biadjacency block into its (k+m) x (k+m) adjacency matrix.
pub fn embed_bipartite(b: &BipartiteBlock) -> EmbeddedAdjacency {
    let (k, m) = (b.rows(), b.cols());
    let mut matrix = BoolMatrix::zeros(k + m, k + m);
    for i in 0..k {
        for j in b.matrix().row_ones(i) {
            matrix.set(i, k + j, true);
        }
    }
    EmbeddedAdjacency { matrix, split: (k, m) }
}

/// The natural join condition: both operands have the bipartite block form
/// and the right operand's domain is the left operand's codomain.
pub fn satisfies_njoin_condition(a1: &EmbeddedAdjacency, a2: &EmbeddedAdjacency) -> bool {
    a1.split.1 == a2.split.0 && a1.is_block_form() && a2.is_block_form()
}

fn require_njoin_condition(a1: &EmbeddedAdjacency, a2: &EmbeddedAdjacency) -> Result<()> {
    if !satisfies_njoin_condition(a1, a2) {
        return Err(Error::JoinCondition(format!(
            "splits ({},{}) and ({},{}) do not join{}",
            a1.split.0,
            a1.split.1,
            a2.split.0,
            a2.split.1,
            if a1.is_block_form() && a2.is_block_form() {
                ""
            } else {
                " (operand violates the bipartite block form)"
            }
        )));
    }
    Ok(())
}

/// Natural join composition: the (k+s)-square embedding of the Boolean
/// block product `B1 (c) B2`, projecting out the shared middle set.
pub fn cjoin(a1: &EmbeddedAdjacency, a2: &EmbeddedAdjacency) -> Result<EmbeddedAdjacency> {
    require_njoin_condition(a1, a2)?;
    let composed = a1.block().bool_product(&a2.block())?;
    Ok(embed_bipartite(&BipartiteBlock::new(composed)?))
}

/// Natural join: the (k+m+s)-square three-band matrix with `B1` bridging
/// the first two vertex sets and `B2` the last two.
pub fn njoin(a1: &EmbeddedAdjacency, a2: &EmbeddedAdjacency) -> Result<BoolMatrix> {
    require_njoin_condition(a1, a2)?;
    let (k, m) = a1.split;
    let s = a2.split.1;
    let b1 = a1.block();
    let b2 = a2.block();
    let mut out = BoolMatrix::zeros(k + m + s, k + m + s);
    for i in 0..k {
        for j in b1.row_ones(i) {
            out.set(i, k + j, true);
        }
    }
    for i in 0..m {
        for j in b2.row_ones(i) {
            out.set(k + i, k + m + j, true);
        }
    }
    Ok(out)
}

/// Folds a compatible block list into the graded digraph it denominates.
/// Level sizes are read off the block shapes.
pub fn njoin_chain(blocks: Vec<BipartiteBlock>) -> Result<GradedDigraph> {
    if blocks.is_empty() {
        return Err(Error::Chain("a chain needs at least one block".into()));
    }
    for (k, pair) in blocks.windows(2).enumerate() {
        if pair[0].cols() != pair[1].rows() {
            return Err(Error::Chain(format!(
                "block {k} has {} columns but block {} has {} rows",
                pair[0].cols(),
                k + 1,
                pair[1].rows()
            )));
        }
    }
    let mut sizes: Vec<usize> = vec![blocks[0].rows()];
    sizes.extend(blocks.iter().map(|b| b.cols()));
    GradedDigraph::from_blocks(&sizes, blocks, false)
}

/// Splits a graded adjacency matrix back into its biadjacency blocks.
/// Every 1 must sit in a super-diagonal level block.
pub fn biadjacency_of(a: &BoolMatrix, p: &LevelPartition) -> Result<Vec<BipartiteBlock>> {
    if !a.is_square() || a.rows() != p.total() {
        return Err(Error::Shape(format!(
            "matrix {}x{} does not match partition total {}",
            a.rows(),
            a.cols(),
            p.total()
        )));
    }
    for i in 0..a.rows() {
        let li = p.level_of(i)?;
        for j in a.row_ones(i) {
            let lj = p.level_of(j)?;
            if lj != li + 1 {
                return Err(Error::NotGraded(format!(
                    "arc ({i},{j}) runs from level {li} to level {lj}"
                )));
            }
        }
    }
    (0..p.levels().saturating_sub(1))
        .map(|k| {
            let rows = p.vertices_of(k);
            let cols = p.vertices_of(k + 1);
            let block = BoolMatrix::from_fn(p.size(k), p.size(k + 1), |i, j| {
                a.get(rows.start + i, cols.start + j)
            });
            BipartiteBlock::new(block)
        })
        .collect()
}

/// Block-diagonal direct sum `diag(B_1, ..., B_n)`.
pub fn direct_sum(blocks: &[BipartiteBlock]) -> Result<BoolMatrix> {
    if blocks.is_empty() {
        return Err(Error::Shape("direct sum of an empty block list".into()));
    }
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut out = BoolMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in b.matrix().row_ones(i) {
                out.set(r0 + i, c0 + j, true);
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[u8]]) -> BoolMatrix {
        BoolMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j] == 1)
    }

    fn block(rows: &[&[u8]]) -> BipartiteBlock {
        BipartiteBlock::new(from_rows(rows)).unwrap()
    }

    #[test]
    fn embedding_places_the_block() {
        let e = embed_bipartite(&block(&[&[1]]));
        assert_eq!(e.matrix(), &from_rows(&[&[0, 1], &[0, 0]]));
        assert_eq!(e.split(), (1, 1));

        let e = embed_bipartite(&BipartiteBlock::complete(1, 2).unwrap());
        assert_eq!(
            e.matrix(),
            &from_rows(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]])
        );

        let e = embed_bipartite(&block(&[&[1, 0], &[0, 1]]));
        let mut expect = BoolMatrix::zeros(4, 4);
        expect.set(0, 2, true);
        expect.set(1, 3, true);
        assert_eq!(e.matrix(), &expect);
        assert!(e.is_block_form());
        assert_eq!(e.block(), from_rows(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn join_condition() {
        let a1 = embed_bipartite(&BipartiteBlock::complete(1, 2).unwrap());
        let a2 = embed_bipartite(&BipartiteBlock::complete(2, 3).unwrap());
        let a3 = embed_bipartite(&BipartiteBlock::complete(3, 4).unwrap());
        assert!(satisfies_njoin_condition(&a1, &a2));
        assert!(!satisfies_njoin_condition(&a1, &a3));

        // a 1 in the lower-left block violates the form
        let mut bad = from_rows(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]]);
        bad.set(2, 0, true);
        let bad = EmbeddedAdjacency::from_parts(bad, (1, 2)).unwrap();
        assert!(!bad.is_block_form());
        assert!(!satisfies_njoin_condition(&a1, &bad));
    }

    // brute-force relation composition over all pairs
    fn compose_oracle(b1: &BoolMatrix, b2: &BoolMatrix) -> BoolMatrix {
        BoolMatrix::from_fn(b1.rows(), b2.cols(), |a, c| {
            (0..b1.cols()).any(|b| b1.get(a, b) && b2.get(b, c))
        })
    }

    #[test]
    fn cjoin_composes_blocks() {
        let a1 = embed_bipartite(&BipartiteBlock::complete(1, 2).unwrap());
        let a2 = embed_bipartite(&BipartiteBlock::complete(2, 3).unwrap());
        let joined = cjoin(&a1, &a2).unwrap();
        assert_eq!(joined.split(), (1, 3));
        assert_eq!(joined.block(), BoolMatrix::ones_block(1, 3).unwrap());
        assert_eq!(joined.block(), compose_oracle(&a1.block(), &a2.block()));

        let b1 = embed_bipartite(&block(&[&[1, 0]]));
        let b2 = embed_bipartite(&block(&[&[0], &[1]]));
        let joined = cjoin(&b1, &b2).unwrap();
        assert_eq!(joined.block(), from_rows(&[&[0]]));
        assert_eq!(joined.block(), compose_oracle(&b1.block(), &b2.block()));

        // identity relation on the middle set is neutral
        let any = embed_bipartite(&block(&[&[1, 0, 1], &[0, 1, 0]]));
        let id = embed_bipartite(&BipartiteBlock::new(BoolMatrix::identity(3)).unwrap());
        assert_eq!(cjoin(&any, &id).unwrap().block(), any.block());

        let a3 = embed_bipartite(&BipartiteBlock::complete(3, 4).unwrap());
        assert!(matches!(cjoin(&a1, &a3), Err(Error::JoinCondition(_))));
    }

    #[test]
    fn njoin_builds_three_bands() {
        let a1 = embed_bipartite(&BipartiteBlock::complete(1, 2).unwrap());
        let a2 = embed_bipartite(&BipartiteBlock::complete(2, 3).unwrap());
        let joined = njoin(&a1, &a2).unwrap();
        assert_eq!(joined.rows(), 6);
        let expect = from_rows(&[
            &[0, 1, 1, 0, 0, 0],
            &[0, 0, 0, 1, 1, 1],
            &[0, 0, 0, 1, 1, 1],
            &[0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0],
        ]);
        assert_eq!(joined, expect);

        let chain = njoin(
            &embed_bipartite(&block(&[&[1]])),
            &embed_bipartite(&block(&[&[1]])),
        )
        .unwrap();
        assert_eq!(chain, from_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]));

        let a3 = embed_bipartite(&BipartiteBlock::complete(3, 4).unwrap());
        assert!(matches!(njoin(&a1, &a3), Err(Error::JoinCondition(_))));
    }

    #[test]
    fn chain_folding() {
        let blocks = vec![
            BipartiteBlock::complete(1, 2).unwrap(),
            BipartiteBlock::complete(2, 3).unwrap(),
            BipartiteBlock::complete(3, 4).unwrap(),
        ];
        let g = njoin_chain(blocks).unwrap();
        assert_eq!(g.partition().total(), 10);
        assert_eq!(g.partition().sizes(), &[1, 2, 3, 4]);

        let single = njoin_chain(vec![block(&[&[1, 1]])]).unwrap();
        assert_eq!(
            single.adjacency(),
            embed_bipartite(&block(&[&[1, 1]])).matrix().clone()
        );

        let path = njoin_chain(vec![
            block(&[&[1]]),
            block(&[&[1]]),
            block(&[&[1]]),
        ])
        .unwrap();
        assert_eq!(path.partition().total(), 4);

        let bad = njoin_chain(vec![
            BipartiteBlock::complete(1, 2).unwrap(),
            BipartiteBlock::complete(3, 4).unwrap(),
        ]);
        assert!(matches!(bad, Err(Error::Chain(_))));
        assert!(matches!(njoin_chain(vec![]), Err(Error::Chain(_))));
    }

    #[test]
    fn biadjacency_extraction() {
        let g = njoin_chain(vec![
            BipartiteBlock::complete(1, 2).unwrap(),
            BipartiteBlock::complete(2, 3).unwrap(),
        ])
        .unwrap();
        let blocks = biadjacency_of(&g.adjacency(), g.partition()).unwrap();
        assert_eq!(blocks, g.blocks());

        let p = LevelPartition::new(&[2, 2]).unwrap();
        let blocks = biadjacency_of(&BoolMatrix::zeros(4, 4), &p).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].matrix().is_zero());

        let p = LevelPartition::new(&[1, 1, 1]).unwrap();
        let chain = from_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let blocks = biadjacency_of(&chain, &p).unwrap();
        assert_eq!(blocks, vec![block(&[&[1]]), block(&[&[1]])]);

        // an arc skipping a level is not part of any cover block
        let mut skip = BoolMatrix::zeros(3, 3);
        skip.set(0, 2, true);
        assert!(matches!(
            biadjacency_of(&skip, &p),
            Err(Error::NotGraded(_))
        ));
    }

    #[test]
    fn direct_sums() {
        let out = direct_sum(&[
            BipartiteBlock::complete(1, 2).unwrap(),
            BipartiteBlock::complete(2, 3).unwrap(),
        ])
        .unwrap();
        // block-placement oracle
        let expect = BoolMatrix::from_fn(3, 5, |i, j| {
            (i < 1 && j < 2) || ((1..3).contains(&i) && (2..5).contains(&j))
        });
        assert_eq!(out, expect);

        let single = block(&[&[1, 0], &[1, 1]]);
        assert_eq!(direct_sum(&[single.clone()]).unwrap(), *single.matrix());

        assert_eq!(
            direct_sum(&[block(&[&[1]]), block(&[&[1]])]).unwrap(),
            BoolMatrix::identity(2)
        );
        assert!(matches!(direct_sum(&[]), Err(Error::Shape(_))));
    }
}
