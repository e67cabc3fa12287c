//! Bit-parallel Boolean matrix algebra.
//!
//! Rows are packed into `u64` words, so the Boolean product and Warshall
//! closure run word-parallel: OR-ing one row into another touches
//! `ceil(cols/64)` words instead of `cols` entries. Unused tail bits of the
//! last word in each row are kept zero, which makes derived equality and
//! hashing entrywise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A rectangular 0/1 matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "BoolMatrixRepr", try_from = "BoolMatrixRepr")]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD_BITS);
        BoolMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-ones `rows x cols` matrix. Zero dimensions are rejected.
    pub fn ones_block(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "ones block must have positive dimensions, got {rows}x{cols}"
            )));
        }
        let mut m = Self::zeros(rows, cols);
        let tail = tail_mask(cols);
        for r in 0..rows {
            let row = m.row_words_mut(r);
            for w in row.iter_mut() {
                *w = !0;
            }
            *row.last_mut().unwrap() = tail;
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let word = self.bits[i * self.words_per_row + j / WORD_BITS];
        (word >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let word = &mut self.bits[i * self.words_per_row + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Column indices of the 1-entries of row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.row_words(i);
        words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * WORD_BITS + b)
                }
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Entrywise OR with a matrix of identical shape.
    pub fn or_assign(&mut self, other: &BoolMatrix) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "entrywise OR requires identical shapes"
        );
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    /// Entrywise implication: every 1 of `self` is a 1 of `other`.
    pub fn le(&self, other: &BoolMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Boolean product: `C[i][j] = OR_t (A[i][t] AND B[t][j])`.
    pub fn bool_product(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "product needs inner dimensions to agree: {}x{} (c) {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BoolMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let lo = i * out.words_per_row;
            for t in self.row_ones(i) {
                let src = other.row_words(t);
                for (w, &word) in src.iter().enumerate() {
                    out.bits[lo + w] |= word;
                }
            }
        }
        Ok(out)
    }

    /// k-fold Boolean product of a square matrix; power 0 is the identity.
    pub fn bool_power(&self, k: usize) -> Result<BoolMatrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "power requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let mut acc = BoolMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.bool_product(self)?;
        }
        Ok(acc)
    }

    /// Warshall closure over bit-packed rows: entry (i,j) of the result is 1
    /// iff a directed path of length >= 1 leads from i to j.
    pub fn transitive_closure(&self) -> Result<BoolMatrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "closure requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut c = self.clone();
        let mut pivot = vec![0u64; c.words_per_row];
        for k in 0..n {
            pivot.copy_from_slice(c.row_words(k));
            for i in 0..n {
                if c.get(i, k) {
                    let row = c.row_words_mut(i);
                    for (w, &p) in row.iter_mut().zip(&pivot) {
                        *w |= p;
                    }
                }
            }
        }
        Ok(c)
    }

    /// Transitive closure with the diagonal set: the zeta matrix of `self`
    /// read as a cover relation.
    pub fn reflexive_transitive_closure(&self) -> Result<BoolMatrix> {
        let mut c = self.transitive_closure()?;
        for i in 0..c.rows {
            c.set(i, i, true);
        }
        Ok(c)
    }

    /// Boolean geometric series `I v A v A^2 v ...`, accumulated until the
    /// running power vanishes. Only defined for acyclic inputs, where
    /// nilpotency terminates the series; agrees with
    /// [`reflexive_transitive_closure`](Self::reflexive_transitive_closure)
    /// there and serves as its independent cross-check.
    pub fn zeta_geometric(&self) -> Result<BoolMatrix> {
        if !self.is_dag()? {
            return Err(Error::Cyclic);
        }
        let mut zeta = BoolMatrix::identity(self.rows);
        let mut power = self.clone();
        while !power.is_zero() {
            zeta.or_assign(&power);
            power = power.bool_product(self)?;
        }
        Ok(zeta)
    }

    /// Kahn's algorithm; self-loops count as cycles.
    pub fn is_dag(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "acyclicity is defined for square matrices, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut indegree = vec![0usize; n];
        for i in 0..n {
            for j in self.row_ones(i) {
                indegree[j] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for j in self.row_ones(v) {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    queue.push(j);
                }
            }
        }
        Ok(seen == n)
    }

    /// One row per line, entries `0`/`1` separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (2 * self.cols).max(1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(' ');
                }
                out.push(if self.get(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format produced by [`to_text`](Self::to_text).
    pub fn parse_text(s: &str) -> Result<BoolMatrix> {
        let mut data: Vec<Vec<bool>> = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                match tok {
                    "0" => row.push(false),
                    "1" => row.push(true),
                    other => {
                        return Err(Error::Parse(format!(
                            "line {}: expected 0 or 1, found {other:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            data.push(row);
        }
        if data.is_empty() {
            return Err(Error::Parse("empty matrix text".into()));
        }
        let cols = data[0].len();
        if let Some(bad) = data.iter().position(|r| r.len() != cols) {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {cols}",
                bad + 1,
                data[bad].len()
            )));
        }
        Ok(BoolMatrix::from_fn(data.len(), cols, |i, j| data[i][j]))
    }
}

fn tail_mask(cols: usize) -> u64 {
    match cols % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

impl std::fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BoolMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

/// JSON form: `{"rows":r,"cols":c,"data":[[0,1,...],...]}`.
#[derive(Serialize, Deserialize)]
struct BoolMatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u8>>,
}

impl From<BoolMatrix> for BoolMatrixRepr {
    fn from(m: BoolMatrix) -> Self {
        let data = (0..m.rows)
            .map(|i| (0..m.cols).map(|j| m.get(i, j) as u8).collect())
            .collect();
        BoolMatrixRepr {
            rows: m.rows,
            cols: m.cols,
            data,
        }
    }
}

impl TryFrom<BoolMatrixRepr> for BoolMatrix {
    type Error = Error;

    fn try_from(repr: BoolMatrixRepr) -> Result<Self> {
        if repr.data.len() != repr.rows {
            return Err(Error::Parse(format!(
                "matrix declares {} rows but data has {}",
                repr.rows,
                repr.data.len()
            )));
        }
        let mut m = BoolMatrix::zeros(repr.rows, repr.cols);
        for (i, row) in repr.data.iter().enumerate() {
            if row.len() != repr.cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    repr.cols
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => {
                        return Err(Error::Parse(format!(
                            "entry ({i},{j}) is {other}, expected 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[u8]]) -> BoolMatrix {
        BoolMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j] == 1)
    }

    // entrywise OR-AND oracle for the Boolean product
    fn product_oracle(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
        BoolMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).any(|t| a.get(i, t) && b.get(t, j))
        })
    }

    // BFS reachability oracle: 1 at (i,j) iff a path of length >= 1 exists
    fn bfs_closure_oracle(a: &BoolMatrix) -> BoolMatrix {
        let n = a.rows();
        let mut out = BoolMatrix::zeros(n, n);
        for s in 0..n {
            let mut seen = vec![false; n];
            let mut queue: Vec<usize> = a.row_ones(s).collect();
            for &v in &queue {
                seen[v] = true;
            }
            while let Some(v) = queue.pop() {
                out.set(s, v, true);
                for w in a.row_ones(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn product_identity_and_examples() {
        let b = from_rows(&[&[1, 0, 1], &[0, 1, 1]]);
        let id = BoolMatrix::identity(2);
        assert_eq!(id.bool_product(&b).unwrap(), b);

        let a = from_rows(&[&[1, 1], &[0, 0]]);
        let v = from_rows(&[&[0], &[1]]);
        let got = a.bool_product(&v).unwrap();
        assert_eq!(got, from_rows(&[&[1], &[0]]));
        assert_eq!(got, product_oracle(&a, &v));

        let ones12 = BoolMatrix::ones_block(1, 2).unwrap();
        let ones23 = BoolMatrix::ones_block(2, 3).unwrap();
        let prod = ones12.bool_product(&ones23).unwrap();
        assert_eq!(prod, BoolMatrix::ones_block(1, 3).unwrap());
        assert_eq!(prod, product_oracle(&ones12, &ones23));
    }

    #[test]
    fn product_shape_error() {
        let a = BoolMatrix::zeros(2, 3);
        let b = BoolMatrix::zeros(2, 3);
        assert!(matches!(a.bool_product(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn powers() {
        let shift = from_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(shift.bool_power(0).unwrap(), BoolMatrix::identity(3));
        assert!(shift.bool_power(3).unwrap().is_zero());

        // path-counting oracle: the only length-2 path in 0->1->2 is (0,2)
        let sq = shift.bool_power(2).unwrap();
        let mut expect = BoolMatrix::zeros(3, 3);
        expect.set(0, 2, true);
        assert_eq!(sq, expect);

        assert!(matches!(
            BoolMatrix::zeros(2, 3).bool_power(2),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let zero = BoolMatrix::zeros(4, 4);
        assert!(zero.transitive_closure().unwrap().is_zero());
        assert_eq!(
            zero.reflexive_transitive_closure().unwrap(),
            BoolMatrix::identity(4)
        );

        let path = from_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let tc = path.transitive_closure().unwrap();
        assert_eq!(tc, bfs_closure_oracle(&path));
        assert_eq!(tc, from_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]));
        let rtc = path.reflexive_transitive_closure().unwrap();
        assert_eq!(rtc, from_rows(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]));

        // complete cobweb over sizes (1,2): arcs 0->1, 0->2 and nothing longer
        let cob = from_rows(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(cob.transitive_closure().unwrap(), bfs_closure_oracle(&cob));
        assert_eq!(cob.transitive_closure().unwrap(), cob);
    }

    #[test]
    fn geometric_series_matches_warshall() {
        assert_eq!(
            BoolMatrix::zeros(3, 3).zeta_geometric().unwrap(),
            BoolMatrix::identity(3)
        );
        let path = from_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(
            path.zeta_geometric().unwrap(),
            path.reflexive_transitive_closure().unwrap()
        );
        let cycle = from_rows(&[&[0, 1], &[1, 0]]);
        assert!(matches!(cycle.zeta_geometric(), Err(Error::Cyclic)));
    }

    #[test]
    fn dag_detection() {
        let upper = from_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        assert!(upper.is_dag().unwrap());
        let two_cycle = from_rows(&[&[0, 1], &[1, 0]]);
        assert!(!two_cycle.is_dag().unwrap());
        let self_loop = from_rows(&[&[1]]);
        assert!(!self_loop.is_dag().unwrap());
    }

    #[test]
    fn ones_blocks() {
        assert_eq!(
            BoolMatrix::ones_block(1, 1).unwrap(),
            from_rows(&[&[1]])
        );
        let b = BoolMatrix::ones_block(2, 3).unwrap();
        assert_eq!(b.count_ones(), 6);
        assert_eq!(
            BoolMatrix::ones_block(1, 2).unwrap(),
            from_rows(&[&[1, 1]])
        );
        assert!(matches!(BoolMatrix::ones_block(0, 2), Err(Error::Shape(_))));
    }

    #[test]
    fn wide_matrices_use_tail_mask() {
        // 70 columns spans two words; equality must ignore nothing
        let a = BoolMatrix::ones_block(2, 70).unwrap();
        let mut b = BoolMatrix::zeros(2, 70);
        for i in 0..2 {
            for j in 0..70 {
                b.set(i, j, true);
            }
        }
        assert_eq!(a, b);
        assert_eq!(a.count_ones(), 140);
        assert_eq!(a.row_ones(0).count(), 70);
    }

    #[test]
    fn text_roundtrip() {
        let m = from_rows(&[&[0, 1, 1], &[1, 0, 0]]);
        let text = m.to_text();
        assert_eq!(text, "0 1 1\n1 0 0\n");
        assert_eq!(BoolMatrix::parse_text(&text).unwrap(), m);
        assert!(BoolMatrix::parse_text("0 2\n").is_err());
        assert!(BoolMatrix::parse_text("0 1\n0\n").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let m = from_rows(&[&[0, 1], &[1, 0], &[1, 1]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"rows":3,"cols":2,"data":[[0,1],[1,0],[1,1]]}"#);
        let back: BoolMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<BoolMatrix>(
            r#"{"rows":1,"cols":2,"data":[[0,2]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<BoolMatrix>(
            r#"{"rows":2,"cols":1,"data":[[0]]}"#
        )
        .is_err());
    }
}
