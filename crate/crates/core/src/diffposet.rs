//! Up/down operators on the free module over poset vertices, and the
//! commutator checks built from them.
//!
//! `D` sends a vertex to the sum of the elements it covers, `U` to the sum
//! of the elements covering it; in the vertex basis `D` is the cover
//! adjacency matrix and `U` its transpose. All arithmetic is exact — any
//! discrepancy reported here is a nonzero rational, never a tolerance
//! question. Identities are checked only on vertices whose neighborhoods
//! stay inside the truncation: top-level columns are excluded rather than
//! zero-padded.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::fseq::FSequence;
use crate::poset::GradedDigraph;
use crate::{Rational, RationalMatrix};

fn rat(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rat_diff(a: usize, b: usize) -> Rational {
    Rational::from_integer(BigInt::from(a) - BigInt::from(b))
}

/// "p/q" rendering used by the JSON report format.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ser_rat<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

fn ser_opt_rat<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&rational_string(r)),
        None => s.serialize_none(),
    }
}

/// Lifts a Boolean matrix to an exact-rational one.
pub fn rational_matrix(m: &BoolMatrix) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in m.row_ones(i) {
            out.set(i, j, Rational::one());
        }
    }
    out
}

/// Down operator: entry (w,x) is 1 iff w is covered by x. Bottom-level
/// columns are zero.
pub fn down_operator(g: &GradedDigraph) -> RationalMatrix {
    rational_matrix(&g.adjacency())
}

/// Up operator: entry (y,x) is 1 iff x is covered by y. Top-level columns
/// are zero.
pub fn up_operator(g: &GradedDigraph) -> RationalMatrix {
    rational_matrix(&g.adjacency().transpose())
}

/// The exact commutator DU - UD.
pub fn commutator(g: &GradedDigraph) -> RationalMatrix {
    let d = down_operator(g);
    let u = up_operator(g);
    &d.matmul(&u) - &u.matmul(&d)
}

/// Diagonal operator with eigenvalue `F_{n+1} - F_n` on every vertex of
/// level n. The top level of the truncation has no successor entry and is
/// left at zero; identity checks exclude it anyway.
pub fn delta_f(g: &GradedDigraph, f: &FSequence) -> Result<RationalMatrix> {
    let levels = g.levels();
    if f.len() < levels {
        return Err(Error::Range(format!(
            "delta needs at least {levels} sequence entries, got {}",
            f.len()
        )));
    }
    let p = g.partition();
    let mut m = RationalMatrix::zeros(p.total(), p.total());
    for n in 0..levels.saturating_sub(1) {
        let d = rat_diff(f.values()[n + 1], f.values()[n]);
        for v in p.vertices_of(n) {
            m.set(v, v, d.clone());
        }
    }
    Ok(m)
}

/// An entry where the commutator differs from its expected value.
#[derive(Debug, Clone, Serialize)]
pub struct EntryCounterexample {
    pub row: usize,
    pub col: usize,
    #[serde(serialize_with = "ser_rat")]
    pub got: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub expected: Rational,
}

/// Per-level behavior of the commutator, both columnwise and on the
/// level-sum vector `s_n` (the sum of the level's basis vectors).
#[derive(Debug, Clone, Serialize)]
pub struct LevelSummary {
    pub level: usize,
    pub holds: bool,
    #[serde(serialize_with = "ser_rat")]
    pub max_abs_discrepancy: Rational,
    /// `Some(lambda)` iff the commutator maps `s_n` to `lambda * s_n`.
    #[serde(serialize_with = "ser_opt_rat")]
    pub level_sum_eigenvalue: Option<Rational>,
    #[serde(serialize_with = "ser_rat")]
    pub expected_eigenvalue: Rational,
    pub level_sum_matches: bool,
}

/// Result of comparing DU - UD against a prescribed diagonal action.
#[derive(Debug, Clone, Serialize)]
pub struct GhwReport {
    pub check: String,
    #[serde(rename = "holds")]
    pub holds_elementwise: bool,
    pub first_counterexample: Option<EntryCounterexample>,
    pub per_level: Vec<LevelSummary>,
    /// The measured scalar if the commutator acts as `r * I` on all checked
    /// columns, whatever was expected.
    #[serde(serialize_with = "ser_opt_rat")]
    pub r_if_uniform: Option<Rational>,
    #[serde(serialize_with = "ser_rat")]
    pub max_abs_discrepancy: Rational,
    /// The computed DU - UD, for downstream cross-checks.
    #[serde(skip)]
    pub commutator: RationalMatrix,
}

fn commutator_report(
    g: &GradedDigraph,
    check: &str,
    expected_of_level: impl Fn(usize) -> Rational,
) -> GhwReport {
    let p = g.partition();
    let total = p.total();
    let levels = p.levels();
    let c = commutator(g);

    let mut holds = true;
    let mut first: Option<EntryCounterexample> = None;
    let mut max_abs = Rational::zero();
    let mut uniform_ok = true;
    let mut uniform_value: Option<Rational> = None;
    let mut per_level = Vec::new();

    for n in 0..levels.saturating_sub(1) {
        let expected = expected_of_level(n);
        let mut level_holds = true;
        let mut level_max = Rational::zero();
        for x in p.vertices_of(n) {
            for w in 0..total {
                let got = c.get(w, x);
                let want = if w == x {
                    expected.clone()
                } else {
                    Rational::zero()
                };
                if *got != want {
                    level_holds = false;
                    holds = false;
                    let d = (got.clone() - want.clone()).abs();
                    if d > level_max {
                        level_max = d.clone();
                    }
                    if d > max_abs {
                        max_abs = d;
                    }
                    if first.is_none() {
                        first = Some(EntryCounterexample {
                            row: w,
                            col: x,
                            got: got.clone(),
                            expected: want,
                        });
                    }
                }
                if w != x && !got.is_zero() {
                    uniform_ok = false;
                }
            }
            let diag = c.get(x, x);
            match &uniform_value {
                None => uniform_value = Some(diag.clone()),
                Some(v) if v != diag => uniform_ok = false,
                _ => {}
            }
        }

        // action on the level-sum vector s_n
        let image: Vec<Rational> = (0..total)
            .map(|w| {
                p.vertices_of(n)
                    .map(|x| c.get(w, x).clone())
                    .fold(Rational::zero(), |acc, v| acc + v)
            })
            .collect();
        let inside = p.vertices_of(n);
        let lambda = image[inside.start].clone();
        let is_eigen = (0..total).all(|w| {
            if inside.contains(&w) {
                image[w] == lambda
            } else {
                image[w].is_zero()
            }
        });
        let eigenvalue = is_eigen.then(|| lambda);
        let level_sum_matches = eigenvalue.as_ref() == Some(&expected);
        per_level.push(LevelSummary {
            level: n,
            holds: level_holds,
            max_abs_discrepancy: level_max,
            level_sum_eigenvalue: eigenvalue,
            expected_eigenvalue: expected,
            level_sum_matches,
        });
    }

    let r_if_uniform = if uniform_ok { uniform_value } else { None };
    GhwReport {
        check: check.to_string(),
        holds_elementwise: holds,
        first_counterexample: first,
        per_level,
        r_if_uniform,
        max_abs_discrepancy: max_abs,
        commutator: c,
    }
}

/// Checks DU - UD = r*I on all non-top levels.
pub fn is_r_differential(g: &GradedDigraph, r: &Rational) -> GhwReport {
    commutator_report(g, "ghw", |_| r.clone())
}

/// Checks DU - UD against the diagonal operator `delta_F` on all non-top
/// levels. The sequence must agree with the digraph's level sizes.
pub fn check_delta_relation(g: &GradedDigraph, f: &FSequence) -> Result<GhwReport> {
    let sizes = g.sizes();
    if f.len() < sizes.len() || &f.values()[..sizes.len()] != sizes {
        return Err(Error::Precondition(
            "sequence does not match the digraph's level sizes".into(),
        ));
    }
    let deltas: Vec<Rational> = (0..sizes.len().saturating_sub(1))
        .map(|n| rat_diff(f.values()[n + 1], f.values()[n]))
        .collect();
    Ok(commutator_report(g, "delta", |n| deltas[n].clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerStatus {
    Holds,
    Fails,
    /// The base commutator relation already fails, so the inductive identity
    /// is not expected; both sides are still reported.
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerEntry {
    pub n: usize,
    /// Column levels on which every operator factor stays inside the
    /// truncation: level m is admissible iff m + n < levels.
    pub admissible_levels: Vec<usize>,
    pub base_holds: bool,
    pub sides_equal: bool,
    pub status: PowerStatus,
    #[serde(serialize_with = "ser_rat")]
    pub max_abs_discrepancy: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerCounterexample {
    pub n: usize,
    pub row: usize,
    pub col: usize,
    #[serde(serialize_with = "ser_rat")]
    pub got: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub expected: Rational,
}

#lderive (no)
