//! Dynamic programs over acyclic labeled graphs.
//!
//! Both tables are indexed by topological rank. `DpTable2[i][j]` holds the
//! LCS length of the path strings ending at the `i`-th vertex of `g1` and the
//! `j`-th vertex of `g2`; row and column `0` form the empty layer.
//! `DpTable3[i][j][k]` holds, for `k ≥ 1`, the length of a longest common
//! subsequence of those path strings that contains the label of some
//! left-maximal path of `g3` ending at its `k`-th vertex, and layer `k = 0`
//! repeats the unconstrained values.

use crate::error::{GraphError, Result};
use crate::ext_len::ExtLen;
use crate::graph::{sink_vertices, topo_sort, AtomicGraph};

/// Graph re-indexed so that vertex `r` is the `r`-th in topological order.
#[derive(Debug, Clone)]
pub(crate) struct RankedDag {
    pub labels: Vec<char>,
    pub preds: Vec<Vec<usize>>,
    pub sinks: Vec<usize>,
}

impl RankedDag {
    pub fn new(g: &AtomicGraph) -> Result<Self> {
        let order = topo_sort(g)?;
        let labels = order.order().iter().map(|&v| g.label(v)).collect();
        let preds = order
            .order()
            .iter()
            .map(|&v| {
                let mut p: Vec<usize> = g.in_edges(v).iter().map(|&u| order.rank(u)).collect();
                p.sort_unstable();
                p
            })
            .collect();
        let mut sinks: Vec<usize> = sink_vertices(g).into_iter().map(|v| order.rank(v)).collect();
        sinks.sort_unstable();
        Ok(RankedDag { labels, preds, sinks })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }
}

/// Dense `(|V1|+1) × (|V2|+1)` LCS table; index `0` is the empty layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable2 {
    rows: usize,
    cols: usize,
    values: Vec<u64>,
}

impl DpTable2 {
    /// Value for the 1-based ranks `i`, `j` (either may be `0`).
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.values[i * self.cols + j]
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn max(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    fn compute(g1: &RankedDag, g2: &RankedDag) -> Self {
        let (rows, cols) = (g1.len() + 1, g2.len() + 1);
        let mut t = DpTable2 {
            rows,
            cols,
            values: vec![0; rows * cols],
        };
        for i in 1..rows {
            for j in 1..cols {
                let (p1, p2) = (&g1.preds[i - 1], &g2.preds[j - 1]);
                let v = if g1.labels[i - 1] == g2.labels[j - 1] {
                    let mut best = 0;
                    for &x in p1 {
                        for &y in p2 {
                            best = best.max(t.get(x + 1, y + 1));
                        }
                    }
                    best + 1
                } else {
                    let from1 = p1.iter().map(|&x| t.get(x + 1, j));
                    let from2 = p2.iter().map(|&y| t.get(i, y + 1));
                    from1.chain(from2).max().unwrap_or(0)
                };
                t.values[i * cols + j] = v;
            }
        }
        t
    }
}

/// Dense `|V1| × |V2| × (|V3|+1)` table of [`ExtLen`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable3 {
    dims: (usize, usize, usize),
    values: Vec<ExtLen>,
}

impl DpTable3 {
    pub(crate) fn filled(n1: usize, n2: usize, n3: usize) -> Self {
        DpTable3 {
            dims: (n1, n2, n3 + 1),
            values: vec![ExtLen::NegInf; n1 * n2 * (n3 + 1)],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + k
    }

    /// `i`, `j` are zero-based ranks; `k` is the 1-based rank in `g3`, or `0`
    /// for the unconstrained layer.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> ExtLen {
        self.values[self.idx(i, j, k)]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, k: usize, v: ExtLen) {
        let at = self.idx(i, j, k);
        self.values[at] = v;
    }

    /// `(|V1|, |V2|, |V3| + 1)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    /// Number of cells held in memory.
    pub fn allocated_cells(&self) -> usize {
        self.values.capacity()
    }

    pub fn cell_bytes() -> usize {
        std::mem::size_of::<ExtLen>()
    }
}

/// LCS length of two acyclic labeled graphs.
pub fn lcs_dag(g1: &AtomicGraph, g2: &AtomicGraph) -> Result<u64> {
    let (r1, r2) = (RankedDag::new(g1)?, RankedDag::new(g2)?);
    Ok(DpTable2::compute(&r1, &r2).max())
}

/// LCS table of two acyclic labeled graphs.
pub fn lcs_dag_table(g1: &AtomicGraph, g2: &AtomicGraph) -> Result<DpTable2> {
    let (r1, r2) = (RankedDag::new(g1)?, RankedDag::new(g2)?);
    Ok(DpTable2::compute(&r1, &r2))
}

/// Whether the "start a new match from nothing" bonus is granted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gamma {
    Standard,
    #[cfg_attr(not(test), allow(dead_code))]
    Disabled,
}

/// Filled tables for one SEQ-IC-LCS instance over three acyclic graphs.
#[derive(Debug, Clone)]
pub struct SeqIcDag {
    g1: RankedDag,
    g2: RankedDag,
    g3: RankedDag,
    lcs: DpTable2,
    table: DpTable3,
}

impl SeqIcDag {
    pub fn compute(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph) -> Result<Self> {
        Self::compute_with(g1, g2, g3, Gamma::Standard)
    }

    fn compute_with(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph, gamma: Gamma) -> Result<Self> {
        if g1.is_empty() || g2.is_empty() || g3.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let (g1, g2, g3) = (RankedDag::new(g1)?, RankedDag::new(g2)?, RankedDag::new(g3)?);
        let lcs = DpTable2::compute(&g1, &g2);
        let (n1, n2, n3) = (g1.len(), g2.len(), g3.len());
        let mut d = DpTable3::filled(n1, n2, n3);

        for i in 0..n1 {
            for j in 0..n2 {
                d.set(i, j, 0, ExtLen::Finite(lcs.get(i + 1, j + 1)));
            }
        }

        for i in 0..n1 {
            let (a, p1) = (g1.labels[i], &g1.preds[i]);
            for j in 0..n2 {
                let (b, p2) = (g2.labels[j], &g2.preds[j]);
                for k in 1..=n3 {
                    let (c, p3) = (g3.labels[k - 1], &g3.preds[k - 1]);
                    let v = if a == b && b == c {
                        let starts_here = (p1.is_empty() || p2.is_empty()) && p3.is_empty();
                        let mut best = match (gamma, starts_here) {
                            (Gamma::Standard, true) => ExtLen::ZERO,
                            _ => ExtLen::NegInf,
                        };
                        for &x in p1 {
                            for &y in p2 {
                                if p3.is_empty() {
                                    best = best.max(d.get(x, y, 0));
                                } else {
                                    for &z in p3 {
                                        best = best.max(d.get(x, y, z + 1));
                                    }
                                }
                            }
                        }
                        best + ExtLen::ONE
                    } else if a == b {
                        let mut best = ExtLen::NegInf;
                        for &x in p1 {
                            for &y in p2 {
                                best = best.max(d.get(x, y, k) + ExtLen::ONE);
                            }
                        }
                        best
                    } else {
                        let from1 = p1.iter().map(|&x| d.get(x, j, k));
                        let from2 = p2.iter().map(|&y| d.get(i, y, k));
                        from1.chain(from2).fold(ExtLen::NegInf, ExtLen::max)
                    };
                    d.set(i, j, k, v);
                }
            }
        }

        Ok(SeqIcDag {
            g1,
            g2,
            g3,
            lcs,
            table: d,
        })
    }

    pub fn table(&self) -> &DpTable3 {
        &self.table
    }

    pub fn lcs_table(&self) -> &DpTable2 {
        &self.lcs
    }

    /// First maximal cell over sinks of `g3`, scanning `(i, j, k)` ascending.
    fn best_cell(&self) -> (ExtLen, Option<(usize, usize, usize)>) {
        let mut best = (ExtLen::NegInf, None);
        for i in 0..self.g1.len() {
            for j in 0..self.g2.len() {
                for &s in &self.g3.sinks {
                    let v = self.table.get(i, j, s + 1);
                    if v > best.0 {
                        best = (v, Some((i, j, s + 1)));
                    }
                }
            }
        }
        best
    }

    pub fn length(&self) -> ExtLen {
        self.best_cell().0
    }

    /// A string attaining [`Self::length`], or `None` when there is none.
    pub fn witness(&self) -> Option<String> {
        let (_, cell) = self.best_cell();
        let (mut i, mut j, mut k) = cell?;
        let mut out = Vec::new();
        let d = &self.table;

        loop {
            let here = d.get(i, j, k);
            if here == ExtLen::ZERO {
                break;
            }
            let (a, b) = (self.g1.labels[i], self.g2.labels[j]);
            let (p1, p2) = (&self.g1.preds[i], &self.g2.preds[j]);
            if a == b {
                out.push(a);
                let need = here.finite().expect("traceback visits finite cells") - 1;
                if need == 0 {
                    break;
                }
                let need = ExtLen::Finite(need);
                let layers: Vec<usize> = if k == 0 {
                    vec![0]
                } else if self.g3.labels[k - 1] == a {
                    let p3 = &self.g3.preds[k - 1];
                    if p3.is_empty() {
                        vec![0]
                    } else {
                        p3.iter().map(|z| z + 1).collect()
                    }
                } else {
                    vec![k]
                };
                let next = p1
                    .iter()
                    .flat_map(|&x| p2.iter().map(move |&y| (x, y)))
                    .flat_map(|(x, y)| layers.iter().map(move |&z| (x, y, z)))
                    .find(|&(x, y, z)| d.get(x, y, z) == need)
                    .expect("some predecessor attains the cell value");
                (i, j, k) = next;
            } else {
                if let Some(&x) = p1.iter().find(|&&x| d.get(x, j, k) == here) {
                    i = x;
                } else {
                    j = *p2
                        .iter()
                        .find(|&&y| d.get(i, y, k) == here)
                        .expect("some predecessor attains the cell value");
                }
            }
        }

        out.reverse();
        Some(out.into_iter().collect())
    }
}

/// SEQ-IC-LCS length of three acyclic graphs. [`ExtLen::NegInf`] means no
/// common subsequence of `g1` and `g2` contains a maximal-path label of `g3`.
pub fn seq_ic_lcs_dag(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph) -> Result<ExtLen> {
    Ok(SeqIcDag::compute(g1, g2, g3)?.length())
}

pub fn seq_ic_lcs_dag_witness(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph) -> Result<Option<String>> {
    Ok(SeqIcDag::compute(g1, g2, g3)?.witness())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{lcs_strings, seq_ic_lcs_strings};
    use proptest::prelude::*;

    fn p(s: &str) -> AtomicGraph {
        AtomicGraph::path(s)
    }

    #[test]
    fn lcs_of_paths() {
        assert_eq!(lcs_dag(&p("ab"), &p("ba")).unwrap(), 1);
        assert_eq!(lcs_dag(&p("abc"), &p("abc")).unwrap(), 3);
    }

    #[test]
    fn lcs_rejects_cycles() {
        let looped = AtomicGraph::new(vec!['a'], &[(0, 0)]).unwrap();
        assert_eq!(lcs_dag(&looped, &p("a")), Err(GraphError::CyclicGraph));
    }

    #[test]
    fn single_vertices() {
        let a = p("a");
        assert_eq!(seq_ic_lcs_dag(&a, &a, &a).unwrap(), ExtLen::Finite(1));
        assert_eq!(seq_ic_lcs_dag_witness(&a, &a, &a).unwrap().as_deref(), Some("a"));
    }

    #[test]
    fn unmatched_constraint() {
        let g = p("abcd");
        assert_eq!(seq_ic_lcs_dag(&g, &g, &p("z")).unwrap(), ExtLen::NegInf);
        assert_eq!(seq_ic_lcs_dag_witness(&g, &g, &p("z")).unwrap(), None);
    }

    #[test]
    fn full_match_witness() {
        let g = p("ab");
        assert_eq!(seq_ic_lcs_dag_witness(&g, &g, &g).unwrap().as_deref(), Some("ab"));
    }

    #[test]
    fn errors() {
        let empty = AtomicGraph::new(vec![], &[]).unwrap();
        let a = p("a");
        assert_eq!(seq_ic_lcs_dag(&a, &a, &empty), Err(GraphError::EmptyGraph));
        let looped = AtomicGraph::new(vec!['a'], &[(0, 0)]).unwrap();
        assert_eq!(seq_ic_lcs_dag(&looped, &a, &a), Err(GraphError::CyclicGraph));
        assert_eq!(seq_ic_lcs_dag(&a, &a, &looped), Err(GraphError::CyclicGraph));
    }

    #[test]
    fn gamma_grants_the_single_character_start() {
        let a = p("a");
        let standard = SeqIcDag::compute_with(&a, &a, &a, Gamma::Standard).unwrap();
        let disabled = SeqIcDag::compute_with(&a, &a, &a, Gamma::Disabled).unwrap();
        assert_eq!(standard.length(), ExtLen::Finite(1));
        assert_eq!(disabled.length(), ExtLen::NegInf);
    }

    #[test]
    fn constraint_prefix_cannot_be_skipped() {
        // "ab" is a common subsequence; the constraint "ba" is not contained
        // in any common subsequence.
        let g = p("ab");
        assert_eq!(seq_ic_lcs_dag(&g, &g, &p("ba")).unwrap(), ExtLen::NegInf);
        // constraint whose first vertex has no match at the start of g1
        assert_eq!(
            seq_ic_lcs_dag(&p("xab"), &p("ab"), &p("ab")).unwrap(),
            ExtLen::Finite(2)
        );
    }

    #[test]
    fn table_shapes() {
        let s = SeqIcDag::compute(&p("abc"), &p("ab"), &p("b")).unwrap();
        assert_eq!(s.table().dims(), (3, 2, 2));
        assert_eq!(s.table().allocated_cells(), 12);
        assert_eq!(s.lcs_table().dims(), (4, 3));
    }

    #[test]
    fn layer_zero_matches_lcs_table() {
        let g1 = AtomicGraph::new(vec!['a', 'b', 'c', 'a'], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let g2 = p("cab");
        let s = SeqIcDag::compute(&g1, &g2, &p("a")).unwrap();
        for i in 0..4 {
            for j in 0..3 {
                assert_eq!(s.table().get(i, j, 0), ExtLen::Finite(s.lcs_table().get(i + 1, j + 1)));
            }
        }
    }

    #[test]
    fn unary_paths_exhaustive_binary() {
        fn all(max: usize) -> Vec<String> {
            let mut out = vec![String::new()];
            let mut frontier = vec![String::new()];
            for _ in 0..max {
                let mut next = Vec::new();
                for s in &frontier {
                    for c in ['a', 'b'] {
                        next.push(format!("{s}{c}"));
                    }
                }
                out.extend(next.iter().cloned());
                frontier = next;
            }
            out
        }
        let targets: Vec<String> = all(4).into_iter().filter(|s| !s.is_empty()).collect();
        for a in &targets {
            for b in &targets {
                for q in &targets {
                    if q.len() > 4 {
                        continue;
                    }
                    let expected = seq_ic_lcs_strings(a, b, q);
                    assert_eq!(seq_ic_lcs_dag(&p(a), &p(b), &p(q)).unwrap(), expected, "{a} {b} {q}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn unary_paths_reduce_to_strings(a in "[abc]{1,7}", b in "[abc]{1,7}", q in "[abc]{1,3}") {
            let (ga, gb, gq) = (p(&a), p(&b), p(&q));
            prop_assert_eq!(lcs_dag(&ga, &gb).unwrap(), lcs_strings(&a, &b) as u64);
            prop_assert_eq!(seq_ic_lcs_dag(&ga, &gb, &gq).unwrap(), seq_ic_lcs_strings(&a, &b, &q));
        }
    }
}
