//! SEQ-IC-LCS when the two target graphs may contain cycles.
//!
//! Each target is condensed into its strongly connected components. A cyclic
//! component spells any string over its label set, so two cyclic components
//! sharing a character yield unboundedly long common subsequences; those
//! cells hold [`ExtLen::PosInf`]. The constraint graph must stay acyclic.
//!
//! Predecessor lists of cyclic components include the component itself
//! (its self-loop). A cell never depends on itself except where two cyclic
//! components meet, and there only through the `+inf` promotion, so a single
//! pass in topological order suffices.

use crate::dag::{DpTable3, RankedDag};
use crate::error::{GraphError, Result};
use crate::ext_len::ExtLen;
use crate::graph::{condense, AtomicGraph, CondensedGraph};

/// Pairwise label-set intersections of two condensed graphs, indexed by
/// component number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelIntersectionIndex {
    cols: usize,
    sigma: Vec<Vec<char>>,
}

impl LabelIntersectionIndex {
    /// Whether components `i` of the first graph and `j` of the second share
    /// a character.
    pub fn matches(&self, i: usize, j: usize) -> bool {
        !self.sigma[i * self.cols + j].is_empty()
    }

    /// Sorted shared characters of components `i` and `j`.
    pub fn shared(&self, i: usize, j: usize) -> &[char] {
        &self.sigma[i * self.cols + j]
    }

    pub fn shares(&self, i: usize, j: usize, c: char) -> bool {
        self.shared(i, j).binary_search(&c).is_ok()
    }
}

pub fn build_intersection_index(h1: &CondensedGraph, h2: &CondensedGraph) -> LabelIntersectionIndex {
    let cols = h2.len();
    let mut sigma = Vec::with_capacity(h1.len() * cols);
    for a in h1.components() {
        for b in h2.components() {
            // membership queries against the sorted set of `a`
            let shared: Vec<char> = b
                .label_set
                .iter()
                .copied()
                .filter(|&c| a.label_set.binary_search(&c).is_ok())
                .collect();
            sigma.push(shared);
        }
    }
    LabelIntersectionIndex { cols, sigma }
}

/// Condensed graph re-indexed by topological rank of its components.
#[derive(Debug, Clone)]
struct RankedCondensed {
    /// Original component number at each rank.
    component: Vec<usize>,
    cyclic: Vec<bool>,
    /// Predecessor ranks; a cyclic component lists itself.
    preds: Vec<Vec<usize>>,
}

impl RankedCondensed {
    fn new(h: &CondensedGraph) -> Self {
        let order = h.topo_order();
        let component = order.order().to_vec();
        let cyclic = component.iter().map(|&c| h.has_self_loop(c)).collect();
        let preds = component
            .iter()
            .map(|&c| {
                let mut p: Vec<usize> = h.in_edges(c).iter().map(|&u| order.rank(u)).collect();
                p.sort_unstable();
                p
            })
            .collect();
        RankedCondensed {
            component,
            cyclic,
            preds,
        }
    }

    fn len(&self) -> usize {
        self.component.len()
    }
}

/// Filled table for one SEQ-IC-LCS instance with possibly cyclic targets.
#[derive(Debug, Clone)]
pub struct SeqIcCyclic {
    h1: CondensedGraph,
    h2: CondensedGraph,
    r1: RankedCondensed,
    r2: RankedCondensed,
    g3: RankedDag,
    index: LabelIntersectionIndex,
    table: DpTable3,
}

impl SeqIcCyclic {
    pub fn compute(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph) -> Result<Self> {
        if g1.is_empty() || g2.is_empty() || g3.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let g3 = RankedDag::new(g3).map_err(|_| GraphError::CyclicConstraint)?;
        let (h1, h2) = (condense(g1), condense(g2));
        let (r1, r2) = (RankedCondensed::new(&h1), RankedCondensed::new(&h2));
        let index = build_intersection_index(&h1, &h2);
        let table = DpTable3::filled(r1.len(), r2.len(), g3.len());
        let mut s = SeqIcCyclic {
            h1,
            h2,
            r1,
            r2,
            g3,
            index,
            table,
        };
        s.fill_base_layer();
        s.fill_constrained_layers();
        Ok(s)
    }

    pub fn table(&self) -> &DpTable3 {
        &self.table
    }

    pub fn condensed(&self) -> (&CondensedGraph, &CondensedGraph) {
        (&self.h1, &self.h2)
    }

    /// Original component numbers at ranks `i`, `j`.
    pub fn components_at(&self, i: usize, j: usize) -> (usize, usize) {
        (self.r1.component[i], self.r2.component[j])
    }

    pub fn length(&self) -> ExtLen {
        let mut best = ExtLen::NegInf;
        for i in 0..self.r1.len() {
            for j in 0..self.r2.len() {
                for &s in &self.g3.sinks {
                    best = best.max(self.table.get(i, j, s + 1));
                }
            }
        }
        best
    }

    fn matches(&self, i: usize, j: usize) -> bool {
        self.index.matches(self.r1.component[i], self.r2.component[j])
    }

    fn shares(&self, i: usize, j: usize, c: char) -> bool {
        self.index.shares(self.r1.component[i], self.r2.component[j], c)
    }

    /// Largest value over predecessor cells that move only one coordinate.
    fn max_one_side(&self, i: usize, j: usize, k: usize, floor: ExtLen) -> ExtLen {
        let d = &self.table;
        let from1 = self.r1.preds[i].iter().filter(|&&x| x != i).map(|&x| d.get(x, j, k));
        let from2 = self.r2.preds[j].iter().filter(|&&y| y != j).map(|&y| d.get(i, y, k));
        from1.chain(from2).fold(floor, ExtLen::max)
    }

    fn pred_pairs(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let p2 = &self.r2.preds[j];
        self.r1.preds[i]
            .iter()
            .flat_map(move |&x| p2.iter().map(move |&y| (x, y)))
    }

    /// Unconstrained layer `k = 0`.
    fn fill_base_layer(&mut self) {
        for i in 0..self.r1.len() {
            for j in 0..self.r2.len() {
                let both_cyclic = self.r1.cyclic[i] && self.r2.cyclic[j];
                let m = self.matches(i, j);
                let v = if both_cyclic && m {
                    ExtLen::PosInf
                } else if m {
                    // (i, j) itself is never a predecessor pair here
                    self.pred_pairs(i, j)
                        .map(|(x, y)| self.table.get(x, y, 0) + ExtLen::ONE)
                        .fold(ExtLen::ONE, ExtLen::max)
                } else {
                    self.max_one_side(i, j, 0, ExtLen::ZERO)
                };
                self.table.set(i, j, 0, v);
            }
        }
    }

    fn fill_constrained_layers(&mut self) {
        for i in 0..self.r1.len() {
            for j in 0..self.r2.len() {
                let both_cyclic = self.r1.cyclic[i] && self.r2.cyclic[j];
                for k in 1..=self.g3.len() {
                    let v = if both_cyclic {
                        self.cyclic_pair_cell(i, j, k)
                    } else {
                        self.cell(i, j, k)
                    };
                    self.table.set(i, j, k, v);
                }
            }
        }
    }

    /// Layers for the constraint prefix preceding `k`: the empty layer when
    /// `v3,k` starts the constraint, otherwise its predecessors.
    fn constraint_pred_layers(&self, k: usize) -> Vec<usize> {
        let p3 = &self.g3.preds[k - 1];
        if p3.is_empty() {
            vec![0]
        } else {
            p3.iter().map(|z| z + 1).collect()
        }
    }

    /// Both components cyclic: every reachable state is unbounded, so each
    /// candidate is `inf + D`, which stays `-inf` for unreachable `D`.
    fn cyclic_pair_cell(&self, i: usize, j: usize, k: usize) -> ExtLen {
        let delta = ExtLen::PosInf;
        let c = self.g3.labels[k - 1];
        let d = &self.table;
        if self.shares(i, j, c) {
            let layers = self.constraint_pred_layers(k);
            self.pred_pairs(i, j)
                .flat_map(|(x, y)| layers.iter().map(move |&z| (x, y, z)))
                .map(|(x, y, z)| delta + d.get(x, y, z))
                .fold(ExtLen::NegInf, ExtLen::max)
        } else if self.matches(i, j) {
            self.pred_pairs(i, j)
                .filter(|&(x, y)| (x, y) != (i, j))
                .map(|(x, y)| delta + d.get(x, y, k))
                .fold(ExtLen::NegInf, ExtLen::max)
        } else {
            self.max_one_side(i, j, k, ExtLen::NegInf)
        }
    }

    /// At most one component cyclic: a match contributes exactly one
    /// character.
    fn cell(&self, i: usize, j: usize, k: usize) -> ExtLen {
        let c = self.g3.labels[k - 1];
        let d = &self.table;
        if self.shares(i, j, c) {
            let starts_constraint = self.g3.preds[k - 1].is_empty();
            let init = if starts_constraint { ExtLen::ONE } else { ExtLen::NegInf };
            let layers = self.constraint_pred_layers(k);
            self.pred_pairs(i, j)
                .flat_map(|(x, y)| layers.iter().map(move |&z| (x, y, z)))
                .map(|(x, y, z)| d.get(x, y, z) + ExtLen::ONE)
                .fold(init, ExtLen::max)
        } else if self.matches(i, j) {
            self.pred_pairs(i, j)
                .map(|(x, y)| d.get(x, y, k) + ExtLen::ONE)
                .fold(ExtLen::NegInf, ExtLen::max)
        } else {
            self.max_one_side(i, j, k, ExtLen::NegInf)
        }
    }
}

/// SEQ-IC-LCS length where `g1` and `g2` may be cyclic and `g3` is acyclic.
/// [`ExtLen::PosInf`] means arbitrarily long candidates exist.
pub fn seq_ic_lcs_cyclic(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph) -> Result<ExtLen> {
    Ok(SeqIcCyclic::compute(g1, g2, g3)?.length())
}

/// Acyclic graph spelling the walks of `g` that follow DFS back edges at
/// most `times` times in total.
///
/// The vertex set is copied into `times + 1` layers. Tree, forward and cross
/// edges stay inside a layer; a back edge `(u, v)` leads from `u` in layer
/// `t` to `v` in layer `t + 1`. Vertex `v` of layer `t` has index
/// `t * |V| + v`.
pub fn unroll_bounded(g: &AtomicGraph, times: usize) -> AtomicGraph {
    let n = g.len();
    let back = back_edges(g);
    let mut labels = Vec::with_capacity(n * (times + 1));
    for _ in 0..=times {
        labels.extend_from_slice(g.labels());
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let is_back = back.binary_search(&(u, v)).is_ok();
        for t in 0..=times {
            if !is_back {
                edges.push((t * n + u, t * n + v));
            } else if t < times {
                edges.push((t * n + u, (t + 1) * n + v));
            }
        }
    }
    AtomicGraph::new(labels, &edges).expect("unrolled edges are distinct")
}

/// Sorted back edges of an iterative DFS that visits roots and successors in
/// ascending index order.
fn back_edges(g: &AtomicGraph) -> Vec<(usize, usize)> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = g.len();
    let mut mark = vec![Mark::New; n];
    let mut back = Vec::new();
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        mark[root] = Mark::Open;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&v) = g.out_edges(u).get(*next) {
                *next += 1;
                match mark[v] {
                    Mark::New => {
                        mark[v] = Mark::Open;
                        stack.push((v, 0));
                    }
                    Mark::Open => back.push((u, v)),
                    Mark::Done => {}
                }
            } else {
                mark[u] = Mark::Done;
                stack.pop();
            }
        }
    }
    back.sort_unstable();
    back
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::seq_ic_lcs_dag;
    use crate::graph::topo_sort;

    fn looped(c: char) -> AtomicGraph {
        AtomicGraph::new(vec![c], &[(0, 0)]).unwrap()
    }

    fn p(s: &str) -> AtomicGraph {
        AtomicGraph::path(s)
    }

    #[test]
    fn self_loops_unbounded() {
        let a = looped('a');
        assert_eq!(seq_ic_lcs_cyclic(&a, &a, &p("a")).unwrap(), ExtLen::PosInf);
        assert_eq!(seq_ic_lcs_cyclic(&a, &a, &p("b")).unwrap(), ExtLen::NegInf);
    }

    #[test]
    fn bounded_by_acyclic_partner() {
        let g1 = AtomicGraph::new(vec!['a', 'b'], &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(seq_ic_lcs_cyclic(&g1, &p("ab"), &p("b")).unwrap(), ExtLen::Finite(2));
    }

    #[test]
    fn errors() {
        let a = looped('a');
        assert_eq!(seq_ic_lcs_cyclic(&a, &a, &a), Err(GraphError::CyclicConstraint));
        let empty = AtomicGraph::new(vec![], &[]).unwrap();
        assert_eq!(seq_ic_lcs_cyclic(&empty, &a, &p("a")), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn acyclic_inputs_agree_with_dag_engine() {
        let g1 = AtomicGraph::new(vec!['c', 'd', 'b', 'a'], &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let g2 = p("cdba");
        for q in ["ba", "ab", "d", "cda", "z"] {
            assert_eq!(
                seq_ic_lcs_cyclic(&g1, &g2, &p(q)).unwrap(),
                seq_ic_lcs_dag(&g1, &g2, &p(q)).unwrap(),
                "{q}"
            );
        }
    }

    #[test]
    fn intersection_index() {
        let h1 = condense(&AtomicGraph::new(vec!['a', 'b', 'a'], &[(0, 1), (1, 0)]).unwrap());
        let h2 = condense(&AtomicGraph::new(vec!['c', 'a'], &[]).unwrap());
        let idx = build_intersection_index(&h1, &h2);
        // h1 components: {a,b} (cyclic), {a}; h2: {c}, {a}
        assert!(!idx.matches(0, 0));
        assert!(idx.matches(0, 1));
        assert_eq!(idx.shared(0, 1), &['a']);
        assert!(idx.shares(1, 1, 'a'));
        assert!(!idx.shares(1, 1, 'b'));
    }

    #[test]
    fn base_layer_infinity_comes_from_cyclic_matches() {
        // g1: cyclic {a} -> b ; g2: cyclic {a} -> c
        let g1 = AtomicGraph::new(vec!['a', 'b'], &[(0, 0), (0, 1)]).unwrap();
        let g2 = AtomicGraph::new(vec!['a', 'c'], &[(0, 0), (0, 1)]).unwrap();
        let s = SeqIcCyclic::compute(&g1, &g2, &p("b")).unwrap();
        let d = s.table();
        assert_eq!(d.get(0, 0, 0), ExtLen::PosInf);
        // propagated, not a direct cyclic match
        assert_eq!(d.get(1, 1, 0), ExtLen::PosInf);
        // constraint 'b' unmatched in g2
        assert_eq!(s.length(), ExtLen::NegInf);
    }

    #[test]
    fn infinite_bonus_does_not_revive_unreachable_cells() {
        // both cyclic with shared 'a', constraint "ba" needs a 'b' first
        let a = looped('a');
        let s = SeqIcCyclic::compute(&a, &a, &p("ba")).unwrap();
        assert_eq!(s.table().get(0, 0, 0), ExtLen::PosInf);
        assert_eq!(s.table().get(0, 0, 1), ExtLen::NegInf);
        assert_eq!(s.table().get(0, 0, 2), ExtLen::NegInf);
        assert_eq!(s.length(), ExtLen::NegInf);
    }

    #[test]
    fn unroll_self_loop() {
        let u = unroll_bounded(&looped('a'), 3);
        assert_eq!(u.len(), 4);
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn unroll_acyclic_is_layered_copies() {
        let g = p("ab");
        let u = unroll_bounded(&g, 2);
        assert!(topo_sort(&u).is_ok());
        assert_eq!(u.len(), 6);
        assert_eq!(u.edge_count(), 3);
    }

    #[test]
    fn unroll_is_acyclic() {
        let g = AtomicGraph::new(vec!['a', 'b', 'c'], &[(0, 1), (1, 2), (2, 0), (1, 0), (2, 2)]).unwrap();
        for t in 1..4 {
            assert!(topo_sort(&unroll_bounded(&g, t)).is_ok());
        }
    }
}
