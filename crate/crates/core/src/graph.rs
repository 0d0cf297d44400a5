//! Graph representations shared by every solver.
//!
//! Users describe inputs as [`LabeledGraph`]s whose vertices carry non-empty
//! strings. The solvers work on [`AtomicGraph`]s, where each vertex carries a
//! single character; [`atomize`] converts one into the other in linear time
//! without changing the set of spelled subsequences. Cyclic graphs are
//! reduced to their strongly connected components with [`condense`].

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{GraphError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: u64,
    pub label: String,
}

/// Directed graph whose vertices are labeled by non-empty strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(u64, u64)>,
}

impl LabeledGraph {
    /// Validates ids, labels and edges. Vertex and edge order is preserved.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(u64, u64)>) -> Result<Self> {
        let mut ids = HashSet::with_capacity(vertices.len());
        for v in &vertices {
            if !ids.insert(v.id) {
                return Err(GraphError::DuplicateVertex(v.id));
            }
            if v.label.is_empty() {
                return Err(GraphError::EmptyLabel(v.id));
            }
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for &(from, to) in &edges {
            if !ids.contains(&from) || !ids.contains(&to) {
                return Err(GraphError::UnknownEndpoint(from, to));
            }
            if !seen.insert((from, to)) {
                return Err(GraphError::DuplicateEdge(from, to));
            }
        }
        Ok(LabeledGraph { vertices, edges })
    }

    /// Builds a graph from `(id, label)` pairs.
    pub fn from_parts<S: Into<String>>(
        vertices: impl IntoIterator<Item = (u64, S)>,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self> {
        let vertices = vertices
            .into_iter()
            .map(|(id, label)| Vertex {
                id,
                label: label.into(),
            })
            .collect();
        LabeledGraph::new(vertices, edges.into_iter().collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    /// `|V| + |E| + Σ|ℓ(v)|`.
    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.vertices.iter().map(|v| v.label.chars().count()).sum::<usize>()
    }
}

/// Directed graph with one character per vertex, addressed by dense indices.
///
/// Edge lists are kept sorted so that every traversal is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicGraph {
    labels: Vec<char>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl AtomicGraph {
    pub fn new(labels: Vec<char>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::EndpointOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::EndpointOutOfRange(v, n));
            }
            out_edges[u].push(v);
            in_edges[v].push(u);
        }
        for (u, list) in out_edges.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u as u64, w[0] as u64));
            }
        }
        for list in &mut in_edges {
            list.sort_unstable();
        }
        Ok(AtomicGraph {
            labels,
            out_edges,
            in_edges,
        })
    }

    /// A single path spelling `s`.
    pub fn path(s: &str) -> Self {
        let labels: Vec<char> = s.chars().collect();
        let edges: Vec<_> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        AtomicGraph::new(labels, &edges).expect("path edges are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.out_edges.iter().map(Vec::len).sum()
    }

    pub fn label(&self, v: usize) -> char {
        self.labels[v]
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_edges[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_edges
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }

    pub fn is_acyclic(&self) -> bool {
        topo_sort(self).is_ok()
    }
}

/// Converts string labels into chains of single-character vertices.
///
/// Vertices are laid out in ascending id order, each chain contiguous, so
/// dense indices inherit the id order used for tie-breaking in [`topo_sort`].
pub fn atomize(g: &LabeledGraph) -> AtomicGraph {
    let mut order: Vec<&Vertex> = g.vertices.iter().collect();
    order.sort_by_key(|v| v.id);

    let mut labels = Vec::with_capacity(g.size());
    let mut edges = Vec::new();
    let mut span: HashMap<u64, (usize, usize)> = HashMap::with_capacity(order.len());
    for v in order {
        let first = labels.len();
        labels.extend(v.label.chars());
        let last = labels.len() - 1;
        edges.extend((first..last).map(|i| (i, i + 1)));
        span.insert(v.id, (first, last));
    }
    for &(from, to) in &g.edges {
        edges.push((span[&from].1, span[&to].0));
    }
    AtomicGraph::new(labels, &edges).expect("labeled graph invariants hold")
}

/// A topological order together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoOrder {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl TopoOrder {
    fn from_order(order: Vec<usize>) -> Self {
        let mut rank = vec![0; order.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        TopoOrder { order, rank }
    }

    /// Vertices in topological order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Zero-based position of `v` in the order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Kahn's algorithm, always releasing the smallest ready index first.
/// Edges `(v, v)` are skipped when `ignore_self_loops` is set.
fn kahn(n: usize, out_edges: &[Vec<usize>], ignore_self_loops: bool) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for (u, out) in out_edges.iter().enumerate() {
        for &v in out {
            if !(ignore_self_loops && u == v) {
                indeg[v] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &v in &out_edges[u] {
            if ignore_self_loops && u == v {
                continue;
            }
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(Reverse(v));
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn topo_sort(g: &AtomicGraph) -> Result<TopoOrder> {
    kahn(g.len(), &g.out_edges, false)
        .map(TopoOrder::from_order)
        .ok_or(GraphError::CyclicGraph)
}

/// Vertices without out-going edges: the ends of maximal paths.
pub fn sink_vertices(g: &AtomicGraph) -> Vec<usize> {
    (0..g.len()).filter(|&v| g.out_edges[v].is_empty()).collect()
}

/// One strongly connected component of an [`AtomicGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Sorted, deduplicated characters of the member vertices.
    pub label_set: Vec<char>,
    /// Set when the component holds a cycle, i.e. has two or more members
    /// or a single member with a self-loop.
    pub is_cyclic: bool,
    /// Original vertex indices, ascending.
    pub members: Vec<usize>,
}

impl Component {
    pub fn contains_label(&self, c: char) -> bool {
        self.label_set.binary_search(&c).is_ok()
    }
}

/// Quotient of an [`AtomicGraph`] by its strongly connected components.
///
/// Cyclic components carry a self-loop, which counts as an in-coming edge.
/// Components are numbered by their smallest member index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensedGraph {
    components: Vec<Component>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    member_map: Vec<usize>,
}

impl CondensedGraph {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, c: usize) -> &Component {
        &self.components[c]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Component holding original vertex `v`.
    pub fn component_of(&self, v: usize) -> usize {
        self.member_map[v]
    }

    pub fn out_edges(&self, c: usize) -> &[usize] {
        &self.out_edges[c]
    }

    /// In-coming edges, self-loop included.
    pub fn in_edges(&self, c: usize) -> &[usize] {
        &self.in_edges[c]
    }

    pub fn has_self_loop(&self, c: usize) -> bool {
        self.in_edges[c].binary_search(&c).is_ok()
    }

    /// No in-coming edge from any component, itself included.
    pub fn has_no_incoming_at_all(&self, c: usize) -> bool {
        self.in_edges[c].is_empty()
    }

    /// Every in-coming edge (possibly none) is the self-loop.
    pub fn has_only_self_loop_incoming(&self, c: usize) -> bool {
        self.in_edges[c].iter().all(|&p| p == c)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_edges
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }

    /// Topological order of the component DAG; self-loops are not order
    /// constraints.
    pub fn topo_order(&self) -> TopoOrder {
        let order = kahn(self.len(), &self.out_edges, true).expect("component graph is acyclic apart from self-loops");
        TopoOrder::from_order(order)
    }
}

pub fn condense(g: &AtomicGraph) -> CondensedGraph {
    let n = g.len();
    let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(n, g.edge_count());
    for _ in 0..n {
        pg.add_node(());
    }
    for (u, v) in g.edges() {
        pg.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
    }

    let mut sccs: Vec<Vec<usize>> = tarjan_scc(&pg)
        .into_iter()
        .map(|scc| {
            let mut members: Vec<usize> = scc.into_iter().map(NodeIndex::index).collect();
            members.sort_unstable();
            members
        })
        .collect();
    sccs.sort_unstable_by_key(|m| m[0]);

    let mut member_map = vec![0; n];
    for (c, members) in sccs.iter().enumerate() {
        for &v in members {
            member_map[v] = c;
        }
    }

    let m = sccs.len();
    let mut out_edges = vec![Vec::new(); m];
    let mut in_edges = vec![Vec::new(); m];
    let mut components = Vec::with_capacity(m);
    for (c, members) in sccs.into_iter().enumerate() {
        let mut label_set: Vec<char> = members.iter().map(|&v| g.label(v)).collect();
        label_set.sort_unstable();
        label_set.dedup();
        let is_cyclic = members.len() >= 2 || g.out_edges(members[0]).contains(&members[0]);
        if is_cyclic {
            out_edges[c].push(c);
            in_edges[c].push(c);
        }
        components.push(Component {
            label_set,
            is_cyclic,
            members,
        });
    }
    for (u, v) in g.edges() {
        let (cu, cv) = (member_map[u], member_map[v]);
        if cu != cv {
            out_edges[cu].push(cv);
            in_edges[cv].push(cu);
        }
    }
    for list in out_edges.iter_mut().chain(in_edges.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }

    CondensedGraph {
        components,
        out_edges,
        in_edges,
        member_map,
    }
}
