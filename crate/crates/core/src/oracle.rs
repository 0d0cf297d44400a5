//! Brute-force reference implementations and random instance generation.
//!
//! The oracle evaluates the SEQ-IC-LCS definition directly: it enumerates
//! the label strings of all maximal paths of the three graphs and takes the
//! best string-level answer over every triple. This is exact because every
//! path extends to a maximal path (and a subsequence of a path is a
//! subsequence of any extension), while the constraint strings are drawn
//! from maximal paths of the constraint graph by definition.
//!
//! Enumeration is bounded; when a bound is hit the oracle refuses to answer
//! rather than return a possibly wrong value.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclic::unroll_bounded;
use crate::error::{GraphError, Result};
use crate::ext_len::ExtLen;
use crate::graph::{topo_sort, AtomicGraph, CondensedGraph, LabeledGraph};
use crate::strings::{lcs_chars, seq_ic_lcs_chars};

pub const DEFAULT_MAX_COUNT: usize = 5000;
pub const DEFAULT_MAX_LEN: usize = 32;
/// Cap on the dynamic-programming cells summed over all string combinations.
pub const DEFAULT_MAX_CELLS: u64 = 50_000_000;

/// Enumerated path label strings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathStringSet {
    pub strings: BTreeSet<String>,
    /// Set when a count or length bound stopped the enumeration.
    pub truncated: bool,
}

/// Label strings of the maximal paths of `g`.
///
/// For a DAG these are the paths from a vertex without in-coming edges to a
/// vertex without out-going edges. For a cyclic graph the walks start at
/// every vertex and stop at a sink or after `max_len` characters; reaching
/// the length bound marks the result as truncated.
pub fn maximal_path_strings(g: &AtomicGraph, max_count: usize, max_len: usize) -> PathStringSet {
    let acyclic = g.is_acyclic();
    let starts: Vec<usize> = if acyclic {
        (0..g.len()).filter(|&v| g.in_degree(v) == 0).collect()
    } else {
        (0..g.len()).collect()
    };
    let mut out = PathStringSet::default();
    // bounds the work spent on repeated strings
    let mut budget = max_count.saturating_mul(64).max(1);

    'roots: for root in starts {
        let mut current = vec![g.label(root)];
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            let out_edges = g.out_edges(u);
            if out_edges.is_empty() || current.len() >= max_len {
                if !out_edges.is_empty() {
                    out.truncated = true;
                }
                if out_edges.is_empty() || !acyclic {
                    out.strings.insert(current.iter().collect());
                }
                if out.strings.len() > max_count {
                    out.truncated = true;
                    break 'roots;
                }
                budget -= 1;
                if budget == 0 {
                    out.truncated = true;
                    break 'roots;
                }
                stack.pop();
                current.pop();
                continue;
            }
            if let Some(&v) = out_edges.get(*next) {
                *next += 1;
                stack.push((v, 0));
                current.push(g.label(v));
            } else {
                stack.pop();
                current.pop();
            }
        }
    }
    out
}

fn enumerate_exact(g: &AtomicGraph) -> Result<Vec<Vec<char>>> {
    let set = maximal_path_strings(g, DEFAULT_MAX_COUNT, DEFAULT_MAX_LEN);
    if set.truncated {
        return Err(GraphError::TooLarge(format!(
            "more than {DEFAULT_MAX_COUNT} path strings or a path longer than {DEFAULT_MAX_LEN}"
        )));
    }
    Ok(set.strings.iter().map(|s| s.chars().collect()).collect())
}

fn check_cells(sets: &[&[Vec<char>]]) -> Result<()> {
    let cells = sets
        .iter()
        .map(|set| set.iter().map(|s| s.len() as u64 + 1).sum::<u64>())
        .fold(1u64, u64::saturating_mul);
    if cells > DEFAULT_MAX_CELLS {
        return Err(GraphError::TooLarge(format!(
            "{cells} table cells exceed the limit of {DEFAULT_MAX_CELLS}"
        )));
    }
    Ok(())
}

/// LCS of two acyclic graphs as the best LCS over maximal-path string pairs.
pub fn oracle_lcs(g1: &AtomicGraph, g2: &AtomicGraph) -> Result<u64> {
    let (s1, s2) = (enumerate_exact(g1)?, enumerate_exact(g2)?);
    check_cells(&[&s1, &s2])?;
    let mut best = 0;
    for a in &s1 {
        for b in &s2 {
            best = best.max(lcs_chars(a, b) as u64);
        }
    }
    Ok(best)
}

/// SEQ-IC-LCS of three acyclic graphs by exhaustive enumeration.
pub fn oracle_seq_ic(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph) -> Result<ExtLen> {
    if g1.is_empty() || g2.is_empty() || g3.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let (s1, s2, s3) = (enumerate_exact(g1)?, enumerate_exact(g2)?, enumerate_exact(g3)?);
    check_cells(&[&s1, &s2, &s3])?;
    let mut best = ExtLen::NegInf;
    for a in &s1 {
        for b in &s2 {
            for q in &s3 {
                best = best.max(seq_ic_lcs_chars(a, b, q));
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The last two values strictly increase.
    Growing,
    /// The last two values are equal.
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    /// Oracle value after unrolling the targets `t = 1, 2, …` times.
    pub values: Vec<ExtLen>,
    pub verdict: Verdict,
}

impl Probe {
    pub fn last(&self) -> ExtLen {
        *self.values.last().expect("probe has at least two values")
    }
}

/// Runs the oracle on increasingly unrolled targets. `t_max` is raised to 2
/// so that a verdict can always be formed.
pub fn oracle_infinite_probe(g1: &AtomicGraph, g2: &AtomicGraph, g3: &AtomicGraph, t_max: usize) -> Result<Probe> {
    if !g3.is_acyclic() {
        return Err(GraphError::CyclicConstraint);
    }
    let values = (1..=t_max.max(2))
        .map(|t| oracle_seq_ic(&unroll_bounded(g1, t), &unroll_bounded(g2, t), g3))
        .collect::<Result<Vec<_>>>()?;
    let n = values.len();
    let verdict = if values[n - 1] > values[n - 2] {
        Verdict::Growing
    } else {
        Verdict::Stable
    };
    Ok(Probe { values, verdict })
}

const ALPHABET: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Deterministic random labeled graph with single-character labels.
///
/// Uses ChaCha8 seeded from `seed`. With `dag_only`, edges point forward in
/// a random vertex order; otherwise any ordered pair, self-loops included,
/// may be drawn. Vertex ids are `1..=n_vertices`.
pub fn gen_random_graph(
    seed: u64,
    n_vertices: usize,
    n_edges: usize,
    alphabet_size: usize,
    dag_only: bool,
) -> Result<LabeledGraph> {
    let alphabet: Vec<char> = ALPHABET.chars().collect();
    if n_vertices == 0 {
        return Err(GraphError::InfeasibleShape("at least one vertex is required".into()));
    }
    if alphabet_size == 0 || alphabet_size > alphabet.len() {
        return Err(GraphError::InfeasibleShape(format!(
            "alphabet size must be between 1 and {}",
            alphabet.len()
        )));
    }
    let max_edges = if dag_only {
        n_vertices * (n_vertices - 1) / 2
    } else {
        n_vertices * n_vertices
    };
    if n_edges > max_edges {
        return Err(GraphError::InfeasibleShape(format!(
            "{n_edges} edges requested but at most {max_edges} fit on {n_vertices} vertices"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<char> = (0..n_vertices)
        .map(|_| alphabet[rng.gen_range(0..alphabet_size)])
        .collect();
    let candidates: Vec<(usize, usize)> = if dag_only {
        let order = sample(&mut rng, n_vertices, n_vertices).into_vec();
        (0..n_vertices)
            .flat_map(|a| (a + 1..n_vertices).map(move |b| (a, b)))
            .map(|(a, b)| (order[a], order[b]))
            .collect()
    } else {
        (0..n_vertices)
            .flat_map(|u| (0..n_vertices).map(move |v| (u, v)))
            .collect()
    };
    let mut edges: Vec<(u64, u64)> = sample(&mut rng, candidates.len(), n_edges)
        .into_iter()
        .map(|e| (candidates[e].0 as u64 + 1, candidates[e].1 as u64 + 1))
        .collect();
    edges.sort_unstable();

    LabeledGraph::from_parts(
        labels.iter().enumerate().map(|(i, c)| (i as u64 + 1, c.to_string())),
        edges,
    )
}

/// Random acyclic atomic graph, a shorthand used across the test suites.
pub fn random_dag(seed: u64, n_vertices: usize, n_edges: usize, alphabet_size: usize) -> AtomicGraph {
    let g = gen_random_graph(seed, n_vertices, n_edges, alphabet_size, true).expect("feasible shape");
    let a = crate::graph::atomize(&g);
    debug_assert!(topo_sort(&a).is_ok());
    a
}

/// Fixed-point closure of subsequences of walk strings, capped at `max_len`.
///
/// `extend(v, s)` lists the strings obtained by appending to `s` a
/// subsequence contributed by one visit of `v`.
fn subsequence_closure<F>(n: usize, out_edges: impl Fn(usize) -> Vec<usize>, extend: F) -> BTreeSet<String>
where
    F: Fn(usize, &[char]) -> Vec<Vec<char>>,
{
    let mut reach: Vec<HashSet<Vec<char>>> = vec![HashSet::new(); n];
    let mut queue = VecDeque::new();
    for (v, seen) in reach.iter_mut().enumerate() {
        for s in extend(v, &[]) {
            if seen.insert(s.clone()) {
                queue.push_back((v, s));
            }
        }
    }
    while let Some((u, s)) = queue.pop_front() {
        for w in out_edges(u) {
            for t in extend(w, &s) {
                if reach[w].insert(t.clone()) {
                    queue.push_back((w, t));
                }
            }
        }
    }
    reach.into_iter().flatten().map(|s| s.into_iter().collect()).collect()
}

fn append_each(s: &[char], chars: &[char], max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![s.to_vec()];
    if s.len() < max_len {
        out.extend(chars.iter().map(|&c| {
            let mut t = s.to_vec();
            t.push(c);
            t
        }));
    }
    out
}

/// Strings of length at most `max_len` that are subsequences of some walk.
pub fn bounded_subsequences_atomic(g: &AtomicGraph, max_len: usize) -> BTreeSet<String> {
    subsequence_closure(
        g.len(),
        |u| g.out_edges(u).to_vec(),
        |v, s| append_each(s, &[g.label(v)], max_len),
    )
}

pub fn bounded_subsequences_labeled(g: &LabeledGraph, max_len: usize) -> BTreeSet<String> {
    let labels: Vec<Vec<char>> = g.vertices().iter().map(|v| v.label.chars().collect()).collect();
    let index = |id: u64| g.vertices().iter().position(|v| v.id == id).unwrap();
    let mut out_edges = vec![Vec::new(); labels.len()];
    for &(u, v) in g.edges() {
        out_edges[index(u)].push(index(v));
    }
    subsequence_closure(
        labels.len(),
        |u| out_edges[u].clone(),
        |v, s| {
            // every subsequence of the label, appended to s
            let mut acc: BTreeSet<Vec<char>> = BTreeSet::from([s.to_vec()]);
            for &c in &labels[v] {
                let grown: Vec<Vec<char>> = acc
                    .iter()
                    .filter(|t| t.len() < max_len)
                    .map(|t| [t.as_slice(), &[c]].concat())
                    .collect();
                acc.extend(grown);
            }
            acc.into_iter().collect()
        },
    )
}

/// Cyclic components repeat through their self-loop edge.
pub fn bounded_subsequences_condensed(h: &CondensedGraph, max_len: usize) -> BTreeSet<String> {
    subsequence_closure(
        h.len(),
        |u| h.out_edges(u).to_vec(),
        |v, s| append_each(s, &h.component(v).label_set, max_len),
    )
}
