//! Longest common subsequence (LCS) and subsequence-inclusion-constrained LCS
//! (SEQ-IC-LCS) of labeled directed graphs.
//!
//! A labeled graph spells out the set of strings read along its paths. Given
//! two target graphs and a constraint graph, [`seq_ic_lcs_dag`] and
//! [`seq_ic_lcs_cyclic`] compute the length of a longest string that is a
//! subsequence of both targets and contains, as a subsequence, the label of
//! some maximal path of the constraint graph. Targets may be cyclic, in which
//! case the answer may be unbounded ([`ExtLen::PosInf`]).
//!
//! The [`oracle`] module holds brute-force reference implementations used to
//! cross-check the dynamic programs.

pub mod cyclic;
pub mod dag;
mod error;
pub mod ext_len;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod strings;

pub use cyclic::{build_intersection_index, seq_ic_lcs_cyclic, unroll_bounded, SeqIcCyclic};
pub use dag::{lcs_dag, seq_ic_lcs_dag, seq_ic_lcs_dag_witness, SeqIcDag};
pub use error::{GraphError, ParseError, Result};
pub use ext_len::ExtLen;
pub use format::{parse_graph, write_atomic, write_condensed, write_graph};
pub use graph::{atomize, condense, sink_vertices, topo_sort, AtomicGraph, CondensedGraph, LabeledGraph, TopoOrder};
pub use strings::{lcs_strings, seq_ic_lcs_strings};
