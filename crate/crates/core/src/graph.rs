// SPDX-License-Identifier: Apache-2.0

//! Immutable undirected simple graphs in compressed adjacency form.
//!
//! Nodes are dense indices `0..n`. Each node's neighbor list is sorted and
//! free of duplicates and self-loops, and the adjacency is symmetric.
//! Dataset identifiers, when the graph was loaded from a file, are kept in
//! a side table used only for reporting.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Option<Vec<u64>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("node_count", &self.node_count())
            .field("edge_count", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` nodes. Self-loops and repeated edges are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let (graph, _) = Self::build(n, edges)?;
        Ok(graph)
    }

    /// Like [`Graph::from_edges`] but also reports how many loops and
    /// duplicates were discarded.
    fn build<I>(n: usize, edges: I) -> Result<(Graph, DropCounts)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!("{n} nodes exceeds u32 index space")));
        }
        let mut drops = DropCounts::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            for idx in [a, b] {
                if idx >= n {
                    return Err(Error::NodeOutOfRange {
                        index: idx,
                        node_count: n,
                    });
                }
            }
            if a == b {
                drops.self_loops += 1;
                continue;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            pairs.push((lo as u32, hi as u32));
        }
        let raw = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        drops.duplicates = raw - pairs.len();

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        // Pairs are sorted by (lo, hi): a node first receives its smaller
        // neighbors (as hi) in ascending order, then its larger ones (as lo).
        for &(a, b) in &pairs {
            targets[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            targets[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        debug_assert!((0..n).all(|i| targets[offsets[i]..offsets[i + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        Ok((
            Graph {
                offsets,
                targets,
                labels: None,
            },
            drops,
        ))
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            labels: None,
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges, each counted once.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Degree of `i`. Panics when `i` is out of range.
    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Checked variant of [`Graph::degree`].
    pub fn degree_of(&self, i: usize) -> Result<usize> {
        self.check_node(i)?;
        Ok(self.degree(i))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.node_count() && self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .map(|&j| j as usize)
                .filter(move |&j| i < j)
                .map(move |j| (i, j))
        })
    }

    /// Original dataset identifiers, indexed by internal node index.
    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Identifier used in reports: the dataset label if known, else the index.
    pub fn label_of(&self, i: usize) -> u64 {
        match &self.labels {
            Some(l) => l[i],
            None => i as u64,
        }
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Graph> {
        if labels.len() != self.node_count() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.node_count() {
            return Err(Error::NodeOutOfRange {
                index: i,
                node_count: self.node_count(),
            });
        }
        Ok(())
    }

    /// Removes `set` and every incident edge. The survivors are re-indexed
    /// in ascending order of their old index.
    pub fn delete_nodes(&self, set: &NodeSet) -> Result<Subgraph> {
        let removed = set.mask(self.node_count())?;
        Ok(self.delete_masked(&removed))
    }

    /// Deletion driven by a membership mask of length `node_count`.
    pub(crate) fn delete_masked(&self, removed: &[bool]) -> Subgraph {
        debug_assert_eq!(removed.len(), self.node_count());
        let n = self.node_count();
        let mut new_index = vec![u32::MAX; n];
        let mut parent = Vec::with_capacity(n);
        for i in 0..n {
            if !removed[i] {
                new_index[i] = parent.len() as u32;
                parent.push(i as u32);
            }
        }
        let mut offsets = Vec::with_capacity(parent.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for &old in &parent {
            // Old neighbor lists are sorted and the renumbering is monotone,
            // so new lists stay sorted.
            targets.extend(
                self.neighbors(old as usize)
                    .iter()
                    .map(|&j| new_index[j as usize])
                    .filter(|&j| j != u32::MAX),
            );
            offsets.push(targets.len());
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| parent.iter().map(|&p| l[p as usize]).collect());
        Subgraph {
            graph: Graph {
                offsets,
                targets,
                labels,
            },
            parent,
        }
    }

    /// Writes one `i j` line per edge using internal indices.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (i, j) in self.edges() {
            writeln!(out, "{i} {j}")?;
        }
        Ok(())
    }
}

/// Result of [`Graph::delete_nodes`]: the surviving graph together with the
/// index each surviving node had in the parent graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub parent: Vec<u32>,
}

/// Duplicate-free set of node indices. Insertion order is preserved, which
/// matters for greedy selections reported step by step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeSet {
    members: Vec<u32>,
}

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&i| i as usize)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.iter().any(|&m| m as usize == i)
    }

    /// Membership mask over `n` nodes; fails if any member is `>= n`.
    pub fn mask(&self, n: usize) -> Result<Vec<bool>> {
        let mut mask = vec![false; n];
        for &m in &self.members {
            let m = m as usize;
            if m >= n {
                return Err(Error::NodeOutOfRange {
                    index: m,
                    node_count: n,
                });
            }
            mask[m] = true;
        }
        Ok(mask)
    }

    /// Members in ascending order.
    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }

    /// Wraps a vector the caller guarantees to be duplicate-free.
    pub(crate) fn from_unique(members: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = members.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        });
        NodeSet { members }
    }
}

impl FromIterator<usize> for NodeSet {
    /// Collects indices, keeping the first occurrence of each.
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut seen = std::collections::HashSet::new();
        let members = iter
            .into_iter()
            .filter(|&i| seen.insert(i))
            .map(|i| i as u32)
            .collect();
        NodeSet { members }
    }
}

/// Edge-list dialects accepted by [`load_edge_list`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// Konect `out.*` files: `%` comment lines, 1-based ids, optional extra columns.
    Konect,
    /// SNAP files: `#` comment lines.
    Snap,
    /// Bare pairs; both `%` and `#` comment lines are tolerated.
    Plain,
}

impl EdgeListFormat {
    fn is_comment(self, line: &str) -> bool {
        match self {
            EdgeListFormat::Konect => line.starts_with('%'),
            EdgeListFormat::Snap => line.starts_with('#'),
            EdgeListFormat::Plain => line.starts_with('%') || line.starts_with('#'),
        }
    }
}

impl FromStr for EdgeListFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "konect" => Ok(EdgeListFormat::Konect),
            "snap" => Ok(EdgeListFormat::Snap),
            "plain" => Ok(EdgeListFormat::Plain),
            other => Err(Error::InvalidParameter(format!("unknown edge-list format '{other}'"))),
        }
    }
}

impl fmt::Display for EdgeListFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeListFormat::Konect => "konect",
            EdgeListFormat::Snap => "snap",
            EdgeListFormat::Plain => "plain",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DropCounts {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// A loaded graph plus what was discarded while simplifying it.
#[derive(Debug, Clone)]
pub struct LoadReport {
    pub graph: Graph,
    pub dropped: DropCounts,
}

/// Parses a whitespace-separated edge list. Node ids are compacted to
/// `0..n` in order of first appearance; the original ids become labels.
/// Columns past the second are ignored (Konect weight/timestamp columns).
pub fn load_edge_list<R: BufRead>(reader: R, format: EdgeListFormat) -> Result<LoadReport> {
    let mut index_of: HashMap<u64, usize> = HashMap::new();
    let mut labels: Vec<u64> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || format.is_comment(trimmed) {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<usize> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two node ids".into(),
            })?;
            let id: u64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("'{tok}' is not a non-negative integer node id"),
            })?;
            Ok(*index_of.entry(id).or_insert_with(|| {
                labels.push(id);
                labels.len() - 1
            }))
        };
        let a = endpoint()?;
        let b = endpoint()?;
        edges.push((a, b));
    }

    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (graph, dropped) = Graph::build(labels.len(), edges)?;
    Ok(LoadReport {
        graph: graph.with_labels(labels)?,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> LoadReport {
        load_edge_list(text.as_bytes(), EdgeListFormat::Plain).unwrap()
    }

    #[test]
    fn triangle_from_text() {
        let r = load("1 2\n2 3\n3 1\n");
        assert_eq!(r.graph.node_count(), 3);
        assert_eq!(r.graph.edge_count(), 3);
        assert_eq!(r.dropped, DropCounts::default());
    }

    #[test]
    fn duplicates_and_loops_are_dropped_and_counted() {
        let r = load("% comment\n1 2\n1 2\n1 1\n");
        assert_eq!(r.graph.node_count(), 2);
        assert_eq!(r.graph.edge_count(), 1);
        assert_eq!(r.dropped.duplicates, 1);
        assert_eq!(r.dropped.self_loops, 1);
    }

    #[test]
    fn reversed_duplicate_counts_as_duplicate() {
        let r = load("5 9\n9 5\n");
        assert_eq!(r.graph.edge_count(), 1);
        assert_eq!(r.dropped.duplicates, 1);
    }

    #[test]
    fn first_appearance_order_and_labels() {
        let r = load("30 10\n10 20\n");
        assert_eq!(r.graph.labels().unwrap(), &[30, 10, 20]);
        assert!(r.graph.has_edge(0, 1));
        assert!(r.graph.has_edge(1, 2));
        assert!(!r.graph.has_edge(0, 2));
    }

    #[test]
    fn konect_extra_columns_ignored() {
        let text = "% sym unweighted\n% 2 3 3\n1 2 1 946684800\n2 3 1 946684800\n";
        let r = load_edge_list(text.as_bytes(), EdgeListFormat::Konect).unwrap();
        assert_eq!(r.graph.edge_count(), 2);
    }

    #[test]
    fn snap_comments() {
        let text = "# Directed graph\n# Nodes: 3\n0\t1\n1\t2\n";
        let r = load_edge_list(text.as_bytes(), EdgeListFormat::Snap).unwrap();
        assert_eq!(r.graph.node_count(), 3);
        // '%' is data in SNAP files, so it fails to parse as an id.
        let bad = "% nope\n0 1\n";
        assert!(load_edge_list(bad.as_bytes(), EdgeListFormat::Snap).is_err());
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_edge_list("1 2\n2 x\n".as_bytes(), EdgeListFormat::Plain).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = load_edge_list("1 2\n3\n".as_bytes(), EdgeListFormat::Plain).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            load_edge_list("".as_bytes(), EdgeListFormat::Plain),
            Err(Error::EmptyInput)
        ));
        assert!(matches!(
            load_edge_list("% only comments\n\n".as_bytes(), EdgeListFormat::Konect),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn delete_from_triangle_leaves_an_edge() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let sub = g.delete_nodes(&[0].into_iter().collect()).unwrap();
        assert_eq!(sub.graph.node_count(), 2);
        assert_eq!(sub.graph.edge_count(), 1);
        assert_eq!(sub.parent, vec![1, 2]);
        // The original is untouched.
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn delete_star_center_isolates_leaves() {
        let g = Graph::from_edges(5, (1..5).map(|l| (0, l))).unwrap();
        let sub = g.delete_nodes(&[0].into_iter().collect()).unwrap();
        assert_eq!(sub.graph.node_count(), 4);
        assert_eq!(sub.graph.edge_count(), 0);
    }

    #[test]
    fn delete_out_of_range() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let set: NodeSet = [0, 3].into_iter().collect();
        assert!(matches!(
            g.delete_nodes(&set),
            Err(Error::NodeOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn degree_checks() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degree_of(0).unwrap(), 1);
        assert_eq!(g.degree_of(1).unwrap(), 2);
        assert!(g.degree_of(3).is_err());
    }

    #[test]
    fn node_set_dedups_in_order() {
        let s: NodeSet = [3, 1, 3, 2, 1].into_iter().collect();
        assert_eq!(s.as_slice(), &[3, 1, 2]);
        assert_eq!(s.sorted(), vec![1, 2, 3]);
    }
}
