//! Simple undirected graphs on the vertex set `0..n`.
//!
//! Text format, one record per line:
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v      (exactly m of these, 0 <= u, v < n, u != v)
//! ```
//!
//! Duplicate edges, self-loops and out-of-range endpoints are rejected.
//! Serialization writes edges with `u < v`, sorted lexicographically.

use std::fmt;
use std::io::Read;

use thiserror::Error;

/// Structural violations of simplicity.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("header declares {declared} edges but {found} edge lines were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing \"n m\" header line")]
    MissingHeader,
    #[error("input is not valid UTF-8: {0}")]
    Utf8(#[from] std::str::Utf8Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A finite simple undirected graph with vertices `0..n`.
///
/// Neighbor lists are kept sorted, which fixes the scan order of every
/// algorithm in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let pos = match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => pos,
        };
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(())
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.m
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || components(self).len() == 1
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut g = Graph::empty(0);
        let mut found = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (a, b) = parse_pair(raw, line)?;
            match header {
                None => {
                    header = Some((a, b));
                    g = Graph::empty(a);
                }
                Some((_, declared)) => {
                    found += 1;
                    if found > declared {
                        return Err(ParseError::EdgeCountMismatch { declared, found });
                    }
                    g.add_edge(a, b)
                        .map_err(|source| ParseError::Invalid { line, source })?;
                }
            }
        }

        let (_, declared) = header.ok_or(ParseError::MissingHeader)?;
        if found != declared {
            return Err(ParseError::EdgeCountMismatch { declared, found });
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn parse_pair(raw: &str, line: usize) -> Result<(usize, usize), ParseError> {
    let mut fields = Vec::with_capacity(2);
    let mut rest = raw;
    let mut offset = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        fields.push((offset + start + 1, &tail[..len]));
        offset += start + len;
        rest = &tail[len..];
    }
    if fields.len() != 2 {
        let column = fields.get(2).map_or(raw.len() + 1, |f| f.0);
        return Err(ParseError::Syntax {
            line,
            column,
            message: format!("expected two integers, found {} fields", fields.len()),
        });
    }
    let parse = |(column, tok): (usize, &str)| {
        tok.parse::<usize>().map_err(|_| ParseError::Syntax {
            line,
            column,
            message: format!("expected a non-negative integer, found {tok:?}"),
        })
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

/// Reads a graph from a byte stream in the text format.
pub fn read_graph<R: Read>(mut reader: R) -> Result<Graph, ParseError> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    Graph::parse(std::str::from_utf8(&bytes)?)
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.order(), self.size())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl std::str::FromStr for Graph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Self {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Connected components, ordered by their minimum vertex. Each component's
/// vertex list is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    components: Vec<Vec<usize>>,
    label: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn parity(&self, idx: usize) -> Parity {
        Parity::of(self.components[idx].len())
    }

    /// Index of the component containing `v`.
    pub fn component_of(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn odd_count(&self) -> usize {
        self.components.iter().filter(|c| c.len() % 2 == 1).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], Parity)> {
        self.components
            .iter()
            .map(|c| (c.as_slice(), Parity::of(c.len())))
    }
}

/// Breadth-first component labelling. Components come out sorted by
/// minimum vertex because roots are taken in increasing id order.
pub fn components(g: &Graph) -> ComponentDecomposition {
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut queue = Vec::new();
    for root in 0..n {
        if label[root] != usize::MAX {
            continue;
        }
        let id = comps.len();
        label[root] = id;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &w in g.neighbors(v) {
                if label[w] == usize::MAX {
                    label[w] = id;
                    queue.push(w);
                }
            }
        }
        let mut comp = queue.clone();
        comp.sort_unstable();
        comps.push(comp);
    }
    ComponentDecomposition {
        components: comps,
        label,
    }
}

/// Old-to-new vertex relabelling produced by [`delete_vertices`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl VertexMap {
    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn kept(&self) -> &[usize] {
        &self.new_to_old
    }
}

fn removal_mask(n: usize, s: &[usize]) -> Result<Vec<bool>, GraphError> {
    let mut removed = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        removed[v] = true;
    }
    Ok(removed)
}

/// `G \ S`: removes the vertices of `s` (duplicates ignored) and compacts
/// the remaining ids, preserving their relative order.
pub fn delete_vertices(g: &Graph, s: &[usize]) -> Result<(Graph, VertexMap), GraphError> {
    let n = g.order();
    let removed = removal_mask(n, s)?;
    let mut old_to_new = vec![None; n];
    let mut new_to_old = Vec::with_capacity(n);
    for v in 0..n {
        if !removed[v] {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
    }
    let mut adj = Vec::with_capacity(new_to_old.len());
    let mut m2 = 0;
    for &old in &new_to_old {
        // Relabelling is monotone, so the filtered lists stay sorted.
        let nbrs: Vec<usize> = g
            .neighbors(old)
            .iter()
            .filter_map(|&w| old_to_new[w])
            .collect();
        m2 += nbrs.len();
        adj.push(nbrs);
    }
    let h = Graph { adj, m: m2 / 2 };
    Ok((
        h,
        VertexMap {
            old_to_new,
            new_to_old,
        },
    ))
}

/// `G - v`.
pub fn delete_vertex(g: &Graph, v: usize) -> Result<(Graph, VertexMap), GraphError> {
    delete_vertices(g, &[v])
}

/// Subgraph induced by `keep`, compacted like [`delete_vertices`].
pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> Result<(Graph, VertexMap), GraphError> {
    let n = g.order();
    let mut removed = vec![true; n];
    for &v in keep {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        removed[v] = false;
    }
    let drop: Vec<usize> = (0..n).filter(|&v| removed[v]).collect();
    delete_vertices(g, &drop)
}

/// `o(G \ S)`, computed in place without building the reduced graph.
pub fn count_odd_components(g: &Graph, s: &[usize]) -> Result<usize, GraphError> {
    let n = g.order();
    let mut seen = removal_mask(n, s)?;
    let mut stack = Vec::new();
    let mut odd = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        let mut size = 0usize;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        odd += size & 1;
    }
    Ok(odd)
}

/// Adjacency as bitmasks, for graphs of order at most 64.
#[derive(Debug, Clone)]
pub(crate) struct BitGraph {
    adj: Vec<u64>,
}

impl BitGraph {
    pub(crate) fn new(g: &Graph) -> Option<Self> {
        if g.order() > 64 {
            return None;
        }
        let adj = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect();
        Some(BitGraph { adj })
    }

    fn full(&self) -> u64 {
        match self.adj.len() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    /// Odd components of the subgraph induced by the complement of `removed`.
    pub(crate) fn odd_components(&self, removed: u64) -> usize {
        let mut left = self.full() & !removed;
        let mut odd = 0;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & left & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            odd += comp.count_ones() as usize & 1;
            left &= !comp;
        }
        odd
    }
}
