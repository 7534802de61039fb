//! Maximum cardinality matching with Edmonds' blossom algorithm.
//!
//! The engine keeps a `base` array: contracting a blossom points every
//! vertex of the odd cycle at the blossom's base, which is the explicit
//! contraction step, and each search costs `O(n^2)` for `O(n^3)` overall.
//!
//! Scan order is fixed so that results are reproducible: the initial
//! matching is taken greedily over the lexicographically sorted edge list,
//! free vertices are grown in increasing id order, the search is a FIFO
//! breadth-first search, and neighbors are visited in increasing id order.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("{{{0}, {1}}} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("edges {{{}, {}}} and {{{}, {}}} share vertex {vertex}", first.0, first.1, second.0, second.1)]
    SharedEndpoint {
        vertex: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
}

/// A set of pairwise vertex-disjoint edges, stored as sorted `(u, v)` pairs
/// with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Validates `edges` against `g`.
    pub fn new<I>(g: &Graph, edges: I) -> Result<Self, MatchingError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut owner: Vec<Option<(usize, usize)>> = vec![None; g.order()];
        let mut out = Vec::new();
        for (a, b) in edges {
            let e = (a.min(b), a.max(b));
            if !g.has_edge(e.0, e.1) {
                return Err(MatchingError::NotAnEdge(e.0, e.1));
            }
            for w in [e.0, e.1] {
                if let Some(first) = owner[w] {
                    return Err(MatchingError::SharedEndpoint {
                        vertex: w,
                        first,
                        second: e,
                    });
                }
                owner[w] = Some(e);
            }
            out.push(e);
        }
        out.sort_unstable();
        Ok(Matching { edges: out })
    }

    /// Builds from a mate array where `mate[v] == NIL` means free.
    fn from_mates(mate: &[usize]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(v, &w)| w != NIL && v < w)
            .map(|(v, &w)| (v, w))
            .collect();
        Matching { edges }
    }

    /// Trusted constructor for callers that already hold a valid matching.
    pub(crate) fn from_edges_unchecked(mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn saturates(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Endpoints of the matching, sorted.
    pub fn saturated(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        s.sort_unstable();
        s
    }

    pub fn mate_of(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(a, b)| match v {
            _ if v == a => Some(b),
            _ if v == b => Some(a),
            _ => None,
        })
    }

    /// Maps vertex ids through `f`, e.g. back to the ids of a parent graph.
    pub fn relabel(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Matching::from_edges_unchecked(self.edges.iter().map(|&(a, b)| (f(a), f(b))).collect())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// A matching missing exactly one vertex of its host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearFactor {
    pub matching: Matching,
    pub unsaturated: usize,
}

impl fmt::Display for NearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matching)?;
        writeln!(f, "unsaturated: {}", self.unsaturated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    None,
    Even,
    Odd,
}

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    label: Vec<Label>,
    root: Vec<usize>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

/// Outcome of growing alternating trees.
enum Grow {
    /// Free vertex reached; augment back from it.
    Free(usize),
    /// Two trees touched along an edge; the matching is not maximum.
    Bridge,
    Exhausted,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph, mate: Vec<usize>) -> Self {
        let n = g.order();
        Blossom {
            g,
            mate,
            parent: vec![NIL; n],
            base: (0..n).collect(),
            label: vec![Label::None; n],
            root: vec![NIL; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        self.parent.fill(NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.label.fill(Label::None);
        self.root.fill(NIL);
        self.queue.clear();
    }

    fn plant(&mut self, r: usize) {
        self.label[r] = Label::Even;
        self.root[r] = r;
        self.queue.push_back(r);
    }

    /// Nearest common base of two even vertices of one tree.
    fn common_base(&mut self, a: usize, b: usize) -> usize {
        self.on_path.fill(false);
        let mut a = a;
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        let mut b = b;
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    fn contract(&mut self, v: usize, u: usize) {
        let b = self.common_base(v, u);
        self.in_blossom.fill(false);
        self.mark_path(v, b, u);
        self.mark_path(u, b, v);
        let r = self.root[v];
        for i in 0..self.g.order() {
            if self.in_blossom[self.base[i]] {
                self.base[i] = b;
                if self.label[i] != Label::Even {
                    self.label[i] = Label::Even;
                    self.root[i] = r;
                    self.queue.push_back(i);
                }
            }
        }
    }

    fn grow(&mut self) -> Grow {
        let g = self.g;
        while let Some(v) = self.queue.pop_front() {
            for &u in g.neighbors(v) {
                if self.base[v] == self.base[u] || self.mate[v] == u {
                    continue;
                }
                match self.label[u] {
                    Label::Even if self.root[u] != self.root[v] => return Grow::Bridge,
                    Label::Even => self.contract(v, u),
                    Label::Odd => {}
                    Label::None => {
                        self.parent[u] = v;
                        self.label[u] = Label::Odd;
                        self.root[u] = self.root[v];
                        let w = self.mate[u];
                        if w == NIL {
                            return Grow::Free(u);
                        }
                        self.label[w] = Label::Even;
                        self.root[w] = self.root[v];
                        self.queue.push_back(w);
                    }
                }
            }
        }
        Grow::Exhausted
    }

    fn augment(&mut self, mut v: usize) {
        while v != NIL {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn free_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.g.order()).filter(|&v| self.mate[v] == NIL)
    }

    fn maximize(&mut self) {
        for r in 0..self.g.order() {
            if self.mate[r] != NIL {
                continue;
            }
            self.reset();
            self.plant(r);
            if let Grow::Free(end) = self.grow() {
                self.augment(end);
            }
        }
    }

    /// Grows a forest from every free vertex at once. Returns `false` when an
    /// augmenting path exists.
    fn grow_forest(&mut self) -> bool {
        self.reset();
        let free: Vec<usize> = self.free_vertices().collect();
        for r in free {
            self.plant(r);
        }
        match self.grow() {
            Grow::Exhausted => true,
            Grow::Free(_) | Grow::Bridge => false,
        }
    }
}

fn greedy_mates(g: &Graph) -> Vec<usize> {
    let mut mate = vec![NIL; g.order()];
    for (u, v) in g.edges() {
        if mate[u] == NIL && mate[v] == NIL {
            mate[u] = v;
            mate[v] = u;
        }
    }
    mate
}

/// Greedy maximal matching over the sorted edge list.
pub fn greedy_matching(g: &Graph) -> Matching {
    Matching::from_mates(&greedy_mates(g))
}

/// A maximum cardinality matching of `g`.
pub fn max_matching(g: &Graph) -> Matching {
    let mut engine = Blossom::new(g, greedy_mates(g));
    engine.maximize();
    Matching::from_mates(&engine.mate)
}

pub(crate) fn max_matching_size(g: &Graph) -> usize {
    max_matching(g).len()
}

/// Whether `m` (a valid matching of `g`) admits an augmenting path.
pub fn has_augmenting_path(g: &Graph, m: &Matching) -> bool {
    let mut mate = vec![NIL; g.order()];
    for &(u, v) in m.edges() {
        mate[u] = v;
        mate[v] = u;
    }
    !Blossom::new(g, mate).grow_forest()
}

/// A Tutte–Berge barrier: a set `A` with `o(G \ A) - |A| = n - 2ν(G)`.
///
/// `A` is the set of inner vertices of the alternating forest grown from
/// all free vertices of a maximum matching. It certifies maximality: no
/// matching can beat `(n + |A| - o(G \ A)) / 2`.
pub fn tutte_berge_barrier(g: &Graph) -> Vec<usize> {
    let mut engine = Blossom::new(g, greedy_mates(g));
    engine.maximize();
    let done = engine.grow_forest();
    debug_assert!(done, "forest of a maximum matching has no augmenting path");
    (0..g.order())
        .filter(|&v| engine.label[v] == Label::Odd)
        .collect()
}

/// True iff `g` has a 1-factor. The order-0 graph has the empty one.
pub fn has_perfect_matching(g: &Graph) -> bool {
    g.order() % 2 == 0 && 2 * max_matching_size(g) == g.order()
}

/// A near-factor of `g`, if any. Requires odd order, so the order-0 graph
/// has none.
pub fn find_near_factor(g: &Graph) -> Option<NearFactor> {
    let n = g.order();
    if n % 2 == 0 {
        return None;
    }
    let matching = max_matching(g);
    if 2 * matching.len() + 1 != n {
        return None;
    }
    let mut covered = vec![false; n];
    for &(u, v) in matching.edges() {
        covered[u] = true;
        covered[v] = true;
    }
    let unsaturated = covered.iter().position(|&c| !c)?;
    Some(NearFactor {
        matching,
        unsaturated,
    })
}

/// `V(g)` minus the endpoints of `m`, after checking that `m` is a matching
/// of `g`.
pub fn unsaturated_vertices(g: &Graph, m: &Matching) -> Result<Vec<usize>, MatchingError> {
    let checked = Matching::new(g, m.edges().iter().copied())?;
    let mut covered = vec![false; g.order()];
    for &(u, v) in checked.edges() {
        covered[u] = true;
        covered[v] = true;
    }
    Ok(g.vertices().filter(|&v| !covered[v]).collect())
}
