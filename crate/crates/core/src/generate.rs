//! Deterministic graph generators.
//!
//! # Random graphs
//!
//! [`random_graph`] draws an Erdős–Rényi `G(n, p)` graph from a fixed,
//! documented generator so that a seed reproduces the same graph in any
//! language:
//!
//! 1. The state is seeded with one step of SplitMix64 applied to `seed`:
//!    `z = seed + 0x9E3779B97F4A7C15; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//!    z = (z ^ (z >> 27)) * 0x94D049BB133111EB; state = z ^ (z >> 31)`
//!    (wrapping arithmetic). A zero state is replaced by `0x9E3779B97F4A7C15`.
//! 2. Each draw is one xorshift64* step:
//!    `x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x * 0x2545F4914F6CDD1D`.
//! 3. A uniform `f64` in `[0, 1)` is `(out >> 11) * 2^-53`.
//! 4. Pairs `(u, v)`, `u < v`, are visited in lexicographic order and one
//!    draw is consumed per pair; the edge is kept when the draw is `< p`.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Path,
    Cycle,
    Complete,
    Star,
    Empty,
}

impl std::str::FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(GraphKind::Path),
            "cycle" => Ok(GraphKind::Cycle),
            "complete" => Ok(GraphKind::Complete),
            "star" => Ok(GraphKind::Star),
            "empty" => Ok(GraphKind::Empty),
            other => Err(format!("unknown graph kind {other:?}")),
        }
    }
}

/// Standard families on `n` vertices.
///
/// `Cycle` with `n < 3` degenerates to the path of the same order.
/// `Star` is `K_{1,n-1}` centered at vertex 0.
pub fn generate(kind: GraphKind, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = match kind {
        GraphKind::Empty => Vec::new(),
        GraphKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
        GraphKind::Cycle if n < 3 => return generate(GraphKind::Path, n),
        GraphKind::Cycle => (1..n).map(|v| (v - 1, v)).chain([(0, n - 1)]).collect(),
        GraphKind::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        GraphKind::Star => (1..n).map(|v| (0, v)).collect(),
    };
    Graph::from_edges(n, edges).expect("generated edges are simple")
}

pub fn path(n: usize) -> Graph {
    generate(GraphKind::Path, n)
}

pub fn cycle(n: usize) -> Graph {
    generate(GraphKind::Cycle, n)
}

pub fn complete(n: usize) -> Graph {
    generate(GraphKind::Complete, n)
}

pub fn star(n: usize) -> Graph {
    generate(GraphKind::Star, n)
}

/// `g1 ⊔ g2`, with `g2`'s vertices shifted up by `g1.order()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let off = g1.order();
    let edges = g1
        .edges()
        .chain(g2.edges().map(|(u, v)| (u + off, v + off)));
    Graph::from_edges(off + g2.order(), edges).expect("union of simple graphs is simple")
}

/// xorshift64* seeded through SplitMix64; see the module docs.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        if z == 0 {
            z = 0x9E37_79B9_7F4A_7C15;
        }
        XorShift64Star { state: z }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` (`bound > 0`), by multiply-shift.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

/// `G(n, p)` from the generator in the module docs.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!(
        (0.0..=1.0).contains(&p),
        "edge probability {p} outside [0, 1]"
    );
    let mut rng = XorShift64Star::new(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}
