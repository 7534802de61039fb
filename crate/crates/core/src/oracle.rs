//! Brute-force matching enumeration.
//!
//! Plain backtracking over the sorted edge list. Nothing here touches the
//! blossom engine, so the two can disagree when one of them is wrong.

use thiserror::Error;

use crate::graph::Graph;
use crate::matching::Matching;

/// Largest order the enumerator accepts.
pub const ORACLE_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle enumeration limited to order {limit}, graph has order {order}")]
pub struct OracleGuard {
    pub order: usize,
    pub limit: usize,
}

fn guard(g: &Graph) -> Result<(), OracleGuard> {
    if g.order() > ORACLE_MAX_ORDER {
        Err(OracleGuard {
            order: g.order(),
            limit: ORACLE_MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Every matching of `g` exactly once, the empty matching first.
///
/// The sequence is lexicographic in the list of chosen edge indices.
#[derive(Debug)]
pub struct Matchings {
    edges: Vec<(usize, usize)>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    // frames[d] is the next edge index to try at depth d.
    frames: Vec<usize>,
    started: bool,
}

impl Matchings {
    fn current(&self) -> Matching {
        Matching::from_edges_unchecked(self.chosen.iter().map(|&i| self.edges[i]).collect())
    }

    /// Advances to the next matching without materializing it.
    fn step(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.frames.push(0);
            return true;
        }
        while let Some(&start) = self.frames.last() {
            let next = (start..self.edges.len()).find(|&j| {
                let (u, v) = self.edges[j];
                !self.used[u] && !self.used[v]
            });
            match next {
                Some(j) => {
                    *self.frames.last_mut().unwrap() = j + 1;
                    let (u, v) = self.edges[j];
                    self.used[u] = true;
                    self.used[v] = true;
                    self.chosen.push(j);
                    self.frames.push(j + 1);
                    return true;
                }
                None => {
                    self.frames.pop();
                    if let Some(j) = self.chosen.pop() {
                        let (u, v) = self.edges[j];
                        self.used[u] = false;
                        self.used[v] = false;
                    }
                }
            }
        }
        false
    }
}

impl Iterator for Matchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        self.step().then(|| self.current())
    }
}

pub fn enumerate_matchings(g: &Graph) -> Result<Matchings, OracleGuard> {
    guard(g)?;
    Ok(Matchings {
        edges: g.edges().collect(),
        used: vec![false; g.order()],
        chosen: Vec::new(),
        frames: Vec::new(),
        started: false,
    })
}

/// Visits the size of every matching.
fn for_each_size(g: &Graph, mut f: impl FnMut(usize)) -> Result<(), OracleGuard> {
    let mut it = enumerate_matchings(g)?;
    while it.step() {
        f(it.chosen.len());
    }
    Ok(())
}

pub fn count_matchings(g: &Graph) -> Result<u64, OracleGuard> {
    let mut count = 0u64;
    for_each_size(g, |_| count += 1)?;
    Ok(count)
}

pub fn max_matching_size_brute(g: &Graph) -> Result<usize, OracleGuard> {
    let mut best = 0;
    for_each_size(g, |k| best = best.max(k))?;
    Ok(best)
}

/// Some matching saturates every vertex.
pub fn has_perfect_brute(g: &Graph) -> Result<bool, OracleGuard> {
    let n = g.order();
    let mut found = false;
    for_each_size(g, |k| found |= 2 * k == n)?;
    Ok(found)
}

/// Some matching saturates all vertices except exactly one.
pub fn has_near_factor_brute(g: &Graph) -> Result<bool, OracleGuard> {
    let n = g.order();
    let mut found = false;
    for_each_size(g, |k| found |= 2 * k + 1 == n)?;
    Ok(found)
}

/// All near-factors of `g` as `(matching, unsaturated vertex)`.
pub fn near_factors_brute(g: &Graph) -> Result<Vec<(Matching, usize)>, OracleGuard> {
    let n = g.order();
    Ok(enumerate_matchings(g)?
        .filter(|m| 2 * m.len() + 1 == n)
        .map(|m| {
            let mut covered = vec![false; n];
            for &(u, v) in m.edges() {
                covered[u] = true;
                covered[v] = true;
            }
            let u = covered.iter().position(|&c| !c).expect("one vertex left");
            (m, u)
        })
        .collect())
}
