//! Factor-critical and near-factor-critical recognition.
//!
//! A graph is *factor-critical* when `G - v` has a 1-factor for every
//! vertex `v`, and *near-factor-critical* (NFC) when every `G - v` has a
//! near-factor. NFC is decided two ways:
//!
//! * by definition, one near-factor query per vertex deletion;
//! * structurally: odd order never qualifies, a connected graph qualifies
//!   iff it has a 1-factor, and a disconnected graph qualifies iff either
//!   every component is even with a 1-factor, or there are exactly two
//!   components and both are factor-critical.
//!
//! Every verdict carries a witness that [`recheck`] validates without
//! trusting the route that produced it.
//!
//! The order-0 graph is NFC and factor-critical vacuously.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    components, count_odd_components, delete_vertex, induced_subgraph, BitGraph, Graph,
};
use crate::matching::{
    find_near_factor, has_perfect_matching, max_matching, tutte_berge_barrier, Matching, NearFactor,
};

/// Default largest order for the exhaustive Tutte-set search.
pub const TUTTE_DEFAULT_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Nfc,
    FactorCritical,
    PerfectMatching,
    NearFactor,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Nfc => "nfc",
            Property::FactorCritical => "factor-critical",
            Property::PerfectMatching => "perfect-matching",
            Property::NearFactor => "near-factor",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Definition,
    Theorem,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Definition => "definition",
            Route::Theorem => "theorem",
        }
    }
}

/// Which structural case makes a graph NFC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructuralCase {
    #[serde(rename = "connected-with-1-factor")]
    ConnectedWithOneFactor,
    AllEvenComponents,
    TwoFactorCriticalComponents,
}

impl StructuralCase {
    pub fn name(self) -> &'static str {
        match self {
            StructuralCase::ConnectedWithOneFactor => "connected-with-1-factor",
            StructuralCase::AllEvenComponents => "all-even-components",
            StructuralCase::TwoFactorCriticalComponents => "two-factor-critical-components",
        }
    }
}

/// A set `S` with `o(G \ S) > |S|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TutteWitness {
    pub set: Vec<usize>,
    pub odd_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `G - vertex` lacks the required factor.
    FailingVertex {
        vertex: usize,
    },
    TutteSet(TutteWitness),
    /// Order has the wrong parity for the property.
    ParityFailure {
        n: usize,
    },
    Structural {
        #[serde(rename = "case")]
        case: StructuralCase,
    },
    PerfectMatching {
        matching: Matching,
    },
    NearFactor(NearFactor),
    /// For each vertex `v`, in order, a 1-factor of `G - v` in `G`'s ids.
    Deletions {
        matchings: Vec<Matching>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityVerdict {
    pub holds: bool,
    pub witness: Witness,
}

impl CriticalityVerdict {
    fn holds(witness: Witness) -> Self {
        CriticalityVerdict {
            holds: true,
            witness,
        }
    }

    fn fails(witness: Witness) -> Self {
        CriticalityVerdict {
            holds: false,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalityError {
    #[error("exhaustive Tutte search refused: order {n} exceeds limit {limit}")]
    TutteBoundExceeded { n: usize, limit: usize },
    #[error("{} has no theorem route", .0.name())]
    NoTheoremRoute(Property),
}

/// `G - v` has a 1-factor for every `v`.
pub fn is_factor_critical(g: &Graph) -> CriticalityVerdict {
    let n = g.order();
    let mut matchings = Vec::with_capacity(n);
    for v in g.vertices() {
        let (h, map) = delete_vertex(g, v).expect("vertex in range");
        let m = max_matching(&h);
        if 2 * m.len() != h.order() {
            return CriticalityVerdict::fails(Witness::FailingVertex { vertex: v });
        }
        matchings.push(m.relabel(|w| map.to_old(w)));
    }
    CriticalityVerdict::holds(Witness::Deletions { matchings })
}

fn factor_critical_holds(g: &Graph) -> bool {
    g.vertices().all(|v| {
        let (h, _) = delete_vertex(g, v).expect("vertex in range");
        has_perfect_matching(&h)
    })
}

/// The structural case suggested by component parities alone.
fn case_by_shape(g: &Graph) -> StructuralCase {
    let comps = components(g);
    if comps.len() == 1 {
        StructuralCase::ConnectedWithOneFactor
    } else if comps.odd_count() == 0 {
        StructuralCase::AllEvenComponents
    } else {
        StructuralCase::TwoFactorCriticalComponents
    }
}

/// NFC straight from the definition: one near-factor query per vertex.
pub fn is_nfc_by_definition(g: &Graph) -> CriticalityVerdict {
    for v in g.vertices() {
        let (h, _) = delete_vertex(g, v).expect("vertex in range");
        if find_near_factor(&h).is_none() {
            return CriticalityVerdict::fails(Witness::FailingVertex { vertex: v });
        }
    }
    CriticalityVerdict::holds(Witness::Structural {
        case: case_by_shape(g),
    })
}

/// NFC through the structural characterization, with one matching call per
/// component (plus per-vertex calls for two odd components).
pub fn is_nfc_by_theorem(g: &Graph) -> CriticalityVerdict {
    let n = g.order();
    if n == 0 {
        return CriticalityVerdict::holds(Witness::Structural {
            case: StructuralCase::AllEvenComponents,
        });
    }
    if n % 2 == 1 {
        return CriticalityVerdict::fails(Witness::ParityFailure { n });
    }
    let comps = components(g);
    if comps.len() == 1 {
        return if has_perfect_matching(g) {
            CriticalityVerdict::holds(Witness::Structural {
                case: StructuralCase::ConnectedWithOneFactor,
            })
        } else {
            let set = tutte_berge_barrier(g);
            let odd_count = count_odd_components(g, &set).expect("barrier in range");
            CriticalityVerdict::fails(Witness::TutteSet(TutteWitness { set, odd_count }))
        };
    }

    let odd = comps.odd_count();
    let parts = comps.components();
    // Deleting v from one component must leave the others with factors.
    let outside = |idx: usize| {
        g.vertices()
            .find(|&v| comps.component_of(v) != idx)
            .expect("at least two components")
    };

    if odd > 0 && odd < parts.len() {
        // Mixed parities: removing a vertex of an even component leaves two
        // odd pieces that both need an unsaturated vertex.
        let even = (0..parts.len()).find(|&i| parts[i].len() % 2 == 0).unwrap();
        return CriticalityVerdict::fails(Witness::FailingVertex {
            vertex: parts[even][0],
        });
    }
    if odd == 0 {
        for (i, part) in parts.iter().enumerate() {
            let (h, _) = induced_subgraph(g, part).expect("component in range");
            if !has_perfect_matching(&h) {
                return CriticalityVerdict::fails(Witness::FailingVertex { vertex: outside(i) });
            }
        }
        return CriticalityVerdict::holds(Witness::Structural {
            case: StructuralCase::AllEvenComponents,
        });
    }
    if parts.len() != 2 {
        // At least four odd components: G - v keeps three of them intact.
        return CriticalityVerdict::fails(Witness::FailingVertex { vertex: 0 });
    }
    for part in parts {
        let (h, map) = induced_subgraph(g, part).expect("component in range");
        if let Witness::FailingVertex { vertex } = is_factor_critical(&h).witness {
            return CriticalityVerdict::fails(Witness::FailingVertex {
                vertex: map.to_old(vertex),
            });
        }
    }
    CriticalityVerdict::holds(Witness::Structural {
        case: StructuralCase::TwoFactorCriticalComponents,
    })
}

/// Perfect matching check. The definition route runs the blossom engine and
/// explains failure with a Tutte–Berge barrier; the theorem route runs the
/// exhaustive Tutte-set search.
pub fn check_perfect_matching(
    g: &Graph,
    route: Route,
) -> Result<CriticalityVerdict, CriticalityError> {
    let n = g.order();
    if n % 2 == 1 {
        return Ok(CriticalityVerdict::fails(Witness::ParityFailure { n }));
    }
    match route {
        Route::Definition => {
            let m = max_matching(g);
            if 2 * m.len() == n {
                Ok(CriticalityVerdict::holds(Witness::PerfectMatching {
                    matching: m,
                }))
            } else {
                let set = tutte_berge_barrier(g);
                let odd_count = count_odd_components(g, &set).expect("barrier in range");
                Ok(CriticalityVerdict::fails(Witness::TutteSet(TutteWitness {
                    set,
                    odd_count,
                })))
            }
        }
        Route::Theorem => Ok(match tutte_witness(g)? {
            Some(w) => CriticalityVerdict::fails(Witness::TutteSet(w)),
            None => CriticalityVerdict::holds(Witness::PerfectMatching {
                matching: max_matching(g),
            }),
        }),
    }
}

pub fn check_near_factor(g: &Graph) -> CriticalityVerdict {
    let n = g.order();
    if n % 2 == 0 {
        return CriticalityVerdict::fails(Witness::ParityFailure { n });
    }
    match find_near_factor(g) {
        Some(nf) => CriticalityVerdict::holds(Witness::NearFactor(nf)),
        None => {
            let set = tutte_berge_barrier(g);
            let odd_count = count_odd_components(g, &set).expect("barrier in range");
            CriticalityVerdict::fails(Witness::TutteSet(TutteWitness { set, odd_count }))
        }
    }
}

/// Dispatches a property/route pair.
pub fn check(
    g: &Graph,
    property: Property,
    route: Route,
) -> Result<CriticalityVerdict, CriticalityError> {
    match (property, route) {
        (Property::Nfc, Route::Definition) => Ok(is_nfc_by_definition(g)),
        (Property::Nfc, Route::Theorem) => Ok(is_nfc_by_theorem(g)),
        (Property::FactorCritical, Route::Definition) => Ok(is_factor_critical(g)),
        (Property::PerfectMatching, route) => check_perfect_matching(g, route),
        (Property::NearFactor, Route::Definition) => Ok(check_near_factor(g)),
        (p, Route::Theorem) => Err(CriticalityError::NoTheoremRoute(p)),
    }
}

/// Smallest, then lexicographically least, `S` with `o(G \ S) > |S|`.
/// Refuses graphs above [`TUTTE_DEFAULT_LIMIT`].
pub fn tutte_witness(g: &Graph) -> Result<Option<TutteWitness>, CriticalityError> {
    tutte_witness_with_limit(g, TUTTE_DEFAULT_LIMIT)
}

pub fn tutte_witness_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<Option<TutteWitness>, CriticalityError> {
    let n = g.order();
    if n > limit {
        return Err(CriticalityError::TutteBoundExceeded { n, limit });
    }
    let bits = BitGraph::new(g);
    let odd_after = |s: &[usize]| match &bits {
        Some(b) => b.odd_components(s.iter().fold(0u64, |acc, &v| acc | 1 << v)),
        None => count_odd_components(g, s).expect("subset in range"),
    };
    // o(G \ S) <= n - |S|, so only |S| < n / 2 can violate.
    for k in 0..=n {
        if 2 * k >= n && k > 0 {
            break;
        }
        let mut set: Vec<usize> = (0..k).collect();
        loop {
            let odd_count = odd_after(&set);
            if odd_count > k {
                return Ok(Some(TutteWitness { set, odd_count }));
            }
            if !next_combination(&mut set, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `c` to the next `c.len()`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Lemma1Error {
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("given set is not the vertex set of an odd component of G \\ S")]
    NotOddComponent,
    #[error("deleted vertex {0} lies in the component")]
    VertexInComponent(usize),
    #[error("matching is not a near-factor of G - v: {0}")]
    NotNearFactor(String),
    #[error("unsaturated vertex {0} lies in the component")]
    UnsaturatedInComponent(usize),
}

/// Given `S`, an odd component `H` of `G \ S`, a vertex `v` outside `H` and
/// a near-factor `M` of `G - v` (in `G`'s ids) whose unsaturated vertex is
/// outside `H`, reports whether some edge of `M` joins `S` to `H`.
///
/// Each precondition is checked and reported on its own.
pub fn check_lemma1(
    g: &Graph,
    s: &[usize],
    h: &[usize],
    v: usize,
    m: &Matching,
) -> Result<bool, Lemma1Error> {
    let n = g.order();
    let range = |w: usize| {
        if w < n {
            Ok(())
        } else {
            Err(Lemma1Error::VertexOutOfRange { vertex: w, n })
        }
    };
    for &w in s.iter().chain(h).chain([&v]) {
        range(w)?;
    }
    if !g.is_connected() {
        return Err(Lemma1Error::Disconnected);
    }

    let mut in_s = vec![false; n];
    for &w in s {
        in_s[w] = true;
    }
    let mut in_h = vec![false; n];
    for &w in h {
        in_h[w] = true;
    }
    if !is_odd_component(g, &in_s, &in_h) {
        return Err(Lemma1Error::NotOddComponent);
    }
    if in_h[v] {
        return Err(Lemma1Error::VertexInComponent(v));
    }

    let mut covered = vec![false; n];
    for &(a, b) in m.edges() {
        range(a)?;
        range(b)?;
        if !g.has_edge(a, b) {
            return Err(Lemma1Error::NotNearFactor(format!(
                "{{{a}, {b}}} is not an edge"
            )));
        }
        for w in [a, b] {
            if w == v {
                return Err(Lemma1Error::NotNearFactor(format!(
                    "edge {{{a}, {b}}} uses {v}"
                )));
            }
            if covered[w] {
                return Err(Lemma1Error::NotNearFactor(format!(
                    "vertex {w} matched twice"
                )));
            }
            covered[w] = true;
        }
    }
    let free: Vec<usize> = (0..n).filter(|&w| w != v && !covered[w]).collect();
    let [u] = free[..] else {
        return Err(Lemma1Error::NotNearFactor(format!(
            "{} unsaturated vertices in G - v",
            free.len()
        )));
    };
    if in_h[u] {
        return Err(Lemma1Error::UnsaturatedInComponent(u));
    }

    Ok(m.edges()
        .iter()
        .any(|&(a, b)| (in_s[a] && in_h[b]) || (in_s[b] && in_h[a])))
}

/// `in_h` marks exactly one component of `G \ S`, of odd order.
fn is_odd_component(g: &Graph, in_s: &[bool], in_h: &[bool]) -> bool {
    let Some(start) = in_h.iter().position(|&x| x) else {
        return false;
    };
    if in_s[start] {
        return false;
    }
    let mut seen = vec![false; g.order()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut size = 0;
    while let Some(x) = stack.pop() {
        if !in_h[x] {
            return false;
        }
        size += 1;
        for &y in g.neighbors(x) {
            if !in_s[y] && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    size == in_h.iter().filter(|&&x| x).count() && size % 2 == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{property} witness rejected: {reason}", property = .property.name())]
pub struct RecheckError {
    pub property: Property,
    pub reason: String,
}

/// Validates a verdict's witness from scratch.
///
/// Negative witnesses must prove the property fails; positive ones must
/// prove it holds. A `TutteSet` against NFC needs a non-empty `S`: removing
/// any `v` in `S` would leave `o(G \ S) - 1 > |S| - 1` odd components that
/// each need an edge into `S - v`.
pub fn recheck(
    g: &Graph,
    property: Property,
    verdict: &CriticalityVerdict,
) -> Result<(), RecheckError> {
    let n = g.order();
    let fail = |reason: String| Err(RecheckError { property, reason });
    let vertex_fails = |v: usize| -> bool {
        let (h, _) = delete_vertex(g, v).expect("checked range");
        match property {
            Property::Nfc => find_near_factor(&h).is_none(),
            _ => !has_perfect_matching(&h),
        }
    };

    match (&verdict.witness, verdict.holds) {
        (Witness::ParityFailure { n: wn }, false) => {
            let obstruction = match property {
                Property::Nfc | Property::PerfectMatching => n % 2 == 1,
                Property::NearFactor => n % 2 == 0,
                Property::FactorCritical => n % 2 == 0 && n > 0,
            };
            if *wn != n || !obstruction {
                return fail(format!("order {n} is not a parity obstruction"));
            }
        }
        (Witness::FailingVertex { vertex }, false) => {
            if !matches!(property, Property::Nfc | Property::FactorCritical) {
                return fail("failing vertex does not apply".into());
            }
            if *vertex >= n {
                return fail(format!("vertex {vertex} out of range"));
            }
            if !vertex_fails(*vertex) {
                return fail(format!("G - {vertex} has the required factor"));
            }
        }
        (Witness::TutteSet(w), false) => {
            if w.set.iter().any(|&v| v >= n) {
                return fail("set vertex out of range".into());
            }
            let odd = count_odd_components(g, &w.set).expect("checked range");
            if odd != w.odd_count {
                return fail(format!(
                    "claimed {} odd components, found {odd}",
                    w.odd_count
                ));
            }
            let k = w.set.len();
            let ok = match property {
                Property::PerfectMatching => odd > k,
                Property::NearFactor => odd > k + 1,
                Property::Nfc => k > 0 && odd > k && vertex_fails(w.set[0]),
                Property::FactorCritical => false,
            };
            if !ok {
                return fail(format!(
                    "o(G \\ S) = {odd} with |S| = {k} is no obstruction"
                ));
            }
        }
        (Witness::Structural { case }, true) if property == Property::Nfc => {
            if !structural_case_holds(g, *case) {
                return fail(format!("case {} does not apply", case.name()));
            }
        }
        (Witness::PerfectMatching { matching }, true) if property == Property::PerfectMatching => {
            if Matching::new(g, matching.edges().iter().copied()).is_err()
                || 2 * matching.len() != n
            {
                return fail("not a perfect matching".into());
            }
        }
        (Witness::NearFactor(nf), true) if property == Property::NearFactor => {
            let valid = Matching::new(g, nf.matching.edges().iter().copied()).is_ok();
            if !valid
                || 2 * nf.matching.len() + 1 != n
                || nf.unsaturated >= n
                || nf.matching.saturates(nf.unsaturated)
            {
                return fail("not a near-factor".into());
            }
        }
        (Witness::Deletions { matchings }, true) if property == Property::FactorCritical => {
            if matchings.len() != n {
                return fail(format!("{} deletions for order {n}", matchings.len()));
            }
            for (v, m) in matchings.iter().enumerate() {
                let valid = Matching::new(g, m.edges().iter().copied()).is_ok();
                if !valid || m.saturates(v) || 2 * m.len() + 1 != n {
                    return fail(format!("no 1-factor of G - {v}"));
                }
            }
        }
        (w, holds) => return fail(format!("witness {w:?} cannot certify holds={holds}")),
    }
    Ok(())
}

fn structural_case_holds(g: &Graph, case: StructuralCase) -> bool {
    let comps = components(g);
    let each = |pred: &dyn Fn(&Graph) -> bool| {
        comps.components().iter().all(|part| {
            let (h, _) = induced_subgraph(g, part).expect("component in range");
            pred(&h)
        })
    };
    match case {
        StructuralCase::ConnectedWithOneFactor => comps.len() == 1 && has_perfect_matching(g),
        StructuralCase::AllEvenComponents => {
            comps.odd_count() == 0 && each(&|h| has_perfect_matching(h))
        }
        StructuralCase::TwoFactorCriticalComponents => {
            comps.len() == 2 && comps.odd_count() == 2 && each(&factor_critical_holds)
        }
    }
}

/// The machine-readable verdict report.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Witness,
    pub route: Route,
    pub n: usize,
    pub m: usize,
}

impl VerdictReport {
    pub fn new(g: &Graph, property: Property, route: Route, verdict: CriticalityVerdict) -> Self {
        VerdictReport {
            property,
            holds: verdict.holds,
            witness: verdict.witness,
            route,
            n: g.order(),
            m: g.size(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, disjoint_union, path, star};

    fn two_triangles() -> Graph {
        disjoint_union(&cycle(3), &cycle(3))
    }

    fn sound(g: &Graph, p: Property, v: &CriticalityVerdict) {
        recheck(g, p, v).unwrap_or_else(|e| panic!("{e} for {g:?}"));
    }

    #[test]
    fn factor_critical_examples() {
        for g in [cycle(3), cycle(5), Graph::empty(0), Graph::empty(1)] {
            let v = is_factor_critical(&g);
            assert!(v.holds, "{g:?}");
            sound(&g, Property::FactorCritical, &v);
        }
        let k4 = complete(4);
        let v = is_factor_critical(&k4);
        assert!(!v.holds);
        sound(&k4, Property::FactorCritical, &v);
        assert!(!is_factor_critical(&path(3)).holds);
    }

    #[test]
    fn nfc_definition_examples() {
        let v = is_nfc_by_definition(&two_triangles());
        assert!(v.holds);
        assert_eq!(
            v.witness,
            Witness::Structural {
                case: StructuralCase::TwoFactorCriticalComponents
            }
        );
        assert!(is_nfc_by_definition(&complete(2)).holds);
        let k1 = is_nfc_by_definition(&Graph::empty(1));
        assert_eq!(
            k1,
            CriticalityVerdict::fails(Witness::FailingVertex { vertex: 0 })
        );
        assert!(is_nfc_by_definition(&Graph::empty(0)).holds);
    }

    #[test]
    fn nfc_theorem_examples() {
        let g = two_triangles();
        assert_eq!(
            is_nfc_by_theorem(&g),
            CriticalityVerdict::holds(Witness::Structural {
                case: StructuralCase::TwoFactorCriticalComponents
            })
        );
        let g = disjoint_union(&cycle(4), &complete(2));
        assert_eq!(
            is_nfc_by_theorem(&g),
            CriticalityVerdict::holds(Witness::Structural {
                case: StructuralCase::AllEvenComponents
            })
        );
        let g4 = disjoint_union(&two_triangles(), &two_triangles());
        let v = is_nfc_by_theorem(&g4);
        assert!(!v.holds);
        // Independent route agrees.
        assert!(!is_nfc_by_definition(&g4).holds);
        sound(&g4, Property::Nfc, &v);
        assert_eq!(
            is_nfc_by_theorem(&Graph::empty(3)).witness,
            Witness::ParityFailure { n: 3 }
        );
    }

    #[test]
    fn theorem_witnesses_recheck() {
        let cases = [
            star(4),                                 // connected, barrier {0}
            disjoint_union(&complete(2), &cycle(3)), // odd order
            disjoint_union(&star(4), &complete(2)),  // even comp without 1-factor
            disjoint_union(&disjoint_union(&complete(2), &cycle(3)), &Graph::empty(1)), // mixed
            disjoint_union(&path(3), &cycle(3)),     // odd comp not factor-critical
            disjoint_union(&cycle(5), &cycle(3)),
        ];
        for g in &cases {
            let t = is_nfc_by_theorem(g);
            let d = is_nfc_by_definition(g);
            assert_eq!(t.holds, d.holds, "{g:?}");
            sound(g, Property::Nfc, &t);
            sound(g, Property::Nfc, &d);
        }
        let t = is_nfc_by_theorem(&star(4));
        assert_eq!(
            t.witness,
            Witness::TutteSet(TutteWitness {
                set: vec![0],
                odd_count: 3
            })
        );
    }

    #[test]
    fn tutte_examples() {
        assert_eq!(
            tutte_witness(&two_triangles()).unwrap(),
            Some(TutteWitness {
                set: vec![],
                odd_count: 2
            })
        );
        assert_eq!(
            tutte_witness(&star(4)).unwrap(),
            Some(TutteWitness {
                set: vec![0],
                odd_count: 3
            })
        );
        assert_eq!(tutte_witness(&complete(4)).unwrap(), None);
        assert_eq!(tutte_witness(&Graph::empty(0)).unwrap(), None);
        assert_eq!(
            tutte_witness(&Graph::empty(21)).unwrap_err(),
            CriticalityError::TutteBoundExceeded { n: 21, limit: 20 }
        );
        assert!(tutte_witness_with_limit(&Graph::empty(21), 21)
            .unwrap()
            .is_some());
    }

    #[test]
    fn tutte_prefers_lexicographically_least() {
        // Two claws sharing the edge {1, 4}: both {1} and {4} violate the
        // condition, and the least singleton wins.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (1, 4), (3, 4), (4, 5)]).unwrap();
        assert_eq!(count_odd_components(&g, &[4]).unwrap(), 3);
        let w = tutte_witness(&g).unwrap().unwrap();
        assert_eq!(w.set, vec![1]);
        assert_eq!(w.odd_count, 3);
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    /// Triangle {0,1,2} with 2 attached to the path 3-4-5.
    fn triangle_with_tail() -> Graph {
        Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn lemma1_holds_on_triangle_with_tail() {
        let g = triangle_with_tail();
        // G \ {3} splits into the triangle and the edge {4, 5}.
        let s = [3];
        let h = [0, 1, 2];
        let v = 5;
        let nfs = crate::oracle::near_factors_brute(&delete_vertex(&g, v).unwrap().0).unwrap();
        assert!(!nfs.is_empty());
        for (m, u) in nfs {
            if h.contains(&u) {
                continue;
            }
            // G - 5 keeps ids 0..5 unchanged.
            assert!(check_lemma1(&g, &s, &h, v, &m).unwrap());
        }
    }

    #[test]
    fn lemma1_preconditions() {
        let g = triangle_with_tail();
        let m = Matching::new(&g, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            check_lemma1(&g, &[3], &[0, 1, 2], 1, &m).unwrap_err(),
            Lemma1Error::VertexInComponent(1)
        );
        let split = two_triangles();
        assert_eq!(
            check_lemma1(&split, &[], &[0, 1, 2], 3, &Matching::empty()).unwrap_err(),
            Lemma1Error::Disconnected
        );
        assert_eq!(
            check_lemma1(&g, &[3], &[0, 1], 5, &m).unwrap_err(),
            Lemma1Error::NotOddComponent
        );
        assert_eq!(
            check_lemma1(&g, &[2], &[0, 1], 5, &m).unwrap_err(),
            Lemma1Error::NotOddComponent
        );
        assert!(matches!(
            check_lemma1(
                &g,
                &[3],
                &[0, 1, 2],
                5,
                &Matching::new(&g, [(0, 1)]).unwrap()
            )
            .unwrap_err(),
            Lemma1Error::NotNearFactor(_)
        ));
        let m = Matching::new(&g, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(matches!(
            check_lemma1(&g, &[3], &[0, 1, 2], 5, &m).unwrap_err(),
            Lemma1Error::NotNearFactor(_)
        ));
        // Near-factor of G - 5 leaving 2 unsaturated, inside H.
        let m = Matching::new(&g, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(
            check_lemma1(&g, &[3], &[0, 1, 2], 5, &m).unwrap_err(),
            Lemma1Error::UnsaturatedInComponent(2)
        );
        assert_eq!(
            check_lemma1(&g, &[9], &[0], 5, &m).unwrap_err(),
            Lemma1Error::VertexOutOfRange { vertex: 9, n: 6 }
        );
    }

    #[test]
    fn recheck_rejects_forged_witnesses() {
        let g = complete(4);
        let forged = CriticalityVerdict::fails(Witness::FailingVertex { vertex: 0 });
        assert!(recheck(&g, Property::Nfc, &forged).is_err());
        let forged = CriticalityVerdict::fails(Witness::TutteSet(TutteWitness {
            set: vec![],
            odd_count: 0,
        }));
        assert!(recheck(&g, Property::PerfectMatching, &forged).is_err());
        // S = {} on two triangles is a genuine Tutte set but not an NFC obstruction.
        let forged = CriticalityVerdict::fails(Witness::TutteSet(TutteWitness {
            set: vec![],
            odd_count: 2,
        }));
        assert!(recheck(&two_triangles(), Property::Nfc, &forged).is_err());
        assert!(recheck(&two_triangles(), Property::PerfectMatching, &forged).is_ok());
        let forged = CriticalityVerdict::holds(Witness::Structural {
            case: StructuralCase::ConnectedWithOneFactor,
        });
        assert!(recheck(&star(4), Property::Nfc, &forged).is_err());
    }

    #[test]
    fn other_properties() {
        let v = check_perfect_matching(&two_triangles(), Route::Theorem).unwrap();
        assert_eq!(
            v.witness,
            Witness::TutteSet(TutteWitness {
                set: vec![],
                odd_count: 2
            })
        );
        for route in [Route::Definition, Route::Theorem] {
            for g in [two_triangles(), complete(4), star(4), path(5)] {
                let v = check_perfect_matching(&g, route).unwrap();
                sound(&g, Property::PerfectMatching, &v);
            }
        }
        for g in [path(3), star(5), cycle(4), Graph::empty(0), Graph::empty(1)] {
            let v = check_near_factor(&g);
            sound(&g, Property::NearFactor, &v);
        }
        assert!(!check_near_factor(&star(5)).holds);
        assert_eq!(
            check(&cycle(3), Property::FactorCritical, Route::Theorem).unwrap_err(),
            CriticalityError::NoTheoremRoute(Property::FactorCritical)
        );
    }

    #[test]
    fn json_report_shape() {
        let g = two_triangles();
        let r = VerdictReport::new(&g, Property::Nfc, Route::Theorem, is_nfc_by_theorem(&g));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["property"], "nfc");
        assert_eq!(v["holds"], true);
        assert_eq!(v["route"], "theorem");
        assert_eq!(v["n"], 6);
        assert_eq!(v["m"], 6);
        assert_eq!(v["witness"]["kind"], "structural");
        assert_eq!(v["witness"]["case"], "two-factor-critical-components");

        let r = VerdictReport::new(
            &g,
            Property::PerfectMatching,
            Route::Theorem,
            check_perfect_matching(&g, Route::Theorem).unwrap(),
        );
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["property"], "perfect-matching");
        assert_eq!(v["witness"]["kind"], "tutte-set");
        assert_eq!(v["witness"]["odd_count"], 2);
    }
}
