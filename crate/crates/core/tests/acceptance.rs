//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nfc_core::criticality::{
    check_lemma1, check_perfect_matching, is_nfc_by_definition, is_nfc_by_theorem, recheck,
    Property, Route, StructuralCase, Witness,
};
use nfc_core::generate::{complete, cycle, disjoint_union, random_graph, XorShift64Star};
use nfc_core::graph::{components, delete_vertex, delete_vertices, Graph};
use nfc_core::harness::{
    random_seed, verify_theorems, MismatchKind, VerificationReport, VerifyOptions,
    RANDOM_PROBABILITIES,
};
use nfc_core::matching::{has_perfect_matching, max_matching, Matching};
use nfc_core::oracle::{max_matching_size_brute, near_factors_brute};

/// Exhaustive orders for criteria 1, 3 and 6.
const EXHAUSTIVE_MAX_N: usize = 7;
/// Tutte cross-check orders for criterion 2.
const TUTTE_MAX_N: usize = 6;
const RANDOM_ORACLE_GRAPHS: usize = 1000;
const RANDOM_ORACLE_MAX_N: usize = 12;
const LEMMA_GRAPHS: usize = 200;
const LEMMA_MAX_N: usize = 10;
const SCALING_ORDERS: [usize; 4] = [100, 200, 400, 800];
const SCALING_MAX_EXPONENT: f64 = 3.0;
const SCALING_WALL_CLOCK: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn count_kind(reports: &[VerificationReport], kind: MismatchKind, max_n: usize) -> usize {
    reports
        .iter()
        .filter(|r| r.order <= max_n)
        .flat_map(|r| &r.mismatches)
        .filter(|m| m.kind == kind)
        .count()
}

fn criterion_1(reports: &[VerificationReport]) -> Outcome {
    let checked: u64 = reports.iter().map(|r| r.graphs_checked).sum();
    let expected: u64 = (0..=EXHAUSTIVE_MAX_N)
        .map(|n| 1u64 << (n * n.saturating_sub(1) / 2))
        .sum();
    let routes = count_kind(reports, MismatchKind::NfcRoutes, EXHAUSTIVE_MAX_N);
    let witnesses = count_kind(reports, MismatchKind::WitnessRejected, EXHAUSTIVE_MAX_N);
    outcome(
        checked == expected && routes == 0 && witnesses == 0,
        format!(
            "{checked}/{expected} labeled graphs n<=7, {routes} route mismatches, {witnesses} rejected witnesses"
        ),
    )
}

fn criterion_2(reports: &[VerificationReport]) -> Outcome {
    let checked: u64 = reports
        .iter()
        .filter(|r| r.order <= TUTTE_MAX_N)
        .map(|r| r.graphs_checked)
        .sum();
    let bad = count_kind(reports, MismatchKind::TutteCondition, TUTTE_MAX_N);
    outcome(
        bad == 0 && checked == 1 + 1 + 2 + 8 + 64 + 1024 + 32768,
        format!("{checked} graphs n<=6, {bad} perfect/Tutte disagreements"),
    )
}

fn criterion_3(reports: &[VerificationReport]) -> Outcome {
    let exhaustive_bad = count_kind(reports, MismatchKind::OracleSize, EXHAUSTIVE_MAX_N);
    let mut random_bad = 0;
    let mut per_p = [0usize; 3];
    for i in 0..RANDOM_ORACLE_GRAPHS {
        let n = i % (RANDOM_ORACLE_MAX_N + 1);
        let p_idx = i % RANDOM_PROBABILITIES.len();
        let g = random_graph(n, RANDOM_PROBABILITIES[p_idx], random_seed(2024, n, i));
        per_p[p_idx] += 1;
        if max_matching(&g).len() != max_matching_size_brute(&g).unwrap() {
            random_bad += 1;
        }
    }
    outcome(
        exhaustive_bad == 0 && random_bad == 0,
        format!(
            "exhaustive n<=7: {exhaustive_bad} disagreements; {RANDOM_ORACLE_GRAPHS} random n<=12 (p=0.2/0.5/0.8: {}/{}/{}): {random_bad} disagreements",
            per_p[0], per_p[1], per_p[2]
        ),
    )
}

fn criterion_4() -> Outcome {
    let two_triangles = disjoint_union(&cycle(3), &cycle(3));
    let mut failures = Vec::new();

    let thm = is_nfc_by_theorem(&two_triangles);
    let def = is_nfc_by_definition(&two_triangles);
    let case = |c| Witness::Structural { case: c };
    if !(thm.holds && def.holds && thm.witness == case(StructuralCase::TwoFactorCriticalComponents))
    {
        failures.push("C3+C3 not NFC with two-factor-critical-components");
    }
    let pm = check_perfect_matching(&two_triangles, Route::Definition).unwrap();
    if pm.holds || has_perfect_matching(&two_triangles) {
        failures.push("C3+C3 reported with a perfect matching");
    }
    if recheck(&two_triangles, Property::PerfectMatching, &pm).is_err() {
        failures.push("C3+C3 perfect-matching witness rejected");
    }
    let k2 = complete(2);
    if !(is_nfc_by_theorem(&k2).holds && is_nfc_by_definition(&k2).holds) {
        failures.push("K2 not NFC");
    }
    let k1 = Graph::empty(1);
    if is_nfc_by_theorem(&k1).holds || is_nfc_by_definition(&k1).holds {
        failures.push("K1 reported NFC");
    }
    let c4_k2 = disjoint_union(&cycle(4), &complete(2));
    let v = is_nfc_by_theorem(&c4_k2);
    if !(v.holds
        && is_nfc_by_definition(&c4_k2).holds
        && v.witness == case(StructuralCase::AllEvenComponents))
    {
        failures.push("C4+K2 not NFC with all-even-components");
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "C3+C3 NFC (two-factor-critical-components) without 1-factor; K2 NFC; K1 not NFC; C4+K2 NFC (all-even-components)".to_string()
        } else {
            failures.join("; ")
        },
    )
}

/// Draws a connected graph of order `n` by rejection.
fn connected_sample(rng: &mut XorShift64Star, n: usize) -> Graph {
    loop {
        let p = RANDOM_PROBABILITIES[rng.below(3) as usize];
        let g = random_graph(n, p, rng.next_u64());
        if g.is_connected() {
            return g;
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = XorShift64Star::new(5);
    let mut tuples = 0u64;
    let mut counterexamples = 0u64;
    let mut errors = 0u64;
    for _ in 0..LEMMA_GRAPHS {
        let n = 2 + rng.below(LEMMA_MAX_N as u64 - 1) as usize;
        let g = connected_sample(&mut rng, n);
        // Near-factors of G - v, in G's ids.
        let near: Vec<Vec<(Matching, usize)>> = g
            .vertices()
            .map(|v| {
                let (h, map) = delete_vertex(&g, v).unwrap();
                near_factors_brute(&h)
                    .unwrap()
                    .into_iter()
                    .map(|(m, u)| (m.relabel(|w| map.to_old(w)), map.to_old(u)))
                    .collect()
            })
            .collect();
        for mask in 0u64..1 << n {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let (rest, map) = delete_vertices(&g, &s).unwrap();
            for comp in components(&rest).components() {
                if comp.len() % 2 == 0 {
                    continue;
                }
                let h: Vec<usize> = comp.iter().map(|&w| map.to_old(w)).collect();
                let in_h = h.iter().fold(0u64, |acc, &w| acc | 1 << w);
                for v in g.vertices().filter(|&v| in_h >> v & 1 == 0) {
                    for (m, u) in &near[v] {
                        if in_h >> u & 1 == 1 {
                            continue;
                        }
                        tuples += 1;
                        match check_lemma1(&g, &s, &h, v, m) {
                            Ok(true) => {}
                            Ok(false) => counterexamples += 1,
                            Err(_) => errors += 1,
                        }
                    }
                }
            }
        }
    }
    outcome(
        counterexamples == 0 && errors == 0 && tuples > 0,
        format!(
            "{LEMMA_GRAPHS} connected graphs n<=10: {tuples} tuples, {counterexamples} counterexamples, {errors} precondition errors"
        ),
    )
}

fn criterion_6(reports: &[VerificationReport]) -> Outcome {
    let mut bad = Vec::new();
    for r in reports {
        if r.order > 0 && r.order % 2 == 1 && r.nfc_count != 0 {
            bad.push(format!("nfc_count={} at n={}", r.nfc_count, r.order));
        }
        if r.order > 0 && r.order % 2 == 0 && r.factor_critical_count != 0 {
            bad.push(format!(
                "factor_critical_count={} at n={}",
                r.factor_critical_count, r.order
            ));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "nfc_count=0 for odd n, factor_critical_count=0 for even n, 0<n<=7".to_string()
        } else {
            bad.join("; ")
        },
    )
}

/// Fastest of repeated runs, repeating for at least `budget`.
fn time_min(budget: Duration, mut f: impl FnMut()) -> Duration {
    let start = Instant::now();
    let mut best = Duration::MAX;
    let mut runs = 0;
    while runs < 3 || start.elapsed() < budget {
        let t = Instant::now();
        f();
        best = best.min(t.elapsed());
        runs += 1;
    }
    best
}

fn criterion_7() -> Outcome {
    let mut points = Vec::new();
    let mut worst_wall = Duration::ZERO;
    let mut all_hold = true;
    let mut notes = Vec::new();
    for &n in &SCALING_ORDERS {
        let p = 8.0 / n as f64;
        let g = (0u64..)
            .map(|seed| random_graph(n, p, seed))
            .find(has_perfect_matching)
            .unwrap();
        let wall = Instant::now();
        let verdict = is_nfc_by_theorem(&g);
        worst_wall = worst_wall.max(wall.elapsed());
        all_hold &= verdict.holds;
        let t_nfc = time_min(Duration::from_millis(200), || {
            std::hint::black_box(is_nfc_by_theorem(&g));
        });
        let t_match = time_min(Duration::from_millis(200), || {
            std::hint::black_box(max_matching(&g));
        });
        notes.push(format!(
            "n={n}: {:.3} ms ({:.2}x one matching)",
            t_nfc.as_secs_f64() * 1e3,
            t_nfc.as_secs_f64() / t_match.as_secs_f64()
        ));
        points.push(((n as f64).ln(), t_nfc.as_secs_f64().ln()));
    }
    // Least-squares slope of log time against log n.
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    outcome(
        all_hold && slope <= SCALING_MAX_EXPONENT && worst_wall < SCALING_WALL_CLOCK,
        format!(
            "growth exponent {slope:.2} (limit {SCALING_MAX_EXPONENT}), slowest single run {:.3} s (limit {} s); {}",
            worst_wall.as_secs_f64(),
            SCALING_WALL_CLOCK.as_secs(),
            notes.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let reports = verify_theorems(EXHAUSTIVE_MAX_N, VerifyOptions::default()).unwrap();
    let results = [
        ("1 exhaustive NFC route equivalence", criterion_1(&reports)),
        ("2 Tutte cross-check", criterion_2(&reports)),
        ("3 engine/oracle agreement", criterion_3(&reports)),
        ("4 canonical fixtures", criterion_4()),
        ("5 odd-component edge property", criterion_5()),
        ("6 parity necessities", criterion_6(&reports)),
        ("7 complexity smoke test", criterion_7()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "criterion {name}: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += !o.pass as usize;
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1} s",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
