//! Acceptance report: one line per criterion.
//!
//! The process fails on any unexpected outcome. Two criteria require the
//! published relation lists to vanish verbatim; they contain misprints, so
//! those lines report FAIL and are accepted only when the failing relations
//! are exactly the documented ones and their corrections pass.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hilbring::algebra::AlgebraElement;
use hilbring::identities::{mixed_suite, pascal_suite, ys_suite};
use hilbring::oracle::SymmetricGroup;
use hilbring::partitions::{enumerate_classes, CycleType};
use hilbring::polynomial::parse_relation_chain;
use hilbring::presentation::{
    generator_alphabet, indecomposables_dims, minimal_presentation, num_generators, verify_presentation,
};
use hilbring::reference::{
    corrected_relations, published_relations, reference_count, A8_AMBIGUOUS, APPROXIMATE_COUNTS_D11,
    MISPRINTS, RELATION_TOTALS,
};
use hilbring::{BigUint, StructureConstants};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const GOLDEN_SMALL_LIMIT: Duration = Duration::from_secs(60);
const GOLDEN_LARGE_LIMIT: Duration = Duration::from_secs(10 * 60);
const TABLE_LIMIT: Duration = Duration::from_secs(20 * 60);
const ORACLE_LIMIT: Duration = Duration::from_secs(5 * 60);
const IDENTITY_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_TRIPLES_D7: usize = 1000;
const RNG_SEED: u64 = 0x5eed_2024;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails as stated for a documented reason that the run re-confirms.
    KnownFail(String),
    Info(String),
}

fn all_classes(d: usize) -> Vec<CycleType> {
    (0..d).flat_map(|k| enumerate_classes(k, d)).collect()
}

fn vanishes(d: usize, text: &str) -> bool {
    parse_relation_chain(text, &generator_alphabet(d))
        .map(|ps| ps.iter().all(|p| p.evaluate(d).map(|e| e.is_zero()).unwrap_or(false)))
        .unwrap_or(false)
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:.1?}, limit {limit:?}"))
    }
}

/// Printed relations for `ds` must vanish; misprints are tolerated only if
/// they are exactly the documented ones and every corrected list is a
/// complete minimal presentation.
fn golden(ds: &[usize], limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut failing = Vec::new();
    for &d in ds {
        for text in published_relations(d, 0).unwrap() {
            total += 1;
            if !vanishes(d, &text) {
                failing.push((d, text));
            }
        }
    }
    let mut notes = Vec::new();
    if ds.contains(&8) {
        let plus = vanishes(8, A8_AMBIGUOUS[0]);
        let minus = vanishes(8, A8_AMBIGUOUS[1]);
        notes.push(format!(
            "ambiguous A(8) sign: '+' {}, '-' {}",
            if plus { "vanishes" } else { "fails" },
            if minus { "vanishes" } else { "fails" }
        ));
        if plus == minus {
            return Outcome::Fail(format!("ambiguous A(8) relation did not resolve; {}", notes.join("; ")));
        }
    }
    let corrected_ok = ds.iter().all(|&d| {
        verify_presentation(d, &corrected_relations(d).unwrap())
            .map(|c| c.passed() && c.minimal)
            .unwrap_or(false)
    });
    if let Err(e) = within(limit, start) {
        return Outcome::Fail(e);
    }
    let expected: Vec<(usize, String)> = MISPRINTS
        .iter()
        .filter(|(d, _, _)| ds.contains(d))
        .map(|&(d, p, _)| (d, p.to_string()))
        .collect();
    let summary = format!(
        "{} of {total} printed relations vanish; {}; {:.1?}",
        total - failing.len(),
        if notes.is_empty() { "no ambiguous entries".to_string() } else { notes.join("; ") },
        start.elapsed()
    );
    if failing.is_empty() {
        Outcome::Pass(summary)
    } else if failing == expected && corrected_ok {
        let list: Vec<String> = failing.iter().map(|(d, t)| format!("A({d}) {t}")).collect();
        Outcome::KnownFail(format!(
            "{summary}; misprinted: {}; corrected lists are complete and minimal",
            list.join(" | ")
        ))
    } else {
        Outcome::Fail(format!("{summary}; unexpected failures: {failing:?}; corrected ok: {corrected_ok}"))
    }
}

fn relation_table() -> Outcome {
    let start = Instant::now();
    for d in 1..=10 {
        let p = match minimal_presentation(d) {
            Ok(p) => p,
            Err(e) => return Outcome::Fail(format!("A({d}): {e}")),
        };
        for (k, &c) in p.counts.iter().enumerate() {
            if Some(c) != reference_count(d, k + 1) {
                return Outcome::Fail(format!("r({d},{}) = {c}, expected {:?}", k + 1, reference_count(d, k + 1)));
            }
        }
        if p.total != RELATION_TOTALS[d - 1] {
            return Outcome::Fail(format!("A({d}) total {} ≠ {}", p.total, RELATION_TOTALS[d - 1]));
        }
    }
    match within(TABLE_LIMIT, start) {
        Ok(()) => Outcome::Pass(format!("r(d,n) matches for d = 1..10, totals match (d=10: 18); {:.1?}", start.elapsed())),
        Err(e) => Outcome::Fail(e),
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let table = StructureConstants::global();
    let mut exhaustive = 0usize;
    for d in 2..=6 {
        let g = SymmetricGroup::new(d).unwrap();
        let classes = all_classes(d);
        for e in &classes {
            for a in &classes {
                for b in &classes {
                    exhaustive += 1;
                    let oracle = BigUint::from(g.theta(e, a, b).unwrap());
                    let rec = table.theta(e, a, b);
                    if oracle != rec {
                        return Outcome::Fail(format!("d={d} θ({e}; {a}, {b}): oracle {oracle}, recursion {rec}"));
                    }
                }
            }
        }
    }
    let g = SymmetricGroup::new(7).unwrap();
    let classes = all_classes(7);
    let mut rng = StdRng::seed_from_u64(RNG_SEED);
    let mut sampled = 0;
    while sampled < RANDOM_TRIPLES_D7 {
        let e = &classes[rng.gen_range(0..classes.len())];
        let a = &classes[rng.gen_range(0..classes.len())];
        let fitting: Vec<&CycleType> = classes.iter().filter(|b| a.norm() + b.norm() == e.norm()).collect();
        if fitting.is_empty() {
            continue;
        }
        let b = fitting[rng.gen_range(0..fitting.len())];
        sampled += 1;
        let oracle = BigUint::from(g.theta(e, a, b).unwrap());
        let rec = table.theta(e, a, b);
        if oracle != rec {
            return Outcome::Fail(format!("d=7 θ({e}; {a}, {b}): oracle {oracle}, recursion {rec}"));
        }
    }
    match within(ORACLE_LIMIT, start) {
        Ok(()) => Outcome::Pass(format!(
            "{exhaustive} exhaustive triples (d ≤ 6) and {sampled} random triples (d = 7, seed {RNG_SEED:#x}); {:.1?}",
            start.elapsed()
        )),
        Err(e) => Outcome::Fail(e),
    }
}

fn indecomposables() -> Outcome {
    for d in 2..=10 {
        for (j, _, _, indec) in indecomposables_dims(d) {
            let expected = usize::from(j <= d / 2);
            if indec != expected {
                return Outcome::Fail(format!("A({d}) norm {j}: {indec} indecomposables, expected {expected}"));
            }
        }
    }
    Outcome::Pass("one indecomposable in each norm 1..⌊d/2⌋, none above, for d = 2..10".into())
}

fn low_norms_and_first_relations() -> Outcome {
    for d in 1..=10 {
        let m = num_generators(d);
        let p = minimal_presentation(d).unwrap();
        if let Some(s) = p.norms.iter().find(|s| s.norm <= d - m && s.kernel_dim > 0) {
            return Outcome::Fail(format!("A({d}) has relations in norm {} ≤ d - m", s.norm));
        }
        let first = p.counts.iter().position(|&c| c > 0).map(|k| k + 1);
        let ok = if d % 2 == 0 {
            first == Some(m + 1) && p.counts[m] == 1
        } else if d >= 5 {
            first == Some(m + 2) && p.counts[m + 1] == 2
        } else {
            true
        };
        if !ok {
            return Outcome::Fail(format!("A({d}): first relations {:?}", p.counts));
        }
    }
    Outcome::Pass("trivial kernel for n ≤ d - m; first minimal relations 1 at m+1 (even d), 2 at m+2 (odd d ≥ 5)".into())
}

fn identity_suites() -> Outcome {
    let start = Instant::now();
    let suites = [Ok(pascal_suite()), ys_suite(), mixed_suite()];
    for s in suites {
        match s {
            Ok(s) if s.passed => {}
            Ok(s) => return Outcome::Fail(format!("suite {} failed: {:?}", s.suite, s)),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    match within(IDENTITY_LIMIT, start) {
        Ok(()) => Outcome::Pass(format!(
            "det minors = C_(n+1) for n ≤ 12, Borel echelon rows, y_s for j ≤ 5, mixed relation for m ≤ 5; {:.1?}",
            start.elapsed()
        )),
        Err(e) => Outcome::Fail(e),
    }
}

fn projection_is_multiplicative() -> Outcome {
    let mut pairs = 0;
    for h in 1..=7 {
        let classes = all_classes(h);
        for a in &classes {
            for b in &classes {
                let x = AlgebraElement::basis(a, h);
                let y = AlgebraElement::basis(b, h);
                let xy = x.multiply(&y).unwrap();
                for d in 1..=h {
                    let lhs = xy.project(d).unwrap();
                    let rhs = x.project(d).unwrap().multiply(&y.project(d).unwrap()).unwrap();
                    pairs += 1;
                    if lhs != rhs {
                        return Outcome::Fail(format!("h={h} d={d} g{a}·g{b}: {lhs} ≠ {rhs}"));
                    }
                }
            }
        }
    }
    Outcome::Pass(format!("{pairs} (pair, d) cases with h ≤ 7"))
}

fn d_stability() -> Outcome {
    let mut triples = 0;
    for d in 1..=6 {
        let small = SymmetricGroup::new(d).unwrap();
        let big = SymmetricGroup::new(d + 1).unwrap();
        let classes = all_classes(d);
        for e in &classes {
            for a in &classes {
                for b in &classes {
                    if a.norm() + b.norm() != e.norm() {
                        continue;
                    }
                    triples += 1;
                    let (x, y) = (small.theta(e, a, b).unwrap(), big.theta(e, a, b).unwrap());
                    if x != y {
                        return Outcome::Fail(format!("θ({e}; {a}, {b}): {x} in S_{d}, {y} in S_{}", d + 1));
                    }
                }
            }
        }
    }
    Outcome::Pass(format!("{triples} triples agree between S_d and S_(d+1), d ≤ 6"))
}

fn d11_report() -> Outcome {
    let start = Instant::now();
    match minimal_presentation(11) {
        Ok(p) => {
            let exact: Vec<usize> = p.counts.iter().take(11).copied().collect();
            let beyond: usize = p.counts.iter().skip(11).sum();
            let agrees = exact == APPROXIMATE_COUNTS_D11 && beyond == 0;
            Outcome::Info(format!(
                "exact r(11,n) = {exact:?} (Σ {}), {} the approximate row; not a gate; {:.1?}",
                p.total,
                if agrees { "agrees with" } else { "differs from" },
                start.elapsed()
            ))
        }
        Err(e) => Outcome::Info(format!("d = 11 run failed: {e}")),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 golden presentations d ≤ 8", Box::new(|| golden(&[2, 3, 4, 5, 6, 7, 8], GOLDEN_SMALL_LIMIT))),
        ("2 golden presentations d = 9, 10", Box::new(|| golden(&[9, 10], GOLDEN_LARGE_LIMIT))),
        ("3 relation-count table", Box::new(relation_table)),
        ("4 oracle equivalence", Box::new(oracle_equivalence)),
        ("5 indecomposables", Box::new(indecomposables)),
        ("6 low-norm freeness and first relations", Box::new(low_norms_and_first_relations)),
        ("7 identity suites", Box::new(identity_suites)),
        ("8 projection is an algebra map", Box::new(projection_is_multiplicative)),
        ("9 d-stability of structure constants", Box::new(d_stability)),
        ("10 d = 11 relation counts", Box::new(d11_report)),
    ];
    let mut unexpected = 0;
    let mut known = 0;
    for (name, run) in criteria {
        match run() {
            Outcome::Pass(msg) => println!("PASS  {name}: {msg}"),
            Outcome::Info(msg) => println!("INFO  {name}: {msg}"),
            Outcome::KnownFail(msg) => {
                known += 1;
                println!("FAIL  {name}: {msg}");
            }
            Outcome::Fail(msg) => {
                unexpected += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    println!("acceptance: {unexpected} unexpected failure(s), {known} failure(s) from documented misprints");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
