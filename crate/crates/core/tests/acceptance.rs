//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. A criterion that fails because
//! of a documented counterexample prints `FAIL (known divergence)`; the run
//! only exits non-zero when a criterion fails for any other reason.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use ddl::bench::{run_bench, Family};
use ddl::diff::{case_params, run_diff, DiffParams};
use ddl::engine::{compute_extension, EngineConfig};
use ddl::generate::{generate_theory, GenParams};
use ddl::model::{AntecedentItem, Literal, Modality, Theory};
use ddl::oracle::oracle_extension;
use ddl::parser::{parse_theory, parse_extension_json, serialize_theory};
use ddl::queries::{check_consistency, is_weakly_permitted};
use ddl::transform::{apply, available, compare, Transformation};
use ddl::Extension;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS: usize = 1000;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails only on the listed counterexample theories.
    Known(String),
}

fn corpus() -> Vec<Theory> {
    let p = DiffParams::default();
    (0..CORPUS).map(|i| generate_theory(&case_params(&p, i))).collect()
}

fn extensions(corpus: &[Theory], keep: impl Fn(&Theory) -> bool) -> Vec<(Theory, EngineConfig, Extension)> {
    let mut out = Vec::new();
    for t in corpus.iter().filter(|t| keep(t)) {
        for cfg in EngineConfig::all() {
            out.push((t.clone(), cfg, compute_extension(t, cfg)));
        }
    }
    out
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let report = run_diff(&DiffParams {
        cases: CORPUS,
        ..DiffParams::default()
    });
    let secs = start.elapsed().as_secs_f64();
    let msg = format!(
        "{} theories x 6 configurations, {} disagreements, {secs:.1}s",
        report.cases,
        report.disagreements.len()
    );
    if report.all_agree() && secs < 60.0 {
        Outcome::Pass(msg)
    } else {
        if let Some(d) = report.disagreements.first() {
            eprintln!("{:?}\n{}", d.config, serialize_theory(&d.theory));
        }
        Outcome::Fail(msg)
    }
}

fn c2_prop_coherence(corpus: &[Theory]) -> Outcome {
    let runs = extensions(corpus, |t| check_consistency(t).consistent);
    let bad = runs
        .iter()
        .filter(|(_, _, e)| !e.plus_d_o.is_disjoint(&e.minus_d_o) || !e.plus_d_p.is_disjoint(&e.minus_d_p))
        .count();
    let msg = format!("{} consistent runs, {bad} with a literal both proved and refuted", runs.len());
    if bad == 0 {
        Outcome::Pass(msg)
    } else {
        Outcome::Fail(msg)
    }
}

fn c3_no_conflicting_obligations(corpus: &[Theory]) -> Outcome {
    let runs = extensions(corpus, |t| check_consistency(t).o_consistent);
    let bad = runs
        .iter()
        .filter(|(_, _, e)| e.plus_d_o.iter().any(|l| e.plus_d_o.contains(&l.complement())))
        .count();
    let msg = format!("{} O-consistent runs, {bad} obliging both l and ~l", runs.len());
    if bad == 0 {
        Outcome::Pass(msg)
    } else {
        Outcome::Fail(msg)
    }
}

/// Known counterexamples to the second and third part: a permission that
/// beats an obligation rule while losing to it on the obligation side.
fn prop15_counterexamples_hold() -> bool {
    let part2 = parse_theory(
        "rule r: =>O l.\nrule u: =>O ~l.\nrule d: =>P l.\nrule p: =>P ~l.\n\
         sup d > u.\nsup u > r.\nsup r > p.",
    )
    .unwrap();
    let part3 = parse_theory(
        "rule p: =>P l.\nrule r: =>O l.\nrule u: =>O ~l.\nrule q: =>P ~l.\n\
         sup r > u.\nsup u > p.\nsup q > r.",
    )
    .unwrap();
    let l = Literal::pos("l");
    let cfg = EngineConfig::default();
    let (e2, o2) = (compute_extension(&part2, cfg), oracle_extension(&part2, &cfg));
    let (e3, o3) = (compute_extension(&part3, cfg), oracle_extension(&part3, &cfg));
    e2 == o2
        && e3 == o3
        && e2.plus_d_o.contains(&l)
        && e2.plus_d_p.contains(&l.complement())
        && e3.plus_d_p.contains(&l)
        && e3.plus_d_o.contains(&l.complement())
}

fn c4_prop_obligation_permission(corpus: &[Theory]) -> Outcome {
    let runs = extensions(corpus, |t| check_consistency(t).o_consistent);
    let mut parts = [0usize; 3];
    for (_, _, e) in &runs {
        for l in &e.plus_d_o {
            if !e.minus_d_o.contains(&l.complement()) {
                parts[0] += 1;
            }
            if !e.minus_d_p.contains(&l.complement()) {
                parts[1] += 1;
            }
        }
        for l in &e.plus_d_p {
            if !e.minus_d_o.contains(&l.complement()) {
                parts[2] += 1;
            }
        }
    }
    let msg = format!(
        "{} O-consistent runs; violations of part 1/2/3: {}/{}/{}",
        runs.len(),
        parts[0],
        parts[1],
        parts[2]
    );
    if parts == [0, 0, 0] {
        Outcome::Pass(msg)
    } else if parts[0] == 0 && prop15_counterexamples_hold() {
        Outcome::Known(msg)
    } else {
        Outcome::Fail(msg)
    }
}

fn c5_ought_implies_can(corpus: &[Theory]) -> Outcome {
    let runs = extensions(corpus, |t| check_consistency(t).o_consistent);
    let bad = runs
        .iter()
        .filter(|(_, _, e)| e.plus_d_o.iter().any(|l| !is_weakly_permitted(e, l)))
        .count();
    let msg = format!("{} O-consistent runs, {bad} with an obligation that is not weakly permitted", runs.len());
    if bad == 0 {
        Outcome::Pass(msg)
    } else {
        Outcome::Fail(msg)
    }
}

/// Each rewrite with a known flaw drops head occurrences that still attack
/// the complement; the smallest cases show the status change.
fn transformation_counterexamples_hold() -> bool {
    let cases = [
        ("fact O(p).\nrule r: =>O ~p.\nrule q: =>P p.", Transformation::ObligationProved(Literal::pos("p"))),
        ("rule r: =>O p.\nrule s: =>O ~p.\nrule q: =>P ~p.", Transformation::ObligationRefuted(Literal::pos("p"))),
        ("fact P(p).\nrule r: =>O ~p.\nrule s: =>O p.", Transformation::PermissionProved(Literal::pos("p"))),
        ("rule r: =>P ~p.\nrule s: =>O p.", Transformation::PermissionRefuted(Literal::neg("p"))),
    ];
    cases.iter().all(|(src, tr)| {
        let t = parse_theory(src).unwrap();
        let e = compute_extension(&t, EngineConfig::default());
        available(&t, &e).contains(tr) && !compare(&t, tr, EngineConfig::default()).is_empty()
    })
}

fn c6_metamorphic(corpus: &[Theory]) -> Outcome {
    let cfg = EngineConfig::default();
    let mut pairs = 0;
    let mut failing: BTreeSet<&'static str> = BTreeSet::new();
    let mut failures = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in corpus.iter().filter(|t| {
        let r = check_consistency(t);
        r.consistent && r.o_consistent
    }) {
        // eliminate plain facts one at a time, then consume a few conclusions
        let mut current = t.clone();
        loop {
            let e = compute_extension(&current, cfg);
            let options = available(&current, &e);
            if options.is_empty() {
                break;
            }
            let facts: Vec<&Transformation> = options
                .iter()
                .filter(|o| matches!(o, Transformation::EliminateFact(_)))
                .collect();
            let picks: Vec<Transformation> = if facts.is_empty() {
                (0..3.min(options.len()))
                    .map(|_| options[rng.gen_range(0..options.len())].clone())
                    .collect()
            } else {
                vec![facts[0].clone()]
            };
            for tr in &picks {
                pairs += 1;
                if !compare(&current, tr, cfg).is_empty() {
                    failures += 1;
                    failing.insert(match tr {
                        Transformation::EliminateFact(_) => "fact",
                        Transformation::ObligationProved(p)
                            if current.has_fact(&AntecedentItem::modal(false, Modality::O, p.clone())) =>
                        {
                            "+dO of a fact"
                        }
                        Transformation::ObligationProved(_) => "+dO",
                        Transformation::ObligationRefuted(_) => "-dO",
                        Transformation::PermissionProved(_) => "+dP",
                        Transformation::PermissionRefuted(_) => "-dP",
                    });
                }
            }
            if facts.is_empty() {
                break;
            }
            current = apply(&current, facts[0]);
        }
    }
    let msg = format!(
        "{pairs} (theory, transformation) pairs, {failures} disagree (kinds: {})",
        failing.iter().copied().collect::<Vec<_>>().join(", ")
    );
    let known: BTreeSet<&str> = ["+dO of a fact", "-dO", "+dP", "-dP"].into_iter().collect();
    if pairs >= 200 && failures == 0 {
        Outcome::Pass(msg)
    } else if pairs >= 200 && failing.is_subset(&known) && transformation_counterexamples_hold() {
        Outcome::Known(msg)
    } else {
        Outcome::Fail(msg)
    }
}

fn c7_fixtures() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let load = |name: &str| -> Extension {
        let t = parse_theory(&std::fs::read_to_string(dir.join(format!("{name}.dl"))).unwrap()).unwrap();
        compute_extension(&t, EngineConfig::default())
    };
    let l = Literal::from_str_lossy;
    let park = load("park");
    let credit = load("credit-act");
    let licence = load("credit-act-licence");
    let copyright = load("copyright");
    let weekend = load("weekend-defeater");
    let checks = [
        ("park: Enter in -dO", park.minus_d_o.contains(&l("Enter"))),
        ("park: ~Enter in -dO", park.minus_d_o.contains(&l("~Enter"))),
        ("credit: ~CreditActivity in +dO", credit.plus_d_o.contains(&l("~CreditActivity"))),
        ("credit+licence: CreditActivity in +dP", licence.plus_d_p.contains(&l("CreditActivity"))),
        ("copyright: ActualDamages in +dP", copyright.plus_d_p.contains(&l("ActualDamages"))),
        ("copyright: StatutoryDamages in -dP", copyright.minus_d_p.contains(&l("StatutoryDamages"))),
        ("weekend: ~UseCar in -dO", weekend.minus_d_o.contains(&l("~UseCar"))),
        ("weekend: UseCar not in +dO", !weekend.plus_d_o.contains(&l("UseCar"))),
    ];
    let mut snapshots = 0;
    let mut stale = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|x| x == "dl") {
            let name = path.file_stem().unwrap().to_string_lossy().to_string();
            let t = parse_theory(&std::fs::read_to_string(&path).unwrap()).unwrap();
            let expected = parse_extension_json(&std::fs::read_to_string(dir.join(format!("{name}.expected.json"))).unwrap()).unwrap();
            snapshots += 1;
            if !compute_extension(&t, EngineConfig::default()).same_sets(&expected) {
                stale.push(name);
            }
        }
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let bad: Vec<&str> = failed.iter().copied().chain(stale.iter().map(String::as_str)).collect();
    let mut msg = format!("{} hand-checked facts, {snapshots} snapshots", checks.len());
    if !bad.is_empty() {
        msg += &format!("; failing: {}", bad.join(", "));
    }
    if failed.is_empty() && stale.is_empty() {
        Outcome::Pass(msg)
    } else {
        Outcome::Fail(msg)
    }
}

fn c8_linearity() -> Outcome {
    let r = run_bench(Family::Chain, &[1_000, 10_000, 100_000, 1_000_000], 3);
    let ratios = r.mutation_ratios();
    let worst = ratios.iter().cloned().fold(0.0, f64::max);
    let t_max = *r.wall_times.last().unwrap();
    let msg = format!(
        "slope {:.3}, worst 10x ratio {worst:.2}, {:.2}s at S={}",
        r.slope_mutations,
        t_max,
        r.sizes.last().unwrap()
    );
    if t_max >= 5.0 {
        eprintln!("warning: wall time at the largest size is {t_max:.2}s (soft bound 5s)");
    }
    if r.slope_mutations <= 1.2 && worst <= 12.0 {
        Outcome::Pass(msg)
    } else {
        Outcome::Fail(msg)
    }
}

const FRAGMENTS: &[&str] = &[
    "fact ", "rule ", "sup ", "r1", "a", "~", "!", "O(", "P(", ")", ",", ".", ":", ">", "=>O", "=>P", "~>",
    "(x)", "(o)", "⊗", "⊙", " ", "\n", "#", "¬",
];

fn c9_parser_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut crashes = 0;
    let mut bad_spans = 0;
    for i in 0..100_000 {
        let text = if i % 2 == 0 {
            let len = rng.gen_range(0..64);
            let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        } else {
            (0..rng.gen_range(0..24)).map(|_| FRAGMENTS[rng.gen_range(0..FRAGMENTS.len())]).collect()
        };
        match std::panic::catch_unwind(|| parse_theory(&text)) {
            Err(_) => crashes += 1,
            Ok(Err(errors)) => {
                let lines = text.split('\n').count();
                if errors.is_empty() || errors.iter().any(|e| e.span.line == 0 || e.span.column == 0 || e.span.line > lines) {
                    bad_spans += 1;
                }
            }
            Ok(Ok(_)) => {}
        }
    }
    let mut mismatched = 0;
    for seed in 0..1000 {
        let t = generate_theory(&GenParams::small(seed, 8, 12));
        if parse_theory(&serialize_theory(&t)).ok().as_ref() != Some(&t) {
            mismatched += 1;
        }
    }
    let msg = format!("100000 fuzz inputs: {crashes} crashes, {bad_spans} bad spans; 1000 round trips: {mismatched} mismatches");
    if crashes + bad_spans + mismatched == 0 {
        Outcome::Pass(msg)
    } else {
        Outcome::Fail(msg)
    }
}

fn main() {
    // harness-less target: ignore libtest flags such as --nocapture
    std::panic::set_hook(Box::new(|_| {}));
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 engine equals oracle", Box::new(c1_oracle_equivalence)),
        ("2 no literal both proved and refuted", Box::new(|| c2_prop_coherence(&corpus))),
        ("3 no conflicting obligations", Box::new(|| c3_no_conflicting_obligations(&corpus))),
        ("4 obligations exclude opposite permissions", Box::new(|| c4_prop_obligation_permission(&corpus))),
        ("5 ought implies can", Box::new(|| c5_ought_implies_can(&corpus))),
        ("6 simplifying transformations preserve the extension", Box::new(|| c6_metamorphic(&corpus))),
        ("7 example fixtures", Box::new(c7_fixtures)),
        ("8 linear work on the chain family", Box::new(c8_linearity)),
        ("9 parser robustness", Box::new(c9_parser_robustness)),
    ];
    let mut unexpected = 0;
    for (name, run) in &criteria {
        match run() {
            Outcome::Pass(m) => println!("criterion {name}: PASS ({m})"),
            Outcome::Known(m) => println!("criterion {name}: FAIL (known divergence; {m})"),
            Outcome::Fail(m) => {
                unexpected += 1;
                println!("criterion {name}: FAIL ({m})");
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
