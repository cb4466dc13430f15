//! Differential run of the engine against the reference prover, plus a
//! shrink of a hand-made failing predicate.
use ddl::diff::{run_diff, shrink, DiffParams};
use ddl::generate::{generate_theory, GenParams};
use ddl::serialize_theory;

fn main() {
    let report = run_diff(&DiffParams { cases: 200, seed: 7, ..DiffParams::default() });
    println!("{} cases, {} checks, agree: {}", report.cases, report.checks, report.all_agree());

    let t = generate_theory(&GenParams::small(11, 6, 10));
    print!("generated:\n{}", serialize_theory(&t));
    // shrink towards the smallest theory that still has a defeasible rule with two premises
    let small = shrink(&t, |c| c.rules().iter().any(|r| r.antecedent().len() >= 2));
    print!("shrunk:\n{}", serialize_theory(&small));
}
