//! Consume a conclusion, simplify the theory and compare extensions.
use ddl::transform::{apply, available, compare};
use ddl::{compute_extension, parse_theory, serialize_theory, EngineConfig};

fn main() {
    let cfg = EngineConfig::default();
    let t = parse_theory(include_str!("../fixtures/u-turn.dl")).unwrap();
    let e = compute_extension(&t, cfg);
    for tr in available(&t, &e) {
        let reduced = apply(&t, &tr);
        let mismatches = compare(&t, &tr, cfg);
        println!("{tr}: {} rules left, {} mismatches", reduced.rules().len(), mismatches.len());
        print!("{}", serialize_theory(&reduced));
    }
}
