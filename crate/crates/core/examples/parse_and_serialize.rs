//! Parse a theory from text, print it in canonical form and show a parse error.
use ddl::{parse_theory, serialize_theory};

fn main() {
    let src = "\
fact Park.
fact Vehicle.
rule r1: Park, Vehicle =>O ~Enter.
rule r2: Park, O(~Enter) =>O Fine (x) Warning.
sup r2 > r1.
";
    let t = parse_theory(src).expect("valid theory");
    println!("{} rules, {} facts, size {}", t.rules().len(), t.facts().len(), t.size());
    print!("{}", serialize_theory(&t));

    let round = parse_theory(&serialize_theory(&t)).unwrap();
    assert_eq!(round, t);

    let bad = "rule r: a =>P b (x) c.\nrule r: =>O d.\n";
    for e in parse_theory(bad).unwrap_err() {
        println!("{}:{}: {}: {}", e.span.line, e.span.column, e.kind, e.message);
    }
}
