//! Consistency checks: superiority cycles and clashing facts.
use ddl::{check_consistency, parse_theory};

fn main() {
    for src in [
        include_str!("../fixtures/park.dl"),
        "rule a: =>O x.\nrule b: =>O ~x.\nsup a > b.\nsup b > a.\n",
        "fact p.\nfact ~p.\nfact O(q).\nfact P(~q).\n",
    ] {
        let report = check_consistency(&parse_theory(src).unwrap());
        println!("consistent={} o-consistent={}", report.consistent, report.o_consistent);
        for v in &report.violations {
            println!("  {:?}: {}", v.kind, v.detail);
        }
    }
}
