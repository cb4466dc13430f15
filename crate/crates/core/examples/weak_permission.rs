//! Weak permission: something is allowed when its prohibition is refuted.
use ddl::queries::{answer, weakly_permitted, QueryTag};
use ddl::{compute_extension, is_weakly_permitted, parse_theory, EngineConfig, Literal};

fn main() {
    let t = parse_theory(include_str!("../fixtures/park.dl")).unwrap();
    let e = compute_extension(&t, EngineConfig::default());
    let enter = Literal::pos("Enter");
    println!("Enter weakly permitted: {}", is_weakly_permitted(&e, &enter));
    for name in ["+O", "-O", "+P", "-P", "weak"] {
        let tag: QueryTag = name.parse().unwrap();
        println!("{name} Enter: {}", answer(&e, tag, &enter));
    }
    let all: Vec<String> = weakly_permitted(&e).iter().map(|l| l.to_string()).collect();
    println!("weakly permitted: {}", all.join(", "));
}
