//! Drive the engine one step at a time and watch conclusions appear.
use ddl::{parse_theory, EngineConfig, WorkingTheory};

fn main() {
    let t = parse_theory(include_str!("../fixtures/invoice.dl")).unwrap();
    let mut w = WorkingTheory::new(&t, EngineConfig::default());
    w.check_facts();
    let mut seen = 0;
    let mut round = 0;
    loop {
        let progressed = w.step();
        let now = w.conclusions();
        for c in &now[seen..] {
            println!("round {round}: {c}");
        }
        seen = now.len();
        round += 1;
        if !progressed {
            break;
        }
    }
    println!("{:?}", w.stats());
}
