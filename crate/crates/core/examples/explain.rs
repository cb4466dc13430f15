//! Proof traces for a derived and a refuted conclusion.
use ddl::{explain, parse_theory, EngineConfig, Literal, Modality, Sign, Tagged};

fn main() {
    let t = parse_theory(include_str!("../fixtures/credit-act-licence.dl")).unwrap();
    let cfg = EngineConfig::default();
    let plus = Tagged::new(Sign::Plus, Modality::P, Literal::pos("CreditActivity"));
    let trace = explain(&t, cfg, &plus).expect("derivable");
    print!("{}", trace.to_text());
    println!("{}", trace.to_json());

    let minus = Tagged::new(Sign::Minus, Modality::O, Literal::neg("CreditActivity"));
    print!("{}", explain(&t, cfg, &minus).unwrap().to_text());

    let wrong = Tagged::new(Sign::Plus, Modality::O, Literal::neg("CreditActivity"));
    println!("{wrong}: {}", explain(&t, cfg, &wrong).unwrap_err());
}
