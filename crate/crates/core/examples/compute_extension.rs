//! Compute the extension of a reparation chain in JSON and text form.
use ddl::{compute_extension, parse_theory, serialize_extension, EngineConfig, ExtensionFormat, Literal, Modality, Sign};

fn main() {
    let t = parse_theory(
        "fact Late.\n\
         fact ~Paid.\n\
         rule pay: Invoice =>O Paid (x) Interest (x) Court.\n\
         rule inv: Late =>O Paid (x) Interest.\n",
    )
    .unwrap();
    let e = compute_extension(&t, EngineConfig::default());
    println!("{}", serialize_extension(&e, ExtensionFormat::Json));
    print!("{}", serialize_extension(&e, ExtensionFormat::Text));
    assert_eq!(e.status(Modality::O, &Literal::pos("Interest")), Some(Sign::Plus));
}
