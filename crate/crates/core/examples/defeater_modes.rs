//! How each defeater mode and premise reading changes the same theory.
use ddl::{compute_extension, parse_theory, EngineConfig, Literal, Modality};

fn main() {
    let t = parse_theory(
        "fact Weekend.\nfact Emergency.\n\
         rule r1: Weekend =>O ~UseCar.\n\
         rule d: Weekend, Emergency ~> UseCar.\n\
         rule r3: P(UseCar) =>O Refuel.\n\
         sup d > r1.\n",
    )
    .unwrap();
    let use_car = Literal::pos("UseCar");
    let refuel = Literal::pos("Refuel");
    for cfg in EngineConfig::all() {
        let e = compute_extension(&t, cfg);
        println!(
            "{:<16} weak-premise={:<5}  P UseCar: {:?}  O ~UseCar: {:?}  O Refuel: {:?}",
            cfg.defeater_mode.name(),
            cfg.weak_perm_antecedent,
            e.status(Modality::P, &use_car),
            e.status(Modality::O, &use_car.complement()),
            e.status(Modality::O, &refuel),
        );
    }
}
