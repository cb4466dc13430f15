//! Seeded random theories for differential and property testing.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{AntecedentItem, Chain, Literal, Modality, Rule, RuleKind, Superiority, Theory};

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub atoms: usize,
    pub rules: usize,
    pub max_antecedent: usize,
    pub max_chain: usize,
    pub p_defeater: f64,
    pub p_perm_rule: f64,
    pub p_modal_antecedent: f64,
    pub p_fact: f64,
    /// Chance that a pair of clashing rules gets a superiority pair.
    pub sup_density: f64,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            atoms: 8,
            rules: 12,
            max_antecedent: 3,
            max_chain: 4,
            p_defeater: 0.1,
            p_perm_rule: 0.25,
            p_modal_antecedent: 0.5,
            p_fact: 0.3,
            sup_density: 0.3,
            seed: 0,
        }
    }
}

impl GenParams {
    /// Default probabilities with the given bounds.
    pub fn small(seed: u64, atoms: usize, rules: usize) -> Self {
        GenParams {
            atoms,
            rules,
            seed,
            ..GenParams::default()
        }
    }
}

fn literal(rng: &mut impl Rng, atoms: usize) -> Literal {
    let name = format!("a{}", rng.gen_range(0..atoms.max(1)));
    Literal::new(crate::model::Atom::new(name), rng.gen_bool(0.5))
}

fn item(rng: &mut impl Rng, p: &GenParams) -> AntecedentItem {
    let l = literal(rng, p.atoms);
    if rng.gen_bool(p.p_modal_antecedent) {
        let m = if rng.gen_bool(0.5) { Modality::O } else { Modality::P };
        AntecedentItem::modal(rng.gen_bool(0.3), m, l)
    } else {
        AntecedentItem::Plain(l)
    }
}

fn clash(a: &Rule, b: &Rule) -> bool {
    a.head()
        .elements()
        .iter()
        .any(|x| b.head().contains(&x.complement()))
}

/// Builds a theory from `p`; the same parameters always give the same
/// theory.
pub fn generate_theory(p: &GenParams) -> Theory {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut facts = BTreeSet::new();
    for _ in 0..p.atoms {
        if rng.gen_bool(p.p_fact) {
            facts.insert(item(&mut rng, p));
        }
    }
    let mut rules = Vec::with_capacity(p.rules);
    for i in 0..p.rules {
        let n_ante = rng.gen_range(0..=p.max_antecedent);
        let antecedent: Vec<AntecedentItem> = (0..n_ante).map(|_| item(&mut rng, p)).collect();
        let draw = rng.gen::<f64>();
        let (kind, chain) = if draw < p.p_defeater {
            (RuleKind::Defeater, Chain::single(literal(&mut rng, p.atoms), false))
        } else {
            let len = rng.gen_range(1..=p.max_chain.max(1));
            let elements: Vec<Literal> = (0..len).map(|_| literal(&mut rng, p.atoms)).collect();
            if draw < p.p_defeater + p.p_perm_rule {
                (RuleKind::DefeasibleP, Chain::odot(elements).expect("non-empty"))
            } else {
                let otimes = rng.gen_range(1..=len);
                (RuleKind::DefeasibleO, Chain::new(elements, otimes).expect("non-empty"))
            }
        };
        rules.push(Rule::new(format!("r{i}"), antecedent, kind, chain).expect("kind fits head"));
    }
    let mut sup = Superiority::new();
    for i in 0..rules.len() {
        for j in i + 1..rules.len() {
            if clash(&rules[i], &rules[j]) && rng.gen_bool(p.sup_density) {
                sup.insert(rules[i].label(), rules[j].label());
            }
        }
    }
    // rule order carries no meaning; shuffling keeps label order from
    // lining up with superiority
    rules.shuffle(&mut rng);
    Theory::new(facts, rules, sup).expect("labels are unique")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_theory, serialize_theory};
    use crate::queries::{check_consistency, ViolationKind};

    #[test]
    fn deterministic() {
        let p = GenParams::small(1, 3, 2);
        assert_eq!(generate_theory(&p), generate_theory(&p));
        assert_eq!(generate_theory(&p).rules().len(), 2);
    }

    #[test]
    fn acyclic_and_parseable() {
        for seed in 0..300 {
            let t = generate_theory(&GenParams::small(seed, 8, 12));
            let report = check_consistency(&t);
            assert!(report
                .violations
                .iter()
                .all(|v| v.kind != ViolationKind::CyclicSuperiority));
            let back = parse_theory(&serialize_theory(&t)).unwrap();
            assert_eq!(back.rules().len(), t.rules().len());
        }
    }
}
