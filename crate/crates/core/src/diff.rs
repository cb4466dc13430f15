//! Engine against oracle on seeded random theories, with greedy shrinking
//! of any disagreement.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::engine::{compute_extension, EngineConfig};
use crate::extension::Extension;
use crate::generate::{generate_theory, GenParams};
use crate::model::{rule_remove, Rule, Theory};
use crate::oracle::oracle_extension;

#[derive(Clone, Debug)]
pub struct DiffParams {
    pub seed: u64,
    pub cases: usize,
    pub max_atoms: usize,
    pub max_rules: usize,
    pub configs: Vec<EngineConfig>,
}

impl Default for DiffParams {
    fn default() -> Self {
        DiffParams {
            seed: 0,
            cases: 1000,
            max_atoms: 8,
            max_rules: 12,
            configs: EngineConfig::all(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Disagreement {
    pub case_seed: u64,
    pub config: EngineConfig,
    /// Locally minimal theory that still disagrees.
    pub theory: Theory,
    /// `None` when the run panicked.
    pub engine: Option<Extension>,
    pub oracle: Option<Extension>,
}

#[derive(Clone, Debug)]
pub struct DiffReport {
    pub cases: usize,
    pub checks: usize,
    pub disagreements: Vec<Disagreement>,
}

impl DiffReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Generator parameters for case `i` of a run: sizes are drawn up to the
/// bounds so that small theories are well represented.
pub fn case_params(p: &DiffParams, i: usize) -> GenParams {
    let case_seed = p.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    GenParams {
        atoms: rng.gen_range(1..=p.max_atoms.max(1)),
        rules: rng.gen_range(1..=p.max_rules.max(1)),
        seed: case_seed,
        ..GenParams::default()
    }
}

fn both(t: &Theory, cfg: EngineConfig) -> (Option<Extension>, Option<Extension>) {
    let engine = catch_unwind(AssertUnwindSafe(|| compute_extension(t, cfg))).ok();
    let oracle = catch_unwind(AssertUnwindSafe(|| oracle_extension(t, &cfg))).ok();
    (engine, oracle)
}

/// Whether engine and oracle compute the same extension.
pub fn agrees(t: &Theory, cfg: EngineConfig) -> bool {
    match both(t, cfg) {
        (Some(e), Some(o)) => e.same_sets(&o),
        _ => false,
    }
}

fn with_rules(t: &Theory, rules: Vec<Rule>) -> Theory {
    Theory::from_parts_pruned(t.facts().clone(), rules, t.sup().clone())
}

/// Every theory one deletion away from `t`.
fn candidates(t: &Theory) -> Vec<Theory> {
    let mut out = Vec::new();
    for i in 0..t.rules().len() {
        let mut rules = t.rules().to_vec();
        rules.remove(i);
        out.push(with_rules(t, rules));
    }
    for f in t.facts() {
        let mut facts = t.facts().clone();
        facts.remove(f);
        out.push(Theory::from_parts_pruned(facts, t.rules().to_vec(), t.sup().clone()));
    }
    for (w, l) in t.sup().iter() {
        let mut sup = t.sup().clone();
        sup.retain(|a, b| (a, b) != (w, l));
        out.push(Theory::from_parts_pruned(t.facts().clone(), t.rules().to_vec(), sup));
    }
    for (i, r) in t.rules().iter().enumerate() {
        for a in r.antecedent() {
            let mut ante = r.antecedent().clone();
            ante.remove(a);
            let mut rules = t.rules().to_vec();
            rules[i] = r.with_antecedent(ante);
            out.push(with_rules(t, rules));
        }
        if r.head().len() > 1 {
            for c in r.head().elements() {
                if let Some(smaller) = rule_remove(r, c) {
                    let mut rules = t.rules().to_vec();
                    rules[i] = smaller;
                    out.push(with_rules(t, rules));
                }
            }
        }
    }
    out
}

/// Greedy deletion of rules, facts, superiority pairs, premises and chain
/// elements while `still_fails` keeps holding.
pub fn shrink(t: &Theory, still_fails: impl Fn(&Theory) -> bool) -> Theory {
    let mut current = t.clone();
    'outer: loop {
        for c in candidates(&current) {
            if still_fails(&c) {
                current = c;
                continue 'outer;
            }
        }
        return current;
    }
}

/// Runs every case under every configuration on the rayon pool.
pub fn run_diff(p: &DiffParams) -> DiffReport {
    let mut disagreements: Vec<Disagreement> = (0..p.cases)
        .into_par_iter()
        .flat_map_iter(|i| {
            let gp = case_params(p, i);
            let t = generate_theory(&gp);
            p.configs
                .iter()
                .filter(|cfg| !agrees(&t, **cfg))
                .map(|cfg| (gp.seed, *cfg, t.clone()))
                .collect::<Vec<_>>()
        })
        .map(|(case_seed, config, t)| {
            let theory = shrink(&t, |c| !agrees(c, config));
            let (engine, oracle) = both(&theory, config);
            Disagreement {
                case_seed,
                config,
                theory,
                engine,
                oracle,
            }
        })
        .collect();
    disagreements.sort_by_key(|d| d.case_seed);
    DiffReport {
        cases: p.cases,
        checks: p.cases * p.configs.len(),
        disagreements,
    }
}
