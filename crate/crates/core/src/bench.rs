//! Scaling families and the benchmark that measures the engine on them.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::engine::{EngineConfig, WorkingTheory};
use crate::model::{AntecedentItem, Chain, Literal, Modality, Rule, RuleKind, Superiority, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Blocks of violated `⊗`-chains, each activating the next element.
    Chain,
    /// `O(a_{i-1}) ⇒O a_i`: every conclusion waits for the previous one.
    Dependency,
    /// One strong rule beating a wide fan of opposing rules.
    Fan,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Chain, Family::Dependency, Family::Fan];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Chain => "chain",
            Family::Dependency => "dependency",
            Family::Fan => "fan",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chain" => Ok(Family::Chain),
            "dependency" => Ok(Family::Dependency),
            "fan" => Ok(Family::Fan),
            other => Err(format!("unknown family `{other}` (chain, dependency, fan)")),
        }
    }
}

const CHAIN_BLOCK: usize = 8;
const FAN_WIDTH: usize = 16;

fn lit(name: String) -> Literal {
    Literal::pos(name)
}

/// A member of `family` whose size is at least `target`.
pub fn family_theory(family: Family, target: usize) -> Theory {
    let mut facts = Vec::new();
    let mut rules = Vec::new();
    let mut sup = Superiority::new();
    let mut size = 0;
    let mut b = 0;
    while size < target.max(1) {
        match family {
            Family::Chain => {
                let elems: Vec<Literal> = (0..CHAIN_BLOCK).map(|j| lit(format!("c{b}_{j}"))).collect();
                for e in &elems[..CHAIN_BLOCK - 1] {
                    facts.push(AntecedentItem::Plain(e.complement()));
                }
                let chain = Chain::otimes(elems).expect("non-empty");
                rules.push(Rule::new(format!("r{b}"), [], RuleKind::DefeasibleO, chain).expect("valid"));
                size += 2 * CHAIN_BLOCK;
            }
            Family::Dependency => {
                let ante = (b > 0).then(|| AntecedentItem::modal(false, Modality::O, lit(format!("a{}", b - 1))));
                rules.push(Rule::obligation(format!("r{b}"), ante, vec![lit(format!("a{b}"))]).expect("valid"));
                size += if b > 0 { 3 } else { 2 };
            }
            Family::Fan => {
                let x = lit(format!("x{b}"));
                let winner = format!("w{b}");
                rules.push(Rule::obligation(winner.clone(), [], vec![x.clone()]).expect("valid"));
                for i in 0..FAN_WIDTH {
                    let y = lit(format!("y{b}_{i}"));
                    facts.push(AntecedentItem::Plain(y.clone()));
                    let loser = format!("l{b}_{i}");
                    rules.push(
                        Rule::obligation(loser.clone(), [AntecedentItem::Plain(y)], vec![x.complement()])
                            .expect("valid"),
                    );
                    sup.insert(winner.clone(), loser);
                }
                size += 2 + 4 * FAN_WIDTH;
            }
        }
        b += 1;
    }
    Theory::new(facts, rules, sup).expect("unique labels")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub family: Family,
    /// Actual theory sizes reached for each requested size.
    pub sizes: Vec<usize>,
    /// Median seconds per size.
    pub wall_times: Vec<f64>,
    pub mutation_counts: Vec<u64>,
    pub slope_time: f64,
    pub slope_mutations: f64,
}

impl BenchReport {
    /// `mutation_counts[i+1] / mutation_counts[i]` for each step.
    pub fn mutation_ratios(&self) -> Vec<f64> {
        self.mutation_counts
            .windows(2)
            .map(|w| w[1] as f64 / w[0].max(1) as f64)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Builds each size, runs the engine `reps` times (at least 3) and reports
/// medians and fitted slopes.
pub fn run_bench(family: Family, sizes: &[usize], reps: usize) -> BenchReport {
    let reps = reps.max(3);
    let mut actual = Vec::new();
    let mut wall_times = Vec::new();
    let mut mutation_counts = Vec::new();
    for &s in sizes {
        let t = family_theory(family, s);
        let mut times = Vec::with_capacity(reps);
        let mut mutations = 0;
        for _ in 0..reps {
            let start = Instant::now();
            let mut w = WorkingTheory::new(&t, EngineConfig::default());
            w.run();
            let _ = w.extension();
            times.push(start.elapsed().as_secs_f64());
            mutations = w.stats().mutations;
        }
        actual.push(t.size());
        wall_times.push(median(times));
        mutation_counts.push(mutations);
    }
    let xs: Vec<f64> = actual.iter().map(|&s| s as f64).collect();
    let ms: Vec<f64> = mutation_counts.iter().map(|&m| m as f64).collect();
    BenchReport {
        family,
        slope_time: log_log_slope(&xs, &wall_times),
        slope_mutations: log_log_slope(&xs, &ms),
        sizes: actual,
        wall_times,
        mutation_counts,
    }
}
