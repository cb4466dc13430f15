//! Questions asked of a theory or of its extension: consistency, weak
//! permission, tag lookups and proof explanations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::engine::EngineConfig;
use crate::extension::{Extension, Sign, Tagged};
use crate::model::{
    occurrences, AntecedentItem, Literal, Modality, ModalLiteral, OccurrenceClass, Rule, Theory,
};
use crate::oracle::{self, item_status, justify, Justification, ProofState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    CyclicSuperiority,
    ComplementaryFacts,
    OClashFacts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub o_consistent: bool,
    pub violations: Vec<Violation>,
}

/// Rule labels on one cycle of the superiority relation, if any.
fn find_cycle(t: &Theory) -> Option<Vec<String>> {
    let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (w, l) in t.sup().iter() {
        succ.entry(w).or_default().push(l);
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut mark: HashMap<&str, Mark> = HashMap::new();
    for &start in succ.keys() {
        if mark.contains_key(start) {
            continue;
        }
        // iterative DFS keeping the current path
        let mut path: Vec<(&str, usize)> = vec![(start, 0)];
        mark.insert(start, Mark::Open);
        while let Some(&mut (node, ref mut next)) = path.last_mut() {
            let children = succ.get(node).map(Vec::as_slice).unwrap_or(&[]);
            if *next < children.len() {
                let child = children[*next];
                *next += 1;
                match mark.get(child) {
                    Some(Mark::Open) => {
                        let from = path.iter().position(|(n, _)| *n == child).unwrap();
                        return Some(path[from..].iter().map(|(n, _)| n.to_string()).collect());
                    }
                    Some(Mark::Done) => {}
                    None => {
                        mark.insert(child, Mark::Open);
                        path.push((child, 0));
                    }
                }
            } else {
                mark.insert(node, Mark::Done);
                path.pop();
            }
        }
    }
    None
}

/// Acyclicity of `>` and the complementary-fact conditions for consistency
/// and O-consistency.
pub fn check_consistency(t: &Theory) -> ConsistencyReport {
    let mut violations = Vec::new();
    let mut cyclic = false;
    if let Some(cycle) = find_cycle(t) {
        cyclic = true;
        let mut detail = cycle.join(" > ");
        detail.push_str(" > ");
        detail.push_str(&cycle[0]);
        violations.push(Violation {
            kind: ViolationKind::CyclicSuperiority,
            detail,
        });
    }
    let mut complementary = false;
    let mut o_clash = false;
    for f in t.facts() {
        let partners: Vec<(ViolationKind, AntecedentItem)> = match f {
            AntecedentItem::Plain(l) if l.is_positive() => vec![(
                ViolationKind::ComplementaryFacts,
                AntecedentItem::Plain(l.complement()),
            )],
            AntecedentItem::Modal(ModalLiteral {
                negated: false,
                modality,
                literal,
            }) => {
                let mut v = vec![(
                    ViolationKind::ComplementaryFacts,
                    AntecedentItem::modal(true, *modality, literal.clone()),
                )];
                if *modality == Modality::O {
                    if literal.is_positive() {
                        v.push((
                            ViolationKind::OClashFacts,
                            AntecedentItem::modal(false, Modality::O, literal.complement()),
                        ));
                    }
                    v.push((
                        ViolationKind::OClashFacts,
                        AntecedentItem::modal(false, Modality::P, literal.complement()),
                    ));
                }
                v
            }
            _ => Vec::new(),
        };
        for (kind, other) in partners {
            if t.has_fact(&other) {
                match kind {
                    ViolationKind::ComplementaryFacts => complementary = true,
                    _ => o_clash = true,
                }
                violations.push(Violation {
                    kind,
                    detail: format!("{f} and {other}"),
                });
            }
        }
    }
    ConsistencyReport {
        consistent: !cyclic && !complementary,
        o_consistent: !cyclic && !o_clash,
        violations,
    }
}

/// `l` is weakly permitted iff `∼l` is refuted as an obligation.
pub fn is_weakly_permitted(e: &Extension, l: &Literal) -> bool {
    e.minus_d_o.contains(&l.complement())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryTag {
    PlusO,
    MinusO,
    PlusP,
    MinusP,
    Weak,
}

impl std::str::FromStr for QueryTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+O" => Ok(QueryTag::PlusO),
            "-O" => Ok(QueryTag::MinusO),
            "+P" => Ok(QueryTag::PlusP),
            "-P" => Ok(QueryTag::MinusP),
            "weak" => Ok(QueryTag::Weak),
            other => Err(format!("unknown tag `{other}` (expected +O, -O, +P, -P or weak)")),
        }
    }
}

impl QueryTag {
    pub fn tagged(self, l: Literal) -> Option<Tagged> {
        let (sign, m) = match self {
            QueryTag::PlusO => (Sign::Plus, Modality::O),
            QueryTag::MinusO => (Sign::Minus, Modality::O),
            QueryTag::PlusP => (Sign::Plus, Modality::P),
            QueryTag::MinusP => (Sign::Minus, Modality::P),
            QueryTag::Weak => return None,
        };
        Some(Tagged::new(sign, m, l))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Undetermined,
}

impl Answer {
    /// Process exit code for the answer.
    pub fn exit_code(self) -> i32 {
        match self {
            Answer::Yes => 0,
            Answer::No => 3,
            Answer::Undetermined => 4,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Undetermined => "undetermined",
        })
    }
}

/// Status of `l` for `m`, counting literals the theory never mentions as
/// refuted (no rule can support them).
fn status(e: &Extension, m: Modality, l: &Literal) -> Option<Sign> {
    e.status(m, l).or_else(|| {
        (!e.undetermined(m).contains(l) && !e.base().contains(l)).then_some(Sign::Minus)
    })
}

/// Answers a tag query against an extension.
pub fn answer(e: &Extension, tag: QueryTag, l: &Literal) -> Answer {
    let (m, want, lit) = match tag {
        QueryTag::PlusO => (Modality::O, Sign::Plus, l.clone()),
        QueryTag::MinusO => (Modality::O, Sign::Minus, l.clone()),
        QueryTag::PlusP => (Modality::P, Sign::Plus, l.clone()),
        QueryTag::MinusP => (Modality::P, Sign::Minus, l.clone()),
        QueryTag::Weak => (Modality::O, Sign::Minus, l.complement()),
    };
    match status(e, m, &lit) {
        Some(s) if s == want => Answer::Yes,
        Some(_) => Answer::No,
        None => Answer::Undetermined,
    }
}

/// One step of an explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    pub conclusion: Tagged,
    /// Clause of the proof condition that fired, e.g. `2.2` or `2.3.1`.
    pub clause: String,
    pub rule: Option<String>,
    /// The attacking rule a rebuttal node deals with.
    pub against: Option<String>,
    pub children: Vec<ProofTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NotDerivable {
    #[error("{0} is undetermined")]
    Undetermined(Tagged),
    #[error("{0} does not hold; the opposite tag is proved")]
    Opposite(Tagged),
}

#[derive(Serialize)]
struct TraceJson {
    conclusion: String,
    clause: String,
    rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    against: Option<String>,
    children: Vec<TraceJson>,
}

impl ProofTrace {
    fn to_json_value(&self) -> TraceJson {
        TraceJson {
            conclusion: self.conclusion.to_string(),
            clause: self.clause.clone(),
            rule: self.rule.clone(),
            against: self.against.clone(),
            children: self.children.iter().map(ProofTrace::to_json_value).collect(),
        }
    }

    /// `{conclusion, clause, rule, children}` per node.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    /// Indented text, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let _ = write!(out, "{}{} [{}", "  ".repeat(depth), self.conclusion, self.clause);
        if let Some(r) = &self.rule {
            let _ = write!(out, " by {r}");
        }
        if let Some(a) = &self.against {
            let _ = write!(out, " against {a}");
        }
        out.push_str("]\n");
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(ProofTrace::depth).max().unwrap_or(0)
    }

    /// Every node, depth first.
    pub fn nodes(&self) -> Vec<&ProofTrace> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }
}

/// Tags that make a premise hold (`want = true`) or fail.
fn item_reasons(item: &AntecedentItem, s: &ProofState, cfg: &EngineConfig, want: bool) -> Vec<Tagged> {
    use Sign::*;
    let AntecedentItem::Modal(ModalLiteral {
        negated,
        modality,
        literal,
    }) = item
    else {
        return Vec::new();
    };
    let l = literal.clone();
    let has = |t: &Tagged| s.has(t.sign, t.modality, &t.literal);
    let (sat, fail): (Vec<Tagged>, Vec<Tagged>) = match (negated, modality) {
        (false, Modality::P) if cfg.weak_perm_antecedent => {
            let strong = Tagged::new(Plus, Modality::P, l.clone());
            let weak = Tagged::new(Minus, Modality::O, l.complement());
            let sat = if has(&strong) { vec![strong] } else { vec![weak] };
            (
                sat,
                vec![
                    Tagged::new(Minus, Modality::P, l.clone()),
                    Tagged::new(Plus, Modality::O, l.complement()),
                ],
            )
        }
        (false, m) => (vec![Tagged::new(Plus, *m, l.clone())], vec![Tagged::new(Minus, *m, l)]),
        (true, m) => (vec![Tagged::new(Minus, *m, l.clone())], vec![Tagged::new(Plus, *m, l)]),
    };
    let picked = if want { sat } else { fail };
    picked.into_iter().filter(|t| has(t)).collect()
}

/// Tags behind a rule being applicable (all premises and prefix elements)
/// or discarded (the first failing premise or element).
fn rule_reasons(rule: &Rule, j: usize, s: &ProofState, cfg: &EngineConfig, applicable: bool) -> Vec<Tagged> {
    let mut out = Vec::new();
    for a in rule.antecedent() {
        match item_status(a, s, cfg) {
            Some(true) if applicable => out.extend(item_reasons(a, s, cfg, true)),
            Some(false) if !applicable => return item_reasons(a, s, cfg, false),
            _ => {}
        }
    }
    for k in 1..j {
        let c = rule.head().get(k).expect("index within head").clone();
        let (pass, fail) = match rule.class_at(k) {
            Some(OccurrenceClass::Obligation) => (
                Tagged::new(Sign::Plus, Modality::O, c.clone()),
                Tagged::new(Sign::Minus, Modality::O, c),
            ),
            _ => (
                Tagged::new(Sign::Minus, Modality::P, c.clone()),
                Tagged::new(Sign::Plus, Modality::P, c),
            ),
        };
        if applicable {
            out.push(pass);
        } else if s.has(fail.sign, fail.modality, &fail.literal) {
            return vec![fail];
        } else if rule.class_at(k) == Some(OccurrenceClass::Obligation) {
            // complied with: the blocking reason is a fact
            let plain_c = AntecedentItem::Plain(rule.head().get(k).unwrap().clone());
            if s.theory().has_fact(&plain_c) {
                return Vec::new();
            }
        }
    }
    out
}

struct Explainer<'a> {
    cfg: EngineConfig,
    proof: ProofState<'a>,
    position: HashMap<Tagged, usize>,
    memo: HashMap<Tagged, ProofTrace>,
}

impl<'a> Explainer<'a> {
    fn node(&mut self, tag: &Tagged) -> ProofTrace {
        if let Some(t) = self.memo.get(tag) {
            return t.clone();
        }
        let pos = self.position[tag];
        let before = self.proof.prefix(pos);
        let j = justify(tag, &before, &self.cfg).expect("every proof step is justified");
        let cfg = self.cfg;
        let t = before.theory();
        let rule_of = |label: &str| t.rule(label).expect("label from theory");
        let (clause, rule, children) = match j {
            Justification::Fact => ("1".to_string(), None, Vec::new()),
            Justification::BlockingFact(_) => ("2.1".to_string(), None, Vec::new()),
            Justification::Supported {
                rule,
                index,
                attackers,
            } => {
                let mut children: Vec<ProofTrace> = rule_reasons(rule_of(&rule), index, &before, &cfg, true)
                    .iter()
                    .map(|r| self.node(r))
                    .collect();
                for a in attackers {
                    let (clause, by, reasons) = match a.beaten_by {
                        None => (
                            "2.3.1",
                            None,
                            rule_reasons(rule_of(&a.attacker), a.index, &before, &cfg, false),
                        ),
                        Some((by, by_index)) => {
                            let clause = match (tag.modality, a.obligation_attacker) {
                                (Modality::O, false) => "2.3.3",
                                _ => "2.3.2",
                            };
                            let reasons = rule_reasons(rule_of(&by), by_index, &before, &cfg, true);
                            (clause, Some(by), reasons)
                        }
                    };
                    children.push(ProofTrace {
                        conclusion: tag.clone(),
                        clause: clause.to_string(),
                        rule: by,
                        against: Some(a.attacker),
                        children: reasons.iter().map(|r| self.node(r)).collect(),
                    });
                }
                ("2.2".to_string(), Some(rule), children)
            }
            Justification::NoSupport { discarded } => {
                let children = discarded
                    .into_iter()
                    .map(|(label, index)| {
                        let reasons = rule_reasons(rule_of(&label), index, &before, &cfg, false);
                        ProofTrace {
                            conclusion: tag.clone(),
                            clause: "discarded".to_string(),
                            rule: Some(label),
                            against: None,
                            children: reasons.iter().map(|r| self.node(r)).collect(),
                        }
                    })
                    .collect();
                ("2.2".to_string(), None, children)
            }
            Justification::Defeated { attacker, index } => {
                let s_rule = rule_of(&attacker);
                let mut children: Vec<ProofTrace> = rule_reasons(s_rule, index, &before, &cfg, true)
                    .iter()
                    .map(|r| self.node(r))
                    .collect();
                let s_class = s_rule.class_at(index).expect("index within head");
                for o in occurrences(t, &tag.literal) {
                    let eligible = s_class == OccurrenceClass::Obligation
                        || o.class == OccurrenceClass::Obligation;
                    if eligible && t.sup().contains(o.rule.label(), &attacker) {
                        let reasons = rule_reasons(o.rule, o.index, &before, &cfg, false);
                        children.push(ProofTrace {
                            conclusion: tag.clone(),
                            clause: "discarded".to_string(),
                            rule: Some(o.rule.label().to_string()),
                            against: None,
                            children: reasons.iter().map(|r| self.node(r)).collect(),
                        });
                    }
                }
                ("2.3".to_string(), Some(attacker), children)
            }
        };
        let trace = ProofTrace {
            conclusion: tag.clone(),
            clause,
            rule,
            against: None,
            children,
        };
        self.memo.insert(tag.clone(), trace.clone());
        trace
    }
}

/// Explains why `target` holds by replaying the reference proof.
pub fn explain(t: &Theory, cfg: EngineConfig, target: &Tagged) -> Result<ProofTrace, NotDerivable> {
    let proof = oracle::oracle_proof(t, &cfg);
    let position: HashMap<Tagged, usize> = proof
        .sequence()
        .iter()
        .enumerate()
        .map(|(i, tag)| (tag.clone(), i))
        .collect();
    if !position.contains_key(target) {
        let opposite = Tagged::new(
            match target.sign {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            },
            target.modality,
            target.literal.clone(),
        );
        return Err(if position.contains_key(&opposite) {
            NotDerivable::Opposite(target.clone())
        } else {
            NotDerivable::Undetermined(target.clone())
        });
    }
    let mut ex = Explainer {
        cfg,
        proof,
        position,
        memo: HashMap::new(),
    };
    Ok(ex.node(target))
}

/// Literals that are weakly permitted in `e`.
pub fn weakly_permitted(e: &Extension) -> BTreeSet<Literal> {
    e.minus_d_o.iter().map(Literal::complement).collect()
}
