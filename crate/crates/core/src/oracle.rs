//! Direct evaluation of the proof conditions by naive fixpoint iteration.
//!
//! Slow on purpose: every condition is checked by scanning the whole theory.
//! This is the reference the engine is tested against.

use std::collections::HashSet;

use crate::engine::EngineConfig;
use crate::extension::{Extension, Sign, Tagged};
use crate::model::{
    occurrences, AntecedentItem, Literal, Modality, ModalLiteral, Occurrence, OccurrenceClass,
    Rule, Theory,
};

/// Tagged literals proved so far, in proof order.
#[derive(Clone, Debug)]
pub struct ProofState<'a> {
    theory: &'a Theory,
    proved: HashSet<Tagged>,
    sequence: Vec<Tagged>,
}

impl<'a> ProofState<'a> {
    pub fn new(theory: &'a Theory) -> Self {
        ProofState {
            theory,
            proved: HashSet::new(),
            sequence: Vec::new(),
        }
    }

    pub fn theory(&self) -> &'a Theory {
        self.theory
    }

    pub fn has(&self, sign: Sign, m: Modality, l: &Literal) -> bool {
        self.proved.contains(&Tagged::new(sign, m, l.clone()))
    }

    /// Adds a tagged literal. Returns false if it was already present.
    pub fn insert(&mut self, t: Tagged) -> bool {
        if self.proved.insert(t.clone()) {
            self.sequence.push(t);
            true
        } else {
            false
        }
    }

    pub fn sequence(&self) -> &[Tagged] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// The first `n` entries of the proof as a state of its own.
    pub fn prefix(&self, n: usize) -> ProofState<'a> {
        let sequence = self.sequence[..n].to_vec();
        ProofState {
            theory: self.theory,
            proved: sequence.iter().cloned().collect(),
            sequence,
        }
    }

    fn fact(&self, item: &AntecedentItem) -> bool {
        self.theory.has_fact(item)
    }

    fn modal_fact(&self, negated: bool, m: Modality, l: &Literal) -> bool {
        self.fact(&AntecedentItem::Modal(ModalLiteral::new(negated, m, l.clone())))
    }

    fn plain_fact(&self, l: &Literal) -> bool {
        self.fact(&AntecedentItem::Plain(l.clone()))
    }

    /// The obligation `c` has been complied with: `c ∈ F`, `∼c ∉ F`.
    fn fulfilled(&self, c: &Literal) -> bool {
        self.plain_fact(c) && !self.plain_fact(&c.complement())
    }
}

/// Whether a premise holds (`Some(true)`), fails (`Some(false)`) or is still
/// open.
pub fn item_status(item: &AntecedentItem, s: &ProofState, cfg: &EngineConfig) -> Option<bool> {
    use Modality::*;
    use Sign::*;
    let (pos, neg) = match item {
        AntecedentItem::Plain(l) => return Some(s.plain_fact(l)),
        AntecedentItem::Modal(ModalLiteral {
            negated: false,
            modality: O,
            literal: l,
        }) => (s.has(Plus, O, l), s.has(Minus, O, l)),
        AntecedentItem::Modal(ModalLiteral {
            negated: true,
            modality: O,
            literal: l,
        }) => (s.has(Minus, O, l), s.has(Plus, O, l)),
        AntecedentItem::Modal(ModalLiteral {
            negated: false,
            modality: P,
            literal: l,
        }) => {
            if cfg.weak_perm_antecedent {
                let nl = l.complement();
                (
                    s.has(Plus, P, l) || s.has(Minus, O, &nl),
                    s.has(Minus, P, l) && s.has(Plus, O, &nl),
                )
            } else {
                (s.has(Plus, P, l), s.has(Minus, P, l))
            }
        }
        AntecedentItem::Modal(ModalLiteral {
            negated: true,
            modality: P,
            literal: l,
        }) => (s.has(Minus, P, l), s.has(Plus, P, l)),
    };
    assert!(!(pos && neg), "premise {item} both holds and fails");
    if pos {
        Some(true)
    } else if neg {
        Some(false)
    } else {
        None
    }
}

/// Status of the head element at 1-based `k` as a prefix of a later element:
/// `Some(true)` lets later elements through, `Some(false)` blocks them.
fn element_status(rule: &Rule, k: usize, s: &ProofState) -> Option<bool> {
    let c = rule.head().get(k).expect("index within head");
    match rule.class_at(k) {
        Some(OccurrenceClass::Obligation) => {
            assert!(
                !(s.has(Sign::Minus, Modality::O, c) && s.has(Sign::Plus, Modality::O, c)),
                "{c} both obliged and refuted"
            );
            if s.has(Sign::Minus, Modality::O, c) || s.fulfilled(c) {
                Some(false)
            } else if s.has(Sign::Plus, Modality::O, c) {
                Some(true)
            } else {
                None
            }
        }
        Some(OccurrenceClass::Permission) => {
            assert!(
                !(s.has(Sign::Minus, Modality::P, c) && s.has(Sign::Plus, Modality::P, c)),
                "{c} both permitted and refuted"
            );
            if s.has(Sign::Plus, Modality::P, c) {
                Some(false)
            } else if s.has(Sign::Minus, Modality::P, c) {
                Some(true)
            } else {
                None
            }
        }
        _ => unreachable!("defeaters have no prefix"),
    }
}

/// `Some(true)` if applicable, `Some(false)` if discarded, `None` otherwise,
/// for the head element at 1-based `j`.
pub fn rule_status(rule: &Rule, j: usize, s: &ProofState, cfg: &EngineConfig) -> Option<bool> {
    let mut applicable = true;
    let mut discarded = false;
    for a in rule.antecedent() {
        match item_status(a, s, cfg) {
            Some(true) => {}
            Some(false) => {
                discarded = true;
                applicable = false;
            }
            None => applicable = false,
        }
    }
    for k in 1..j {
        match element_status(rule, k, s) {
            Some(true) => {}
            Some(false) => {
                discarded = true;
                applicable = false;
            }
            None => applicable = false,
        }
    }
    if applicable {
        Some(true)
    } else if discarded {
        Some(false)
    } else {
        None
    }
}

/// Applicability for `q` at `j` in the conditions for `±∂O`.
pub fn applicable_o(rule: &Rule, q: &Literal, j: usize, s: &ProofState, cfg: &EngineConfig) -> bool {
    rule.head().get(j) == Some(q) && rule_status(rule, j, s, cfg) == Some(true)
}

/// Applicability for `q` at `j` in the conditions for `±∂P`.
pub fn applicable_p(rule: &Rule, q: &Literal, j: usize, s: &ProofState, cfg: &EngineConfig) -> bool {
    rule.head().get(j) == Some(q) && rule_status(rule, j, s, cfg) == Some(true)
}

/// Discarded for `q` at `j`.
pub fn discarded(rule: &Rule, q: &Literal, j: usize, s: &ProofState, cfg: &EngineConfig) -> bool {
    rule.head().get(j) == Some(q) && rule_status(rule, j, s, cfg) == Some(false)
}

/// Which part of a proof condition was satisfied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Clause 1: the modal literal is a fact.
    Fact,
    /// Clause 2.1 of a negative condition: a blocking fact.
    BlockingFact(AntecedentItem),
    /// Clauses 2.2/2.3 of a positive condition.
    Supported {
        rule: String,
        index: usize,
        attackers: Vec<Rebuttal>,
    },
    /// Clause 2.2 of a negative condition: every supporting rule is discarded.
    NoSupport { discarded: Vec<(String, usize)> },
    /// Clause 2.3 of a negative condition: an applicable attacker nobody beats.
    Defeated { attacker: String, index: usize },
}

/// How one attacker was dealt with in a positive condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rebuttal {
    pub attacker: String,
    pub index: usize,
    /// `None` when the attacker is discarded, otherwise the stronger rule.
    pub beaten_by: Option<(String, usize)>,
    /// Whether the attacker is an obligation occurrence.
    pub obligation_attacker: bool,
}

fn beaten_by<'t>(
    attacker: &Occurrence<'t>,
    q: &Literal,
    s: &ProofState<'t>,
    cfg: &EngineConfig,
) -> Option<(String, usize)> {
    let theory = s.theory();
    occurrences(theory, q).into_iter().find_map(|t| {
        let eligible =
            attacker.class == OccurrenceClass::Obligation || t.class == OccurrenceClass::Obligation;
        (eligible
            && theory.sup().contains(t.rule.label(), attacker.rule.label())
            && rule_status(t.rule, t.index, s, cfg) == Some(true))
        .then(|| (t.rule.label().to_string(), t.index))
    })
}

fn unbeatable<'t>(attacker: &Occurrence<'t>, q: &Literal, s: &ProofState<'t>, cfg: &EngineConfig) -> bool {
    let theory = s.theory();
    occurrences(theory, q).into_iter().all(|t| {
        let eligible =
            attacker.class == OccurrenceClass::Obligation || t.class == OccurrenceClass::Obligation;
        !eligible
            || !theory.sup().contains(t.rule.label(), attacker.rule.label())
            || rule_status(t.rule, t.index, s, cfg) == Some(false)
    })
}

fn supports(m: Modality, class: OccurrenceClass, cfg: &EngineConfig) -> bool {
    match m {
        Modality::O => class == OccurrenceClass::Obligation,
        Modality::P => cfg.defeater_mode.supports_permission(class),
    }
}

/// Attackers of `q` for modality `m`: every occurrence of `∼q` for
/// obligations, only obligation occurrences for permissions.
fn attacks(m: Modality, class: OccurrenceClass) -> bool {
    match m {
        Modality::O => true,
        Modality::P => class == OccurrenceClass::Obligation,
    }
}

fn blocking_facts(m: Modality, q: &Literal) -> Vec<AntecedentItem> {
    let nq = q.complement();
    match m {
        Modality::O => vec![
            AntecedentItem::modal(false, Modality::O, nq.clone()),
            AntecedentItem::modal(true, Modality::O, q.clone()),
            AntecedentItem::modal(false, Modality::P, nq),
        ],
        Modality::P => vec![
            AntecedentItem::modal(false, Modality::O, nq),
            AntecedentItem::modal(true, Modality::P, q.clone()),
        ],
    }
}

/// Evaluates the proof condition for `tag` against `s`, returning the
/// clause that makes it hold.
pub fn justify(tag: &Tagged, s: &ProofState, cfg: &EngineConfig) -> Option<Justification> {
    let theory = s.theory();
    let (m, q) = (tag.modality, &tag.literal);
    let nq = q.complement();
    let own_fact = s.modal_fact(false, m, q);
    let blocker = blocking_facts(m, q).into_iter().find(|f| s.fact(f));
    let support: Vec<Occurrence> = occurrences(theory, q)
        .into_iter()
        .filter(|o| supports(m, o.class, cfg))
        .collect();
    let attackers: Vec<Occurrence> = occurrences(theory, &nq)
        .into_iter()
        .filter(|o| attacks(m, o.class))
        .collect();

    match tag.sign {
        Sign::Plus => {
            if own_fact {
                return Some(Justification::Fact);
            }
            if blocker.is_some() {
                return None;
            }
            let winner = support
                .iter()
                .find(|o| rule_status(o.rule, o.index, s, cfg) == Some(true))?;
            let mut rebuttals = Vec::with_capacity(attackers.len());
            for a in &attackers {
                let obligation_attacker = a.class == OccurrenceClass::Obligation;
                if rule_status(a.rule, a.index, s, cfg) == Some(false) {
                    rebuttals.push(Rebuttal {
                        attacker: a.rule.label().to_string(),
                        index: a.index,
                        beaten_by: None,
                        obligation_attacker,
                    });
                } else {
                    let t = beaten_by(a, q, s, cfg)?;
                    rebuttals.push(Rebuttal {
                        attacker: a.rule.label().to_string(),
                        index: a.index,
                        beaten_by: Some(t),
                        obligation_attacker,
                    });
                }
            }
            Some(Justification::Supported {
                rule: winner.rule.label().to_string(),
                index: winner.index,
                attackers: rebuttals,
            })
        }
        Sign::Minus => {
            if own_fact {
                return None;
            }
            if let Some(f) = blocker {
                return Some(Justification::BlockingFact(f));
            }
            if support
                .iter()
                .all(|o| rule_status(o.rule, o.index, s, cfg) == Some(false))
            {
                return Some(Justification::NoSupport {
                    discarded: support
                        .iter()
                        .map(|o| (o.rule.label().to_string(), o.index))
                        .collect(),
                });
            }
            attackers
                .iter()
                .find(|a| {
                    rule_status(a.rule, a.index, s, cfg) == Some(true) && unbeatable(a, q, s, cfg)
                })
                .map(|a| Justification::Defeated {
                    attacker: a.rule.label().to_string(),
                    index: a.index,
                })
        }
    }
}

/// Whether the proof condition for `tag` holds against `s`.
pub fn holds(tag: &Tagged, s: &ProofState, cfg: &EngineConfig) -> bool {
    justify(tag, s, cfg).is_some()
}

const TAGS: [(Sign, Modality); 4] = [
    (Sign::Plus, Modality::O),
    (Sign::Minus, Modality::O),
    (Sign::Plus, Modality::P),
    (Sign::Minus, Modality::P),
];

/// Runs the fixpoint and returns the final proof state.
pub fn oracle_proof<'a>(t: &'a Theory, cfg: &EngineConfig) -> ProofState<'a> {
    let hb: Vec<Literal> = t.herbrand_literals().into_iter().collect();
    let mut s = ProofState::new(t);
    loop {
        let mut changed = false;
        for l in &hb {
            for (sign, m) in TAGS {
                let tag = Tagged::new(sign, m, l.clone());
                if !s.proved.contains(&tag) && holds(&tag, &s, cfg) {
                    s.insert(tag);
                    changed = true;
                }
            }
        }
        if !changed {
            return s;
        }
    }
}

/// The extension computed by the reference fixpoint.
pub fn oracle_extension(t: &Theory, cfg: &EngineConfig) -> Extension {
    let s = oracle_proof(t, cfg);
    let mut e = Extension::default();
    for tag in s.sequence() {
        e.set_mut(tag.sign, tag.modality).insert(tag.literal.clone());
    }
    let hb = t.herbrand_literals();
    e.fill_undetermined(&hb);
    e.input_inconsistent = !crate::queries::check_consistency(t).consistent;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_theory;

    fn l(s: &str) -> Literal {
        Literal::from_str_lossy(s)
    }

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn ext(text: &str) -> Extension {
        oracle_extension(&parse_theory(text).unwrap(), &cfg())
    }

    fn state<'a>(t: &'a Theory, tags: &[(Sign, Modality, &str)]) -> ProofState<'a> {
        let mut s = ProofState::new(t);
        for (sign, m, lit) in tags {
            s.insert(Tagged::new(*sign, *m, l(lit)));
        }
        s
    }

    #[test]
    fn applicable_o_needs_violation() {
        let t = parse_theory("fact ~a.\nrule r: =>O a (x) b.").unwrap();
        let r = &t.rules()[0];
        let s = state(&t, &[(Sign::Plus, Modality::O, "a")]);
        assert!(applicable_o(r, &l("b"), 2, &s, &cfg()));

        let t = parse_theory("fact a.\nrule r: =>O a (x) b.").unwrap();
        let r = &t.rules()[0];
        let s = state(&t, &[(Sign::Plus, Modality::O, "a")]);
        assert!(!applicable_o(r, &l("b"), 2, &s, &cfg()));
        assert!(discarded(r, &l("b"), 2, &s, &cfg()));

        let t = parse_theory("rule r: O(x) =>O y.").unwrap();
        let s = ProofState::new(&t);
        assert!(!applicable_o(&t.rules()[0], &l("y"), 1, &s, &cfg()));
        assert!(!discarded(&t.rules()[0], &l("y"), 1, &s, &cfg()));
    }

    #[test]
    fn applicable_p_needs_refuted_permissions() {
        let t = parse_theory("rule r: =>P a (o) b.").unwrap();
        let r = &t.rules()[0];
        let s = state(&t, &[(Sign::Minus, Modality::P, "a")]);
        assert!(applicable_p(r, &l("b"), 2, &s, &cfg()));
        let s = state(&t, &[(Sign::Plus, Modality::P, "a")]);
        assert!(!applicable_p(r, &l("b"), 2, &s, &cfg()));
        assert!(discarded(r, &l("b"), 2, &s, &cfg()));
    }

    #[test]
    fn mixed_prefix() {
        let t = parse_theory("fact ~a.\nfact ~b.\nrule r: =>O a (x) b (o) c.").unwrap();
        let r = &t.rules()[0];
        let s = state(&t, &[(Sign::Plus, Modality::O, "a"), (Sign::Plus, Modality::O, "b")]);
        assert!(applicable_p(r, &l("c"), 3, &s, &cfg()));
        let s = state(&t, &[(Sign::Plus, Modality::O, "a")]);
        assert!(!applicable_p(r, &l("c"), 3, &s, &cfg()));
        assert!(!discarded(r, &l("c"), 3, &s, &cfg()));
    }

    #[test]
    fn empty_antecedent_is_not_discarded() {
        let t = parse_theory("rule r: =>O a.").unwrap();
        assert!(!discarded(&t.rules()[0], &l("a"), 1, &ProofState::new(&t), &cfg()));
    }

    #[test]
    fn weekend_defeater_blocks() {
        let e = ext(
            "fact Weekend.\nfact AirPollution.\nfact Emergency.\n\
             rule r1: Weekend, AirPollution =>O ~UseCar.\n\
             rule r2: Weekend, Emergency ~> UseCar.",
        );
        assert!(e.minus_d_o.contains(&l("~UseCar")));
        assert!(!e.plus_d_o.contains(&l("UseCar")));
    }

    #[test]
    fn copyright_chain() {
        let e = ext(
            "fact infringement.\nfact beforeJudgment.\n\
             rule r: infringement, beforeJudgment =>P ActualDamages (o) StatutoryDamages.",
        );
        assert!(e.plus_d_p.contains(&l("ActualDamages")));
        assert!(e.minus_d_p.contains(&l("StatutoryDamages")));
    }

    #[test]
    fn self_supporting_loop_is_undetermined() {
        let e = ext("rule r: O(a) =>O a.");
        assert!(e.undetermined_o.contains(&l("a")));
    }

    #[test]
    fn park_both_refuted() {
        let e = ext(
            "fact Park.\nfact Vehicle.\nfact Emergency.\n\
             rule r1: Park, Vehicle =>O ~Enter.\nrule r2: Park, Emergency =>O Enter.",
        );
        assert!(e.minus_d_o.contains(&l("Enter")));
        assert!(e.minus_d_o.contains(&l("~Enter")));
    }

    #[test]
    fn team_defeat() {
        // each attacker is beaten by a different rule
        let e = ext(
            "rule a1: =>O q.\nrule a2: =>O q.\nrule b1: =>O ~q.\nrule b2: =>O ~q.\n\
             sup a1 > b1.\nsup a2 > b2.",
        );
        assert!(e.plus_d_o.contains(&l("q")));
        assert!(e.minus_d_o.contains(&l("~q")));
    }

    #[test]
    fn permission_attacker_needs_obligation_counter() {
        // a stronger permission does not beat a permission attacker of +O
        let e = ext("rule o: =>O q.\nrule p: =>P ~q.\nrule w: =>P q.\nsup w > p.");
        assert!(e.minus_d_o.contains(&l("q")));
        let e = ext("rule o: =>O q.\nrule p: =>P ~q.\nsup o > p.");
        assert!(e.plus_d_o.contains(&l("q")));
    }
}
