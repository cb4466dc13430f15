//! Simplifying transformations: once a fact or a conclusion is known, the
//! theory can be rewritten into a smaller one that should agree with it on
//! every other literal.

use std::collections::BTreeSet;
use std::fmt;

use crate::engine::{compute_extension, EngineConfig};
use crate::extension::{Extension, Sign, Tagged};
use crate::model::{
    chain_truncate, rule_remove, AntecedentItem, Chain, Literal, Modality, OccurrenceClass, Rule,
    Theory,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transformation {
    /// Drop the plain fact `p`.
    EliminateFact(Literal),
    /// Consume `+∂O p`.
    ObligationProved(Literal),
    /// Consume `−∂O p`.
    ObligationRefuted(Literal),
    /// Consume `+∂P p`.
    PermissionProved(Literal),
    /// Consume `−∂P p`.
    PermissionRefuted(Literal),
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transformation::EliminateFact(p) => write!(f, "eliminate fact {p}"),
            Transformation::ObligationProved(p) => write!(f, "consume +dO {p}"),
            Transformation::ObligationRefuted(p) => write!(f, "consume -dO {p}"),
            Transformation::PermissionProved(p) => write!(f, "consume +dP {p}"),
            Transformation::PermissionRefuted(p) => write!(f, "consume -dP {p}"),
        }
    }
}

impl Transformation {
    pub fn literal(&self) -> &Literal {
        match self {
            Transformation::EliminateFact(p)
            | Transformation::ObligationProved(p)
            | Transformation::ObligationRefuted(p)
            | Transformation::PermissionProved(p)
            | Transformation::PermissionRefuted(p) => p,
        }
    }

    /// Conclusions the rewritten theory no longer derives on its own.
    pub fn recorded(&self) -> Vec<Tagged> {
        use Modality::*;
        use Sign::*;
        match self {
            Transformation::EliminateFact(_) => Vec::new(),
            Transformation::ObligationProved(p) => vec![
                Tagged::new(Plus, O, p.clone()),
                Tagged::new(Minus, O, p.complement()),
                Tagged::new(Minus, P, p.complement()),
            ],
            Transformation::ObligationRefuted(p) => vec![Tagged::new(Minus, O, p.clone())],
            Transformation::PermissionProved(p) => vec![
                Tagged::new(Plus, P, p.clone()),
                Tagged::new(Minus, O, p.complement()),
            ],
            Transformation::PermissionRefuted(p) => vec![Tagged::new(Minus, P, p.clone())],
        }
    }
}

fn has_plain_facts(t: &Theory) -> bool {
    t.facts().iter().any(|f| matches!(f, AntecedentItem::Plain(_)))
}

/// Transformations whose preconditions hold for `t` with extension `e`.
/// Conclusions are only consumed once no plain facts are left.
pub fn available(t: &Theory, e: &Extension) -> Vec<Transformation> {
    let mut out = Vec::new();
    for f in t.facts() {
        if let AntecedentItem::Plain(p) = f {
            if !t.has_fact(&AntecedentItem::Plain(p.complement())) {
                out.push(Transformation::EliminateFact(p.clone()));
            }
        }
    }
    if !has_plain_facts(t) {
        out.extend(e.plus_d_o.iter().cloned().map(Transformation::ObligationProved));
        out.extend(e.minus_d_o.iter().cloned().map(Transformation::ObligationRefuted));
        out.extend(e.plus_d_p.iter().cloned().map(Transformation::PermissionProved));
        out.extend(e.minus_d_p.iter().cloned().map(Transformation::PermissionRefuted));
    }
    out
}

/// Drops head element `k` and everything after it.
fn cut_from(rule: &Rule, k: usize) -> Option<Rule> {
    if k <= 1 {
        return None;
    }
    let keep = rule.head().elements()[..k - 1].to_vec();
    let otimes = rule.head().otimes_len().min(k - 1);
    let head = Chain::new(keep, otimes).expect("non-empty prefix");
    Some(Rule::from_parts_unchecked(
        rule.label().to_string(),
        rule.antecedent().clone(),
        rule.kind(),
        head,
    ))
}

fn class_of(rule: &Rule, l: &Literal) -> Option<(usize, OccurrenceClass)> {
    let k = rule.head().index_of(l)?;
    Some((k, rule.class_at(k).expect("index within head")))
}

/// Premise edits: rules meeting `kill` are deleted, items in `drop` are
/// removed from the survivors.
fn edit_premises(rule: &Rule, kill: &[AntecedentItem], drop: &[AntecedentItem]) -> Option<Rule> {
    if kill.iter().any(|k| rule.antecedent().contains(k)) {
        return None;
    }
    let ante: BTreeSet<AntecedentItem> = rule
        .antecedent()
        .iter()
        .filter(|a| !drop.contains(a))
        .cloned()
        .collect();
    Some(rule.with_antecedent(ante))
}

fn rewrite_rule(rule: &Rule, tr: &Transformation) -> Option<Rule> {
    use OccurrenceClass::*;
    let p = tr.literal();
    let np = p.complement();
    let m = |neg: bool, md: Modality, l: &Literal| AntecedentItem::modal(neg, md, l.clone());
    match tr {
        Transformation::EliminateFact(_) => {
            let r = edit_premises(rule, &[AntecedentItem::Plain(np)], &[AntecedentItem::Plain(p.clone())])?;
            // a complied-with obligation blocks the rest of its chain
            match class_of(&r, p) {
                Some((_, Obligation)) => Some(chain_truncate(&r, p)),
                _ => Some(r),
            }
        }
        Transformation::ObligationProved(_) => {
            let r = edit_premises(
                rule,
                &[m(true, Modality::O, p), m(false, Modality::O, &np), m(false, Modality::P, &np)],
                &[m(false, Modality::O, p)],
            )?;
            let r = match class_of(&r, &np) {
                Some((k, Obligation)) => cut_from(&r, k)?,
                Some((_, Permission)) => rule_remove(&r, &np)?,
                _ => r,
            };
            match class_of(&r, p) {
                Some((_, Obligation)) => rule_remove(&r, p),
                _ => Some(r),
            }
        }
        Transformation::ObligationRefuted(_) => {
            let r = edit_premises(rule, &[m(false, Modality::O, p)], &[m(true, Modality::O, p)])?;
            match class_of(&r, p) {
                Some((k, Obligation)) => cut_from(&r, k),
                _ => Some(r),
            }
        }
        Transformation::PermissionProved(_) => {
            let r = edit_premises(
                rule,
                &[m(true, Modality::P, p), m(false, Modality::O, &np)],
                &[m(false, Modality::P, p)],
            )?;
            let r = match class_of(&r, &np) {
                Some((k, Obligation)) => cut_from(&r, k)?,
                _ => r,
            };
            match class_of(&r, p) {
                Some((_, Permission)) => Some(chain_truncate(&r, p)),
                _ => Some(r),
            }
        }
        Transformation::PermissionRefuted(_) => {
            let r = edit_premises(rule, &[m(false, Modality::P, p)], &[m(true, Modality::P, p)])?;
            match class_of(&r, p) {
                Some((_, Permission)) => rule_remove(&r, p),
                _ => Some(r),
            }
        }
    }
}

/// The rewritten theory. Superiority pairs of deleted rules are dropped.
pub fn apply(t: &Theory, tr: &Transformation) -> Theory {
    let rules: Vec<Rule> = t.rules().iter().filter_map(|r| rewrite_rule(r, tr)).collect();
    let mut facts = t.facts().clone();
    if let Transformation::EliminateFact(p) = tr {
        facts.remove(&AntecedentItem::Plain(p.clone()));
    }
    Theory::from_parts_pruned(facts, rules, t.sup().clone())
}

/// A literal whose status differs between a theory and its rewrite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub modality: Modality,
    pub literal: Literal,
    pub before: Option<Sign>,
    pub after: Option<Sign>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: Option<Sign>| s.map_or("?".to_string(), |s| s.to_string());
        write!(
            f,
            "{} {}: {}d{} before, {}d{} after",
            self.modality,
            self.literal,
            show(self.before),
            self.modality,
            show(self.after),
            self.modality
        )
    }
}

/// Compares the extension of `t` with that of its rewrite (plus the
/// consumed conclusions) on the literals both theories mention.
pub fn compare(t: &Theory, tr: &Transformation, cfg: EngineConfig) -> Vec<Mismatch> {
    let before = compute_extension(t, cfg);
    let rewritten = apply(t, tr);
    let mut after = compute_extension(&rewritten, cfg);
    let shared: BTreeSet<Literal> = t
        .herbrand_literals()
        .intersection(&rewritten.herbrand_literals())
        .cloned()
        .collect();
    for tag in tr.recorded() {
        for sign in [Sign::Plus, Sign::Minus] {
            after.set_mut(sign, tag.modality).remove(&tag.literal);
        }
        after.set_mut(tag.sign, tag.modality).insert(tag.literal);
    }
    let mut out = Vec::new();
    for l in &shared {
        for md in Modality::ALL {
            let (b, a) = (before.status(md, l), after.status(md, l));
            if b != a {
                out.push(Mismatch {
                    modality: md,
                    literal: l.clone(),
                    before: b,
                    after: a,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_theory, serialize_theory};

    fn l(s: &str) -> Literal {
        Literal::from_str_lossy(s)
    }

    fn rewrite(src: &str, tr: Transformation) -> String {
        serialize_theory(&apply(&parse_theory(src).unwrap(), &tr))
    }

    #[test]
    fn fact_elimination() {
        let out = rewrite(
            "fact p.\nrule r: p, q =>O p (x) b.\nrule s: ~p =>O c.\nrule u: =>P p (o) d.\nsup s > r.",
            Transformation::EliminateFact(l("p")),
        );
        assert_eq!(out, "rule r: q =>O p.\nrule u: =>P p (o) d.\n");
    }

    #[test]
    fn obligation_proved_surgery() {
        let out = rewrite(
            "rule r: =>O a (x) b.\nrule s: =>O ~a (x) c.\nrule t: O(a) =>P x.\nrule u: =>P ~a (o) y.\nrule v: !O(a) =>O z.",
            Transformation::ObligationProved(l("a")),
        );
        assert_eq!(out, "rule r: =>O b.\nrule t: =>P x.\nrule u: =>P y.\n");
    }

    #[test]
    fn permission_proved_surgery() {
        let out = rewrite(
            "rule r: =>P b (o) a (o) c.\nrule s: =>O ~a (x) d.\nrule t: !O(~a) =>O y.",
            Transformation::PermissionProved(l("a")),
        );
        assert_eq!(out, "rule r: =>P b (o) a.\nrule t: !O(~a) =>O y.\n");
    }

    #[test]
    fn refutations() {
        let out = rewrite(
            "rule r: =>O x (x) p (x) y.\nrule s: O(p) =>O z.\nrule t: !O(p) =>O w.",
            Transformation::ObligationRefuted(l("p")),
        );
        assert_eq!(out, "rule r: =>O x.\nrule t: =>O w.\n");
        let out = rewrite(
            "rule r: =>P p (o) y.\nrule s: P(p) =>O z.\nrule t: !P(p) =>O w.\nrule u: =>O p.",
            Transformation::PermissionRefuted(l("p")),
        );
        assert_eq!(out, "rule r: =>P y.\nrule t: =>O w.\nrule u: =>O p.\n");
    }

    #[test]
    fn availability_waits_for_plain_facts() {
        let t = parse_theory("fact p.\nrule r: =>O a.").unwrap();
        let e = compute_extension(&t, EngineConfig::default());
        assert_eq!(available(&t, &e), vec![Transformation::EliminateFact(l("p"))]);
        let t2 = apply(&t, &Transformation::EliminateFact(l("p")));
        let e2 = compute_extension(&t2, EngineConfig::default());
        assert!(available(&t2, &e2).contains(&Transformation::ObligationProved(l("a"))));
    }

    #[test]
    fn credit_agrees_after_consuming() {
        let t = parse_theory(
            "rule r1: =>O ~CreditActivity (x) CivilPenalty.\nrule r2: CreditLicence =>P CreditActivity.\nsup r2 > r1.",
        )
        .unwrap();
        let tr = Transformation::ObligationProved(l("~CreditActivity"));
        assert!(compare(&t, &tr, EngineConfig::default()).is_empty());
    }

    #[test]
    fn refuted_obligation_attacker_counterexample() {
        // removing the refuted O-occurrence of p frees the permission for ~p
        let t = parse_theory("rule r: =>O p.\nrule s: =>O ~p.\nrule q: =>P ~p.").unwrap();
        let tr = Transformation::ObligationRefuted(l("p"));
        let m = compare(&t, &tr, EngineConfig::default());
        let flipped: Vec<(Modality, Option<Sign>, Option<Sign>)> =
            m.iter().map(|x| (x.modality, x.before, x.after)).collect();
        assert_eq!(
            flipped,
            vec![
                (Modality::O, Some(Sign::Minus), Some(Sign::Plus)),
                (Modality::P, Some(Sign::Minus), Some(Sign::Plus)),
            ]
        );
        assert!(m.iter().all(|x| x.literal == l("~p")));
    }
}
