//! Logical vocabulary of the reasoner.
//!
//! Literals, modal literals, reparation chains (`⊗` obligations followed by
//! `⊙` permissions), rules and theories, together with the pure chain and
//! complement algebra used by the engine, the oracle and the transformations.
//!
//! Chain indices are 1-based throughout: the element at index `n` is the one
//! whose prefix (itself included) has length `n`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A propositional atom. Names are case-sensitive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: impl AsRef<str>) -> Self {
        Atom(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An atom with a classical polarity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    atom: Atom,
    positive: bool,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Self {
        Literal { atom, positive }
    }

    /// Positive literal over `name`.
    pub fn pos(name: impl AsRef<str>) -> Self {
        Literal::new(Atom::new(name), true)
    }

    /// Negative literal `¬name`.
    pub fn neg(name: impl AsRef<str>) -> Self {
        Literal::new(Atom::new(name), false)
    }

    /// Parses `a` or `~a`. No validation of the identifier itself.
    pub fn from_str_lossy(text: &str) -> Self {
        match text.strip_prefix('~') {
            Some(rest) => Literal::neg(rest),
            None => Literal::pos(text),
        }
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// `∼q`: flips polarity.
    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        f.write_str(self.atom.name())
    }
}

/// Complement of a plain literal; an involution.
pub fn complement_literal(q: &Literal) -> Literal {
    q.complement()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    /// Obligation.
    O,
    /// Permission.
    P,
}

impl Modality {
    pub const ALL: [Modality; 2] = [Modality::O, Modality::P];
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modality::O => f.write_str("O"),
            Modality::P => f.write_str("P"),
        }
    }
}

/// `□l` or `¬□l`. Outer negation and inner polarity are independent:
/// `¬O l` is not `O ∼l`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalLiteral {
    pub negated: bool,
    pub modality: Modality,
    pub literal: Literal,
}

impl ModalLiteral {
    pub fn new(negated: bool, modality: Modality, literal: Literal) -> Self {
        ModalLiteral {
            negated,
            modality,
            literal,
        }
    }

    pub fn obliged(literal: Literal) -> Self {
        ModalLiteral::new(false, Modality::O, literal)
    }

    pub fn permitted(literal: Literal) -> Self {
        ModalLiteral::new(false, Modality::P, literal)
    }
}

impl fmt::Debug for ModalLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ModalLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        write!(f, "{}({})", self.modality, self.literal)
    }
}

/// A premise of a rule or a fact: a plain literal or a (non-nested) modal
/// literal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AntecedentItem {
    Plain(Literal),
    Modal(ModalLiteral),
}

impl AntecedentItem {
    pub fn plain(literal: Literal) -> Self {
        AntecedentItem::Plain(literal)
    }

    pub fn modal(negated: bool, modality: Modality, literal: Literal) -> Self {
        AntecedentItem::Modal(ModalLiteral::new(negated, modality, literal))
    }

    /// The literal under the (optional) modal wrapper.
    pub fn literal(&self) -> &Literal {
        match self {
            AntecedentItem::Plain(l) => l,
            AntecedentItem::Modal(m) => &m.literal,
        }
    }
}

impl fmt::Debug for AntecedentItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AntecedentItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AntecedentItem::Plain(l) => fmt::Display::fmt(l, f),
            AntecedentItem::Modal(m) => fmt::Display::fmt(m, f),
        }
    }
}

impl From<Literal> for AntecedentItem {
    fn from(l: Literal) -> Self {
        AntecedentItem::Plain(l)
    }
}

impl From<ModalLiteral> for AntecedentItem {
    fn from(m: ModalLiteral) -> Self {
        AntecedentItem::Modal(m)
    }
}

/// The complement set `~x` of a premise:
///
/// | item    | complement              |
/// |---------|-------------------------|
/// | `l`     | `{∼l}`                  |
/// | `O m`   | `{¬O m, O ∼m, P ∼m}`    |
/// | `¬O m`  | `{O m}`                 |
/// | `P m`   | `{¬P m, O ∼m}`          |
/// | `¬P m`  | `{P m}`                 |
///
/// `¬P m` deliberately does not include `O m`.
pub fn complement_set(item: &AntecedentItem) -> BTreeSet<AntecedentItem> {
    use AntecedentItem::*;
    let mut out = BTreeSet::new();
    match item {
        Plain(l) => {
            out.insert(Plain(l.complement()));
        }
        Modal(ModalLiteral {
            negated: false,
            modality: Modality::O,
            literal: m,
        }) => {
            out.insert(AntecedentItem::modal(true, Modality::O, m.clone()));
            out.insert(AntecedentItem::modal(false, Modality::O, m.complement()));
            out.insert(AntecedentItem::modal(false, Modality::P, m.complement()));
        }
        Modal(ModalLiteral {
            negated: true,
            modality,
            literal: m,
        }) => {
            out.insert(AntecedentItem::modal(false, *modality, m.clone()));
        }
        Modal(ModalLiteral {
            negated: false,
            modality: Modality::P,
            literal: m,
        }) => {
            out.insert(AntecedentItem::modal(true, Modality::P, m.clone()));
            out.insert(AntecedentItem::modal(false, Modality::O, m.complement()));
        }
    }
    out
}

/// Which connective precedes a chain element (or, at index 1, which mode the
/// rule has).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Segment {
    /// `⊗`-preceded, or index 1 of an obligation rule.
    Otimes,
    /// `⊙`-preceded, or index 1 of a permission rule.
    Odot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("a chain needs at least one element")]
    Empty,
    #[error("the ⊗-segment ({otimes}) is longer than the chain ({len})")]
    SegmentTooLong { otimes: usize, len: usize },
}

/// A reparation chain `c1 ⊗ … ⊗ ck ⊙ … ⊙ cn`: the first `otimes_len`
/// elements form the `⊗`-segment and the rest the `⊙`-segment.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    elements: Vec<Literal>,
    otimes_len: usize,
}

impl Chain {
    pub fn new(elements: Vec<Literal>, otimes_len: usize) -> Result<Self, ChainError> {
        if elements.is_empty() {
            return Err(ChainError::Empty);
        }
        if otimes_len > elements.len() {
            return Err(ChainError::SegmentTooLong {
                otimes: otimes_len,
                len: elements.len(),
            });
        }
        Ok(Chain {
            elements,
            otimes_len,
        })
    }

    /// A pure `⊗`-chain.
    pub fn otimes(elements: Vec<Literal>) -> Result<Self, ChainError> {
        let n = elements.len();
        Chain::new(elements, n)
    }

    /// A pure `⊙`-chain (as carried by permission rules).
    pub fn odot(elements: Vec<Literal>) -> Result<Self, ChainError> {
        Chain::new(elements, 0)
    }

    pub fn single(literal: Literal, otimes: bool) -> Self {
        Chain {
            elements: vec![literal],
            otimes_len: usize::from(otimes),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Literal] {
        &self.elements
    }

    pub fn otimes_len(&self) -> usize {
        self.otimes_len
    }

    /// Element at 1-based `index`.
    pub fn get(&self, index: usize) -> Option<&Literal> {
        index.checked_sub(1).and_then(|i| self.elements.get(i))
    }

    /// 1-based index of the first occurrence of `lit`.
    pub fn index_of(&self, lit: &Literal) -> Option<usize> {
        self.elements.iter().position(|e| e == lit).map(|i| i + 1)
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.elements.contains(lit)
    }

    /// Segment of the element at 1-based `index`.
    pub fn segment_at(&self, index: usize) -> Option<Segment> {
        if index == 0 || index > self.elements.len() {
            None
        } else if index <= self.otimes_len {
            Some(Segment::Otimes)
        } else {
            Some(Segment::Odot)
        }
    }

    /// Drops every occurrence that repeats an earlier literal, keeping the
    /// leftmost one. Idempotent and order-preserving.
    pub fn normalize(&self) -> Chain {
        let mut seen = BTreeSet::new();
        let mut elements = Vec::with_capacity(self.elements.len());
        let mut otimes_len = 0;
        for (i, e) in self.elements.iter().enumerate() {
            if seen.insert(e.clone()) {
                if i < self.otimes_len {
                    otimes_len += 1;
                }
                elements.push(e.clone());
            }
        }
        Chain {
            elements,
            otimes_len,
        }
    }

    /// Prefix up to and including `index`.
    fn prefix(&self, index: usize) -> Chain {
        Chain {
            elements: self.elements[..index].to_vec(),
            otimes_len: self.otimes_len.min(index),
        }
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                // the connective in front of element i+1
                if i < self.otimes_len {
                    f.write_str(" (x) ")?;
                } else {
                    f.write_str(" (o) ")?;
                }
            }
            fmt::Display::fmt(e, f)?;
        }
        Ok(())
    }
}

/// Normalization as a free function.
pub fn chain_normalize(chain: &Chain) -> Chain {
    chain.normalize()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    /// `⇒O`
    DefeasibleO,
    /// `⇒P`
    DefeasibleP,
    /// `↝`
    Defeater,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule {0}: an obligation rule must start with a ⊗-segment")]
    ObligationWithoutOtimes(String),
    #[error("rule {0}: a permission rule must carry a pure ⊙-chain")]
    PermissionWithOtimes(String),
    #[error("rule {0}: a defeater head is a single literal")]
    DefeaterChain(String),
    #[error("rule label must not be empty")]
    EmptyLabel,
}

/// `label: antecedent ↪ head`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    label: String,
    antecedent: BTreeSet<AntecedentItem>,
    kind: RuleKind,
    head: Chain,
}

impl Rule {
    /// Builds a rule, normalizing the head and enforcing the kind/head
    /// constraints.
    pub fn new(
        label: impl Into<String>,
        antecedent: impl IntoIterator<Item = AntecedentItem>,
        kind: RuleKind,
        head: Chain,
    ) -> Result<Rule, RuleError> {
        let label = label.into();
        if label.is_empty() {
            return Err(RuleError::EmptyLabel);
        }
        let head = head.normalize();
        match kind {
            RuleKind::DefeasibleO if head.otimes_len == 0 => {
                return Err(RuleError::ObligationWithoutOtimes(label))
            }
            RuleKind::DefeasibleP if head.otimes_len != 0 => {
                return Err(RuleError::PermissionWithOtimes(label))
            }
            RuleKind::Defeater if head.len() != 1 => return Err(RuleError::DefeaterChain(label)),
            _ => {}
        }
        let head = if kind == RuleKind::Defeater {
            Chain {
                otimes_len: 0,
                ..head
            }
        } else {
            head
        };
        Ok(Rule {
            label,
            antecedent: antecedent.into_iter().collect(),
            kind,
            head,
        })
    }

    /// `⇒O` rule over a pure ⊗-chain.
    pub fn obligation(
        label: impl Into<String>,
        antecedent: impl IntoIterator<Item = AntecedentItem>,
        head: Vec<Literal>,
    ) -> Result<Rule, RuleError> {
        let label = label.into();
        let chain = Chain::otimes(head).map_err(|_| RuleError::ObligationWithoutOtimes(label.clone()))?;
        Rule::new(label, antecedent, RuleKind::DefeasibleO, chain)
    }

    /// `⇒P` rule over a ⊙-chain.
    pub fn permission(
        label: impl Into<String>,
        antecedent: impl IntoIterator<Item = AntecedentItem>,
        head: Vec<Literal>,
    ) -> Result<Rule, RuleError> {
        let label = label.into();
        let chain = Chain::odot(head).map_err(|_| RuleError::PermissionWithOtimes(label.clone()))?;
        Rule::new(label, antecedent, RuleKind::DefeasibleP, chain)
    }

    pub fn defeater(
        label: impl Into<String>,
        antecedent: impl IntoIterator<Item = AntecedentItem>,
        head: Literal,
    ) -> Result<Rule, RuleError> {
        Rule::new(label, antecedent, RuleKind::Defeater, Chain::single(head, false))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn antecedent(&self) -> &BTreeSet<AntecedentItem> {
        &self.antecedent
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn head(&self) -> &Chain {
        &self.head
    }

    pub fn is_defeater(&self) -> bool {
        self.kind == RuleKind::Defeater
    }

    /// Occurrence class of the element at 1-based `index`.
    pub fn class_at(&self, index: usize) -> Option<OccurrenceClass> {
        if self.kind == RuleKind::Defeater {
            return (index == 1).then_some(OccurrenceClass::Defeater);
        }
        self.head.segment_at(index).map(|s| match s {
            Segment::Otimes => OccurrenceClass::Obligation,
            Segment::Odot => OccurrenceClass::Permission,
        })
    }

    pub(crate) fn with_antecedent(&self, antecedent: BTreeSet<AntecedentItem>) -> Rule {
        Rule {
            antecedent,
            ..self.clone()
        }
    }

    pub(crate) fn from_parts_unchecked(
        label: String,
        antecedent: BTreeSet<AntecedentItem>,
        kind: RuleKind,
        head: Chain,
    ) -> Rule {
        Rule {
            label,
            antecedent,
            kind,
            head,
        }
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.label)?;
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        let arrow = match self.kind {
            RuleKind::DefeasibleO => "=>O",
            RuleKind::DefeasibleP => "=>P",
            RuleKind::Defeater => "~>",
        };
        write!(f, "{arrow} {}", self.head)
    }
}

/// How an occurrence of a literal in a head takes part in conflicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OccurrenceClass {
    /// `⊗`-segment occurrence (member of `R^O[q,n]`).
    Obligation,
    /// `⊙`-segment occurrence (member of `R^P[q,n]` by default).
    Permission,
    /// Head of a defeater.
    Defeater,
}

/// `C(r)!a`: the head becomes the prefix ending at `a`. Absent `a` leaves
/// the rule unchanged.
pub fn chain_truncate(rule: &Rule, a: &Literal) -> Rule {
    match rule.head.index_of(a) {
        Some(idx) => Rule {
            head: rule.head.prefix(idx),
            ..rule.clone()
        },
        None => rule.clone(),
    }
}

/// `C(r) ⊖ a`: removes `a` from the head.
///
/// Removing the sole `⊗` element in front of a `⊙`-tail turns an obligation
/// rule into a permission rule; removing the last element deletes the rule
/// (`None`). Absent `a` leaves the rule unchanged.
pub fn rule_remove(rule: &Rule, a: &Literal) -> Option<Rule> {
    let Some(idx) = rule.head.index_of(a) else {
        return Some(rule.clone());
    };
    if rule.head.len() == 1 {
        return None;
    }
    let mut elements = rule.head.elements.clone();
    elements.remove(idx - 1);
    let mut otimes_len = rule.head.otimes_len;
    if idx <= otimes_len {
        otimes_len -= 1;
    }
    let kind = match rule.kind {
        RuleKind::DefeasibleO if otimes_len == 0 => RuleKind::DefeasibleP,
        k => k,
    };
    Some(Rule {
        kind,
        head: Chain {
            elements,
            otimes_len,
        },
        ..rule.clone()
    })
}

/// Ordered `(winner, loser)` pairs over rule labels.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Superiority {
    pairs: BTreeSet<(String, String)>,
}

impl Superiority {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, winner: impl Into<String>, loser: impl Into<String>) -> bool {
        self.pairs.insert((winner.into(), loser.into()))
    }

    pub fn contains(&self, winner: &str, loser: &str) -> bool {
        self.pairs
            .contains(&(winner.to_string(), loser.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(w, l)| (w.as_str(), l.as_str()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Drops every pair mentioning `label`.
    pub fn remove_rule(&mut self, label: &str) {
        self.pairs.retain(|(w, l)| w != label && l != label);
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&str, &str) -> bool) {
        self.pairs.retain(|(w, l)| keep(w, l));
    }
}

impl FromIterator<(String, String)> for Superiority {
    fn from_iter<T: IntoIterator<Item = (String, String)>>(iter: T) -> Self {
        Superiority {
            pairs: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("duplicate rule label `{0}`")]
    DuplicateLabel(String),
    #[error("superiority pair {0} > {1} mentions an unknown rule")]
    UnknownLabel(String, String),
}

/// `D = (F, R, >)`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Theory {
    facts: BTreeSet<AntecedentItem>,
    rules: Vec<Rule>,
    sup: Superiority,
}

impl Theory {
    pub fn new(
        facts: impl IntoIterator<Item = AntecedentItem>,
        rules: Vec<Rule>,
        sup: Superiority,
    ) -> Result<Theory, TheoryError> {
        let mut labels = BTreeSet::new();
        for r in &rules {
            if !labels.insert(r.label.as_str()) {
                return Err(TheoryError::DuplicateLabel(r.label.clone()));
            }
        }
        for (w, l) in sup.iter() {
            if !labels.contains(w) || !labels.contains(l) {
                return Err(TheoryError::UnknownLabel(w.to_string(), l.to_string()));
            }
        }
        Ok(Theory {
            facts: facts.into_iter().collect(),
            rules,
            sup,
        })
    }

    pub fn empty() -> Theory {
        Theory::default()
    }

    pub fn facts(&self) -> &BTreeSet<AntecedentItem> {
        &self.facts
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn sup(&self) -> &Superiority {
        &self.sup
    }

    pub fn rule(&self, label: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.label == label)
    }

    pub fn has_fact(&self, item: &AntecedentItem) -> bool {
        self.facts.contains(item)
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty() && self.rules.is_empty() && self.sup.is_empty()
    }

    /// `HB_D`: every literal whose atom occurs anywhere in the theory, closed
    /// under complement.
    pub fn herbrand_literals(&self) -> BTreeSet<Literal> {
        let mut atoms = BTreeSet::new();
        for f in &self.facts {
            atoms.insert(f.literal().atom().clone());
        }
        for r in &self.rules {
            for a in &r.antecedent {
                atoms.insert(a.literal().atom().clone());
            }
            for e in r.head.elements() {
                atoms.insert(e.atom().clone());
            }
        }
        atoms
            .into_iter()
            .flat_map(|a| [Literal::new(a.clone(), true), Literal::new(a, false)])
            .collect()
    }

    /// Modal Herbrand base `{□l : □ ∈ {O, P}, l ∈ HB_D}`.
    pub fn herbrand_base(&self) -> Vec<HerbrandEntry> {
        self.herbrand_literals()
            .into_iter()
            .flat_map(|l| {
                Modality::ALL.map(|m| HerbrandEntry {
                    modality: m,
                    literal: l.clone(),
                })
            })
            .collect()
    }

    /// Number of literal occurrences (facts, premises, head elements) plus
    /// the number of rules.
    pub fn size(&self) -> usize {
        let occurrences: usize = self
            .rules
            .iter()
            .map(|r| r.antecedent.len() + r.head.len())
            .sum();
        self.facts.len() + occurrences + self.rules.len()
    }

    /// Consumes the theory into its parts.
    pub fn into_parts(self) -> (BTreeSet<AntecedentItem>, Vec<Rule>, Superiority) {
        (self.facts, self.rules, self.sup)
    }

    /// Rebuilds a theory from parts already known to be well formed, pruning
    /// superiority pairs that mention missing rules.
    pub(crate) fn from_parts_pruned(
        facts: BTreeSet<AntecedentItem>,
        rules: Vec<Rule>,
        mut sup: Superiority,
    ) -> Theory {
        let labels: BTreeSet<&str> = rules.iter().map(|r| r.label.as_str()).collect();
        sup.retain(|w, l| labels.contains(w) && labels.contains(l));
        Theory { facts, rules, sup }
    }
}

/// Which rules count as permissive support (`R^P[q,n]`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DefeaterMode {
    /// `⊙`-preceded occurrences and index 1 of permission rules.
    #[default]
    RulesOnly,
    /// As `RulesOnly`, plus defeaters for their head.
    DefeatersInRP,
    /// Defeaters only.
    DefeatersOnly,
}

impl DefeaterMode {
    pub const ALL: [DefeaterMode; 3] = [
        DefeaterMode::RulesOnly,
        DefeaterMode::DefeatersInRP,
        DefeaterMode::DefeatersOnly,
    ];

    /// Whether an occurrence of this class supports `+∂P`.
    pub fn supports_permission(self, class: OccurrenceClass) -> bool {
        match (self, class) {
            (_, OccurrenceClass::Obligation) => false,
            (DefeaterMode::RulesOnly, c) => c == OccurrenceClass::Permission,
            (DefeaterMode::DefeatersInRP, _) => true,
            (DefeaterMode::DefeatersOnly, c) => c == OccurrenceClass::Defeater,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DefeaterMode::RulesOnly => "rules-only",
            DefeaterMode::DefeatersInRP => "defeaters-in-rp",
            DefeaterMode::DefeatersOnly => "defeaters-only",
        }
    }
}

impl std::str::FromStr for DefeaterMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rules-only" | "default" => Ok(DefeaterMode::RulesOnly),
            "defeaters-in-rp" => Ok(DefeaterMode::DefeatersInRP),
            "defeaters-only" => Ok(DefeaterMode::DefeatersOnly),
            other => Err(format!(
                "unknown defeater mode `{other}` (expected rules-only, defeaters-in-rp or defeaters-only)"
            )),
        }
    }
}

impl fmt::Display for DefeaterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One occurrence of a literal in a rule head.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence<'a> {
    pub rule: &'a Rule,
    /// 1-based.
    pub index: usize,
    pub class: OccurrenceClass,
}

/// `R[q]`: every occurrence of `q` in a head, in rule order.
pub fn occurrences<'a>(theory: &'a Theory, q: &Literal) -> Vec<Occurrence<'a>> {
    theory
        .rules
        .iter()
        .filter_map(|r| {
            let index = r.head.index_of(q)?;
            Some(Occurrence {
                rule: r,
                index,
                class: r.class_at(index)?,
            })
        })
        .collect()
}

/// `R[q,n]`.
pub fn rules_at<'a>(theory: &'a Theory, q: &Literal, n: usize) -> Vec<&'a Rule> {
    occurrences(theory, q)
        .into_iter()
        .filter(|o| o.index == n)
        .map(|o| o.rule)
        .collect()
}

/// `R^O[q,n]`.
pub fn obligation_rules_at<'a>(theory: &'a Theory, q: &Literal, n: usize) -> Vec<&'a Rule> {
    occurrences(theory, q)
        .into_iter()
        .filter(|o| o.index == n && o.class == OccurrenceClass::Obligation)
        .map(|o| o.rule)
        .collect()
}

/// `R^P[q,n]` under `mode`.
pub fn permission_rules_at<'a>(
    theory: &'a Theory,
    q: &Literal,
    n: usize,
    mode: DefeaterMode,
) -> Vec<&'a Rule> {
    occurrences(theory, q)
        .into_iter()
        .filter(|o| o.index == n && mode.supports_permission(o.class))
        .map(|o| o.rule)
        .collect()
}

/// `R^□`: rules introducing modality `m`.
pub fn rules_with_mode(theory: &Theory, m: Modality) -> Vec<&Rule> {
    let kind = match m {
        Modality::O => RuleKind::DefeasibleO,
        Modality::P => RuleKind::DefeasibleP,
    };
    theory.rules.iter().filter(|r| r.kind == kind).collect()
}

/// `R_def`.
pub fn defeaters(theory: &Theory) -> Vec<&Rule> {
    theory.rules.iter().filter(|r| r.is_defeater()).collect()
}

/// Element `□l` of the modal Herbrand base.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HerbrandEntry {
    pub modality: Modality,
    pub literal: Literal,
}
