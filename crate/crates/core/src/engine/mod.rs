//! Linear-time computation of the extension.
//!
//! The working theory never rebuilds rules. Every premise, head element and
//! head occurrence carries a small state that only moves forward, and each
//! literal keeps counters over the occurrences that support or attack it.
//! A conclusion settles the premises and elements that mention it; those
//! settle occurrences; occurrences update counters; changed counters put
//! their literal back on the worklist. Each step touches an object at most a
//! constant number of times, which bounds a run by the size of the theory
//! (plus the clash pairs induced by the superiority relation).
//!
//! The rewriting steps are still available one at a time:
//! [`WorkingTheory::check_facts`], [`WorkingTheory::discard`],
//! [`WorkingTheory::modify_obl`] and [`WorkingTheory::modify_perm`].

use std::collections::{BTreeSet, HashMap};

use crate::extension::{Extension, Sign, Tagged};
use crate::model::{
    AntecedentItem, Atom, DefeaterMode, Literal, Modality, ModalLiteral, OccurrenceClass, Rule,
    RuleKind, Theory,
};

/// Knobs selecting the semantic variant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EngineConfig {
    pub defeater_mode: DefeaterMode,
    /// `P l` premises also hold once `−∂O ∼l` is proved.
    pub weak_perm_antecedent: bool,
}

impl EngineConfig {
    /// All six combinations of defeater mode and premise reading.
    pub fn all() -> Vec<EngineConfig> {
        DefeaterMode::ALL
            .into_iter()
            .flat_map(|defeater_mode| {
                [false, true].map(|weak_perm_antecedent| EngineConfig {
                    defeater_mode,
                    weak_perm_antecedent,
                })
            })
            .collect()
    }
}

type Lit = u32;

#[inline]
fn neg(l: Lit) -> Lit {
    l ^ 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Settle {
    Open,
    Passed,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OccState {
    Pending,
    Applicable,
    Discarded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ItemKind {
    Obl,
    NotObl,
    Perm,
    NotPerm,
}

struct RuleState {
    label: String,
    /// Occurrence ids by head position (0-based).
    occs: Vec<u32>,
    pending_items: u32,
    armed: bool,
    dead: bool,
    elems: Vec<Settle>,
    /// 1-based index of the first element not passed.
    front: usize,
    /// 1-based index of the first failed element, `len + 1` if none.
    cut: usize,
}

struct Occ {
    rule: u32,
    /// 1-based.
    index: usize,
    lit: Lit,
    class: OccurrenceClass,
    state: OccState,
    resolved: bool,
    won: bool,
    /// Eligible stronger occurrences of the complement not yet discarded.
    stronger_live: u32,
    /// Weaker clashing occurrences this one can beat.
    beats: Vec<u32>,
}

struct Item {
    rule: u32,
    done: bool,
}

#[derive(Default, Clone)]
struct LitState {
    o_support_live: u32,
    o_support_appl: u32,
    p_support_live: u32,
    p_support_appl: u32,
    /// Attackers of `+∂O`: occurrences of the complement neither discarded nor beaten.
    o_attack_open: u32,
    /// Attackers of `+∂P`: obligation occurrences of the complement, same sense.
    p_attack_open: u32,
    o_attack_win: bool,
    p_attack_win: bool,
    fact_o: bool,
    fact_not_o: bool,
    fact_p: bool,
    fact_not_p: bool,
    fact_plain: bool,
    plus_o: bool,
    minus_o: bool,
    plus_p: bool,
    minus_p: bool,
    dirty: bool,
    items: [Vec<u32>; 4],
    o_elems: Vec<u32>,
    p_elems: Vec<u32>,
}

/// Counters describing a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Index and counter updates performed.
    pub mutations: u64,
    /// Worklist rounds until the fixpoint.
    pub rounds: u64,
    /// Size of the input theory.
    pub size: usize,
}

/// Mutable state of one extension computation. Confined to one thread.
pub struct WorkingTheory {
    cfg: EngineConfig,
    atoms: Vec<Atom>,
    atom_ids: HashMap<Atom, u32>,
    rules: Vec<RuleState>,
    occs: Vec<Occ>,
    items: Vec<Item>,
    lits: Vec<LitState>,
    worklist: Vec<Lit>,
    staged: Vec<(Sign, Modality, Lit)>,
    /// Conclusions in the order they were merged.
    conclusions: Vec<(Sign, Modality, Lit)>,
    mutations: u64,
    rounds: u64,
    size: usize,
    input_inconsistent: bool,
}

impl WorkingTheory {
    /// Indexes `t`. Linear in the size of `t` plus the clash pairs.
    pub fn new(t: &Theory, cfg: EngineConfig) -> Self {
        let mut w = WorkingTheory {
            cfg,
            atoms: Vec::new(),
            atom_ids: HashMap::new(),
            rules: Vec::with_capacity(t.rules().len()),
            occs: Vec::new(),
            items: Vec::new(),
            lits: Vec::new(),
            worklist: Vec::new(),
            staged: Vec::new(),
            conclusions: Vec::new(),
            mutations: 0,
            rounds: 0,
            size: t.size(),
            input_inconsistent: !crate::queries::check_consistency(t).consistent,
        };
        for f in t.facts() {
            let l = w.intern(f.literal());
            let ls = &mut w.lits[l as usize];
            match f {
                AntecedentItem::Plain(_) => ls.fact_plain = true,
                AntecedentItem::Modal(ModalLiteral {
                    negated,
                    modality,
                    ..
                }) => match (negated, modality) {
                    (false, Modality::O) => ls.fact_o = true,
                    (true, Modality::O) => ls.fact_not_o = true,
                    (false, Modality::P) => ls.fact_p = true,
                    (true, Modality::P) => ls.fact_not_p = true,
                },
            }
        }
        let mut plain_items: Vec<(u32, Lit)> = Vec::new();
        let mut position: HashMap<(u32, Lit), u32> = HashMap::new();
        for r in t.rules() {
            w.add_rule(r, &mut plain_items, &mut position);
        }
        w.index_clashes(t, &position);
        for rid in 0..w.rules.len() as u32 {
            if w.rules[rid as usize].pending_items == 0 {
                w.arm(rid);
            }
        }
        for (item, l) in plain_items {
            let holds = w.lits[l as usize].fact_plain;
            w.settle_item(item, holds);
        }
        for l in 0..w.lits.len() as Lit {
            w.mark(l);
        }
        w
    }

    fn intern(&mut self, l: &Literal) -> Lit {
        let id = match self.atom_ids.get(l.atom()) {
            Some(&id) => id,
            None => {
                let id = self.atoms.len() as u32;
                self.atoms.push(l.atom().clone());
                self.atom_ids.insert(l.atom().clone(), id);
                self.lits.push(LitState::default());
                self.lits.push(LitState::default());
                id
            }
        };
        id * 2 + u32::from(!l.is_positive())
    }

    fn lookup(&self, l: &Literal) -> Option<Lit> {
        self.atom_ids
            .get(l.atom())
            .map(|&id| id * 2 + u32::from(!l.is_positive()))
    }

    fn literal(&self, l: Lit) -> Literal {
        Literal::new(self.atoms[(l / 2) as usize].clone(), l % 2 == 0)
    }

    fn add_rule(&mut self, r: &Rule, plain: &mut Vec<(u32, Lit)>, position: &mut HashMap<(u32, Lit), u32>) {
        let rid = self.rules.len() as u32;
        let mut occs = Vec::with_capacity(r.head().len());
        for (i, c) in r.head().elements().iter().enumerate() {
            let lit = self.intern(c);
            let class = r.class_at(i + 1).expect("index within head");
            let oid = self.occs.len() as u32;
            self.occs.push(Occ {
                rule: rid,
                index: i + 1,
                lit,
                class,
                state: OccState::Pending,
                resolved: false,
                won: false,
                stronger_live: 0,
                beats: Vec::new(),
            });
            occs.push(oid);
            position.insert((rid, lit), oid);
            let supports_p = self.cfg.defeater_mode.supports_permission(class);
            let ls = &mut self.lits[lit as usize];
            match class {
                OccurrenceClass::Obligation => {
                    ls.o_support_live += 1;
                    ls.o_elems.push(oid);
                }
                OccurrenceClass::Permission => ls.p_elems.push(oid),
                OccurrenceClass::Defeater => {}
            }
            if supports_p {
                ls.p_support_live += 1;
            }
            let target = &mut self.lits[neg(lit) as usize];
            target.o_attack_open += 1;
            if class == OccurrenceClass::Obligation {
                target.p_attack_open += 1;
            }
            self.mutations += 1;
        }
        let len = occs.len();
        self.rules.push(RuleState {
            label: r.label().to_string(),
            occs,
            pending_items: r.antecedent().len() as u32,
            armed: false,
            dead: false,
            elems: vec![Settle::Open; len],
            front: 1,
            cut: len + 1,
        });
        for a in r.antecedent() {
            let item = self.items.len() as u32;
            self.items.push(Item {
                rule: rid,
                done: false,
            });
            let l = self.intern(a.literal());
            let kind = match a {
                AntecedentItem::Plain(_) => {
                    plain.push((item, l));
                    continue;
                }
                AntecedentItem::Modal(m) => match (m.negated, m.modality) {
                    (false, Modality::O) => ItemKind::Obl,
                    (true, Modality::O) => ItemKind::NotObl,
                    (false, Modality::P) => ItemKind::Perm,
                    (true, Modality::P) => ItemKind::NotPerm,
                },
            };
            self.lits[l as usize].items[kind as usize].push(item);
            self.mutations += 1;
        }
    }

    /// For every `winner > loser` pair, links each occurrence in the winner
    /// to the clashing occurrence in the loser it is allowed to beat.
    fn index_clashes(&mut self, t: &Theory, position: &HashMap<(u32, Lit), u32>) {
        let ids: HashMap<&str, u32> = t
            .rules()
            .iter()
            .enumerate()
            .map(|(i, r)| (r.label(), i as u32))
            .collect();
        for (w, l) in t.sup().iter() {
            let (Some(&wi), Some(&li)) = (ids.get(w), ids.get(l)) else {
                continue;
            };
            if wi == li {
                continue;
            }
            let (small, other) = if self.rules[wi as usize].occs.len() <= self.rules[li as usize].occs.len() {
                (wi, li)
            } else {
                (li, wi)
            };
            let small_occs = self.rules[small as usize].occs.clone();
            for o in small_occs {
                let lit = self.occs[o as usize].lit;
                let Some(&p) = position.get(&(other, neg(lit))) else {
                    continue;
                };
                let (t_occ, s_occ) = if small == wi { (o, p) } else { (p, o) };
                let eligible = self.occs[s_occ as usize].class == OccurrenceClass::Obligation
                    || self.occs[t_occ as usize].class == OccurrenceClass::Obligation;
                if eligible {
                    self.occs[t_occ as usize].beats.push(s_occ);
                    self.occs[s_occ as usize].stronger_live += 1;
                    self.mutations += 2;
                }
            }
        }
    }

    fn mark(&mut self, l: Lit) {
        let ls = &mut self.lits[l as usize];
        if !ls.dirty {
            ls.dirty = true;
            self.worklist.push(l);
        }
    }

    fn arm(&mut self, rid: u32) {
        let r = &mut self.rules[rid as usize];
        if r.armed || r.dead {
            return;
        }
        r.armed = true;
        self.mutations += 1;
        let upto = r.front.min(r.occs.len());
        for k in 1..=upto {
            let o = self.rules[rid as usize].occs[k - 1];
            self.occ_applicable(o);
        }
    }

    fn kill(&mut self, rid: u32) {
        let r = &mut self.rules[rid as usize];
        if r.dead {
            return;
        }
        debug_assert!(!r.armed);
        r.dead = true;
        self.mutations += 1;
        let upto = r.cut.min(r.occs.len());
        for k in 1..=upto {
            let o = self.rules[rid as usize].occs[k - 1];
            self.occ_discarded(o);
        }
    }

    fn settle_item(&mut self, item: u32, holds: bool) {
        let it = &mut self.items[item as usize];
        if it.done {
            return;
        }
        it.done = true;
        let rid = it.rule;
        self.mutations += 1;
        if holds {
            let r = &mut self.rules[rid as usize];
            r.pending_items -= 1;
            if r.pending_items == 0 {
                self.arm(rid);
            }
        } else {
            self.kill(rid);
        }
    }

    fn settle_items(&mut self, l: Lit, kind: ItemKind, holds: bool) {
        let list = std::mem::take(&mut self.lits[l as usize].items[kind as usize]);
        for &item in &list {
            self.settle_item(item, holds);
        }
        self.lits[l as usize].items[kind as usize] = list;
    }

    /// Settles the head element behind occurrence `o` as a prefix of the
    /// later elements.
    fn settle_element(&mut self, o: u32, passed: bool) {
        let (rid, k) = {
            let oc = &self.occs[o as usize];
            (oc.rule, oc.index)
        };
        let r = &mut self.rules[rid as usize];
        if r.elems[k - 1] != Settle::Open {
            return;
        }
        self.mutations += 1;
        if passed {
            r.elems[k - 1] = Settle::Passed;
            let old = r.front;
            while r.front <= r.elems.len() && r.elems[r.front - 1] == Settle::Passed {
                r.front += 1;
            }
            let new = r.front.min(r.occs.len());
            if r.armed && new > old {
                for j in old + 1..=new {
                    let o = self.rules[rid as usize].occs[j - 1];
                    self.occ_applicable(o);
                }
            }
        } else {
            r.elems[k - 1] = Settle::Failed;
            if k < r.cut {
                let old = r.cut.min(r.occs.len());
                r.cut = k;
                for j in k + 1..=old {
                    let o = self.rules[rid as usize].occs[j - 1];
                    self.occ_discarded(o);
                }
            }
        }
    }

    fn occ_applicable(&mut self, o: u32) {
        let oc = &mut self.occs[o as usize];
        if oc.state != OccState::Pending {
            return;
        }
        oc.state = OccState::Applicable;
        let (lit, class) = (oc.lit, oc.class);
        self.mutations += 1;
        let supports_p = self.cfg.defeater_mode.supports_permission(class);
        let ls = &mut self.lits[lit as usize];
        if class == OccurrenceClass::Obligation {
            ls.o_support_appl += 1;
        }
        if supports_p {
            ls.p_support_appl += 1;
        }
        if class == OccurrenceClass::Obligation || supports_p {
            self.mark(lit);
        }
        let beats = std::mem::take(&mut self.occs[o as usize].beats);
        for &s in &beats {
            self.resolve(s);
        }
        self.occs[o as usize].beats = beats;
        if self.occs[o as usize].stronger_live == 0 {
            self.win(o);
        }
    }

    fn occ_discarded(&mut self, o: u32) {
        let oc = &mut self.occs[o as usize];
        if oc.state != OccState::Pending {
            debug_assert_ne!(oc.state, OccState::Applicable, "applicable occurrence discarded");
            return;
        }
        oc.state = OccState::Discarded;
        let (lit, class) = (oc.lit, oc.class);
        self.mutations += 1;
        let supports_p = self.cfg.defeater_mode.supports_permission(class);
        let ls = &mut self.lits[lit as usize];
        if class == OccurrenceClass::Obligation {
            ls.o_support_live -= 1;
        }
        if supports_p {
            ls.p_support_live -= 1;
        }
        if class == OccurrenceClass::Obligation || supports_p {
            self.mark(lit);
        }
        self.resolve(o);
        let beats = std::mem::take(&mut self.occs[o as usize].beats);
        for &s in &beats {
            let so = &mut self.occs[s as usize];
            so.stronger_live -= 1;
            self.mutations += 1;
            if so.stronger_live == 0 && so.state == OccState::Applicable {
                self.win(s);
            }
        }
        self.occs[o as usize].beats = beats;
    }

    /// The attacker `o` no longer stands in the way of the complement.
    fn resolve(&mut self, o: u32) {
        let oc = &mut self.occs[o as usize];
        if oc.resolved {
            return;
        }
        oc.resolved = true;
        let (target, class) = (neg(oc.lit), oc.class);
        let ls = &mut self.lits[target as usize];
        ls.o_attack_open -= 1;
        if class == OccurrenceClass::Obligation {
            ls.p_attack_open -= 1;
        }
        self.mutations += 1;
        self.mark(target);
    }

    /// The attacker `o` is applicable and nothing eligible above it survives.
    fn win(&mut self, o: u32) {
        let oc = &mut self.occs[o as usize];
        if oc.won {
            return;
        }
        oc.won = true;
        let (target, class) = (neg(oc.lit), oc.class);
        let ls = &mut self.lits[target as usize];
        ls.o_attack_win = true;
        if class == OccurrenceClass::Obligation {
            ls.p_attack_win = true;
        }
        self.mutations += 1;
        self.mark(target);
    }

    /// Literal-level facts (`∼c ∈ F` etc.) are static; elements of
    /// obligations already complied with fail, and plain premises settle.
    pub fn check_facts(&mut self) {
        for l in 0..self.lits.len() as Lit {
            let fulfilled = self.lits[l as usize].fact_plain && !self.lits[neg(l) as usize].fact_plain;
            if fulfilled {
                let elems = std::mem::take(&mut self.lits[l as usize].o_elems);
                for &o in &elems {
                    self.settle_element(o, false);
                }
                self.lits[l as usize].o_elems = elems;
            }
        }
    }

    fn evaluate(&self, l: Lit) -> [(Sign, Modality, bool); 4] {
        let s = &self.lits[l as usize];
        let n = &self.lits[neg(l) as usize];
        let plus_o = s.fact_o
            || (!n.fact_o
                && !s.fact_not_o
                && !n.fact_p
                && s.o_support_appl > 0
                && s.o_attack_open == 0);
        let minus_o = !s.fact_o
            && (n.fact_o || s.fact_not_o || n.fact_p || s.o_support_live == 0 || s.o_attack_win);
        let plus_p = s.fact_p
            || (!n.fact_o && !s.fact_not_p && s.p_support_appl > 0 && s.p_attack_open == 0);
        let minus_p =
            !s.fact_p && (n.fact_o || s.fact_not_p || s.p_support_live == 0 || s.p_attack_win);
        [
            (Sign::Plus, Modality::O, plus_o && !s.plus_o),
            (Sign::Minus, Modality::O, minus_o && !s.minus_o),
            (Sign::Plus, Modality::P, plus_p && !s.plus_p),
            (Sign::Minus, Modality::P, minus_p && !s.minus_p),
        ]
    }

    fn concluded(&self, sign: Sign, m: Modality, l: Lit) -> bool {
        let s = &self.lits[l as usize];
        match (sign, m) {
            (Sign::Plus, Modality::O) => s.plus_o,
            (Sign::Minus, Modality::O) => s.minus_o,
            (Sign::Plus, Modality::P) => s.plus_p,
            (Sign::Minus, Modality::P) => s.minus_p,
        }
    }

    fn record(&mut self, sign: Sign, m: Modality, l: Lit) -> bool {
        let s = &mut self.lits[l as usize];
        let slot = match (sign, m) {
            (Sign::Plus, Modality::O) => &mut s.plus_o,
            (Sign::Minus, Modality::O) => &mut s.minus_o,
            (Sign::Plus, Modality::P) => &mut s.plus_p,
            (Sign::Minus, Modality::P) => &mut s.minus_p,
        };
        if *slot {
            return false;
        }
        *slot = true;
        self.mutations += 1;
        self.conclusions.push((sign, m, l));
        true
    }

    /// Consequences of `+∂O l`.
    fn obl_effects(&mut self, l: Lit) {
        self.settle_items(l, ItemKind::Obl, true);
        self.settle_items(l, ItemKind::NotObl, false);
        if !(self.lits[l as usize].fact_plain && !self.lits[neg(l) as usize].fact_plain) {
            let elems = std::mem::take(&mut self.lits[l as usize].o_elems);
            for &o in &elems {
                self.settle_element(o, true);
            }
            self.lits[l as usize].o_elems = elems;
        }
        if self.cfg.weak_perm_antecedent && self.concluded(Sign::Minus, Modality::P, neg(l)) {
            self.settle_items(neg(l), ItemKind::Perm, false);
        }
    }

    /// Consequences of `−∂O l`.
    fn discard_o_effects(&mut self, l: Lit) {
        self.settle_items(l, ItemKind::Obl, false);
        self.settle_items(l, ItemKind::NotObl, true);
        let elems = std::mem::take(&mut self.lits[l as usize].o_elems);
        for &o in &elems {
            self.settle_element(o, false);
        }
        self.lits[l as usize].o_elems = elems;
        if self.cfg.weak_perm_antecedent {
            self.settle_items(neg(l), ItemKind::Perm, true);
        }
    }

    /// Consequences of `+∂P l`.
    fn perm_effects(&mut self, l: Lit) {
        self.settle_items(l, ItemKind::Perm, true);
        self.settle_items(l, ItemKind::NotPerm, false);
        let elems = std::mem::take(&mut self.lits[l as usize].p_elems);
        for &o in &elems {
            self.settle_element(o, false);
        }
        self.lits[l as usize].p_elems = elems;
    }

    /// Consequences of `−∂P l`.
    fn discard_p_effects(&mut self, l: Lit) {
        self.settle_items(l, ItemKind::NotPerm, true);
        if !self.cfg.weak_perm_antecedent || self.concluded(Sign::Plus, Modality::O, neg(l)) {
            self.settle_items(l, ItemKind::Perm, false);
        }
        let elems = std::mem::take(&mut self.lits[l as usize].p_elems);
        for &o in &elems {
            self.settle_element(o, true);
        }
        self.lits[l as usize].p_elems = elems;
    }

    /// Records `−∂□ l` and propagates it. No-op for literals outside the
    /// Herbrand base or already refuted.
    pub fn discard(&mut self, l: &Literal, m: Modality) {
        if let Some(id) = self.lookup(l) {
            if self.record(Sign::Minus, m, id) {
                match m {
                    Modality::O => self.discard_o_effects(id),
                    Modality::P => self.discard_p_effects(id),
                }
            }
        }
    }

    /// Records `+∂O l` and propagates it.
    pub fn modify_obl(&mut self, l: &Literal) {
        if let Some(id) = self.lookup(l) {
            if self.record(Sign::Plus, Modality::O, id) {
                self.obl_effects(id);
            }
        }
    }

    /// Records `+∂P l` and propagates it.
    pub fn modify_perm(&mut self, l: &Literal) {
        if let Some(id) = self.lookup(l) {
            if self.record(Sign::Plus, Modality::P, id) {
                self.perm_effects(id);
            }
        }
    }

    /// One round: evaluate every literal on the worklist against the current
    /// state, then merge what was found. Returns false at the fixpoint.
    pub fn step(&mut self) -> bool {
        let batch = std::mem::take(&mut self.worklist);
        for &l in &batch {
            self.lits[l as usize].dirty = false;
            for (sign, m, fire) in self.evaluate(l) {
                if fire {
                    self.staged.push((sign, m, l));
                }
            }
        }
        self.mutations += batch.len() as u64;
        if self.staged.is_empty() {
            return false;
        }
        self.rounds += 1;
        let staged = std::mem::take(&mut self.staged);
        let fresh: Vec<_> = staged
            .into_iter()
            .filter(|&(sign, m, l)| self.record(sign, m, l))
            .collect();
        for (sign, m, l) in fresh {
            match (sign, m) {
                (Sign::Plus, Modality::O) => self.obl_effects(l),
                (Sign::Minus, Modality::O) => self.discard_o_effects(l),
                (Sign::Plus, Modality::P) => self.perm_effects(l),
                (Sign::Minus, Modality::P) => self.discard_p_effects(l),
            }
        }
        true
    }

    /// Runs to the fixpoint.
    pub fn run(&mut self) {
        while self.step() {}
    }

    pub fn stats(&self) -> RunStats {
        RunStats {
            mutations: self.mutations,
            rounds: self.rounds,
            size: self.size,
        }
    }

    /// Conclusions in merge order.
    pub fn conclusions(&self) -> Vec<Tagged> {
        self.conclusions
            .iter()
            .map(|&(sign, m, l)| Tagged::new(sign, m, self.literal(l)))
            .collect()
    }

    pub fn extension(&self) -> Extension {
        let mut e = Extension {
            input_inconsistent: self.input_inconsistent,
            ..Extension::default()
        };
        for &(sign, m, l) in &self.conclusions {
            e.set_mut(sign, m).insert(self.literal(l));
        }
        let hb: BTreeSet<Literal> = (0..self.lits.len() as Lit).map(|l| self.literal(l)).collect();
        e.fill_undetermined(&hb);
        e
    }

    /// What is left of each rule: open premises, the head up to its first
    /// failed element minus the elements already passed. Rules with a failed
    /// premise or nothing left in the head are omitted.
    pub fn residual_rules(&self, t: &Theory) -> Vec<Rule> {
        let mut out = Vec::new();
        let mut item = 0usize;
        for (rid, r) in t.rules().iter().enumerate() {
            let st = &self.rules[rid];
            let mut antecedent = BTreeSet::new();
            for a in r.antecedent() {
                if !self.items[item].done {
                    antecedent.insert(a.clone());
                }
                item += 1;
            }
            if st.dead {
                continue;
            }
            let mut elements = Vec::new();
            let mut otimes_len = 0;
            let upto = st.cut.min(st.occs.len());
            for k in 1..=upto {
                if st.elems[k - 1] == Settle::Passed {
                    continue;
                }
                if r.class_at(k) == Some(OccurrenceClass::Obligation) {
                    otimes_len += 1;
                }
                elements.push(r.head().elements()[k - 1].clone());
            }
            if elements.is_empty() {
                continue;
            }
            let kind = match r.kind() {
                RuleKind::DefeasibleO if otimes_len == 0 => RuleKind::DefeasibleP,
                k => k,
            };
            let head = crate::model::Chain::new(elements, otimes_len).expect("non-empty");
            out.push(Rule::from_parts_unchecked(st.label.clone(), antecedent, kind, head));
        }
        out
    }
}

/// Computes the extension of `t` under `cfg`.
pub fn compute_extension(t: &Theory, cfg: EngineConfig) -> Extension {
    compute_extension_with_stats(t, cfg).0
}

/// As [`compute_extension`], also returning run counters.
pub fn compute_extension_with_stats(t: &Theory, cfg: EngineConfig) -> (Extension, RunStats) {
    let mut w = WorkingTheory::new(t, cfg);
    w.check_facts();
    w.run();
    (w.extension(), w.stats())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_theory;

    fn l(s: &str) -> Literal {
        Literal::from_str_lossy(s)
    }

    fn ext(text: &str) -> Extension {
        compute_extension(&parse_theory(text).unwrap(), EngineConfig::default())
    }

    #[test]
    fn empty_theory() {
        let e = ext("");
        assert_eq!(e, Extension::default());
    }

    #[test]
    fn park() {
        let e = ext(
            "fact Park.\nfact Vehicle.\nfact Emergency.\n\
             rule r1: Park, Vehicle =>O ~Enter.\nrule r2: Park, Emergency =>O Enter.",
        );
        assert!(e.minus_d_o.contains(&l("Enter")));
        assert!(e.minus_d_o.contains(&l("~Enter")));
    }

    #[test]
    fn credit_with_licence() {
        let e = ext(
            "fact CreditLicence.\nrule r1: => O ~CreditActivity (x) CivilPenalty.\n\
             rule r2: CreditLicence =>P CreditActivity.\nsup r2 > r1.",
        );
        assert!(e.plus_d_p.contains(&l("CreditActivity")));
        assert!(e.minus_d_o.contains(&l("~CreditActivity")));
        assert!(e.minus_d_o.contains(&l("CivilPenalty")));
    }

    #[test]
    fn residual_after_facts() {
        let t = parse_theory("fact Park.\nrule r1: Park, Vehicle =>O ~Enter.").unwrap();
        let mut w = WorkingTheory::new(&t, EngineConfig::default());
        w.check_facts();
        let r = &w.residual_rules(&t);
        // Vehicle is not a fact, so r1 is gone entirely.
        assert!(r.is_empty());
        let t = parse_theory("fact Park.\nfact Vehicle.\nrule r1: Park, Vehicle, O(x) =>O ~Enter.").unwrap();
        let mut w = WorkingTheory::new(&t, EngineConfig::default());
        w.check_facts();
        let r = w.residual_rules(&t);
        assert_eq!(r[0].antecedent().len(), 1);
    }

    #[test]
    fn modify_perm_truncates_odot_chain() {
        let t = parse_theory("rule r: O(x) =>P b (o) a (o) c.").unwrap();
        let mut w = WorkingTheory::new(&t, EngineConfig::default());
        w.modify_perm(&l("a"));
        let r = w.residual_rules(&t);
        assert_eq!(r[0].head().elements(), &[l("b"), l("a")]);
    }

    #[test]
    fn modify_obl_passes_violated_element() {
        let t = parse_theory("rule r: O(x) =>O a (x) b.\nrule t: O(a) =>P y.").unwrap();
        let mut w = WorkingTheory::new(&t, EngineConfig::default());
        w.modify_obl(&l("a"));
        let r = w.residual_rules(&t);
        assert_eq!(r[0].head().elements(), &[l("b")]);
        assert!(r[1].antecedent().is_empty());
    }

    #[test]
    fn discard_deletes_and_reduces() {
        let t = parse_theory("rule s: O(q) =>P x.\nrule u: !O(q) =>O y.").unwrap();
        let mut w = WorkingTheory::new(&t, EngineConfig::default());
        w.discard(&l("q"), Modality::O);
        let r = w.residual_rules(&t);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].label(), "u");
        assert!(r[0].antecedent().is_empty());
        let before = w.stats().mutations;
        w.discard(&l("zzz"), Modality::O);
        assert_eq!(w.stats().mutations, before);
    }

    #[test]
    fn loop_stays_undetermined() {
        let e = ext("rule r: O(a) =>O a.");
        assert!(e.undetermined_o.contains(&l("a")));
    }

    #[test]
    fn single_rule_counts_mutations() {
        let t = parse_theory("rule r: =>O a.").unwrap();
        let (_, stats) = compute_extension_with_stats(&t, EngineConfig::default());
        assert!(stats.mutations >= 1);
    }

    #[test]
    fn all_configs() {
        assert_eq!(EngineConfig::all().len(), 6);
    }
}
