//! The defeasible extension of a theory.

use std::collections::BTreeSet;

use crate::model::{Literal, Modality};

/// `(+∂O, +∂P, −∂O, −∂P)` plus the literals of the Herbrand base left
/// undetermined for each modality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Extension {
    pub plus_d_o: BTreeSet<Literal>,
    pub plus_d_p: BTreeSet<Literal>,
    pub minus_d_o: BTreeSet<Literal>,
    pub minus_d_p: BTreeSet<Literal>,
    pub undetermined_o: BTreeSet<Literal>,
    pub undetermined_p: BTreeSet<Literal>,
    /// Set when the input theory was not consistent; excluded from equality
    /// checks done through [`Extension::same_sets`].
    pub input_inconsistent: bool,
}

/// Sign of a tagged conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `±∂□ q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tagged {
    pub sign: Sign,
    pub modality: Modality,
    pub literal: Literal,
}

impl Tagged {
    pub fn new(sign: Sign, modality: Modality, literal: Literal) -> Self {
        Tagged {
            sign,
            modality,
            literal,
        }
    }
}

impl std::fmt::Display for Tagged {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}d{} {}", self.sign, self.modality, self.literal)
    }
}

impl Extension {
    pub fn set(&self, sign: Sign, m: Modality) -> &BTreeSet<Literal> {
        match (sign, m) {
            (Sign::Plus, Modality::O) => &self.plus_d_o,
            (Sign::Plus, Modality::P) => &self.plus_d_p,
            (Sign::Minus, Modality::O) => &self.minus_d_o,
            (Sign::Minus, Modality::P) => &self.minus_d_p,
        }
    }

    pub fn set_mut(&mut self, sign: Sign, m: Modality) -> &mut BTreeSet<Literal> {
        match (sign, m) {
            (Sign::Plus, Modality::O) => &mut self.plus_d_o,
            (Sign::Plus, Modality::P) => &mut self.plus_d_p,
            (Sign::Minus, Modality::O) => &mut self.minus_d_o,
            (Sign::Minus, Modality::P) => &mut self.minus_d_p,
        }
    }

    pub fn undetermined(&self, m: Modality) -> &BTreeSet<Literal> {
        match m {
            Modality::O => &self.undetermined_o,
            Modality::P => &self.undetermined_p,
        }
    }

    pub fn contains(&self, t: &Tagged) -> bool {
        self.set(t.sign, t.modality).contains(&t.literal)
    }

    /// Fills the undetermined sets from a Herbrand base.
    pub fn fill_undetermined<'a>(&mut self, hb: impl IntoIterator<Item = &'a Literal>) {
        for l in hb {
            if !self.plus_d_o.contains(l) && !self.minus_d_o.contains(l) {
                self.undetermined_o.insert(l.clone());
            }
            if !self.plus_d_p.contains(l) && !self.minus_d_p.contains(l) {
                self.undetermined_p.insert(l.clone());
            }
        }
    }

    /// Equality of the six sets, ignoring the inconsistency flag.
    pub fn same_sets(&self, other: &Extension) -> bool {
        self.plus_d_o == other.plus_d_o
            && self.plus_d_p == other.plus_d_p
            && self.minus_d_o == other.minus_d_o
            && self.minus_d_p == other.minus_d_p
            && self.undetermined_o == other.undetermined_o
            && self.undetermined_p == other.undetermined_p
    }

    /// Tag status of `l` for modality `m`: `Some(Plus)`, `Some(Minus)` or
    /// `None` when undetermined or outside the base.
    pub fn status(&self, m: Modality, l: &Literal) -> Option<Sign> {
        if self.set(Sign::Plus, m).contains(l) {
            Some(Sign::Plus)
        } else if self.set(Sign::Minus, m).contains(l) {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// Restricts all six sets to `base`.
    pub fn restricted_to(&self, base: &BTreeSet<Literal>) -> Extension {
        let r = |s: &BTreeSet<Literal>| s.intersection(base).cloned().collect();
        Extension {
            plus_d_o: r(&self.plus_d_o),
            plus_d_p: r(&self.plus_d_p),
            minus_d_o: r(&self.minus_d_o),
            minus_d_p: r(&self.minus_d_p),
            undetermined_o: r(&self.undetermined_o),
            undetermined_p: r(&self.undetermined_p),
            input_inconsistent: self.input_inconsistent,
        }
    }

    /// All literals mentioned in any set.
    pub fn base(&self) -> BTreeSet<Literal> {
        let mut out = BTreeSet::new();
        for s in [
            &self.plus_d_o,
            &self.plus_d_p,
            &self.minus_d_o,
            &self.minus_d_p,
            &self.undetermined_o,
            &self.undetermined_p,
        ] {
            out.extend(s.iter().cloned());
        }
        out
    }
}
