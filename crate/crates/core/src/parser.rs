//! Text front end for theories and serializers for theories and extensions.
//!
//! ```text
//! # comments run to the end of the line
//! fact Park.
//! fact !O(~Smoke).
//! rule r1: Park, Vehicle =>O ~Enter.
//! rule r2: CreditLicence =>P CreditActivity.
//! rule r3: => O Pay (x) Fine (o) Appeal.
//! rule d: Weekend ~> UseCar.
//! sup r2 > r1.
//! ```
//!
//! `(x)` and `(o)` spell `⊗` and `⊙`; the Unicode symbols are accepted too.
//! Output always uses the ASCII spellings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::extension::Extension;
use crate::model::{
    AntecedentItem, Chain, Literal, Modality, Rule, RuleKind, Superiority, Theory,
};

/// 1-based position of a token in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseErrorKind {
    Syntax,
    DuplicateLabel,
    MalformedChain,
    UnknownLabelInSup,
    NestedModality,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::DuplicateLabel => "duplicate-label",
            ParseErrorKind::MalformedChain => "malformed-chain",
            ParseErrorKind::UnknownLabelInSup => "unknown-label-in-sup",
            ParseErrorKind::NestedModality => "nested-modality",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} error: {}", self.span, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Bang,
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    Gt,
    FatArrow,
    SquigArrow,
    Otimes,
    Odot,
    Bad(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Tilde => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Gt => "`>`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::SquigArrow => "`~>`".into(),
            Tok::Otimes => "`⊗`".into(),
            Tok::Odot => "`⊙`".into(),
            Tok::Bad(c) => format!("unexpected character {c:?}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let start = SourceSpan {
            line,
            column: col,
            length: 1,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if is_ident_char(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                s.push(c);
                chars.next();
                col += 1;
            }
            let length = s.chars().count();
            out.push(Token {
                tok: Tok::Ident(s),
                span: SourceSpan { length, ..start },
            });
            continue;
        }
        chars.next();
        col += 1;
        let (tok, length) = match c {
            '~' if chars.peek() == Some(&'>') => {
                chars.next();
                col += 1;
                (Tok::SquigArrow, 2)
            }
            '=' if chars.peek() == Some(&'>') => {
                chars.next();
                col += 1;
                (Tok::FatArrow, 2)
            }
            '~' | '¬' => (Tok::Tilde, 1),
            '!' => (Tok::Bang, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            ':' => (Tok::Colon, 1),
            '>' => (Tok::Gt, 1),
            '⊗' => (Tok::Otimes, 1),
            '⊙' => (Tok::Odot, 1),
            other => (Tok::Bad(other), 1),
        };
        out.push(Token {
            tok,
            span: SourceSpan { length, ..start },
        });
    }
    out
}

struct SupDecl {
    winner: (String, SourceSpan),
    loser: (String, SourceSpan),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: SourceSpan,
    errors: Vec<ParseError>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map(|t| t.span).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            span: self.span(),
            message: message.into(),
            kind,
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => t.describe(),
            None => "end of input".to_string(),
        };
        self.err(ParseErrorKind::Syntax, format!("expected {wanted}, found {found}"))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> PResult<SourceSpan> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().unwrap().span)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self, wanted: &str) -> PResult<(String, SourceSpan)> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let t = self.bump().unwrap();
                match t.tok {
                    Tok::Ident(s) => Ok((s, t.span)),
                    _ => unreachable!(),
                }
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    /// Skips past the next `.` (or to the end).
    fn recover(&mut self) {
        while let Some(t) = self.bump() {
            if t.tok == Tok::Dot {
                break;
            }
        }
    }

    fn literal(&mut self) -> PResult<Literal> {
        let negative = if self.peek() == Some(&Tok::Tilde) {
            self.bump();
            true
        } else {
            false
        };
        let (name, _) = self.ident("a literal")?;
        Ok(if negative {
            Literal::neg(name)
        } else {
            Literal::pos(name)
        })
    }

    fn is_modality_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "O" || s == "P")
            && self.peek_at(1) == Some(&Tok::LParen)
    }

    /// `lit | O(lit) | P(lit) | !O(lit) | !P(lit)`
    fn item(&mut self) -> PResult<AntecedentItem> {
        let negated = if self.peek() == Some(&Tok::Bang) {
            self.bump();
            if !self.is_modality_start() {
                return Err(self.unexpected("`O(` or `P(` after `!`"));
            }
            true
        } else {
            false
        };
        if self.is_modality_start() {
            let (m, _) = self.ident("a modality")?;
            let modality = if m == "O" { Modality::O } else { Modality::P };
            self.bump();
            if self.peek() == Some(&Tok::Bang) || self.is_modality_start() {
                return Err(self.err(
                    ParseErrorKind::NestedModality,
                    "modal operators cannot be nested",
                ));
            }
            let literal = self.literal()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(AntecedentItem::modal(negated, modality, literal))
        } else {
            Ok(AntecedentItem::Plain(self.literal()?))
        }
    }

    /// Returns `Some(true)` for `⊗`, `Some(false)` for `⊙`, consuming it.
    fn connective(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Tok::Otimes) => {
                self.bump();
                Some(true)
            }
            Some(Tok::Odot) => {
                self.bump();
                Some(false)
            }
            Some(Tok::LParen) => {
                let which = match self.peek_at(1) {
                    Some(Tok::Ident(s)) if s == "x" => true,
                    Some(Tok::Ident(s)) if s == "o" => false,
                    _ => return None,
                };
                if self.peek_at(2) != Some(&Tok::RParen) {
                    return None;
                }
                self.pos += 3;
                Some(which)
            }
            _ => None,
        }
    }

    fn head_literal(&mut self) -> PResult<Literal> {
        if self.peek() == Some(&Tok::Bang) || self.is_modality_start() {
            return Err(self.err(
                ParseErrorKind::NestedModality,
                "modal literals cannot appear in a rule head",
            ));
        }
        self.literal()
    }

    fn chain(&mut self, kind: RuleKind, label: &str) -> PResult<Chain> {
        let start = self.span();
        let mut elements = vec![self.head_literal()?];
        let mut otimes_len = usize::from(kind == RuleKind::DefeasibleO);
        let mut seen_odot = false;
        loop {
            let at = self.span();
            let Some(is_otimes) = self.connective() else {
                break;
            };
            let malformed = |message: String| ParseError {
                span: at,
                message,
                kind: ParseErrorKind::MalformedChain,
            };
            if is_otimes {
                if kind == RuleKind::DefeasibleP {
                    return Err(malformed(format!(
                        "rule {label}: a permission rule cannot contain `(x)`"
                    )));
                }
                if seen_odot {
                    return Err(malformed(format!(
                        "rule {label}: `(x)` cannot follow `(o)`"
                    )));
                }
                if kind == RuleKind::DefeasibleO {
                    otimes_len += 1;
                }
            } else {
                seen_odot = true;
            }
            elements.push(self.head_literal()?);
        }
        if kind == RuleKind::Defeater && elements.len() > 1 {
            return Err(ParseError {
                span: start,
                message: format!("rule {label}: a defeater head is a single literal"),
                kind: ParseErrorKind::MalformedChain,
            });
        }
        if kind == RuleKind::Defeater {
            otimes_len = 0;
        }
        Chain::new(elements, otimes_len).map_err(|e| ParseError {
            span: start,
            message: e.to_string(),
            kind: ParseErrorKind::MalformedChain,
        })
    }

    fn rule(&mut self) -> PResult<(Rule, SourceSpan)> {
        let (label, label_span) = self.ident("a rule label")?;
        self.expect(Tok::Colon, "`:` after the rule label")?;
        let mut antecedent = BTreeSet::new();
        if !matches!(self.peek(), Some(Tok::FatArrow) | Some(Tok::SquigArrow)) {
            loop {
                antecedent.insert(self.item()?);
                if self.peek() == Some(&Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        let kind = match self.peek() {
            Some(Tok::SquigArrow) => {
                self.bump();
                RuleKind::Defeater
            }
            Some(Tok::FatArrow) => {
                self.bump();
                match self.peek() {
                    Some(Tok::Ident(s)) if s == "O" => {
                        self.bump();
                        RuleKind::DefeasibleO
                    }
                    Some(Tok::Ident(s)) if s == "P" => {
                        self.bump();
                        RuleKind::DefeasibleP
                    }
                    _ => return Err(self.unexpected("`O` or `P` after `=>`")),
                }
            }
            _ => return Err(self.unexpected("`,`, `=>O`, `=>P` or `~>`")),
        };
        let head = self.chain(kind, &label)?;
        self.expect(Tok::Dot, "`.` at the end of the rule")?;
        let rule = Rule::new(label, antecedent, kind, head).map_err(|e| ParseError {
            span: label_span,
            message: e.to_string(),
            kind: ParseErrorKind::MalformedChain,
        })?;
        Ok((rule, label_span))
    }

    fn statement(
        &mut self,
        facts: &mut BTreeSet<AntecedentItem>,
        rules: &mut Vec<(Rule, SourceSpan)>,
        sups: &mut Vec<SupDecl>,
    ) -> PResult<()> {
        let (kw, _) = self.ident("`fact`, `rule` or `sup`")?;
        match kw.as_str() {
            "fact" => {
                let item = self.item()?;
                self.expect(Tok::Dot, "`.` at the end of the fact")?;
                facts.insert(item);
            }
            "rule" => rules.push(self.rule()?),
            "sup" => {
                let winner = self.ident("a rule label")?;
                self.expect(Tok::Gt, "`>`")?;
                let loser = self.ident("a rule label")?;
                self.expect(Tok::Dot, "`.` at the end of the superiority")?;
                sups.push(SupDecl { winner, loser });
            }
            other => {
                self.pos -= 1;
                return Err(self.err(
                    ParseErrorKind::Syntax,
                    format!("expected `fact`, `rule` or `sup`, found `{other}`"),
                ));
            }
        }
        Ok(())
    }
}

/// Parses a theory. All errors found are returned, each with its span.
pub fn parse_theory(text: &str) -> Result<Theory, Vec<ParseError>> {
    let toks = lex(text);
    let end = match toks.last() {
        Some(t) => SourceSpan {
            column: t.span.column + t.span.length,
            length: 0,
            ..t.span
        },
        None => SourceSpan {
            line: 1,
            column: 1,
            length: 0,
        },
    };
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        errors: Vec::new(),
    };
    for t in &p.toks {
        if let Tok::Bad(c) = t.tok {
            p.errors.push(ParseError {
                span: t.span,
                message: format!("unexpected character {c:?}"),
                kind: ParseErrorKind::Syntax,
            });
        }
    }
    let mut facts = BTreeSet::new();
    let mut rules = Vec::new();
    let mut sups = Vec::new();
    while p.pos < p.toks.len() {
        let before = p.pos;
        if let Err(e) = p.statement(&mut facts, &mut rules, &mut sups) {
            if !matches!(p.toks.get(p.pos).map(|t| &t.tok), Some(Tok::Bad(_))) {
                p.errors.push(e);
            }
            if p.pos > before && p.toks.get(p.pos - 1).map(|t| &t.tok) == Some(&Tok::Dot) {
                continue;
            }
            p.recover();
        }
    }

    let mut errors = p.errors;
    let mut by_label: HashMap<String, SourceSpan> = HashMap::new();
    let mut kept = Vec::with_capacity(rules.len());
    for (rule, span) in rules {
        if let Some(first) = by_label.get(rule.label()) {
            errors.push(ParseError {
                span,
                message: format!(
                    "rule label `{}` already defined at {first}",
                    rule.label()
                ),
                kind: ParseErrorKind::DuplicateLabel,
            });
            continue;
        }
        by_label.insert(rule.label().to_string(), span);
        kept.push(rule);
    }
    let mut sup = Superiority::new();
    for d in sups {
        let mut ok = true;
        for (label, span) in [&d.winner, &d.loser] {
            if !by_label.contains_key(label) {
                ok = false;
                errors.push(ParseError {
                    span: *span,
                    message: format!("superiority mentions unknown rule `{label}`"),
                    kind: ParseErrorKind::UnknownLabelInSup,
                });
            }
        }
        if ok {
            sup.insert(d.winner.0, d.loser.0);
        }
    }
    if !errors.is_empty() {
        errors.sort_by_key(|e| e.span);
        return Err(errors);
    }
    Ok(Theory::new(facts, kept, sup).expect("labels validated above"))
}

/// Canonical text form: sorted facts, rules in order, sorted superiority.
pub fn serialize_theory(t: &Theory) -> String {
    let mut out = String::new();
    for f in t.facts() {
        out.push_str(&format!("fact {f}.\n"));
    }
    for r in t.rules() {
        out.push_str(&format!("rule {r}.\n"));
    }
    for (w, l) in t.sup().iter() {
        out.push_str(&format!("sup {w} > {l}.\n"));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExtensionFormat {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for ExtensionFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ExtensionFormat::Json),
            "text" => Ok(ExtensionFormat::Text),
            other => Err(format!("unknown format `{other}` (expected json or text)")),
        }
    }
}

fn sorted_strings(set: &BTreeSet<Literal>) -> Vec<String> {
    let mut v: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    v.sort();
    v
}

/// JSON keys: `plus_dO`, `plus_dP`, `minus_dO`, `minus_dP`,
/// `undetermined_O`, `undetermined_P`; text: one `tag literal` line per entry
/// with tags `+dO`, `+dP`, `-dO`, `-dP`, `?O`, `?P`.
pub fn serialize_extension(e: &Extension, format: ExtensionFormat) -> String {
    let sections: [(&str, &str, &BTreeSet<Literal>); 6] = [
        ("plus_dO", "+dO", &e.plus_d_o),
        ("plus_dP", "+dP", &e.plus_d_p),
        ("minus_dO", "-dO", &e.minus_d_o),
        ("minus_dP", "-dP", &e.minus_d_p),
        ("undetermined_O", "?O", &e.undetermined_o),
        ("undetermined_P", "?P", &e.undetermined_p),
    ];
    match format {
        ExtensionFormat::Json => {
            let mut out = String::from("{");
            for (i, (key, _, set)) in sections.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).unwrap());
                out.push(':');
                out.push_str(&serde_json::to_string(&sorted_strings(set)).unwrap());
            }
            out.push('}');
            out
        }
        ExtensionFormat::Text => {
            let mut out = String::new();
            for (_, tag, set) in sections {
                for l in sorted_strings(set) {
                    out.push_str(tag);
                    out.push(' ');
                    out.push_str(&l);
                    out.push('\n');
                }
            }
            out
        }
    }
}

/// Reads the JSON produced by [`serialize_extension`].
pub fn parse_extension_json(text: &str) -> Result<Extension, serde_json::Error> {
    #[derive(serde::Deserialize)]
    struct Raw {
        #[serde(rename = "plus_dO")]
        plus_d_o: Vec<String>,
        #[serde(rename = "plus_dP")]
        plus_d_p: Vec<String>,
        #[serde(rename = "minus_dO")]
        minus_d_o: Vec<String>,
        #[serde(rename = "minus_dP")]
        minus_d_p: Vec<String>,
        #[serde(rename = "undetermined_O")]
        undetermined_o: Vec<String>,
        #[serde(rename = "undetermined_P")]
        undetermined_p: Vec<String>,
    }
    let raw: Raw = serde_json::from_str(text)?;
    let set = |v: Vec<String>| v.iter().map(|s| Literal::from_str_lossy(s)).collect();
    Ok(Extension {
        plus_d_o: set(raw.plus_d_o),
        plus_d_p: set(raw.plus_d_p),
        minus_d_o: set(raw.minus_d_o),
        minus_d_p: set(raw.minus_d_p),
        undetermined_o: set(raw.undetermined_o),
        undetermined_p: set(raw.undetermined_p),
        input_inconsistent: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Literal {
        Literal::from_str_lossy(s)
    }

    const CREDIT: &str = "\
rule r1: => O ~CreditActivity (x) CivilPenalty.
rule r2: CreditLicence =>P CreditActivity.
sup r2 > r1.
";

    #[test]
    fn parses_credit_act() {
        let t = parse_theory(CREDIT).unwrap();
        assert_eq!(t.rules().len(), 2);
        assert!(t.sup().contains("r2", "r1"));
        let r1 = t.rule("r1").unwrap();
        assert_eq!(r1.kind(), RuleKind::DefeasibleO);
        assert_eq!(r1.head().elements(), &[l("~CreditActivity"), l("CivilPenalty")]);
        assert_eq!(r1.head().otimes_len(), 2);
    }

    #[test]
    fn parses_copyright_odot_chain() {
        let t = parse_theory(
            "rule r: infringement, beforeJudgment =>P ActualDamages (o) StatutoryDamages.",
        )
        .unwrap();
        let r = &t.rules()[0];
        assert_eq!(r.kind(), RuleKind::DefeasibleP);
        assert_eq!(r.head().len(), 2);
        assert_eq!(r.head().otimes_len(), 0);
        assert_eq!(r.antecedent().len(), 2);
    }

    #[test]
    fn unicode_connectives() {
        let a = parse_theory("rule r: =>O a ⊗ b ⊙ c.").unwrap();
        let b = parse_theory("rule r: =>O a (x) b (o) c.").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rules()[0].head().otimes_len(), 2);
    }

    fn kinds(text: &str) -> Vec<ParseErrorKind> {
        parse_theory(text).unwrap_err().into_iter().map(|e| e.kind).collect()
    }

    #[test]
    fn malformed_chains() {
        assert_eq!(kinds("rule bad: =>P a (x) b."), vec![ParseErrorKind::MalformedChain]);
        assert_eq!(kinds("rule bad: =>O a (o) b (x) c."), vec![ParseErrorKind::MalformedChain]);
        assert_eq!(kinds("rule bad: x ~> a (o) b."), vec![ParseErrorKind::MalformedChain]);
    }

    #[test]
    fn nested_modalities() {
        assert_eq!(kinds("rule bad: =>O O(a)."), vec![ParseErrorKind::NestedModality]);
        assert_eq!(kinds("fact O(P(a))."), vec![ParseErrorKind::NestedModality]);
        assert_eq!(kinds("rule bad: O(!O(a)) =>O b."), vec![ParseErrorKind::NestedModality]);
    }

    #[test]
    fn label_errors() {
        assert_eq!(
            kinds("rule r: =>O a.\nrule r: =>O b."),
            vec![ParseErrorKind::DuplicateLabel]
        );
        let errs = parse_theory("rule r: =>O a.\nsup r > s.").unwrap_err();
        assert_eq!(errs[0].kind, ParseErrorKind::UnknownLabelInSup);
        assert_eq!(errs[0].span, SourceSpan { line: 2, column: 9, length: 1 });
    }

    #[test]
    fn recovers_and_reports_every_statement() {
        let errs = parse_theory("fact .\nrule r: =>Q a.\nfact ok.\nsup a b.").unwrap_err();
        assert_eq!(errs.len(), 3);
        assert_eq!(errs[0].span.line, 1);
        assert_eq!(errs[1].span.line, 2);
        assert_eq!(errs[2].span.line, 4);
    }

    #[test]
    fn modal_facts_and_negations() {
        let t = parse_theory("fact !O(a).\nfact O(~a).\nfact P(b).\nfact !P(~b).\nfact c.\nfact c.")
            .unwrap();
        assert_eq!(t.facts().len(), 5);
        assert!(t.has_fact(&AntecedentItem::modal(true, Modality::O, l("a"))));
        assert!(t.has_fact(&AntecedentItem::modal(false, Modality::O, l("~a"))));
    }

    #[test]
    fn atoms_named_like_modalities() {
        let t = parse_theory("fact O.\nrule r: P =>O O.").unwrap();
        assert!(t.has_fact(&AntecedentItem::Plain(l("O"))));
        assert_eq!(t.rules()[0].head().elements(), &[l("O")]);
    }

    #[test]
    fn crlf_and_comments() {
        let t = parse_theory("# header\r\nfact a. # trailing\r\nrule r: a =>O b.\r\n").unwrap();
        assert_eq!(t.rules().len(), 1);
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize_theory(&Theory::empty()), "");
        let t = parse_theory("fact Park.").unwrap();
        assert_eq!(serialize_theory(&t), "fact Park.\n");
        let t = parse_theory(CREDIT).unwrap();
        let text = serialize_theory(&t);
        assert_eq!(parse_theory(&text).unwrap(), t);
        assert!(text.contains("rule r1: =>O ~CreditActivity (x) CivilPenalty.\n"));
    }

    #[test]
    fn chains_are_normalized() {
        let t = parse_theory("rule r: =>O a (x) b (x) a.").unwrap();
        assert_eq!(t.rules()[0].head().elements(), &[l("a"), l("b")]);
    }

    #[test]
    fn extension_json_shape() {
        let mut e = Extension::default();
        assert_eq!(
            serialize_extension(&e, ExtensionFormat::Json),
            r#"{"plus_dO":[],"plus_dP":[],"minus_dO":[],"minus_dP":[],"undetermined_O":[],"undetermined_P":[]}"#
        );
        e.plus_d_o.insert(l("Help"));
        e.minus_d_p.insert(l("~b"));
        e.minus_d_p.insert(l("a"));
        let json = serialize_extension(&e, ExtensionFormat::Json);
        assert!(json.starts_with(r#"{"plus_dO":["Help"]"#));
        assert!(json.contains(r#""minus_dP":["a","~b"]"#));
        assert_eq!(parse_extension_json(&json).unwrap(), e);
        assert_eq!(
            serialize_extension(&e, ExtensionFormat::Text),
            "+dO Help\n-dP a\n-dP ~b\n"
        );
    }
}
