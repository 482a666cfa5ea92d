//! Line-oriented theory format.
//!
//! Statements end with `.` and `#` starts a comment running to the end of
//! the line:
//!
//! ```text
//! axiom c.                   # unattackable knowledge
//! premise p.                 # ordinary (attackable) knowledge
//! strict a, c -> d.          # strict rule
//! strict [s1]: a -> e.       # optional id label
//! defeasible a => b.         # unnamed defeasible rule (name generated)
//! defeasible [n1]: b => a.   # named defeasible rule
//! ```
//!
//! `prefer r1 < r2.` is reserved for future use and rejected with a
//! semantic error. Parsing recovers at statement boundaries and reports
//! every error found in one pass.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lang::{Literal, RESERVED_ATOM_PREFIX};
use crate::theory::{ArgumentationTheory, KnowledgeBase, Rule, RuleKind, TheoryError};

/// 1-based source position of a token, with its length in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParseErrorKind {
    Lex,
    Syntax,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{}:{}: {kind:?} error: {message}", span.line, span.column)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

fn err(span: SourceSpan, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
    ParseError { span, kind, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Comma,
    Dot,
    Colon,
    LBracket,
    RBracket,
    Arrow,     // ->
    DArrow,    // =>
    Less,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Tilde => write!(f, "'~'"),
            Tok::Comma => write!(f, "','"),
            Tok::Dot => write!(f, "'.'"),
            Tok::Colon => write!(f, "':'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Arrow => write!(f, "'->'"),
            Tok::DArrow => write!(f, "'=>'"),
            Tok::Less => write!(f, "'<'"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str) -> (Vec<Token>, Vec<ParseError>) {
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();

    macro_rules! span {
        ($len:expr) => {
            SourceSpan { line, column, length: $len }
        };
    }

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
            }
            '~' => {
                tokens.push(Token { tok: Tok::Tilde, span: span!(1) });
                chars.next();
                column += 1;
            }
            ',' => {
                tokens.push(Token { tok: Tok::Comma, span: span!(1) });
                chars.next();
                column += 1;
            }
            '.' => {
                tokens.push(Token { tok: Tok::Dot, span: span!(1) });
                chars.next();
                column += 1;
            }
            ':' => {
                tokens.push(Token { tok: Tok::Colon, span: span!(1) });
                chars.next();
                column += 1;
            }
            '[' => {
                tokens.push(Token { tok: Tok::LBracket, span: span!(1) });
                chars.next();
                column += 1;
            }
            ']' => {
                tokens.push(Token { tok: Tok::RBracket, span: span!(1) });
                chars.next();
                column += 1;
            }
            '<' => {
                tokens.push(Token { tok: Tok::Less, span: span!(1) });
                chars.next();
                column += 1;
            }
            '-' | '=' => {
                let start = span!(2);
                chars.next();
                column += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    column += 1;
                    tokens.push(Token {
                        tok: if c == '-' { Tok::Arrow } else { Tok::DArrow },
                        span: start,
                    });
                } else {
                    errors.push(err(
                        SourceSpan { length: 1, ..start },
                        ParseErrorKind::Lex,
                        format!("stray {c:?}, expected '{c}>'"),
                    ));
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start_col = column;
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    tok: Tok::Ident(ident.clone()),
                    span: SourceSpan { line, column: start_col, length: ident.chars().count() },
                });
            }
            other => {
                errors.push(err(span!(1), ParseErrorKind::Lex, format!("unexpected character {other:?}")));
                chars.next();
                column += 1;
            }
        }
    }
    (tokens, errors)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    errors: Vec<ParseError>,
    axioms: Vec<(Literal, SourceSpan)>,
    premises: Vec<(Literal, SourceSpan)>,
    rules: Vec<Rule>,
    name_spans: HashMap<Literal, SourceSpan>,
    id_spans: HashMap<String, SourceSpan>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn last_span(&self) -> SourceSpan {
        self.tokens
            .last()
            .map(|t| t.span)
            .unwrap_or(SourceSpan { line: 1, column: 1, length: 0 })
    }

    /// Skips tokens up to and including the next '.'. If the token that
    /// triggered the error was itself a '.', the statement boundary has
    /// already been consumed and there is nothing to skip.
    fn recover(&mut self) {
        if self.pos > 0 && self.tokens[self.pos - 1].tok == Tok::Dot {
            return;
        }
        while let Some(t) = self.advance() {
            if t.tok == Tok::Dot {
                break;
            }
        }
    }

    fn expect_dot(&mut self) -> Result<(), ParseError> {
        match self.advance() {
            Some(Token { tok: Tok::Dot, .. }) => Ok(()),
            Some(t) => Err(err(t.span, ParseErrorKind::Syntax, format!("expected '.', found {}", t.tok))),
            None => Err(err(self.last_span(), ParseErrorKind::Syntax, "expected '.', found end of input")),
        }
    }

    fn literal(&mut self) -> Result<(Literal, SourceSpan), ParseError> {
        let negative = matches!(self.peek().map(|t| &t.tok), Some(Tok::Tilde));
        let tilde_span = if negative { Some(self.advance().unwrap().span) } else { None };
        match self.advance() {
            Some(Token { tok: Tok::Ident(atom), span }) => {
                if atom.starts_with(RESERVED_ATOM_PREFIX) {
                    return Err(err(
                        span,
                        ParseErrorKind::Semantic,
                        format!("atom {atom:?} uses the reserved prefix {RESERVED_ATOM_PREFIX:?}"),
                    ));
                }
                let lit = Literal::new(atom, !negative)
                    .map_err(|e| err(span, ParseErrorKind::Semantic, e.to_string()))?;
                Ok((lit, tilde_span.unwrap_or(span)))
            }
            Some(t) => Err(err(t.span, ParseErrorKind::Syntax, format!("expected a literal, found {}", t.tok))),
            None => Err(err(self.last_span(), ParseErrorKind::Syntax, "expected a literal, found end of input")),
        }
    }

    fn knowledge_statement(&mut self, axiom: bool) -> Result<(), ParseError> {
        let (lit, span) = self.literal()?;
        self.expect_dot()?;
        if axiom {
            self.axioms.push((lit, span));
        } else {
            self.premises.push((lit, span));
        }
        Ok(())
    }

    fn rule_statement(&mut self, kind: RuleKind) -> Result<(), ParseError> {
        // Optional [label]: in front of the body.
        let mut label: Option<(String, SourceSpan)> = None;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::LBracket)) {
            self.advance();
            match self.advance() {
                Some(Token { tok: Tok::Ident(name), span }) => {
                    if name.starts_with(RESERVED_ATOM_PREFIX) {
                        return Err(err(
                            span,
                            ParseErrorKind::Semantic,
                            format!("label {name:?} uses the reserved prefix {RESERVED_ATOM_PREFIX:?}"),
                        ));
                    }
                    label = Some((name, span));
                }
                Some(t) => {
                    return Err(err(
                        t.span,
                        ParseErrorKind::Syntax,
                        format!("expected a rule label (rule names are positive literals), found {}", t.tok),
                    ))
                }
                None => {
                    return Err(err(self.last_span(), ParseErrorKind::Syntax, "unterminated rule label"))
                }
            }
            match self.advance() {
                Some(Token { tok: Tok::RBracket, .. }) => {}
                Some(t) => return Err(err(t.span, ParseErrorKind::Syntax, format!("expected ']', found {}", t.tok))),
                None => return Err(err(self.last_span(), ParseErrorKind::Syntax, "unterminated rule label")),
            }
            match self.advance() {
                Some(Token { tok: Tok::Colon, .. }) => {}
                Some(t) => return Err(err(t.span, ParseErrorKind::Syntax, format!("expected ':', found {}", t.tok))),
                None => return Err(err(self.last_span(), ParseErrorKind::Syntax, "expected ':' after rule label")),
            }
        }

        let mut body = vec![self.literal()?.0];
        let expected_arrow = match kind {
            RuleKind::Strict => Tok::Arrow,
            RuleKind::Defeasible => Tok::DArrow,
        };
        loop {
            match self.advance() {
                Some(Token { tok: Tok::Comma, .. }) => body.push(self.literal()?.0),
                Some(Token { tok, .. }) if tok == expected_arrow => break,
                Some(Token { tok: tok @ (Tok::Arrow | Tok::DArrow), span }) => {
                    return Err(err(
                        span,
                        ParseErrorKind::Syntax,
                        format!("{tok} does not match the declared {kind} rule"),
                    ));
                }
                Some(t) => {
                    return Err(err(
                        t.span,
                        ParseErrorKind::Syntax,
                        format!("expected ',' or an arrow, found {}", t.tok),
                    ))
                }
                None => {
                    return Err(err(self.last_span(), ParseErrorKind::Syntax, "unterminated rule"))
                }
            }
        }
        let (head, _) = self.literal()?;
        self.expect_dot()?;

        let mut rule = match kind {
            RuleKind::Strict => Rule::strict(body, head),
            RuleKind::Defeasible => Rule::defeasible(body, head),
        };
        if let Some((name, span)) = label {
            if self.id_spans.contains_key(&name) {
                return Err(err(span, ParseErrorKind::Semantic, format!("label {name:?} is already in use")));
            }
            self.id_spans.insert(name.clone(), span);
            match kind {
                // Strict labels are presentation ids only.
                RuleKind::Strict => rule = rule.with_id(name),
                // Defeasible labels are the rule's name (and its id).
                RuleKind::Defeasible => {
                    let lit = Literal::positive(name.clone())
                        .map_err(|e| err(span, ParseErrorKind::Semantic, e.to_string()))?;
                    self.name_spans.insert(lit.clone(), span);
                    rule = rule.with_id(name).named(lit);
                }
            }
        }
        self.rules.push(rule);
        Ok(())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let head = self.advance().expect("statement called at a token");
        match head.tok {
            Tok::Ident(kw) => match kw.as_str() {
                "axiom" => self.knowledge_statement(true),
                "premise" => self.knowledge_statement(false),
                "strict" => self.rule_statement(RuleKind::Strict),
                "defeasible" => self.rule_statement(RuleKind::Defeasible),
                "prefer" => Err(err(
                    head.span,
                    ParseErrorKind::Semantic,
                    "'prefer' statements are reserved for future use",
                )),
                other => Err(err(
                    head.span,
                    ParseErrorKind::Syntax,
                    format!("unknown statement keyword {other:?}"),
                )),
            },
            tok => Err(err(head.span, ParseErrorKind::Syntax, format!("expected a statement, found {tok}"))),
        }
    }
}

/// Parses a theory, reporting every recoverable error in one pass.
pub fn parse(text: &str) -> Result<ArgumentationTheory, Vec<ParseError>> {
    let (tokens, mut errors) = lex(text);
    let mut p = Parser {
        tokens,
        pos: 0,
        errors: Vec::new(),
        axioms: Vec::new(),
        premises: Vec::new(),
        rules: Vec::new(),
        name_spans: HashMap::new(),
        id_spans: HashMap::new(),
    };
    while p.peek().is_some() {
        if let Err(e) = p.statement() {
            p.errors.push(e);
            p.recover();
        }
    }
    errors.append(&mut p.errors);

    // Knowledge base semantic checks, with spans pointing at the offender.
    let mut axioms: BTreeSet<Literal> = BTreeSet::new();
    let mut premises: BTreeSet<Literal> = BTreeSet::new();
    for (lit, span) in &p.axioms {
        if premises.contains(lit) {
            errors.push(err(
                *span,
                ParseErrorKind::Semantic,
                format!("{lit} is already an ordinary premise"),
            ));
        } else {
            axioms.insert(lit.clone());
        }
    }
    for (lit, span) in &p.premises {
        if axioms.contains(lit) {
            errors.push(err(*span, ParseErrorKind::Semantic, format!("{lit} is already an axiom")));
        } else {
            premises.insert(lit.clone());
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }

    let kb = KnowledgeBase::new(axioms, premises).expect("disjointness already enforced");
    ArgumentationTheory::new(kb, p.rules).map_err(|e| {
        let span = match &e {
            TheoryError::DuplicateRuleName(name) => {
                p.name_spans.get(name).copied().unwrap_or(SourceSpan { line: 1, column: 1, length: 0 })
            }
            _ => SourceSpan { line: 1, column: 1, length: 0 },
        };
        vec![err(span, ParseErrorKind::Semantic, e.to_string())]
    })
}

/// Canonical serialization: axioms, premises, strict rules, defeasible
/// rules, each block sorted; rule bodies sorted; strict ids and generated
/// names omitted. Equal theories (up to rule ids) serialize byte for byte
/// identically, and parsing the output reproduces the theory.
pub fn serialize(theory: &ArgumentationTheory) -> String {
    let mut out = String::new();
    for l in &theory.kb.axioms {
        out.push_str(&format!("axiom {l}.\n"));
    }
    for l in &theory.kb.premises {
        out.push_str(&format!("premise {l}.\n"));
    }

    let mut strict_lines: Vec<String> = Vec::new();
    let mut defeasible_lines: Vec<String> = Vec::new();
    for r in &theory.rules {
        let mut body = r.body.clone();
        body.sort();
        let body = body.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
        match r.kind {
            RuleKind::Strict => strict_lines.push(format!("strict {body} -> {}.\n", r.head)),
            RuleKind::Defeasible => match &r.name {
                Some(n) if !n.auto => defeasible_lines
                    .push(format!("defeasible [{}]: {body} => {}.\n", n.literal, r.head)),
                _ => defeasible_lines.push(format!("defeasible {body} => {}.\n", r.head)),
            },
        }
    }
    strict_lines.sort();
    strict_lines.dedup();
    defeasible_lines.sort();
    defeasible_lines.dedup();
    out.extend(strict_lines);
    out.extend(defeasible_lines);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Literal {
        s.parse().unwrap()
    }

    #[test]
    fn parses_the_statement_forms() {
        let theory = parse(
            "# header comment\n\
             axiom c.\n\
             premise p.\n\
             strict a, c -> d.\n\
             strict [s1]: a -> e.\n\
             defeasible a => b.\n\
             defeasible [n1]: b => a.\n",
        )
        .unwrap();
        assert_eq!(theory.kb.axioms.len(), 1);
        assert_eq!(theory.kb.premises.len(), 1);
        assert_eq!(theory.strict_rules().count(), 2);
        assert_eq!(theory.defeasible_rules().count(), 2);
        assert!(theory.rules.iter().any(|r| r.id == "s1"));
        let named = theory.rules.iter().find(|r| r.id == "n1").unwrap();
        assert_eq!(named.name.as_ref().unwrap().literal, lit("n1"));
    }

    #[test]
    fn arrow_must_match_declared_kind() {
        let errs = parse("strict s1: a => b.").unwrap_err();
        assert!(errs.iter().any(|e| e.kind == ParseErrorKind::Syntax));
        let errs = parse("strict [s1]: a => b.").unwrap_err();
        let arrow_err = errs.iter().find(|e| e.message.contains("does not match")).unwrap();
        assert_eq!(arrow_err.span.line, 1);
        assert_eq!(arrow_err.kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn reports_every_error_in_one_pass() {
        let errs = parse("axiom .\nstrict -> b.\npremise ~.\n").unwrap_err();
        assert!(errs.len() >= 3);
    }

    #[test]
    fn empty_rule_bodies_are_a_syntax_error() {
        assert!(parse("strict -> a.").is_err());
        assert!(parse("defeasible => a.").is_err());
    }

    #[test]
    fn kn_kp_overlap_is_reported_at_the_second_statement() {
        let errs = parse("axiom a.\npremise a.\n").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].span.line, 2);
        assert_eq!(errs[0].kind, ParseErrorKind::Semantic);
    }

    #[test]
    fn prefer_is_reserved() {
        let errs = parse("prefer r1 < r2.").unwrap_err();
        assert!(errs[0].message.contains("reserved"));
    }

    #[test]
    fn reserved_atoms_are_rejected() {
        assert!(parse("axiom __r1.").is_err());
        assert!(parse("defeasible [__n]: a => b.").is_err());
    }

    #[test]
    fn negative_rule_names_are_unwritable() {
        // A tilde inside the label brackets never parses.
        assert!(parse("defeasible [~n1]: a => b.").is_err());
    }

    #[test]
    fn serialize_is_canonical() {
        let a = parse("strict c, a -> d.\naxiom c.\npremise b.\n").unwrap();
        let b = parse("premise b.\nstrict a, c -> d.\naxiom c.\n").unwrap();
        assert_eq!(serialize(&a), serialize(&b));
        assert_eq!(serialize(&a), "axiom c.\npremise b.\nstrict a, c -> d.\n");
    }

    #[test]
    fn empty_theory_serializes_to_nothing() {
        assert_eq!(serialize(&ArgumentationTheory::empty()), "");
    }

    #[test]
    fn parse_serialize_round_trip() {
        let text = "axiom ~a.\npremise q.\nstrict a -> b.\ndefeasible [n1]: b => a.\ndefeasible x => y.\n";
        let theory = parse(text).unwrap();
        let back = parse(&serialize(&theory)).unwrap();
        assert_eq!(back, theory);
    }
}
