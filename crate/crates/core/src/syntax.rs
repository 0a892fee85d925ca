//! Shared lexer and recursive-descent parsers for the three formula layers.
//!
//! One token stream serves all grammars; each layer interprets the tokens it
//! admits. ASCII and Unicode spellings of the connectives are both accepted:
//!
//! | token | ASCII | Unicode |
//! |-------|-------|---------|
//! | negation | `!` `~` | `¬` |
//! | classical and / strong conjunction | `&` `&&` | |
//! | classical or | `\|` | |
//! | weak conjunction (min) | `/\` | `∧` |
//! | weak disjunction (max) | `\/` | `∨` |
//! | strong disjunction | `(+)` | `⊕` |
//! | difference | `(-)` | `⊖` |
//! | implication | `->` | `→` |
//! | equivalence | `<->` | `↔` `≡` |
//! | box / diamond | `[]` `<>` | `□` `◇` |
//!
//! Precedence, loosest to tightest: (`->`, `<->` right-associative), the
//! additive band (`(+)`, `(-)`, `\/`, `|`, left-associative), the
//! multiplicative band (`&`, `&&`, `/\`), prefix `!`.

use crate::mel::MelFormula;
use crate::pformula::PFormula;
use crate::propcore::{PropFormula, Vocabulary};
use crate::rat::{self, in_unit};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    fn new(message: impl Into<String>, pos: Pos) -> Self {
        ParseError {
            message: message.into(),
            line: pos.line,
            col: pos.col,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    Bang,
    Amp,
    AmpAmp,
    Pipe,
    Wedge,
    Vee,
    OPlus,
    OMinus,
    Arrow,
    Iff,
    Square,
    Diamond,
    Slash,
    Bot,
    Top,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier `{s}`"),
            Tok::Number(s) => return write!(f, "number `{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Bang => "`!`",
            Tok::Amp => "`&`",
            Tok::AmpAmp => "`&&`",
            Tok::Pipe => "`|`",
            Tok::Wedge => "`/\\`",
            Tok::Vee => "`\\/`",
            Tok::OPlus => "`(+)`",
            Tok::OMinus => "`(-)`",
            Tok::Arrow => "`->`",
            Tok::Iff => "`<->`",
            Tok::Square => "`[]`",
            Tok::Diamond => "`<>`",
            Tok::Slash => "`/`",
            Tok::Bot => "`0`",
            Tok::Top => "`1`",
            Tok::End => "end of input",
        };
        write!(f, "{s}")
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    while i < chars.len() {
        let pos = Pos { line, col };
        let c = chars[i];
        let advance = |n: usize, col: &mut usize, i: &mut usize| {
            *col += n;
            *i += n;
        };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
            }
            c if c.is_whitespace() => advance(1, &mut col, &mut i),
            '(' => {
                if chars.get(i + 1) == Some(&'+') && chars.get(i + 2) == Some(&')') {
                    out.push((Tok::OPlus, pos));
                    advance(3, &mut col, &mut i);
                } else if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&')') {
                    out.push((Tok::OMinus, pos));
                    advance(3, &mut col, &mut i);
                } else {
                    out.push((Tok::LParen, pos));
                    advance(1, &mut col, &mut i);
                }
            }
            ')' => {
                out.push((Tok::RParen, pos));
                advance(1, &mut col, &mut i);
            }
            '!' | '~' | '¬' => {
                out.push((Tok::Bang, pos));
                advance(1, &mut col, &mut i);
            }
            '&' => {
                if chars.get(i + 1) == Some(&'&') {
                    out.push((Tok::AmpAmp, pos));
                    advance(2, &mut col, &mut i);
                } else {
                    out.push((Tok::Amp, pos));
                    advance(1, &mut col, &mut i);
                }
            }
            '|' => {
                out.push((Tok::Pipe, pos));
                advance(1, &mut col, &mut i);
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push((Tok::Arrow, pos));
                    advance(2, &mut col, &mut i);
                } else {
                    return Err(ParseError::new("stray `-` (expected `->`)", pos));
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    out.push((Tok::Iff, pos));
                    advance(3, &mut col, &mut i);
                } else if chars.get(i + 1) == Some(&'>') {
                    out.push((Tok::Diamond, pos));
                    advance(2, &mut col, &mut i);
                } else {
                    return Err(ParseError::new("stray `<` (expected `<->` or `<>`)", pos));
                }
            }
            '[' => {
                if chars.get(i + 1) == Some(&']') {
                    out.push((Tok::Square, pos));
                    advance(2, &mut col, &mut i);
                } else {
                    return Err(ParseError::new("stray `[` (expected `[]`)", pos));
                }
            }
            '/' => {
                if chars.get(i + 1) == Some(&'\\') {
                    out.push((Tok::Wedge, pos));
                    advance(2, &mut col, &mut i);
                } else {
                    out.push((Tok::Slash, pos));
                    advance(1, &mut col, &mut i);
                }
            }
            '\\' => {
                if chars.get(i + 1) == Some(&'/') {
                    out.push((Tok::Vee, pos));
                    advance(2, &mut col, &mut i);
                } else {
                    return Err(ParseError::new("stray `\\` (expected `\\/`)", pos));
                }
            }
            '→' => {
                out.push((Tok::Arrow, pos));
                advance(1, &mut col, &mut i);
            }
            '↔' | '≡' => {
                out.push((Tok::Iff, pos));
                advance(1, &mut col, &mut i);
            }
            '∧' => {
                out.push((Tok::Wedge, pos));
                advance(1, &mut col, &mut i);
            }
            '∨' => {
                out.push((Tok::Vee, pos));
                advance(1, &mut col, &mut i);
            }
            '⊕' => {
                out.push((Tok::OPlus, pos));
                advance(1, &mut col, &mut i);
            }
            '⊖' => {
                out.push((Tok::OMinus, pos));
                advance(1, &mut col, &mut i);
            }
            '□' => {
                out.push((Tok::Square, pos));
                advance(1, &mut col, &mut i);
            }
            '◇' | '♦' => {
                out.push((Tok::Diamond, pos));
                advance(1, &mut col, &mut i);
            }
            '⊥' => {
                out.push((Tok::Bot, pos));
                advance(1, &mut col, &mut i);
            }
            '⊤' => {
                out.push((Tok::Top, pos));
                advance(1, &mut col, &mut i);
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    if i >= chars.len() || !chars[i].is_ascii_digit() {
                        return Err(ParseError::new("malformed decimal literal", pos));
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                col += i - start;
                out.push((Tok::Number(lit), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                col += i - start;
                out.push((Tok::Ident(name), pos));
            }
            other => {
                return Err(ParseError::new(
                    format!("unexpected character `{other}`"),
                    pos,
                ));
            }
        }
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    vocab: &'a Vocabulary,
}

impl<'a> Parser<'a> {
    fn new(text: &str, vocab: &'a Vocabulary) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            i: 0,
            vocab,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(
                format!("expected {tok}, found {}", self.peek()),
                self.pos(),
            ))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(ParseError::new(
                format!("unexpected {} after formula", self.peek()),
                self.pos(),
            ))
        }
    }

    // ---- classical propositional layer ----

    fn prop(&mut self) -> Result<PropFormula, ParseError> {
        let lhs = self.prop_or()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(PropFormula::implies(lhs, self.prop()?))
            }
            Tok::Iff => {
                self.bump();
                Ok(PropFormula::iff(lhs, self.prop()?))
            }
            _ => Ok(lhs),
        }
    }

    fn prop_or(&mut self) -> Result<PropFormula, ParseError> {
        let mut lhs = self.prop_and()?;
        loop {
            match self.peek() {
                Tok::Pipe | Tok::Vee => {
                    self.bump();
                    lhs = PropFormula::or(lhs, self.prop_and()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prop_and(&mut self) -> Result<PropFormula, ParseError> {
        let mut lhs = self.prop_unary()?;
        loop {
            match self.peek() {
                Tok::Amp | Tok::AmpAmp | Tok::Wedge => {
                    self.bump();
                    lhs = PropFormula::and(lhs, self.prop_unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prop_unary(&mut self) -> Result<PropFormula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(PropFormula::not(self.prop_unary()?))
            }
            _ => self.prop_atom(),
        }
    }

    fn prop_atom(&mut self) -> Result<PropFormula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Bot => Ok(PropFormula::False),
            Tok::Top => Ok(PropFormula::True),
            Tok::Number(n) if n == "0" => Ok(PropFormula::False),
            Tok::Number(n) if n == "1" => Ok(PropFormula::True),
            Tok::Number(n) => Err(ParseError::new(
                format!("`{n}` is not a propositional constant (use 0 or 1)"),
                pos,
            )),
            Tok::Ident(name) => match self.vocab.var_id(&name) {
                Some(v) => Ok(PropFormula::Var(v)),
                None => Err(ParseError::new(format!("unknown variable `{name}`"), pos)),
            },
            Tok::LParen => {
                let inner = self.prop()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(ParseError::new(
                format!("expected a propositional formula, found {other}"),
                pos,
            )),
        }
    }

    // ---- MEL layer ----

    fn mel(&mut self) -> Result<MelFormula, ParseError> {
        let lhs = self.mel_or()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(MelFormula::implies(lhs, self.mel()?))
            }
            Tok::Iff => {
                self.bump();
                Ok(MelFormula::iff(lhs, self.mel()?))
            }
            _ => Ok(lhs),
        }
    }

    fn mel_or(&mut self) -> Result<MelFormula, ParseError> {
        let mut lhs = self.mel_and()?;
        loop {
            match self.peek() {
                Tok::Pipe | Tok::Vee => {
                    self.bump();
                    lhs = MelFormula::or(lhs, self.mel_and()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn mel_and(&mut self) -> Result<MelFormula, ParseError> {
        let mut lhs = self.mel_unary()?;
        loop {
            match self.peek() {
                Tok::Amp | Tok::AmpAmp | Tok::Wedge => {
                    self.bump();
                    lhs = MelFormula::and(lhs, self.mel_unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn mel_unary(&mut self) -> Result<MelFormula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(MelFormula::not(self.mel_unary()?))
            }
            _ => self.mel_atom(),
        }
    }

    fn mel_atom(&mut self) -> Result<MelFormula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Square => {
                self.expect(Tok::LParen)?;
                let inner = self.prop()?;
                self.expect(Tok::RParen)?;
                Ok(MelFormula::Box(inner))
            }
            // Diamond is defined: <>(phi) elaborates to ![](!phi) at parse time.
            Tok::Diamond => {
                self.expect(Tok::LParen)?;
                let inner = self.prop()?;
                self.expect(Tok::RParen)?;
                Ok(MelFormula::not(MelFormula::Box(PropFormula::not(inner))))
            }
            Tok::LParen => {
                let inner = self.mel()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(ParseError::new(
                format!(
                    "expected `[](...)`, `<>(...)` or a parenthesised MEL formula, found {other}"
                ),
                pos,
            )),
        }
    }

    // ---- P-formula layer ----

    fn pf(&mut self) -> Result<PFormula, ParseError> {
        let lhs = self.pf_add()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(PFormula::implies(lhs, self.pf()?))
            }
            Tok::Iff => {
                self.bump();
                Ok(PFormula::iff(lhs, self.pf()?))
            }
            _ => Ok(lhs),
        }
    }

    fn pf_add(&mut self) -> Result<PFormula, ParseError> {
        let mut lhs = self.pf_mul()?;
        loop {
            match self.peek() {
                Tok::OPlus => {
                    self.bump();
                    lhs = PFormula::strong_or(lhs, self.pf_mul()?);
                }
                Tok::OMinus => {
                    self.bump();
                    lhs = PFormula::diff(lhs, self.pf_mul()?);
                }
                Tok::Vee => {
                    self.bump();
                    lhs = PFormula::weak_or(lhs, self.pf_mul()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn pf_mul(&mut self) -> Result<PFormula, ParseError> {
        let mut lhs = self.pf_unary()?;
        loop {
            match self.peek() {
                Tok::AmpAmp | Tok::Amp => {
                    self.bump();
                    lhs = PFormula::strong_and(lhs, self.pf_unary()?);
                }
                Tok::Wedge => {
                    self.bump();
                    lhs = PFormula::weak_and(lhs, self.pf_unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn pf_unary(&mut self) -> Result<PFormula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(PFormula::not(self.pf_unary()?))
            }
            _ => self.pf_atom(),
        }
    }

    fn pf_atom(&mut self) -> Result<PFormula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Number(n) => {
                let lit = if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Number(d) => format!("{n}/{d}"),
                        other => {
                            return Err(ParseError::new(
                                format!("expected denominator after `/`, found {other}"),
                                dpos,
                            ))
                        }
                    }
                } else {
                    n
                };
                let value = rat::parse_rat(&lit)
                    .map_err(|e| ParseError::new(e.to_string(), pos))?;
                if !in_unit(&value) {
                    return Err(ParseError::new(
                        format!("truth constant `{lit}` outside [0,1]"),
                        pos,
                    ));
                }
                Ok(PFormula::Const(value))
            }
            Tok::Ident(name) if name == "P" => {
                self.expect(Tok::LParen)?;
                let inner = self.mel()?;
                self.expect(Tok::RParen)?;
                Ok(PFormula::Atom(inner))
            }
            Tok::Ident(name) if name == "B" => {
                self.expect(Tok::LParen)?;
                let inner = self.prop()?;
                self.expect(Tok::RParen)?;
                Ok(PFormula::Atom(MelFormula::Box(inner)))
            }
            Tok::LParen => {
                let inner = self.pf()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(ParseError::new(
                format!(
                    "expected a truth constant, `P(...)`, `B(...)` or a parenthesised P-formula, found {other}"
                ),
                pos,
            )),
        }
    }
}

pub fn parse_prop(text: &str, vocab: &Vocabulary) -> Result<PropFormula, ParseError> {
    let mut p = Parser::new(text, vocab)?;
    let f = p.prop()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_mel(text: &str, vocab: &Vocabulary) -> Result<MelFormula, ParseError> {
    let mut p = Parser::new(text, vocab)?;
    let f = p.mel()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_p(text: &str, vocab: &Vocabulary) -> Result<PFormula, ParseError> {
    let mut p = Parser::new(text, vocab)?;
    let f = p.pf()?;
    p.expect_end()?;
    Ok(f)
}
