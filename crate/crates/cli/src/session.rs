//! Theory files: a vocabulary, a model class, asserted P-formulas and a
//! list of queries, executed in order.
//!
//! ```text
//! # graded modus ponens at r = 0.8, s = 0.7
//! vars p q;
//! class general;
//! assert 0.8 -> B(p);
//! assert 0.7 -> B(p -> q);
//! query degree B(q) expect 1/2;
//! query entails 0.5 -> B(q) expect valid;
//! ```
//!
//! `expect` annotations are optional; when present they make the file
//! self-testing (`run` exits 2 on any mismatch).

use anyhow::{anyhow, bail, Context, Result};
use belfl_core::belief::ModelClass;
use belfl_core::pformula::{parse_p, PFormula};
use belfl_core::propcore::Vocabulary;
use belfl_core::rat::{parse_rat, Rat};
use belfl_core::Theory;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Degree,
    Entails,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expectation {
    Valid,
    Invalid,
    Degree(Rat),
}

#[derive(Debug, Clone)]
pub struct Query {
    pub kind: QueryKind,
    pub formula: PFormula,
    pub text: String,
    pub expect: Option<Expectation>,
}

/// One parsed theory file.
#[derive(Debug, Clone)]
pub struct Session {
    pub vocab: Vocabulary,
    pub theory: Theory,
    pub queries: Vec<Query>,
}

impl Session {
    /// Parses a theory file. Statements are `;`-separated; `#` starts a
    /// comment. The vocabulary must be declared before any formula, and
    /// there is one model class per session.
    pub fn parse_with_cap(text: &str, max_vars: usize) -> Result<Session> {
        let cleaned: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");

        let mut vocab: Option<Vocabulary> = None;
        let mut class: Option<ModelClass> = None;
        let mut formulas = Vec::new();
        let mut queries = Vec::new();

        let mut offset = 0usize;
        for raw in cleaned.split(';') {
            let content_start = offset + (raw.len() - raw.trim_start().len());
            let line = cleaned[..content_start.min(cleaned.len())]
                .matches('\n')
                .count()
                + 1;
            offset += raw.len() + 1;
            let stmt = raw.trim();
            if stmt.is_empty() {
                continue;
            }
            let with_line = |err: anyhow::Error| err.context(format!("at line {line}"));
            let (keyword, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
            let rest = rest.trim();
            match keyword {
                "vars" => {
                    if vocab.is_some() {
                        bail!("line {line}: duplicate `vars` declaration");
                    }
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    vocab = Some(Vocabulary::with_cap(&names, max_vars).map_err(|e| with_line(e.into()))?);
                }
                "class" => {
                    if class.is_some() {
                        bail!("line {line}: duplicate `class` declaration");
                    }
                    class = Some(rest.parse().map_err(|e: String| with_line(anyhow!(e)))?);
                }
                "assert" => {
                    let vocab = vocab
                        .as_ref()
                        .ok_or_else(|| anyhow!("line {line}: `vars` must precede `assert`"))?;
                    let formula = parse_p(rest, vocab)
                        .map_err(|e| with_line(anyhow!(e)))
                        .with_context(|| format!("in `assert {rest}`"))?;
                    formulas.push(formula);
                }
                "query" => {
                    let vocab = vocab
                        .as_ref()
                        .ok_or_else(|| anyhow!("line {line}: `vars` must precede `query`"))?;
                    queries.push(parse_query(rest, vocab).map_err(with_line)?);
                }
                other => bail!("line {line}: unknown statement `{other}`"),
            }
        }

        let vocab = vocab.ok_or_else(|| anyhow!("theory file declares no `vars`"))?;
        Ok(Session {
            theory: Theory::new(formulas, class.unwrap_or_default()),
            vocab,
            queries,
        })
    }
}

fn parse_query(rest: &str, vocab: &Vocabulary) -> Result<Query> {
    let (kind_word, rest) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| anyhow!("`query` needs `degree` or `entails` and a formula"))?;
    let kind = match kind_word {
        "degree" => QueryKind::Degree,
        "entails" => QueryKind::Entails,
        other => bail!("unknown query kind `{other}` (expected degree or entails)"),
    };
    // An optional trailing `expect <value>` annotation.
    let (formula_text, expect) = match rest.rfind(" expect ") {
        Some(idx) => {
            let (f, e) = rest.split_at(idx);
            (f.trim(), Some(e.trim_start_matches(" expect ").trim()))
        }
        None => (rest.trim(), None),
    };
    let expect = match (kind, expect) {
        (_, None) => None,
        (QueryKind::Entails, Some("valid")) => Some(Expectation::Valid),
        (QueryKind::Entails, Some("invalid")) => Some(Expectation::Invalid),
        (QueryKind::Entails, Some(other)) => {
            bail!("entails expects `valid` or `invalid`, got `{other}`")
        }
        (QueryKind::Degree, Some(value)) => Some(Expectation::Degree(
            parse_rat(value).with_context(|| format!("expect value `{value}`"))?,
        )),
    };
    let formula = parse_p(formula_text, vocab)
        .with_context(|| format!("in `query {kind_word} {formula_text}`"))?;
    Ok(Query {
        kind,
        formula,
        text: formula_text.to_string(),
        expect,
    })
}
