//! Text and JSON formats for mass functions.
//!
//! Text, one focal set per line (worlds separated by `;` inside a set):
//!
//! ```text
//! vars p q;
//! mass {w: "p=1,q=1", value: "3/10"}
//! mass {w: "p=1,q=0 ; p=0,q=0", value: "7/10"}
//! ```
//!
//! JSON mirror, worlds as variable-value objects and rationals as `num/den`
//! strings:
//!
//! ```json
//! {"vars": ["p","q"],
//!  "masses": [{"worlds": [{"p":1,"q":1}], "value": "3/10"}]}
//! ```

use crate::belief::{BeliefError, MassFunction};
use crate::propcore::{VocabError, Vocabulary, World, WorldSet};
use crate::rat::{fmt_rat, parse_rat, RatError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MassFormatError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error(transparent)]
    Belief(#[from] BeliefError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("world descriptor `{0}`: {1}")]
    World(String, String),
}

/// Parses `p=1,q=0` against the vocabulary; every variable must be assigned.
pub fn parse_world(descr: &str, vocab: &Vocabulary) -> Result<World, MassFormatError> {
    let mut seen = vec![false; vocab.n_vars()];
    let mut bits = 0u8;
    for part in descr.split(',') {
        let part = part.trim();
        let (name, value) = part.split_once('=').ok_or_else(|| {
            MassFormatError::World(descr.to_string(), format!("`{part}` is not name=0|1"))
        })?;
        let var = vocab.var_id(name.trim()).ok_or_else(|| {
            MassFormatError::World(descr.to_string(), format!("unknown variable `{name}`"))
        })?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            other => {
                return Err(MassFormatError::World(
                    descr.to_string(),
                    format!("value `{other}` is not 0 or 1"),
                ))
            }
        };
        if seen[var.0 as usize] {
            return Err(MassFormatError::World(
                descr.to_string(),
                format!("variable `{name}` assigned twice"),
            ));
        }
        seen[var.0 as usize] = true;
        if value {
            bits |= 1 << var.0;
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(MassFormatError::World(
            descr.to_string(),
            format!("variable `{}` not assigned", vocab.names()[missing]),
        ));
    }
    Ok(World(bits))
}

fn parse_world_set(descr: &str, vocab: &Vocabulary) -> Result<WorldSet, MassFormatError> {
    let mut set = WorldSet::EMPTY;
    for world_descr in descr.split(';') {
        let w = parse_world(world_descr.trim(), vocab)?;
        set = set.union(WorldSet::singleton(w));
    }
    Ok(set)
}

/// Parses the text format into a vocabulary and mass function.
pub fn parse_mass_text(text: &str) -> Result<(Vocabulary, MassFunction), MassFormatError> {
    let mut vocab: Option<Vocabulary> = None;
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars") {
            let rest = rest.trim().trim_end_matches(';').trim();
            let names: Vec<&str> = rest.split_whitespace().collect();
            vocab = Some(Vocabulary::new(&names)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("mass") {
            let vocab = vocab.as_ref().ok_or_else(|| {
                MassFormatError::Syntax(lineno, "`vars` must come before `mass`".into())
            })?;
            let inner = rest
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| {
                    MassFormatError::Syntax(
                        lineno,
                        "expected mass {w: \"...\", value: \"...\"}".into(),
                    )
                })?;
            let mut w_descr = None;
            let mut value = None;
            // Fields are `w:` and `value:` with quoted payloads.
            let mut rest = inner.trim();
            while !rest.is_empty() {
                let (key, tail) = rest.split_once(':').ok_or_else(|| {
                    MassFormatError::Syntax(lineno, format!("expected key: \"...\" in `{rest}`"))
                })?;
                let tail = tail.trim_start();
                let tail = tail.strip_prefix('"').ok_or_else(|| {
                    MassFormatError::Syntax(lineno, "field payloads must be quoted".into())
                })?;
                let (payload, after) = tail
                    .split_once('"')
                    .ok_or_else(|| MassFormatError::Syntax(lineno, "unterminated quote".into()))?;
                match key.trim() {
                    "w" => w_descr = Some(payload.to_string()),
                    "value" => value = Some(payload.to_string()),
                    other => {
                        return Err(MassFormatError::Syntax(
                            lineno,
                            format!("unknown field `{other}`"),
                        ))
                    }
                }
                rest = after.trim_start().trim_start_matches(',').trim_start();
            }
            let w_descr = w_descr
                .ok_or_else(|| MassFormatError::Syntax(lineno, "missing `w` field".into()))?;
            let value = value
                .ok_or_else(|| MassFormatError::Syntax(lineno, "missing `value` field".into()))?;
            entries.push((parse_world_set(&w_descr, vocab)?, parse_rat(&value)?));
            continue;
        }
        return Err(MassFormatError::Syntax(
            lineno,
            format!("expected `vars` or `mass`, got `{line}`"),
        ));
    }
    let vocab =
        vocab.ok_or_else(|| MassFormatError::Syntax(0, "missing `vars` declaration".into()))?;
    let mass = MassFunction::new(vocab.n_worlds(), entries)?;
    Ok((vocab, mass))
}

/// Emits the text format.
pub fn mass_to_text(vocab: &Vocabulary, m: &MassFunction) -> String {
    let mut out = format!("vars {};\n", vocab.names().join(" "));
    for (set, value) in m.focal_sets() {
        let worlds = set
            .worlds()
            .map(|w| w.describe(vocab))
            .collect::<Vec<_>>()
            .join(" ; ");
        out.push_str(&format!(
            "mass {{w: \"{}\", value: \"{}\"}}\n",
            worlds,
            fmt_rat(value)
        ));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct MassFileJson {
    vars: Vec<String>,
    masses: Vec<MassEntryJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MassEntryJson {
    worlds: Vec<BTreeMap<String, u8>>,
    value: String,
}

/// Parses the JSON mirror format.
pub fn parse_mass_json(text: &str) -> Result<(Vocabulary, MassFunction), MassFormatError> {
    let file: MassFileJson = serde_json::from_str(text)?;
    let vocab = Vocabulary::new(&file.vars)?;
    let mut entries = Vec::new();
    for entry in file.masses {
        let mut set = WorldSet::EMPTY;
        for world in entry.worlds {
            let descr = world
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(",");
            set = set.union(WorldSet::singleton(parse_world(&descr, &vocab)?));
        }
        entries.push((set, parse_rat(&entry.value)?));
    }
    let mass = MassFunction::new(vocab.n_worlds(), entries)?;
    Ok((vocab, mass))
}

pub fn world_to_json(vocab: &Vocabulary, w: World) -> BTreeMap<String, u8> {
    (0..vocab.n_vars() as u8)
        .map(|i| {
            let var = crate::propcore::VarId(i);
            (vocab.name(var).to_string(), u8::from(w.value(var)))
        })
        .collect()
}

/// Emits the JSON mirror format.
pub fn mass_to_json(vocab: &Vocabulary, m: &MassFunction) -> String {
    let file = MassFileJson {
        vars: vocab.names().to_vec(),
        masses: m
            .focal_sets()
            .map(|(set, value)| MassEntryJson {
                worlds: set.worlds().map(|w| world_to_json(vocab, w)).collect(),
                value: fmt_rat(value),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("mass files serialize")
}

/// Auto-detects JSON (leading `{`) versus the text format.
pub fn parse_mass_any(text: &str) -> Result<(Vocabulary, MassFunction), MassFormatError> {
    if text.trim_start().starts_with('{') {
        parse_mass_json(text)
    } else {
        parse_mass_text(text)
    }
}
