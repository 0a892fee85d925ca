//! Rendering of masses, verdicts and degrees, human-readable and JSON.
//! Rationals are always emitted as `num/den`; set and variable orderings
//! are fixed, so output is deterministic for a given input.

use belfl_core::massfmt::world_to_json;
use belfl_core::propcore::{Vocabulary, WorldSet};
use belfl_core::rat::fmt_rat;
use belfl_core::{EntailmentVerdict, MassFunction};
use serde_json::{json, Value};

/// `m({p=1,q=1}) = 1/2 ; m({p=1,q=0}) = 3/10`
pub fn mass_text(vocab: &Vocabulary, m: &MassFunction) -> String {
    m.focal_sets()
        .map(|(set, value)| format!("m({}) = {}", set.describe(vocab), fmt_rat(value)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// Mass over subsets of an abstract ground set, e.g. `m({a,b}) = 1/2`.
pub fn mass_text_elements(names: &[String], m: &MassFunction) -> String {
    let set_text = |set: WorldSet| {
        let inner = names
            .iter()
            .enumerate()
            .filter(|(i, _)| set.bits() >> i & 1 == 1)
            .map(|(_, n)| n.as_str())
            .collect::<Vec<_>>()
            .join(",");
        format!("{{{inner}}}")
    };
    m.focal_sets()
        .map(|(set, value)| format!("m({}) = {}", set_text(set), fmt_rat(value)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// `[{"worlds": [{"p":1,"q":1}], "mass": "1/2"}, ...]`
pub fn mass_json(vocab: &Vocabulary, m: &MassFunction) -> Value {
    Value::Array(
        m.focal_sets()
            .map(|(set, value)| {
                json!({
                    "worlds": set
                        .worlds()
                        .map(|w| world_to_json(vocab, w))
                        .collect::<Vec<_>>(),
                    "mass": fmt_rat(value),
                })
            })
            .collect(),
    )
}

pub fn verdict_word(v: &EntailmentVerdict) -> &'static str {
    if v.inconsistent_theory {
        "valid (inconsistent theory)"
    } else if v.valid {
        "valid"
    } else {
        "invalid"
    }
}

pub fn verdict_json(vocab: &Vocabulary, v: &EntailmentVerdict) -> Value {
    json!({
        "verdict": if v.valid { "valid" } else { "invalid" },
        "inconsistent_theory": v.inconsistent_theory,
        "degree": fmt_rat(&v.truth_degree),
        "countermodel": v
            .countermodel
            .as_ref()
            .map(|m| mass_json(vocab, m))
            .unwrap_or(Value::Null),
    })
}
