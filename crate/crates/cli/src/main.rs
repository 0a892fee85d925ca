//! `belfl`: reasoning about graded beliefs over finitely many worlds.
//!
//! Subcommands cover the three layers of the engine: evaluation under a
//! given mass function (`eval`, `bel`, `pl`, `mobius`), the epistemic modal
//! layer (`melvalid`, `melcons`), entailment and exact truth degrees
//! (`run`, `entail`, `degree`), comparative belief (`compare`,
//! `represent`), and the probabilistic axiom suite over sampled masses
//! (`axioms`).

mod report;
mod session;

use anyhow::{anyhow, bail, Context, Result};
use belfl_core::belief::{self, random_mass, ModelClass};
use belfl_core::comparative::{check_bw, parse_relation, representable};
use belfl_core::entail::{self, EntailError};
use belfl_core::lpcore::SolverConfig;
use belfl_core::massfmt;
use belfl_core::mel::{mel_consequence, parse_mel};
use belfl_core::pformula::{axiom_suite, p_eval, parse_p};
use belfl_core::propcore::{parse_prop, Vocabulary, DEFAULT_MAX_VARS};
use belfl_core::rat::fmt_rat;
use belfl_core::{mobius, truth_degree};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use session::{Expectation, QueryKind, Session};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "belfl", version, about = "belief function logic engine")]
struct Cli {
    /// Emit machine-readable JSON instead of the textual report.
    #[arg(long, global = true)]
    json: bool,

    /// Override the model class (general | probability | necessity).
    #[arg(long, global = true)]
    class: Option<ModelClass>,

    /// Cap on the number of propositional variables (absolute maximum 4).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_VARS)]
    max_vars: usize,

    /// Branch-and-bound node budget.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    node_budget: usize,

    /// Seed for sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a theory file: asserts, then queries in order.
    Run { file: PathBuf },
    /// Evaluate a P-formula under a mass function file.
    Eval { mass_file: PathBuf, formula: String },
    /// Belief degree of a propositional formula under a mass file.
    Bel { mass_file: PathBuf, formula: String },
    /// Plausibility degree of a propositional formula under a mass file.
    Pl { mass_file: PathBuf, formula: String },
    /// Belief table of a mass file and its recovered mass (round-trip).
    Mobius { mass_file: PathBuf },
    /// Validity of a MEL formula over all epistemic models.
    Melvalid {
        formula: String,
        /// Comma-separated variables; inferred from the formula if absent.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Semantic consequence for MEL: premises entail a conclusion.
    Melcons {
        conclusion: String,
        #[arg(long = "premise")]
        premises: Vec<String>,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Does the theory file entail the given P-formula?
    Entail { file: PathBuf, formula: String },
    /// Exact minimal truth degree of a P-formula under the theory file.
    Degree { file: PathBuf, formula: String },
    /// Is `phi` at least (factor times) as believed as `psi` under the theory?
    Compare {
        file: PathBuf,
        phi: String,
        psi: String,
        #[arg(long, default_value_t = 1)]
        factor: u32,
    },
    /// Check a ranked relation file for belief representability.
    Represent { file: PathBuf },
    /// Evaluate the probabilistic axiom schemata over sampled masses.
    Axioms {
        #[arg(long, default_value = "p,q")]
        vars: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn solver_config(cli: &Cli) -> SolverConfig {
    SolverConfig {
        node_budget: cli.node_budget,
        ..SolverConfig::default()
    }
}

fn load_session(cli: &Cli, file: &PathBuf) -> Result<Session> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mut session = Session::parse_with_cap(&text, cli.max_vars)
        .with_context(|| format!("parsing {}", file.display()))?;
    if let Some(class) = cli.class {
        session.theory.model_class = class;
    }
    Ok(session)
}

fn load_mass(file: &PathBuf) -> Result<(Vocabulary, belfl_core::MassFunction)> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    Ok(massfmt::parse_mass_any(&text)?)
}

/// Variables of a formula in order of first appearance, for subcommands
/// that take a bare formula without a declared vocabulary.
fn infer_vocab(text: &str, cap: usize) -> Result<Vocabulary> {
    let mut names: Vec<String> = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            name.push(c);
            while let Some(&n) = chars.peek() {
                if n.is_alphanumeric() || n == '_' {
                    name.push(n);
                    chars.next();
                } else {
                    break;
                }
            }
            if !names.contains(&name) {
                names.push(name);
            }
        }
    }
    if names.is_empty() {
        bail!("no variables found in `{text}`; pass --vars");
    }
    Ok(Vocabulary::with_cap(&names, cap)?)
}

fn vocab_from_flag(vars: &Option<String>, formula: &str, cap: usize) -> Result<Vocabulary> {
    match vars {
        Some(list) => {
            let names: Vec<&str> = list
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            Ok(Vocabulary::with_cap(&names, cap)?)
        }
        None => infer_vocab(formula, cap),
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Run { file } => run_file(cli, file),
        Command::Eval { mass_file, formula } => {
            let (vocab, mass) = load_mass(mass_file)?;
            let f = parse_p(formula, &vocab)?;
            let value = p_eval(&vocab, &mass, &f);
            if cli.json {
                println!("{}", json!({ "value": fmt_rat(&value) }));
            } else {
                println!("value = {}", fmt_rat(&value));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bel { mass_file, formula } => {
            let (vocab, mass) = load_mass(mass_file)?;
            let f = parse_prop(formula, &vocab)?;
            let value = belief::bel(&vocab, &mass, &f);
            if cli.json {
                println!("{}", json!({ "bel": fmt_rat(&value) }));
            } else {
                println!("bel = {}", fmt_rat(&value));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pl { mass_file, formula } => {
            let (vocab, mass) = load_mass(mass_file)?;
            let f = parse_prop(formula, &vocab)?;
            let value = belief::pl(&vocab, &mass, &f);
            if cli.json {
                println!("{}", json!({ "pl": fmt_rat(&value) }));
            } else {
                println!("pl = {}", fmt_rat(&value));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mobius { mass_file } => {
            let (vocab, mass) = load_mass(mass_file)?;
            let table = belfl_core::belief_table(&mass);
            let recovered = mobius(&table)?;
            let round_trip = recovered == mass;
            if cli.json {
                let bel: Vec<_> = vocab
                    .all_sets()
                    .map(|s| {
                        json!({
                            "set": s.describe(&vocab),
                            "bel": fmt_rat(table.value(s)),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "belief": bel,
                        "recovered": report::mass_json(&vocab, &recovered),
                        "round_trip": round_trip,
                    })
                );
            } else {
                for s in vocab.all_sets() {
                    println!("Bel({}) = {}", s.describe(&vocab), fmt_rat(table.value(s)));
                }
                println!("recovered: {}", report::mass_text(&vocab, &recovered));
                println!(
                    "round-trip: {}",
                    if round_trip { "exact" } else { "MISMATCH" }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Melvalid { formula, vars } => {
            let vocab = vocab_from_flag(vars, formula, cli.max_vars)?;
            let f = parse_mel(formula, &vocab)?;
            let result = mel_consequence(&vocab, &[], &f);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "valid": result.holds,
                        "countermodel": result
                            .countermodel
                            .map(|e| e.worlds().describe(&vocab)),
                    })
                );
            } else if result.holds {
                println!("VALID");
            } else {
                let e = result.countermodel.expect("invalid implies countermodel");
                println!("INVALID  countermodel E = {}", e.worlds().describe(&vocab));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Melcons {
            conclusion,
            premises,
            vars,
        } => {
            let joined = format!("{} {}", premises.join(" "), conclusion);
            let vocab = vocab_from_flag(vars, &joined, cli.max_vars)?;
            let premises = premises
                .iter()
                .map(|p| Ok(parse_mel(p, &vocab)?))
                .collect::<Result<Vec<_>>>()?;
            let conclusion = parse_mel(conclusion, &vocab)?;
            let result = mel_consequence(&vocab, &premises, &conclusion);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "holds": result.holds,
                        "countermodel": result
                            .countermodel
                            .map(|e| e.worlds().describe(&vocab)),
                    })
                );
            } else if result.holds {
                println!("VALID");
            } else {
                let e = result.countermodel.expect("invalid implies countermodel");
                println!("INVALID  countermodel E = {}", e.worlds().describe(&vocab));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Entail { file, formula } => {
            let session = load_session(cli, file)?;
            let query = parse_p(formula, &session.vocab)?;
            let verdict =
                entail::entails(&session.vocab, &session.theory, &query, &solver_config(cli))?;
            if cli.json {
                println!("{}", report::verdict_json(&session.vocab, &verdict));
            } else {
                println!("{}", report::verdict_word(&verdict).to_uppercase());
                if let Some(cm) = &verdict.countermodel {
                    println!(
                        "degree = {}  countermodel: {}",
                        fmt_rat(&verdict.truth_degree),
                        report::mass_text(&session.vocab, cm)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Degree { file, formula } => {
            let session = load_session(cli, file)?;
            let query = parse_p(formula, &session.vocab)?;
            let result =
                truth_degree(&session.vocab, &session.theory, &query, &solver_config(cli))?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "degree": fmt_rat(&result.degree),
                        "witness": report::mass_json(&session.vocab, &result.witness),
                    })
                );
            } else {
                println!("degree = {}", fmt_rat(&result.degree));
                println!(
                    "witness: {}",
                    report::mass_text(&session.vocab, &result.witness)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            file,
            phi,
            psi,
            factor,
        } => {
            let session = load_session(cli, file)?;
            let f_phi = parse_prop(phi, &session.vocab)?;
            let f_psi = parse_prop(psi, &session.vocab)?;
            let verdict = belfl_core::comparative::compare_query_scaled(
                &session.vocab,
                &session.theory,
                &f_phi,
                &f_psi,
                *factor,
                &solver_config(cli),
            )?;
            if cli.json {
                println!("{}", report::verdict_json(&session.vocab, &verdict));
            } else {
                let relation = if *factor == 1 {
                    "at least as believed as".to_string()
                } else {
                    format!("at least {factor} times as believed as")
                };
                println!(
                    "`{phi}` {relation} `{psi}`: {}",
                    report::verdict_word(&verdict).to_uppercase()
                );
                if let Some(cm) = &verdict.countermodel {
                    println!("countermodel: {}", report::mass_text(&session.vocab, cm));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Represent { file } => {
            let text = std::fs::read_to_string(file)
                .with_context(|| format!("reading {}", file.display()))?;
            let (names, rel) = parse_relation(&text)?;
            let bw = check_bw(&rel);
            let witness = representable(&rel)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "elements": names,
                        "bw_pass": bw.passes(),
                        "representable": witness.is_some(),
                        "witness": witness
                            .as_ref()
                            .map(|m| report::mass_text_elements(&names, m)),
                    })
                );
            } else if let Some(m) = &witness {
                println!("REPRESENTABLE");
                println!("witness: {}", report::mass_text_elements(&names, m));
            } else {
                println!("NOT-REPRESENTABLE");
                if !bw.bw1_reflexivity.is_empty()
                    || !bw.bw1_transitivity.is_empty()
                    || !bw.bw1_totality.is_empty()
                {
                    println!("BW1 violated");
                }
                if !bw.bw2.is_empty() {
                    println!("BW2 violated on {} pairs", bw.bw2.len());
                }
                if !bw.bw3.is_empty() {
                    println!("BW3 violated on {} triples", bw.bw3.len());
                }
                if bw.bw4_violated {
                    println!("BW4 violated: {{}} ranked at least as high as the full set");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Axioms { vars, samples } => {
            let names: Vec<&str> = vars
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            let vocab = Vocabulary::with_cap(&names, cli.max_vars)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut total_checks = 0usize;
            let mut failures = Vec::new();
            for sample in 0..*samples {
                let m = random_mass(&mut rng, vocab.n_worlds(), 6, 60);
                let report = axiom_suite(&vocab, &m);
                total_checks += report.checks.len();
                for check in report.failures() {
                    failures.push(format!(
                        "sample {sample}: {} = {}",
                        check.name,
                        fmt_rat(&check.value)
                    ));
                }
            }
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "samples": samples,
                        "checks": total_checks,
                        "failures": failures,
                    })
                );
            } else {
                println!(
                    "{} axiom instances over {} sampled masses: {}",
                    total_checks,
                    samples,
                    if failures.is_empty() {
                        "all 1"
                    } else {
                        "FAILURES"
                    }
                );
                for f in &failures {
                    println!("  {f}");
                }
            }
            Ok(if failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

fn run_file(cli: &Cli, file: &PathBuf) -> Result<ExitCode> {
    let session = load_session(cli, file)?;
    let config = solver_config(cli);
    let mut mismatches = 0usize;
    let mut json_queries = Vec::new();

    for query in &session.queries {
        match query.kind {
            QueryKind::Degree => {
                match truth_degree(&session.vocab, &session.theory, &query.formula, &config) {
                    Ok(result) => {
                        let ok = match &query.expect {
                            Some(Expectation::Degree(d)) => Some(*d == result.degree),
                            Some(_) => Some(false),
                            None => None,
                        };
                        if let Some(false) = ok {
                            mismatches += 1;
                        }
                        if cli.json {
                            json_queries.push(json!({
                                "query": format!("degree {}", query.text),
                                "verdict": "degree",
                                "degree": fmt_rat(&result.degree),
                                "countermodel": report::mass_json(&session.vocab, &result.witness),
                                "expect_ok": ok,
                            }));
                        } else {
                            let note = match ok {
                                Some(true) => "  [expect: ok]",
                                Some(false) => "  [expect: MISMATCH]",
                                None => "",
                            };
                            println!(
                                "degree {} = {}{}",
                                query.text,
                                fmt_rat(&result.degree),
                                note
                            );
                            println!(
                                "  witness: {}",
                                report::mass_text(&session.vocab, &result.witness)
                            );
                        }
                    }
                    Err(EntailError::InconsistentTheory) => {
                        if query.expect.is_some() {
                            mismatches += 1;
                        }
                        if cli.json {
                            json_queries.push(json!({
                                "query": format!("degree {}", query.text),
                                "verdict": "inconsistent-theory",
                            }));
                        } else {
                            println!("degree {}: inconsistent theory", query.text);
                        }
                    }
                    Err(other) => return Err(anyhow!(other)),
                }
            }
            QueryKind::Entails => {
                let verdict =
                    entail::entails(&session.vocab, &session.theory, &query.formula, &config)?;
                let ok = match &query.expect {
                    Some(Expectation::Valid) => Some(verdict.valid),
                    Some(Expectation::Invalid) => Some(!verdict.valid),
                    Some(_) => Some(false),
                    None => None,
                };
                if let Some(false) = ok {
                    mismatches += 1;
                }
                if cli.json {
                    let mut object = report::verdict_json(&session.vocab, &verdict);
                    object["query"] = json!(format!("entails {}", query.text));
                    object["expect_ok"] = json!(ok);
                    json_queries.push(object);
                } else {
                    let note = match ok {
                        Some(true) => "  [expect: ok]",
                        Some(false) => "  [expect: MISMATCH]",
                        None => "",
                    };
                    println!(
                        "entails {}: {}{}",
                        query.text,
                        report::verdict_word(&verdict).to_uppercase(),
                        note
                    );
                    if let Some(cm) = &verdict.countermodel {
                        println!(
                            "  degree = {}  countermodel: {}",
                            fmt_rat(&verdict.truth_degree),
                            report::mass_text(&session.vocab, cm)
                        );
                    }
                }
            }
        }
    }

    if cli.json {
        println!(
            "{}",
            json!({
                "file": file.display().to_string(),
                "class": session.theory.model_class.name(),
                "queries": json_queries,
                "mismatches": mismatches,
            })
        );
    }
    Ok(if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
