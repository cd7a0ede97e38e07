use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use natlog::augment::{
    filter_repeated_bigrams, generate_pairs, sample_fraction, write_pairs, AugmentConfig, PairStats,
};
use natlog::engine::{explore, Engine};
use natlog::evalharness::{
    apply_corrections, load_corpus, mini_corpus, render_table, run_pipeline, write_traces, AlwaysNeutral,
    BackoffClassifier, GoldOracle, LexicalOverlap, PipelineMode,
};
use natlog::polarizer::render_polarized;
use natlog::types::{ProblemRecord, Proof};

use crate::config::{read, RunConfig};
use crate::{CliError, Mode};

/// Fractions used for augmentation unless `--any-fraction` is given.
const FRACTIONS: [f64; 3] = [0.25, 0.5, 1.0];

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn std::io::Write) -> Result<(), String>) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let io = |e: std::io::Error| CliError::Io(path.to_path_buf(), e);
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    fill(&mut tmp).map_err(|m| CliError::Input(format!("{}: {m}", path.display())))?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn corpus(config: &RunConfig) -> Result<Vec<ProblemRecord>, CliError> {
    match &config.corpus {
        Some(p) => load_corpus(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => Ok(mini_corpus()),
    }
}

fn polarize_line(engine: &Engine, sentence: &str) -> Result<String, CliError> {
    engine
        .polarize(sentence)
        .map(|p| render_polarized(&p))
        .map_err(|e| CliError::Input(format!("{sentence:?}: {e}")))
}

pub fn polarize(config: &RunConfig, sentence: Option<String>, file: Option<PathBuf>) -> Result<String, CliError> {
    let text = match (sentence, file) {
        (Some(s), None) => s,
        (None, Some(f)) => read(&f)?,
        (Some(_), Some(_)) => return Err(CliError::Usage("give a sentence or --file, not both".into())),
        (None, None) => return Err(CliError::Usage("nothing to polarize: give a sentence or --file".into())),
    };
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err(CliError::Usage("nothing to polarize: input is empty".into()));
    }
    let engine = config.engine()?;
    let mut out = String::new();
    for line in lines {
        out.push_str(&polarize_line(&engine, line)?);
        out.push('\n');
    }
    Ok(out)
}

fn render_proof(out: &mut String, proof: &Proof) {
    let steps = proof.len();
    let _ = writeln!(out, "proof: {steps} step{}", if steps == 1 { "" } else { "s" });
    for step in &proof.steps {
        let _ = writeln!(
            out,
            "  {} --[{}]--> {}",
            step.before.join(" "),
            step.edit,
            step.after.join(" ")
        );
    }
}

pub fn classify(config: &RunConfig, premise: Option<String>, hypothesis: Option<String>) -> Result<String, CliError> {
    let engine = config.engine()?;
    let mut out = String::new();
    match (premise, hypothesis) {
        (Some(p), Some(h)) => {
            let c = engine.classify(&ProblemRecord::new("cli", p, h, None));
            let _ = writeln!(out, "{}", c.label.corpus_name());
            if let Some(proof) = &c.proof {
                render_proof(&mut out, proof);
            }
            for d in &c.diagnostics {
                let _ = writeln!(out, "diagnostic: {d}");
            }
        }
        (None, None) if config.corpus.is_some() => {
            let problems = corpus(config)?;
            let results =
                run_pipeline(&problems, &engine, &PipelineMode::Engine).map_err(|e| CliError::Input(e.to_string()))?;
            for t in results.traces {
                let _ = writeln!(out, "{}\t{}", t.id, t.predicted.corpus_name());
            }
        }
        _ => return Err(CliError::Usage("give a premise and a hypothesis, or --corpus".into())),
    }
    Ok(out)
}

pub fn generate(config: &RunConfig, sentence: &str, hypothesis: Option<&str>) -> Result<String, CliError> {
    let engine = config.engine()?;
    let (prepared, _, _) = engine
        .prepare(sentence, hypothesis.unwrap_or(""))
        .map_err(|d| CliError::Input(d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))?;
    let outcome = explore(&prepared.premise, &prepared.kb, &engine.lexicon, &config.search);
    let mut out = String::new();
    let _ = writeln!(out, "premise: {}", render_polarized(&prepared.premise));
    for (title, items) in [
        ("entailments", &outcome.base.entailments),
        ("contradictions", &outcome.base.contradictions),
    ] {
        let _ = writeln!(out, "{title} ({}):", items.len());
        for (s, proof) in items {
            let _ = writeln!(out, "  {}\t[{}]", s.join(" "), proof.len());
        }
    }
    if outcome.cap_exceeded {
        let _ = writeln!(out, "note: stopped after {} sentences", config.search.max_generated);
    }
    Ok(out)
}

pub fn augment(
    config: &RunConfig,
    any_fraction: bool,
    filter: bool,
    out_path: Option<PathBuf>,
) -> Result<String, CliError> {
    let fraction = config.fraction;
    if !any_fraction && !FRACTIONS.contains(&fraction) {
        return Err(CliError::Usage(format!(
            "fraction {fraction} is not one of 0.25, 0.5, 1.0 (pass --any-fraction to allow it)"
        )));
    }
    let problems = corpus(config)?;
    let engine = config.engine()?;
    let generated = generate_pairs(
        &problems,
        &engine,
        &AugmentConfig {
            depth: config.search.depth,
        },
    );
    let pairs = if filter {
        filter_repeated_bigrams(generated.pairs)
    } else {
        generated.pairs
    };
    let pairs = sample_fraction(&pairs, fraction, config.seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let stats = PairStats::of(&pairs);
    let summary = format!(
        "pairs: {} (entailment {}, contradiction {}); problems without output: {}\n",
        pairs.len(),
        stats.entail,
        stats.contradict,
        generated.diagnostics.len()
    );
    let out_path = out_path.or_else(|| config.output_dir.as_ref().map(|d| d.join("pairs.tsv")));
    match out_path {
        Some(path) => {
            write_atomic(&path, |w| write_pairs(&pairs, w).map_err(|e| e.to_string()))?;
            Ok(summary)
        }
        None => {
            let mut buf = Vec::new();
            write_pairs(&pairs, &mut buf).map_err(|e| CliError::Input(e.to_string()))?;
            eprint!("{summary}");
            Ok(String::from_utf8(buf).expect("pairs are UTF-8"))
        }
    }
}

pub fn eval(config: &RunConfig, mode: Mode, traces: Option<PathBuf>) -> Result<String, CliError> {
    let mut problems = corpus(config)?;
    let mut out = String::new();
    if let Some(overlay) = &config.overlay {
        let (corrected, summary) = apply_corrections(&problems, overlay)
            .map_err(|e| CliError::Input(format!("{}: {e}", overlay.display())))?;
        problems = corrected;
        let _ = writeln!(out, "corrections applied: {}", summary.applied);
    }
    let engine = config.engine()?;
    let gold;
    let backoff: &dyn BackoffClassifier = match config.backoff.as_str() {
        "neutral" => &AlwaysNeutral,
        "overlap" => &LexicalOverlap,
        "gold" => {
            gold = GoldOracle::new(&problems);
            &gold
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown backoff {other:?} (neutral, overlap, gold)"
            )))
        }
    };
    let (name, pipeline_mode) = match mode {
        Mode::Engine => ("engine".to_owned(), PipelineMode::Engine),
        Mode::Hybrid => (
            format!("hybrid+{}", backoff.name()),
            PipelineMode::Hybrid {
                backoff,
                threshold: config.threshold,
            },
        ),
    };
    let result = run_pipeline(&problems, &engine, &pipeline_mode).map_err(|e| CliError::Input(e.to_string()))?;
    out.push_str(&render_table(&[(&name, &result.report)]));
    out.push('\n');
    out.push_str(&result.report.to_key_values());
    let traces = traces.or_else(|| config.output_dir.as_ref().map(|d| d.join("traces.tsv")));
    if let Some(path) = traces {
        write_atomic(&path, |w| write_traces(&result.traces, w).map_err(|e| e.to_string()))?;
    }
    Ok(out)
}

pub fn kb_dump(config: &RunConfig, premise: &str, hypothesis: Option<&str>) -> Result<String, CliError> {
    let engine = config.engine()?;
    let (prepared, _, _) = engine
        .prepare(premise, hypothesis.unwrap_or(""))
        .map_err(|d| CliError::Input(d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))?;
    Ok(prepared.kb.dump())
}
