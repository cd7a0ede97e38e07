//! wasm-bindgen exports for the static demo page. Every export returns a
//! JSON string, so the same functions are callable (and tested) natively.

use natlog::engine::{explore, Engine};
use natlog::polarizer::render_polarized;
use natlog::types::{ProblemRecord, Proof};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Sentence base entries beyond this are dropped from the response.
const MAX_LISTED: usize = 200;

fn error(message: impl ToString) -> String {
    json!({ "ok": false, "error": message.to_string() }).to_string()
}

/// `{"ok": true, "rendered": "every↑ linguist↓ swim↑", "tokens": [{"lemma", "polarity"}]}`
#[wasm_bindgen]
pub fn polarize(sentence: &str) -> String {
    if sentence.trim().is_empty() {
        return error("empty sentence");
    }
    match Engine::default().polarize(sentence) {
        Ok(p) => {
            let tokens: Vec<Value> = p
                .tokens
                .iter()
                .zip(&p.token_polarity)
                .map(|(t, pol)| json!({ "lemma": t.lemma, "polarity": pol.arrow().to_string() }))
                .collect();
            json!({ "ok": true, "rendered": render_polarized(&p), "tokens": tokens }).to_string()
        }
        Err(e) => error(e),
    }
}

/// Label, proof steps and diagnostics for one pair.
#[wasm_bindgen]
pub fn classify(premise: &str, hypothesis: &str) -> String {
    let c = Engine::default().classify(&ProblemRecord::new("demo", premise, hypothesis, None));
    let steps: Vec<Value> = c
        .proof
        .iter()
        .flat_map(|p| &p.steps)
        .map(|s| json!({ "before": s.before.join(" "), "edit": s.edit.to_string(), "after": s.after.join(" ") }))
        .collect();
    let diagnostics: Vec<String> = c.diagnostics.iter().map(ToString::to_string).collect();
    json!({
        "ok": true,
        "label": c.label.corpus_name(),
        "premise": c.premise.join(" "),
        "hypothesis": c.hypothesis.join(" "),
        "steps": steps,
        "diagnostics": diagnostics,
    })
    .to_string()
}

fn list<'a>(items: impl Iterator<Item = (&'a Vec<String>, &'a Proof)>) -> Vec<Value> {
    items
        .take(MAX_LISTED)
        .map(|(s, p)| json!({ "sentence": s.join(" "), "depth": p.len() }))
        .collect()
}

/// Entailments and contradictions reachable from `sentence` at `depth`.
#[wasm_bindgen]
pub fn generate(sentence: &str, depth: usize) -> String {
    let engine = Engine::default();
    let prepared = match engine.prepare(sentence, "") {
        Ok((p, _, _)) => p,
        Err(d) => return error(d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")),
    };
    let mut config = engine.config.clone();
    config.depth = depth.clamp(1, 3);
    let outcome = explore(&prepared.premise, &prepared.kb, &engine.lexicon, &config);
    json!({
        "ok": true,
        "premise": render_polarized(&prepared.premise),
        "entailments": list(outcome.base.entailments.iter()),
        "contradictions": list(outcome.base.contradictions.iter()),
        "truncated": outcome.base.entailments.len().max(outcome.base.contradictions.len()) > MAX_LISTED,
    })
    .to_string()
}
