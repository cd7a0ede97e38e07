use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn natlog(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_natlog"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn polarize_sentence() {
    let d = tmp();
    let o = natlog(&["polarize", "every linguist swims"], d.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "every↑ linguist↓ swim↑\n");
}

#[test]
fn polarize_file_one_line_each() {
    let d = tmp();
    fs::write(
        d.path().join("s.txt"),
        "every linguist swims\n\nAll schoolgirls are on the train\n",
    )
    .unwrap();
    let o = natlog(&["polarize", "--file", "s.txt"], d.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "every↑ linguist↓ swim↑\nall↑ schoolgirl↓ be↑ on↑ the↑ train=\n"
    );
}

#[test]
fn polarize_empty_is_usage_error() {
    let d = tmp();
    for args in [&["polarize", ""][..], &["polarize"][..], &["polarize", "   "][..]] {
        let o = natlog(args, d.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("nothing to polarize"));
    }
}

#[test]
fn polarize_oov_names_the_word() {
    let d = tmp();
    let o = natlog(&["polarize", "every flibbertigibbet swims"], d.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("flibbertigibbet"));
}

#[test]
fn classify_schoolgirl_pair() {
    let d = tmp();
    let o = natlog(
        &[
            "classify",
            "A schoolgirl with a black bag is on a crowded train",
            "A girl with a black bag is on a crowded train",
        ],
        d.path(),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "ENTAILMENT");
    assert_eq!(lines[1], "proof: 1 step");
    assert!(lines[2].contains("'schoolgirl'→'girl'"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn classify_identical_and_unparseable() {
    let d = tmp();
    let o = natlog(&["classify", "A dog barks", "A dog barks"], d.path());
    assert_eq!(stdout(&o), "ENTAILMENT\nproof: 0 steps\n");
    let o = natlog(&["classify", "A dog barks", "Colorless green ideas sleep"], d.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("NEUTRAL\n"));
    assert!(out.contains("diagnostic: hypothesis not parsed"));
}

#[test]
fn classify_needs_both_sentences() {
    let d = tmp();
    let o = natlog(&["classify", "A dog barks"], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_corpus_lines() {
    let d = tmp();
    fs::write(
        d.path().join("c.tsv"),
        "pair_ID\tsentence_A\tsentence_B\tentailment_judgment\n\
         219\tThere is no girl in white dancing\tA girl in white is dancing\tCONTRADICTION\n\
         7\tA dog barks\tA dog barks\tENTAILMENT\n",
    )
    .unwrap();
    let o = natlog(&["classify", "--corpus", "c.tsv"], d.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "219\tCONTRADICTION\n7\tENTAILMENT\n");
}

#[test]
fn generate_prints_sentence_base() {
    let d = tmp();
    let rel = d.path().join("rel.tsv");
    fs::write(&rel, "LEQ\tsemanticist\tlinguist\nLEQ\tswim\tmove\n").unwrap();
    let o = natlog(
        &[
            "--depth",
            "1",
            "--relations",
            "rel.tsv",
            "generate",
            "every linguist swims",
        ],
        d.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("premise: every↑ linguist↓ swim↑\n"));
    for s in [
        "every semanticist swim\t[1]",
        "every linguist move\t[1]",
        "most linguist swim\t[1]",
    ] {
        assert!(out.contains(s), "missing {s:?} in\n{out}");
    }
}

#[test]
fn kb_dump_shows_provenance() {
    let d = tmp();
    let o = natlog(
        &["kb-dump", "A schoolgirl is on a train", "A girl is on a train"],
        d.path(),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("every ≤ most\t[hard-coded]"));
    assert!(out.contains("schoolgirl ≤ girl"));
}

#[test]
fn augment_mini_corpus_stats() {
    let d = tmp();
    let o = natlog(&["augment", "--out", "pairs.tsv"], d.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "pairs: 832 (entailment 252, contradiction 580); problems without output: 0\n"
    );
    let tsv = fs::read_to_string(d.path().join("pairs.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 833);
    assert!(tsv.starts_with("pair_ID\tsentence_A\tsentence_B\tentailment_label"));
}

#[test]
fn augment_is_deterministic() {
    let d = tmp();
    for name in ["a.tsv", "b.tsv"] {
        let o = natlog(
            &["augment", "--fraction", "0.25", "--seed", "0", "--out", name],
            d.path(),
        );
        assert!(o.status.success());
        assert!(stdout(&o).starts_with("pairs: 208 "));
    }
    let a = fs::read(d.path().join("a.tsv")).unwrap();
    let b = fs::read(d.path().join("b.tsv")).unwrap();
    assert_eq!(a, b);
    let o = natlog(
        &["augment", "--fraction", "0.25", "--seed", "1", "--out", "c.tsv"],
        d.path(),
    );
    assert!(o.status.success());
    assert_ne!(a, fs::read(d.path().join("c.tsv")).unwrap());
}

#[test]
fn augment_fraction_is_restricted() {
    let d = tmp();
    let o = natlog(&["augment", "--fraction", "0.9"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--any-fraction"));
    let o = natlog(
        &["augment", "--fraction", "0.9", "--any-fraction", "--out", "p.tsv"],
        d.path(),
    );
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("pairs: 748 "));
    let o = natlog(&["augment", "--fraction", "1.5", "--any-fraction"], d.path());
    assert!(!o.status.success());
}

const REPORT: &str = "\
system       P       R    acc.
engine  100.00  100.00  100.00

total = 40
accuracy = 100.00
macro_precision = 100.00
macro_recall = 100.00
precision.entailment = 100.00
recall.entailment = 100.00
precision.contradiction = 100.00
recall.contradiction = 100.00
precision.neutral = 100.00
recall.neutral = 100.00
confusion.E = 15 0 0
confusion.C = 0 10 0
confusion.N = 0 0 15
";

#[test]
fn eval_mini_corpus_report() {
    let d = tmp();
    let o = natlog(&["eval", "--traces", "t.tsv"], d.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), REPORT);
    let traces = fs::read_to_string(d.path().join("t.tsv")).unwrap();
    assert_eq!(traces.lines().count(), 41);
}

#[test]
fn eval_with_overlay() {
    let d = tmp();
    fs::write(
        d.path().join("o.tsv"),
        "pair_ID\tcorrected_label\n1025\tCONTRADICTION\n340\tENTAILMENT\n",
    )
    .unwrap();
    let o = natlog(&["eval", "--overlay", "o.tsv"], d.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("corrections applied: 1\n"), "{out}");
    assert!(out.contains("accuracy = 97.50"));
}

#[test]
fn eval_hybrid_with_gold_backoff() {
    let d = tmp();
    fs::write(
        d.path().join("o.tsv"),
        "pair_ID\tcorrected_label\n1025\tCONTRADICTION\n",
    )
    .unwrap();
    let o = natlog(
        &["eval", "--overlay", "o.tsv", "--mode", "hybrid", "--backoff", "gold"],
        d.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("hybrid+gold"));
    assert!(stdout(&o).contains("accuracy = 100.00"));
}

#[test]
fn eval_missing_file_fails() {
    let d = tmp();
    let o = natlog(&["eval", "--corpus", "nope.tsv"], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nope.tsv"));
    let o = natlog(&["eval", "--overlay", "nope.tsv"], d.path());
    assert!(!o.status.success());
}

#[test]
fn eval_unknown_backoff_is_usage_error() {
    let d = tmp();
    let o = natlog(&["eval", "--mode", "hybrid", "--backoff", "bert"], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let d = tmp();
    fs::write(
        d.path().join("run.toml"),
        "fraction = 0.5\nseed = 3\noutput_dir = \".\"\n",
    )
    .unwrap();
    let o = natlog(&["--config", "run.toml", "augment"], d.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("pairs: 416 "));
    assert!(d.path().join("pairs.tsv").is_file());
    let o = natlog(&["--config", "run.toml", "augment", "--fraction", "0.25"], d.path());
    assert!(stdout(&o).starts_with("pairs: 208 "));
    fs::write(d.path().join("bad.toml"), "fracton = 0.5\n").unwrap();
    let o = natlog(&["--config", "bad.toml", "augment"], d.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("config"));
}
