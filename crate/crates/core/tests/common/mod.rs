//! Random fragment sentences for the property and acceptance suites.

#![allow(dead_code)]

use natlog::polarizer::{polarize, PolarizedSentence};
use natlog::syntax::{parse_fragment, Lexicon};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DETS: &[&str] = &[
    "every", "all", "each", "some", "a", "no", "few", "most", "many", "the", "several", "two",
];
const SUBJECTS: &[&str] = &[
    "dog",
    "poodle",
    "animal",
    "cat",
    "kitten",
    "man",
    "woman",
    "person",
    "girl",
    "schoolgirl",
    "boy",
    "child",
];
const OBJECTS: &[&str] = &[
    "bag",
    "train",
    "vehicle",
    "car",
    "guitar",
    "instrument",
    "flute",
    "ball",
    "tree",
    "dog",
    "animal",
    "cat",
];
const ADJS: &[&str] = &["black", "white", "red", "young", "old", "crowded", "big"];
const IVS: &[&str] = &["swim", "move", "walk", "run", "dance", "sleep", "bark", "sing"];
const TVS: &[&str] = &["chase", "follow", "hold", "carry", "ride", "play", "kick"];
const PREPS: &[&str] = &["with", "on", "in", "near"];
const ADVS: &[&str] = &["quickly", "slowly"];
const PRONOUNS: &[&str] = &["something", "someone", "everyone", "nobody", "nothing"];

pub struct SentenceGen {
    rng: ChaCha8Rng,
    lexicon: Lexicon,
}

impl SentenceGen {
    pub fn new(seed: u64) -> SentenceGen {
        SentenceGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            lexicon: Lexicon::bundled(),
        }
    }

    fn pick(&mut self, words: &[&'static str]) -> &'static str {
        words.choose(&mut self.rng).unwrap()
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn np(&mut self, out: &mut Vec<String>, nouns: &[&'static str], nested: bool) {
        out.push(self.pick(DETS).into());
        if self.chance(0.3) {
            out.push(self.pick(ADJS).into());
        }
        out.push(self.pick(nouns).into());
        if !nested && self.chance(0.3) {
            match self.rng.gen_range(0..3) {
                0 => {
                    out.push(self.pick(PREPS).into());
                    self.np(out, OBJECTS, true);
                }
                1 => {
                    out.push("without".into());
                    self.np(out, OBJECTS, true);
                }
                _ => {
                    out.push("that".into());
                    self.vp(out, true);
                }
            }
        }
    }

    fn vp(&mut self, out: &mut Vec<String>, nested: bool) {
        match self.rng.gen_range(0..7) {
            0 => out.push(self.pick(IVS).into()),
            1 => {
                out.push(self.pick(IVS).into());
                out.push(self.pick(ADVS).into());
            }
            2 => {
                out.push(self.pick(TVS).into());
                self.np(out, OBJECTS, true);
            }
            3 => {
                out.push("be".into());
                if self.chance(0.3) {
                    out.push("not".into());
                }
                out.push(self.pick(ADJS).into());
            }
            4 if !nested => {
                out.push("be".into());
                out.push(self.pick(PREPS).into());
                self.np(out, OBJECTS, true);
            }
            5 => {
                out.extend(["do".into(), "not".into()]);
                out.push(self.pick(IVS).into());
            }
            _ => {
                out.push("be".into());
                out.push(self.pick(IVS).into());
            }
        }
    }

    /// Lemmas of a random sentence; not guaranteed to parse.
    pub fn lemmas(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        if self.chance(0.1) {
            out.push(self.pick(PRONOUNS).into());
        } else {
            self.np(&mut out, SUBJECTS, false);
        }
        self.vp(&mut out, false);
        out
    }

    /// A random sentence that parses, polarized.
    pub fn premise(&mut self) -> PolarizedSentence {
        loop {
            let lemmas = self.lemmas();
            if let Ok(d) = parse_fragment(&lemmas, &self.lexicon) {
                return polarize(&d);
            }
        }
    }
}
