//! Exception table plus vocabulary-checked suffix stripping.

use crate::syntax::Lexicon;
use crate::types::Token;

use super::tagger::tokenize;

const EXCEPTIONS: &[(&str, &str)] = &[
    ("is", "be"),
    ("are", "be"),
    ("was", "be"),
    ("were", "be"),
    ("am", "be"),
    ("been", "be"),
    ("being", "be"),
    ("'re", "be"),
    ("does", "do"),
    ("did", "do"),
    ("done", "do"),
    ("doing", "do"),
    ("has", "have"),
    ("had", "have"),
    ("having", "have"),
    ("an", "a"),
    ("men", "man"),
    ("women", "woman"),
    ("children", "child"),
    ("feet", "foot"),
    ("teeth", "tooth"),
    ("mice", "mouse"),
    ("geese", "goose"),
    ("ladies", "lady"),
    ("babies", "baby"),
    ("knives", "knife"),
    ("ran", "run"),
    ("swam", "swim"),
    ("sang", "sing"),
    ("sung", "sing"),
    ("ate", "eat"),
    ("eaten", "eat"),
    ("sat", "sit"),
    ("stood", "stand"),
    ("lay", "lie"),
    ("lain", "lie"),
    ("lying", "lie"),
    ("flew", "fly"),
    ("flown", "fly"),
    ("drove", "drive"),
    ("driven", "drive"),
    ("rode", "ride"),
    ("ridden", "ride"),
    ("wrote", "write"),
    ("written", "write"),
    ("took", "take"),
    ("taken", "take"),
    ("held", "hold"),
    ("caught", "catch"),
    ("threw", "throw"),
    ("thrown", "throw"),
    ("went", "go"),
    ("gone", "go"),
    ("saw", "see"),
    ("seen", "see"),
    ("bit", "bite"),
    ("bitten", "bite"),
    ("fell", "fall"),
    ("fallen", "fall"),
    ("spoke", "speak"),
    ("spoken", "speak"),
    ("wore", "wear"),
    ("worn", "wear"),
    ("fought", "fight"),
    ("chopped", "chop"),
    ("cutting", "cut"),
    ("hitting", "hit"),
    ("sitting", "sit"),
    ("running", "run"),
    ("swimming", "swim"),
    ("fed", "feed"),
    ("lifted", "lift"),
    ("people", "people"),
    ("bus", "bus"),
    ("grass", "grass"),
    ("glass", "glass"),
    ("dress", "dress"),
    ("this", "this"),
    ("his", "his"),
    ("across", "across"),
    ("something", "something"),
    ("nothing", "nothing"),
    ("everything", "everything"),
];

const PARTICIPLES: &[&str] = &[
    "been", "done", "eaten", "sung", "sat", "stood", "lain", "flown", "driven", "ridden", "written", "taken", "held",
    "caught", "thrown", "gone", "seen", "bitten", "fallen", "spoken", "worn", "fought", "cut", "hit", "put", "read",
    "fed", "chopped", "sliced", "peeled", "played", "cooked",
];

pub(crate) fn irregular_participle(word: &str) -> bool {
    PARTICIPLES.contains(&word)
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// One vowel group and a consonant-vowel-consonant ending (`skat`, `hop`),
/// the shape whose `-e` is dropped before a suffix.
fn single_syllable_cvc(stem: &str) -> bool {
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n < 3 {
        return false;
    }
    let groups = chars
        .iter()
        .enumerate()
        .filter(|(i, c)| is_vowel(**c) && (*i == 0 || !is_vowel(chars[i - 1])))
        .count();
    groups == 1
        && !is_vowel(chars[n - 1])
        && is_vowel(chars[n - 2])
        && !is_vowel(chars[n - 3])
        && !matches!(chars[n - 1], 'w' | 'x' | 'y')
}

pub struct Lemmatizer<'a> {
    lexicon: &'a Lexicon,
}

impl<'a> Lemmatizer<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Lemmatizer<'a> {
        Lemmatizer { lexicon }
    }

    fn known(&self, w: &str) -> bool {
        self.lexicon.contains(w)
    }

    fn candidates(word: &str) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(stem) = word.strip_suffix("ing") {
            out.push(stem.to_owned());
            out.push(format!("{stem}e"));
            if let Some(undoubled) = undouble(stem) {
                out.push(undoubled);
            }
        }
        if let Some(stem) = word.strip_suffix("ied") {
            out.push(format!("{stem}y"));
        }
        if let Some(stem) = word.strip_suffix("ed") {
            out.push(stem.to_owned());
            out.push(format!("{stem}e"));
            if let Some(undoubled) = undouble(stem) {
                out.push(undoubled);
            }
        }
        if let Some(stem) = word.strip_suffix("ies") {
            out.push(format!("{stem}y"));
        }
        if let Some(stem) = word.strip_suffix("ves") {
            out.push(format!("{stem}f"));
            out.push(format!("{stem}fe"));
        }
        if let Some(stem) = word.strip_suffix("es") {
            out.push(stem.to_owned());
        }
        if let Some(stem) = word.strip_suffix('s') {
            if !stem.ends_with('s') {
                out.push(stem.to_owned());
            }
        }
        out.retain(|c| !c.is_empty());
        out
    }

    /// Lemma of a single lowercase word.
    pub fn lemma(&self, word: &str) -> String {
        let word = word.to_lowercase();
        if let Some((_, lemma)) = EXCEPTIONS.iter().find(|(w, _)| *w == word) {
            return (*lemma).to_owned();
        }
        if self.known(&word) {
            return word;
        }
        let candidates = Self::candidates(&word);
        if let Some(hit) = candidates.iter().find(|c| self.known(c)) {
            return hit.clone();
        }
        // Unknown to the lexicon: plain suffix rules.
        for suffix in ["ing", "ed"] {
            if let Some(stem) = word.strip_suffix(suffix) {
                if stem.len() >= 2 {
                    if let Some(u) = undouble(stem) {
                        return u;
                    }
                    if single_syllable_cvc(stem) {
                        return format!("{stem}e");
                    }
                    return stem.to_owned();
                }
            }
        }
        if let Some(stem) = word.strip_suffix("ies") {
            if stem.len() >= 2 {
                return format!("{stem}y");
            }
        }
        if let Some(stem) = word.strip_suffix('s') {
            if stem.len() >= 3 && !stem.ends_with('s') && !stem.ends_with('u') && !stem.ends_with('i') {
                return stem.to_owned();
            }
        }
        word
    }
}

fn undouble(stem: &str) -> Option<String> {
    let bytes = stem.as_bytes();
    let n = bytes.len();
    (n >= 3
        && bytes[n - 1] == bytes[n - 2]
        && !is_vowel(bytes[n - 1] as char)
        && !matches!(bytes[n - 1], b'l' | b's' | b'z'))
    .then(|| stem[..n - 1].to_owned())
}

/// Lowercased lemma tokens of a raw sentence; surfaces are the original words.
pub fn lemmatize(raw: &str, lexicon: &Lexicon) -> Vec<Token> {
    let lemmatizer = Lemmatizer::new(lexicon);
    tokenize(raw)
        .into_iter()
        .enumerate()
        .map(|(i, w)| Token::new(lemmatizer.lemma(&w), w, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lemmas(s: &str) -> Vec<String> {
        lemmatize(s, &Lexicon::bundled()).into_iter().map(|t| t.lemma).collect()
    }

    #[test]
    fn sentence_examples() {
        assert_eq!(lemmas("Two girls are sitting"), vec!["two", "girl", "be", "sit"]);
        assert_eq!(lemmas("swim"), vec!["swim"]);
        assert_eq!(
            lemmas("A woman is not cooking something"),
            vec!["a", "woman", "be", "not", "cook", "something"]
        );
    }

    #[test]
    fn surfaces_are_kept() {
        let toks = lemmatize("The dogs barked", &Lexicon::bundled());
        assert_eq!(toks[1].surface, "dogs");
        assert_eq!(toks[2].lemma, "bark");
    }

    #[test]
    fn unknown_words_fall_back_to_rules() {
        let lex = Lexicon::default();
        let l = Lemmatizer::new(&lex);
        assert_eq!(l.lemma("hoping"), "hope");
        assert_eq!(l.lemma("hopping"), "hop");
        assert_eq!(l.lemma("cities"), "city");
        assert_eq!(l.lemma("glorps"), "glorp");
        assert_eq!(l.lemma("walked"), "walk");
    }
}
