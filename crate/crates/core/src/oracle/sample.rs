//! Models satisfying a knowledge base: seeded sampling with repair, and
//! exhaustive enumeration for small vocabularies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::eval_with_restrictors;
use super::model::{FiniteModel, Mask, SymbolKind, Vocabulary, MAX_DOMAIN};
use super::OracleError;
use crate::kb::KnowledgeBase;
use crate::syntax::Derivation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Constraint {
    /// Extension of `lhs` within that of `rhs`, row by row.
    Subset(usize, usize),
    Disjoint(usize, usize),
}

/// KB facts between single-word symbols of the same kind, with `⊥`
/// inherited downward.
fn constraints(kb: &KnowledgeBase, symbols: &[(SymbolKind, String)]) -> Vec<Constraint> {
    let mut out = Vec::new();
    let up = |w: &str| {
        let mut set: Vec<Vec<String>> = kb.above(&[w.to_owned()]).into_iter().cloned().collect();
        set.push(vec![w.to_owned()]);
        set
    };
    for (i, (ki, a)) in symbols.iter().enumerate() {
        for (j, (kj, b)) in symbols.iter().enumerate() {
            if i == j || ki != kj {
                continue;
            }
            if kb.leq(std::slice::from_ref(a), std::slice::from_ref(b)) {
                out.push(Constraint::Subset(i, j));
            }
            if i < j {
                let ua = up(a);
                let ub = up(b);
                if ua.iter().any(|x| ub.iter().any(|y| kb.perp(x, y))) {
                    out.push(Constraint::Disjoint(i, j));
                }
            }
        }
    }
    out
}

/// Extension table indexed like the symbol list; unary symbols use row 0.
#[derive(Debug, Clone)]
struct Table {
    domain: usize,
    rows: Vec<Vec<Mask>>,
}

impl Table {
    fn satisfies(&self, constraints: &[Constraint]) -> bool {
        constraints.iter().all(|c| match *c {
            Constraint::Subset(a, b) => self.rows[a].iter().zip(&self.rows[b]).all(|(x, y)| x & !y == 0),
            Constraint::Disjoint(a, b) => self.rows[a].iter().zip(&self.rows[b]).all(|(x, y)| x & y == 0),
        })
    }

    /// Pushes subsets up and resolves overlaps by shrinking one side and
    /// everything below it. Gives up after a bounded number of rounds.
    fn repair(&mut self, constraints: &[Constraint], rng: &mut ChaCha8Rng) -> bool {
        for _ in 0..16 {
            let mut changed = false;
            for c in constraints {
                match *c {
                    Constraint::Subset(a, b) => {
                        for r in 0..self.rows[a].len() {
                            let add = self.rows[a][r] & !self.rows[b][r];
                            if add != 0 {
                                self.rows[b][r] |= add;
                                changed = true;
                            }
                        }
                    }
                    Constraint::Disjoint(a, b) => {
                        for r in 0..self.rows[a].len() {
                            let overlap = self.rows[a][r] & self.rows[b][r];
                            if overlap != 0 {
                                let target = if rng.gen_bool(0.5) { a } else { b };
                                self.clear_below(target, r, overlap, constraints);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
        self.satisfies(constraints)
    }

    fn clear_below(&mut self, target: usize, row: usize, bits: Mask, constraints: &[Constraint]) {
        let mut stack = vec![target];
        let mut seen = vec![false; self.rows.len()];
        while let Some(t) = stack.pop() {
            if std::mem::replace(&mut seen[t], true) {
                continue;
            }
            self.rows[t][row] &= !bits;
            for c in constraints {
                if let Constraint::Subset(lo, hi) = *c {
                    if hi == t {
                        stack.push(lo);
                    }
                }
            }
        }
    }

    fn into_model(self, symbols: &[(SymbolKind, String)]) -> FiniteModel {
        let mut model = FiniteModel::new(self.domain);
        for ((kind, name), rows) in symbols.iter().zip(self.rows) {
            model.set_extension(*kind, name, rows);
        }
        model
    }
}

/// Nouns are required to have nonempty extensions.
fn admissible(table: &Table, symbols: &[(SymbolKind, String)]) -> bool {
    symbols
        .iter()
        .zip(&table.rows)
        .all(|((kind, _), rows)| *kind != SymbolKind::Noun || rows[0] != 0)
}

fn random_table(symbols: &[(SymbolKind, String)], domain: usize, rng: &mut ChaCha8Rng) -> Table {
    const DENSITIES: [f64; 4] = [0.3, 0.5, 0.7, 0.9];
    let rows = symbols
        .iter()
        .map(|(kind, _)| {
            let p = DENSITIES[rng.gen_range(0..DENSITIES.len())];
            let n = if kind.is_binary() { domain } else { 1 };
            (0..n)
                .map(|_| (0..domain).filter(|_| rng.gen_bool(p)).fold(0, |m, i| m | (1 << i)))
                .collect()
        })
        .collect();
    Table { domain, rows }
}

/// `count` seeded models over domains of 1 to `max_domain` entities in
/// which every KB fact between vocabulary symbols holds and every noun is
/// inhabited.
pub fn models_satisfying(
    kb: &KnowledgeBase,
    vocabulary: &Vocabulary,
    count: usize,
    seed: u64,
    max_domain: usize,
) -> Result<Vec<FiniteModel>, OracleError> {
    let max_domain = max_domain.clamp(1, MAX_DOMAIN);
    let symbols: Vec<_> = vocabulary.symbols.iter().cloned().collect();
    let constraints = constraints(kb, &symbols);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = 200 * count.max(1);
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let domain = rng.gen_range(1..=max_domain);
        let mut table = random_table(&symbols, domain, &mut rng);
        if table.repair(&constraints, &mut rng) && admissible(&table, &symbols) {
            out.push(table.into_model(&symbols));
        }
    }
    if out.len() < count {
        return Err(OracleError::UnsatisfiableKb);
    }
    Ok(out)
}

/// Number of unrestricted models over a domain of `domain` entities:
/// two to the power of the number of membership bits.
pub fn model_count(vocabulary: &Vocabulary, domain: usize) -> u64 {
    1u64 << vocabulary.bits(domain)
}

/// Every interpretation of `vocabulary` over `domain` entities, KB or not.
/// Panics above 24 membership bits.
pub fn enumerate_models(vocabulary: &Vocabulary, domain: usize) -> impl Iterator<Item = FiniteModel> + '_ {
    let bits = vocabulary.bits(domain);
    assert!(bits <= 24, "{bits} bits is too many to enumerate");
    let symbols: Vec<_> = vocabulary.symbols.iter().cloned().collect();
    (0u64..1 << bits).map(move |code| {
        let mut shift = 0;
        let mut take = |n: usize| {
            let v = ((code >> shift) & ((1 << n) - 1)) as Mask;
            shift += n;
            v
        };
        let mut model = FiniteModel::new(domain);
        for (kind, name) in &symbols {
            let rows = if kind.is_binary() {
                (0..domain).map(|_| take(domain)).collect()
            } else {
                vec![take(domain)]
            };
            model.set_extension(*kind, name, rows);
        }
        model
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub samples: usize,
    pub seed: u64,
    pub max_domain: usize,
    /// Skip models where some quantifier restrictor is empty.
    pub presuppose: bool,
}

impl Default for OracleOptions {
    fn default() -> OracleOptions {
        OracleOptions {
            samples: 100,
            seed: 0,
            max_domain: 5,
            presuppose: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No model among those checked was a counterexample.
    Valid {
        checked: usize,
        exhaustive: bool,
    },
    Counterexample(Box<FiniteModel>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

const EXHAUSTIVE_DOMAIN: usize = 3;
const EXHAUSTIVE_SYMBOLS: usize = 4;
/// Membership bits at the largest exhaustive domain; 2^16 tables per domain.
const EXHAUSTIVE_BITS: usize = 16;

/// Looks for a KB model in which each sentence has the paired truth value.
/// Small vocabularies are searched exhaustively over domains of up to
/// three entities; larger ones are sampled.
pub fn find_model(
    kb: &KnowledgeBase,
    sentences: &[(&Derivation, bool)],
    options: &OracleOptions,
) -> Result<Verdict, OracleError> {
    let mut vocabulary = Vocabulary::default();
    for (d, _) in sentences {
        vocabulary.merge(&Vocabulary::of(d));
    }
    let symbols: Vec<_> = vocabulary.symbols.iter().cloned().collect();
    let constraints = constraints(kb, &symbols);
    let mut checked = 0;
    let mut test = |model: FiniteModel| -> Result<Option<FiniteModel>, OracleError> {
        checked += 1;
        for (d, want) in sentences {
            let (truth, restrictors) = eval_with_restrictors(&model, d)?;
            if truth != *want || (options.presuppose && restrictors.contains(&0)) {
                return Ok(None);
            }
        }
        Ok(Some(model))
    };
    let exhaustive = vocabulary.len() <= EXHAUSTIVE_SYMBOLS && vocabulary.bits(EXHAUSTIVE_DOMAIN) <= EXHAUSTIVE_BITS;
    if exhaustive {
        for domain in 1..=EXHAUSTIVE_DOMAIN {
            for model in enumerate_models(&vocabulary, domain) {
                let table = Table {
                    domain,
                    rows: symbols.iter().map(|(k, n)| model.extension(*k, n).unwrap()).collect(),
                };
                if !table.satisfies(&constraints) || !admissible(&table, &symbols) {
                    continue;
                }
                if let Some(m) = test(model)? {
                    return Ok(Verdict::Counterexample(Box::new(m)));
                }
            }
        }
    } else {
        for model in models_satisfying(kb, &vocabulary, options.samples, options.seed, options.max_domain)? {
            if let Some(m) = test(model)? {
                return Ok(Verdict::Counterexample(Box::new(m)));
            }
        }
    }
    Ok(Verdict::Valid { checked, exhaustive })
}

/// Whether `premise` entails `hypothesis` in every model checked: a
/// counterexample makes the premise true and the hypothesis false.
pub fn entails_under(
    kb: &KnowledgeBase,
    premise: &Derivation,
    hypothesis: &Derivation,
    options: &OracleOptions,
) -> Result<Verdict, OracleError> {
    find_model(kb, &[(premise, true), (hypothesis, false)], options)
}

/// Whether the two sentences are never true together; a counterexample
/// makes both true.
pub fn contradicts_under(
    kb: &KnowledgeBase,
    premise: &Derivation,
    hypothesis: &Derivation,
    options: &OracleOptions,
) -> Result<Verdict, OracleError> {
    find_model(kb, &[(premise, true), (hypothesis, true)], options)
}
