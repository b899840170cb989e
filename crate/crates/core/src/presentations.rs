//! Monoid presentations and the question of whether `T1` is trivial.
//!
//! A presentation `⟨G | R⟩` becomes a theory with one unary symbol `f_g` per
//! generator, and the monad it presents has `T1` isomorphic to the monoid.
//! Deciding `|T1| = 1` is therefore the word problem in disguise, so the
//! procedure here is a bounded semi-decision: a finite-monoid search for a
//! non-trivial quotient and a breadth-first rewrite search for `g = ε`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::finite::MonoidTable;
use crate::monads::TObject;
use crate::par;
use crate::props::{Outcome, PropVerdict, PropWitness};
use crate::terms::{Equation, Signature, Term};

pub type Word = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Word, Word)>,
}

fn show_word(w: &[String]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.concat()
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} |", self.generators.join(","))?;
        for (i, (l, r)) in self.relations.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{} = {}", show_word(l), show_word(r))?;
        }
        write!(f, "⟩")
    }
}

#[derive(Deserialize)]
struct JsonPresentation {
    generators: Vec<String>,
    #[serde(default)]
    relations: Vec<(String, String)>,
}

impl MonoidPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<(Word, Word)>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g.chars().any(|c| !c.is_alphanumeric() && c != '_') {
                return Err(Error::Structural(format!("bad generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Structural(format!("duplicate generator `{g}`")));
            }
        }
        for (l, r) in &relations {
            for s in l.iter().chain(r) {
                if !generators.contains(s) {
                    return Err(Error::Structural(format!("undeclared generator `{s}`")));
                }
            }
        }
        Ok(Self {
            generators,
            relations,
        })
    }

    /// Splits `text` into generators by longest match, ignoring spaces.
    /// `ε` and `1` stand for the empty word.
    pub fn word(&self, text: &str) -> Result<Word> {
        split_word(&self.generators, text).map_err(Error::Structural)
    }

    /// Parses `generators: a,b ; relations: aa = ; ab = ba`. Newlines work
    /// as separators too and `#` starts a comment.
    pub fn parse(src: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut raw = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            let mut col = 1;
            for piece in body.split(';') {
                let at = col + piece.len() - piece.trim_start().len();
                col += piece.len() + 1;
                let piece = piece.trim();
                if piece.is_empty() {
                    continue;
                }
                if let Some(rest) = piece.strip_prefix("generators:") {
                    let gens: Vec<String> = rest
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    generators = Some(gens);
                } else if let Some(rest) = piece.strip_prefix("relations:") {
                    if !rest.trim().is_empty() {
                        raw.push((i + 1, at, rest.trim().to_string()));
                    }
                } else {
                    raw.push((i + 1, at, piece.to_string()));
                }
            }
        }
        let generators = generators
            .ok_or_else(|| Error::Parse(ParseError::new(1, 1, "missing `generators:`")))?;
        let mut relations = Vec::new();
        for (line, col, text) in raw {
            let (l, r) = text.split_once('=').ok_or_else(|| {
                Error::Parse(ParseError::new(
                    line,
                    col,
                    format!("expected `word = word`, found `{text}`"),
                ))
            })?;
            let word = |s: &str| {
                split_word(&generators, s).map_err(|m| Error::Parse(ParseError::new(line, col, m)))
            };
            relations.push((word(l)?, word(r)?));
        }
        Self::new(generators, relations)
    }

    /// `{"generators": ["a"], "relations": [["aa", ""]]}`.
    pub fn from_json_str(src: &str) -> Result<Self> {
        let j: JsonPresentation = serde_json::from_str(src)?;
        let mut relations = Vec::new();
        for (l, r) in &j.relations {
            relations.push((
                split_word(&j.generators, l).map_err(Error::Structural)?,
                split_word(&j.generators, r).map_err(Error::Structural)?,
            ));
        }
        Self::new(j.generators, relations)
    }

    /// JSON when the file ends in `.json`, the text format otherwise.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json_str(&src)
        } else {
            Self::parse(&src)
        }
    }

    /// The multiplication-table presentation of a finite monoid: one
    /// generator per non-unit element and `ab = c` for every product.
    pub fn of_monoid(m: &MonoidTable) -> Self {
        let name = |a: usize| format!("g{a}");
        let word = |a: usize| if a == m.unit { vec![] } else { vec![name(a)] };
        let elems: Vec<usize> = (0..m.size).filter(|&a| a != m.unit).collect();
        let mut relations = Vec::new();
        for &a in &elems {
            for &b in &elems {
                relations.push((vec![name(a), name(b)], word(m.op(a, b))));
            }
        }
        Self {
            generators: elems.into_iter().map(name).collect(),
            relations,
        }
    }
}

fn split_word(generators: &[String], text: &str) -> std::result::Result<Word, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "ε" || compact == "1" {
        return Ok(Vec::new());
    }
    let mut rest = compact.as_str();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let g = generators
            .iter()
            .filter(|g| rest.starts_with(g.as_str()))
            .max_by_key(|g| g.len())
            .ok_or_else(|| format!("`{rest}` does not start with a generator"))?;
        out.push(g.clone());
        rest = &rest[g.len()..];
    }
    Ok(out)
}

/// One unary symbol `f_g` per generator and one equation per relation,
/// with `g₁…gₙ` read as `f_g₁(…f_gₙ(x)…)`.
pub fn encode_as_theory(p: &MonoidPresentation) -> Result<(Signature, Vec<Equation>)> {
    let sym = |g: &str| format!("f_{g}");
    let sig = Signature::new(p.generators.iter().map(|g| (sym(g), 1)))?;
    let chain = |w: &Word| {
        w.iter()
            .rev()
            .fold(Term::var("x"), |acc, g| Term::app(sym(g), vec![acc]))
    };
    let eqs = p
        .relations
        .iter()
        .map(|(l, r)| Equation::new(chain(l), chain(r)))
        .collect::<Result<Vec<_>>>()?;
    Ok((sig, eqs))
}

/// A rewrite chain from a generator to the empty word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorTrace {
    pub generator: String,
    pub words: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidModel {
    pub table: MonoidTable,
    /// Image of each generator.
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TrivialityVerdict {
    Trivial {
        traces: Vec<GeneratorTrace>,
    },
    NonTrivial {
        countermodel: MonoidModel,
    },
    Unknown {
        rewrite_budget: usize,
        model_bound: usize,
    },
}

impl TrivialityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            TrivialityVerdict::Trivial { .. } => "trivial",
            TrivialityVerdict::NonTrivial { .. } => "non-trivial",
            TrivialityVerdict::Unknown { .. } => "unknown",
        }
    }

    /// Re-checks the evidence: traces are single relation steps ending in
    /// `ε`; countermodels are monoids satisfying every relation with some
    /// generator off the unit.
    pub fn replays(&self, p: &MonoidPresentation) -> bool {
        match self {
            TrivialityVerdict::Trivial { traces } => {
                traces.len() == p.generators.len()
                    && traces.iter().zip(&p.generators).all(|(t, g)| {
                        t.words.first() == Some(&vec![g.clone()])
                            && t.words.last().is_some_and(|w| w.is_empty())
                            && t.words
                                .windows(2)
                                .all(|w| one_step(&w[0], &p.relations).contains(&w[1]))
                    })
            }
            TrivialityVerdict::NonTrivial { countermodel } => {
                let m = &countermodel.table;
                m.validate().is_ok()
                    && countermodel.images.len() == p.generators.len()
                    && countermodel.images.iter().any(|&a| a != m.unit)
                    && satisfies_relations(p, m, &countermodel.images)
            }
            TrivialityVerdict::Unknown { .. } => true,
        }
    }
}

fn one_step(w: &[String], relations: &[(Word, Word)]) -> Vec<Word> {
    let mut out = Vec::new();
    for (l, r) in relations {
        for (from, to) in [(l, r), (r, l)] {
            if from.len() > w.len() {
                continue;
            }
            for i in 0..=w.len() - from.len() {
                if w[i..i + from.len()] == from[..] {
                    let mut next = w[..i].to_vec();
                    next.extend(to.iter().cloned());
                    next.extend(w[i + from.len()..].iter().cloned());
                    if !out.contains(&next) {
                        out.push(next);
                    }
                }
            }
        }
    }
    out
}

fn eval_word(p: &MonoidPresentation, m: &MonoidTable, images: &[usize], w: &[String]) -> usize {
    w.iter().fold(m.unit, |acc, g| {
        let i = p.generators.iter().position(|h| h == g).expect("declared");
        m.op(acc, images[i])
    })
}

fn satisfies_relations(p: &MonoidPresentation, m: &MonoidTable, images: &[usize]) -> bool {
    p.relations
        .iter()
        .all(|(l, r)| eval_word(p, m, images, l) == eval_word(p, m, images, r))
}

/// Breadth-first search from `[g]` to `ε`. Words longer than `max_len`
/// are not explored.
fn trivialise(
    p: &MonoidPresentation,
    g: &str,
    budget: usize,
    max_len: usize,
) -> Option<GeneratorTrace> {
    let start = vec![g.to_string()];
    let mut parent: HashMap<Word, Option<Word>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if w.is_empty() {
            let mut words = vec![w.clone()];
            let mut cur = w;
            while let Some(Some(prev)) = parent.get(&cur) {
                words.push(prev.clone());
                cur = prev.clone();
            }
            words.reverse();
            return Some(GeneratorTrace {
                generator: g.to_string(),
                words,
            });
        }
        if parent.len() >= budget {
            continue;
        }
        for next in one_step(&w, &p.relations) {
            if next.len() <= max_len && !parent.contains_key(&next) {
                parent.insert(next.clone(), Some(w.clone()));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Monoids on `{0..n-1}` with unit `0` satisfying the relations under some
/// generator assignment with a non-unit image. Tables are scanned in
/// lexicographic order of their non-unit block.
fn find_monoid(p: &MonoidPresentation, n: usize) -> Option<MonoidModel> {
    let free = (n - 1) * (n - 1);
    let tables = (n as u64).checked_pow(free as u32)?;
    let gens = p.generators.len();
    let job = |index: u64| -> Option<MonoidModel> {
        let mut op = vec![0; n * n];
        let mut rest = index;
        for a in (1..n).rev() {
            for b in (1..n).rev() {
                op[a * n + b] = (rest % n as u64) as usize;
                rest /= n as u64;
            }
        }
        for a in 0..n {
            op[a] = a;
            op[a * n] = a;
        }
        let commutative = (0..n).all(|a| (0..n).all(|b| op[a * n + b] == op[b * n + a]));
        let table = MonoidTable {
            size: n,
            op,
            unit: 0,
            commutative,
        };
        table.validate().ok()?;
        let mut images = vec![0; gens];
        loop {
            if images.iter().any(|&a| a != 0) && satisfies_relations(p, &table, &images) {
                return Some(MonoidModel { table, images });
            }
            if !crate::algebra::odometer(&mut images, n) {
                return None;
            }
        }
    };
    let mut found = None;
    par::chunked(tables, 1024, job, |_, res| {
        found = res;
        found.is_none()
    });
    found
}

/// Countermodel search over monoids of size `2..=model_bound`, then a
/// rewrite search per generator sharing `rewrite_budget` visited words.
pub fn t1_triviality(
    p: &MonoidPresentation,
    rewrite_budget: usize,
    model_bound: usize,
) -> TrivialityVerdict {
    if p.generators.is_empty() {
        return TrivialityVerdict::Trivial { traces: Vec::new() };
    }
    for n in 2..=model_bound {
        if let Some(countermodel) = find_monoid(p, n) {
            return TrivialityVerdict::NonTrivial { countermodel };
        }
    }
    let longest = p
        .relations
        .iter()
        .map(|(l, r)| l.len().max(r.len()))
        .max()
        .unwrap_or(0);
    let max_len = 2 * longest + 2;
    let per_generator = rewrite_budget / p.generators.len();
    let mut traces = Vec::new();
    for g in &p.generators {
        match trivialise(p, g, per_generator, max_len) {
            Some(t) => traces.push(t),
            None => {
                return TrivialityVerdict::Unknown {
                    rewrite_budget,
                    model_bound,
                }
            }
        }
    }
    TrivialityVerdict::Trivial { traces }
}

pub const DEFAULT_REWRITE_BUDGET: usize = 100_000;
pub const DEFAULT_MODEL_BOUND: usize = 4;

/// Affineness of the monad presented by the encoded theory, read off the
/// triviality of `T1`.
pub fn affineness_of_presented(
    p: &MonoidPresentation,
    rewrite_budget: usize,
    model_bound: usize,
) -> PropVerdict {
    let outcome = match t1_triviality(p, rewrite_budget, model_bound) {
        TrivialityVerdict::Trivial { traces } => Outcome::Yes {
            certificate: format!(
                "T1 is trivial: every generator rewrites to ε ({} traces)",
                traces.len()
            ),
        },
        TrivialityVerdict::NonTrivial { countermodel } => {
            let g = countermodel
                .images
                .iter()
                .copied()
                .find(|&a| a != countermodel.table.unit)
                .expect("non-trivial image");
            let point = |w| TObject::Writer {
                weight: w,
                value: 0,
            };
            Outcome::No {
                witness: PropWitness {
                    sizes: vec![1, countermodel.table.size],
                    inputs: countermodel.images.iter().map(|&a| point(a)).collect(),
                    lhs: point(g),
                    rhs: point(countermodel.table.unit),
                },
            }
        }
        TrivialityVerdict::Unknown {
            rewrite_budget,
            model_bound,
        } => Outcome::UnknownUpTo {
            bound: format!(
                "rewrite budget {rewrite_budget}, monoids up to size {model_bound}; \
                 triviality of T1 is undecidable in general"
            ),
        },
    };
    PropVerdict {
        property: "affine".into(),
        monad: format!("presented by {p}"),
        condition: "T1 is terminal".into(),
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monads::Monad;
    use crate::props::is_affine;
    use crate::terms::classify;

    fn pres(src: &str) -> MonoidPresentation {
        MonoidPresentation::parse(src).unwrap()
    }

    #[test]
    fn parsing() {
        let p = pres("generators: a,b ; relations: aa = ; ab = ba");
        assert_eq!(p.relations.len(), 2);
        assert!(p.relations[0].1.is_empty());
        assert_eq!(p.to_string(), "⟨a,b | aa = ε, ab = ba⟩");
        let q = MonoidPresentation::from_json_str(
            r#"{"generators":["a","b"],"relations":[["aa",""],["ab","ba"]]}"#,
        )
        .unwrap();
        assert_eq!(p, q);
        assert!(MonoidPresentation::parse("generators: a\nrelations: ab = a").is_err());
        assert!(MonoidPresentation::parse("generators: a\nrelations: aa").is_err());
        let p = pres("generators: x1, x\nx1 x = 1");
        assert_eq!(p.relations[0].0, vec!["x1".to_string(), "x".to_string()]);
    }

    #[test]
    fn encoding() {
        let (sig, eqs) = encode_as_theory(&pres("generators: a\nrelations: a =")).unwrap();
        assert_eq!(sig.to_string(), "f_a/1");
        assert_eq!(eqs[0].to_string(), "f_a(x) = x");
        let (_, eqs) = encode_as_theory(&pres("generators: a\nrelations: aa =")).unwrap();
        assert_eq!(eqs[0].to_string(), "f_a(f_a(x)) = x");
        let (_, eqs) = encode_as_theory(&pres("generators: a,b\nrelations: ab = ba")).unwrap();
        assert_eq!(eqs[0].to_string(), "f_a(f_b(x)) = f_b(f_a(x))");
        let c = classify(&eqs[0]);
        assert!(c.linear && !c.drop && !c.dup);
    }

    #[test]
    fn triviality_examples() {
        let p = pres("generators: a ; relations: a =");
        let v = t1_triviality(&p, DEFAULT_REWRITE_BUDGET, 4);
        assert_eq!(v.label(), "trivial");
        assert!(v.replays(&p));

        for src in ["generators: a ; relations: aa =", "generators: a"] {
            let p = pres(src);
            let v = t1_triviality(&p, DEFAULT_REWRITE_BUDGET, 4);
            let TrivialityVerdict::NonTrivial { countermodel } = &v else {
                panic!("{src}: {v:?}")
            };
            assert_eq!(countermodel.table, MonoidTable::z2());
            assert_eq!(countermodel.images, vec![1]);
            assert!(v.replays(&p));
        }

        let p = pres("generators: a ; relations: a =");
        assert_eq!(t1_triviality(&p, 1, 1).label(), "unknown");
        assert!(affineness_of_presented(&p, 1, 1).short() == "unknown");
    }

    #[test]
    fn trivial_by_longer_chain() {
        // ab = ε and ba = b force b = ε and then a = ε.
        let p = pres("generators: a,b ; relations: ab = ; ba = b");
        let v = t1_triviality(&p, DEFAULT_REWRITE_BUDGET, 3);
        assert_eq!(v.label(), "trivial", "{v:?}");
        assert!(v.replays(&p));
    }

    #[test]
    fn writer_agreement() {
        for (m, label) in [
            (MonoidTable::trivial(), "trivial"),
            (MonoidTable::z2(), "z2"),
            (MonoidTable::semilattice2(), "semilattice"),
            (MonoidTable::cyclic(3), "z3"),
        ] {
            let p = MonoidPresentation::of_monoid(&m);
            let presented = affineness_of_presented(&p, DEFAULT_REWRITE_BUDGET, 4);
            let writer = is_affine(&Monad::writer(m, label).unwrap()).unwrap();
            assert_eq!(presented.short(), writer.short(), "{label}");
        }
    }
}
