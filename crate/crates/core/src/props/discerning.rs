//! Is the renamed linear companion of a 2-dup equation derivable from it?
//!
//! Derivability is searched breadth-first over single rewrite steps with
//! both orientations of the equation; non-derivability is shown by a finite
//! model of the equation in which the companion fails.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::algebra::FinAlgebra;
use crate::error::Result;
use crate::terms::{discerning_companion, Equation, Signature, Term};

#[derive(Clone, Debug)]
pub struct DiscerningOptions {
    /// Largest carrier tried by the countermodel search.
    pub model_bound: usize,
    /// Deepest intermediate term allowed in a derivation.
    pub derivation_depth: usize,
    /// Terms visited by the derivation search before giving up.
    pub max_terms: usize,
    /// Search-tree nodes per carrier size in the countermodel search.
    pub max_nodes: u64,
}

impl Default for DiscerningOptions {
    fn default() -> Self {
        Self {
            model_bound: 4,
            derivation_depth: 4,
            max_terms: 200_000,
            max_nodes: 20_000_000,
        }
    }
}

/// A chain of terms, each obtained from the previous one by rewriting one
/// subterm with an instance of the equation in either direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub steps: Vec<Term>,
}

impl Derivation {
    /// Checks every link of the chain against `eq`.
    pub fn replays(&self, eq: &Equation) -> bool {
        let rules = rules(eq);
        self.steps
            .windows(2)
            .all(|w| neighbours(&w[0], &rules, usize::MAX).contains(&w[1]))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DiscerningVerdict {
    Discerning {
        companion: Equation,
        countermodel: FinAlgebra,
        /// Values of the companion's variables on which it fails.
        assignment: Vec<usize>,
    },
    NotDiscerning {
        companion: Equation,
        derivation: Derivation,
    },
    Unknown {
        companion: Equation,
        model_bound: usize,
        derivation_depth: usize,
    },
}

impl DiscerningVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            DiscerningVerdict::Discerning { .. } => "discerning",
            DiscerningVerdict::NotDiscerning { .. } => "not discerning",
            DiscerningVerdict::Unknown { .. } => "unknown",
        }
    }
}

fn rules(eq: &Equation) -> [(Term, Term); 2] {
    [
        (eq.lhs.clone(), eq.rhs.clone()),
        (eq.rhs.clone(), eq.lhs.clone()),
    ]
}

fn matches(pattern: &Term, t: &Term, subst: &mut HashMap<String, Term>) -> bool {
    match (pattern, t) {
        (Term::Var(v), _) => match subst.get(v) {
            Some(bound) => bound == t,
            None => {
                subst.insert(v.clone(), t.clone());
                true
            }
        },
        (Term::App(f, ps), Term::App(g, ts)) => {
            f == g && ps.len() == ts.len() && ps.iter().zip(ts).all(|(p, s)| matches(p, s, subst))
        }
        _ => false,
    }
}

/// Terms one rewrite step away from `t`, no deeper than `max_depth`.
/// Rules whose right side has variables missing on the left are skipped.
fn neighbours(t: &Term, rules: &[(Term, Term)], max_depth: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for (path, sub) in t.positions() {
        for (l, r) in rules {
            let mut subst = HashMap::new();
            if !matches(l, sub, &mut subst) {
                continue;
            }
            if r.vars().iter().any(|v| !subst.contains_key(v)) {
                continue;
            }
            let next = t.replace_at(&path, r.substitute(&subst));
            if next.depth() <= max_depth && !out.contains(&next) {
                out.push(next);
            }
        }
    }
    out
}

/// Breadth-first search for a rewrite chain from `goal.lhs` to `goal.rhs`
/// using `eq` in both directions.
pub fn derive_companion(
    eq: &Equation,
    goal: &Equation,
    max_depth: usize,
    max_terms: usize,
) -> Option<Derivation> {
    let rules = rules(eq);
    let start = goal.lhs.clone();
    let mut parent: HashMap<Term, Option<Term>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        if t == goal.rhs {
            let mut steps = vec![t.clone()];
            let mut cur = t;
            while let Some(Some(p)) = parent.get(&cur) {
                steps.push(p.clone());
                cur = p.clone();
            }
            steps.reverse();
            return Some(Derivation { steps });
        }
        if parent.len() >= max_terms {
            continue;
        }
        for n in neighbours(&t, &rules, max_depth) {
            if !parent.contains_key(&n) {
                parent.insert(n.clone(), Some(t.clone()));
                queue.push_back(n);
            }
        }
    }
    None
}

/// Operation symbols of the equations with the arities they are used at.
fn signature_of(eqs: &[&Equation]) -> Result<Signature> {
    fn walk(t: &Term, seen: &mut Vec<(String, usize)>) {
        if let Term::App(op, ts) = t {
            if !seen.iter().any(|(o, _)| o == op) {
                seen.push((op.clone(), ts.len()));
            }
            ts.iter().for_each(|s| walk(s, seen));
        }
    }
    let mut seen = Vec::new();
    for eq in eqs {
        walk(&eq.lhs, &mut seen);
        walk(&eq.rhs, &mut seen);
    }
    Signature::new(seen)
}

struct ModelSearch<'a> {
    n: usize,
    sig: &'a Signature,
    /// Offset of each operation's table within `cells`.
    offsets: Vec<usize>,
    holds: Vec<(
        crate::terms::CompiledTerm,
        crate::terms::CompiledTerm,
        usize,
    )>,
    fails: (
        crate::terms::CompiledTerm,
        crate::terms::CompiledTerm,
        usize,
    ),
    cells: Vec<Option<usize>>,
    nodes: u64,
    max_nodes: u64,
}

impl ModelSearch<'_> {
    fn eval(&self, t: &crate::terms::CompiledTerm, env: &[usize]) -> Option<usize> {
        let env: Vec<Option<usize>> = env.iter().map(|&v| Some(v)).collect();
        t.eval(&env, |k, args| {
            let mut idx = 0;
            for a in args {
                idx = idx * self.n + (*a)?;
            }
            self.cells[self.offsets[k] + idx]
        })
    }

    /// First assignment on which both sides are defined and differ.
    fn violation(
        &self,
        l: &crate::terms::CompiledTerm,
        r: &crate::terms::CompiledTerm,
        nvars: usize,
    ) -> Option<Vec<usize>> {
        let mut env = vec![0; nvars];
        loop {
            if let (Some(a), Some(b)) = (self.eval(l, &env), self.eval(r, &env)) {
                if a != b {
                    return Some(env);
                }
            }
            if !crate::algebra::odometer(&mut env, self.n) {
                return None;
            }
        }
    }

    fn consistent(&self) -> bool {
        self.holds
            .iter()
            .all(|(l, r, k)| self.violation(l, r, *k).is_none())
    }

    /// Depth-first fill of the cells; `Err(())` when out of nodes.
    fn search(&mut self, cell: usize) -> std::result::Result<Option<Vec<usize>>, ()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(());
        }
        if cell == self.cells.len() {
            let (l, r, k) = &self.fails;
            return Ok(self.violation(l, r, *k));
        }
        for v in 0..self.n {
            self.cells[cell] = Some(v);
            if self.consistent() {
                if let Some(found) = self.search(cell + 1)? {
                    return Ok(Some(found));
                }
            }
        }
        self.cells[cell] = None;
        Ok(None)
    }

    fn algebra(&self) -> FinAlgebra {
        let tables = self
            .sig
            .ops()
            .iter()
            .enumerate()
            .map(|(k, (_, a))| {
                let len = self.n.pow(*a as u32);
                (0..len)
                    .map(|i| self.cells[self.offsets[k] + i].unwrap_or(0))
                    .collect()
            })
            .collect();
        FinAlgebra::new(self.sig.clone(), self.n, tables).expect("filled tables are well formed")
    }
}

/// Outcome of [`find_countermodel`].
#[derive(Clone, Debug)]
pub enum ModelSearchOutcome {
    Found(FinAlgebra, Vec<usize>),
    /// Every table up to the bound was ruled out.
    None,
    /// Some size ran out of nodes.
    Exhausted,
}

/// Smallest algebra (carrier `2..=max_size`) satisfying every equation of
/// `holds` but not `fails`, found by backtracking over table cells.
pub fn find_countermodel(
    sig: &Signature,
    holds: &[Equation],
    fails: &Equation,
    max_size: usize,
    max_nodes: u64,
) -> Result<ModelSearchOutcome> {
    let compile = |eq: &Equation| -> Result<_> {
        let (l, r) = eq.compile(sig)?;
        Ok((l, r, eq.vars().len()))
    };
    let holds = holds.iter().map(compile).collect::<Result<Vec<_>>>()?;
    let fails = compile(fails)?;
    let mut exhausted = false;
    for n in 2..=max_size {
        let mut offsets = Vec::new();
        let mut total = 0;
        for (_, a) in sig.ops() {
            offsets.push(total);
            total += n.pow(*a as u32);
        }
        let mut s = ModelSearch {
            n,
            sig,
            offsets,
            holds: holds.clone(),
            fails: fails.clone(),
            cells: vec![None; total],
            nodes: 0,
            max_nodes,
        };
        match s.search(0) {
            Ok(Some(env)) => return Ok(ModelSearchOutcome::Found(s.algebra(), env)),
            Ok(None) => {}
            Err(()) => exhausted = true,
        }
    }
    Ok(if exhausted {
        ModelSearchOutcome::Exhausted
    } else {
        ModelSearchOutcome::None
    })
}

/// Derivation search first, then the countermodel search.
pub fn two_discerning_check(eq: &Equation, opts: &DiscerningOptions) -> Result<DiscerningVerdict> {
    let cand = discerning_companion(eq)?;
    let companion = cand.companion.clone();
    let goal_depth = companion.lhs.depth().max(companion.rhs.depth());
    let depth = opts.derivation_depth.max(goal_depth);
    if let Some(derivation) = derive_companion(eq, &companion, depth, opts.max_terms) {
        return Ok(DiscerningVerdict::NotDiscerning {
            companion,
            derivation,
        });
    }
    let sig = signature_of(&[eq, &companion])?;
    match find_countermodel(
        &sig,
        std::slice::from_ref(eq),
        &companion,
        opts.model_bound,
        opts.max_nodes,
    )? {
        ModelSearchOutcome::Found(countermodel, assignment) => Ok(DiscerningVerdict::Discerning {
            companion,
            countermodel,
            assignment,
        }),
        _ => Ok(DiscerningVerdict::Unknown {
            companion,
            model_bound: opts.model_bound,
            derivation_depth: opts.derivation_depth,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_equation;
    use std::collections::HashSet;

    fn max_step_depth(d: &Derivation) -> usize {
        d.steps.iter().map(Term::depth).max().unwrap_or(0)
    }

    fn distinct(d: &Derivation) -> bool {
        d.steps.iter().collect::<HashSet<_>>().len() == d.steps.len()
    }

    fn eq(src: &str) -> Equation {
        parse_equation(src, &Signature::new([("m", 2)]).unwrap()).unwrap()
    }

    #[test]
    fn commutativity_follows_from_the_first_law() {
        let e = eq("m(x,m(y,y)) = m(y,x)");
        let v = two_discerning_check(&e, &DiscerningOptions::default()).unwrap();
        let DiscerningVerdict::NotDiscerning {
            derivation,
            companion,
        } = v
        else {
            panic!("{v:?}")
        };
        assert!(derivation.replays(&e));
        assert!(distinct(&derivation));
        assert!(max_step_depth(&derivation) <= 4);
        assert_eq!(derivation.steps.first(), Some(&companion.lhs));
        assert_eq!(derivation.steps.last(), Some(&companion.rhs));
    }

    #[test]
    fn discerning_equations_have_small_countermodels() {
        for src in [
            "m(m(y,y),x) = m(y,x)",
            "m(m(y,x),y) = m(y,x)",
            "m(m(x,y),y) = m(y,x)",
            "m(y,m(y,x)) = m(y,x)",
            "m(y,m(x,y)) = m(y,x)",
        ] {
            let e = eq(src);
            let v = two_discerning_check(&e, &DiscerningOptions::default()).unwrap();
            let DiscerningVerdict::Discerning {
                countermodel,
                companion,
                assignment,
            } = v
            else {
                panic!("{src}: {v:?}")
            };
            assert!(countermodel.carrier() <= 4);
            assert!(countermodel.satisfies(&e).unwrap(), "{src}");
            assert_eq!(
                countermodel.counterexample(&companion).unwrap(),
                Some(assignment)
            );
        }
    }

    #[test]
    fn search_gives_up_honestly() {
        let e = eq("m(y,m(x,y)) = m(y,x)");
        let opts = DiscerningOptions {
            model_bound: 1,
            derivation_depth: 2,
            max_terms: 10,
            ..DiscerningOptions::default()
        };
        assert!(matches!(
            two_discerning_check(&e, &opts).unwrap(),
            DiscerningVerdict::Unknown { .. }
        ));
    }
}
