//! Signatures, terms, equations and theories.
//!
//! Terms are written in prefix form: `m(m(x,y),z)` for `(x·y)·z`.
//! Identifiers declared in the signature are operation symbols, every
//! other identifier is a variable.

mod classify;
mod parse;

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{structural, Error, Result};

pub use classify::{classify, discerning_companion, DiscerningCandidate, EquationClass, Side};
pub use parse::{parse_equation, parse_term, parse_theory};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    ops: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut sig = Self::default();
        for (name, arity) in ops {
            sig.add(name, arity)?;
        }
        Ok(sig)
    }

    pub fn add(&mut self, name: impl Into<String>, arity: usize) -> Result<()> {
        let name = name.into();
        if !is_ident(&name) {
            return Err(structural(format!("`{name}` is not a valid symbol name")));
        }
        if self.arity(&name).is_some() {
            return Err(structural(format!("symbol `{name}` declared twice")));
        }
        self.ops.push((name, arity));
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index(name).map(|i| self.ops[i].1)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|(n, _)| n == name)
    }

    pub fn ops(&self) -> &[(String, usize)] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.1).max().unwrap_or(0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ops.iter().map(|(n, a)| format!("{n}/{a}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(op.into(), args)
    }

    /// Variables without repetition, in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for v in self.args() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Variable occurrences left to right, with multiplicity.
    pub fn args(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_args(&mut out);
        out
    }

    fn collect_args(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::App(_, ts) => ts.iter().for_each(|t| t.collect_args(out)),
        }
    }

    /// Occurrences of `var`.
    pub fn count(&self, var: &str) -> usize {
        match self {
            Term::Var(v) => usize::from(v == var),
            Term::App(_, ts) => ts.iter().map(|t| t.count(var)).sum(),
        }
    }

    /// Nesting depth; variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, ts) => 1 + ts.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, ts) => 1 + ts.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, subst: &HashMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(op, ts) => {
                Term::App(op.clone(), ts.iter().map(|t| t.substitute(subst)).collect())
            }
        }
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(v)),
            Term::App(op, ts) => Term::App(op.clone(), ts.iter().map(|t| t.rename(f)).collect()),
        }
    }

    /// Checks symbol arities against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(v) => {
                if sig.arity(v).is_some() {
                    return Err(structural(format!("`{v}` is an operation symbol")));
                }
                Ok(())
            }
            Term::App(op, ts) => match sig.arity(op) {
                Some(a) if a == ts.len() => ts.iter().try_for_each(|t| t.check(sig)),
                Some(a) => Err(structural(format!(
                    "`{op}` takes {a} arguments, got {}",
                    ts.len()
                ))),
                None => Err(structural(format!("unknown symbol `{op}`"))),
            },
        }
    }

    /// Compiles against `sig` with variables numbered by `vars`.
    pub fn compile(&self, sig: &Signature, vars: &[String]) -> Result<CompiledTerm> {
        let mut code = Vec::new();
        self.emit(sig, vars, &mut code)?;
        Ok(CompiledTerm { code })
    }

    fn emit(&self, sig: &Signature, vars: &[String], code: &mut Vec<Instr>) -> Result<()> {
        match self {
            Term::Var(v) => {
                let i = vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                code.push(Instr::Var(i));
            }
            Term::App(op, ts) => {
                let k = sig
                    .index(op)
                    .ok_or_else(|| structural(format!("unknown symbol `{op}`")))?;
                for t in ts {
                    t.emit(sig, vars, code)?;
                }
                code.push(Instr::Op(k, ts.len()));
            }
        }
        Ok(())
    }

    /// Every subterm, outermost first, with its position path.
    pub fn positions(&self) -> Vec<(Vec<usize>, &Term)> {
        let mut out = Vec::new();
        self.collect_positions(&mut Vec::new(), &mut out);
        out
    }

    fn collect_positions<'a>(
        &'a self,
        path: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, &'a Term)>,
    ) {
        out.push((path.clone(), self));
        if let Term::App(_, ts) = self {
            for (i, t) in ts.iter().enumerate() {
                path.push(i);
                t.collect_positions(path, out);
                path.pop();
            }
        }
    }

    /// Copy of `self` with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[usize], with: Term) -> Term {
        match path.split_first() {
            None => with,
            Some((&i, rest)) => match self {
                Term::App(op, ts) => {
                    let mut ts = ts.clone();
                    ts[i] = ts[i].replace_at(rest, with);
                    Term::App(op.clone(), ts)
                }
                Term::Var(_) => panic!("position runs through a variable"),
            },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(op, ts) if ts.is_empty() => write!(f, "{op}"),
            Term::App(op, ts) => {
                write!(f, "{op}(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Op(usize, usize),
}

/// A term flattened to postfix code over numbered variables and symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledTerm {
    code: Vec<Instr>,
}

impl CompiledTerm {
    /// Evaluates with `env[i]` for variable `i` and `apply(symbol, args)`
    /// for operations.
    pub fn eval<T: Clone>(&self, env: &[T], mut apply: impl FnMut(usize, &[T]) -> T) -> T {
        let mut stack: Vec<T> = Vec::with_capacity(self.code.len());
        for ins in &self.code {
            match *ins {
                Instr::Var(i) => stack.push(env[i].clone()),
                Instr::Op(k, n) => {
                    let at = stack.len() - n;
                    let v = apply(k, &stack[at..]);
                    stack.truncate(at);
                    stack.push(v);
                }
            }
        }
        stack.pop().expect("compiled term is non-empty")
    }

    /// Like [`eval`](Self::eval) with a fallible `apply`.
    pub fn try_eval<T: Clone, E>(
        &self,
        env: &[T],
        mut apply: impl FnMut(usize, &[T]) -> std::result::Result<T, E>,
    ) -> std::result::Result<T, E> {
        let mut stack: Vec<T> = Vec::with_capacity(self.code.len());
        for ins in &self.code {
            match *ins {
                Instr::Var(i) => stack.push(env[i].clone()),
                Instr::Op(k, n) => {
                    let at = stack.len() - n;
                    let v = apply(k, &stack[at..])?;
                    stack.truncate(at);
                    stack.push(v);
                }
            }
        }
        Ok(stack.pop().expect("compiled term is non-empty"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    /// Rejects equations without variables.
    pub fn new(lhs: Term, rhs: Term) -> Result<Self> {
        let eq = Self { lhs, rhs };
        if eq.vars().is_empty() {
            return Err(structural(format!("equation {eq} has no variables")));
        }
        Ok(eq)
    }

    /// `Var(lhs) ∪ Var(rhs)`, first occurrence in lhs then rhs.
    pub fn vars(&self) -> Vec<String> {
        let mut out = self.lhs.vars();
        for v in self.rhs.vars() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        self.lhs.check(sig)?;
        self.rhs.check(sig)
    }

    pub fn flipped(&self) -> Equation {
        Equation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    /// Both sides compiled over [`vars`](Self::vars).
    pub fn compile(&self, sig: &Signature) -> Result<(CompiledTerm, CompiledTerm)> {
        let vars = self.vars();
        Ok((self.lhs.compile(sig, &vars)?, self.rhs.compile(sig, &vars)?))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl Serialize for Equation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub sig: Signature,
    pub equations: Vec<Equation>,
}

/// All terms over `sig` and `vars` of depth at most `depth`, in order of
/// increasing depth.
pub fn terms_up_to_depth(sig: &Signature, vars: &[&str], depth: usize) -> Vec<Term> {
    let mut by_depth: Vec<Vec<Term>> = vec![vars.iter().map(|v| Term::var(*v)).collect()];
    by_depth[0].extend(
        sig.ops()
            .iter()
            .filter(|(_, a)| *a == 0)
            .map(|(n, _)| Term::app(n.clone(), vec![])),
    );
    for d in 1..=depth {
        let shallower: Vec<Term> = by_depth.iter().flatten().cloned().collect();
        let mut level = Vec::new();
        for (op, arity) in sig.ops().iter().filter(|(_, a)| *a > 0) {
            // Argument tuples drawn from all shallower terms, keeping those
            // with at least one argument at depth exactly d - 1.
            let n = shallower.len();
            for code in 0..n.pow(*arity as u32) {
                let mut rest = code;
                let mut args = vec![Term::var(""); *arity];
                for slot in args.iter_mut().rev() {
                    *slot = shallower[rest % n].clone();
                    rest /= n;
                }
                if args.iter().any(|t| t.depth() == d - 1) {
                    level.push(Term::app(op.clone(), args));
                }
            }
        }
        by_depth.push(level);
    }
    by_depth.into_iter().flatten().collect()
}
