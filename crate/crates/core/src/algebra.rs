//! Finite Σ-algebras, their enumeration, and lifting through a monad.

use std::collections::{BTreeMap, HashMap};

use num::bigint::BigUint;
use num::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{structural, Error, Result};
use crate::finite::{count_product, FinFun, Product};
use crate::monads::{Monad, TObject};
use crate::terms::{CompiledTerm, Equation, Signature, Term};

/// Largest lifted table (`|TA|^arity` entries per symbol) built eagerly.
pub const TABULATE_BUDGET: usize = 1 << 20;

/// A Σ-algebra on `{0, …, carrier−1}` given by row-major operation tables,
/// one per symbol in signature order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    sig: Signature,
    carrier: usize,
    tables: Vec<Vec<usize>>,
}

impl FinAlgebra {
    pub fn new(sig: Signature, carrier: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if tables.len() != sig.len() {
            return Err(structural(format!(
                "{} tables for {} symbols",
                tables.len(),
                sig.len()
            )));
        }
        for ((name, arity), table) in sig.ops().iter().zip(&tables) {
            let want = carrier.checked_pow(*arity as u32).unwrap_or(usize::MAX);
            if table.len() != want {
                return Err(structural(format!(
                    "table of `{name}` has {} entries, expected {want}",
                    table.len()
                )));
            }
            if table.iter().any(|&v| v >= carrier) {
                return Err(structural(format!("table of `{name}` leaves the carrier")));
            }
        }
        Ok(Self {
            sig,
            carrier,
            tables,
        })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn table(&self, symbol: &str) -> Option<&[usize]> {
        self.sig.index(symbol).map(|k| self.tables[k].as_slice())
    }

    /// `σₖ(args)`.
    #[inline]
    pub fn op(&self, k: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * self.carrier + a);
        self.tables[k][idx]
    }

    /// The table of symbol `k` as a map `A^arity → A`.
    pub fn op_fun(&self, k: usize) -> FinFun {
        let arity = self.sig.ops()[k].1;
        let dom = self.carrier.pow(arity as u32);
        FinFun::from_fn(dom, self.carrier, |i| self.tables[k][i])
    }

    /// `f♯(t)` for the assignment `env`.
    pub fn interpret(&self, t: &Term, env: &HashMap<String, usize>) -> Result<usize> {
        match t {
            Term::Var(v) => env
                .get(v)
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::App(op, ts) => {
                let k = self
                    .sig
                    .index(op)
                    .ok_or_else(|| structural(format!("unknown symbol `{op}`")))?;
                let args = ts
                    .iter()
                    .map(|s| self.interpret(s, env))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.op(k, &args))
            }
        }
    }

    /// Evaluates a compiled term on variable values `env`.
    #[inline]
    pub fn eval(&self, t: &CompiledTerm, env: &[usize]) -> usize {
        t.eval(env, |k, args| self.op(k, args))
    }

    /// The first assignment of `eq.vars()`, in lexicographic order, on
    /// which the two sides differ.
    pub fn counterexample(&self, eq: &Equation) -> Result<Option<Vec<usize>>> {
        let (l, r) = eq.compile(&self.sig)?;
        Ok(self.counterexample_compiled(&l, &r, eq.vars().len()))
    }

    pub(crate) fn counterexample_compiled(
        &self,
        l: &CompiledTerm,
        r: &CompiledTerm,
        nvars: usize,
    ) -> Option<Vec<usize>> {
        let n = self.carrier;
        let mut env = vec![0usize; nvars];
        if n == 0 {
            return None;
        }
        loop {
            if self.eval(l, &env) != self.eval(r, &env) {
                return Some(env);
            }
            if !odometer(&mut env, n) {
                return None;
            }
        }
    }

    pub fn satisfies(&self, eq: &Equation) -> Result<bool> {
        Ok(self.counterexample(eq)?.is_none())
    }

    pub fn to_json(&self) -> Value {
        let ops: serde_json::Map<String, Value> = self
            .sig
            .ops()
            .iter()
            .zip(&self.tables)
            .map(|((n, _), t)| (n.clone(), json!(t)))
            .collect();
        json!({ "carrier": self.carrier, "ops": ops })
    }

    /// Reads `{"carrier":n,"ops":{"m":[...]}}`, inferring each arity from
    /// its table length. A one-element carrier makes arities ambiguous, so
    /// use [`from_json_with_sig`](Self::from_json_with_sig) there.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawAlgebra = serde_json::from_str(s)?;
        let mut sig = Signature::default();
        let mut tables = Vec::new();
        for (name, table) in raw.ops {
            let arity = infer_arity(raw.carrier, table.len()).ok_or_else(|| {
                structural(format!(
                    "cannot infer the arity of `{name}` from {} entries",
                    table.len()
                ))
            })?;
            sig.add(name, arity)?;
            tables.push(table);
        }
        Self::new(sig, raw.carrier, tables)
    }

    pub fn from_json_with_sig(s: &str, sig: &Signature) -> Result<Self> {
        let mut raw: RawAlgebra = serde_json::from_str(s)?;
        let tables = sig
            .ops()
            .iter()
            .map(|(n, _)| {
                raw.ops
                    .remove(n)
                    .ok_or_else(|| structural(format!("no table for `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sig.clone(), raw.carrier, tables)
    }
}

impl Serialize for FinAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[derive(serde::Deserialize)]
struct RawAlgebra {
    carrier: usize,
    ops: BTreeMap<String, Vec<usize>>,
}

fn infer_arity(carrier: usize, len: usize) -> Option<usize> {
    match carrier {
        0 => (len == 1).then_some(0),
        1 => (len == 1).then_some(0),
        _ => {
            let mut p = 1usize;
            for a in 0..64 {
                if p == len {
                    return Some(a);
                }
                p = p.checked_mul(carrier)?;
            }
            None
        }
    }
}

/// Advances `digits` as a base-`base` counter, last digit fastest.
/// Returns `false` after the last value.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `prepare(t)`: the tuple of projections `A^|V| → A^|Arg(t)|` picking,
/// for each variable occurrence of `t` in reading order, its position in `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prepare {
    pub width: usize,
    pub picks: Vec<usize>,
}

impl Prepare {
    pub fn new(t: &Term, vars: &[String]) -> Result<Self> {
        let picks = t
            .args()
            .iter()
            .map(|a| {
                vars.iter()
                    .position(|v| v == a)
                    .ok_or_else(|| Error::UnboundVariable(a.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            width: vars.len(),
            picks,
        })
    }

    pub fn apply<T: Clone>(&self, input: &[T]) -> Vec<T> {
        self.picks.iter().map(|&i| input[i].clone()).collect()
    }

    /// As a map of finite sets `A^|V| → A^k` for `|A| = carrier`.
    pub fn as_fun(&self, carrier: usize) -> FinFun {
        Product::power(carrier, self.width).projections(&self.picks)
    }

    pub fn is_identity(&self) -> bool {
        self.picks.len() == self.width && self.picks.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Whether every variable is picked exactly once.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.width];
        self.picks.len() == self.width
            && self
                .picks
                .iter()
                .all(|&p| !std::mem::replace(&mut seen[p], true))
    }
}

/// `evaluate(t)`: `t` read as a map `A^|Arg(t)| → A`, each occurrence of a
/// variable being a separate input.
#[derive(Clone, Debug)]
pub struct Evaluate {
    code: CompiledTerm,
    arity: usize,
}

impl Evaluate {
    pub fn new(t: &Term, sig: &Signature) -> Result<Self> {
        let mut next = 0;
        let linear = linearize(t, &mut next);
        let names: Vec<String> = (0..next).map(|i| format!("#{i}")).collect();
        Ok(Self {
            code: linear.compile(sig, &names)?,
            arity: next,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, alg: &FinAlgebra, input: &[usize]) -> usize {
        alg.eval(&self.code, input)
    }

    pub fn compiled(&self) -> &CompiledTerm {
        &self.code
    }
}

fn linearize(t: &Term, next: &mut usize) -> Term {
    match t {
        Term::Var(_) => {
            *next += 1;
            Term::var(format!("#{}", *next - 1))
        }
        Term::App(op, ts) => Term::App(op.clone(), ts.iter().map(|s| linearize(s, next)).collect()),
    }
}

/// Every Σ-algebra on a carrier of fixed size, numbered lexicographically
/// over the concatenated tables.
#[derive(Clone, Debug)]
pub struct AlgebraSpace {
    sig: Signature,
    carrier: usize,
    entries: usize,
    count: u64,
}

impl AlgebraSpace {
    pub fn new(sig: &Signature, carrier: usize, budget: u64) -> Result<Self> {
        let count = Self::count_big(sig, carrier);
        let small = count.to_u64().filter(|&c| c <= budget);
        let Some(count) = small else {
            return Err(Error::Budget {
                what: format!("algebras of size {carrier} over {sig}"),
                count: count.to_string(),
                budget,
            });
        };
        Ok(Self {
            sig: sig.clone(),
            carrier,
            entries: sig.ops().iter().map(|(_, a)| carrier.pow(*a as u32)).sum(),
            count,
        })
    }

    pub fn count_big(sig: &Signature, carrier: usize) -> BigUint {
        let entries = sig
            .ops()
            .iter()
            .map(|(_, a)| count_product(std::iter::repeat_n(carrier, *a)));
        entries.fold(BigUint::from(1u8), |acc, e| {
            acc * num::pow::pow(BigUint::from(carrier), e.to_usize().unwrap_or(usize::MAX))
        })
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn nth(&self, mut index: u64) -> FinAlgebra {
        let n = self.carrier as u64;
        let mut flat = vec![0usize; self.entries];
        for slot in flat.iter_mut().rev() {
            *slot = (index % n) as usize;
            index /= n;
        }
        let mut tables = Vec::with_capacity(self.sig.len());
        let mut at = 0;
        for (_, a) in self.sig.ops() {
            let len = self.carrier.pow(*a as u32);
            tables.push(flat[at..at + len].to_vec());
            at += len;
        }
        FinAlgebra {
            sig: self.sig.clone(),
            carrier: self.carrier,
            tables,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = FinAlgebra> + '_ {
        (0..self.count).map(|i| self.nth(i))
    }

    /// Only the algebras satisfying every equation in `eqs`.
    pub fn filtered<'a>(
        &'a self,
        eqs: &'a [Equation],
    ) -> Result<impl Iterator<Item = FinAlgebra> + 'a> {
        let compiled = eqs
            .iter()
            .map(|e| Ok((e.compile(&self.sig)?, e.vars().len())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.iter().filter(move |alg| {
            compiled
                .iter()
                .all(|((l, r), n)| alg.counterexample_compiled(l, r, *n).is_none())
        }))
    }
}

/// The algebra on `X^width` (`|X| = base`) with one binary operation `m`
/// whose output wires copy input coordinates: wire `j ≤ width` copies
/// coordinate `j` of the left argument, wire `width + j` coordinate `j` of
/// the right one (1-based).
pub fn projection_algebra(base: usize, width: usize, wires: &[usize]) -> Result<FinAlgebra> {
    if wires.len() != width {
        return Err(structural(format!(
            "{} wires for width {width}",
            wires.len()
        )));
    }
    if let Some(w) = wires.iter().find(|&&w| w == 0 || w > 2 * width) {
        return Err(structural(format!(
            "wire {w} out of range 1..={}",
            2 * width
        )));
    }
    let prod = Product::power(base, width);
    let n = prod.size();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let ta = prod.tuple(a);
        for b in 0..n {
            let tb = prod.tuple(b);
            let out: Vec<usize> = wires
                .iter()
                .map(|&w| {
                    if w <= width {
                        ta[w - 1]
                    } else {
                        tb[w - 1 - width]
                    }
                })
                .collect();
            table.push(prod.index(&out));
        }
    }
    FinAlgebra::new(Signature::new([("m", 2)])?, n, vec![table])
}

/// Per-arity `ψⁿ` of every tuple of `TA`, shared by all algebras lifted
/// through the same monad on carriers of the same size.
#[derive(Clone, Debug)]
pub struct LiftContext {
    monad: Monad,
    carrier: usize,
    objects: Vec<TObject>,
    psi: HashMap<usize, Vec<TObject>>,
}

impl LiftContext {
    /// Needs an enumerable `TA` with tables of every arity in `sig` under
    /// [`TABULATE_BUDGET`].
    pub fn new(monad: &Monad, carrier: usize, sig: &Signature) -> Result<Self> {
        let objects = monad.carrier(carrier)?;
        let n = objects.len();
        let mut psi = HashMap::new();
        for &(_, arity) in sig.ops() {
            if psi.contains_key(&arity) {
                continue;
            }
            let entries = n
                .checked_pow(arity as u32)
                .filter(|&e| e <= TABULATE_BUDGET)
                .ok_or_else(|| Error::Budget {
                    what: format!("lifted {arity}-ary table over {}({carrier})", monad.name()),
                    count: count_product(std::iter::repeat_n(n, arity)).to_string(),
                    budget: TABULATE_BUDGET as u64,
                })?;
            let sizes = vec![carrier; arity];
            let mut idx = vec![0usize; arity];
            let mut table = Vec::with_capacity(entries);
            for _ in 0..entries {
                let items: Vec<&TObject> = idx.iter().map(|&i| &objects[i]).collect();
                table.push(monad.psi_n(&items, &sizes)?);
                odometer(&mut idx, n);
            }
            psi.insert(arity, table);
        }
        Ok(Self {
            monad: monad.clone(),
            carrier,
            objects,
            psi,
        })
    }

    pub fn monad(&self) -> &Monad {
        &self.monad
    }

    pub fn objects(&self) -> &[TObject] {
        &self.objects
    }

    /// `T̂A` tabulated on the canonical numbering of `TA`.
    pub fn lift(&self, alg: &FinAlgebra) -> Result<FinAlgebra> {
        if alg.carrier != self.carrier {
            return Err(structural("algebra carrier differs from the lift context"));
        }
        let n = self.objects.len();
        let mut tables = Vec::with_capacity(alg.sig.len());
        for (k, (_, arity)) in alg.sig.ops().iter().enumerate() {
            let sigma = alg.op_fun(k);
            let table = self.psi[arity]
                .iter()
                .map(|p| {
                    let img = self.monad.fmap(&sigma, p)?;
                    self.monad.encode(self.carrier, &img)
                })
                .collect::<Result<Vec<_>>>()?;
            tables.push(table);
        }
        FinAlgebra::new(alg.sig.clone(), n, tables)
    }
}

/// `T̂A`: operations `Tσ ∘ ψⁿ` on elements of `TA`, computed on demand,
/// with an eager table when the carrier is enumerable and small enough.
#[derive(Clone, Debug)]
pub struct LiftedAlgebra {
    base: FinAlgebra,
    monad: Monad,
    table: Option<FinAlgebra>,
}

impl LiftedAlgebra {
    pub fn base(&self) -> &FinAlgebra {
        &self.base
    }

    pub fn monad(&self) -> &Monad {
        &self.monad
    }

    pub fn tabulated(&self) -> Option<&FinAlgebra> {
        self.table.as_ref()
    }

    /// `σ_{T̂A}(args) = Tσ(ψⁿ(args))`; for constants `Tσ(ψ⁰) = η(σ)`.
    pub fn apply(&self, k: usize, args: &[TObject]) -> Result<TObject> {
        let a = self.base.carrier;
        let refs: Vec<&TObject> = args.iter().collect();
        let psi = self.monad.psi_n(&refs, &vec![a; args.len()])?;
        self.monad.fmap(&self.base.op_fun(k), &psi)
    }

    pub fn eval(&self, t: &CompiledTerm, env: &[TObject]) -> Result<TObject> {
        t.try_eval(env, |k, args| self.apply(k, args))
    }

    /// Evaluates both sides of `eq` on the assignment `env` of `eq.vars()`.
    pub fn eval_equation(&self, eq: &Equation, env: &[TObject]) -> Result<(TObject, TObject)> {
        if env.len() != eq.vars().len() {
            return Err(structural(format!(
                "{} values for {} variables",
                env.len(),
                eq.vars().len()
            )));
        }
        for t in env {
            self.monad.validate(self.base.carrier, t)?;
        }
        let (l, r) = eq.compile(&self.base.sig)?;
        Ok((self.eval(&l, env)?, self.eval(&r, env)?))
    }
}

/// Lifts `alg` through `monad`, tabulating when possible.
pub fn lift(monad: &Monad, alg: &FinAlgebra) -> Result<LiftedAlgebra> {
    let table = match LiftContext::new(monad, alg.carrier, &alg.sig) {
        Ok(ctx) => Some(ctx.lift(alg)?),
        Err(Error::Budget { .. } | Error::NotEnumerable { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(LiftedAlgebra {
        base: alg.clone(),
        monad: monad.clone(),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_equation, parse_term};

    fn z2_add() -> FinAlgebra {
        FinAlgebra::new(
            Signature::new([("add", 2)]).unwrap(),
            2,
            vec![vec![0, 1, 1, 0]],
        )
        .unwrap()
    }

    fn left_projection(n: usize) -> FinAlgebra {
        let table = (0..n * n).map(|i| i / n).collect();
        FinAlgebra::new(Signature::new([("m", 2)]).unwrap(), n, vec![table]).unwrap()
    }

    fn env(pairs: &[(&str, usize)]) -> HashMap<String, usize> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn interpret_examples() {
        let a = z2_add();
        let t = parse_term("add(x,x)", a.sig()).unwrap();
        assert_eq!(a.interpret(&t, &env(&[("x", 1)])).unwrap(), 0);
        assert_eq!(a.interpret(&Term::var("x"), &env(&[("x", 1)])).unwrap(), 1);
        let p = left_projection(3);
        let t = parse_term("m(m(x,y),z)", p.sig()).unwrap();
        assert_eq!(
            p.interpret(&t, &env(&[("x", 0), ("y", 1), ("z", 2)]))
                .unwrap(),
            0
        );
        assert!(matches!(
            a.interpret(&t, &HashMap::new()),
            Err(Error::UnboundVariable(_)) | Err(Error::Structural(_))
        ));
    }

    #[test]
    fn satisfaction_examples() {
        let a = z2_add();
        let comm = parse_equation("add(x,y) = add(y,x)", a.sig()).unwrap();
        assert!(a.satisfies(&comm).unwrap());
        let idem = parse_equation("add(x,x) = x", a.sig()).unwrap();
        assert_eq!(a.counterexample(&idem).unwrap(), Some(vec![1]));
        let p = left_projection(3);
        assert!(p
            .satisfies(&parse_equation("m(x,x) = x", p.sig()).unwrap())
            .unwrap());
    }

    #[test]
    fn prepare_and_evaluate() {
        let sig = Signature::new([("m", 2)]).unwrap();
        let xy = ["x".to_string(), "y".to_string()];
        let t = parse_term("m(m(x,y),x)", &sig).unwrap();
        assert_eq!(Prepare::new(&t, &xy).unwrap().picks, vec![0, 1, 0]);
        assert!(Prepare::new(&Term::var("x"), &xy[..1])
            .unwrap()
            .is_identity());
        let t = parse_term("m(y,y)", &sig).unwrap();
        assert_eq!(Prepare::new(&t, &xy).unwrap().picks, vec![1, 1]);
        let a = z2_add();
        let e = Evaluate::new(&parse_term("add(x,y)", a.sig()).unwrap(), a.sig()).unwrap();
        assert_eq!(e.apply(&a, &[1, 1]), 0);
        let e = Evaluate::new(&Term::var("x"), a.sig()).unwrap();
        assert_eq!(e.apply(&a, &[1]), 1);
    }

    #[test]
    fn algebra_counts() {
        let m = Signature::new([("m", 2)]).unwrap();
        let space = AlgebraSpace::new(&m, 2, u64::MAX).unwrap();
        assert_eq!(space.count(), 16);
        let idem = parse_equation("m(x,x) = x", &m).unwrap();
        assert_eq!(
            space.filtered(std::slice::from_ref(&idem)).unwrap().count(),
            4
        );
        let mz = Signature::new([("m", 2), ("zero", 0)]).unwrap();
        assert_eq!(AlgebraSpace::new(&mz, 3, u64::MAX).unwrap().count(), 59049);
        assert!(matches!(
            AlgebraSpace::new(&mz, 3, 1000),
            Err(Error::Budget { .. })
        ));
        let first = space.nth(0);
        assert_eq!(first.tables()[0], vec![0, 0, 0, 0]);
        assert_eq!(space.nth(1).tables()[0], vec![0, 0, 0, 1]);
    }

    #[test]
    fn projection_algebras() {
        let m = projection_algebra(2, 2, &[1, 4]).unwrap();
        let sig = m.sig().clone();
        // m((a,b),(c,d)) = (a,d): (0,1)·(1,0) = (0,0).
        assert_eq!(m.op(0, &[1, 2]), 0);
        assert!(m
            .satisfies(&parse_equation("m(x,x) = x", &sig).unwrap())
            .unwrap());
        let m5 = projection_algebra(2, 5, &[1, 7, 2, 6, 4]).unwrap();
        let eq = parse_equation("m(m(y,x),z) = m(m(y,m(x,x)),z)", &sig).unwrap();
        assert!(m5.satisfies(&eq).unwrap());
        let m1 = projection_algebra(3, 1, &[1]).unwrap();
        assert!(m1
            .satisfies(&parse_equation("m(x,y) = x", &sig).unwrap())
            .unwrap());
        assert!(projection_algebra(2, 2, &[1, 5]).is_err());
        assert!(projection_algebra(2, 2, &[1]).is_err());
    }

    #[test]
    fn lifted_operations() {
        let p = Monad::powerset();
        let alg = FinAlgebra::new(
            Signature::new([("m", 2), ("zero", 0)]).unwrap(),
            3,
            vec![(0..9).map(|i| (i / 3 + i % 3) % 3).collect(), vec![0]],
        )
        .unwrap();
        let lifted = lift(&p, &alg).unwrap();
        // {1}·{1,2} = {2, 0}.
        let r = lifted
            .apply(0, &[TObject::subset(3, &[1]), TObject::subset(3, &[1, 2])])
            .unwrap();
        assert_eq!(r, TObject::subset(3, &[0, 2]));
        assert_eq!(lifted.apply(1, &[]).unwrap(), p.unit(3, 0));
        let table = lifted.tabulated().unwrap();
        let a = p.encode(3, &TObject::subset(3, &[1])).unwrap();
        let b = p.encode(3, &TObject::subset(3, &[1, 2])).unwrap();
        assert_eq!(p.decode(3, table.op(0, &[a, b])), r);

        let w = Monad::writer(crate::finite::MonoidTable::z2(), "z2").unwrap();
        let lw = lift(&w, &alg).unwrap();
        let g = |v| TObject::Writer {
            weight: 1,
            value: v,
        };
        assert_eq!(
            lw.apply(0, &[g(1), g(2)]).unwrap(),
            TObject::Writer {
                weight: 0,
                value: 0
            }
        );
        let d = lift(&Monad::distribution(), &alg).unwrap();
        assert!(d.tabulated().is_none());
        assert_eq!(d.apply(1, &[]).unwrap(), Monad::distribution().unit(3, 0));
    }

    #[test]
    fn json_round_trip() {
        let a = z2_add();
        let s = a.to_json().to_string();
        assert_eq!(s, r#"{"carrier":2,"ops":{"add":[0,1,1,0]}}"#);
        assert_eq!(FinAlgebra::from_json_str(&s).unwrap(), a);
        assert_eq!(FinAlgebra::from_json_with_sig(&s, a.sig()).unwrap(), a);
        assert!(FinAlgebra::from_json_str(r#"{"carrier":2,"ops":{"m":[0,1,1]}}"#).is_err());
    }
}
