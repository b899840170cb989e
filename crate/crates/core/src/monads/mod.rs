//! Monoidal monads on finite sets.
//!
//! A [`Monad`] is one of seven built-in families. It never stores a set
//! `TX`; instead every operation takes the size of `X` and works on
//! [`TObject`] values. Enumerable monads also number the elements of `TX`
//! densely (`encode`/`decode`), which is what lets lifted algebras be
//! tabulated.

pub mod laws;
mod tobject;

use std::path::Path;

use num::bigint::BigUint;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rand::seq::index::sample as sample_indices;
use rand::Rng;
use serde::Serialize;

use crate::error::{structural, Error, Result};
use crate::finite::{FinFun, MonoidTable, SemiringTable};

pub use tobject::TObject;

/// Largest `|TX|` that [`Monad::carrier_len`] will hand out.
pub const MAX_CARRIER: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tier {
    /// `TX` is finite for finite `X` and can be listed.
    Enumerable,
    /// `TX` is infinite; elements are drawn at random.
    Sampleable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonadKind {
    Powerset,
    NonEmptyPowerset,
    /// Multisets with multiplicities in a finite commutative semiring.
    Multiset(SemiringTable),
    Distribution,
    Maybe,
    /// `M × X` for a finite commutative monoid `M`.
    Writer(MonoidTable),
    /// `X^A` with `|A| = exponent`.
    Reader {
        exponent: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monad {
    kind: MonadKind,
    name: String,
    max_denominator: u32,
    sabotage_psi: bool,
}

impl Monad {
    fn from_kind(kind: MonadKind, name: impl Into<String>) -> Self {
        Self {
            kind,
            name: name.into(),
            max_denominator: 16,
            sabotage_psi: false,
        }
    }

    pub fn powerset() -> Self {
        Self::from_kind(MonadKind::Powerset, "powerset")
    }

    pub fn nonempty_powerset() -> Self {
        Self::from_kind(MonadKind::NonEmptyPowerset, "powerset+")
    }

    pub fn distribution() -> Self {
        Self::from_kind(MonadKind::Distribution, "dist")
    }

    pub fn maybe() -> Self {
        Self::from_kind(MonadKind::Maybe, "maybe")
    }

    pub fn reader(exponent: usize) -> Result<Self> {
        if exponent == 0 {
            return Err(structural("reader exponent must be positive"));
        }
        Ok(Self::from_kind(
            MonadKind::Reader { exponent },
            format!("reader:{exponent}"),
        ))
    }

    /// The multiset monad over `s`, which must be a commutative semiring.
    pub fn multiset(s: SemiringTable, label: &str) -> Result<Self> {
        s.validate()
            .map_err(|v| Error::InvalidTable(format!("{} at {:?}", v.axiom, v.witness)))?;
        for a in 0..s.size {
            for b in 0..s.size {
                if s.mul(a, b) != s.mul(b, a) {
                    return Err(Error::InvalidTable(format!(
                        "multiplication is not commutative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self::from_kind(
            MonadKind::Multiset(s),
            format!("multiset:{label}"),
        ))
    }

    /// The writer monad over `m`, which must be commutative.
    pub fn writer(m: MonoidTable, label: &str) -> Result<Self> {
        let mut m = m;
        m.commutative = true;
        m.validate()
            .map_err(|v| Error::InvalidTable(format!("{} at {:?}", v.axiom, v.witness)))?;
        Ok(Self::from_kind(
            MonadKind::Writer(m),
            format!("writer:{label}"),
        ))
    }

    /// Parses a selector such as `powerset+`, `reader:2` or
    /// `writer:z2.json`. Table arguments are read as files when they exist
    /// and otherwise looked up among the built-in tables by stem.
    pub fn from_selector(selector: &str) -> Result<Self> {
        let unknown = || Error::UnknownMonad(selector.to_string());
        let (head, arg) = match selector.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (selector, None),
        };
        match (head, arg) {
            ("powerset", None) => Ok(Self::powerset()),
            ("powerset+", None) => Ok(Self::nonempty_powerset()),
            ("maybe", None) => Ok(Self::maybe()),
            ("dist", None) => Ok(Self::distribution()),
            ("reader", Some(k)) => Self::reader(k.parse().map_err(|_| unknown())?),
            ("writer", Some(file)) => {
                let (table, label) = if Path::new(file).is_file() {
                    (MonoidTable::from_path(file)?, stem(file))
                } else {
                    let label = stem(file);
                    let table = match label.as_str() {
                        "z2" => MonoidTable::z2(),
                        "trivial" => MonoidTable::trivial(),
                        "semilattice" => MonoidTable::semilattice2(),
                        _ => return Err(unknown()),
                    };
                    (table, label)
                };
                Self::writer(table, &label)
            }
            ("multiset", Some(file)) => {
                let (table, label) = if Path::new(file).is_file() {
                    (SemiringTable::from_path(file)?, stem(file))
                } else {
                    let label = stem(file);
                    let table = match label.as_str() {
                        "f2" => SemiringTable::f2(),
                        "boolean" => SemiringTable::boolean(),
                        "trivial" => SemiringTable::trivial(),
                        _ => return Err(unknown()),
                    };
                    (table, label)
                };
                Self::multiset(table, &label)
            }
            _ => Err(unknown()),
        }
    }

    /// Sets the largest denominator used when sampling distributions.
    pub fn with_max_denominator(mut self, bound: u32) -> Self {
        self.max_denominator = bound.max(1);
        self
    }

    /// Test hook: replaces `ψ` by `T(const 0) ∘ ψ`, which breaks the
    /// unit law of the monoidal structure.
    #[doc(hidden)]
    pub fn sabotaged(mut self) -> Self {
        self.sabotage_psi = true;
        self.name.push_str("!sabotaged");
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &MonadKind {
        &self.kind
    }

    pub fn tier(&self) -> Tier {
        match self.kind {
            MonadKind::Distribution => Tier::Sampleable,
            _ => Tier::Enumerable,
        }
    }

    /// `|TX|`, or `None` when it is infinite.
    pub fn carrier_size(&self, x: usize) -> Option<BigUint> {
        let big = |n: usize| BigUint::from(n);
        Some(match &self.kind {
            MonadKind::Powerset => BigUint::one() << x,
            MonadKind::NonEmptyPowerset => (BigUint::one() << x) - BigUint::one(),
            MonadKind::Multiset(s) => big(s.size).pow(x as u32),
            MonadKind::Distribution => match x {
                0 => BigUint::zero(),
                1 => BigUint::one(),
                _ => return None,
            },
            MonadKind::Maybe => big(x + 1),
            MonadKind::Writer(m) => big(m.size * x),
            MonadKind::Reader { exponent } => big(x).pow(*exponent as u32),
        })
    }

    /// `|TX|` as a `usize`, refusing infinite or oversized carriers.
    pub fn carrier_len(&self, x: usize) -> Result<usize> {
        let size = self.carrier_size(x).ok_or_else(|| Error::NotEnumerable {
            monad: self.name.clone(),
            size: x,
        })?;
        match size.to_usize() {
            Some(n) if n <= MAX_CARRIER => Ok(n),
            _ => Err(Error::Budget {
                what: format!("{} over {x} elements", self.name),
                count: size.to_string(),
                budget: MAX_CARRIER as u64,
            }),
        }
    }

    /// All of `TX` in canonical order.
    pub fn carrier(&self, x: usize) -> Result<Vec<TObject>> {
        let n = self.carrier_len(x)?;
        Ok((0..n).map(|i| self.decode(x, i)).collect())
    }

    /// The `index`-th element of `TX`. Panics when out of range.
    pub fn decode(&self, x: usize, index: usize) -> TObject {
        match &self.kind {
            MonadKind::Powerset => TObject::Subset((0..x).map(|b| index >> b & 1 == 1).collect()),
            MonadKind::NonEmptyPowerset => {
                TObject::Subset((0..x).map(|b| (index + 1) >> b & 1 == 1).collect())
            }
            MonadKind::Multiset(s) => TObject::Multiset(digits(index, s.size, x)),
            MonadKind::Distribution => {
                assert!(
                    x == 1 && index == 0,
                    "distribution carrier is not enumerable"
                );
                TObject::Dist(vec![BigRational::one()])
            }
            MonadKind::Maybe => TObject::Maybe(index.checked_sub(1)),
            MonadKind::Writer(_) => TObject::Writer {
                weight: index / x,
                value: index % x,
            },
            MonadKind::Reader { exponent } => TObject::Reader(digits(index, x, *exponent)),
        }
    }

    /// Inverse of [`decode`](Self::decode).
    pub fn encode(&self, x: usize, t: &TObject) -> Result<usize> {
        self.validate(x, t)?;
        Ok(match (&self.kind, t) {
            (MonadKind::Powerset, TObject::Subset(bits)) => mask(bits),
            (MonadKind::NonEmptyPowerset, TObject::Subset(bits)) => mask(bits) - 1,
            (MonadKind::Multiset(s), TObject::Multiset(v)) => undigits(v, s.size),
            (MonadKind::Distribution, TObject::Dist(_)) => {
                if x != 1 {
                    return Err(Error::NotEnumerable {
                        monad: self.name.clone(),
                        size: x,
                    });
                }
                0
            }
            (MonadKind::Maybe, TObject::Maybe(m)) => m.map_or(0, |v| v + 1),
            (MonadKind::Writer(_), TObject::Writer { weight, value }) => weight * x + value,
            (MonadKind::Reader { .. }, TObject::Reader(v)) => undigits(v, x),
            _ => unreachable!("validate checked the variant"),
        })
    }

    /// Checks that `t` is a well-formed element of `TX`.
    pub fn validate(&self, x: usize, t: &TObject) -> Result<()> {
        let bad = |why: &str| structural(format!("{t} is not in {}({x}): {why}", self.name));
        match (&self.kind, t) {
            (MonadKind::Powerset, TObject::Subset(bits)) => {
                if bits.len() != x {
                    return Err(bad("wrong length"));
                }
            }
            (MonadKind::NonEmptyPowerset, TObject::Subset(bits)) => {
                if bits.len() != x {
                    return Err(bad("wrong length"));
                }
                if !bits.iter().any(|&b| b) {
                    return Err(bad("empty subset"));
                }
            }
            (MonadKind::Multiset(s), TObject::Multiset(v)) => {
                if v.len() != x {
                    return Err(bad("wrong length"));
                }
                if v.iter().any(|&e| e >= s.size) {
                    return Err(bad("entry outside the semiring"));
                }
            }
            (MonadKind::Distribution, TObject::Dist(w)) => {
                if w.len() != x {
                    return Err(bad("wrong length"));
                }
                if w.iter().any(|p| p.is_negative()) {
                    return Err(bad("negative weight"));
                }
                if w.iter().fold(BigRational::zero(), |a, p| a + p) != BigRational::one() {
                    return Err(bad("weights do not sum to 1"));
                }
            }
            (MonadKind::Maybe, TObject::Maybe(m)) => {
                if m.is_some_and(|v| v >= x) {
                    return Err(bad("element out of range"));
                }
            }
            (MonadKind::Writer(m), TObject::Writer { weight, value }) => {
                if *weight >= m.size || *value >= x {
                    return Err(bad("component out of range"));
                }
            }
            (MonadKind::Reader { exponent }, TObject::Reader(v)) => {
                if v.len() != *exponent {
                    return Err(bad("wrong length"));
                }
                if v.iter().any(|&e| e >= x) {
                    return Err(bad("element out of range"));
                }
            }
            _ => return Err(bad("wrong kind of object")),
        }
        Ok(())
    }

    /// A random element of `TX`. Enumerable carriers are sampled
    /// uniformly. Distributions pick a support uniformly among non-empty
    /// subsets of at most `max_denominator` points, then a denominator
    /// `d` and a random composition of `d` into positive parts.
    pub fn sample<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> Result<TObject> {
        if self.carrier_size(x).is_some_and(|n| n.is_zero()) {
            return Err(structural(format!("{}({x}) is empty", self.name)));
        }
        Ok(match &self.kind {
            MonadKind::Powerset => TObject::Subset((0..x).map(|_| rng.gen()).collect()),
            MonadKind::NonEmptyPowerset => loop {
                let bits: Vec<bool> = (0..x).map(|_| rng.gen()).collect();
                if bits.iter().any(|&b| b) {
                    break TObject::Subset(bits);
                }
            },
            MonadKind::Multiset(s) => {
                TObject::Multiset((0..x).map(|_| rng.gen_range(0..s.size)).collect())
            }
            MonadKind::Distribution => {
                let bound = self.max_denominator as usize;
                let support: Vec<usize> = loop {
                    let picked: Vec<usize> = (0..x).filter(|_| rng.gen::<bool>()).collect();
                    if !picked.is_empty() && picked.len() <= bound {
                        break picked;
                    }
                };
                let k = support.len();
                let d = rng.gen_range(k..=bound.max(k));
                let mut cuts: Vec<usize> = if k > 1 {
                    sample_indices(rng, d - 1, k - 1)
                        .into_iter()
                        .map(|c| c + 1)
                        .collect()
                } else {
                    Vec::new()
                };
                cuts.sort_unstable();
                cuts.push(d);
                let mut w = vec![BigRational::zero(); x];
                let mut prev = 0;
                for (&pt, &cut) in support.iter().zip(&cuts) {
                    w[pt] = BigRational::new(BigInt::from(cut - prev), BigInt::from(d));
                    prev = cut;
                }
                TObject::Dist(w)
            }
            MonadKind::Maybe => TObject::Maybe(rng.gen_range(0..=x).checked_sub(1)),
            MonadKind::Writer(m) => TObject::Writer {
                weight: rng.gen_range(0..m.size),
                value: rng.gen_range(0..x),
            },
            MonadKind::Reader { exponent } => {
                TObject::Reader((0..*exponent).map(|_| rng.gen_range(0..x)).collect())
            }
        })
    }

    /// `η_X(a)`.
    pub fn unit(&self, x: usize, a: usize) -> TObject {
        debug_assert!(a < x);
        match &self.kind {
            MonadKind::Powerset | MonadKind::NonEmptyPowerset => TObject::subset(x, &[a]),
            MonadKind::Multiset(s) => {
                let mut v = vec![s.zero; x];
                v[a] = s.one;
                TObject::Multiset(v)
            }
            MonadKind::Distribution => {
                let mut w = vec![BigRational::zero(); x];
                w[a] = BigRational::one();
                TObject::Dist(w)
            }
            MonadKind::Maybe => TObject::Maybe(Some(a)),
            MonadKind::Writer(m) => TObject::Writer {
                weight: m.unit,
                value: a,
            },
            MonadKind::Reader { exponent } => TObject::Reader(vec![a; *exponent]),
        }
    }

    /// `Tf(t)`.
    pub fn fmap(&self, f: &FinFun, t: &TObject) -> Result<TObject> {
        let (x, y) = (f.dom().size(), f.cod().size());
        self.validate(x, t)?;
        Ok(match (&self.kind, t) {
            (MonadKind::Powerset | MonadKind::NonEmptyPowerset, TObject::Subset(bits)) => {
                let mut out = vec![false; y];
                for (i, &b) in bits.iter().enumerate() {
                    if b {
                        out[f.apply(i)] = true;
                    }
                }
                TObject::Subset(out)
            }
            (MonadKind::Multiset(s), TObject::Multiset(v)) => {
                let mut out = vec![s.zero; y];
                for (i, &e) in v.iter().enumerate() {
                    let j = f.apply(i);
                    out[j] = s.add(out[j], e);
                }
                TObject::Multiset(out)
            }
            (MonadKind::Distribution, TObject::Dist(w)) => {
                let mut out = vec![BigRational::zero(); y];
                for (i, p) in w.iter().enumerate() {
                    if !p.is_zero() {
                        out[f.apply(i)] += p;
                    }
                }
                TObject::Dist(out)
            }
            (MonadKind::Maybe, TObject::Maybe(m)) => TObject::Maybe(m.map(|v| f.apply(v))),
            (MonadKind::Writer(_), TObject::Writer { weight, value }) => TObject::Writer {
                weight: *weight,
                value: f.apply(*value),
            },
            (MonadKind::Reader { .. }, TObject::Reader(v)) => {
                TObject::Reader(v.iter().map(|&e| f.apply(e)).collect())
            }
            _ => unreachable!("validate checked the variant"),
        })
    }

    /// `μ_X(T(i ↦ inner[i])(outer))` for `outer ∈ T(k)` and
    /// `inner[i] ∈ TX`: Kleisli extension along a finite family.
    pub fn bind(&self, outer: &TObject, inner: &[TObject], x: usize) -> Result<TObject> {
        let k = inner.len();
        self.validate(k, outer)?;
        for t in inner {
            self.validate(x, t)?;
        }
        Ok(match (&self.kind, outer) {
            (MonadKind::Powerset | MonadKind::NonEmptyPowerset, TObject::Subset(bits)) => {
                let mut out = vec![false; x];
                for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
                    if let TObject::Subset(inner_bits) = &inner[i] {
                        for (o, &b) in out.iter_mut().zip(inner_bits) {
                            *o |= b;
                        }
                    }
                }
                TObject::Subset(out)
            }
            (MonadKind::Multiset(s), TObject::Multiset(coeffs)) => {
                let mut out = vec![s.zero; x];
                for (i, &c) in coeffs.iter().enumerate() {
                    if let TObject::Multiset(v) = &inner[i] {
                        for (o, &e) in out.iter_mut().zip(v) {
                            *o = s.add(*o, s.mul(c, e));
                        }
                    }
                }
                TObject::Multiset(out)
            }
            (MonadKind::Distribution, TObject::Dist(weights)) => {
                let mut out = vec![BigRational::zero(); x];
                for (i, p) in weights.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    if let TObject::Dist(w) = &inner[i] {
                        for (o, q) in out.iter_mut().zip(w) {
                            if !q.is_zero() {
                                *o += p * q;
                            }
                        }
                    }
                }
                TObject::Dist(out)
            }
            (MonadKind::Maybe, TObject::Maybe(m)) => match m {
                None => TObject::Maybe(None),
                Some(i) => inner[*i].clone(),
            },
            (MonadKind::Writer(m), TObject::Writer { weight, value }) => match &inner[*value] {
                TObject::Writer {
                    weight: w2,
                    value: v2,
                } => TObject::Writer {
                    weight: m.op(*weight, *w2),
                    value: *v2,
                },
                _ => unreachable!(),
            },
            (MonadKind::Reader { .. }, TObject::Reader(r)) => TObject::Reader(
                r.iter()
                    .enumerate()
                    .map(|(a, &i)| match &inner[i] {
                        TObject::Reader(v) => v[a],
                        _ => unreachable!(),
                    })
                    .collect(),
            ),
            _ => unreachable!("validate checked the variant"),
        })
    }

    /// `μ_X` on an element of `TTX`, where the inner layer is encoded by
    /// the canonical numbering of `TX`. Needs an enumerable `TX`.
    pub fn mult(&self, x: usize, tt: &TObject) -> Result<TObject> {
        let carrier = self.carrier(x)?;
        self.bind(tt, &carrier, x)
    }

    /// `ψ_{X,Y}(u, v)` as an element of `T(X × Y)` in row-major order.
    pub fn psi(&self, u: &TObject, x: usize, v: &TObject, y: usize) -> Result<TObject> {
        self.validate(x, u)?;
        self.validate(y, v)?;
        let out = match (&self.kind, u, v) {
            (
                MonadKind::Powerset | MonadKind::NonEmptyPowerset,
                TObject::Subset(a),
                TObject::Subset(b),
            ) => TObject::Subset(
                a.iter()
                    .flat_map(|&p| b.iter().map(move |&q| p && q))
                    .collect(),
            ),
            (MonadKind::Multiset(s), TObject::Multiset(a), TObject::Multiset(b)) => {
                TObject::Multiset(
                    a.iter()
                        .flat_map(|&p| b.iter().map(move |&q| s.mul(p, q)))
                        .collect(),
                )
            }
            (MonadKind::Distribution, TObject::Dist(a), TObject::Dist(b)) => TObject::Dist(
                a.iter()
                    .flat_map(|p| b.iter().map(move |q| p * q))
                    .collect(),
            ),
            (MonadKind::Maybe, TObject::Maybe(a), TObject::Maybe(b)) => {
                TObject::Maybe(a.zip(*b).map(|(i, j)| i * y + j))
            }
            (
                MonadKind::Writer(m),
                TObject::Writer {
                    weight: w1,
                    value: i,
                },
                TObject::Writer {
                    weight: w2,
                    value: j,
                },
            ) => TObject::Writer {
                weight: m.op(*w1, *w2),
                value: i * y + j,
            },
            (MonadKind::Reader { .. }, TObject::Reader(a), TObject::Reader(b)) => {
                TObject::Reader(a.iter().zip(b).map(|(&i, &j)| i * y + j).collect())
            }
            _ => unreachable!("validate checked the variant"),
        };
        if self.sabotage_psi && x * y > 0 {
            let collapse = FinFun::constant(x * y, x * y, 0);
            return self.fmap(&collapse, &out);
        }
        Ok(out)
    }

    /// `ψ⁰ = η₁`.
    pub fn psi0(&self) -> TObject {
        self.unit(1, 0)
    }

    /// `ψⁿ` on elements of `TX₁, …, TXₙ`, left-nested. Row-major
    /// indexing makes the left-nested product index coincide with the flat
    /// one, so no re-indexing step is needed.
    pub fn psi_n(&self, items: &[&TObject], sizes: &[usize]) -> Result<TObject> {
        if items.len() != sizes.len() {
            return Err(structural("psi_n: object and size lists differ in length"));
        }
        let Some((first, rest)) = items.split_first() else {
            return Ok(self.psi0());
        };
        self.validate(sizes[0], first)?;
        let mut acc = (*first).clone();
        let mut acc_size = sizes[0];
        for (t, &s) in rest.iter().zip(&sizes[1..]) {
            acc = self.psi(&acc, acc_size, t, s)?;
            acc_size *= s;
        }
        Ok(acc)
    }

    /// `χ_{X,Y} = ⟨Tπ₁, Tπ₂⟩`.
    pub fn chi(&self, w: &TObject, x: usize, y: usize) -> Result<(TObject, TObject)> {
        let p1 = FinFun::from_fn(x * y, x, |i| i / y);
        let p2 = FinFun::from_fn(x * y, y, |i| i % y);
        Ok((self.fmap(&p1, w)?, self.fmap(&p2, w)?))
    }

    /// `χⁿ = ⟨Tπ₁, …, Tπₙ⟩`.
    pub fn chi_n(&self, w: &TObject, sizes: &[usize]) -> Result<Vec<TObject>> {
        let prod = crate::finite::Product::new(sizes.to_vec());
        (0..sizes.len())
            .map(|j| self.fmap(&prod.projection(j), w))
            .collect()
    }
}

fn stem(file: &str) -> String {
    Path::new(file)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(file)
        .to_string()
}

fn mask(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| 1usize << i)
        .sum()
}

/// Base-`base` digits of `index`, most significant first, `len` of them.
fn digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

fn undigits(v: &[usize], base: usize) -> usize {
    v.iter().fold(0, |acc, &d| acc * base + d)
}

/// The seven families with the parameters used throughout the tests:
/// `Z2` and `F2` for the non-trivial stand-ins, `|A| = 2` for the reader.
pub fn builtins() -> Vec<Monad> {
    vec![
        Monad::powerset(),
        Monad::nonempty_powerset(),
        Monad::multiset(SemiringTable::f2(), "f2").unwrap(),
        Monad::distribution(),
        Monad::maybe(),
        Monad::writer(MonoidTable::z2(), "z2").unwrap(),
        Monad::reader(2).unwrap(),
    ]
}

/// The nine instance rows of the affineness/relevance table.
pub fn table_instances() -> Vec<Monad> {
    vec![
        Monad::powerset(),
        Monad::nonempty_powerset(),
        Monad::distribution(),
        Monad::maybe(),
        Monad::reader(2).unwrap(),
        Monad::writer(MonoidTable::trivial(), "trivial").unwrap(),
        Monad::writer(MonoidTable::z2(), "z2").unwrap(),
        Monad::multiset(SemiringTable::f2(), "f2").unwrap(),
        Monad::multiset(SemiringTable::trivial(), "trivial").unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn carrier_sizes() {
        assert_eq!(Monad::powerset().carrier(2).unwrap().len(), 4);
        assert_eq!(Monad::nonempty_powerset().carrier(3).unwrap().len(), 7);
        let ms = Monad::multiset(SemiringTable::f2(), "f2").unwrap();
        assert_eq!(ms.carrier(2).unwrap().len(), 4);
        assert!(matches!(
            Monad::distribution().carrier(2),
            Err(Error::NotEnumerable { .. })
        ));
        assert_eq!(Monad::distribution().carrier(1).unwrap().len(), 1);
    }

    #[test]
    fn encode_decode_round_trip() {
        for t in builtins().iter().filter(|t| t.tier() == Tier::Enumerable) {
            for x in 0..=3 {
                for (i, obj) in t.carrier(x).unwrap().iter().enumerate() {
                    assert_eq!(t.encode(x, obj).unwrap(), i, "{} {x} {obj}", t.name());
                }
            }
        }
    }

    #[test]
    fn fmap_examples() {
        let flip = FinFun::from_fn(2, 2, |i| 1 - i);
        let collapse = FinFun::constant(2, 2, 0);
        let p = Monad::powerset();
        assert_eq!(
            p.fmap(&flip, &TObject::subset(2, &[0])).unwrap(),
            TObject::subset(2, &[1])
        );
        let ms = Monad::multiset(SemiringTable::f2(), "f2").unwrap();
        assert_eq!(
            ms.fmap(&collapse, &TObject::Multiset(vec![1, 1])).unwrap(),
            TObject::Multiset(vec![0, 0])
        );
        let d = Monad::distribution();
        assert_eq!(
            d.fmap(&collapse, &TObject::dist(2, &[(0, 1, 2), (1, 1, 2)]))
                .unwrap(),
            TObject::dist(2, &[(0, 1, 1)])
        );
    }

    #[test]
    fn unit_and_mult_examples() {
        assert_eq!(Monad::powerset().unit(3, 1), TObject::subset(3, &[1]));
        let w = Monad::writer(MonoidTable::z2(), "z2").unwrap();
        // TTX for X = 2: index m·2 + x in TX, so (g,(g,1)) has inner index 3.
        let tt = TObject::Writer {
            weight: 1,
            value: 3,
        };
        assert_eq!(
            w.mult(2, &tt).unwrap(),
            TObject::Writer {
                weight: 0,
                value: 1
            }
        );
        let r = Monad::reader(2).unwrap();
        // s(0) = r[0,1] (index 1), s(1) = r[1,0] (index 2): μ(s) = r[0,0].
        assert_eq!(
            r.mult(2, &TObject::Reader(vec![1, 2])).unwrap(),
            TObject::Reader(vec![0, 0])
        );
    }

    #[test]
    fn psi_examples() {
        let p = Monad::powerset();
        assert_eq!(
            p.psi(
                &TObject::subset(2, &[0]),
                2,
                &TObject::subset(2, &[0, 1]),
                2
            )
            .unwrap(),
            TObject::subset(4, &[0, 1])
        );
        let d = Monad::distribution();
        assert_eq!(
            d.psi(
                &TObject::dist(2, &[(0, 1, 2), (1, 1, 2)]),
                2,
                &TObject::dist(2, &[(0, 1, 1)]),
                2
            )
            .unwrap(),
            TObject::dist(4, &[(0, 1, 2), (2, 1, 2)])
        );
        let w = Monad::writer(MonoidTable::z2(), "z2").unwrap();
        let g = |v| TObject::Writer {
            weight: 1,
            value: v,
        };
        assert_eq!(
            w.psi(&g(1), 2, &g(0), 2).unwrap(),
            TObject::Writer {
                weight: 0,
                value: 2
            }
        );
    }

    #[test]
    fn psi_n_and_chi() {
        let p = Monad::powerset();
        let (a, b) = p.chi(&TObject::subset(4, &[0, 3]), 2, 2).unwrap();
        assert_eq!(a, TObject::subset(2, &[0, 1]));
        assert_eq!(b, a);
        let w = Monad::writer(MonoidTable::z2(), "z2").unwrap();
        let obj = TObject::Writer {
            weight: 1,
            value: 5,
        };
        let parts = w.chi_n(&obj, &[2, 2, 2]).unwrap();
        let refs: Vec<&TObject> = parts.iter().collect();
        // g³ = g in Z2.
        assert_eq!(w.psi_n(&refs, &[2, 2, 2]).unwrap(), obj);
        assert_eq!(w.psi_n(&[], &[]).unwrap(), w.unit(1, 0));
    }

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in builtins() {
            for x in 1..=4 {
                for _ in 0..50 {
                    let s = t.sample(x, &mut rng).unwrap();
                    t.validate(x, &s).unwrap();
                }
            }
        }
        let d = Monad::distribution().with_max_denominator(4);
        for _ in 0..100 {
            if let TObject::Dist(w) = d.sample(3, &mut rng).unwrap() {
                assert!(w.iter().all(|p| p.denom() <= &BigInt::from(4)));
            }
        }
    }

    #[test]
    fn selectors() {
        assert_eq!(Monad::from_selector("reader:3").unwrap().name(), "reader:3");
        assert_eq!(
            Monad::from_selector("writer:z2.json").unwrap().name(),
            "writer:z2"
        );
        assert!(Monad::from_selector("state").is_err());
        assert!(Monad::from_selector("reader:x").is_err());
    }
}
