//! Finite sets, finite functions between them, finite products, and
//! validated semiring/monoid tables.
//!
//! Elements of a [`FinSet`] of size `n` are the indices `0..n`. Products are
//! indexed row-major with the leftmost factor most significant, so the tuple
//! `(1, 2)` in `2 × 3` is index `5`. Every other module relies on this
//! encoding for bit-exact comparisons.

use std::path::Path;
use std::sync::Arc;

use num::bigint::BigUint;
use num::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};

#[derive(Clone, Debug, Default)]
pub struct FinSet {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        Self { size, labels: None }
    }

    /// The terminal object.
    pub fn terminal() -> Self {
        Self::new(1)
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        Self {
            size: labels.len(),
            labels: Some(labels.into()),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}

// Labels are display-only.
impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for FinSet {}

/// A function between finite sets, stored as its table of codomain indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFun {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinFun {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(structural(format!(
                "table has {} entries for a domain of size {}",
                table.len(),
                dom.size()
            )));
        }
        if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| v >= cod.size()) {
            return Err(structural(format!(
                "entry {i} maps to {v}, outside a codomain of size {}",
                cod.size()
            )));
        }
        Ok(Self { dom, cod, table })
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> Self {
        let table: Vec<usize> = (0..dom).map(f).collect();
        debug_assert!(table.iter().all(|&v| v < cod));
        Self {
            dom: FinSet::new(dom),
            cod: FinSet::new(cod),
            table,
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |i| i)
    }

    /// The unique map `!: X → 1`.
    pub fn terminal(size: usize) -> Self {
        Self::from_fn(size, 1, |_| 0)
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Self {
        Self::from_fn(dom, cod, |_| value)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

/// `g ∘ f`, i.e. first `f` then `g`.
pub fn compose(f: &FinFun, g: &FinFun) -> Result<FinFun> {
    if f.cod != g.dom {
        return Err(structural(format!(
            "cannot compose {}→{} with {}→{}",
            f.dom.size(),
            f.cod.size(),
            g.dom.size(),
            g.cod.size()
        )));
    }
    Ok(FinFun {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: f.table.iter().map(|&x| g.table[x]).collect(),
    })
}

/// A finite product `X₁ × … × Xₙ` with its tupling bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    sizes: Vec<usize>,
    size: usize,
}

pub fn product(factors: &[FinSet]) -> Product {
    Product::new(factors.iter().map(FinSet::size).collect())
}

impl Product {
    pub fn new(sizes: Vec<usize>) -> Self {
        let size = sizes.iter().product();
        Self { sizes, size }
    }

    /// `X^n`.
    pub fn power(base: usize, n: usize) -> Self {
        Self::new(vec![base; n])
    }

    pub fn set(&self) -> FinSet {
        FinSet::new(self.size)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[usize] {
        &self.sizes
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.sizes.len());
        tuple
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&t, &s)| acc * s + t)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for (slot, &s) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = index % s;
            index /= s;
        }
        out
    }

    /// `πⱼ` (0-based).
    pub fn projection(&self, j: usize) -> FinFun {
        FinFun::from_fn(self.size, self.sizes[j], |i| self.tuple(i)[j])
    }

    /// `⟨π_{i₁}, …, π_{i_k}⟩` into the product of the selected factors.
    pub fn projections(&self, picks: &[usize]) -> FinFun {
        let target = Product::new(picks.iter().map(|&p| self.sizes[p]).collect());
        FinFun::from_fn(self.size, target.size(), |i| {
            let t = self.tuple(i);
            let picked: Vec<usize> = picks.iter().map(|&p| t[p]).collect();
            target.index(&picked)
        })
    }
}

/// `Δⁿ: X → Xⁿ`.
pub fn diagonal(size: usize, n: usize) -> FinFun {
    let p = Product::power(size, n);
    FinFun::from_fn(size, p.size(), |x| p.index(&vec![x; n]))
}

/// `swap: X × Y → Y × X`.
pub fn swap(x: usize, y: usize) -> FinFun {
    FinFun::from_fn(x * y, y * x, |i| (i % y) * x + i / y)
}

/// `f × g: X × Y → X' × Y'`.
pub fn cross(f: &FinFun, g: &FinFun) -> FinFun {
    let (gx, gc) = (g.dom().size(), g.cod().size());
    FinFun::from_fn(f.dom().size() * gx, f.cod().size() * gc, |i| {
        f.apply(i / gx) * gc + g.apply(i % gx)
    })
}

/// `cod^dom` as an exact integer.
pub fn count_maps(dom: usize, cod: usize) -> BigUint {
    num::pow(BigUint::from(cod), dom)
}

/// All functions `dom → cod`, lexicographic over tables.
pub fn enumerate_maps(dom: &FinSet, cod: &FinSet, budget: u64) -> Result<Maps> {
    let count = count_maps(dom.size(), cod.size());
    let fits = count.to_u64().filter(|&c| c <= budget);
    let Some(remaining) = fits else {
        return Err(Error::Budget {
            what: format!("maps {}→{}", dom.size(), cod.size()),
            count: count.to_string(),
            budget,
        });
    };
    Ok(Maps {
        dom: dom.clone(),
        cod: cod.clone(),
        next: vec![0; dom.size()],
        remaining,
    })
}

#[derive(Debug)]
pub struct Maps {
    dom: FinSet,
    cod: FinSet,
    next: Vec<usize>,
    remaining: u64,
}

impl Maps {
    pub fn count(&self) -> u64 {
        self.remaining
    }
}

impl Iterator for Maps {
    type Item = FinFun;

    fn next(&mut self) -> Option<FinFun> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = FinFun {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table: self.next.clone(),
        };
        for slot in self.next.iter_mut().rev() {
            *slot += 1;
            if *slot < self.cod.size() {
                break;
            }
            *slot = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

/// First violated axiom of a table, with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

fn check_shape(table: &[usize], size: usize) -> Result<(), AxiomViolation> {
    if table.len() != size * size {
        return Err(AxiomViolation {
            axiom: "table shape",
            witness: vec![table.len()],
        });
    }
    if let Some(i) = table.iter().position(|&v| v >= size) {
        return Err(AxiomViolation {
            axiom: "closure",
            witness: vec![i / size, i % size],
        });
    }
    Ok(())
}

fn check_monoid(
    op: impl Fn(usize, usize) -> usize,
    size: usize,
    unit: usize,
    prefix: &'static [&'static str; 3],
) -> Result<(), AxiomViolation> {
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if op(op(a, b), c) != op(a, op(b, c)) {
                    return Err(AxiomViolation {
                        axiom: prefix[0],
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    for a in 0..size {
        if op(unit, a) != a {
            return Err(AxiomViolation {
                axiom: prefix[1],
                witness: vec![a],
            });
        }
        if op(a, unit) != a {
            return Err(AxiomViolation {
                axiom: prefix[2],
                witness: vec![a],
            });
        }
    }
    Ok(())
}

/// A finite semiring given by flat row-major tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiringTable {
    pub size: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

impl SemiringTable {
    /// ℤ/2 with xor and and.
    pub fn f2() -> Self {
        Self {
            size: 2,
            add: vec![0, 1, 1, 0],
            mul: vec![0, 0, 0, 1],
            zero: 0,
            one: 1,
        }
    }

    /// ({0,1}, ∨, ∧).
    pub fn boolean() -> Self {
        Self {
            size: 2,
            add: vec![0, 1, 1, 1],
            mul: vec![0, 0, 0, 1],
            zero: 0,
            one: 1,
        }
    }

    pub fn trivial() -> Self {
        Self {
            size: 1,
            add: vec![0],
            mul: vec![0],
            zero: 0,
            one: 0,
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn validate(&self) -> Result<(), AxiomViolation> {
        let n = self.size;
        if n == 0 || self.zero >= n || self.one >= n {
            return Err(AxiomViolation {
                axiom: "distinguished elements",
                witness: vec![self.zero, self.one],
            });
        }
        check_shape(&self.add, n)?;
        check_shape(&self.mul, n)?;
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(AxiomViolation {
                        axiom: "add commutativity",
                        witness: vec![a, b],
                    });
                }
            }
        }
        check_monoid(
            |a, b| self.add(a, b),
            n,
            self.zero,
            &["add associativity", "add left unit", "add right unit"],
        )?;
        check_monoid(
            |a, b| self.mul(a, b),
            n,
            self.one,
            &["mul associativity", "mul left unit", "mul right unit"],
        )?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(AxiomViolation {
                            axiom: "left distributivity",
                            witness: vec![a, b, c],
                        });
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(AxiomViolation {
                            axiom: "right distributivity",
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        for a in 0..n {
            if self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                return Err(AxiomViolation {
                    axiom: "zero annihilates",
                    witness: vec![a],
                });
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(s)?;
        t.validate()
            .map_err(|v| Error::InvalidTable(format!("{} at {:?}", v.axiom, v.witness)))?;
        Ok(t)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

/// A finite monoid given by a flat row-major table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidTable {
    pub size: usize,
    pub op: Vec<usize>,
    pub unit: usize,
    #[serde(default)]
    pub commutative: bool,
}

impl MonoidTable {
    /// ℤ/2 written multiplicatively: `0 = e`, `1 = g`, `g·g = e`.
    pub fn z2() -> Self {
        Self::cyclic(2)
    }

    pub fn cyclic(n: usize) -> Self {
        Self {
            size: n,
            op: (0..n * n).map(|i| (i / n + i % n) % n).collect(),
            unit: 0,
            commutative: true,
        }
    }

    pub fn trivial() -> Self {
        Self {
            size: 1,
            op: vec![0],
            unit: 0,
            commutative: true,
        }
    }

    /// `({e, a}, ·)` with `a·a = a`.
    pub fn semilattice2() -> Self {
        Self {
            size: 2,
            op: vec![0, 1, 1, 1],
            unit: 0,
            commutative: true,
        }
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.size + b]
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        (0..n).fold(self.unit, |acc, _| self.op(acc, a))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|a| self.op(a, a) == a)
    }

    pub fn validate(&self) -> Result<(), AxiomViolation> {
        let n = self.size;
        if n == 0 || self.unit >= n {
            return Err(AxiomViolation {
                axiom: "distinguished elements",
                witness: vec![self.unit],
            });
        }
        check_shape(&self.op, n)?;
        check_monoid(
            |a, b| self.op(a, b),
            n,
            self.unit,
            &["associativity", "left unit", "right unit"],
        )?;
        if self.commutative {
            for a in 0..n {
                for b in 0..n {
                    if self.op(a, b) != self.op(b, a) {
                        return Err(AxiomViolation {
                            axiom: "commutativity",
                            witness: vec![a, b],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(s)?;
        t.validate()
            .map_err(|v| Error::InvalidTable(format!("{} at {:?}", v.axiom, v.witness)))?;
        Ok(t)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

/// `Π sizes` as an exact integer.
pub fn count_product(sizes: impl IntoIterator<Item = usize>) -> BigUint {
    sizes
        .into_iter()
        .fold(BigUint::one(), |acc, s| acc * BigUint::from(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_examples() {
        let f = FinFun::new(FinSet::new(2), FinSet::new(3), vec![2, 0]).unwrap();
        assert_eq!(compose(&FinFun::identity(2), &f).unwrap(), f);
        let flip = FinFun::from_fn(2, 2, |i| 1 - i);
        assert_eq!(compose(&flip, &flip).unwrap(), FinFun::identity(2));
        let f = FinFun::from_fn(2, 2, |_| 0);
        let g = FinFun::from_fn(2, 2, |_| 1);
        assert_eq!(compose(&f, &g).unwrap().table(), &[1, 1]);
    }

    #[test]
    fn compose_mismatch_is_structural() {
        let f = FinFun::identity(2);
        let g = FinFun::identity(3);
        assert!(matches!(compose(&f, &g), Err(Error::Structural(_))));
    }

    #[test]
    fn fin_fun_rejects_out_of_range() {
        assert!(FinFun::new(FinSet::new(2), FinSet::new(2), vec![0, 2]).is_err());
        assert!(FinFun::new(FinSet::new(2), FinSet::new(2), vec![0]).is_err());
    }

    #[test]
    fn product_examples() {
        assert_eq!(product(&[]).size(), 1);
        let p = product(&[FinSet::new(2), FinSet::new(3)]);
        assert_eq!(p.size(), 6);
        assert_eq!(p.index(&[1, 2]), 5);
        assert_eq!(p.tuple(5), vec![1, 2]);
        let p = Product::power(2, 3);
        assert_eq!(p.size(), 8);
        assert_eq!(p.index(&[1, 0, 1]), 5);
    }

    #[test]
    fn swap_and_cross() {
        let s = swap(2, 3);
        let (xy, yx) = (Product::new(vec![2, 3]), Product::new(vec![3, 2]));
        for i in 0..6 {
            let t = xy.tuple(i);
            assert_eq!(yx.tuple(s.apply(i)), vec![t[1], t[0]]);
        }
        let f = FinFun::from_fn(2, 3, |i| i + 1);
        let g = FinFun::from_fn(3, 2, |i| i % 2);
        let fg = cross(&f, &g);
        let out = Product::new(vec![3, 2]);
        for i in 0..6 {
            let t = xy.tuple(i);
            assert_eq!(out.tuple(fg.apply(i)), vec![f.apply(t[0]), g.apply(t[1])]);
        }
    }

    #[test]
    fn diagonal_hits_constant_tuples() {
        let d = diagonal(3, 2);
        assert_eq!(d.table(), &[0, 4, 8]);
    }

    #[test]
    fn enumerate_maps_counts() {
        let count = |d, c| {
            enumerate_maps(&FinSet::new(d), &FinSet::new(c), u64::MAX)
                .unwrap()
                .count()
        };
        assert_eq!(count(1, 3), 3);
        assert_eq!(count(2, 2), 4);
        assert_eq!(count(9, 3), 19683);
        assert_eq!(count(0, 0), 1);
        assert_eq!(count(1, 0), 0);
    }

    #[test]
    fn enumerate_maps_is_lexicographic_and_distinct() {
        let maps: Vec<_> = enumerate_maps(&FinSet::new(2), &FinSet::new(3), 100)
            .unwrap()
            .map(|f| f.table().to_vec())
            .collect();
        let mut sorted = maps.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(maps, sorted);
        assert_eq!(maps.len(), 9);
    }

    #[test]
    fn enumerate_maps_refuses_overflow() {
        let e = enumerate_maps(&FinSet::new(100), &FinSet::new(3), u64::MAX).unwrap_err();
        assert!(matches!(e, Error::Budget { .. }));
        let e = enumerate_maps(&FinSet::new(9), &FinSet::new(3), 1000).unwrap_err();
        assert!(e.to_string().contains("19683"));
    }

    #[test]
    fn builtin_semirings_validate() {
        SemiringTable::f2().validate().unwrap();
        SemiringTable::boolean().validate().unwrap();
        SemiringTable::trivial().validate().unwrap();
    }

    #[test]
    fn broken_semirings_are_rejected() {
        let mut t = SemiringTable::f2();
        t.add[1] = 0;
        let v = t.validate().unwrap_err();
        assert_eq!(v.axiom, "add commutativity");
        assert_eq!(v.witness, vec![0, 1]);

        // Each mutation breaks exactly the named axiom family.
        type Mutation = Box<dyn Fn(&mut SemiringTable)>;
        let cases: Vec<(Mutation, &str)> = vec![
            (Box::new(|t| t.zero = 1), "add left unit"),
            (Box::new(|t| t.one = 0), "mul left unit"),
            (Box::new(|t| t.mul[1] = 1), "mul right unit"),
            (Box::new(|t| t.mul = vec![0, 0, 0, 0]), "mul left unit"),
            (Box::new(|t| t.add[0] = 1), "add associativity"),
            (Box::new(|t| t.mul[2] = 2), "closure"),
            (
                Box::new(|t| t.add.pop().map(|_| ()).unwrap()),
                "table shape",
            ),
        ];
        for (mutate, axiom) in cases {
            let mut t = SemiringTable::f2();
            mutate(&mut t);
            assert_eq!(t.validate().unwrap_err().axiom, axiom);
        }

        // ({0,1}, xor, or) fails distributivity.
        let mut t = SemiringTable::f2();
        t.mul = vec![0, 1, 1, 1];
        t.one = 0;
        assert!(t.validate().is_err());
    }

    #[test]
    fn monoid_tables() {
        MonoidTable::z2().validate().unwrap();
        MonoidTable::trivial().validate().unwrap();
        MonoidTable::semilattice2().validate().unwrap();
        assert!(!MonoidTable::z2().is_idempotent());
        assert!(MonoidTable::semilattice2().is_idempotent());
        assert_eq!(MonoidTable::z2().pow(1, 3), 1);
        assert_eq!(MonoidTable::z2().pow(1, 2), 0);
        let bad = MonoidTable {
            size: 2,
            op: vec![0, 1, 0, 1],
            unit: 0,
            commutative: false,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn json_loading() {
        let s = r#"{"size":2,"add":[0,1,1,0],"mul":[0,0,0,1],"zero":0,"one":1}"#;
        assert_eq!(
            SemiringTable::from_json_str(s).unwrap(),
            SemiringTable::f2()
        );
        let m = r#"{"size":2,"op":[0,1,1,0],"unit":0,"commutative":true}"#;
        assert_eq!(MonoidTable::from_json_str(m).unwrap(), MonoidTable::z2());
        let bad = r#"{"size":2,"add":[0,1,0,0],"mul":[0,0,0,1],"zero":0,"one":1}"#;
        assert!(SemiringTable::from_json_str(bad).is_err());
    }
}
