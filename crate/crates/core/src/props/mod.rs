//! Structural properties of monads: affineness, relevance and its
//! weakenings, and the 2-discerning test on equations.

mod discerning;

use num::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::finite::{diagonal, Product};
use crate::monads::{Monad, MonadKind, TObject, Tier};

pub use discerning::{
    derive_companion, find_countermodel, two_discerning_check, Derivation, DiscerningOptions,
    DiscerningVerdict, ModelSearchOutcome,
};

/// A failing instance: the set sizes involved, the inputs, and the two
/// sides of the condition that differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropWitness {
    pub sizes: Vec<usize>,
    pub inputs: Vec<TObject>,
    pub lhs: TObject,
    pub rhs: TObject,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "holds", rename_all = "snake_case")]
pub enum Outcome {
    Yes { certificate: String },
    No { witness: PropWitness },
    UnknownUpTo { bound: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropVerdict {
    pub property: String,
    pub monad: String,
    /// The condition that was checked, e.g. `ψ∘Δ = TΔ`.
    pub condition: String,
    pub outcome: Outcome,
}

impl PropVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, Outcome::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self.outcome, Outcome::No { .. })
    }

    pub fn witness(&self) -> Option<&PropWitness> {
        match &self.outcome {
            Outcome::No { witness } => Some(witness),
            _ => None,
        }
    }

    /// `yes`, `no` or `unknown`.
    pub fn short(&self) -> &'static str {
        match self.outcome {
            Outcome::Yes { .. } => "yes",
            Outcome::No { .. } => "no",
            Outcome::UnknownUpTo { .. } => "unknown",
        }
    }
}

/// Random elements drawn per carrier for sampleable monads.
pub const DEFAULT_SAMPLES: usize = 200;

/// Elements of `TX` to test: all of them when enumerable, otherwise the
/// uniform distributions on each 2-element subset followed by seeded samples.
fn probes(t: &Monad, x: usize, samples: usize, seed: u64) -> Result<Vec<TObject>> {
    if t.tier() == Tier::Enumerable {
        return t.carrier(x);
    }
    let mut out = Vec::new();
    for i in 0..x {
        for j in i + 1..x {
            let half = (1, 2);
            out.push(TObject::dist(
                x,
                &[(i, half.0, half.1), (j, half.0, half.1)],
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ x as u64);
    for _ in 0..samples {
        out.push(t.sample(x, &mut rng)?);
    }
    Ok(out)
}

/// `|T1| = 1`. Exact for every built-in.
pub fn is_affine(t: &Monad) -> Result<PropVerdict> {
    let size = t.carrier_size(1).expect("T1 is finite for every built-in");
    let outcome = if size == 1u32.into() {
        Outcome::Yes {
            certificate: format!("|{}(1)| = 1", t.name()),
        }
    } else {
        let elems = t.carrier(1)?;
        Outcome::No {
            witness: PropWitness {
                sizes: vec![1],
                inputs: elems.clone(),
                lhs: elems[0].clone(),
                rhs: elems[1].clone(),
            },
        }
    };
    Ok(PropVerdict {
        property: "affine".into(),
        monad: t.name().into(),
        condition: "T1 is terminal".into(),
        outcome,
    })
}

/// A closed-form reason why `ψⁿ ∘ Δⁿ = TΔⁿ` holds for every `X`, when the
/// instance has one. `n = 2` is relevance.
pub fn certificate(t: &Monad, n: usize) -> Option<String> {
    if t.name().ends_with("!sabotaged") {
        return None;
    }
    match t.kind() {
        MonadKind::Maybe => {
            Some("maybe: ψ(just a, just a) = just (a,a) and ψ(none, -) = none".into())
        }
        MonadKind::Reader { .. } => Some("reader: ψ pairs pointwise, so ψ(f, f) = ⟨f, f⟩".into()),
        MonadKind::Writer(m) if (0..m.size).all(|w| m.pow(w, n) == w) => {
            Some(format!("writer: wⁿ = w for every weight (n = {n})"))
        }
        MonadKind::Multiset(s) if s.is_trivial() => {
            Some("multiset over the trivial semiring: TX is a single point".into())
        }
        _ => None,
    }
}

fn bounded_outcome(t: &Monad, n: usize, bound: String) -> Outcome {
    match certificate(t, n) {
        Some(certificate) => Outcome::Yes { certificate },
        None => Outcome::UnknownUpTo { bound },
    }
}

/// Checks `ψⁿ ∘ Δⁿ = TΔⁿ` on every element of `TX` for `|X| ≤ max_size`.
fn diagonal_check(
    t: &Monad,
    n: usize,
    max_size: usize,
    samples: usize,
    seed: u64,
) -> Result<Option<PropWitness>> {
    for x in 1..=max_size {
        let delta = diagonal(x, n);
        for u in probes(t, x, samples, seed)? {
            let lhs = t.psi_n(&vec![&u; n], &vec![x; n])?;
            let rhs = t.fmap(&delta, &u)?;
            if lhs != rhs {
                return Ok(Some(PropWitness {
                    sizes: vec![x],
                    inputs: vec![u],
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// Checks `ψⁿ ∘ χⁿ = id` on `T(Xⁿ)` for `|X| ≤ max_size`, sampling when
/// the carrier is large.
fn pairing_check(
    t: &Monad,
    n: usize,
    max_size: usize,
    samples: usize,
    seed: u64,
) -> Result<Option<PropWitness>> {
    for x in 1..=max_size {
        let sizes = vec![x; n];
        let total = Product::new(sizes.clone()).size();
        let elems = match t.carrier_len(total) {
            Ok(len) if len <= 1 << 14 => t.carrier(total)?,
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (total as u64) << 8);
                let mut out = probes(t, total, 0, seed)?;
                for _ in 0..samples {
                    out.push(t.sample(total, &mut rng)?);
                }
                out
            }
        };
        for w in elems {
            let parts = t.chi_n(&w, &sizes)?;
            let back = t.psi_n(&parts.iter().collect::<Vec<_>>(), &sizes)?;
            if back != w {
                return Ok(Some(PropWitness {
                    sizes,
                    inputs: vec![w.clone()],
                    lhs: back,
                    rhs: w,
                }));
            }
        }
    }
    Ok(None)
}

/// `ψ ∘ Δ = TΔ` on sets of size `≤ max_size`. A failure is conclusive;
/// success is `Yes` only when the instance carries an analytic certificate.
pub fn relevance_check(t: &Monad, max_size: usize) -> Result<PropVerdict> {
    relevance_check_seeded(t, max_size, DEFAULT_SAMPLES, 0)
}

pub fn relevance_check_seeded(
    t: &Monad,
    max_size: usize,
    samples: usize,
    seed: u64,
) -> Result<PropVerdict> {
    let outcome = match diagonal_check(t, 2, max_size, samples, seed)? {
        Some(witness) => Outcome::No { witness },
        None => bounded_outcome(t, 2, format!("|X| ≤ {max_size}")),
    };
    Ok(PropVerdict {
        property: "relevant".into(),
        monad: t.name().into(),
        condition: "ψ∘Δ = TΔ".into(),
        outcome,
    })
}

/// `ψⁿ ∘ Δⁿ = TΔⁿ`, cross-checked against `ψⁿ ∘ χⁿ = id`.
pub fn n_relevance_check(t: &Monad, n: usize, max_size: usize) -> Result<PropVerdict> {
    if n < 2 {
        return Err(crate::error::structural("n-relevance needs n ≥ 2"));
    }
    let name = format!("{n}-relevant");
    let verdict = |condition: &str, outcome| PropVerdict {
        property: name.clone(),
        monad: t.name().into(),
        condition: condition.into(),
        outcome,
    };
    if let Some(witness) = diagonal_check(t, n, max_size, DEFAULT_SAMPLES, 0)? {
        return Ok(verdict("ψⁿ∘Δⁿ = TΔⁿ", Outcome::No { witness }));
    }
    if let Some(witness) = pairing_check(t, n, max_size.min(2), DEFAULT_SAMPLES, 0)? {
        return Ok(verdict("ψⁿ∘χⁿ = id", Outcome::No { witness }));
    }
    Ok(verdict(
        "ψⁿ∘Δⁿ = TΔⁿ",
        bounded_outcome(t, n, format!("|X| ≤ {max_size}")),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct ImplicationCheck {
    pub n: usize,
    pub affine: PropVerdict,
    pub n_relevant: PropVerdict,
    pub relevant: PropVerdict,
    /// False only when the antecedent holds and relevance is refuted.
    pub holds: bool,
}

/// An affine, `n`-relevant monad is relevant: if the first two checks do
/// not fail, relevance must not fail either.
pub fn relevant_and_affine_implies_relevant_test(
    t: &Monad,
    n: usize,
    max_size: usize,
) -> Result<ImplicationCheck> {
    let affine = is_affine(t)?;
    let n_relevant = n_relevance_check(t, n, max_size)?;
    let relevant = relevance_check(t, max_size)?;
    let holds = !(affine.is_yes() && !n_relevant.is_no() && relevant.is_no());
    Ok(ImplicationCheck {
        n,
        affine,
        n_relevant,
        relevant,
        holds,
    })
}

/// Largest `|T(n)|` for which every generic operation is tried.
const GENERIC_BUDGET: usize = 1 << 16;

/// Reads each `ω ∈ T(n)` as an `n`-ary operation `f(t₁..tₙ) = μ(T(i ↦ tᵢ)(ω))`
/// and checks the matrix law `f(f(x₁₁..x₁ₙ), …, f(xₙ₁..xₙₙ)) = f(x₁₁, …, xₙₙ)`
/// in `T` over `n²` variables. Arities with `n² > var_bound` are skipped.
pub fn algebraic_relevance_check(
    t: &Monad,
    max_arity: usize,
    var_bound: usize,
) -> Result<PropVerdict> {
    let mut skipped = Vec::new();
    let mut sampled = false;
    for n in 1..=max_arity {
        let vars = n * n;
        if vars > var_bound {
            skipped.push(n);
            continue;
        }
        let ops = match t.carrier_len(n) {
            Ok(len) if len <= GENERIC_BUDGET => t.carrier(n)?,
            _ => {
                sampled = true;
                probes_any(t, n)?
            }
        };
        let var = |i: usize, j: usize| t.unit(vars, i * n + j);
        for omega in ops {
            let rows = (0..n)
                .map(|i| {
                    let args: Vec<_> = (0..n).map(|j| var(i, j)).collect();
                    t.bind(&omega, &args, vars)
                })
                .collect::<Result<Vec<_>>>()?;
            let lhs = t.bind(&omega, &rows, vars)?;
            let diag: Vec<_> = (0..n).map(|i| var(i, i)).collect();
            let rhs = t.bind(&omega, &diag, vars)?;
            if lhs != rhs {
                return Ok(PropVerdict {
                    property: "algebraically relevant".into(),
                    monad: t.name().into(),
                    condition: format!("matrix law at arity {n}"),
                    outcome: Outcome::No {
                        witness: PropWitness {
                            sizes: vec![n, vars],
                            inputs: vec![omega],
                            lhs,
                            rhs,
                        },
                    },
                });
            }
        }
    }
    let mut bound = format!("arity ≤ {max_arity}");
    if sampled {
        bound.push_str(", sampled");
    }
    if !skipped.is_empty() {
        bound.push_str(&format!(", skipped arities {skipped:?} (n² > {var_bound})"));
    }
    let outcome = match certificate(t, 2) {
        Some(c) => Outcome::Yes {
            certificate: format!("relevant, hence the matrix law holds: {c}"),
        },
        None => Outcome::UnknownUpTo { bound },
    };
    Ok(PropVerdict {
        property: "algebraically relevant".into(),
        monad: t.name().into(),
        condition: "f(f(x_ij)_j)_i = f(x_ii)_i".into(),
        outcome,
    })
}

fn probes_any(t: &Monad, n: usize) -> Result<Vec<TObject>> {
    let mut out = probes(t, n, DEFAULT_SAMPLES, 0)?;
    if t.tier() == Tier::Sampleable {
        // Point masses too, so unary laws see the units.
        out.extend((0..n).map(|i| t.unit(n, i)));
    }
    Ok(out)
}

/// The uniform distribution on `{0, 1}` inside `T(2)`, the standard
/// relevance witness for distributions.
pub fn uniform_pair() -> TObject {
    let half = BigRational::new(1.into(), 2.into());
    TObject::Dist(vec![half.clone(), half])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{MonoidTable, SemiringTable};
    use crate::monads::table_instances;

    #[test]
    fn affine_and_relevant_table() {
        let expected = [
            ("powerset", false, false),
            ("powerset+", true, false),
            ("dist", true, false),
            ("maybe", false, true),
            ("reader", true, true),
            ("writer:trivial", true, true),
            ("writer:z2", false, false),
            ("multiset:f2", false, false),
            ("multiset:trivial", true, true),
        ];
        for (t, (label, aff, rel)) in table_instances().iter().zip(expected) {
            assert!(t.name().starts_with(label), "{} vs {label}", t.name());
            assert_eq!(is_affine(t).unwrap().is_yes(), aff, "{label}");
            let r = relevance_check(t, 3).unwrap();
            if rel {
                assert!(r.is_yes(), "{label}: {r:?}");
            } else {
                let w = r.witness().expect(label);
                assert!(w.sizes[0] <= 2, "{label}");
            }
        }
    }

    #[test]
    fn powerset_relevance_witness() {
        let r = relevance_check(&Monad::powerset(), 2).unwrap();
        let w = r.witness().unwrap();
        assert_eq!(w.inputs[0], TObject::subset(2, &[0, 1]));
        assert_eq!(w.lhs, TObject::subset(4, &[0, 1, 2, 3]));
        assert_eq!(w.rhs, TObject::subset(4, &[0, 3]));
    }

    #[test]
    fn distribution_relevance_witness_is_uniform() {
        let r = relevance_check(&Monad::distribution(), 2).unwrap();
        assert_eq!(r.witness().unwrap().inputs[0], uniform_pair());
    }

    #[test]
    fn writer_n_relevance() {
        let w = Monad::writer(MonoidTable::z2(), "z2").unwrap();
        assert!(n_relevance_check(&w, 2, 3).unwrap().is_no());
        assert!(n_relevance_check(&w, 3, 3).unwrap().is_yes());
        for t in [Monad::maybe(), Monad::reader(2).unwrap()] {
            assert!(n_relevance_check(&t, 3, 3).unwrap().is_yes());
        }
        assert!(n_relevance_check(&Monad::distribution(), 3, 2)
            .unwrap()
            .is_no());
        let f2 = Monad::multiset(SemiringTable::f2(), "f2").unwrap();
        assert!(n_relevance_check(&f2, 3, 2).unwrap().is_no());
    }

    #[test]
    fn implication_instances() {
        for t in table_instances() {
            for n in [2, 3] {
                assert!(
                    relevant_and_affine_implies_relevant_test(&t, n, 2)
                        .unwrap()
                        .holds
                );
            }
        }
    }

    #[test]
    fn algebraic_relevance() {
        let r = algebraic_relevance_check(&Monad::powerset(), 3, 9).unwrap();
        let w = r.witness().unwrap();
        assert_eq!(w.sizes, vec![2, 4]);
        assert_eq!(w.inputs[0], TObject::subset(2, &[0, 1]));
        assert_eq!(w.lhs, TObject::subset(4, &[0, 1, 2, 3]));
        assert_eq!(w.rhs, TObject::subset(4, &[0, 3]));
        for t in [Monad::reader(2).unwrap(), Monad::maybe()] {
            assert!(algebraic_relevance_check(&t, 3, 9).unwrap().is_yes());
        }
        assert!(algebraic_relevance_check(&Monad::distribution(), 2, 4)
            .unwrap()
            .is_no());
    }
}
