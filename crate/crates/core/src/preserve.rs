//! Does lifting through a monad preserve an equation?
//!
//! [`check_preservation`] scans algebras that satisfy the equation, lifts
//! each one, and looks for an assignment on which the lifted sides differ.
//! Carriers are scanned in increasing size and algebras in index order, so
//! the reported witness is the least one whatever the worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{lift, AlgebraSpace, FinAlgebra, LiftContext, Prepare};
use crate::error::{structural, Error, Result};
use crate::finite::diagonal;
use crate::monads::{Monad, TObject, Tier};
use crate::par;
use crate::terms::{classify, Equation, Signature, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every algebra and assignment within the bounds was checked.
    PreservedUpToBound,
    Violated,
    /// No violation found, but the search sampled or ran out of budget.
    Unknown,
}

/// Where the algebras come from.
#[derive(Clone, Debug)]
pub enum AlgebraSource {
    /// All algebras of every carrier size up to the bound.
    Exhaustive,
    /// `count` random algebras satisfying the equation per carrier size,
    /// drawn by rejection.
    Random {
        count: u64,
    },
    Given(Vec<FinAlgebra>),
}

/// Where the assignments of the lifted variables come from.
#[derive(Clone, Debug)]
pub enum AssignmentSource {
    /// Every assignment; falls back to `fallback` random draws when `TA` is
    /// not enumerable or the count exceeds the budget.
    Exhaustive {
        fallback: u64,
    },
    Random {
        count: u64,
    },
    /// Fixed assignments, tried against every algebra.
    Given(Vec<Vec<TObject>>),
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub min_carrier: usize,
    pub max_carrier: usize,
    /// Total algebras scanned before giving up.
    pub max_algebras: u64,
    /// Assignments per algebra beyond which exhaustive mode samples.
    pub max_assignments: u64,
    pub algebras: AlgebraSource,
    pub assignments: AssignmentSource,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            min_carrier: 1,
            max_carrier: 3,
            max_algebras: 1_000_000,
            max_assignments: 1 << 20,
            algebras: AlgebraSource::Exhaustive,
            assignments: AssignmentSource::Exhaustive { fallback: 100 },
            seed: 0,
        }
    }
}

impl CheckOptions {
    pub fn exhaustive(max_carrier: usize) -> Self {
        Self {
            max_carrier,
            ..Self::default()
        }
    }

    pub fn randomized(max_carrier: usize, samples: u64, seed: u64) -> Self {
        Self {
            max_carrier,
            assignments: AssignmentSource::Random { count: samples },
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub min_carrier: usize,
    pub max_carrier: usize,
    pub max_algebras: u64,
    pub max_assignments: u64,
    pub algebras: String,
    pub assignments: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub carrier: usize,
    /// Position of the algebra in its source at this carrier size.
    pub algebra_index: u64,
    pub algebra: FinAlgebra,
    pub variables: Vec<String>,
    pub assignment: Vec<TObject>,
    pub lhs: TObject,
    pub rhs: TObject,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Stats {
    pub algebras_scanned: u64,
    pub algebras_satisfying: u64,
    pub assignments_scanned: u64,
    /// Whether some assignment set was sampled rather than exhausted.
    pub sampled: bool,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub monad: String,
    pub equation: String,
    pub verdict: Verdict,
    pub bounds: Bounds,
    pub witness: Option<Witness>,
    pub stats: Stats,
    pub seed: u64,
}

/// Outcome for one algebra.
struct Scan {
    satisfying: bool,
    assignments: u64,
    sampled: bool,
    violation: Option<(Vec<TObject>, TObject, TObject)>,
}

impl Scan {
    fn skipped() -> Self {
        Scan {
            satisfying: false,
            assignments: 0,
            sampled: false,
            violation: None,
        }
    }
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    // SplitMix64 finalizer over a simple combination.
    let mut z = seed
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_algebra(sig: &Signature, carrier: usize, rng: &mut ChaCha8Rng) -> FinAlgebra {
    let tables = sig
        .ops()
        .iter()
        .map(|(_, a)| {
            (0..carrier.pow(*a as u32))
                .map(|_| rng.gen_range(0..carrier))
                .collect()
        })
        .collect();
    FinAlgebra::new(sig.clone(), carrier, tables).expect("random tables are well formed")
}

struct Checker<'a> {
    monad: &'a Monad,
    eq: &'a Equation,
    sig: &'a Signature,
    opts: &'a CheckOptions,
    nvars: usize,
}

impl Checker<'_> {
    /// Checks one algebra already known to satisfy the equation.
    fn scan_lifted(&self, alg: &FinAlgebra, ctx: Option<&LiftContext>, seed: u64) -> Result<Scan> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alg.carrier();
        let (l, r) = self.eq.compile(self.sig)?;
        let mut scan = Scan {
            satisfying: true,
            assignments: 0,
            sampled: false,
            violation: None,
        };
        let random_count;
        match &self.opts.assignments {
            AssignmentSource::Exhaustive { fallback } => {
                let total = ctx.and_then(|c| {
                    (c.objects().len() as u64)
                        .checked_pow(self.nvars as u32)
                        .filter(|&n| n <= self.opts.max_assignments)
                });
                match (ctx, total) {
                    (Some(ctx), Some(_)) => {
                        let lifted = ctx.lift(alg)?;
                        let n = lifted.carrier();
                        let mut env = vec![0usize; self.nvars];
                        loop {
                            scan.assignments += 1;
                            let (x, y) = (lifted.eval(&l, &env), lifted.eval(&r, &env));
                            if x != y {
                                let objs = ctx.objects();
                                scan.violation = Some((
                                    env.iter().map(|&i| objs[i].clone()).collect(),
                                    objs[x].clone(),
                                    objs[y].clone(),
                                ));
                                return Ok(scan);
                            }
                            if !crate::algebra::odometer(&mut env, n) {
                                return Ok(scan);
                            }
                        }
                    }
                    _ => random_count = Some(*fallback),
                }
            }
            AssignmentSource::Random { count } => random_count = Some(*count),
            AssignmentSource::Given(list) => {
                let lifted = lift(self.monad, alg)?;
                for env in list {
                    scan.assignments += 1;
                    let (x, y) = (lifted.eval(&l, env)?, lifted.eval(&r, env)?);
                    if x != y {
                        scan.violation = Some((env.clone(), x, y));
                        return Ok(scan);
                    }
                }
                return Ok(scan);
            }
        }
        scan.sampled = true;
        let lifted = lift(self.monad, alg)?;
        for _ in 0..random_count.unwrap_or(0) {
            let env = (0..self.nvars)
                .map(|_| self.monad.sample(a, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            scan.assignments += 1;
            let (x, y) = match (ctx, lifted.tabulated()) {
                (Some(ctx), Some(table)) => {
                    let idx = env
                        .iter()
                        .map(|t| self.monad.encode(a, t))
                        .collect::<Result<Vec<_>>>()?;
                    let objs = ctx.objects();
                    (
                        objs[table.eval(&l, &idx)].clone(),
                        objs[table.eval(&r, &idx)].clone(),
                    )
                }
                _ => (lifted.eval(&l, &env)?, lifted.eval(&r, &env)?),
            };
            if x != y {
                scan.violation = Some((env, x, y));
                return Ok(scan);
            }
        }
        Ok(scan)
    }
}

/// Scans algebras satisfying `eq` over `sig`, lifted through `monad`, for a
/// violation of `eq`.
pub fn check_preservation(
    monad: &Monad,
    sig: &Signature,
    eq: &Equation,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    eq.check(sig)?;
    let vars = eq.vars();
    let checker = Checker {
        monad,
        eq,
        sig,
        opts,
        nvars: vars.len(),
    };
    let (l, r) = eq.compile(sig)?;
    let mut stats = Stats::default();
    let mut witness = None;
    let mut complete = !matches!(opts.algebras, AlgebraSource::Random { .. });
    let mut first_error: Option<Error> = None;

    let sizes: Vec<usize> = match &opts.algebras {
        AlgebraSource::Given(list) => {
            let mut s: Vec<usize> = list.iter().map(|a| a.carrier()).collect();
            s.sort_unstable();
            s.dedup();
            s
        }
        _ => (opts.min_carrier.max(1)..=opts.max_carrier).collect(),
    };

    'sizes: for &n in &sizes {
        let ctx = match LiftContext::new(monad, n, sig) {
            Ok(c) => Some(c),
            Err(Error::Budget { .. } | Error::NotEnumerable { .. }) => None,
            Err(e) => return Err(e),
        };
        let remaining = opts.max_algebras.saturating_sub(stats.algebras_scanned);
        let given: Vec<&FinAlgebra> = match &opts.algebras {
            AlgebraSource::Given(list) => list.iter().filter(|a| a.carrier() == n).collect(),
            _ => Vec::new(),
        };
        let space = match &opts.algebras {
            AlgebraSource::Exhaustive => match AlgebraSpace::new(sig, n, u64::MAX) {
                Ok(s) => Some(s),
                Err(Error::Budget { .. }) => {
                    stats.budget_exhausted = true;
                    complete = false;
                    break 'sizes;
                }
                Err(e) => return Err(e),
            },
            _ => None,
        };
        let total = match &opts.algebras {
            AlgebraSource::Exhaustive => space.as_ref().map_or(0, |s| s.count()),
            AlgebraSource::Random { count } => *count,
            AlgebraSource::Given(_) => given.len() as u64,
        };
        let to_scan = total.min(remaining);
        if to_scan < total {
            stats.budget_exhausted = true;
            complete = false;
        }
        let job = |i: u64| -> Result<Scan> {
            let alg = match &opts.algebras {
                AlgebraSource::Exhaustive => space.as_ref().expect("space").nth(i),
                AlgebraSource::Given(_) => given[i as usize].clone(),
                AlgebraSource::Random { .. } => {
                    let mut rng = ChaCha8Rng::seed_from_u64(mix(opts.seed, n as u64, i));
                    let mut found = None;
                    for _ in 0..100_000 {
                        let cand = random_algebra(sig, n, &mut rng);
                        if cand.counterexample_compiled(&l, &r, vars.len()).is_none() {
                            found = Some(cand);
                            break;
                        }
                    }
                    match found {
                        Some(a) => a,
                        None => return Ok(Scan::skipped()),
                    }
                }
            };
            if alg.counterexample_compiled(&l, &r, vars.len()).is_some() {
                return Ok(Scan::skipped());
            }
            let scan_seed = mix(opts.seed ^ 0x5EED, n as u64, i);
            checker.scan_lifted(&alg, ctx.as_ref(), scan_seed)
        };
        let mut stop = false;
        par::chunked(to_scan, 64, job, |i, res| {
            let scan = match res {
                Ok(s) => s,
                Err(e) => {
                    first_error.get_or_insert(e);
                    stop = true;
                    return false;
                }
            };
            stats.algebras_scanned += 1;
            stats.algebras_satisfying += u64::from(scan.satisfying);
            stats.assignments_scanned += scan.assignments;
            stats.sampled |= scan.sampled;
            if let Some((assignment, lhs, rhs)) = scan.violation {
                let algebra = match &opts.algebras {
                    AlgebraSource::Exhaustive => space.as_ref().expect("space").nth(i),
                    AlgebraSource::Given(_) => given[i as usize].clone(),
                    AlgebraSource::Random { .. } => {
                        // Replay the draw to recover the algebra.
                        let mut rng = ChaCha8Rng::seed_from_u64(mix(opts.seed, n as u64, i));
                        loop {
                            let cand = random_algebra(sig, n, &mut rng);
                            if cand.counterexample_compiled(&l, &r, vars.len()).is_none() {
                                break cand;
                            }
                        }
                    }
                };
                witness = Some(Witness {
                    carrier: n,
                    algebra_index: i,
                    algebra,
                    variables: vars.clone(),
                    assignment,
                    lhs,
                    rhs,
                });
                stop = true;
                return false;
            }
            true
        });
        if let Some(e) = first_error {
            return Err(e);
        }
        if stop || stats.budget_exhausted {
            break;
        }
    }

    let verdict = if witness.is_some() {
        Verdict::Violated
    } else if complete && !stats.sampled && monad.tier() == Tier::Enumerable {
        Verdict::PreservedUpToBound
    } else {
        Verdict::Unknown
    };
    Ok(CheckReport {
        monad: monad.name().to_string(),
        equation: eq.to_string(),
        verdict,
        bounds: Bounds {
            min_carrier: opts.min_carrier,
            max_carrier: opts.max_carrier,
            max_algebras: opts.max_algebras,
            max_assignments: opts.max_assignments,
            algebras: match &opts.algebras {
                AlgebraSource::Exhaustive => "exhaustive".into(),
                AlgebraSource::Random { count } => format!("random {count} per size"),
                AlgebraSource::Given(l) => format!("given {}", l.len()),
            },
            assignments: match &opts.assignments {
                AssignmentSource::Exhaustive { fallback } => {
                    format!("exhaustive (fallback {fallback} random)")
                }
                AssignmentSource::Random { count } => format!("random {count} per algebra"),
                AssignmentSource::Given(l) => format!("given {}", l.len()),
            },
        },
        witness,
        stats,
        seed: opts.seed,
    })
}

/// Both sides of `eq` in the lifted algebra at `assignment`, computed from
/// the defining formula rather than from tables.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    /// Whether the two sides differ.
    pub violated: bool,
    pub lhs: TObject,
    pub rhs: TObject,
}

pub fn verify_witness(
    monad: &Monad,
    eq: &Equation,
    alg: &FinAlgebra,
    assignment: &[TObject],
) -> Result<WitnessCheck> {
    if let Some(cex) = alg.counterexample(eq)? {
        return Err(structural(format!(
            "the algebra does not satisfy {eq} (assignment {cex:?})"
        )));
    }
    let lifted = lift(monad, alg)?;
    let (lhs, rhs) = lifted.eval_equation(eq, assignment)?;
    Ok(WitnessCheck {
        violated: lhs != rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub commutes: bool,
    pub tuples_checked: u64,
    /// The first tuple of `TA^|V|` on which the square fails.
    pub witness: Option<Vec<TObject>>,
}

/// Checks `ψᵏ ∘ prepare_{T̂A}(t) = T(prepare_A(t)) ∘ ψ^{|V|}` on every tuple
/// of `TA^|V|` for `|A| = carrier`.
pub fn residual_commutes(
    monad: &Monad,
    t: &Term,
    vars: &[String],
    carrier: usize,
    budget: u64,
) -> Result<ResidualReport> {
    let prep = Prepare::new(t, vars)?;
    let objects = monad.carrier(carrier)?;
    let n = objects.len();
    let total = (n as u64)
        .checked_pow(vars.len() as u32)
        .filter(|&c| c <= budget)
        .ok_or_else(|| Error::Budget {
            what: format!("residual tuples over {}({carrier})", monad.name()),
            count: crate::finite::count_product(std::iter::repeat_n(n, vars.len())).to_string(),
            budget,
        })?;
    let prep_fun = prep.as_fun(carrier);
    let wide = vec![carrier; vars.len()];
    let narrow = vec![carrier; prep.picks.len()];
    let check = |i: usize| -> Result<Option<Vec<TObject>>> {
        let mut rest = i;
        let mut tuple = vec![objects[0].clone(); vars.len()];
        for slot in tuple.iter_mut().rev() {
            *slot = objects[rest % n].clone();
            rest /= n;
        }
        let picked = prep.apply(&tuple);
        let lhs = monad.psi_n(&picked.iter().collect::<Vec<_>>(), &narrow)?;
        let rhs = monad.fmap(
            &prep_fun,
            &monad.psi_n(&tuple.iter().collect::<Vec<_>>(), &wide)?,
        )?;
        Ok((lhs != rhs).then_some(tuple))
    };
    if n == 0 {
        return Ok(ResidualReport {
            commutes: true,
            tuples_checked: 0,
            witness: None,
        });
    }
    let found = par::find_first(0..total as usize, |i| match check(i) {
        Ok(None) => None,
        Ok(Some(w)) => Some(Ok(w)),
        Err(e) => Some(Err(e)),
    });
    Ok(match found {
        None => ResidualReport {
            commutes: true,
            tuples_checked: total,
            witness: None,
        },
        Some((i, w)) => ResidualReport {
            commutes: false,
            tuples_checked: i as u64 + 1,
            witness: Some(w?),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    /// The variable occurring once on one side and not on the other,
    /// moved to the front of `V`.
    pub dropped: String,
    pub variables: Vec<String>,
    /// The square for the side containing the dropped variable.
    pub commutes: bool,
    /// The square for the other side; it commutes exactly when `T1` is
    /// a single point.
    pub other_side_commutes: bool,
    pub elements_checked: usize,
}

/// On the trivial algebra, precomposes both residual squares of a one-drop
/// equation with `α = id × η₁ⁿ : T1 × 1ⁿ → (T1)ⁿ⁺¹` and checks them on every
/// element of `T1`.
pub fn alphacom_check(monad: &Monad, eq: &Equation) -> Result<AlphaReport> {
    if !classify(eq).one_drop {
        return Err(Error::NotOneDrop(eq.to_string()));
    }
    let vars = eq.vars();
    let (dropped, keeps, other) = vars
        .iter()
        .find_map(|v| match (eq.lhs.count(v), eq.rhs.count(v)) {
            (1, 0) => Some((v.clone(), &eq.lhs, &eq.rhs)),
            (0, 1) => Some((v.clone(), &eq.rhs, &eq.lhs)),
            _ => None,
        })
        .expect("one-drop equation has a dropped variable");
    let mut order = vec![dropped.clone()];
    order.extend(vars.iter().filter(|v| **v != dropped).cloned());
    let eta = monad.psi0();
    let t1 = monad.carrier(1)?;
    let square = |t: &Term, u: &TObject| -> Result<bool> {
        let prep = Prepare::new(t, &order)?;
        let mut alpha = vec![u.clone()];
        alpha.extend(std::iter::repeat_n(eta.clone(), order.len() - 1));
        let picked = prep.apply(&alpha);
        let lhs = monad.psi_n(&picked.iter().collect::<Vec<_>>(), &vec![1; picked.len()])?;
        let wide = monad.psi_n(&alpha.iter().collect::<Vec<_>>(), &vec![1; alpha.len()])?;
        let rhs = monad.fmap(&prep.as_fun(1), &wide)?;
        Ok(lhs == rhs)
    };
    let mut commutes = true;
    let mut other_side_commutes = true;
    for u in &t1 {
        commutes &= square(keeps, u)?;
        other_side_commutes &= square(other, u)?;
    }
    Ok(AlphaReport {
        dropped,
        variables: order,
        commutes,
        other_side_commutes,
        elements_checked: t1.len(),
    })
}

/// The algebra and assignment that turn a failure of relevance at `u ∈ TX`
/// (`ψ(u,u) ≠ TΔ(u)`) into a violation of `m(x,x) = x`: the carrier is
/// `X × X` with `m((a,b),(c,d)) = (a,d)` and `x = TΔ(u)`.
pub fn idempotence_seed(monad: &Monad, u: &TObject, x: usize) -> Result<(FinAlgebra, TObject)> {
    if x != 2 {
        return Err(structural("the seed construction uses a two-element X"));
    }
    let alg = crate::algebra::projection_algebra(x, 2, &[1, 4])?;
    let w = monad.fmap(&diagonal(x, 2), u)?;
    Ok((alg, w))
}

/// Assignment for a projection algebra on `X^width` (`|X| = base`) that
/// turns a relevance failure at `u ∈ TX` into a violation of an equation
/// duplicating `duplicated`: that variable gets `TΔ(u)`, every other one the
/// unit at the first point.
pub fn sleeve_assignment(
    monad: &Monad,
    u: &TObject,
    base: usize,
    width: usize,
    vars: &[String],
    duplicated: &str,
) -> Result<Vec<TObject>> {
    let carrier = base.pow(width as u32);
    let spread = monad.fmap(&diagonal(base, width), u)?;
    Ok(vars
        .iter()
        .map(|v| {
            if v == duplicated {
                spread.clone()
            } else {
                monad.unit(carrier, 0)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::MonoidTable;
    use crate::terms::parse_equation;

    fn msig() -> Signature {
        Signature::new([("m", 2)]).unwrap()
    }

    fn mzsig() -> Signature {
        Signature::new([("m", 2), ("zero", 0)]).unwrap()
    }

    #[test]
    fn powerset_commutativity_preserved() {
        let eq = parse_equation("m(x,y) = m(y,x)", &msig()).unwrap();
        let r = check_preservation(
            &Monad::powerset(),
            &msig(),
            &eq,
            &CheckOptions::exhaustive(3),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::PreservedUpToBound);
        assert!(r.stats.algebras_satisfying > 0);
    }

    #[test]
    fn powerset_idempotence_violated() {
        let eq = parse_equation("m(x,x) = x", &msig()).unwrap();
        let r = check_preservation(
            &Monad::powerset(),
            &msig(),
            &eq,
            &CheckOptions::exhaustive(3),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        let w = r.witness.unwrap();
        assert!(
            matches!(&w.assignment[0], TObject::Subset(b) if b.iter().filter(|&&x| x).count() == 2)
        );
        let replay = verify_witness(&Monad::powerset(), &eq, &w.algebra, &w.assignment).unwrap();
        assert!(replay.violated);
        assert_eq!((replay.lhs, replay.rhs), (w.lhs, w.rhs));
    }

    #[test]
    fn powerset_absorption_violated_by_empty_set() {
        let eq = parse_equation("m(x,zero) = zero", &mzsig()).unwrap();
        let r = check_preservation(
            &Monad::powerset(),
            &mzsig(),
            &eq,
            &CheckOptions::exhaustive(2),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        let w = r.witness.unwrap();
        assert_eq!(w.assignment[0], TObject::subset(w.carrier, &[]));
        assert_eq!(w.lhs, TObject::subset(w.carrier, &[]));
    }

    #[test]
    fn parallel_and_serial_agree() {
        let eq = parse_equation("m(x,m(y,y)) = m(y,x)", &msig()).unwrap();
        let run = || {
            serde_json::to_string(
                &check_preservation(
                    &Monad::powerset(),
                    &msig(),
                    &eq,
                    &CheckOptions::exhaustive(3),
                )
                .unwrap(),
            )
            .unwrap()
        };
        let a = run();
        par::set_parallel(false);
        let b = run();
        par::set_parallel(true);
        assert_eq!(a, b);
    }

    #[test]
    fn distribution_never_claims_preservation() {
        let eq = parse_equation("m(x,y) = m(y,x)", &msig()).unwrap();
        let r = check_preservation(
            &Monad::distribution(),
            &msig(),
            &eq,
            &CheckOptions::randomized(2, 5, 1),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        assert!(r.stats.sampled);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let eq = parse_equation("m(x,y) = m(y,x)", &msig()).unwrap();
        let opts = CheckOptions {
            max_algebras: 10,
            ..CheckOptions::exhaustive(3)
        };
        let r = check_preservation(&Monad::powerset(), &msig(), &eq, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        assert!(r.stats.budget_exhausted);
        assert_eq!(r.stats.algebras_scanned, 10);
    }

    #[test]
    fn residual_examples() {
        let sig = msig();
        let xy = vec!["x".to_string(), "y".to_string()];
        let lin = crate::terms::parse_term("m(y,x)", &sig).unwrap();
        assert!(
            residual_commutes(&Monad::powerset(), &lin, &xy, 3, 1 << 20)
                .unwrap()
                .commutes
        );
        let xx = crate::terms::parse_term("m(x,x)", &sig).unwrap();
        let r = residual_commutes(&Monad::powerset(), &xx, &xy[..1], 2, 1 << 20).unwrap();
        assert!(!r.commutes);
        assert_eq!(r.witness.unwrap(), vec![TObject::subset(2, &[0, 1])]);
        for n in 1..=3 {
            assert!(
                residual_commutes(&Monad::maybe(), &xx, &xy[..1], n, 1 << 20)
                    .unwrap()
                    .commutes
            );
        }
    }

    #[test]
    fn alpha_squares() {
        let eq = parse_equation("m(x,zero) = zero", &mzsig()).unwrap();
        for t in [
            Monad::powerset(),
            Monad::maybe(),
            Monad::nonempty_powerset(),
        ] {
            let r = alphacom_check(&t, &eq).unwrap();
            assert!(r.commutes);
            assert_eq!(r.other_side_commutes, r.elements_checked == 1);
        }
        let w = Monad::writer(MonoidTable::z2(), "z2").unwrap();
        let eq = parse_equation("m(x,m(y,y)) = m(y,y)", &msig()).unwrap();
        assert!(alphacom_check(&w, &eq).unwrap().commutes);
        let bad = parse_equation("m(x,x) = x", &msig()).unwrap();
        assert!(matches!(
            alphacom_check(&w, &bad),
            Err(Error::NotOneDrop(_))
        ));
    }

    #[test]
    fn writer_seed_from_relevance_failure() {
        let w = Monad::writer(MonoidTable::z2(), "z2").unwrap();
        let u = TObject::Writer {
            weight: 1,
            value: 0,
        };
        let (alg, x) = idempotence_seed(&w, &u, 2).unwrap();
        let eq = parse_equation("m(x,x) = x", alg.sig()).unwrap();
        let r = verify_witness(&w, &eq, &alg, std::slice::from_ref(&x)).unwrap();
        assert!(r.violated);
        assert_eq!(
            r.lhs,
            TObject::Writer {
                weight: 0,
                value: 0
            }
        );
        assert_eq!(r.rhs, x);
    }
}
