//! Executable monad, functor and monoidal-structure laws.
//!
//! Two regimes share the same law predicates. The exhaustive regime
//! enumerates every element, every map and every nesting over sets of size
//! up to a bound, materializing `TTX` and `TTTX` through the canonical
//! numbering. The sampled regime draws seeded random sizes, elements and
//! maps, and states the multiplication laws in Kleisli form
//! (`μ ∘ T(i ↦ fᵢ)`), which needs no enumeration of `TTX`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::finite::{diagonal, enumerate_maps, swap, FinFun, FinSet};

use super::{Monad, TObject, Tier};

/// Largest `|TTTX|` materialized for the associativity law.
const MAX_TTT: usize = 1 << 17;

#[derive(Clone, Debug, Serialize)]
pub struct LawFailure {
    pub law: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub monad: String,
    pub regime: String,
    pub checks: u64,
    pub failures: Vec<LawFailure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Recorder {
    checks: u64,
    failures: Vec<LawFailure>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            checks: 0,
            failures: Vec::new(),
        }
    }

    /// Records one instance; only the first failure of each law is kept.
    fn check(&mut self, law: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && !self.failures.iter().any(|f| f.law == law) {
            self.failures.push(LawFailure {
                law,
                witness: witness(),
            });
        }
    }

    fn finish(self, t: &Monad, regime: String) -> LawReport {
        LawReport {
            monad: t.name().to_string(),
            regime,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn prod_fun(f: &FinFun, g: &FinFun) -> FinFun {
    crate::finite::cross(f, g)
}

fn show(items: &[&TObject]) -> String {
    items
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

// Law predicates shared by both regimes. Each returns whether the instance
// holds; structural errors count as failures.

fn functor_composition(t: &Monad, f: &FinFun, g: &FinFun, u: &TObject) -> bool {
    let gf = crate::finite::compose(f, g).unwrap();
    let lhs = t.fmap(&gf, u);
    let rhs = t.fmap(f, u).and_then(|v| t.fmap(g, &v));
    matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
}

fn mf1(t: &Monad, u: &TObject, x: usize) -> bool {
    t.psi(u, x, &t.psi0(), 1).is_ok_and(|w| &w == u)
}

fn mf2(t: &Monad, u: &TObject, x: usize) -> bool {
    t.psi(&t.psi0(), 1, u, x).is_ok_and(|w| &w == u)
}

/// Row-major indexing makes the associator the identity on indices.
fn mf3(t: &Monad, u: &TObject, v: &TObject, w: &TObject, s: [usize; 3]) -> bool {
    let left = t
        .psi(u, s[0], v, s[1])
        .and_then(|uv| t.psi(&uv, s[0] * s[1], w, s[2]));
    let right = t
        .psi(v, s[1], w, s[2])
        .and_then(|vw| t.psi(u, s[0], &vw, s[1] * s[2]));
    matches!((left, right), (Ok(a), Ok(b)) if a == b)
}

fn sym(t: &Monad, u: &TObject, x: usize, v: &TObject, y: usize) -> bool {
    let lhs = t.psi(u, x, v, y).and_then(|w| t.fmap(&swap(x, y), &w));
    matches!((lhs, t.psi(v, y, u, x)), (Ok(a), Ok(b)) if a == b)
}

fn mm1(t: &Monad, a: usize, x: usize, b: usize, y: usize) -> bool {
    t.psi(&t.unit(x, a), x, &t.unit(y, b), y)
        .is_ok_and(|w| w == t.unit(x * y, a * y + b))
}

fn psi_naturality(t: &Monad, f: &FinFun, g: &FinFun, u: &TObject, v: &TObject) -> Result<bool> {
    let (x, y) = (f.dom().size(), g.dom().size());
    let (x2, y2) = (f.cod().size(), g.cod().size());
    let lhs = t.fmap(&prod_fun(f, g), &t.psi(u, x, v, y)?)?;
    let rhs = t.psi(&t.fmap(f, u)?, x2, &t.fmap(g, v)?, y2)?;
    Ok(lhs == rhs)
}

fn chi_naturality(t: &Monad, f: &FinFun, g: &FinFun, w: &TObject) -> Result<bool> {
    let (x, y) = (f.dom().size(), g.dom().size());
    let (x2, y2) = (f.cod().size(), g.cod().size());
    let (a, b) = t.chi(&t.fmap(&prod_fun(f, g), w)?, x2, y2)?;
    let (a0, b0) = t.chi(w, x, y)?;
    Ok(a == t.fmap(f, &a0)? && b == t.fmap(g, &b0)?)
}

/// `Δ_{TX} = χ ∘ TΔ`.
fn diagonal_law(t: &Monad, u: &TObject, x: usize) -> Result<bool> {
    let (a, b) = t.chi(&t.fmap(&diagonal(x, 2), u)?, x, x)?;
    Ok(&a == u && &b == u)
}

/// Kleisli associativity: `(t >>= f) >>= g = t >>= (i ↦ fᵢ >>= g)`.
fn kleisli_assoc(
    t: &Monad,
    outer: &TObject,
    f: &[TObject],
    g: &[TObject],
    x: usize,
) -> Result<bool> {
    let lhs = t.bind(&t.bind(outer, f, g.len())?, g, x)?;
    let fg = f
        .iter()
        .map(|fi| t.bind(fi, g, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(lhs == t.bind(outer, &fg, x)?)
}

/// Kleisli form of MM.2: `ψ(U >>= f, V >>= g) = ψ(U, V) >>= ψ(fᵢ, gⱼ)`.
fn kleisli_mm2(
    t: &Monad,
    u: &TObject,
    f: &[TObject],
    v: &TObject,
    g: &[TObject],
    sizes: (usize, usize),
) -> Result<bool> {
    let (x, y) = sizes;
    let lhs = t.psi(&t.bind(u, f, x)?, x, &t.bind(v, g, y)?, y)?;
    let uv = t.psi(u, f.len(), v, g.len())?;
    let mut family = Vec::with_capacity(f.len() * g.len());
    for fi in f {
        for gj in g {
            family.push(t.psi(fi, x, gj, y)?);
        }
    }
    Ok(lhs == t.bind(&uv, &family, x * y)?)
}

/// Runs every law exhaustively over sets of size `0..=max_size`.
pub fn check_exhaustive(t: &Monad, max_size: usize) -> Result<LawReport> {
    let mut rec = Recorder::new();
    let sizes: Vec<usize> = (0..=max_size)
        .filter(|&x| t.carrier_len(x).is_ok())
        .collect();
    let carriers: Vec<Vec<TObject>> = (0..=max_size)
        .map(|x| t.carrier(x).unwrap_or_default())
        .collect();
    let maps = |x: usize, y: usize| -> Vec<FinFun> {
        enumerate_maps(&FinSet::new(x), &FinSet::new(y), u64::MAX)
            .map(|m| m.collect())
            .unwrap_or_default()
    };

    for &x in &sizes {
        let tx = &carriers[x];
        for u in tx {
            rec.check(
                "functor identity",
                t.fmap(&FinFun::identity(x), u).is_ok_and(|v| &v == u),
                || u.to_string(),
            );
            rec.check("MF.1", mf1(t, u, x), || u.to_string());
            rec.check("MF.2", mf2(t, u, x), || u.to_string());
            rec.check("diagonal", diagonal_law(t, u, x)?, || u.to_string());
        }
        for &y in &sizes {
            for f in maps(x, y) {
                for a in 0..x {
                    rec.check(
                        "unit naturality",
                        t.fmap(&f, &t.unit(x, a))? == t.unit(y, f.apply(a)),
                        || format!("f={:?} a={a}", f.table()),
                    );
                }
                for &z in &sizes {
                    for g in maps(y, z) {
                        for u in tx {
                            rec.check(
                                "functor composition",
                                functor_composition(t, &f, &g, u),
                                || format!("f={:?} g={:?} u={u}", f.table(), g.table()),
                            );
                        }
                    }
                }
            }
            for u in tx {
                for v in &carriers[y] {
                    rec.check("SYM", sym(t, u, x, v, y), || show(&[u, v]));
                    for &z in &sizes {
                        for w in &carriers[z] {
                            rec.check("MF.3", mf3(t, u, v, w, [x, y, z]), || show(&[u, v, w]));
                        }
                    }
                }
            }
            for a in 0..x {
                for b in 0..y {
                    rec.check("MM.1", mm1(t, a, x, b, y), || format!("a={a} b={b}"));
                }
            }
            let txy = t.carrier(x * y)?;
            for x2 in sizes.iter().copied().filter(|&s| s <= x.max(1)) {
                for y2 in sizes.iter().copied().filter(|&s| s <= y.max(1)) {
                    let (fs, gs) = (maps(x, x2), maps(y, y2));
                    for f in &fs {
                        for g in &gs {
                            for u in tx {
                                for v in &carriers[y] {
                                    rec.check(
                                        "psi naturality",
                                        psi_naturality(t, f, g, u, v)?,
                                        || {
                                            format!(
                                                "f={:?} g={:?} {}",
                                                f.table(),
                                                g.table(),
                                                show(&[u, v])
                                            )
                                        },
                                    );
                                }
                            }
                            for w in &txy {
                                rec.check("chi naturality", chi_naturality(t, f, g, w)?, || {
                                    format!("f={:?} g={:?} w={w}", f.table(), g.table())
                                });
                            }
                        }
                    }
                }
            }
        }
        monad_laws_materialized(t, x, &mut rec)?;
    }
    for &x in &sizes {
        for &y in &sizes {
            mm2_materialized(t, x, y, &mut rec)?;
        }
    }
    Ok(rec.finish(t, format!("exhaustive |X| <= {max_size}")))
}

/// The monad laws and naturality of `μ` on materialized `TTX`, `TTTX`.
fn monad_laws_materialized(t: &Monad, x: usize, rec: &mut Recorder) -> Result<()> {
    let tx = t.carrier(x)?;
    let n1 = tx.len();
    let Ok(ttx) = t.carrier(n1) else {
        return Ok(());
    };
    let n2 = ttx.len();
    let eta = FinFun::from_fn(x, n1, |a| t.encode(x, &t.unit(x, a)).unwrap());
    let mu_objs = ttx
        .iter()
        .map(|tt| t.bind(tt, &tx, x))
        .collect::<Result<Vec<_>>>()?;
    let mu = FinFun::new(
        FinSet::new(n2),
        FinSet::new(n1),
        mu_objs
            .iter()
            .map(|m| t.encode(x, m))
            .collect::<Result<_>>()?,
    )?;
    for (i, u) in tx.iter().enumerate() {
        let left = &mu_objs[t.encode(n1, &t.unit(n1, i))?];
        rec.check("left unit", left == u, || u.to_string());
        let right = t.bind(&t.fmap(&eta, u)?, &tx, x)?;
        rec.check("right unit", &right == u, || u.to_string());
    }
    // Naturality of μ against every map into a set of the same size.
    let maps = enumerate_maps(&FinSet::new(x), &FinSet::new(x), 1 << 12)
        .map(|m| m.collect::<Vec<_>>())
        .unwrap_or_default();
    for f in &maps {
        let tf = FinFun::new(
            FinSet::new(n1),
            FinSet::new(n1),
            tx.iter()
                .map(|u| t.fmap(f, u).and_then(|v| t.encode(x, &v)))
                .collect::<Result<_>>()?,
        )?;
        for (j, tt) in ttx.iter().enumerate() {
            let lhs = t.bind(&t.fmap(&tf, tt)?, &tx, x)?;
            let rhs = t.fmap(f, &mu_objs[j])?;
            rec.check("multiplication naturality", lhs == rhs, || {
                format!("f={:?} tt={tt}", f.table())
            });
        }
    }
    let ttt_len = match t.carrier_len(n2) {
        Ok(n) if n <= MAX_TTT => n,
        _ => return Ok(()),
    };
    for k in 0..ttt_len {
        let ttt = t.decode(n2, k);
        let lhs = t.bind(&t.fmap(&mu, &ttt)?, &tx, x)?;
        let flattened = t.bind(&ttt, &ttx, n1)?;
        let rhs = t.bind(&flattened, &tx, x)?;
        rec.check("associativity", lhs == rhs, || ttt.to_string());
    }
    Ok(())
}

/// MM.2 on materialized `TTX × TTY`.
fn mm2_materialized(t: &Monad, x: usize, y: usize, rec: &mut Recorder) -> Result<()> {
    let (tx, ty, txy) = (t.carrier(x)?, t.carrier(y)?, t.carrier(x * y)?);
    let (Ok(ttx), Ok(tty)) = (t.carrier(tx.len()), t.carrier(ty.len())) else {
        return Ok(());
    };
    let tpsi = FinFun::new(
        FinSet::new(tx.len() * ty.len()),
        FinSet::new(txy.len()),
        tx.iter()
            .flat_map(|u| ty.iter().map(move |v| (u, v)))
            .map(|(u, v)| t.psi(u, x, v, y).and_then(|w| t.encode(x * y, &w)))
            .collect::<Result<_>>()?,
    )?;
    for uu in &ttx {
        let mu_u = t.bind(uu, &tx, x)?;
        for vv in &tty {
            let lhs = t.psi(&mu_u, x, &t.bind(vv, &ty, y)?, y)?;
            let inner = t.psi(uu, tx.len(), vv, ty.len())?;
            let rhs = t.bind(&t.fmap(&tpsi, &inner)?, &txy, x * y)?;
            rec.check("MM.2", lhs == rhs, || show(&[uu, vv]));
        }
    }
    Ok(())
}

/// Runs every law on `samples` seeded random instances per law, with set
/// sizes drawn from `sizes`.
pub fn check_sampled(
    t: &Monad,
    sizes: std::ops::RangeInclusive<usize>,
    samples: usize,
    seed: u64,
) -> Result<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder::new();
    let lo = *sizes.start().max(&1);
    let hi = *sizes.end();
    let size = |rng: &mut ChaCha8Rng| rng.gen_range(lo..=hi);
    let map = |rng: &mut ChaCha8Rng, x: usize, y: usize| {
        FinFun::new(
            FinSet::new(x),
            FinSet::new(y),
            (0..x).map(|_| rng.gen_range(0..y)).collect(),
        )
        .unwrap()
    };
    let family = |rng: &mut ChaCha8Rng, k: usize, x: usize| -> Result<Vec<TObject>> {
        (0..k).map(|_| t.sample(x, rng)).collect()
    };
    for _ in 0..samples {
        let (x, y, z) = (size(&mut rng), size(&mut rng), size(&mut rng));
        let u = t.sample(x, &mut rng)?;
        let v = t.sample(y, &mut rng)?;
        let w = t.sample(z, &mut rng)?;
        let f = map(&mut rng, x, y);
        let g = map(&mut rng, y, z);
        let a = rng.gen_range(0..x);
        let b = rng.gen_range(0..y);

        rec.check(
            "functor identity",
            t.fmap(&FinFun::identity(x), &u)? == u,
            || u.to_string(),
        );
        rec.check(
            "functor composition",
            functor_composition(t, &f, &g, &u),
            || format!("f={:?} g={:?} u={u}", f.table(), g.table()),
        );
        rec.check(
            "unit naturality",
            t.fmap(&f, &t.unit(x, a))? == t.unit(y, f.apply(a)),
            || format!("f={:?} a={a}", f.table()),
        );

        // Monad laws in Kleisli form.
        let fam_f = family(&mut rng, x, y)?;
        let fam_g = family(&mut rng, y, z)?;
        rec.check(
            "left unit",
            t.bind(&t.unit(x, a), &fam_f, y)? == fam_f[a],
            || format!("a={a} f={}", show(&fam_f.iter().collect::<Vec<_>>())),
        );
        let units: Vec<TObject> = (0..x).map(|i| t.unit(x, i)).collect();
        rec.check("right unit", t.bind(&u, &units, x)? == u, || u.to_string());
        rec.check(
            "associativity",
            kleisli_assoc(t, &u, &fam_f, &fam_g, z)?,
            || format!("u={u}"),
        );
        let pushed: Vec<TObject> = fam_f
            .iter()
            .map(|fi| t.fmap(&g, fi))
            .collect::<Result<_>>()?;
        rec.check(
            "multiplication naturality",
            t.fmap(&g, &t.bind(&u, &fam_f, y)?)? == t.bind(&u, &pushed, z)?,
            || format!("u={u} g={:?}", g.table()),
        );

        rec.check("MF.1", mf1(t, &u, x), || u.to_string());
        rec.check("MF.2", mf2(t, &u, x), || u.to_string());
        rec.check("MF.3", mf3(t, &u, &v, &w, [x, y, z]), || {
            show(&[&u, &v, &w])
        });
        rec.check("SYM", sym(t, &u, x, &v, y), || show(&[&u, &v]));
        rec.check("MM.1", mm1(t, a, x, b, y), || format!("a={a} b={b}"));
        let (k, l) = (size(&mut rng), size(&mut rng));
        let uu = t.sample(k, &mut rng)?;
        let vv = t.sample(l, &mut rng)?;
        let ff = family(&mut rng, k, x)?;
        let gg = family(&mut rng, l, y)?;
        rec.check("MM.2", kleisli_mm2(t, &uu, &ff, &vv, &gg, (x, y))?, || {
            show(&[&uu, &vv])
        });

        let (x2, y2) = (size(&mut rng), size(&mut rng));
        let f2 = map(&mut rng, x, x2);
        let g2 = map(&mut rng, y, y2);
        rec.check(
            "psi naturality",
            psi_naturality(t, &f2, &g2, &u, &v)?,
            || format!("f={:?} g={:?} {}", f2.table(), g2.table(), show(&[&u, &v])),
        );
        let wxy = t.sample(x * y, &mut rng)?;
        rec.check("chi naturality", chi_naturality(t, &f2, &g2, &wxy)?, || {
            format!("f={:?} g={:?} w={wxy}", f2.table(), g2.table())
        });
        rec.check("diagonal", diagonal_law(t, &u, x)?, || u.to_string());
    }
    Ok(rec.finish(
        t,
        format!("sampled |X| in {lo}..={hi}, {samples} draws, seed {seed}"),
    ))
}

/// The standard regime: exhaustive on `|X| <= 2` plus sampled spot checks
/// at `|X| = 3` for enumerable monads; `samples` sampled draws over sizes
/// `1..=3` for the others.
pub fn check_all(t: &Monad, samples: usize, seed: u64) -> Result<Vec<LawReport>> {
    match t.tier() {
        Tier::Enumerable => Ok(vec![
            check_exhaustive(t, 2)?,
            check_sampled(t, 3..=3, samples.min(200), seed)?,
        ]),
        Tier::Sampleable => Ok(vec![check_sampled(t, 1..=3, samples, seed)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{MonoidTable, SemiringTable};

    #[test]
    fn small_instances_pass() {
        for t in [
            Monad::maybe(),
            Monad::writer(MonoidTable::z2(), "z2").unwrap(),
            Monad::nonempty_powerset(),
        ] {
            let r = check_exhaustive(&t, 2).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.checks > 100);
        }
    }

    #[test]
    fn sampled_distribution_passes() {
        let r = check_sampled(&Monad::distribution(), 1..=3, 60, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn sabotage_breaks_unit_law() {
        let t = Monad::multiset(SemiringTable::f2(), "f2")
            .unwrap()
            .sabotaged();
        let r = check_exhaustive(&t, 2).unwrap();
        assert!(r.failures.iter().any(|f| f.law == "MM.1"));
    }
}
