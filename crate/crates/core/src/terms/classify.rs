//! Syntactic classification of equations by variable occurrence counts.

use serde::Serialize;

use crate::error::{Error, Result};

use super::{Equation, Term};

/// Occurrence-count flags of an equation `t₁ = t₂` over `V = Var(t₁) ∪ Var(t₂)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EquationClass {
    /// Every variable occurs exactly once on each side.
    pub linear: bool,
    /// Some variable occurs on one side only.
    pub drop: bool,
    /// Some variable occurs exactly once on one side and not on the other.
    pub one_drop: bool,
    /// Not linear, and no variable occurs twice on a side.
    pub strict_drop: bool,
    /// Some variable occurs at least twice on a side.
    pub dup: bool,
    /// Dup, and no variable occurs more than twice on a side.
    pub two_dup: bool,
    /// Not linear, and every variable occurs on both sides.
    pub strict_dup: bool,
}

impl EquationClass {
    /// Short label of the most specific classes, for tables.
    pub fn label(&self) -> String {
        if self.linear {
            return "linear".into();
        }
        let mut parts = Vec::new();
        if self.strict_drop {
            parts.push("strict-drop");
        } else if self.one_drop {
            parts.push("one-drop");
        } else if self.drop {
            parts.push("drop");
        }
        if self.strict_dup {
            parts.push("strict-dup");
        } else if self.dup {
            parts.push("dup");
        }
        if self.two_dup {
            parts.push("2-dup");
        }
        parts.join(" ")
    }
}

pub fn classify(eq: &Equation) -> EquationClass {
    let counts: Vec<(usize, usize)> = eq
        .vars()
        .iter()
        .map(|v| (eq.lhs.count(v), eq.rhs.count(v)))
        .collect();
    let linear = counts.iter().all(|&c| c == (1, 1));
    let drop = counts.iter().any(|&(a, b)| (a > 0) != (b > 0));
    let one_drop = counts
        .iter()
        .any(|&(a, b)| (a, b) == (1, 0) || (a, b) == (0, 1));
    let strict_drop = !linear && counts.iter().all(|&(a, b)| a <= 1 && b <= 1);
    let dup = counts.iter().any(|&(a, b)| a > 1 || b > 1);
    let two_dup = dup && counts.iter().all(|&(a, b)| a <= 2 && b <= 2);
    let strict_dup = !linear && counts.iter().all(|&(a, b)| a >= 1 && b >= 1);
    EquationClass {
        linear,
        drop,
        one_drop,
        strict_drop,
        dup,
        two_dup,
        strict_dup,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

/// A 2-discerning candidate oriented so that the duplicate sits in `rhs`
/// of `oriented`, together with its renamed linear companion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscerningCandidate {
    /// The input equation, mirrored when the duplicate was on the left.
    pub oriented: Equation,
    /// `s₂ = s₂′`: the duplicate side with its second occurrence renamed,
    /// against the same term with the two names swapped.
    pub companion: Equation,
    pub duplicated: String,
    pub renamed: String,
    /// Side of the input equation carrying the duplicate.
    pub side: Side,
}

/// Builds the linear companion of a 2-discerning candidate: the side `t₂`
/// that duplicates `x` gives `s₂` by renaming the second occurrence of `x`
/// to a fresh `x′`, and `s₂′` swaps `x` and `x′` in `s₂`.
pub fn discerning_companion(eq: &Equation) -> Result<DiscerningCandidate> {
    let reject = |why: &str| Err(Error::NotDiscerningCandidate(format!("{eq}: {why}")));
    let class = classify(eq);
    if !class.two_dup {
        return reject("not 2-dup");
    }
    if class.drop {
        return reject("drops a variable");
    }
    let vars = eq.vars();
    let dups: Vec<(&String, usize, usize)> = vars
        .iter()
        .map(|v| (v, eq.lhs.count(v), eq.rhs.count(v)))
        .filter(|&(_, a, b)| a > 1 || b > 1)
        .collect();
    if dups.len() != 1 {
        return reject("more than one variable is duplicated");
    }
    let (x, a, b) = dups[0];
    let (side, oriented) = match (a, b) {
        (2, 1) => (Side::Lhs, eq.flipped()),
        (1, 2) => (Side::Rhs, eq.clone()),
        _ => return reject("the duplicate occurs twice on both sides"),
    };
    let mut fresh = format!("{x}'");
    while vars.contains(&fresh) {
        fresh.push('\'');
    }
    let mut seen = 0;
    let s2 = rename_second(&oriented.rhs, x, &fresh, &mut seen);
    let swapped = s2.rename(&|v: &str| {
        if v == x {
            fresh.clone()
        } else if v == fresh {
            x.clone()
        } else {
            v.to_string()
        }
    });
    Ok(DiscerningCandidate {
        companion: Equation {
            lhs: s2,
            rhs: swapped,
        },
        oriented,
        duplicated: x.clone(),
        renamed: fresh,
        side,
    })
}

fn rename_second(t: &Term, x: &str, fresh: &str, seen: &mut usize) -> Term {
    match t {
        Term::Var(v) if v == x => {
            *seen += 1;
            if *seen == 2 {
                Term::var(fresh)
            } else {
                t.clone()
            }
        }
        Term::Var(_) => t.clone(),
        Term::App(op, ts) => Term::App(
            op.clone(),
            ts.iter()
                .map(|s| rename_second(s, x, fresh, seen))
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_equation, Signature};

    fn sig() -> Signature {
        Signature::new([("m", 2), ("a", 2), ("zero", 0), ("one", 0)]).unwrap()
    }

    fn cls(src: &str) -> EquationClass {
        classify(&parse_equation(src, &sig()).unwrap())
    }

    #[test]
    fn classification_examples() {
        let c = cls("m(x,zero) = zero");
        assert!(c.strict_drop && c.one_drop && c.drop && !c.dup);

        let c = cls("m(x,m(y,y)) = m(y,y)");
        assert!(c.one_drop && c.dup && !c.strict_drop && !c.strict_dup);

        let c = cls("m(x,x) = m(y,y)");
        assert!(c.drop && !c.one_drop);

        let c = cls("m(x,x) = x");
        assert!(c.strict_dup && c.two_dup && !c.drop);

        let c = cls("m(x,a(y,z)) = a(m(x,y),m(x,z))");
        assert!(c.strict_dup);

        let c = cls("m(x,one) = x");
        assert!(c.linear && !c.drop && !c.dup);
        assert_eq!(c.label(), "linear");
    }

    #[test]
    fn companions() {
        let eq = parse_equation("m(y,m(x,y)) = m(y,x)", &sig()).unwrap();
        let c = discerning_companion(&eq).unwrap();
        assert_eq!(c.companion.to_string(), "m(y,m(x,y')) = m(y',m(x,y))");
        assert_eq!(c.side, Side::Lhs);

        let eq = parse_equation("m(x,m(y,y)) = m(y,x)", &sig()).unwrap();
        let c = discerning_companion(&eq).unwrap();
        assert_eq!(c.companion.to_string(), "m(x,m(y,y')) = m(x,m(y',y))");

        let eq = parse_equation("m(x,x) = x", &sig()).unwrap();
        let c = discerning_companion(&eq).unwrap();
        assert_eq!(c.side, Side::Lhs);
        assert_eq!(c.companion.to_string(), "m(x,x') = m(x',x)");
        assert!(classify(&c.companion).linear);

        for bad in [
            "m(x,zero) = zero",
            "m(x,y) = m(y,x)",
            "m(m(x,x),m(y,y)) = m(x,y)",
            "m(x,x) = m(x,x)",
        ] {
            let eq = parse_equation(bad, &sig()).unwrap();
            assert!(matches!(
                discerning_companion(&eq),
                Err(Error::NotDiscerningCandidate(_))
            ));
        }
    }
}
