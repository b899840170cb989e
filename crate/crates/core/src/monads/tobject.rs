use std::fmt;

use num::{BigInt, BigRational, Zero};
use serde::{Serialize, Serializer};

use crate::error::{structural, Result};

/// An element of `TX` for a built-in monad and a finite `X`.
///
/// Every variant is kept in canonical form, so structural equality is
/// semantic equality: subsets and multisets are dense vectors indexed by
/// `X`, distributions are dense vectors of reduced exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TObject {
    /// Membership bits, for both the powerset and the non-empty powerset.
    Subset(Vec<bool>),
    /// Semiring element indices, one per element of `X`.
    Multiset(Vec<usize>),
    Dist(Vec<BigRational>),
    /// `None` is the added point `⊥` of `X + 1`.
    Maybe(Option<usize>),
    Writer {
        weight: usize,
        value: usize,
    },
    /// A function `A → X` as its table.
    Reader(Vec<usize>),
}

impl TObject {
    pub fn subset(size: usize, members: &[usize]) -> Self {
        let mut bits = vec![false; size];
        for &m in members {
            bits[m] = true;
        }
        TObject::Subset(bits)
    }

    /// Distribution from `(element, numerator, denominator)` triples.
    pub fn dist(size: usize, weights: &[(usize, i64, i64)]) -> Self {
        let mut w = vec![BigRational::zero(); size];
        for &(x, n, d) in weights {
            w[x] += BigRational::new(BigInt::from(n), BigInt::from(d));
        }
        TObject::Dist(w)
    }

    pub fn variant(&self) -> &'static str {
        match self {
            TObject::Subset(_) => "subset",
            TObject::Multiset(_) => "multiset",
            TObject::Dist(_) => "distribution",
            TObject::Maybe(_) => "maybe",
            TObject::Writer { .. } => "writer",
            TObject::Reader(_) => "reader",
        }
    }

    /// Parses the literal syntax produced by `Display`. `size` is `|X|`,
    /// needed for subsets whose literal lists members only.
    pub fn parse_literal(s: &str, size: usize) -> Result<Self> {
        let s = s.trim();
        let bad = || structural(format!("malformed object literal `{s}`"));
        let list = |body: &str| -> Result<Vec<String>> {
            let body = body.trim();
            if body.is_empty() {
                return Ok(Vec::new());
            }
            Ok(body.split(',').map(|p| p.trim().to_string()).collect())
        };
        let index = |p: &str| p.parse::<usize>().map_err(|_| bad());
        if s == "none" {
            return Ok(TObject::Maybe(None));
        }
        if let Some(body) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let members = list(body)?
                .iter()
                .map(|p| index(p))
                .collect::<Result<Vec<_>>>()?;
            if members.iter().any(|&m| m >= size) {
                return Err(bad());
            }
            return Ok(TObject::subset(size, &members));
        }
        if let Some(body) = s.strip_prefix("just(").and_then(|r| r.strip_suffix(')')) {
            return Ok(TObject::Maybe(Some(index(body.trim())?)));
        }
        if let Some(body) = s.strip_prefix("w(").and_then(|r| r.strip_suffix(')')) {
            let parts = list(body)?;
            if parts.len() != 2 {
                return Err(bad());
            }
            return Ok(TObject::Writer {
                weight: index(&parts[0])?,
                value: index(&parts[1])?,
            });
        }
        if let Some(body) = s.strip_prefix("ms[").and_then(|r| r.strip_suffix(']')) {
            let v = list(body)?
                .iter()
                .map(|p| index(p))
                .collect::<Result<_>>()?;
            return Ok(TObject::Multiset(v));
        }
        if let Some(body) = s.strip_prefix("r[").and_then(|r| r.strip_suffix(']')) {
            let v = list(body)?
                .iter()
                .map(|p| index(p))
                .collect::<Result<_>>()?;
            return Ok(TObject::Reader(v));
        }
        if let Some(body) = s.strip_prefix("d[").and_then(|r| r.strip_suffix(']')) {
            let v = list(body)?
                .iter()
                .map(|p| p.parse::<BigRational>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            return Ok(TObject::Dist(v));
        }
        Err(bad())
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for TObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TObject::Subset(bits) => write!(
                f,
                "{{{}}}",
                join(bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
            ),
            TObject::Multiset(v) => write!(f, "ms[{}]", join(v)),
            TObject::Dist(v) => write!(f, "d[{}]", join(v)),
            TObject::Maybe(None) => write!(f, "none"),
            TObject::Maybe(Some(x)) => write!(f, "just({x})"),
            TObject::Writer { weight, value } => write!(f, "w({weight},{value})"),
            TObject::Reader(v) => write!(f, "r[{}]", join(v)),
        }
    }
}

impl Serialize for TObject {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        let objs = [
            TObject::subset(3, &[0, 2]),
            TObject::subset(3, &[]),
            TObject::Multiset(vec![1, 0, 1]),
            TObject::dist(3, &[(0, 1, 2), (2, 1, 2)]),
            TObject::Maybe(None),
            TObject::Maybe(Some(2)),
            TObject::Writer {
                weight: 1,
                value: 0,
            },
            TObject::Reader(vec![0, 1]),
        ];
        for o in objs {
            let s = o.to_string();
            assert_eq!(TObject::parse_literal(&s, 3).unwrap(), o, "{s}");
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(TObject::subset(3, &[0, 2]).to_string(), "{0,2}");
        assert_eq!(
            TObject::dist(2, &[(0, 1, 2), (1, 1, 2)]).to_string(),
            "d[1/2,1/2]"
        );
        assert!(TObject::parse_literal("{5}", 3).is_err());
        assert!(TObject::parse_literal("w(1)", 3).is_err());
    }
}
