//! Recursive-descent parser for prefix terms, equations and theory files.

use crate::error::{ParseError, Result};

use super::{is_ident, Equation, Signature, Term, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Equals,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str, line: usize, column0: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = column0 + i;
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                column,
            });
        } else {
            return Err(ParseError::new(
                line,
                column,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: column0 + chars.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, msg: impl Into<String>) -> ParseError {
        ParseError::new(at.line, at.column, msg)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok != tok {
            return Err(self.error(&t, format!("expected {what}, found {}", describe(&t.tok))));
        }
        Ok(())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.bump();
        let Tok::Ident(name) = &start.tok else {
            return Err(self.error(
                &start,
                format!("expected a term, found {}", describe(&start.tok)),
            ));
        };
        let has_args = self.peek().tok == Tok::LParen;
        match self.sig.arity(name) {
            None if has_args => {
                Err(self.error(&start, format!("unknown operation symbol `{name}`")))
            }
            None => Ok(Term::Var(name.clone())),
            Some(arity) => {
                let mut args = Vec::new();
                if has_args {
                    self.bump();
                    if self.peek().tok != Tok::RParen {
                        loop {
                            args.push(self.term()?);
                            if self.peek().tok == Tok::Comma {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RParen, "`)` or `,`")?;
                }
                if args.len() != arity {
                    return Err(self.error(
                        &start,
                        format!("`{name}` takes {arity} argument(s), got {}", args.len()),
                    ));
                }
                Ok(Term::App(name.clone(), args))
            }
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok != Tok::End {
            return Err(self.error(&t, format!("unexpected {}", describe(&t.tok))));
        }
        Ok(())
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Equals => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

fn term_at(src: &str, sig: &Signature, line: usize, column: usize) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(src, line, column)?,
        pos: 0,
        sig,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

fn equation_at(src: &str, sig: &Signature, line: usize, column: usize) -> Result<Equation> {
    let mut p = Parser {
        toks: lex(src, line, column)?,
        pos: 0,
        sig,
    };
    let lhs = p.term()?;
    p.expect(Tok::Equals, "`=`")?;
    let rhs = p.term()?;
    p.finish()?;
    Equation::new(lhs, rhs).map_err(|e| ParseError::new(line, column, e.to_string()).into())
}

pub fn parse_term(src: &str, sig: &Signature) -> Result<Term> {
    Ok(term_at(src, sig, 1, 1)?)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(src: &str, sig: &Signature) -> Result<Equation> {
    equation_at(src, sig, 1, 1)
}

/// Parses a theory file:
///
/// ```text
/// theory semigroup
/// ops: m/2
/// eq: m(m(x,y),z) = m(x,m(y,z))
/// ```
///
/// Blank lines and `#` comments are ignored.
pub fn parse_theory(src: &str) -> Result<Theory> {
    let mut name = None;
    let mut sig: Option<Signature> = None;
    let mut equations = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let text = content.trim();
        if text.is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| -> crate::error::Error {
            ParseError::new(line, col, msg).into()
        };
        if let Some(rest) = text.strip_prefix("theory") {
            let n = rest.trim();
            if name.is_some() {
                return Err(err(indent + 1, "duplicate `theory` line".into()));
            }
            if !is_ident(n) {
                return Err(err(indent + 1, format!("bad theory name `{n}`")));
            }
            name = Some(n.to_string());
        } else if let Some(rest) = text.strip_prefix("ops:") {
            if sig.is_some() {
                return Err(err(indent + 1, "duplicate `ops:` line".into()));
            }
            let base = indent + 5;
            let mut s = Signature::default();
            let mut offset = 0;
            for part in rest.split(',') {
                let col = base + offset + (part.len() - part.trim_start().len());
                offset += part.len() + 1;
                let part = part.trim();
                if part.is_empty() && rest.trim().is_empty() {
                    continue;
                }
                let (sym, ar) = part
                    .split_once('/')
                    .ok_or_else(|| err(col, format!("expected `symbol/arity`, found `{part}`")))?;
                let arity = ar
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(col, format!("bad arity in `{part}`")))?;
                s.add(sym.trim(), arity)
                    .map_err(|e| err(col, e.to_string()))?;
            }
            sig = Some(s);
        } else if let Some(rest) = text.strip_prefix("eq:") {
            let s = sig
                .as_ref()
                .ok_or_else(|| err(indent + 1, "`eq:` before `ops:`".into()))?;
            let col = indent + 4 + (rest.len() - rest.trim_start().len());
            equations.push(equation_at(rest.trim(), s, line, col)?);
        } else {
            return Err(err(indent + 1, format!("unrecognized line `{text}`")));
        }
    }
    Ok(Theory {
        name: name.unwrap_or_else(|| "unnamed".into()),
        sig: sig.unwrap_or_default(),
        equations,
    })
}
