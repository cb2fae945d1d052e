//! Text syntax for diagrams and linear combinations.
//!
//! ```text
//! lc    := ["-"] lterm (("+" | "-") lterm)*
//! lterm := ["{" scalar "}"] seq
//! seq   := par (";" par)*        vertical, left operand at the bottom
//! par   := atom ("*" atom)*      horizontal, left operand leftmost
//! atom  := "id(" word ")" | name ["[" label "]"] | "(" lc ")"
//! word  := ("^" | "v" | "1")*
//! ```

use std::sync::Arc;

use thiserror::Error;

use super::{Diagram, DiagramError, Generator, LinearCombination, Word};
use crate::scalar::{ParamSet, Scalar, ScalarError};

/// Generator lookup used by the parser.
pub trait Signature {
    fn lookup(&self, name: &str, label: Option<&str>) -> Option<Arc<Generator>>;
    fn params(&self) -> &Arc<ParamSet>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at offset {pos}")]
    UnknownGenerator { pos: usize, name: String },
    #[error("type error at offset {pos}: {source}")]
    Type { pos: usize, source: DiagramError },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownGenerator { pos, .. }
            | ParseError::Type { pos, .. } => Some(*pos),
            ParseError::Scalar(ScalarError::Parse { pos, .. }) => Some(*pos),
            ParseError::Scalar(_) => None,
        }
    }
}

pub fn parse_lc(sig: &dyn Signature, text: &str) -> Result<LinearCombination, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        sig,
    };
    let lc = p.lc()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.syntax("unexpected input"));
    }
    Ok(lc)
}

/// Parses text that must denote a single diagram with coefficient one.
pub fn parse_diagram(sig: &dyn Signature, text: &str) -> Result<Diagram, ParseError> {
    let lc = parse_lc(sig, text)?;
    let mut terms = lc.terms();
    match (terms.next(), terms.next()) {
        (Some((d, c)), None) if c.is_one() => Ok(d.clone()),
        _ => Err(ParseError::Syntax {
            pos: 0,
            msg: "expected a single diagram".into(),
        }),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    sig: &'a dyn Signature,
}

impl<'a> Parser<'a> {
    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", c)))
        }
    }

    fn lc(&mut self) -> Result<LinearCombination, ParseError> {
        let negate = self.eat('-');
        let mut acc = self.lterm()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let at = {
                self.skip_ws();
                self.pos
            };
            let sign = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Ok(acc);
            };
            let mut t = self.lterm()?;
            if sign {
                t = t.neg();
            }
            acc = acc
                .add(&t)
                .map_err(|source| ParseError::Type { pos: at, source })?;
        }
    }

    fn lterm(&mut self) -> Result<LinearCombination, ParseError> {
        let coeff = if self.peek() == Some('{') {
            let open = self.pos;
            let close = self.src[open..]
                .find('}')
                .map(|i| open + i)
                .ok_or_else(|| self.syntax("unclosed `{`"))?;
            let s = Scalar::parse_at(self.sig.params(), &self.src[open + 1..close], open + 1)?;
            self.pos = close + 1;
            Some(s)
        } else {
            None
        };
        let body = self.seq()?;
        match coeff {
            Some(c) => Ok(body.scale(&c).expect("parameters come from the signature")),
            None => Ok(body),
        }
    }

    fn seq(&mut self) -> Result<LinearCombination, ParseError> {
        let mut acc = self.par()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if !self.eat(';') {
                return Ok(acc);
            }
            let above = self.par()?;
            acc = above
                .compose(&acc)
                .map_err(|source| ParseError::Type { pos: at, source })?;
        }
    }

    fn par(&mut self) -> Result<LinearCombination, ParseError> {
        let mut acc = self.atom()?;
        while self.eat('*') {
            let right = self.atom()?;
            acc = acc.tensor(&right).expect("parameters come from the signature");
        }
        Ok(acc)
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let src = self.src;
        let rest = &src[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit())))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn atom(&mut self) -> Result<LinearCombination, ParseError> {
        let params = self.sig.params().clone();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.lc()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.ident().unwrap().to_string();
                if name == "id" {
                    self.expect('(')?;
                    let open = self.pos;
                    let close = self.src[open..]
                        .find(')')
                        .map(|i| open + i)
                        .ok_or_else(|| self.syntax("unclosed `(`"))?;
                    let word = Word::parse(&self.src[open..close]).ok_or(ParseError::Syntax {
                        pos: open,
                        msg: "objects are written `^`, `v` or `1`".into(),
                    })?;
                    self.pos = close + 1;
                    return Ok(LinearCombination::from_diagram(Diagram::identity(word), &params));
                }
                let label = if self.src[self.pos..].starts_with('[') {
                    let open = self.pos + 1;
                    let close = self.src[open..]
                        .find(']')
                        .map(|i| open + i)
                        .ok_or_else(|| self.syntax("unclosed `[`"))?;
                    self.pos = close + 1;
                    Some(self.src[open..close].trim().to_string())
                } else {
                    None
                };
                let g = self
                    .sig
                    .lookup(&name, label.as_deref())
                    .ok_or_else(|| ParseError::UnknownGenerator {
                        pos: start,
                        name: match &label {
                            Some(l) => format!("{}[{}]", name, l),
                            None => name.clone(),
                        },
                    })?;
                Ok(LinearCombination::from_diagram(Diagram::generator(&g), &params))
            }
            Some(_) => Err(self.syntax("expected a generator, `id(...)` or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

pub fn render_diagram(d: &Diagram) -> String {
    if d.slices().is_empty() {
        return format!("id({})", d.dom());
    }
    let levels = d.to_sequence().levels();
    let parts: Vec<String> = d
        .slices()
        .iter()
        .zip(&levels)
        .map(|(s, w)| {
            let mut pieces = Vec::new();
            if s.offset > 0 {
                pieces.push(format!("id({})", w.slice(0, s.offset)));
            }
            pieces.push(s.gen.display_name());
            let end = s.offset + s.dom_len();
            if end < w.len() {
                pieces.push(format!("id({})", w.slice(end, w.len())));
            }
            pieces.join(" * ")
        })
        .collect();
    parts.join(" ; ")
}

pub fn render_lc(lc: &LinearCombination) -> String {
    if lc.is_zero() {
        return "0".to_string();
    }
    lc.terms()
        .map(|(d, c)| {
            if c.is_one() {
                render_diagram(d)
            } else {
                format!("{{{}}} {}", c, render_diagram(d))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
