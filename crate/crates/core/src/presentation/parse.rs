//! Line-oriented text format for presentations.
//!
//! ```text
//! # Heisenberg group
//! gens: x1 x2 x3
//! rel: x2^x1 = x2 x3
//! rel: x2^(x1^-1) = x2 x3^-1
//! ```
//!
//! Unstated relations mean the two generators commute. A missing
//! `xi^(xj^-1)` relation is derived from `xi^xj` by collection.

use num_bigint::BigInt;
use num_traits::One;

use super::{NilpotentPresentation, Tail, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Caret,
    Minus,
    LParen,
    RParen,
    Star,
    Eq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits one line into tokens; `offset` is the 1-based column of the
/// first character of `text`.
fn lex(text: &str, line: usize, offset: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        let column = offset + pos;
        let single = match c {
            '^' => Some(Tok::Caret),
            '-' => Some(Tok::Minus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '*' | '·' => Some(Tok::Star),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, column });
            pos += 1;
        } else if c.is_whitespace() {
            pos += 1;
        } else if c.is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            out.push(Spanned {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                column,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = pos;
            while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                pos += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..pos].iter().collect()),
                column,
            });
        } else {
            return Err(syntax(line, column, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.column)
            .unwrap_or(self.end_column)
    }

    fn next(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        tok
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let column = self.column();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(self.line, column, format!("expected {what}"))),
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// `[-]INT` or `([-]INT)`.
    fn signed_int(&mut self) -> Result<BigInt> {
        let paren = self.eat(&Tok::LParen);
        let negative = self.eat(&Tok::Minus);
        let column = self.column();
        let value = match self.next() {
            Some(Tok::Int(v)) => v,
            _ => return Err(syntax(self.line, column, "expected an integer exponent")),
        };
        if paren {
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(if negative { -value } else { value })
    }

    fn generator(&mut self, pres: &NilpotentPresentation) -> Result<usize> {
        let column = self.column();
        match self.next() {
            Some(Tok::Ident(name)) => pres
                .generator_index(&name)
                .ok_or_else(|| syntax(self.line, column, format!("unknown generator '{name}'"))),
            _ => Err(syntax(self.line, column, "expected a generator name")),
        }
    }
}

fn parse_word_tokens(pres: &NilpotentPresentation, cur: &mut Cursor<'_>) -> Result<Word> {
    let mut word = Word::default();
    while !cur.at_end() {
        if cur.eat(&Tok::Star) {
            continue;
        }
        let g = cur.generator(pres)?;
        let e = if cur.eat(&Tok::Caret) {
            cur.signed_int()?
        } else {
            BigInt::one()
        };
        word.push(g, e);
    }
    Ok(word)
}

pub(super) fn parse_word(pres: &NilpotentPresentation, text: &str, line: usize) -> Result<Word> {
    let toks = lex(text, line, 1)?;
    let mut cur = Cursor {
        toks: &toks,
        pos: 0,
        line,
        end_column: text.chars().count() + 1,
    };
    parse_word_tokens(pres, &mut cur)
}

#[derive(Debug)]
enum Lhs {
    Conj { i: usize, j: usize, positive: bool },
}

fn parse_lhs(pres: &NilpotentPresentation, cur: &mut Cursor<'_>) -> Result<Lhs> {
    let line = cur.line;
    let start = cur.column();
    let i = cur.generator(pres)?;
    cur.expect(Tok::Caret, "'^'")?;
    let positive;
    let j;
    match cur.peek() {
        Some(Tok::Ident(_)) => {
            j = cur.generator(pres)?;
            positive = true;
        }
        Some(Tok::Int(_)) | Some(Tok::Minus) => return Err(Error::PowerRelation { line }),
        Some(Tok::LParen) => {
            cur.next();
            match cur.peek() {
                Some(Tok::Int(_)) | Some(Tok::Minus) => return Err(Error::PowerRelation { line }),
                _ => {}
            }
            j = cur.generator(pres)?;
            cur.expect(Tok::Caret, "'^-1'")?;
            let column = cur.column();
            let e = cur.signed_int()?;
            if e != -BigInt::one() {
                return Err(syntax(line, column, "conjugating exponent must be -1"));
            }
            cur.expect(Tok::RParen, "')'")?;
            positive = false;
        }
        _ => return Err(syntax(line, cur.column(), "expected a generator or '('")),
    }
    if j >= i {
        return Err(Error::IndexRange(format!(
            "line {line}, column {start}: relation {}^{} needs the conjugating generator earlier than the conjugated one",
            pres.name(i),
            pres.name(j)
        )));
    }
    Ok(Lhs::Conj { i, j, positive })
}

/// Reads `x_i x_{k1}^{e1} ...` as the tail of a relation on `x_i`.
fn rhs_tail(pres: &NilpotentPresentation, i: usize, word: &Word, line: usize) -> Result<Tail> {
    let letters = word.letters();
    let shape_error = || {
        Error::IndexRange(format!(
            "line {line}: right-hand side must be {} followed by later generators in increasing order",
            pres.name(i)
        ))
    };
    match letters.first() {
        Some((g, e)) if *g == i && e.is_one() => {}
        _ => return Err(shape_error()),
    }
    let mut tail = Tail::new();
    let mut last = i;
    for (g, e) in &letters[1..] {
        if *g <= last {
            return Err(shape_error());
        }
        last = *g;
        tail.push((*g, e.clone()));
    }
    Ok(tail)
}

/// Parses the presentation text format.
pub fn parse_presentation(text: &str) -> Result<NilpotentPresentation> {
    let mut pres: Option<NilpotentPresentation> = None;
    let mut pos_stated: Vec<(usize, usize)> = vec![];
    let mut neg_stated: Vec<(usize, usize)> = vec![];

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let body = content.trim_start();
        let (keyword, rest, rest_offset) = match body.split_once(':') {
            Some((k, r)) if !k.contains('=') => (Some(k.trim()), r, lead + k.len() + 1),
            _ => (None, body, lead),
        };
        let column0 = content[..rest_offset].chars().count() + 1;

        match keyword {
            Some("gens") => {
                if pres.is_some() {
                    return Err(syntax(line, lead + 1, "generators declared twice"));
                }
                let toks = lex(rest, line, column0)?;
                let mut names = Vec::new();
                for t in toks {
                    match t.tok {
                        Tok::Ident(name) => {
                            if names.contains(&name) {
                                return Err(syntax(line, t.column, format!("duplicate generator '{name}'")));
                            }
                            names.push(name)
                        }
                        _ => return Err(syntax(line, t.column, "expected a generator name")),
                    }
                }
                if names.is_empty() {
                    return Err(syntax(line, column0, "no generators declared"));
                }
                pres = Some(NilpotentPresentation::free_abelian(names)?);
            }
            Some("rel") | None => {
                let p = pres
                    .as_mut()
                    .ok_or_else(|| syntax(line, lead + 1, "relation before 'gens:' line"))?;
                let toks = lex(rest, line, column0)?;
                let eq = toks
                    .iter()
                    .position(|t| t.tok == Tok::Eq)
                    .ok_or_else(|| syntax(line, column0, "expected '='"))?;
                let end_column = toks[eq].column;
                let mut lhs_cur = Cursor {
                    toks: &toks[..eq],
                    pos: 0,
                    line,
                    end_column,
                };
                let Lhs::Conj { i, j, positive } = parse_lhs(p, &mut lhs_cur)?;
                if !lhs_cur.at_end() {
                    return Err(syntax(line, lhs_cur.column(), "unexpected input after left-hand side"));
                }
                let mut rhs_cur = Cursor {
                    toks: &toks[eq + 1..],
                    pos: 0,
                    line,
                    end_column: content.chars().count() + 1,
                };
                let word = parse_word_tokens(p, &mut rhs_cur)?;
                let tail = rhs_tail(p, i, &word, line)?;
                let stated = if positive { &mut pos_stated } else { &mut neg_stated };
                if stated.contains(&(i, j)) {
                    return Err(syntax(line, lead + 1, "relation stated twice"));
                }
                stated.push((i, j));
                if positive {
                    p.set_conj_pos(i, j, tail)?;
                } else {
                    p.set_conj_neg(i, j, tail)?;
                }
            }
            Some(other) => {
                return Err(syntax(line, lead + 1, format!("unknown directive '{other}'")));
            }
        }
    }

    let mut pres = pres.ok_or_else(|| syntax(1, 1, "missing 'gens:' line"))?;
    pres.derive_missing_negative(&neg_stated)?;
    Ok(pres)
}
