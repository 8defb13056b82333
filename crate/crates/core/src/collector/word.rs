//! Words in the generators `x`, `y`: parsing, printing and evaluation.
//!
//! Grammar:
//! ```text
//! expr := term ('*' term)*
//! term := atom ('^' int | '^' term)?
//! atom := 'x' | 'y' | '1' | '(' expr ')' | '[' expr (',' expr)+ ']'
//! int  := '-'? digits
//! ```
//! Brackets with more than two entries are left-normed commutators, and
//! `a^b` with a non-integer exponent is the conjugate `b^-1 a b`.

use std::fmt;

use super::{Element, Family, GroupCtx};
use crate::error::{Error, Result};

/// Abstract syntax of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    One,
    X,
    Y,
    Pow(Box<Word>, i64),
    Conj(Box<Word>, Box<Word>),
    Mul(Vec<Word>),
    /// Left-normed commutator of at least two entries.
    Comm(Vec<Word>),
}

impl Word {
    pub fn pow(self, n: i64) -> Word {
        Word::Pow(Box::new(self), n)
    }

    pub fn conj(self, by: Word) -> Word {
        Word::Conj(Box::new(self), Box::new(by))
    }

    /// `y_i = x^-i y x^i`.
    pub fn y_i(i: i64) -> Word {
        if i == 0 {
            Word::Y
        } else {
            Word::Mul(vec![Word::X.pow(-i), Word::Y, Word::X.pow(i)])
        }
    }

    /// `[y, x, ..., x]` with `j` copies of `x`.
    pub fn y_x_comm(j: usize) -> Word {
        if j == 0 {
            return Word::Y;
        }
        let mut v = vec![Word::Y];
        v.extend(std::iter::repeat_n(Word::X, j));
        Word::Comm(v)
    }

    /// Product of the given factors, dropping trivial ones.
    pub fn product(factors: Vec<Word>) -> Word {
        let f: Vec<Word> = factors.into_iter().filter(|w| *w != Word::One).collect();
        match f.len() {
            0 => Word::One,
            1 => f.into_iter().next().unwrap(),
            _ => Word::Mul(f),
        }
    }
}

fn fmt_atom(w: &Word, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match w {
        Word::One | Word::X | Word::Y | Word::Comm(_) => write!(f, "{w}"),
        _ => write!(f, "({w})"),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::One => write!(f, "1"),
            Word::X => write!(f, "x"),
            Word::Y => write!(f, "y"),
            Word::Pow(b, n) => {
                fmt_atom(b, f)?;
                write!(f, "^{n}")
            }
            Word::Conj(b, c) => {
                fmt_atom(b, f)?;
                write!(f, "^")?;
                match **c {
                    Word::Conj(..) => write!(f, "{c}"),
                    _ => fmt_atom(c, f),
                }
            }
            Word::Mul(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    match t {
                        Word::Mul(_) => write!(f, "({t})")?,
                        _ => write!(f, "{t}")?,
                    }
                }
                Ok(())
            }
            Word::Comm(es) => {
                write!(f, "[")?;
                for (i, t) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<Word> {
        let mut factors = vec![self.term()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.term()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Word::Mul(factors) })
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => Ok(Word::Pow(Box::new(base), self.int()?)),
            Some(_) => Ok(Word::Conj(Box::new(base), Box::new(self.term()?))),
            None => self.err("missing exponent"),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Word::X)
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Word::Y)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::One)
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut entries = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    entries.push(self.expr()?);
                }
                if entries.len() < 2 {
                    return self.err("commutator needs at least two entries");
                }
                self.expect(b']')?;
                Ok(Word::Comm(entries))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a word; the whole input must be consumed.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let w = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(w)
}

/// Evaluates a word in a context.
pub fn eval_word(word: &Word, ctx: &GroupCtx) -> Element {
    match word {
        Word::One => ctx.identity(),
        Word::X => ctx.x(),
        Word::Y => ctx.y(),
        Word::Pow(b, n) => ctx.pow(&eval_word(b, ctx), *n),
        Word::Conj(b, c) => ctx.conj(&eval_word(b, ctx), &eval_word(c, ctx)),
        Word::Mul(fs) => fs.iter().fold(ctx.identity(), |acc, w| ctx.mul(&acc, &eval_word(w, ctx))),
        Word::Comm(es) => {
            let vals: Vec<Element> = es.iter().map(|w| eval_word(w, ctx)).collect();
            ctx.comm_left_normed(&vals)
        }
    }
}

/// Word naming the normal-form generator at body index `i`.
pub(crate) fn body_letter(ctx: &GroupCtx, i: usize) -> Word {
    match ctx.family() {
        Family::Gk => {
            let q = ctx.q();
            if i < q {
                Word::y_i(i as i64)
            } else if i == q {
                Word::Y.pow(ctx.p() as i64)
            } else {
                Word::Comm(vec![Word::Y, Word::y_i((i - q) as i64)])
            }
        }
        Family::Wk => Word::y_x_comm(i),
    }
}

/// A word evaluating to `g`, following the normal-form order.
pub fn canonical_word(ctx: &GroupCtx, g: &Element) -> Word {
    let mut factors = Vec::new();
    if g.a != 0 {
        factors.push(Word::X.pow(g.a as i64));
    }
    for (i, &e) in g.body.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let letter = body_letter(ctx, i);
        factors.push(if e == 1 { letter } else { letter.pow(e as i64) });
    }
    Word::product(factors)
}
