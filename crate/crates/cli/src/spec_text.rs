//! Parser for the textual sum/value mini-grammar:
//!
//! ```text
//! sum     := ("S" | "R") "{" factors ";" exp "}"
//! factors := factor ("," factor)* | ""
//! factor  := ["~"] INT ["^" INT]      (~ = bar, ^ = repetition)
//! exp     := ["~"] INT                (~ = bar over q)
//! mrv     := "MRV(" sint ("," sint)* ")"
//! sint    := ["-"] INT                (negative = barred)
//! ```
//!
//! `render(parse(s))` parses back to an equal structure; rendering groups
//! runs of equal factors with `^`.

use std::fmt;

use eulerium_core::sums::{HarmonicFactor, MrvIndex, SumBase, SumSpec};

/// A parsed specification: an Euler-type sum or a multiple R-value index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Sum(SumSpec),
    Mrv(MrvIndex),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Sum(s) => s.fmt(f),
            Parsed::Mrv(m) => m.fmt(f),
        }
    }
}

/// Parse failure with byte position and the tokens that were admissible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}: expected {}; found {}",
            self.pos,
            self.expected.join(" | "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(b) => format!("'{}'", b as char),
            None => "end of input".into(),
        }
    }

    fn err<T>(&self, expected: &[&'static str]) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, expected: expected.to_vec(), found: self.found() })
    }

    fn eat(&mut self, b: u8, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&[name])
        }
    }

    fn eat_if(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(&["INT"]);
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<u32>().ok())
            .ok_or(ParseError { pos: start, expected: vec!["INT"], found: "overlong integer".into() })
    }

    fn done(&self) -> bool {
        self.pos >= self.s.len()
    }
}

/// Parses a sum spec or MRV index from the mini-grammar.
pub fn parse_spec(text: &str) -> Result<Parsed, ParseError> {
    let mut c = Cursor::new(text);
    let out = match c.peek() {
        Some(b'S') | Some(b'R') if !text.starts_with("MRV") => parse_sum(&mut c)?,
        Some(b'M') => parse_mrv(&mut c)?,
        _ => return c.err(&["'S'", "'R'", "'MRV'"]),
    };
    if !c.done() {
        return c.err(&["end of input"]);
    }
    Ok(out)
}

fn parse_sum(c: &mut Cursor) -> Result<Parsed, ParseError> {
    let base = match c.peek() {
        Some(b'S') => SumBase::Integer,
        Some(b'R') => SumBase::HalfInteger,
        _ => return c.err(&["'S'", "'R'"]),
    };
    c.pos += 1;
    c.eat(b'{', "'{'")?;
    let mut factors = Vec::new();
    if c.peek() != Some(b';') {
        loop {
            let alternating = c.eat_if(b'~');
            let order = c.int()?;
            let reps = if c.eat_if(b'^') { c.int()? } else { 1 };
            if reps == 0 || reps > 16 {
                return Err(ParseError {
                    pos: c.pos,
                    expected: vec!["repetition in 1..=16"],
                    found: reps.to_string(),
                });
            }
            for _ in 0..reps {
                factors.push(HarmonicFactor { order, alternating });
            }
            if !c.eat_if(b',') {
                break;
            }
        }
    }
    c.eat(b';', "';'")?;
    let alternating_sign = c.eat_if(b'~');
    let q = c.int()?;
    c.eat(b'}', "'}'")?;
    let spec = SumSpec { factors, base, q, alternating_sign };
    spec.validate().map_err(|e| ParseError {
        pos: c.pos,
        expected: vec!["valid sum spec"],
        found: e.to_string(),
    })?;
    Ok(Parsed::Sum(spec))
}

fn parse_mrv(c: &mut Cursor) -> Result<Parsed, ParseError> {
    for (b, name) in [(b'M', "'M'"), (b'R', "'R'"), (b'V', "'V'"), (b'(', "'('")] {
        c.eat(b, name)?;
    }
    let mut parts = Vec::new();
    loop {
        let neg = c.eat_if(b'-');
        let mag = c.int()? as i64;
        parts.push(if neg { -mag } else { mag });
        if !c.eat_if(b',') {
            break;
        }
    }
    c.eat(b')', "')'")?;
    Ok(Parsed::Mrv(MrvIndex { parts }))
}
