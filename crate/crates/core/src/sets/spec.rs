//! Parser for the textual set grammar:
//!
//! ```text
//! spec := even | odd | empty | all
//!       | finite:<n>(,<n>)* | tail:<N> | prng:seed=<u64>,p=<float>
//!       | file:<path>
//!       | xor(<spec>,<spec>) | not(<spec>)
//!       | above(<spec>,<r>) | below(<spec>,<r>)
//! ```
//!
//! A `file:` path runs to the end of input at top level and to the next `,`
//! or `)` inside a combinator.

use crate::error::{Error, Result};

use super::{NatSet, Side};

pub fn parse_set_spec(text: &str) -> Result<NatSet> {
    let mut p = Parser {
        src: text,
        pos: 0,
        depth: 0,
        reserve_number: false,
    };
    let set = p.spec()?;
    if p.pos != text.len() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(set)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
    // Set while parsing the first argument of above/below, whose trailing
    // `,<r>` would otherwise be swallowed by a finite list.
    reserve_number: bool,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{token}`")))
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_lowercase()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a natural number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn float(&mut self) -> Result<f64> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
        {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "expected a probability"))
    }

    fn spec(&mut self) -> Result<NatSet> {
        let start = self.pos;
        let reserve = std::mem::take(&mut self.reserve_number);
        let word = self.word().to_owned();
        match (word.as_str(), self.peek()) {
            ("even", _) => Ok(NatSet::even()),
            ("odd", _) => Ok(NatSet::odd()),
            ("empty", _) => Ok(NatSet::empty()),
            ("all", _) => Ok(NatSet::all()),
            ("finite", Some(b':')) => {
                self.pos += 1;
                let mut elements = vec![self.number()?];
                let mut commas = Vec::new();
                while self.rest().starts_with(',')
                    && self.src.as_bytes().get(self.pos + 1).is_some_and(u8::is_ascii_digit)
                {
                    commas.push(self.pos);
                    self.pos += 1;
                    elements.push(self.number()?);
                }
                if reserve && self.peek() == Some(b')') {
                    if let Some(comma) = commas.pop() {
                        elements.pop();
                        self.pos = comma;
                    }
                }
                Ok(NatSet::finite(elements))
            }
            ("tail", Some(b':')) => {
                self.pos += 1;
                Ok(NatSet::tail(self.number()?))
            }
            ("prng", Some(b':')) => {
                self.pos += 1;
                self.expect("seed=")?;
                let seed = self.number()?;
                self.expect(",p=")?;
                let at = self.pos;
                let p = self.float()?;
                NatSet::prng(seed, p).map_err(|_| Error::parse(at, "probability must lie in [0, 1]"))
            }
            ("file", Some(b':')) => {
                self.pos += 1;
                let from = self.pos;
                let len = if self.depth == 0 {
                    self.rest().len()
                } else {
                    self.rest().find([',', ')']).unwrap_or(self.rest().len())
                };
                self.pos += len;
                if len == 0 {
                    return Err(Error::parse(from, "empty file path"));
                }
                NatSet::from_bitstream_file(&self.src[from..self.pos])
            }
            ("xor", Some(b'(')) => {
                let (a, b) = self.pair(|p| p.spec())?;
                Ok(a.symmetric_difference(&b))
            }
            ("not", Some(b'(')) => {
                self.open()?;
                let a = self.spec()?;
                self.close()?;
                Ok(a.complement())
            }
            ("above", Some(b'(')) | ("below", Some(b'(')) => {
                self.reserve_number = true;
                let (a, r) = self.pair(|p| p.number())?;
                let side = if word == "above" { Side::Above } else { Side::Below };
                Ok(a.restrict(r, side))
            }
            _ => Err(Error::parse(start, "unknown set spec")),
        }
    }

    fn open(&mut self) -> Result<()> {
        self.expect("(")?;
        self.depth += 1;
        Ok(())
    }

    fn close(&mut self) -> Result<()> {
        self.expect(")")?;
        self.depth -= 1;
        Ok(())
    }

    fn pair<T>(&mut self, second: impl FnOnce(&mut Self) -> Result<T>) -> Result<(NatSet, T)> {
        let reserve = std::mem::take(&mut self.reserve_number);
        self.open()?;
        self.reserve_number = reserve;
        let a = self.spec()?;
        self.expect(",")?;
        let b = second(self)?;
        self.close()?;
        Ok((a, b))
    }
}
