//! Recursive-descent parser for the group-spec grammar:
//! `C(k)`, `Ab(k1,...)`, `D(n)`, `S(n)`, `Wr(m,n)`, `A(m,p,n)`, `G(m,p,n)`,
//! `H(p,q)`, `X(spec,spec,...)`.

use std::fmt;

use mindeg_core::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Malformed text; `pos` is a byte offset into the input.
    Syntax { input: String, pos: usize, message: String },
    /// Well-formed but rejected by the family's constraints.
    SpecInvalid(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { input, pos, message } => {
                writeln!(f, "parse error at column {}: {message}", pos + 1)?;
                writeln!(f, "  {input}")?;
                write!(f, "  {}^", " ".repeat(*pos))
            }
            ParseError::SpecInvalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut p = Parser { input: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    spec.validate().map_err(|e| ParseError::SpecInvalid(e.to_string()))?;
    Ok(spec)
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { input: self.input.to_string(), pos: self.pos, message: message.into() }
    }

    fn rest(&self) -> &str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn peek_is(&mut self, c: char) -> bool {
        self.skip_ws();
        self.rest().starts_with(c)
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let value = self.rest()[..len].parse().map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn numbers(&mut self, count: usize) -> Result<Vec<usize>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.number()?];
        while out.len() < count {
            self.expect(',')?;
            out.push(self.number()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn spec(&mut self) -> Result<GroupSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_alphabetic).count();
        let name = &self.input[start..start + len];
        self.pos += len;
        Ok(match name {
            "C" => GroupSpec::Cyclic(self.numbers(1)?[0]),
            "D" => GroupSpec::Dihedral(self.numbers(1)?[0]),
            "S" => GroupSpec::Symmetric(self.numbers(1)?[0]),
            "Wr" => {
                let v = self.numbers(2)?;
                GroupSpec::Wreath { m: v[0], n: v[1] }
            }
            "A" => {
                let v = self.numbers(3)?;
                GroupSpec::Amn { m: v[0], p: v[1], n: v[2] }
            }
            "G" => {
                let v = self.numbers(3)?;
                GroupSpec::Gmn { m: v[0], p: v[1], n: v[2] }
            }
            "H" => {
                let v = self.numbers(2)?;
                GroupSpec::Hpq { p: v[0], q: v[1] }
            }
            "Ab" => {
                self.expect('(')?;
                let mut ks = vec![self.number()?];
                while self.peek_is(',') {
                    self.expect(',')?;
                    ks.push(self.number()?);
                }
                self.expect(')')?;
                GroupSpec::Abelian(ks)
            }
            "X" => {
                self.expect('(')?;
                let mut parts = vec![self.spec()?];
                while self.peek_is(',') {
                    self.expect(',')?;
                    parts.push(self.spec()?);
                }
                self.expect(')')?;
                GroupSpec::Product(parts)
            }
            _ => {
                self.pos = start;
                return Err(self.error("expected one of C, Ab, D, S, Wr, A, G, H, X"));
            }
        })
    }
}
