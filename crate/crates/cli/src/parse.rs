//! Surface syntax for forms.
//!
//! ```text
//! expr := term ('+' term)*
//! term := [int] var '^2'
//!       | var '(' [int] var ['+' int] ')'
//! var  := 'x' | 'y' | 'z'
//! ```
//!
//! Whitespace is ignored. Each of `x`, `y`, `z` must appear exactly once. An
//! expression made only of `c v^2` terms is a diagonal form; anything else is
//! a polynomial sum, with `c v^2` read as `v(cv)`.

use std::fmt;

use terna_core::repr::SieveTarget;
use terna_core::{DiagonalForm, PolySum, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormExpr {
    Diagonal(DiagonalForm),
    Poly(PolySum),
}

impl FormExpr {
    pub fn target(&self) -> SieveTarget {
        match *self {
            FormExpr::Diagonal(f) => f.into(),
            FormExpr::Poly(p) => p.into(),
        }
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormExpr::Diagonal(d) => d.fmt(f),
            FormExpr::Poly(p) => p.fmt(f),
        }
    }
}

impl std::str::FromStr for FormExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_form(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Byte offset into the input.
    Syntax {
        pos: usize,
        msg: String,
    },
    Duplicate {
        pos: usize,
        var: char,
    },
    Arity {
        found: usize,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, msg } => write!(f, "at offset {pos}: {msg}"),
            ParseError::Duplicate { pos, var } => {
                write!(f, "at offset {pos}: variable {var} appears twice")
            }
            ParseError::Arity { found } => {
                write!(f, "expected the three variables x, y, z, found {found}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&mut self, msg: impl Into<String>) -> Result<T, ParseError> {
        self.skip_ws();
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe();
            self.error(format!("expected '{}', found {found}", c as char))
        }
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{}'", c as char),
            None => "end of input".into(),
        }
    }

    /// Whitespace between digits is ignored too.
    fn int(&mut self) -> Result<Option<u64>, ParseError> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d) = self.peek().filter(u8::is_ascii_digit) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u64))
                .ok_or(ParseError::Syntax {
                    pos: start,
                    msg: "integer is too large".into(),
                })?;
            self.pos += 1;
        }
        Ok(Some(v))
    }

    fn var(&mut self) -> Result<(usize, usize), ParseError> {
        match self.peek() {
            Some(c @ (b'x' | b'y' | b'z')) => {
                let at = self.pos;
                self.pos += 1;
                Ok((at, (c - b'x') as usize))
            }
            _ => {
                let found = self.describe();
                self.error(format!("expected a variable x, y or z, found {found}"))
            }
        }
    }
}

struct Parsed {
    var: usize,
    at: usize,
    term: Term,
    square: bool,
}

fn term(lx: &mut Lexer<'_>) -> Result<Parsed, ParseError> {
    let coeff_at = lx.peek().map(|_| lx.pos).unwrap_or(lx.pos);
    let coeff = lx.int()?;
    let (at, var) = lx.var()?;
    if lx.eat(b'^') {
        if lx.int()? != Some(2) {
            return lx.error("only the exponent 2 is supported");
        }
        let a = coeff.unwrap_or(1);
        if a == 0 {
            return Err(ParseError::Syntax {
                pos: coeff_at,
                msg: "coefficient must be positive".into(),
            });
        }
        return Ok(Parsed {
            var,
            at,
            term: Term::new(a, 0).expect("positive"),
            square: true,
        });
    }
    if lx.peek() != Some(b'(') {
        let found = lx.describe();
        return lx.error(format!("expected '^2' or '(', found {found}"));
    }
    if coeff.is_some() {
        return Err(ParseError::Syntax {
            pos: coeff_at,
            msg: "a coefficient may not precede a product term".into(),
        });
    }
    lx.expect(b'(')?;
    let a_at = lx.peek().map(|_| lx.pos).unwrap_or(lx.pos);
    let a = lx.int()?.unwrap_or(1);
    let (inner_at, inner) = lx.var()?;
    if inner != var {
        return Err(ParseError::Syntax {
            pos: inner_at,
            msg: format!(
                "expected {} inside the parentheses",
                (b'x' + var as u8) as char
            ),
        });
    }
    if a == 0 {
        return Err(ParseError::Syntax {
            pos: a_at,
            msg: "leading coefficient must be positive".into(),
        });
    }
    let b = if lx.eat(b'+') {
        match lx.int()? {
            Some(b) => b,
            None => {
                let found = lx.describe();
                return lx.error(format!("expected an integer, found {found}"));
            }
        }
    } else {
        0
    };
    lx.expect(b')')?;
    Ok(Parsed {
        var,
        at,
        term: Term::new(a, b).expect("positive"),
        square: false,
    })
}

pub fn parse_form(text: &str) -> Result<FormExpr, ParseError> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut slots: [Option<Parsed>; 3] = [None, None, None];
    let mut found = 0;
    loop {
        let t = term(&mut lx)?;
        if slots[t.var].is_some() {
            return Err(ParseError::Duplicate {
                pos: t.at,
                var: (b'x' + t.var as u8) as char,
            });
        }
        found += 1;
        let v = t.var;
        slots[v] = Some(t);
        if !lx.eat(b'+') {
            break;
        }
    }
    if lx.peek().is_some() {
        let found = lx.describe();
        return lx.error(format!("expected '+' or end of input, found {found}"));
    }
    let [Some(x), Some(y), Some(z)] = slots else {
        return Err(ParseError::Arity { found });
    };
    if x.square && y.square && z.square {
        let c = [x.term.a(), y.term.a(), z.term.a()];
        return Ok(FormExpr::Diagonal(DiagonalForm::new(c).expect("positive")));
    }
    Ok(FormExpr::Poly(PolySum::new([x.term, y.term, z.term])))
}
