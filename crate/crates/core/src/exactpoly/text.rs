//! Canonical text form of polynomials and a small expression parser.
//!
//! Output: terms in descending graded-lex order, explicit `*` and `^`,
//! rational coefficients as `p/q`, e.g. `y0^3 + y0^2*y1 - 1/4*y0*y2^2`.
//! Input accepts the same format plus parentheses, so factored forms such as
//! `(y0 + 5*y1)*(y0 - y2)^2` parse as well.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::{Monomial, TriPoly, Vars};
use crate::error::{Error, Result};

pub(crate) fn format_poly(p: &TriPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let letter = p.vars().letter();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = format_monomial(*m, letter);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&a.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn format_monomial(m: Monomial, letter: char) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{letter}{v}")),
            _ => parts.push(format!("{letter}{v}^{e}")),
        }
    }
    parts.join("*")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str, vars: Vars) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, msg: String| Error::Parse { line, column, msg };
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let tok = if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Lexed { tok: Tok::Num(s.parse().expect("digits")), line: l0, column: c0 });
            continue;
        } else if ch.is_ascii_alphabetic() {
            if ch != vars.letter() {
                return Err(err(l0, c0, format!("unexpected variable letter '{ch}'")));
            }
            let idx = chars.get(i + 1).and_then(|c| c.to_digit(10));
            match idx {
                Some(d) if d < 3 => {
                    i += 2;
                    col += 2;
                    out.push(Lexed { tok: Tok::Var(d as usize), line: l0, column: c0 });
                    continue;
                }
                _ => return Err(err(l0, c0, "variable index must be 0, 1 or 2".into())),
            }
        } else {
            match ch {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(err(l0, c0, format!("unexpected character '{ch}'"))),
            }
        };
        out.push(Lexed { tok, line: l0, column: c0 });
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    vars: Vars,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|l| (l.line, l.column))
            .unwrap_or((1, 1))
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse { line, column, msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<TriPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TriPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return self.fail("division only by a nonzero constant");
                    }
                    let c = d.coeff(Monomial::ONE);
                    acc = acc.scale(&(BigRational::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TriPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<TriPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().or_else(|_| self.fail("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => self.fail("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<TriPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(TriPoly::constant(self.vars, BigRational::from_integer(n)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(TriPoly::var(self.vars, v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.fail("expected number, variable or '('"),
        }
    }
}

/// Parses a polynomial expression in the given variable triple.
pub fn parse_poly(src: &str, vars: Vars) -> Result<TriPoly> {
    let toks = lex(src, vars)?;
    if toks.is_empty() {
        return Ok(TriPoly::zero(vars));
    }
    let mut p = Parser { toks, pos: 0, vars };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(out)
}

impl std::str::FromStr for TriPoly {
    type Err = Error;
    /// Infers the variable triple from the first variable letter (default `y`).
    fn from_str(s: &str) -> Result<Self> {
        let vars = if s.contains('x') { Vars::X } else { Vars::Y };
        parse_poly(s, vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_output_is_grlex_descending() {
        let q = parse_poly(
            "4*x1^4 + 32*x2^4 + 13*x1^2*x2^2 - 18*x0*x1*x2^2 + 4*x0*x1^3 - 27*x0^2*x2^2",
            Vars::X,
        )
        .unwrap();
        assert_eq!(
            q.to_string(),
            "-27*x0^2*x2^2 + 4*x0*x1^3 - 18*x0*x1*x2^2 + 4*x1^4 + 13*x1^2*x2^2 + 32*x2^4"
        );
    }

    #[test]
    fn rationals_and_constants() {
        let p = parse_poly("y0^2 - 1/4*y1^2 - 1/4*y2^2 + 3/2", Vars::Y).unwrap();
        assert_eq!(p.to_string(), "y0^2 - 1/4*y1^2 - 1/4*y2^2 + 3/2");
        assert_eq!(parse_poly("0", Vars::Y).unwrap().to_string(), "0");
        assert_eq!(parse_poly("-y1", Vars::Y).unwrap().to_string(), "-y1");
    }

    #[test]
    fn factored_input() {
        let p = parse_poly("(y0 + y1)^2*(y0 - y1)", Vars::Y).unwrap();
        assert_eq!(p.to_string(), "y0^3 + y0^2*y1 - y0*y1^2 - y1^3");
    }

    #[test]
    fn round_trip_text() {
        let p = parse_poly("1/64*(64*y0^4 - 52*y0^2*y1^2 + y2^4)", Vars::Y).unwrap();
        let again = parse_poly(&p.to_string(), Vars::Y).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_poly("y0 +\n  z1", Vars::Y) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("y0 + ", Vars::Y).is_err());
        assert!(parse_poly("y3", Vars::Y).is_err());
    }
}
