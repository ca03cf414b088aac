//! Relation expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := number | number '/' number | generator | '(' expr ')'
//! ```
//!
//! Generators are `x`, `y` when `d = 2` and `x1 .. xd` otherwise (`x1`, `x2`
//! are also accepted for two generators). Juxtaposition is an error.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use super::element::Element;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, column });
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '+' => push(&mut out, Tok::Plus),
            '-' | '\u{2212}' => push(&mut out, Tok::Minus),
            '*' => push(&mut out, Tok::Star),
            '^' => push(&mut out, Tok::Caret),
            '/' => push(&mut out, Tok::Slash),
            '(' => push(&mut out, Tok::LParen),
            ')' => push(&mut out, Tok::RParen),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                push(&mut out, Tok::Num(s.parse().expect("digits")));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                push(&mut out, Tok::Ident(s));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: chars.len() + 1,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    d: u32,
    cap: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn generator(&self, name: &str) -> Option<u32> {
        if self.d == 2 {
            match name {
                "x" | "x1" => return Some(0),
                "y" | "x2" => return Some(1),
                _ => return None,
            }
        }
        name.strip_prefix('x')
            .and_then(|n| n.parse::<u32>().ok())
            .filter(|n| *n >= 1 && *n <= self.d && !name[1..].starts_with('0'))
            .map(|n| n - 1)
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            acc = self.mul(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        a.mul(b, self.cap).or_else(|e| self.err(e.to_string()))
    }

    fn unary(&mut self) -> Result<Element> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let k = match self.bump() {
            Tok::Num(k) => k,
            _ => {
                self.pos -= 1;
                return self.err("exponent must be a positive integer");
            }
        };
        if k < BigInt::one() {
            self.pos -= 1;
            return self.err("exponent must be at least 1");
        }
        let k: usize = match k.try_into() {
            Ok(k) if k <= self.cap.max(1) * 64 => k,
            _ => {
                self.pos -= 1;
                return self.err("exponent too large");
            }
        };
        let mut acc = base.clone();
        for _ in 1..k {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Element> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(n) => {
                self.bump();
                let mut value = BigRational::from_integer(n);
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Num(den) if !den.is_zero() => {
                            value /= BigRational::from_integer(den);
                        }
                        _ => {
                            self.pos -= 1;
                            return self.err("expected a nonzero denominator");
                        }
                    }
                }
                Ok(Element::constant(self.d, value))
            }
            Tok::Ident(name) => match self.generator(&name) {
                Some(l) => {
                    self.bump();
                    Ok(Element::generator(self.d, l))
                }
                None => self.err(format!("unknown identifier `{name}`")),
            },
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            _ => self.err("expected a number, generator or `(`"),
        }
    }
}

fn parse_line(text: &str, line: usize, d: u32, cap: usize) -> Result<Element> {
    if d == 0 {
        return Err(Error::Invalid("need at least one generator".into()));
    }
    let toks = lex(text, line)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        d,
        cap,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.err("expected an operator");
    }
    Ok(e)
}

/// Parses one expression over `d` generators with degrees capped at `cap`.
pub fn parse_element(text: &str, d: u32, cap: usize) -> Result<Element> {
    parse_line(text, 1, d, cap)
}

/// One expression per line; `#` starts a comment; blank lines are skipped.
pub fn parse_relations(text: &str, d: u32, cap: usize) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_line(body, i + 1, d, cap)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Element {
        parse_element(s, 2, 20).unwrap()
    }

    #[test]
    fn commutator() {
        let e = p("x*y - y*x");
        assert_eq!(e.to_string(), "x*y - y*x");
        assert!(e.is_homogeneous());
        assert_eq!(e.order(), Some(2));
    }

    #[test]
    fn mixed_degrees() {
        let e = p("x^2 + x*y*x");
        assert_eq!(e.components().len(), 2);
        let f = p("x*y - y*x + x^3");
        assert_eq!((f.order(), f.top_degree()), (Some(2), Some(3)));
    }

    #[test]
    fn precedence_and_rationals() {
        assert_eq!(p("-x^2").to_string(), "-x*x");
        assert_eq!(p("2*(x+y)*x").to_string(), "2*x*x + 2*y*x");
        assert_eq!(p("1/2*x - 3/4*y").to_string(), "1/2*x - 3/4*y");
        assert_eq!(p("(x+y)^2").to_string(), "x*x + x*y + y*x + y*y");
        assert_eq!(p("x - -y").to_string(), "x + y");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_element("x*y z", 2, 20) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_element("x*w", 2, 20), Err(Error::Parse { column: 3, .. })));
        assert!(parse_element("x^0", 2, 20).is_err());
        assert!(parse_element("(x+y", 2, 20).is_err());
        assert!(parse_element("x^30", 2, 20).is_err());
        assert!(parse_element("x3", 2, 20).is_err());
        match parse_relations("x*y\n\n# c\ny*$", 2, 20) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn more_generators() {
        let e = parse_element("x1*x3 - x3*x1 + x2^2", 3, 20).unwrap();
        assert_eq!(e.to_string(), "x1*x3 + x2*x2 - x3*x1");
        assert_eq!(parse_element(&e.to_string(), 3, 20).unwrap(), e);
        assert!(parse_element("x4", 3, 20).is_err());
    }

    #[test]
    fn relation_file() {
        let rs = parse_relations("# comment\nx*y - y*x  # trailing\n\nx^2\n", 2, 20).unwrap();
        assert_eq!(rs.len(), 2);
    }
}
