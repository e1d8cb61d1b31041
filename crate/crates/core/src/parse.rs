//! A small text grammar for product expressions, used by `expand`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | postfix
//! postfix := atom ('^-1')*
//! atom    := INT | 'q' ('^' exp)? | 'M(' ('1' | '-1') ',' rat ')'
//!          | 'P(' mono (',' mono)* ';' mono ')' | 'PF(' mono ';' mono ';' INT ')'
//!          | '(' expr ')'
//! mono    := '-'? ('q' ('^' exp)? | '1' | 'M(' ... ')')
//! exp     := '-'? INT | '(' '-'? INT ('/' INT)? ')'
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;

use num_bigint::BigInt;

use crate::error::Error;
use crate::expr::Expr;
use crate::monomial::{rat, Rat, Sign, SignedMonomial};
use crate::products::PochSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected one of {}",
            self.offset,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&mut self, expected: &[&str]) -> PResult<T> {
        self.skip_ws();
        Err(ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.fail(&[tok])
        }
    }

    fn uint(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        match text.parse::<i64>() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.fail(&["integer"])
            }
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat("-");
        let n = self.uint()?;
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> PResult<Rat> {
        let n = self.int()?;
        if self.eat("/") {
            let at = self.pos;
            let d = self.uint()?;
            if d == 0 {
                self.pos = at;
                return self.fail(&["nonzero denominator"]);
            }
            Ok(rat(n, d))
        } else {
            Ok(rat(n, 1))
        }
    }

    fn exponent(&mut self) -> PResult<Rat> {
        if self.eat("(") {
            let r = self.rational()?;
            self.expect(")")?;
            Ok(r)
        } else {
            Ok(rat(self.int()?, 1))
        }
    }

    fn m_atom(&mut self) -> PResult<SignedMonomial> {
        let at = self.pos;
        let s = self.int()?;
        let sign = match s {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => {
                self.pos = at;
                return self.fail(&["1", "-1"]);
            }
        };
        self.expect(",")?;
        let e = self.rational()?;
        self.expect(")")?;
        Ok(SignedMonomial::new(sign, e))
    }

    fn mono(&mut self) -> PResult<SignedMonomial> {
        let neg = self.eat("-");
        let m = if self.eat("M(") {
            self.m_atom()?
        } else if self.eat("q") {
            let e = if self.eat("^") {
                self.exponent()?
            } else {
                rat(1, 1)
            };
            SignedMonomial::q(e)
        } else if self.eat("1") {
            SignedMonomial::one()
        } else {
            return self.fail(&["q", "M(", "1", "-"]);
        };
        Ok(if neg { -m } else { m })
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Expr::scale(n, Expr::Monomial(SignedMonomial::one())))
            }
            _ => {
                if self.eat("PF(") {
                    let a = self.mono()?;
                    self.expect(";")?;
                    let b = self.mono()?;
                    self.expect(";")?;
                    let n = self.uint()?;
                    self.expect(")")?;
                    Ok(Expr::Poch(PochSpec::finite(vec![a], b, n as u64)))
                } else if self.eat("P(") {
                    let mut args = vec![self.mono()?];
                    while self.eat(",") {
                        args.push(self.mono()?);
                    }
                    self.expect(";")?;
                    let b = self.mono()?;
                    self.expect(")")?;
                    Ok(Expr::Poch(PochSpec::infinite(args, b)))
                } else if self.eat("M(") {
                    Ok(Expr::Monomial(self.m_atom()?))
                } else if self.eat("q") {
                    let e = if self.eat("^") {
                        self.exponent()?
                    } else {
                        rat(1, 1)
                    };
                    Ok(Expr::Monomial(SignedMonomial::q(e)))
                } else {
                    self.fail(&["integer", "q", "M(", "P(", "PF(", "(", "-"])
                }
            }
        }
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.atom()?;
        while self.eat("^") {
            self.expect("-1")?;
            e = Expr::inverse(e);
        }
        Ok(e)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat("-") {
            Ok(-self.unary()?)
        } else {
            self.postfix()
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut parts = vec![self.unary()?];
        while self.eat("*") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::Product(parts)
        })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut parts = vec![self.term()?];
        loop {
            if self.eat("+") {
                parts.push(self.term()?);
            } else if self.eat("-") {
                parts.push(-self.term()?);
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::Sum(parts)
        })
    }
}

pub fn parse_expr(text: &str) -> PResult<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail(&["+", "-", "*", "^-1", "end of input"]);
    }
    Ok(e)
}

#[derive(Debug)]
pub enum ExpandError {
    Parse(ParseError),
    Eval(Error),
}

impl fmt::Display for ExpandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpandError::Parse(e) => e.fmt(f),
            ExpandError::Eval(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ExpandError {}

/// Nonzero coefficients of `text` strictly below `q^order`, in increasing exponent.
pub fn expand(text: &str, order: Rat) -> std::result::Result<Vec<(Rat, BigInt)>, ExpandError> {
    let e = parse_expr(text).map_err(ExpandError::Parse)?;
    let denom = crate::monomial::common_denom([rat(1, e.natural_denom()), rat(1, *order.denom())]);
    let t = (order * Rat::from_integer(denom)).to_integer();
    let s = e.eval(denom, t).map_err(ExpandError::Eval)?;
    Ok(s.terms().map(|(k, c)| (rat(k, denom), c.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(text: &str, order: i64) -> Vec<(i64, i64)> {
        expand(text, rat(order, 1))
            .unwrap()
            .into_iter()
            .map(|(e, c)| (e.to_integer(), i64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn euler_function() {
        assert_eq!(
            rows("P(q;q)", 8),
            vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)]
        );
    }

    #[test]
    fn partitions() {
        assert_eq!(
            rows("P(q;q)^-1", 5),
            vec![(0, 1), (1, 1), (2, 2), (3, 3), (4, 5)]
        );
    }

    #[test]
    fn unit_monomial() {
        assert_eq!(rows("M(1,0)", 5), vec![(0, 1)]);
    }

    #[test]
    fn arithmetic_and_whitespace() {
        assert_eq!(
            rows(" 2 * q^2 - M(-1, 3) + PF(q ; q ; 1) ", 6),
            vec![(0, 1), (1, -1), (2, 2), (3, 1)]
        );
        assert_eq!(rows("(1 - q)^-1 * (1 - q)", 10), vec![(0, 1)]);
    }

    #[test]
    fn half_integer_exponents() {
        let r = expand("P(-q^(1/2);q)", rat(2, 1)).unwrap();
        assert_eq!(r[1], (rat(1, 2), BigInt::from(1)));
    }

    #[test]
    fn errors_carry_offset() {
        let e = parse_expr("P(q;q").unwrap_err();
        assert_eq!(e.offset, 5);
        assert_eq!(e.expected, vec![")".to_string()]);
        let e = parse_expr("q + * q").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.expected.contains(&"P(".to_string()));
        assert!(parse_expr("M(2,1)").is_err());
        assert!(parse_expr("q q").is_err());
    }
}
