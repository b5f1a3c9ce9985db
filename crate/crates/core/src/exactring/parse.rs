//! Entry grammar for Frobenius matrix entries:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer ('/' integer)? | 'u' | 'E' | '(' expr ')'
//! ```
//!
//! `E` stands for `u - p`.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::PolyU;
use super::scalar::{is_p_integral, Prime, Q};
use crate::{Error, Result};

const MAX_EXPONENT: u32 = 4096;

/// Parses an entry string into a polynomial, rejecting rational literals whose
/// denominator is divisible by `p`.
pub fn parse_poly(text: &str, p: Prime) -> Result<PolyU> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        p,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.error("empty expression"));
    }
    let f = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: Prime,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyU> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyU> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PolyU> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyU> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let k: u32 = n
                .try_into()
                .ok()
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or_else(|| Error::Parse {
                    offset: start,
                    message: format!("exponent must be an integer in 0..={MAX_EXPONENT}"),
                })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyU> {
        self.skip_ws();
        match self.peek() {
            Some(b'u') => {
                self.pos += 1;
                Ok(PolyU::u())
            }
            Some(b'E') => {
                self.pos += 1;
                Ok(PolyU::eisenstein(self.p))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.integer()?;
                let value = if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::Parse {
                            offset: start,
                            message: "zero denominator".into(),
                        });
                    }
                    Q::new(num, den)
                } else {
                    Q::from_integer(num)
                };
                if !is_p_integral(&value, self.p) {
                    return Err(Error::NotPIntegral {
                        value: value.to_string(),
                        p: self.p.get(),
                    });
                }
                Ok(PolyU::constant(value))
            }
            Some(_) => Err(self.error("expected a number, 'u', 'E' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let s: String = digits.into();
        BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(|| self.error("bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::scalar::int_q;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            parse_poly("E^2", p(2)).unwrap(),
            PolyU::from_ints(&[4, -4, 1])
        );
        assert_eq!(
            parse_poly("u + 1/3", p(2)).unwrap(),
            PolyU::from_coeffs(vec![Q::new(1.into(), 3.into()), int_q(1)])
        );
        assert!(matches!(
            parse_poly("1/2", p(2)),
            Err(Error::NotPIntegral { .. })
        ));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_poly("-u^2", p(3)).unwrap(),
            PolyU::from_ints(&[0, 0, -1])
        );
        assert_eq!(
            parse_poly("2*(u+1)^2 - 3", p(5)).unwrap(),
            PolyU::from_ints(&[-1, 4, 2])
        );
        assert_eq!(
            parse_poly("-1/3*u^2", p(2)).unwrap().to_string(),
            "-1/3*u^2"
        );
        assert_eq!(
            parse_poly(" E * E ", p(3)).unwrap(),
            PolyU::e_power(p(3), 2)
        );
        assert_eq!(parse_poly("u^0", p(3)).unwrap(), PolyU::one());
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "u +", "(u", "u u", "x", "2/0", "u^-1", "u^99999", "1/"] {
            assert!(parse_poly(bad, p(2)).is_err(), "{bad} should not parse");
        }
    }
}
