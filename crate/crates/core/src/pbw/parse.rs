use std::sync::Arc;

use thiserror::Error;

use super::{Algebra, Gen, NcPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("empty expression")]
    Empty,
    #[error("{0}")]
    Engine(#[from] super::EngineError),
}

/// Parses an element such as `3*e^2*f*x^4 - (h + D)^2`. `D` stands for the
/// rescaled Casimir. Products of non-ordered letters are normalized.
pub fn parse_element(alg: &Arc<Algebra>, input: &str) -> Result<NcPoly, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut p = Parser { alg, chars, pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let out = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(out),
        Some(ch) => Err(ParseError::UnexpectedChar { ch, pos: p.pos }),
    }
}

struct Parser<'a> {
    alg: &'a Arc<Algebra>,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let rhs = self.power()?;
            acc = acc.try_mul(&rhs)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<NcPoly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.digits()?;
            let n: u32 = digits
                .parse()
                .map_err(|_| ParseError::ExponentTooLarge(digits.clone()))?;
            if n > self.alg.exp_cap() {
                return Err(ParseError::ExponentTooLarge(digits));
            }
            let mut acc = NcPoly::one(self.alg.clone());
            for _ in 0..n {
                acc = acc.try_mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(ch) => Err(ParseError::UnexpectedChar { ch, pos: self.pos }),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<NcPoly, ParseError> {
        self.skip_ws();
        let Some(ch) = self.peek() else {
            return Err(ParseError::UnexpectedEnd);
        };
        if ch == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(')') {
                return match self.peek() {
                    Some(ch) => Err(ParseError::UnexpectedChar { ch, pos: self.pos }),
                    None => Err(ParseError::UnexpectedEnd),
                };
            }
            return Ok(inner);
        }
        if ch.is_ascii_digit() {
            let digits = self.digits()?;
            // reduce digit by digit so arbitrarily long literals are fine
            let f = self.alg.field();
            let mut v = f.elem(0);
            for d in digits.chars() {
                v = f.fadd(
                    f.fmul(v, f.elem(10)),
                    f.elem(d.to_digit(10).unwrap() as i64),
                );
            }
            return Ok(NcPoly::constant(self.alg.clone(), v));
        }
        if ch == 'D' {
            self.pos += 1;
            return Ok(self.alg.casimir());
        }
        if let Some(g) = Gen::from_symbol(ch) {
            self.pos += 1;
            return Ok(NcPoly::gen(self.alg.clone(), g));
        }
        Err(ParseError::UnexpectedChar { ch, pos: self.pos })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::CasimirPoly;
    use crate::fields::{Fp, PrimeField};
    use crate::pbw::PbwMonomial;

    fn alg() -> Arc<Algebra> {
        let f = PrimeField::new(7).unwrap();
        Algebra::standard(f, CasimirPoly::from_ints(f, &[0, 1]))
    }

    #[test]
    fn monomial_literal() {
        let a = alg();
        let u = parse_element(&a, "3*e^2*f*x^4").unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u.coeff(&PbwMonomial::from_exps(2, 1, 0, 4, 0)), Fp(3));
        assert_eq!(u.to_string(), "3*e^2*f*x^4");
    }

    #[test]
    fn round_trip() {
        let a = alg();
        for s in [
            "e*f - h",
            "-2*x*y + 3",
            "e*y^2 + h*x*y - f*x^2",
            "0",
            "1",
            "-h",
        ] {
            let u = parse_element(&a, s).unwrap();
            let printed = u.to_string();
            assert_eq!(parse_element(&a, &printed).unwrap(), u, "{s} -> {printed}");
        }
    }

    #[test]
    fn casimir_symbol_and_parentheses() {
        let a = alg();
        let d = parse_element(&a, "D").unwrap();
        assert_eq!(d, a.casimir());
        let sq = parse_element(&a, "(h^2 + 4*e*f - 2*h)^2").unwrap();
        assert_eq!(sq, a.casimir_power(2));
    }

    #[test]
    fn errors() {
        let a = alg();
        assert_eq!(parse_element(&a, ""), Err(ParseError::Empty));
        assert!(matches!(
            parse_element(&a, "e +"),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_element(&a, "e * q"),
            Err(ParseError::UnexpectedChar { ch: 'q', .. })
        ));
        assert!(matches!(
            parse_element(&a, "(e"),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_element(&a, "x^999"),
            Err(ParseError::ExponentTooLarge(_))
        ));
    }
}
