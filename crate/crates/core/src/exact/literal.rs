//! Text form of exact numbers.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | 'sqrt' '(' expr ')' | '(' expr ')'
//! rational := ['-'] digits ['/' digits]
//! ```
//!
//! Formatting is canonical: the value is expanded into monomials, square
//! roots of rational primes are merged into one `sqrt(d)` with `d`
//! squarefree, and terms are ordered by radicand with the rational part
//! first.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::tower::{Generator, TowerReal};
use super::ExactError;

pub fn format_number(x: &TowerReal) -> String {
    let mut terms: Vec<(Vec<Generator>, BigUint, BigRational)> = x
        .monomials()
        .into_iter()
        .map(|(gens, c)| {
            let mut d = BigUint::one();
            let mut nested = Vec::new();
            for g in gens {
                match g.prime_value() {
                    Some(p) => d *= p,
                    None => nested.push(g),
                }
            }
            (nested, d, c)
        })
        .collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| cmp_gen_lists(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)));

    let mut out = String::new();
    for (i, (nested, d, c)) in terms.iter().enumerate() {
        let mut factors = Vec::new();
        if !d.is_one() {
            factors.push(format!("sqrt({d})"));
        }
        for g in nested {
            factors.push(format!("sqrt({})", format_number(g.radicand())));
        }
        let negative = c.is_negative() && i > 0;
        let c = if negative { -c.clone() } else { c.clone() };
        let term = if factors.is_empty() {
            format_rational(&c)
        } else if c.is_one() {
            factors.join("*")
        } else {
            format!("{}*{}", format_rational(&c), factors.join("*"))
        };
        if i == 0 {
            out.push_str(&term);
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    out
}

fn cmp_gen_lists(a: &[Generator], b: &[Generator]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.cmp(y))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    })
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_number(text: &str) -> Result<TowerReal, ExactError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExactError {
        ExactError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
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

    fn expect(&mut self, c: u8) -> Result<(), ExactError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<TowerReal, ExactError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TowerReal, ExactError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TowerReal, ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b's') => {
                if !self.src[self.pos..].starts_with(b"sqrt") {
                    return Err(self.error("expected 'sqrt'"));
                }
                self.pos += 4;
                self.expect(b'(')?;
                let start = self.pos;
                let v = self.expr()?;
                self.expect(b')')?;
                v.sqrt().map_err(|e| match e {
                    ExactError::NegativeRadicand => ExactError::Syntax {
                        position: start,
                        message: "negative radicand".into(),
                    },
                    other => other,
                })
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => self.rational(),
            _ => Err(self.error("expected a number, 'sqrt' or '('")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ExactError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn rational(&mut self) -> Result<TowerReal, ExactError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let n = self.digits()?;
        let d = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let q = BigRational::new(if negative { -n } else { n }, d);
        debug_assert!(!q.denom().is_negative());
        Ok(TowerReal::from_rational(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_literal() {
        let x = parse_number("1/2 + 3/4*sqrt(2)").unwrap();
        let expected = TowerReal::ratio(1, 2) + TowerReal::ratio(3, 4) * TowerReal::from_int(2).sqrt().unwrap();
        assert_eq!(x, expected);
        assert_eq!(format_number(&x), "1/2 + 3/4*sqrt(2)");
    }

    #[test]
    fn nested_literal() {
        let x = parse_number("sqrt(sqrt(2)+2)").unwrap();
        assert_eq!(x.depth(), 2);
        let back = parse_number(&format_number(&x)).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn negative_radicand_is_reported() {
        match parse_number("sqrt(1-2)") {
            Err(ExactError::Syntax { message, .. }) => assert_eq!(message, "negative radicand"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_number("1 + * 2") {
            Err(ExactError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_number("1/0").is_err());
        assert!(parse_number("sqr(2)").is_err());
        assert!(parse_number("2 3").is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(format_number(&parse_number("sqrt(8)").unwrap()), "2*sqrt(2)");
        assert_eq!(format_number(&parse_number("sqrt(2)*sqrt(3)").unwrap()), "sqrt(6)");
        assert_eq!(format_number(&parse_number("-1*sqrt(2)").unwrap()), "-1*sqrt(2)");
        assert!(parse_number("-sqrt(2)").is_err());
        assert_eq!(format_number(&parse_number("1 - sqrt(3)").unwrap()), "1 - sqrt(3)");
        assert_eq!(format_number(&parse_number("-1/2").unwrap()), "-1/2");
        assert_eq!(format_number(&parse_number("3 - 3").unwrap()), "0");
    }
}
