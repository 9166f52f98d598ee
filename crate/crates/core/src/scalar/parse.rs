//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Rational, ScalarError, ScalarExpr, Var};

pub fn parse(text: &str) -> Result<ScalarExpr, ScalarError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ScalarError {
        ScalarError::Syntax {
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

    fn expr(&mut self) -> Result<ScalarExpr, ScalarError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ScalarExpr, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| ScalarError::Syntax {
                    position: at,
                    message: "division by zero".into(),
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ScalarExpr, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarExpr, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let exp: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ScalarExpr, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(ScalarExpr::rational(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match Var::from_name(&name) {
                    Some(v) => Ok(ScalarExpr::var(v)),
                    None => Err(ScalarError::UnknownVariable {
                        name,
                        position: start,
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Monomial, MultiPoly};

    #[test]
    fn parses_printed_matrix_entries() {
        let x = parse("1/(s+1)").unwrap();
        assert!(x.numer().is_one());
        assert_eq!(x.denom(), parse("s+1").unwrap().numer());
        assert!(parse("0").unwrap().is_zero());

        let q2 = parse("q^2 - 1").unwrap();
        let expected = MultiPoly::from_terms([
            (Monomial::var(Var::Q, 2), Rational::from_integer(1.into())),
            (Monomial::ONE, Rational::from_integer((-1).into())),
        ]);
        assert_eq!(q2.numer(), &expected);
        assert!(q2.denom().is_one());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-s^2").unwrap(), -parse("s*s").unwrap());
        assert_eq!(parse("1/2*s").unwrap(), parse("s/2").unwrap());
        assert_eq!(parse("2^3").unwrap(), ScalarExpr::int(8));
        assert_eq!(parse("--q").unwrap(), parse("q").unwrap());
        assert_eq!(parse(" ( r + s ) * t ").unwrap(), parse("r*t+s*t").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("s + y"),
            Err(ScalarError::UnknownVariable {
                name: "y".into(),
                position: 4
            })
        );
        assert!(matches!(parse("(s+1"), Err(ScalarError::Syntax { position: 4, .. })));
        assert!(matches!(parse("s^-1"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("1/(s-s)"), Err(ScalarError::Syntax { position: 1, .. })));
        assert!(matches!(parse(""), Err(ScalarError::Syntax { .. })));
        assert!(matches!(parse("s)"), Err(ScalarError::Syntax { position: 1, .. })));
    }
}
