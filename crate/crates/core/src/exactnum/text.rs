//! Text syntax for scalars: `3/2`, `z4`, `-1/3*z12^2 + 1`.
//!
//! A scalar is a signed sum of terms; a term is a `*`-separated product of
//! rationals `p/q` and roots of unity `z<m>` or `z<m>^e`. The `Display`
//! impl of [`Cyc`] prints the canonical form, which this parser reads back.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{Cyc, NumError, Rational};

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn err(&self, msg: &str) -> NumError {
        NumError::Parse {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Result<&'a str, NumError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn factor(&mut self) -> Result<Cyc, NumError> {
        self.skip_ws();
        match self.peek() {
            Some('z') => {
                self.pos += 1;
                let m: u32 = self
                    .digits()?
                    .parse()
                    .map_err(|_| self.err("conductor out of range"))?;
                if m == 0 {
                    return Err(self.err("conductor must be positive"));
                }
                self.skip_ws();
                let mut e: i64 = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let neg = if self.peek() == Some('-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    e = self
                        .digits()?
                        .parse()
                        .map_err(|_| self.err("exponent out of range"))?;
                    if neg {
                        e = -e;
                    }
                }
                Ok(Cyc::root_of_unity(m, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digit string");
                self.skip_ws();
                let mut den = BigInt::from(1);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    den = self.digits()?.parse().expect("digit string");
                    if den == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                }
                Ok(Cyc::from_rational(Rational::new(num, den)))
            }
            _ => Err(self.err("expected a number or z<m>")),
        }
    }

    fn term(&mut self) -> Result<Cyc, NumError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn expr(&mut self) -> Result<Cyc, NumError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                None => return Ok(acc),
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
    }
}

/// Parses the scalar text syntax.
pub fn parse_scalar(src: &str) -> Result<Cyc, NumError> {
    Lexer { src, pos: 0 }.expr()
}

impl FromStr for Cyc {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_documented_forms() {
        assert_eq!(parse_scalar("3/2").unwrap(), Cyc::from_frac(3, 2));
        assert_eq!(parse_scalar("z4").unwrap(), Cyc::root_of_unity(4, 1));
        let x = parse_scalar("-1/3*z12^2 + 1").unwrap();
        assert_eq!(x.to_string(), "-1/3*z12^2 + 1");
        assert_eq!(parse_scalar(" -1 ").unwrap(), Cyc::from_int(-1));
        assert_eq!(parse_scalar("z4^-1").unwrap(), -Cyc::root_of_unity(4, 1));
        assert_eq!(parse_scalar("z4*z4").unwrap(), Cyc::from_int(-1));
        assert_eq!(parse_scalar("6/4").unwrap(), Cyc::from_frac(3, 2));
    }

    #[test]
    fn high_powers_reduce() {
        // z12^4 = z12^2 - 1 modulo x^4 - x^2 + 1
        assert_eq!(parse_scalar("z12^4").unwrap().to_string(), "z12^2 - 1");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "z", "z0", "1/0", "2**z4", "x", "1 +", "3/"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should fail");
        }
    }
}
