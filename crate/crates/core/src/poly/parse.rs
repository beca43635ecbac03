//! Text syntax for polynomials: `+`, `-`, `*`, `^`, parentheses, integer
//! literals and division by nonzero constants, over declared variable names.

use num_bigint::BigInt;

use super::field::Field;
use super::polynomial::Poly;
use crate::error::{Error, Result};

pub fn parse_poly<F: Field>(src: &str, vars: &[String], f: &F) -> Result<Poly<F>> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars, f };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty polynomial"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err(&format!("unexpected character `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    f: &'a F,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t, self.f) } else { acc.add(&t, self.f) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = acc.mul(&rhs, self.f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.power()?;
                    let c = match rhs.terms() {
                        [(m, c)] if m.is_one() => c.clone(),
                        _ => {
                            self.pos = at;
                            return Err(self.err("division only by nonzero constants"));
                        }
                    };
                    acc = acc.scale(&self.f.inv(&c), self.f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e, self.f));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.f.from_bigint(&n);
                if self.f.is_zero(&c) {
                    Ok(Poly::zero())
                } else {
                    Ok(Poly::constant(c, self.f))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Poly::var(i, self.f)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("undeclared variable `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.err(&format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{PrimeField, Rationals};

    fn vars() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_prints() {
        let f = PrimeField::new(32003).unwrap();
        let p = parse_poly("x^2*y - 3*z", &vars(), &f).unwrap();
        assert_eq!(p.format(&vars(), &f), "x^2*y - 3*z");
        let q = parse_poly("(x+y)^2 - x^2 - y^2", &vars(), &f).unwrap();
        assert_eq!(q.format(&vars(), &f), "2*x*y");
    }

    #[test]
    fn rationals_division() {
        let p = parse_poly("x/2 + 1/3", &vars(), &Rationals).unwrap();
        assert_eq!(p.format(&vars(), &Rationals), "1/2*x + 1/3");
    }

    #[test]
    fn rejects_undeclared() {
        let f = PrimeField::new(32003).unwrap();
        match parse_poly("x + w", &vars(), &f) {
            Err(Error::Parse { column, message, .. }) => {
                assert_eq!(column, 5);
                assert!(message.contains("`w`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("x +", &vars(), &f).is_err());
        assert!(parse_poly("x/y", &vars(), &f).is_err());
    }
}
