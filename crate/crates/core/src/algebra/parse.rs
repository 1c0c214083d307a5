//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! poly     := ['-'] term (('+'|'-') term)*
//! term     := coeff ('*' monomial)? | monomial
//! coeff    := int | int '/' posint
//! monomial := var ('^' exp)? ('*' var ('^' exp)?)*
//! var      := 'x' digit+
//! ```
//!
//! Whitespace is ignored everywhere. Variables are 1-based in text.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly};
use super::Scalar;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }

    fn small_int(&mut self) -> Result<u32> {
        let at = self.pos;
        let n = self.digits()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            pos: at,
            msg: "exponent too large".into(),
        })
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(Scalar::new(num, den))
        } else {
            Ok(Scalar::from_integer(num))
        }
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        if self.peek() != Some(b'x') {
            return self.err("expected a variable like x1");
        }
        self.pos += 1;
        let at = self.pos;
        let idx = self.small_int()? as usize;
        if idx == 0 || idx > self.nvars {
            self.pos = at;
            return self.err(format!(
                "variable x{idx} out of range (expected x1..x{})",
                self.nvars
            ));
        }
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            e = self.small_int()?;
        }
        exps[idx - 1] += e;
        Ok(())
    }

    fn monomial(&mut self) -> Result<Monomial> {
        let mut exps = vec![0; self.nvars];
        self.factor(&mut exps)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        Ok(Monomial::new(exps))
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok((self.monomial()?, c))
                } else {
                    Ok((Monomial::one(self.nvars), c))
                }
            }
            Some(b'x') => Ok((self.monomial()?, Scalar::one())),
            Some(_) => self.err("expected a coefficient or a variable"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_poly(s: &str, nvars: usize) -> Result<MultiPoly> {
    let mut cur = Cursor {
        src: s.as_bytes(),
        pos: 0,
        nvars,
    };
    let mut terms = Vec::new();
    let mut negate = false;
    if cur.peek() == Some(b'-') {
        cur.pos += 1;
        negate = true;
    }
    loop {
        let (m, c) = cur.term()?;
        terms.push((m.exponents().to_vec(), if negate { -c } else { c }));
        match cur.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return cur.err("expected '+', '-' or end of input"),
        }
        cur.pos += 1;
    }
    Ok(MultiPoly::from_terms(nvars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, int};

    #[test]
    fn parses_rational_coefficients_and_whitespace() {
        let p = parse_poly(" 1/2 * x1 ^ 2 - 3*x2*x4 + 7 ", 4).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![2, 0, 0, 0])), frac(1, 2));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 1, 0, 1])), int(-3));
        assert_eq!(p.constant_term(), int(7));
    }

    #[test]
    fn repeated_variables_accumulate() {
        let p = parse_poly("x1*x1*x2", 4).unwrap();
        assert_eq!(p.to_string(), "x1^2*x2");
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_poly("0", 4).unwrap().is_zero());
        assert!(parse_poly("x1 - x1", 4).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x1 + x5", 4).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                pos: 6,
                msg: "variable x5 out of range (expected x1..x4)".into()
            }
        );
        assert!(matches!(
            parse_poly("x1 +", 4),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("2/0", 4),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x1 y", 4),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            parse_poly("", 4),
            Err(Error::Parse { pos: 0, .. })
        ));
    }

    #[test]
    fn canonical_printer_round_trips() {
        for s in [
            "x1^2-x2^2",
            "-1/2*x1*x3+x4^2-5",
            "8*x1^4",
            "x1*x2",
            "-x3",
            "0",
            "3/7",
        ] {
            let p = parse_poly(s, 4).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }
}
