//! Recursive-descent parser for element expressions.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' nat]
//! atom   := coeff | var | '(' expr ')'
//! var    := 'x' nat
//! coeff  := integer            (modular coefficient rings)
//!         | '[[a,b],[0,c]]'    (ut2; entries are base-ring coefficients)
//!         | '[[a,b],[0,a]]'    (s2)
//!         | '#' nat            (canonical element index, any family)
//! ```
//! Multiplication is noncommutative and associates left-to-right. Errors
//! carry the byte offset of the offending token.

use std::fmt;

use crate::finite_rings::{FiniteRing, RingFamily};

use super::{Extension, PbwError, SkewPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses an element expression into normal form.
pub fn parse_expr(ext: &Extension, input: &str) -> Result<SkewPoly, ParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        ext,
    };
    p.ws();
    let poly = p.expression()?;
    p.ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ext: &'a Extension,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn engine_err(&self, offset: usize, e: PbwError) -> ParseError {
        ParseError {
            offset,
            message: e.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", ch as char)))
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as usize))
                .ok_or_else(|| self.err("number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(value)
    }

    fn expression(&mut self) -> Result<SkewPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.ws();
            if self.eat(b'+') {
                self.ws();
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                self.ws();
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SkewPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.ws();
            if self.eat(b'*') {
                self.ws();
                let offset = self.pos;
                let rhs = self.factor()?;
                acc = acc.mul(&rhs).map_err(|e| self.engine_err(offset, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SkewPoly, ParseError> {
        let offset = self.pos;
        let atom = self.atom()?;
        self.ws();
        if self.eat(b'^') {
            self.ws();
            let k = self.nat()?;
            atom.pow(k).map_err(|e| self.engine_err(offset, e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<SkewPoly, ParseError> {
        self.ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                self.ws();
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                let i = self.nat()?;
                if i < 1 || i > self.ext.n() {
                    return Err(ParseError {
                        offset: at,
                        message: format!(
                            "variable index must be in 1..={}",
                            self.ext.n()
                        ),
                    });
                }
                Ok(self.ext.var(i))
            }
            Some(c) if c.is_ascii_digit() || c == b'[' || c == b'#' => {
                let base = self.ext.base().clone();
                let idx = self.coeff(&base)?;
                Ok(self.ext.constant(idx))
            }
            _ => Err(self.err("expected a coefficient, variable or parenthesized expression")),
        }
    }

    /// Parses a coefficient literal of the given ring (recursive for matrix
    /// families whose entries live in the base ring).
    fn coeff(&mut self, ring: &FiniteRing) -> Result<usize, ParseError> {
        self.ws();
        match self.peek() {
            Some(b'#') => {
                self.pos += 1;
                let at = self.pos;
                let idx = self.nat()?;
                if idx >= ring.order() {
                    return Err(ParseError {
                        offset: at,
                        message: format!("index must be below {}", ring.order()),
                    });
                }
                Ok(idx)
            }
            Some(c) if c.is_ascii_digit() => match ring.family() {
                RingFamily::Zmod { n } => {
                    let v = self.nat()?;
                    Ok(v % n)
                }
                _ => Err(self.err(
                    "integer literal requires a modular coefficient ring (use `#index`)",
                )),
            },
            Some(b'[') => {
                let (k, base, is_s2) = match ring.family() {
                    RingFamily::Ut2 { base } => (base.order(), base.clone(), false),
                    RingFamily::S2 { base } => (base.order(), base.clone(), true),
                    _ => {
                        return Err(self.err(
                            "matrix literal requires a ut2 or s2 coefficient ring",
                        ))
                    }
                };
                self.expect(b'[')?;
                self.ws();
                self.expect(b'[')?;
                let a = self.coeff(&base)?;
                self.ws();
                self.expect(b',')?;
                let b = self.coeff(&base)?;
                self.ws();
                self.expect(b']')?;
                self.ws();
                self.expect(b',')?;
                self.ws();
                self.expect(b'[')?;
                let z_at = self.pos;
                let z = self.coeff(&base)?;
                if z != base.zero() {
                    return Err(ParseError {
                        offset: z_at,
                        message: "lower-left matrix entry must be 0".into(),
                    });
                }
                self.ws();
                self.expect(b',')?;
                let c_at = self.pos;
                let c = self.coeff(&base)?;
                self.ws();
                self.expect(b']')?;
                self.ws();
                self.expect(b']')?;
                if is_s2 {
                    if c != a {
                        return Err(ParseError {
                            offset: c_at,
                            message: "bottom-right entry must equal the top-left entry".into(),
                        });
                    }
                    Ok(a * k + b)
                } else {
                    Ok((a * k + b) * k + c)
                }
            }
            _ => Err(self.err("expected a coefficient literal")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pbw::Monomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_modular_expressions() {
        let ext = fixtures::z4_poly();
        let f = parse_expr(&ext, "1 + 2*x1").unwrap();
        assert_eq!(f.constant_coeff(), 1);
        assert_eq!(f.coeff(&Monomial::var(1, 1)), 2);
        // integers reduce mod n
        assert_eq!(parse_expr(&ext, "6").unwrap(), ext.constant(2));
    }

    #[test]
    fn precedence_and_grouping() {
        let ext = fixtures::z4_poly();
        let a = parse_expr(&ext, "1+2*x1^2").unwrap();
        let b = ext
            .one()
            .add(&ext.monomial(Monomial::from_exponents(vec![2]), 2));
        assert_eq!(a, b);
        let c = parse_expr(&ext, "(1+x1)*x1").unwrap();
        let d = parse_expr(&ext, "x1 + x1^2").unwrap();
        assert_eq!(c, d);
        let e = parse_expr(&ext, "1 - 2 - 3").unwrap();
        assert_eq!(e, ext.constant(0)); // (1-2)-3 = -4 = 0 mod 4
    }

    #[test]
    fn multiplication_order_is_preserved() {
        let ext = fixtures::ut2_z2_ore();
        // E12 * x = E12 x, while x * E12 rewrites to the constant E12.
        let left = parse_expr(&ext, "[[0,1],[0,0]]*x1").unwrap();
        let right = parse_expr(&ext, "x1*[[0,1],[0,0]]").unwrap();
        assert_ne!(left, right);
        assert_eq!(right, ext.constant(2));
        assert_eq!(left.degree(), Some(1));
    }

    #[test]
    fn matrix_and_index_literals() {
        let ext = fixtures::ut2_z2_ore();
        assert_eq!(parse_expr(&ext, "[[1,1],[0,1]]").unwrap(), ext.constant(7));
        assert_eq!(parse_expr(&ext, "#7").unwrap(), ext.constant(7));
        let s2 = fixtures::s2_z4_negate();
        assert_eq!(parse_expr(&s2, "[[1,1],[0,1]]").unwrap(), s2.constant(5));
    }

    #[test]
    fn errors_carry_byte_offsets() {
        let ext = fixtures::z4_poly();
        let err = parse_expr(&ext, "1 + &x1").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse_expr(&ext, "1 + x1)").unwrap_err();
        assert_eq!(err.offset, 6);
        let err = parse_expr(&ext, "x2").unwrap_err();
        assert_eq!(err.offset, 1);

        let ut2 = fixtures::ut2_z2_ore();
        let err = parse_expr(&ut2, "5").unwrap_err();
        assert!(err.message.contains("modular"));
        let err = parse_expr(&ut2, "[[1,1],[1,0]]").unwrap_err();
        assert_eq!(err.offset, 8);
        assert!(err.message.contains("lower-left"));

        let s2 = fixtures::s2_z4_negate();
        let err = parse_expr(&s2, "[[1,1],[0,2]]").unwrap_err();
        assert_eq!(err.offset, 10);
        assert!(err.message.contains("top-left"));

        let err = parse_expr(&ext, "#9").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn degree_overflow_reported_as_parse_error() {
        let ext = fixtures::z4_poly();
        let err = parse_expr(&ext, "x1^40").unwrap_err();
        assert!(err.message.contains("degree"));
    }

    #[test]
    fn print_parse_round_trip_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for (name, ext) in fixtures::all_extensions() {
            for _ in 0..50 {
                let f = ext.random_poly(2, &mut rng);
                let back = parse_expr(&ext, &f.to_expr_string())
                    .unwrap_or_else(|e| panic!("roundtrip failed on {name}: {e}"));
                assert_eq!(back, f, "on {name}");
            }
        }
    }
}
