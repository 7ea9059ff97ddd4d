//! Parser for ring expressions.
//!
//! Grammar (whitespace is ignored everywhere):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' natural)?
//! atom   := integer | 't1' | 'h' natural | 'z' factor ('^' integer)? | '(' expr ')'
//! ```
//!
//! `t1` is `1̃`, `h<i>` is `h_i` (`h0` is `1 + t1`), and `z<f>` is the generator
//! of the `f`-th cyclic factor (1-based; for odd type `z1` is `ξ`). Evaluation
//! happens in the ambient ring; for odd type the final value must lie in the
//! parity subring.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::element::{Basis, RepElement};
use super::group::GroupSpec;
use super::RepError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Tilde,
    H(u32),
    Z { factor: usize, exponent: i64 },
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> RepError {
    RepError::Parse { pos, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>, RepError> {
    let chars: Vec<(usize, char)> =
        src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let mut s = String::new();
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            s.push(chars[*i].1);
            *i += 1;
        }
        s
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            '0'..='9' => {
                let s = digits(&mut i);
                out.push((pos, Token::Int(s.parse().expect("digits"))));
            }
            't' => {
                i += 1;
                if digits(&mut i) != "1" {
                    return Err(err(pos, "expected `t1`"));
                }
                out.push((pos, Token::Tilde));
            }
            'h' => {
                i += 1;
                let s = digits(&mut i);
                let n = s.parse().map_err(|_| err(pos, "expected index after `h`"))?;
                out.push((pos, Token::H(n)));
            }
            'z' => {
                i += 1;
                let s = digits(&mut i);
                let factor: usize = s.parse().map_err(|_| err(pos, "expected factor after `z`"))?;
                if factor == 0 {
                    return Err(err(pos, "factors are numbered from 1"));
                }
                let mut exponent = 1i64;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let neg = i < chars.len() && chars[i].1 == '-';
                    if neg {
                        i += 1;
                    }
                    let s = digits(&mut i);
                    let e: i64 = s.parse().map_err(|_| err(pos, "expected exponent after `^`"))?;
                    exponent = if neg { -e } else { e };
                }
                out.push((pos, Token::Z { factor, exponent }));
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                i += 1;
                out.push((
                    pos,
                    match c {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        '^' => Token::Caret,
                        '(' => Token::LParen,
                        _ => Token::RParen,
                    },
                ));
            }
            _ => return Err(err(pos, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    group: &'a GroupSpec,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<RepElement, RepError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RepElement, RepError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.at += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RepElement, RepError> {
        if self.peek() == Some(&Token::Minus) {
            self.at += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RepElement, RepError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        match self.tokens.get(self.at) {
            Some((_, Token::Int(n))) => {
                let e: u32 = n.try_into().map_err(|_| err(pos, "exponent too large"))?;
                if e > 64 {
                    return Err(err(pos, "exponent too large"));
                }
                self.at += 1;
                Ok(base.pow(e))
            }
            _ => Err(err(pos, "expected a natural exponent")),
        }
    }

    fn atom(&mut self) -> Result<RepElement, RepError> {
        let pos = self.pos();
        let Some((_, tok)) = self.tokens.get(self.at).cloned() else {
            return Err(err(pos, "unexpected end of expression"));
        };
        self.at += 1;
        let g = self.group;
        match tok {
            Token::Int(n) => Ok(RepElement::term(
                g,
                Basis::One,
                g.trivial_character(),
                BigRational::from_integer(n),
            )),
            Token::Tilde => Ok(RepElement::tilde(g)),
            Token::H(i) => Ok(RepElement::h(g, i)),
            Token::Z { factor, exponent } => {
                let n = g.factor_orders().len();
                if factor > n {
                    return Err(err(pos, format!("group has {n} cyclic factor(s), no z{factor}")));
                }
                let mut e = vec![0i64; n];
                e[factor - 1] = exponent;
                Ok(RepElement::character_rep(g, g.character(&e)?))
            }
            Token::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(err(self.pos(), "expected `)`"));
                }
                self.at += 1;
                Ok(inner)
            }
            other => Err(err(pos, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses and evaluates a ring expression over `group`.
pub fn parse_ring_expr(src: &str, group: &GroupSpec) -> Result<RepElement, RepError> {
    group.validate()?;
    let tokens = lex(src)?;
    let mut p = Parser { tokens, at: 0, group, end: src.len() };
    let value = p.expr()?;
    if p.at != p.tokens.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    if !value.is_parity_valid() {
        return Err(RepError::ParityViolation(value.to_string()));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> String {
        parse_ring_expr(s, &GroupSpec::trivial()).unwrap().to_string()
    }

    #[test]
    fn fusion_examples() {
        assert_eq!(eval("h1*h1"), "h2 + 1 + t1");
        assert_eq!(eval("(1 - t1)^2"), "2 - 2*t1");
        assert_eq!(eval("h1*h2"), "h3 + h1");
        assert_eq!(eval(" h 1 * h 1 "), "h2 + 1 + t1");
        assert_eq!(eval("h0"), "1 + t1");
        assert_eq!(eval("-3*t1 + 3*t1"), "0");
    }

    #[test]
    fn group_generators() {
        let g = GroupSpec::even(vec![2, 2]).unwrap();
        let v = parse_ring_expr("(1+z1)*(1+z2)*(1-t1)", &g).unwrap();
        assert_eq!(v.to_string(), "1 + z2^1 + z1^1 + z1^1*z2^1 - t1 - z2^1*t1 - z1^1*t1 - z1^1*z2^1*t1");
        let v = parse_ring_expr("z1^3*z1", &g).unwrap();
        assert_eq!(v.to_string(), "1");
    }

    #[test]
    fn odd_parity_enforced_on_result_only() {
        let g = GroupSpec::odd(1).unwrap();
        assert!(parse_ring_expr("z1*z1", &g).is_ok());
        assert!(parse_ring_expr("z1*h1", &g).is_ok());
        assert!(matches!(parse_ring_expr("z1", &g), Err(RepError::ParityViolation(_))));
        assert!(parse_ring_expr("z1^-1*h3", &g).is_ok());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let g = GroupSpec::trivial();
        assert!(matches!(parse_ring_expr("h1 +", &g), Err(RepError::Parse { .. })));
        assert!(matches!(parse_ring_expr("(h1", &g), Err(RepError::Parse { .. })));
        assert!(matches!(parse_ring_expr("x", &g), Err(RepError::Parse { pos: 0, .. })));
        assert!(matches!(parse_ring_expr("z1", &g), Err(RepError::Parse { .. })));
        assert!(matches!(parse_ring_expr("t2", &g), Err(RepError::Parse { .. })));
    }
}
