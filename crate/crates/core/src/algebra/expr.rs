//! Symbolic ring expressions over named generators.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '·') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int | superscript-int)?
//! atom  := int | ident | '(' expr ')'
//! ```
//!
//! A negative exponent means the inverse. Subscript digits in identifiers
//! are read as ASCII digits, so `x₁` and `x1` name the same generator.

use std::collections::HashMap;
use std::fmt;

use super::ring::{Ring, RingElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Const(i64),
    Gen(String),
    Add(Box<RingExpr>, Box<RingExpr>),
    Sub(Box<RingExpr>, Box<RingExpr>),
    Mul(Box<RingExpr>, Box<RingExpr>),
    Neg(Box<RingExpr>),
    Pow(Box<RingExpr>, i64),
}

impl RingExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            len: text.len(),
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn gen(name: &str) -> Self {
        RingExpr::Gen(name.to_string())
    }

    pub fn add(a: Self, b: Self) -> Self {
        RingExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Self, b: Self) -> Self {
        RingExpr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Self, b: Self) -> Self {
        RingExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Self) -> Self {
        RingExpr::Neg(Box::new(a))
    }

    pub fn pow(a: Self, e: i64) -> Self {
        RingExpr::Pow(Box::new(a), e)
    }

    /// Names of all generators occurring in the expression.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            RingExpr::Const(_) => {}
            RingExpr::Gen(n) => out.push(n.clone()),
            RingExpr::Add(a, b) | RingExpr::Sub(a, b) | RingExpr::Mul(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            RingExpr::Neg(a) | RingExpr::Pow(a, _) => a.collect(out),
        }
    }

    pub fn eval(&self, ring: &Ring, assignment: &HashMap<String, RingElement>) -> Result<RingElement> {
        match self {
            RingExpr::Const(k) => Ok(ring.from_int(*k)),
            RingExpr::Gen(name) => {
                let v = assignment
                    .get(name)
                    .ok_or_else(|| Error::Unassigned(name.clone()))?;
                if v.ring() != *ring {
                    return Err(Error::RingMismatch);
                }
                Ok(v.clone())
            }
            RingExpr::Add(a, b) => a.eval(ring, assignment)?.add(&b.eval(ring, assignment)?),
            RingExpr::Sub(a, b) => a.eval(ring, assignment)?.sub(&b.eval(ring, assignment)?),
            RingExpr::Mul(a, b) => a.eval(ring, assignment)?.mul(&b.eval(ring, assignment)?),
            RingExpr::Neg(a) => Ok(a.eval(ring, assignment)?.neg()),
            RingExpr::Pow(a, e) => a.eval(ring, assignment)?.pow(*e),
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Const(k) if *k < 0 => write!(f, "(-{})", k.unsigned_abs()),
            RingExpr::Const(k) => write!(f, "{k}"),
            RingExpr::Gen(n) => write!(f, "{n}"),
            RingExpr::Add(a, b) => write!(f, "({a} + {b})"),
            RingExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            RingExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            RingExpr::Neg(a) => write!(f, "(-{a})"),
            RingExpr::Pow(a, e) => write!(f, "({a}^{e})"),
        }
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn subscript_digit(c: char) -> Option<char> {
    let d = c as u32;
    (0x2080..=0x2089).contains(&d).then(|| char::from_digit(d - 0x2080, 10).unwrap())
}

fn superscript_digit(c: char) -> Option<i64> {
    SUPERSCRIPTS.iter().position(|&s| s == c).map(|d| d as i64)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn byte_pos(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(b, _)| b)
    }

    fn error(&self, msg: &str) -> Error {
        Error::ExprParse {
            pos: self.byte_pos(),
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, options: &[char]) -> bool {
        self.skip_ws();
        if self.peek().is_some_and(|c| options.contains(&c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&['+']) {
                lhs = RingExpr::add(lhs, self.term()?);
            } else if self.eat(&['-', '−']) {
                lhs = RingExpr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RingExpr> {
        let mut lhs = self.unary()?;
        while self.eat(&['*', '·']) {
            lhs = RingExpr::mul(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<RingExpr> {
        if self.eat(&['-', '−']) {
            return Ok(RingExpr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingExpr> {
        let base = self.atom()?;
        if self.eat(&['^']) {
            self.skip_ws();
            let neg = self.eat(&['-', '−']);
            self.skip_ws();
            let k = self.integer()?;
            return Ok(RingExpr::pow(base, if neg { -k } else { k }));
        }
        // Superscript exponents such as x², x⁻¹.
        let neg = self.peek() == Some('⁻');
        let start = self.pos;
        if neg {
            self.pos += 1;
        }
        let mut k: Option<i64> = None;
        while let Some(d) = self.peek().and_then(superscript_digit) {
            k = Some(k.unwrap_or(0) * 10 + d);
            self.pos += 1;
        }
        match k {
            Some(k) => Ok(RingExpr::pow(base, if neg { -k } else { k })),
            None if neg => {
                self.pos = start;
                Err(self.error("superscript minus without exponent"))
            }
            None => Ok(base),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let mut v: i64 = 0;
        let mut any = false;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as i64))
                .ok_or_else(|| self.error("integer overflow"))?;
            self.pos += 1;
            any = true;
        }
        if any {
            Ok(v)
        } else {
            Err(self.error("expected integer"))
        }
    }

    fn atom(&mut self) -> Result<RingExpr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&[')']) {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RingExpr::Const(self.integer()?)),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if let Some(d) = subscript_digit(c) {
                        name.push(d);
                    } else if (c.is_alphanumeric() && superscript_digit(c).is_none()) || c == '_' {
                        name.push(c);
                    } else {
                        break;
                    }
                    self.pos += 1;
                }
                Ok(RingExpr::Gen(name))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GroupTable, MatFp};
    use std::sync::Arc;

    #[test]
    fn constant_one_is_identity() {
        let ring = Ring::matrices(2, 3).unwrap();
        let v = RingExpr::parse("1").unwrap().eval(&ring, &HashMap::new()).unwrap();
        assert!(v.is_one());
    }

    #[test]
    fn matrix_commutator_is_nonzero() {
        let ring = Ring::matrices(2, 2).unwrap();
        let y = ring.from_matrix(MatFp::unit(2, 2, 0, 1)).unwrap();
        let z = ring.from_matrix(MatFp::permutation(2, &[1, 0])).unwrap();
        let env = HashMap::from([("y".to_string(), y.clone()), ("z".to_string(), z.clone())]);
        let v = RingExpr::parse("y·z − z·y").unwrap().eval(&ring, &env).unwrap();
        // yz = E11, zy = E22, so the difference is diag(1, -1) = I mod 2
        assert!(!v.is_zero());
        assert_eq!(v, y.mul(&z).unwrap().sub(&z.mul(&y).unwrap()).unwrap());
    }

    #[test]
    fn transposition_squares_to_one() {
        let (t, perms) = GroupTable::symmetric(3);
        let ring = Ring::group_ring(Arc::new(t), 3).unwrap();
        let idx = perms.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
        let env = HashMap::from([("x1".to_string(), ring.delta(idx).unwrap())]);
        let v = RingExpr::parse("x₁²").unwrap().eval(&ring, &env).unwrap();
        assert!(v.is_one());
    }

    #[test]
    fn parse_shapes() {
        assert_eq!(
            RingExpr::parse("a + b*c").unwrap(),
            RingExpr::add(RingExpr::gen("a"), RingExpr::mul(RingExpr::gen("b"), RingExpr::gen("c")))
        );
        assert_eq!(
            RingExpr::parse("-x^-1").unwrap(),
            RingExpr::neg(RingExpr::pow(RingExpr::gen("x"), -1))
        );
        assert_eq!(RingExpr::parse("x⁻¹").unwrap(), RingExpr::pow(RingExpr::gen("x"), -1));
        let e = RingExpr::parse("(a - 2) * b^3").unwrap();
        assert_eq!(RingExpr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn errors() {
        assert!(matches!(RingExpr::parse("a +"), Err(Error::ExprParse { .. })));
        assert!(matches!(RingExpr::parse("(a"), Err(Error::ExprParse { .. })));
        assert!(matches!(RingExpr::parse("a $"), Err(Error::ExprParse { pos: 2, .. })));
        let ring = Ring::field(3).unwrap();
        assert_eq!(
            RingExpr::parse("q").unwrap().eval(&ring, &HashMap::new()),
            Err(Error::Unassigned("q".into()))
        );
        let env = HashMap::from([("q".to_string(), Ring::field(5).unwrap().one())]);
        assert_eq!(
            RingExpr::parse("q").unwrap().eval(&ring, &env),
            Err(Error::RingMismatch)
        );
    }
}
