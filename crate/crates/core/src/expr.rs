//! Element expressions: rational literals, basis labels, `+`, `-`, `*` and
//! parentheses.
//!
//! Products associate left-to-right. In a non-associative algebra an
//! unparenthesized chain of three or more factors is rejected instead of
//! silently reassociated. Basis labels are matched greedily (longest label
//! first), so tensor-product labels containing `*` still lex unambiguously.

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::ExprError;
use crate::scalar::Scalar;

/// Parses and evaluates `text` to an element of `algebra`.
pub fn eval_expression<'a>(
    algebra: &'a FiniteAlgebra,
    text: &str,
) -> Result<Element<'a>, ExprError> {
    let tokens = lex(algebra, text)?;
    let mut parser = Parser {
        algebra,
        tokens,
        pos: 0,
    };
    let value = parser.expression()?;
    parser.expect_end()?;
    match value {
        Value::Elem(e) => Ok(e),
        Value::Num(s) => lift_scalar(algebra, &s),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Scalar),
    Label(usize),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn lex(algebra: &FiniteAlgebra, text: &str) -> Result<Vec<Token>, ExprError> {
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < text.len() {
        let c = text[pos..].chars().next().expect("pos is on a char boundary");
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        // longest basis label matching at this position wins over any
        // shorter number or identifier reading
        let label_match = algebra
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| text[pos..].starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len());
        let number_len = if c.is_ascii_digit() { number_length(&text[pos..]) } else { 0 };
        if let Some((idx, label)) = label_match {
            if label.len() >= number_len && label.len() > 1 || (label.len() == 1 && number_len <= 1)
            {
                // ties between a one-char label and a one-char number go to
                // the number: in an algebra with identity they evaluate the
                // same, and numbers stay valid in algebras without one
                if number_len > 0 && label.len() <= number_len {
                    tokens.push(Token::Number(parse_number(&text[pos..pos + number_len])?));
                    pos += number_len;
                } else {
                    tokens.push(Token::Label(idx));
                    pos += label.len();
                }
                continue;
            }
        }
        if number_len > 0 {
            tokens.push(Token::Number(parse_number(&text[pos..pos + number_len])?));
            pos += number_len;
            continue;
        }
        match c {
            '+' => tokens.push(Token::Plus),
            '-' | '\u{2212}' => tokens.push(Token::Minus),
            '*' => tokens.push(Token::Star),
            '(' => tokens.push(Token::LParen),
            ')' => tokens.push(Token::RParen),
            _ => {
                if c.is_alphanumeric() || c == '_' {
                    let end = text[pos..]
                        .find(|ch: char| !(ch.is_alphanumeric() || ch == '_'))
                        .map_or(text.len(), |off| pos + off);
                    return Err(ExprError::UnknownLabel(text[pos..end].to_string()));
                }
                return Err(ExprError::Parse(format!("unexpected character {c:?}")));
            }
        }
        pos += c.len_utf8();
    }
    Ok(tokens)
}

/// Length of a leading rational literal `digits` or `digits/digits`.
fn number_length(s: &str) -> usize {
    let digits = |t: &str| t.chars().take_while(|c| c.is_ascii_digit()).count();
    let d1 = digits(s);
    if d1 == 0 {
        return 0;
    }
    let rest = &s[d1..];
    if let Some(after_slash) = rest.strip_prefix('/') {
        let d2 = digits(after_slash);
        if d2 > 0 {
            return d1 + 1 + d2;
        }
    }
    d1
}

fn parse_number(s: &str) -> Result<Scalar, ExprError> {
    s.parse()
        .map_err(|_| ExprError::Parse(format!("bad rational literal {s:?}")))
}

#[derive(Clone)]
enum Value<'a> {
    Num(Scalar),
    Elem(Element<'a>),
}

fn lift_scalar<'a>(algebra: &'a FiniteAlgebra, s: &Scalar) -> Result<Element<'a>, ExprError> {
    match algebra.identity_index() {
        Some(e) => Ok(algebra.basis_element(e).scale(s)),
        None => Err(ExprError::ScalarNeedsIdentity),
    }
}

struct Parser<'a> {
    algebra: &'a FiniteAlgebra,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_end(&self) -> Result<(), ExprError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(ExprError::Parse("trailing input after expression".into()))
        }
    }

    // expression := term (('+' | '-') term)*
    fn expression(&mut self) -> Result<Value<'a>, ExprError> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            let negate = match tok {
                Token::Plus => false,
                Token::Minus => true,
                _ => break,
            };
            self.next();
            let rhs = self.term()?;
            acc = self.add_values(acc, rhs, negate)?;
        }
        Ok(acc)
    }

    // term := factor ('*' factor)* with left-to-right reduction
    fn term(&mut self) -> Result<Value<'a>, ExprError> {
        let mut factors = vec![self.factor()?];
        while matches!(self.peek(), Some(Token::Star)) {
            self.next();
            factors.push(self.factor()?);
        }
        if factors.len() >= 3 && !self.algebra.is_associative() {
            return Err(ExprError::AmbiguousProduct);
        }
        let mut iter = factors.into_iter();
        let mut acc = iter.next().expect("at least one factor");
        for f in iter {
            acc = self.mul_values(acc, f)?;
        }
        Ok(acc)
    }

    // factor := number | label | '(' expression ')' | '-' factor
    fn factor(&mut self) -> Result<Value<'a>, ExprError> {
        match self.next() {
            Some(Token::Number(s)) => Ok(Value::Num(s)),
            Some(Token::Label(i)) => Ok(Value::Elem(self.algebra.basis_element(i))),
            Some(Token::LParen) => {
                let inner = self.expression()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ExprError::Parse("missing closing parenthesis".into())),
                }
            }
            Some(Token::Minus) => {
                let inner = self.factor()?;
                Ok(match inner {
                    Value::Num(s) => Value::Num(-s),
                    Value::Elem(e) => Value::Elem(e.scale(&Scalar::from_int(-1))),
                })
            }
            other => Err(ExprError::Parse(format!(
                "expected a value, found {other:?}"
            ))),
        }
    }

    fn add_values(
        &self,
        lhs: Value<'a>,
        rhs: Value<'a>,
        negate: bool,
    ) -> Result<Value<'a>, ExprError> {
        let rhs = if negate {
            match rhs {
                Value::Num(s) => Value::Num(-s),
                Value::Elem(e) => Value::Elem(e.scale(&Scalar::from_int(-1))),
            }
        } else {
            rhs
        };
        let to_elem = |v: Value<'a>| -> Result<Element<'a>, ExprError> {
            match v {
                Value::Elem(e) => Ok(e),
                Value::Num(s) => lift_scalar(self.algebra, &s),
            }
        };
        match (lhs, rhs) {
            (Value::Num(a), Value::Num(b)) => Ok(Value::Num(a + b)),
            (a, b) => {
                let ea = to_elem(a)?;
                let eb = to_elem(b)?;
                Ok(Value::Elem(ea.add(&eb).expect("same algebra by construction")))
            }
        }
    }

    fn mul_values(&self, lhs: Value<'a>, rhs: Value<'a>) -> Result<Value<'a>, ExprError> {
        Ok(match (lhs, rhs) {
            (Value::Num(a), Value::Num(b)) => Value::Num(a * b),
            (Value::Num(a), Value::Elem(e)) | (Value::Elem(e), Value::Num(a)) => {
                Value::Elem(e.scale(&a))
            }
            (Value::Elem(a), Value::Elem(b)) => {
                Value::Elem(a.multiply(&b).expect("same algebra by construction"))
            }
        })
    }
}
