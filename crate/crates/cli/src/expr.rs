//! Arithmetic constant expressions for configuration files.
//!
//! Numeric leaves in the config may be strings like
//! `"57*sqrt(35)/10 + 59*sqrt(915)/30"`, so exact algebraic constants reach
//! the solvers without decimal transcription. Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := number | 'sqrt' '(' expr ')' | '(' expr ')' | '-' factor
//! ```

use std::fmt;

/// Syntax error with the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Abstract syntax tree of a constant expression.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstExpr {
    Number(f64),
    Sqrt(Box<ConstExpr>),
    Neg(Box<ConstExpr>),
    Binary {
        op: BinOp,
        lhs: Box<ConstExpr>,
        rhs: Box<ConstExpr>,
    },
}

impl ConstExpr {
    pub fn eval(&self) -> f64 {
        match self {
            ConstExpr::Number(x) => *x,
            ConstExpr::Sqrt(inner) => inner.eval().sqrt(),
            ConstExpr::Neg(inner) => -inner.eval(),
            ConstExpr::Binary { op, lhs, rhs } => {
                let (a, b) = (lhs.eval(), rhs.eval());
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                }
            }
        }
    }

    /// Binding strength used to decide parenthesization when printing.
    fn precedence(&self) -> u8 {
        match self {
            ConstExpr::Number(_) | ConstExpr::Sqrt(_) => 3,
            ConstExpr::Neg(_) => 2,
            ConstExpr::Binary {
                op: BinOp::Mul | BinOp::Div,
                ..
            } => 1,
            ConstExpr::Binary {
                op: BinOp::Add | BinOp::Sub,
                ..
            } => 0,
        }
    }

    fn fmt_at(&self, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            write!(f, "(")?;
        }
        match self {
            ConstExpr::Number(x) => write!(f, "{x}")?,
            ConstExpr::Sqrt(inner) => {
                write!(f, "sqrt(")?;
                inner.fmt_at(0, f)?;
                write!(f, ")")?;
            }
            ConstExpr::Neg(inner) => {
                write!(f, "-")?;
                inner.fmt_at(2, f)?;
            }
            ConstExpr::Binary { op, lhs, rhs } => {
                let (prec, sym) = match op {
                    BinOp::Add => (0, " + "),
                    BinOp::Sub => (0, " - "),
                    BinOp::Mul => (1, "*"),
                    BinOp::Div => (1, "/"),
                };
                lhs.fmt_at(prec, f)?;
                write!(f, "{sym}")?;
                // Left associativity: the right operand must bind tighter.
                rhs.fmt_at(prec + 1, f)?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(0, f)
    }
}

/// Parse `text` into an expression tree.
pub fn parse(text: &str) -> Result<ConstExpr, SyntaxError> {
    let mut parser = Parser { text, pos: 0 };
    parser.skip_ws();
    if parser.rest().is_empty() {
        return Err(parser.error("empty input"));
    }
    let expr = parser.expr()?;
    parser.skip_ws();
    if !parser.rest().is_empty() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

/// Convenience: parse and evaluate in one step.
pub fn eval(text: &str) -> Result<f64, SyntaxError> {
    Ok(parse(text)?.eval())
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn error(&self, message: &str) -> SyntaxError {
        SyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, token: char) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ConstExpr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = ConstExpr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
    }

    fn term(&mut self) -> Result<ConstExpr, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = ConstExpr::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
    }

    fn factor(&mut self) -> Result<ConstExpr, SyntaxError> {
        self.skip_ws();
        if self.eat('-') {
            return Ok(ConstExpr::Neg(Box::new(self.factor()?)));
        }
        if self.rest().starts_with("sqrt") {
            self.pos += 4;
            self.skip_ws();
            if !self.eat('(') {
                return Err(self.error("expected '(' after sqrt"));
            }
            let inner = self.expr()?;
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.error("unbalanced parenthesis: expected ')'"));
            }
            return Ok(ConstExpr::Sqrt(Box::new(inner)));
        }
        if self.eat('(') {
            let inner = self.expr()?;
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.error("unbalanced parenthesis: expected ')'"));
            }
            return Ok(inner);
        }
        self.number()
    }

    fn number(&mut self) -> Result<ConstExpr, SyntaxError> {
        let rest = self.rest();
        let mut len = 0;
        let bytes = rest.as_bytes();
        while len < bytes.len() && (bytes[len].is_ascii_digit() || bytes[len] == b'.') {
            len += 1;
        }
        if len == 0 {
            return Err(match rest.chars().next() {
                Some(c) => self.error(&format!("unexpected character '{c}'")),
                None => self.error("unexpected end of input"),
            });
        }
        // Optional exponent: e or E, optional sign, digits.
        if len < bytes.len() && (bytes[len] == b'e' || bytes[len] == b'E') {
            let mut probe = len + 1;
            if probe < bytes.len() && (bytes[probe] == b'+' || bytes[probe] == b'-') {
                probe += 1;
            }
            let digits_start = probe;
            while probe < bytes.len() && bytes[probe].is_ascii_digit() {
                probe += 1;
            }
            if probe > digits_start {
                len = probe;
            }
        }
        let token = &rest[..len];
        let value: f64 = token
            .parse()
            .map_err(|_| self.error(&format!("invalid number '{token}'")))?;
        self.pos += len;
        Ok(ConstExpr::Number(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_surd_constants() {
        let v = eval("57*sqrt(35)/10 + 59*sqrt(915)/30").unwrap();
        assert!((v - 93.21128971520089).abs() < 1e-12);
        assert_eq!(eval("0").unwrap(), 0.0);
        assert_eq!(eval("-(3 + 4)/2").unwrap(), -3.5);
        assert_eq!(eval("2*3 - 4/8").unwrap(), 5.5);
        assert_eq!(eval("1.5e2").unwrap(), 150.0);
        assert_eq!(eval("sqrt(sqrt(16))").unwrap(), 2.0);
    }

    #[test]
    fn respects_precedence_and_associativity() {
        assert_eq!(eval("2 - 3 - 4").unwrap(), -5.0);
        assert_eq!(eval("24/4/2").unwrap(), 3.0);
        assert_eq!(eval("2 + 3*4").unwrap(), 14.0);
        assert_eq!(eval("(2 + 3)*4").unwrap(), 20.0);
        assert_eq!(eval("--5").unwrap(), 5.0);
        assert_eq!(eval("2*-3").unwrap(), -6.0);
    }

    #[test]
    fn reports_error_offsets() {
        let err = parse("sqrt(").unwrap_err();
        assert_eq!(err.offset, 5);
        let err = parse("(1 + 2").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.message.contains("unbalanced"));
        let err = parse("1 + #").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse("").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.message.contains("empty"));
        let err = parse("1 2").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("trailing"));
    }

    #[test]
    fn print_parse_round_trip_is_idempotent() {
        let sources = [
            "57*sqrt(35)/10 + 59*sqrt(915)/30",
            "-(1121*sqrt(1281)/40) - 28013/24",
            "2 - (3 - 4)",
            "-(2 + 3)*4",
            "1/(2/3)",
            "-sqrt(2)/2",
            "2*(3 + 4)/5",
        ];
        for src in sources {
            let ast = parse(src).unwrap();
            let printed = ast.to_string();
            let reparsed = parse(&printed).unwrap();
            assert_eq!(ast, reparsed, "round trip changed {src:?} -> {printed:?}");
            assert_eq!(printed, reparsed.to_string());
            assert_eq!(ast.eval(), reparsed.eval());
        }
    }
}
