//! Surface syntax for parameters.
//!
//! ```text
//! param := "0" | term ("+" term)*
//! term  := [INT "*"] "[" char "x" "S(" INT ")" "]"
//! char  := "1" | "sgn" | "unr(" RAT "," RAT ")" | "rho(" NAME ";" ATTRS ")"
//! ```

use std::fmt;

use metaplectic_core::group::Sign;
use metaplectic_core::params::{AbstractLabel, Duality, Label, Parameter, SimpleBlock, UnramifiedCharacter};
use metaplectic_core::scalar::{format_rational, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: Span,
}

impl ParseError {
    /// The message with the source line and a caret under the span.
    pub fn render(&self, text: &str) -> String {
        let width = (self.span.end.max(self.span.start + 1) - self.span.start).max(1);
        format!(
            "syntax error at {}..{}: {}\n  {}\n  {}{}",
            self.span.start,
            self.span.end,
            self.message,
            text,
            " ".repeat(text[..self.span.start.min(text.len())].chars().count()),
            "^".repeat(width)
        )
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}..{}", self.message, self.span.start, self.span.end)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharExpr {
    Trivial,
    Sgn,
    Unr { rot: Q, texp: Q },
    Rho(AbstractLabel),
}

impl CharExpr {
    pub fn to_label(&self) -> Label {
        match self {
            CharExpr::Trivial => Label::trivial(),
            CharExpr::Sgn => Label::sgn(),
            CharExpr::Unr { rot, texp } => Label::Unramified(UnramifiedCharacter::new(*rot, *texp)),
            CharExpr::Rho(l) => Label::Abstract(l.clone()),
        }
    }
}

impl fmt::Display for CharExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharExpr::Trivial => write!(f, "1"),
            CharExpr::Sgn => write!(f, "sgn"),
            CharExpr::Unr { rot, texp } => write!(f, "unr({},{})", format_rational(rot), format_rational(texp)),
            CharExpr::Rho(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermExpr {
    pub mult: u32,
    pub chr: CharExpr,
    pub a: u32,
    pub span: Span,
    pub char_span: Span,
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult != 1 {
            write!(f, "{}*", self.mult)?;
        }
        write!(f, "[{} x S({})]", self.chr, self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamExpr {
    pub terms: Vec<TermExpr>,
}

impl ParamExpr {
    /// Semantic checks happen here, in `Parameter::normalize`.
    pub fn to_parameter(&self) -> metaplectic_core::Result<Parameter> {
        Parameter::normalize(self.terms.iter().map(|t| (SimpleBlock::new(t.chr.to_label(), t.a), t.mult)))
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, start: usize, end: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { message: message.into(), span: Span { start, end } })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> PResult<()> {
        if self.eat(token) {
            return Ok(());
        }
        let end = self.pos + self.rest().chars().next().map_or(0, char::len_utf8);
        let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("'{c}'"));
        self.err(self.pos, end, format!("expected '{token}', found {found}"))
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> (&'a str, usize) {
        self.skip_ws();
        let start = self.pos;
        let len: usize = self.rest().chars().take_while(|c| f(*c)).map(char::len_utf8).sum();
        self.pos += len;
        (&self.text[start..self.pos], start)
    }

    fn int(&mut self) -> PResult<u32> {
        let (digits, start) = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err(start, start + 1, "expected an integer");
        }
        digits.parse().or_else(|_| self.err(start, self.pos, "integer out of range"))
    }

    fn signed_int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        let (digits, _) = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err(start, self.pos + 1, "expected an integer");
        }
        let v: i64 = digits.parse().or_else(|_| self.err(start, self.pos, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> PResult<Q> {
        self.skip_ws();
        let start = self.pos;
        let num = self.signed_int()?;
        if self.eat("/") {
            let den = self.int()?;
            if den == 0 {
                return self.err(start, self.pos, "zero denominator");
            }
            return Ok(Q::new(num, den as i64));
        }
        Ok(Q::from(num))
    }

    fn name(&mut self) -> PResult<String> {
        let (name, start) = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        if name.is_empty() {
            return self.err(start, start + 1, "expected a name");
        }
        Ok(name.to_string())
    }

    fn sign_value(&mut self) -> PResult<Sign> {
        let (v, start) = self.take_while(|c| c == '+' || c == '-' || c == '1');
        Sign::parse(v).map_or_else(|| self.err(start, self.pos.max(start + 1), "expected a sign"), Ok)
    }

    fn rho(&mut self, start: usize) -> PResult<CharExpr> {
        let name = self.name()?;
        self.expect(";")?;
        let (mut dim, mut duality, mut eps, mut wm1, mut frob) = (None, None, None, None, None);
        loop {
            let key_start = {
                self.skip_ws();
                self.pos
            };
            let key = self.name()?;
            self.expect("=")?;
            match key.as_str() {
                "dim" => dim = Some(self.int()?),
                "sd" => {
                    let (v, s) = self.take_while(|c| c.is_ascii_alphabetic());
                    duality = Some(match v {
                        "symp" => Duality::Symplectic,
                        "orth" => Duality::Orthogonal,
                        "dual" => {
                            self.expect(":")?;
                            Duality::NotSelfDual(self.name()?)
                        }
                        _ => return self.err(s, self.pos.max(s + 1), "sd must be symp, orth or dual:NAME"),
                    });
                }
                "eps" => eps = Some(self.sign_value()?),
                "wm1" => wm1 = Some(self.sign_value()?),
                "frob" => frob = Some(self.sign_value()?),
                _ => return self.err(key_start, self.pos, format!("unknown attribute '{key}'")),
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect(")")?;
        let missing = |what: &str| ParseError {
            message: format!("rho({name}) is missing '{what}'"),
            span: Span { start, end: self.pos },
        };
        Ok(CharExpr::Rho(AbstractLabel {
            dim: dim.ok_or_else(|| missing("dim"))?,
            duality: duality.ok_or_else(|| missing("sd"))?,
            eps_half: eps,
            central_sign: wm1.ok_or_else(|| missing("wm1"))?,
            frob_sign: frob,
            name,
        }))
    }

    fn chr(&mut self) -> PResult<(CharExpr, Span)> {
        self.skip_ws();
        let start = self.pos;
        let c = if self.eat("sgn") {
            CharExpr::Sgn
        } else if self.eat("unr(") {
            let rot = self.rational()?;
            self.expect(",")?;
            let texp = self.rational()?;
            self.expect(")")?;
            CharExpr::Unr { rot, texp }
        } else if self.eat("rho(") {
            self.rho(start)?
        } else if self.eat("1") {
            CharExpr::Trivial
        } else {
            return self.err(start, start + 1, "expected 1, sgn, unr(..) or rho(..)");
        };
        Ok((c, Span { start, end: self.pos }))
    }

    fn term(&mut self) -> PResult<TermExpr> {
        self.skip_ws();
        let start = self.pos;
        let mult = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            let m = self.int()?;
            self.expect("*")?;
            m
        } else {
            1
        };
        self.expect("[")?;
        let (chr, char_span) = self.chr()?;
        self.expect("x")?;
        self.expect("S(")?;
        let a = self.int()?;
        self.expect(")")?;
        self.expect("]")?;
        Ok(TermExpr { mult, chr, a, span: Span { start, end: self.pos }, char_span })
    }

    fn param(&mut self) -> PResult<ParamExpr> {
        self.skip_ws();
        if self.rest().trim_end() == "0" {
            self.pos = self.text.len();
            return Ok(ParamExpr { terms: Vec::new() });
        }
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        self.skip_ws();
        if self.pos < self.text.len() {
            return self.err(self.pos, self.text.len(), "unexpected trailing input");
        }
        Ok(ParamExpr { terms })
    }
}

pub fn parse_expr(text: &str) -> Result<ParamExpr, ParseError> {
    Parser { text, pos: 0 }.param()
}

/// `"char,a"`, split at the last comma since `char` may contain commas.
pub fn parse_block(text: &str) -> Result<SimpleBlock, ParseError> {
    let Some(cut) = text.rfind(',') else {
        return Err(ParseError { message: "expected 'char,a'".into(), span: Span { start: 0, end: text.len() } });
    };
    let mut p = Parser { text: &text[..cut], pos: 0 };
    let (chr, _) = p.chr()?;
    p.skip_ws();
    if p.pos < cut {
        return p.err(p.pos, cut, "unexpected input after character");
    }
    let mut q = Parser { text, pos: cut + 1 };
    let a = q.int()?;
    q.skip_ws();
    if q.pos < text.len() {
        return q.err(q.pos, text.len(), "unexpected trailing input");
    }
    Ok(SimpleBlock::new(chr.to_label(), a))
}
