//! Element expressions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-'? atom ('^' rational)?
//! atom   := ident | number | '(' expr ')'
//! ```
//!
//! Identifiers: J0, Jp, Jm, Z (quantum algebra); alpha, beta, gamma, delta,
//! a, b, c, d, dhat, det (dual); p, q, P, Q, theta, phi, i (scalars at the
//! point). Numbers are decimals, rationals `3/4`, or complex literals
//! `1.5+0.5i`. Fractional and negative powers are allowed on scalars and on
//! the group-like atoms a, dhat, det only.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::dualg::{self, DualElement, GaussName, LieName};
use crate::error::{Error, Result};
use crate::quea::QueaElement;
use crate::scalars::{rat_f64, ParamPoint, Rat, C64};

/// Normal-form value of an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(C64),
    Dual(DualElement),
    Quea(QueaElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{}", crate::lincomb::fmt_coeff(*s)),
            Value::Dual(x) => write!(f, "{x}"),
            Value::Quea(u) => write!(f, "{u}"),
        }
    }
}

/// Coefficients below this fraction of the largest intermediate are dropped
/// from the printed normal form.
pub const CANCEL_EPS: f64 = 1e-12;

impl Value {
    pub fn magnitude(&self) -> f64 {
        match self {
            Value::Scalar(s) => s.norm(),
            Value::Dual(x) => x.max_abs(),
            Value::Quea(u) => u.max_abs(),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.magnitude() <= tol
    }

    fn prune(self, cut: f64) -> Value {
        match self {
            Value::Scalar(s) if s.norm() <= cut => Value::Scalar(C64::zero()),
            Value::Dual(x) => Value::Dual(x.restrict(|t| x.coeff(t).norm() > cut)),
            Value::Quea(u) => Value::Quea(u.restrict(|t| u.coeff(t).norm() > cut)),
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    /// Value, plus the exact rational when the literal is an integer or `n/m`.
    Num(C64, Option<Rat>),
    Ident(String),
    Op(char),
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

/// Length of a decimal number (digits, optional fraction and exponent) at `i`.
fn number_len(s: &[char], i: usize) -> usize {
    let mut j = i;
    while j < s.len() && s[j].is_ascii_digit() {
        j += 1;
    }
    if j < s.len() && s[j] == '.' {
        j += 1;
        while j < s.len() && s[j].is_ascii_digit() {
            j += 1;
        }
    }
    if j < s.len() && (s[j] == 'e' || s[j] == 'E') {
        let mut k = j + 1;
        if k < s.len() && (s[k] == '+' || s[k] == '-') {
            k += 1;
        }
        if k < s.len() && s[k].is_ascii_digit() {
            while k < s.len() && s[k].is_ascii_digit() {
                k += 1;
            }
            j = k;
        }
    }
    j - i
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let s: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let ch = s[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() || (ch == '.' && i + 1 < s.len() && s[i + 1].is_ascii_digit()) {
            let n = number_len(&s, i);
            let lit: String = s[i..i + n].iter().collect();
            let mut v: f64 = lit.parse().map_err(|_| syntax(i, format!("bad number `{lit}`")))?;
            let mut exact = lit.parse::<i64>().ok().map(Rat::from_integer);
            let mut j = i + n;
            // rational literal p/q
            if j + 1 < s.len() && s[j] == '/' && s[j + 1].is_ascii_digit() {
                let m = number_len(&s, j + 1);
                let den: String = s[j + 1..j + 1 + m].iter().collect();
                let d: f64 = den.parse().map_err(|_| syntax(j + 1, format!("bad number `{den}`")))?;
                if d == 0.0 {
                    return Err(syntax(j + 1, "zero denominator"));
                }
                v /= d;
                exact = match (exact, den.parse::<i64>()) {
                    (Some(r), Ok(d)) => Some(r / Rat::from_integer(d)),
                    _ => None,
                };
                j += 1 + m;
            }
            let mut val = C64::new(v, 0.0);
            if j < s.len() && s[j] == 'i' && !(j + 1 < s.len() && s[j + 1].is_alphanumeric()) {
                val = C64::new(0.0, v);
                exact = None;
                j += 1;
            } else if j + 1 < s.len() && (s[j] == '+' || s[j] == '-') && s[j + 1].is_ascii_digit() {
                // complex literal a±bi, written without spaces
                let m = number_len(&s, j + 1);
                let k = j + 1 + m;
                if k < s.len() && s[k] == 'i' && !(k + 1 < s.len() && s[k + 1].is_alphanumeric()) {
                    let lit: String = s[j + 1..k].iter().collect();
                    let im: f64 = lit.parse().map_err(|_| syntax(j + 1, format!("bad number `{lit}`")))?;
                    val = C64::new(v, if s[j] == '-' { -im } else { im });
                    exact = None;
                    j = k + 1;
                }
            }
            out.push((Tok::Num(val, exact), i));
            i = j;
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < s.len() && (s[i].is_alphanumeric() || s[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(s[start..i].iter().collect()), start));
            continue;
        }
        if "+-*^()/".contains(ch) {
            out.push((Tok::Op(ch), i));
            i += 1;
            continue;
        }
        return Err(syntax(i, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    src: Vec<char>,
    toks: Vec<(Tok, usize)>,
    /// Largest coefficient seen in any operand.
    scale: f64,
    at: usize,
    end: usize,
    pt: &'a ParamPoint,
}

/// Binary operations with scalar promotion.
fn combine(a: Value, b: Value, op: char, pos: usize) -> Result<Value> {
    use Value::*;
    let mixed = || syntax(pos, "cannot combine dual and quantum-algebra elements");
    let sign = if op == '-' { -1.0 } else { 1.0 };
    match (a, b) {
        (Scalar(x), Scalar(y)) => Ok(Scalar(match op {
            '*' => x * y,
            _ => x + y * sign,
        })),
        (Scalar(s), Dual(x)) => Ok(Dual(match op {
            '*' => x.scale(s),
            _ => DualElement::scalar(x.point(), s).add(&x.scale(C64::new(sign, 0.0)))?,
        })),
        (Dual(x), Scalar(s)) => Ok(Dual(match op {
            '*' => x.scale(s),
            _ => x.add(&DualElement::scalar(x.point(), s * sign))?,
        })),
        (Scalar(s), Quea(u)) => Ok(Quea(match op {
            '*' => u.scale(s),
            _ => QueaElement::scalar(u.point(), s).add(&u.scale(C64::new(sign, 0.0)))?,
        })),
        (Quea(u), Scalar(s)) => Ok(Quea(match op {
            '*' => u.scale(s),
            _ => u.add(&QueaElement::scalar(u.point(), s * sign))?,
        })),
        (Dual(x), Dual(y)) => Ok(Dual(match op {
            '*' => x.mul(&y)?,
            _ => x.add(&y.scale(C64::new(sign, 0.0)))?,
        })),
        (Quea(u), Quea(v)) => Ok(Quea(match op {
            '*' => u.mul(&v)?,
            _ => u.add(&v.scale(C64::new(sign, 0.0)))?,
        })),
        _ => Err(mixed()),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn join(&mut self, a: Value, b: Value, op: char, pos: usize) -> Result<Value> {
        self.scale = self.scale.max(a.magnitude()).max(b.magnitude());
        combine(a, b, op, pos)
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Some(Tok::Op(c)) if *c == '+' || *c == '-' => *c,
                _ => return Ok(acc),
            };
            self.at += 1;
            let rhs = self.term()?;
            acc = self.join(acc, rhs, op, pos)?;
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = self.join(acc, rhs, '*', pos)?;
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let neg = self.eat('-');
        let start = self.pos();
        let (atom, group_like) = self.atom()?;
        let v = if self.eat('^') {
            let caret = self.toks[self.at - 1].1;
            let r = self.rational()?;
            let text: String = self.src[start..caret].iter().collect();
            self.power(atom, group_like, r, text.trim())?
        } else {
            atom
        };
        if neg {
            self.join(Value::Scalar(C64::new(-1.0, 0.0)), v, '*', start)
        } else {
            Ok(v)
        }
    }

    fn power(&self, atom: Value, group_like: Option<GaussName>, r: Rat, text: &str) -> Result<Value> {
        if let Some(name) = group_like {
            return Ok(Value::Dual(dualg::gauss_entry(self.pt, name, r)?));
        }
        match atom {
            Value::Scalar(s) => Ok(Value::Scalar(s.powc(C64::new(rat_f64(r), 0.0)))),
            Value::Dual(x) if r.is_integer() && !r.is_negative() => Ok(Value::Dual(x.pow(r.to_integer() as u32)?)),
            Value::Quea(u) if r.is_integer() && !r.is_negative() => Ok(Value::Quea(u.pow(r.to_integer() as u32)?)),
            _ => Err(Error::NonGroupLikePower(format!("{text}^{r}"))),
        }
    }

    /// `n`, `-n`, `(n)`, `(n/m)`, `(-n/m)`.
    fn rational(&mut self) -> Result<Rat> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let mut r = self.exact()?;
        if paren && self.eat('/') {
            let pos = self.pos();
            let d = self.exact()?;
            if d.is_zero() {
                return Err(syntax(pos, "zero denominator"));
            }
            r /= d;
        }
        if paren && !self.eat(')') {
            return Err(syntax(self.pos(), "expected `)`"));
        }
        Ok(if neg { -r } else { r })
    }

    fn exact(&mut self) -> Result<Rat> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Num(_, Some(r))) => {
                let r = *r;
                self.at += 1;
                Ok(r)
            }
            _ => Err(syntax(pos, "expected a rational exponent")),
        }
    }

    fn atom(&mut self) -> Result<(Value, Option<GaussName>)> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| syntax(pos, "unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::Num(v, _) => Ok((Value::Scalar(v), None)),
            Tok::Op('(') => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.pos(), "expected `)`"));
                }
                Ok((v, None))
            }
            Tok::Op(c) => Err(syntax(pos, format!("unexpected `{c}`"))),
            Tok::Ident(name) => self.ident(&name),
        }
    }

    fn ident(&self, name: &str) -> Result<(Value, Option<GaussName>)> {
        let pt = self.pt;
        let d = |x: DualElement| Ok((Value::Dual(x), None));
        let u = |x: QueaElement| Ok((Value::Quea(x), None));
        let s = |x: C64| Ok((Value::Scalar(x), None));
        let g = |n: GaussName| Ok((Value::Dual(dualg::entry(pt, n)), Some(n)));
        match name {
            "J0" => u(QueaElement::j0(pt)),
            "Jp" => u(QueaElement::jp(pt)),
            "Jm" => u(QueaElement::jm(pt)),
            "Z" => u(QueaElement::z(pt)),
            "alpha" => d(dualg::lie_generator(pt, LieName::Alpha)),
            "beta" => d(dualg::lie_generator(pt, LieName::Beta)),
            "gamma" => d(dualg::lie_generator(pt, LieName::Gamma)),
            "delta" => d(dualg::lie_generator(pt, LieName::Delta)),
            "a" => g(GaussName::A),
            "b" => d(dualg::entry(pt, GaussName::B)),
            "c" => d(dualg::entry(pt, GaussName::C)),
            "d" => d(dualg::entry(pt, GaussName::D)),
            "dhat" => g(GaussName::Dhat),
            "det" => g(GaussName::Det),
            "p" => s(pt.p()),
            "q" => s(pt.q()),
            "P" => s(pt.big_p()),
            "Q" => s(pt.big_q()),
            "theta" => s(pt.theta()),
            "phi" => s(pt.phi()),
            "i" => s(C64::new(0.0, 1.0)),
            other => Err(Error::UnknownIdentifier(other.to_string())),
        }
    }
}

/// Parses `text` and reduces it to normal form at `pt`.
pub fn parse_expression(text: &str, pt: &ParamPoint) -> Result<Value> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser { src: text.chars().collect(), toks, scale: 0.0, at: 0, end, pt };
    let v = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    let cut = CANCEL_EPS * p.scale.max(v.magnitude());
    Ok(v.prune(cut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Model};

    fn pt(model: Model) -> ParamPoint {
        ParamPoint::new(model, C64::new(0.31, -0.17), C64::new(0.23, 0.41))
    }

    #[test]
    fn gl2_ab_relation_reduces_to_zero() {
        let v = parse_expression("a*b - (q)*b*a", &pt(Model::Gl2)).unwrap();
        assert!(v.is_zero(1e-12), "{v}");
        assert_eq!(v.to_string(), "0");
    }

    #[test]
    fn half_power_of_det() {
        let p = pt(Model::Gl2);
        let v = parse_expression("det^(1/2)", &p).unwrap();
        let want = DualElement::exp(&p, Rat::zero(), rat(1, 2));
        assert_eq!(v, Value::Dual(want));
        let sq = parse_expression("det^(1/2)*det^(1/2) - det", &p).unwrap();
        assert!(sq.is_zero(1e-12));
    }

    #[test]
    fn fractional_power_of_ladder_entry_rejected() {
        let e = parse_expression("b^(1/2)", &pt(Model::Gl2)).unwrap_err();
        assert_eq!(e, Error::NonGroupLikePower("b^1/2".into()));
        let e = parse_expression("(a+b)^(-1)", &pt(Model::Gl2)).unwrap_err();
        assert!(matches!(e, Error::NonGroupLikePower(_)), "{e}");
    }

    #[test]
    fn syntax_errors_have_positions() {
        assert_eq!(parse_expression("a * * b", &pt(Model::Gl2)).unwrap_err(), Error::Syntax {
            pos: 4,
            msg: "unexpected `*`".into()
        });
        assert!(matches!(parse_expression("(a + b", &pt(Model::Gl2)), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_expression("a $ b", &pt(Model::Gl2)), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("foo", &pt(Model::Gl2)), Err(Error::UnknownIdentifier(_))));
        assert!(matches!(parse_expression("a*Jp", &pt(Model::Gl2)), Err(Error::Syntax { .. })));
    }

    #[test]
    fn numbers() {
        let p = pt(Model::Gl2);
        assert_eq!(parse_expression("1.5+0.5i", &p).unwrap(), Value::Scalar(C64::new(1.5, 0.5)));
        assert_eq!(parse_expression("3/4 - 2i", &p).unwrap(), Value::Scalar(C64::new(0.75, -2.0)));
        let two = parse_expression("2^(1/2)*2^(1/2) - 2", &p).unwrap();
        assert!(two.is_zero(1e-14), "{two}");
        assert_eq!(parse_expression("-1e-3", &p).unwrap(), Value::Scalar(C64::new(-1e-3, 0.0)));
    }

    #[test]
    fn quea_and_gl11_expressions() {
        let p = pt(Model::Gl2);
        let v = parse_expression("J0*Jp - Jp*J0 - Jp", &p).unwrap();
        assert!(v.is_zero(1e-12), "{v}");
        let g = pt(Model::Gl11);
        assert!(parse_expression("beta*beta", &g).unwrap().is_zero(1e-12));
        assert!(parse_expression("a*det^(-1)*det - a", &g).unwrap().is_zero(1e-12));
    }
}
