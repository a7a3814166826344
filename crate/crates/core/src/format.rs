//! Text, LaTeX and JSON renderings of rational functions in `s`, and a parser
//! for the plain text form.

use crate::exact::{format_rational, LinearFactor, QPoly, Rational, RationalFunction};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy)]
enum Style {
    Plain,
    Latex,
}

fn poly_text(c: &[BigInt], style: Style) -> String {
    let mut out = String::new();
    for (i, x) in c.iter().enumerate().rev() {
        if x.is_zero() {
            continue;
        }
        let neg = x.is_negative();
        let a = x.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match (i, style) {
            (0, _) => String::new(),
            (1, _) => "s".to_string(),
            (k, _) => format!("s^{k}"),
        };
        if i == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            match style {
                Style::Plain => out.push_str(&format!("{a}*{mono}")),
                Style::Latex => out.push_str(&format!("{a}{mono}")),
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn linear_text(l: &LinearFactor, style: Style) -> String {
    poly_text(&[l.b.clone(), l.a.clone()], style)
}

fn power(base: String, wrap: bool, e: u32, style: Style) -> String {
    let b = if wrap { format!("({base})") } else { base };
    match (e, style) {
        (1, _) => b,
        (_, Style::Plain) => format!("{b}^{e}"),
        (_, Style::Latex) => format!("{b}^{{{e}}}"),
    }
}

fn linear_order(x: &LinearFactor, y: &LinearFactor) -> Ordering {
    y.a.cmp(&x.a).then_with(|| x.root().cmp(&y.root()))
}

/// Factor strings of a polynomial: leftover, non-trivial linear factors, then the power of `s`.
fn factor_parts(f: &crate::exact::Factored, style: Style) -> Vec<String> {
    let mut parts = vec![];
    if f.leftover.len() > 1 {
        parts.push(power(poly_text(&f.leftover, style), true, 1, style));
    }
    let mut lin: Vec<&(LinearFactor, u32)> = f.linear.iter().filter(|(l, _)| !l.b.is_zero()).collect();
    lin.sort_by(|a, b| linear_order(&a.0, &b.0));
    for (l, m) in lin {
        parts.push(power(linear_text(l, style), true, *m, style));
    }
    if let Some((_, k)) = f.linear.iter().find(|(l, _)| l.b.is_zero()) {
        parts.push(power("s".into(), false, *k, style));
    }
    parts
}

fn split(r: &RationalFunction, style: Style) -> (Rational, Vec<String>, Vec<String>) {
    let nf = r.factor_numerator();
    let df = r.factor_denominator();
    let c = &nf.content / &df.content;
    (c, factor_parts(&nf, style), factor_parts(&df, style))
}

/// E.g. `2*(4*s^2 - 6*s + 1)*s/(2*s - 3)^3`.
pub fn plain(r: &RationalFunction) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let (c, mut num, mut den) = split(r, Style::Plain);
    let p = c.numer().clone();
    let q = c.denom().clone();
    let mut prefix = String::new();
    if p == -BigInt::one() && !num.is_empty() {
        prefix.push('-');
    } else if !p.is_one() || num.is_empty() {
        num.insert(0, p.to_string());
    }
    if !q.is_one() {
        den.insert(0, q.to_string());
    }
    let n = format!("{prefix}{}", num.join("*"));
    match den.len() {
        0 => n,
        1 => format!("{n}/{}", den[0]),
        _ => format!("{n}/({})", den.join("*")),
    }
}

pub fn latex(r: &RationalFunction) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let (c, mut num, mut den) = split(r, Style::Latex);
    for parts in [&mut num, &mut den] {
        if parts.len() == 1 && parts[0].starts_with('(') && parts[0].ends_with(')') {
            parts[0] = parts[0][1..parts[0].len() - 1].to_string();
        }
    }
    let p = c.numer().clone();
    let q = c.denom().clone();
    let sign = if p.is_negative() { "-" } else { "" };
    let pa = p.abs();
    let mut n = num.join(" ");
    if !pa.is_one() || n.is_empty() {
        n = if n.is_empty() { pa.to_string() } else { format!("{pa} {n}") };
    }
    let mut d = den.join(" ");
    if !q.is_one() {
        d = if d.is_empty() { q.to_string() } else { format!("{q} {d}") };
    }
    if d.is_empty() {
        format!("{sign}{n}")
    } else {
        format!("{sign}\\frac{{{n}}}{{{d}}}")
    }
}

fn coeff_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

/// `{"zeta":{"num":[…],"den":[…]},"omega":"p/q","weight":n}` with ascending coefficients.
pub fn json(r: &RationalFunction, omega: &Rational, weight: usize) -> serde_json::Value {
    serde_json::json!({
        "zeta": {
            "num": r.numer().iter().map(coeff_json).collect::<Vec<_>>(),
            "den": r.denom().iter().map(coeff_json).collect::<Vec<_>>(),
        },
        "omega": format_rational(omega),
        "weight": weight,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational function at offset {offset}: {msg}")]
pub struct ParseError {
    pub offset: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, msg: msg.into() })
    }

    fn skip(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    match acc.checked_div(&d) {
                        Some(v) => acc = v,
                        None => return self.err("division by zero"),
                    }
                }
                Some(b'(') | Some(b's') => acc = &acc * &self.factor()?,
                Some(c) if c.is_ascii_digit() => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = match std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse() {
                Ok(e) => e,
                Err(_) => return self.err("expected exponent"),
            };
            let mut acc = RationalFunction::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b's') => {
                self.pos += 1;
                Ok(RationalFunction::s())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(RationalFunction::constant(Rational::from_integer(v)))
            }
            _ => self.err("expected `(`, `s` or an integer"),
        }
    }
}

/// Parses expressions in `s` built from integers, `+ - * / ^` and parentheses;
/// juxtaposition means multiplication and `−` is accepted for `-`.
pub fn parse(text: &str) -> Result<RationalFunction, ParseError> {
    let cleaned = text.replace('−', "-").replace('·', "*");
    let mut p = Parser { src: cleaned.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Coefficient polynomial for tests and tools.
pub fn from_ascending(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(QPoly::from_ints(num), QPoly::from_ints(den))
}
