//! Named algebras and the constructor expression language
//! (`NAME`, `abelian:N`, `A + B`, `A[eps]`, parentheses).

use super::{LieError, NilpotentLieAlgebra};
use crate::io::AlgebraFile;
use std::sync::OnceLock;

const PRESETS_JSON: &str = include_str!("../../data/presets.json");

fn presets() -> &'static Vec<AlgebraFile> {
    static P: OnceLock<Vec<AlgebraFile>> = OnceLock::new();
    P.get_or_init(|| serde_json::from_str(PRESETS_JSON).expect("preset catalog is valid JSON"))
}

/// Names accepted by [`preset`], in catalog order (parametrized families are
/// listed per parameter value, e.g. `L_{6,19}(0)`).
pub fn catalog_names() -> Vec<String> {
    presets().iter().filter_map(|p| p.name.clone()).collect()
}

pub fn preset(name: &str) -> Result<NilpotentLieAlgebra, LieError> {
    let name = name.trim();
    if let Some(d) = name.strip_prefix("abelian:") {
        let d: usize = d.trim().parse().map_err(|_| LieError::UnknownPreset(name.to_string()))?;
        return Ok(NilpotentLieAlgebra::abelian(d));
    }
    let canonical = match name {
        "heisenberg" | "H" => "L_{3,2}",
        other => other,
    };
    let f = presets()
        .iter()
        .find(|p| p.name.as_deref() == Some(canonical))
        .ok_or_else(|| LieError::UnknownPreset(name.to_string()))?;
    f.to_algebra().map_err(|e| match e {
        crate::io::InputError::Lie(l) => l,
        other => panic!("corrupt preset {name}: {other}"),
    })
}

/// Parses constructor expressions such as `L_{4,3}[eps]` or `L_{3,2} + abelian:2`.
pub fn parse_expression(expr: &str) -> Result<NilpotentLieAlgebra, LieError> {
    let mut p = Parser { s: expr.as_bytes(), pos: 0, src: expr };
    let l = p.sum()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(LieError::BadExpression(expr.to_string()));
    }
    Ok(l.with_name(expr.trim()))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self) -> LieError {
        LieError::BadExpression(self.src.to_string())
    }

    fn sum(&mut self) -> Result<NilpotentLieAlgebra, LieError> {
        let mut acc = self.term()?;
        loop {
            self.ws();
            if self.pos < self.s.len() && self.s[self.pos] == b'+' {
                self.pos += 1;
                let t = self.term()?;
                acc = acc.direct_sum(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NilpotentLieAlgebra, LieError> {
        self.ws();
        let mut base = if self.pos < self.s.len() && self.s[self.pos] == b'(' {
            self.pos += 1;
            let inner = self.sum()?;
            self.ws();
            if self.pos >= self.s.len() || self.s[self.pos] != b')' {
                return Err(self.err());
            }
            self.pos += 1;
            inner
        } else {
            let start = self.pos;
            let rest = &self.src[start..];
            let mut depth = 0i32;
            let mut end = rest.len();
            for (i, ch) in rest.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' if depth == 0 => {
                        end = i;
                        break;
                    }
                    ')' => depth -= 1,
                    '+' => {
                        end = i;
                        break;
                    }
                    '[' if rest[i..].starts_with("[eps]") || rest[i..].starts_with("[ε]") => {
                        end = i;
                        break;
                    }
                    _ => {}
                }
            }
            let name = rest[..end].trim();
            if name.is_empty() {
                return Err(self.err());
            }
            self.pos = start + end;
            preset(name)?
        };
        loop {
            self.ws();
            let rest = &self.src[self.pos..];
            if let Some(tag) = ["[eps]", "[ε]"].into_iter().find(|t| rest.starts_with(t)) {
                self.pos += tag.len();
                base = base.dual_number_extension();
            } else {
                return Ok(base);
            }
        }
    }
}
