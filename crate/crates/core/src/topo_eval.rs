//! The reduction map `red`, M-membership, and the ray formula for
//! lattice-point generating functions of rational cones.

use crate::exact::{QPoly, Rational, RationalFunction};
use crate::laurent::LaurentPoly;
use crate::polyhedra::argmin_violation;
use crate::polyhedra::lattice::{dot, lattice_index, neg, IVec};
use crate::polyhedra::{triangulate, Cone};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("not an element of M: the expansion in X - 1 has a pole")]
    NotInM,
    #[error("denominator factor 1 - X^a Y^b specializes to zero")]
    DegenerateFactor,
    #[error("ray {0:?} has an identically vanishing linear form")]
    VanishingRay(IVec),
}

/// `numerator / prod (1 - X^a Y^b)^e` with `numerator` a Laurent polynomial in
/// `X, Y_1, …, Y_l` (variable 0 is `X`).
#[derive(Clone, Debug)]
pub struct MElement {
    pub numerator: LaurentPoly,
    pub factors: Vec<(i64, IVec, u32)>,
}

impl MElement {
    pub fn new(numerator: LaurentPoly, factors: Vec<(i64, IVec, u32)>) -> Self {
        MElement { numerator, factors }
    }

    pub fn nvars_y(&self) -> usize {
        self.numerator.nvars() - 1
    }
}

type Series = Vec<RationalFunction>;

/// `binom(a*s + b, j)` as a polynomial in `s`.
fn binom_linear(a: &Rational, b: &Rational, j: usize) -> QPoly {
    let mut acc = QPoly::one();
    for i in 0..j {
        let f = QPoly::linear(a.clone(), b - Rational::from_integer(BigInt::from(i)));
        acc = &acc * &f;
    }
    let mut fact = BigInt::one();
    for i in 1..=j {
        fact *= i;
    }
    acc.scale(&Rational::new(BigInt::one(), fact))
}

/// Exponent of `X` after `Y_λ ↦ X^{-(a_λ s + b_λ)}`, as `(coefficient of s, constant)`.
fn specialized_exponent(xexp: i64, yexp: &[i64], subs: &[(Rational, Rational)]) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::from_integer(BigInt::from(xexp));
    for (k, (sa, sb)) in yexp.iter().zip(subs) {
        let k = Rational::from_integer(BigInt::from(*k));
        a -= &k * sa;
        b -= &k * sb;
    }
    (a, b)
}

fn series_mul(x: &Series, y: &Series, order: usize) -> Series {
    let mut out = vec![RationalFunction::zero(); order + 1];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(order + 1 - i) {
            if !b.is_zero() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
    }
    out
}

fn series_inv(x: &Series, order: usize) -> Series {
    let inv0 = RationalFunction::one().checked_div(&x[0]).expect("unit constant term");
    let mut out = vec![RationalFunction::zero(); order + 1];
    out[0] = inv0.clone();
    for k in 1..=order {
        let mut acc = RationalFunction::zero();
        for i in 1..=k.min(x.len() - 1) {
            acc = &acc + &(&x[i] * &out[k - i]);
        }
        out[k] = -&(&acc * &inv0);
    }
    out
}

/// Coefficients of `z^0..z^order` of `W(1+z, (1+z)^{-s_1}, …)·z^K` where `K`
/// is the total denominator multiplicity; returns the series and `K`.
fn shifted_series(w: &MElement, subs: &[(Rational, Rational)]) -> Result<(Series, usize), EvalError> {
    let k: usize = w.factors.iter().map(|f| f.2 as usize).sum();
    let mut num = vec![RationalFunction::zero(); k + 1];
    for (e, c) in w.numerator.terms() {
        let (a, b) = specialized_exponent(e[0], &e[1..], subs);
        for (j, slot) in num.iter_mut().enumerate() {
            let t = RationalFunction::from_polys(&binom_linear(&a, &b, j).scale(c));
            *slot = &*slot + &t;
        }
    }
    let mut acc = num;
    for (a, b, mult) in &w.factors {
        let (ea, eb) = specialized_exponent(*a, b, subs);
        if ea.is_zero() && eb.is_zero() {
            return Err(EvalError::DegenerateFactor);
        }
        // 1 - (1+z)^E = -z * U(z)
        let u: Series = (0..=k).map(|j| RationalFunction::from_polys(&binom_linear(&ea, &eb, j + 1).scale(&-Rational::one()))).collect();
        let inv = series_inv(&u, k);
        for _ in 0..*mult {
            acc = series_mul(&acc, &inv, k);
        }
    }
    Ok((acc, k))
}

fn default_subs(w: &MElement) -> Vec<(Rational, Rational)> {
    vec![(Rational::one(), Rational::zero()); w.nvars_y()]
}

/// Whether the expansion of `W(X, X^{-s}, …)` in `X - 1` has no pole.
pub fn m_membership(w: &MElement) -> bool {
    match shifted_series(w, &default_subs(w)) {
        Ok((ser, k)) => ser[..k].iter().all(|c| c.is_zero()),
        Err(_) => false,
    }
}

/// Constant term of the expansion of `W(X, X^{-s}, …)` in `X - 1`.
pub fn red(w: &MElement) -> Result<RationalFunction, EvalError> {
    red_with(w, &default_subs(w))
}

/// As [`red`], with `Y_λ ↦ X^{-(a_λ s + b_λ)}`.
pub fn red_with(w: &MElement, subs: &[(Rational, Rational)]) -> Result<RationalFunction, EvalError> {
    let (ser, k) = shifted_series(w, subs)?;
    if ser[..k].iter().any(|c| !c.is_zero()) {
        return Err(EvalError::NotInM);
    }
    Ok(ser[k].clone())
}

/// Sums `index / prod(a*s + b)` keyed by the sorted multiset of linear forms `(a, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RaySums(pub BTreeMap<Vec<(i64, i64)>, BigInt>);

impl RaySums {
    pub fn add(&mut self, mut forms: Vec<(i64, i64)>, weight: BigInt) {
        forms.sort();
        let e = self.0.entry(forms).or_insert_with(BigInt::zero);
        *e += weight;
    }

    pub fn merge(&mut self, other: &RaySums, scale: &BigInt) {
        for (k, v) in &other.0 {
            self.add(k.clone(), v * scale);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        // common denominator over primitive forms a*s + b with a > 0 (or the constant 1)
        let mut terms: Vec<(BigInt, BTreeMap<(i64, i64), u32>)> = vec![];
        let mut common: BTreeMap<(i64, i64), u32> = BTreeMap::new();
        for (forms, c) in &self.0 {
            if c.is_zero() {
                continue;
            }
            let mut scale = BigInt::one();
            let mut mult: BTreeMap<(i64, i64), u32> = BTreeMap::new();
            for &(a, b) in forms {
                let (key, unit) = primitive_form(a, b);
                scale *= unit;
                if key != (0, 1) {
                    *mult.entry(key).or_default() += 1;
                }
            }
            for (k, m) in &mult {
                let e = common.entry(*k).or_default();
                *e = (*e).max(*m);
            }
            terms.push((scale, mult));
        }
        let lcm_scale = terms.iter().fold(BigInt::one(), |acc, (u, _)| acc.lcm(u));
        let mut num: Vec<BigInt> = vec![];
        for ((scale, mult), c) in terms.iter().zip(self.0.values().filter(|c| !c.is_zero())) {
            let mut p = vec![c * (&lcm_scale / scale)];
            for (k, m) in &common {
                for _ in mult.get(k).copied().unwrap_or(0)..*m {
                    p = mul_linear(&p, *k);
                }
            }
            if num.len() < p.len() {
                num.resize(p.len(), BigInt::zero());
            }
            for (i, x) in p.into_iter().enumerate() {
                num[i] += x;
            }
        }
        let mut den = vec![lcm_scale];
        for (k, m) in common {
            for _ in 0..m {
                match div_linear(&num, k) {
                    Some(q) => num = q,
                    None => den = mul_linear(&den, k),
                }
            }
        }
        RationalFunction::from_coprime_ints(num, den)
    }
}

/// `(a, b) = unit * key` with `key` primitive and leading coefficient positive.
fn primitive_form(a: i64, b: i64) -> ((i64, i64), BigInt) {
    let g = num_integer::Integer::gcd(&a, &b);
    let g = if a < 0 || (a == 0 && b < 0) { -g } else { g };
    ((a / g, b / g), BigInt::from(g))
}

fn mul_linear(p: &[BigInt], (a, b): (i64, i64)) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c * b;
        out[i + 1] += c * a;
    }
    out
}

/// Exact quotient by `a*s + b` over the integers, if any.
fn div_linear(p: &[BigInt], (a, b): (i64, i64)) -> Option<Vec<BigInt>> {
    if p.iter().all(|c| c.is_zero()) {
        return Some(vec![]);
    }
    let mut rem: Vec<BigInt> = p.to_vec();
    while rem.last().is_some_and(|c| c.is_zero()) {
        rem.pop();
    }
    if rem.len() < 2 {
        return None;
    }
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let mut q = vec![BigInt::zero(); rem.len() - 1];
    for i in (1..rem.len()).rev() {
        let (qi, r) = num_integer::Integer::div_rem(&rem[i], &a);
        if !r.is_zero() {
            return None;
        }
        rem[i - 1] -= &qi * &b;
        q[i - 1] = qi;
    }
    rem[0].is_zero().then_some(q)
}

/// `index(σ) / prod_r c_r(s)` for a simplicial cone given by its rays.
pub fn cone_red(rays: &[IVec], forms: &[(i64, i64)]) -> Result<RationalFunction, EvalError> {
    let mut sums = RaySums::default();
    for (r, f) in rays.iter().zip(forms) {
        if *f == (0, 0) {
            return Err(EvalError::VanishingRay(r.clone()));
        }
    }
    sums.add(forms.to_vec(), lattice_index(rays));
    Ok(sums.to_rational_function())
}

/// A factor `min_{ψ∈points} <ψ, z>` raised to `a*s + b`.
#[derive(Clone, Debug)]
pub struct MinFactor {
    pub a: i64,
    pub b: i64,
    pub points: Vec<IVec>,
}

/// Full-dimensional closed subcones of `c` on which each point set has a
/// constant minimizer.
pub fn refine_closed(c: &Cone, sets: &[Vec<IVec>]) -> Vec<(Cone, Vec<usize>)> {
    let target = c.dim();
    let mut out = vec![];
    let mut stack = vec![c.clone()];
    while let Some(cur) = stack.pop() {
        match argmin_violation(&cur, sets) {
            Ok(am) => out.push((cur, am.into_iter().map(|v| v[0]).collect())),
            Err(h) => {
                for side in [neg(&h), h] {
                    let piece = cur.restrict(&[], &[side]);
                    if piece.dim() == target {
                        stack.push(piece);
                    }
                }
            }
        }
    }
    out
}

/// Topological limit of `(X-1)^{dim H} Σ_{z ∈ H ∩ Z^N} X^{-<1,z>} ∏_λ X^{-(a_λ s + b_λ) min_ψ <ψ,z>}`
/// for a pointed rational cone `H`, as ray sums.
pub fn integrate_cone(h: &Cone, factors: &[MinFactor]) -> Result<RaySums, EvalError> {
    let sets: Vec<Vec<IVec>> = factors.iter().map(|f| f.points.clone()).collect();
    let mut sums = RaySums::default();
    let ones = vec![1i64; h.ambient_dim()];
    for (piece, am) in refine_closed(h, &sets) {
        let mut sa = vec![0i64; h.ambient_dim()];
        let mut sb = ones.clone();
        for (f, &i) in factors.iter().zip(&am) {
            for (k, &x) in f.points[i].iter().enumerate() {
                sa[k] += f.a * x;
                sb[k] += f.b * x;
            }
        }
        for simplex in triangulate(&piece) {
            let rays: Vec<IVec> = simplex.iter().map(|&i| piece.rays()[i].clone()).collect();
            let mut forms = Vec::with_capacity(rays.len());
            for r in &rays {
                let f = (dot(&sa, r), dot(&sb, r));
                if f == (0, 0) {
                    return Err(EvalError::VanishingRay(r.clone()));
                }
                forms.push(f);
            }
            sums.add(forms, lattice_index(&rays));
        }
    }
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn lp(t: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t[0].0.len(), t.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(QPoly::from_ints(num), QPoly::from_ints(den))
    }

    #[test]
    fn red_of_simple_element() {
        let w = MElement::new(lp(&[(&[0, 0], 1), (&[0, 1], -1)]), vec![(1, vec![1], 1)]);
        assert!(m_membership(&w));
        assert_eq!(red(&w).unwrap(), rf(&[0, 1], &[-1, 1]));
        let bad = MElement::new(lp(&[(&[0, 0], 1)]), vec![(1, vec![1], 1)]);
        assert!(!m_membership(&bad));
        assert_eq!(red(&bad), Err(EvalError::NotInM));
    }

    #[test]
    fn first_order_factor() {
        // (X-1)/(1-X^2 Y^3) -> 1/(3s-2)
        let w = MElement::new(lp(&[(&[1, 0], 1), (&[0, 0], -1)]), vec![(2, vec![3], 1)]);
        assert_eq!(red(&w).unwrap(), rf(&[1], &[-2, 3]));
    }

    #[test]
    fn ray_formula() {
        assert_eq!(cone_red(&[vec![1, 1], vec![1, -1]], &[(1, 0), (1, 0)]).unwrap(), rf(&[2], &[0, 0, 1]));
        let h = Cone::from_generators(1, &[vec![1]], &[]);
        let f = MinFactor { a: 1, b: -2, points: vec![vec![1]] };
        let s = integrate_cone(&h, &[f]).unwrap();
        assert_eq!(s.to_rational_function(), rf(&[1], &[-1, 1]));
    }
}
