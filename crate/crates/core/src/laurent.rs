//! Multivariate Laurent polynomials over Q.

use crate::exact::Rational;
use crate::polyhedra::lattice::{glex_cmp, IVec};
use crate::polyhedra::{Cone, Polytope};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent shift `X^twist` applied to a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialTwist {
    pub exponent: IVec,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<IVec, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(exp: IVec, c: Rational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `X_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (IVec, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: IVec, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IVec, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> Vec<IVec> {
        self.terms.keys().cloned().collect()
    }

    pub fn newton_polytope(&self) -> Polytope {
        assert!(!self.is_zero(), "Newton polytope of the zero polynomial");
        Polytope::new(self.support())
    }

    /// `min <α, ω>` over the support.
    pub fn min_pairing(&self, w: &[i64]) -> Option<i64> {
        self.terms.keys().map(|a| crate::polyhedra::lattice::dot(a, w)).min()
    }

    /// Sum of the terms minimizing `<α, ω>`.
    pub fn initial_form(&self, w: &[Rational]) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let vals: Vec<Rational> = self
            .terms
            .keys()
            .map(|a| a.iter().zip(w).map(|(&x, y)| y * Rational::from_integer(BigInt::from(x))).sum())
            .collect();
        let m = vals.iter().min().unwrap().clone();
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().zip(&vals).filter(|(_, v)| **v == m).map(|((e, c), _)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn initial_form_int(&self, w: &[i64]) -> LaurentPoly {
        let Some(m) = self.min_pairing(w) else { return self.clone() };
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| crate::polyhedra::lattice::dot(e, w) == m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether every support point lies in the dual of `c`.
    pub fn is_integer_valued_on_cone(&self, c: &Cone) -> bool {
        self.terms.keys().all(|a| c.is_nonneg(a))
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn shift(&self, e: &[i64]) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.iter().zip(e).map(|(x, y)| x + y).collect(), c.clone())).collect(),
        }
    }

    /// Componentwise minimum of the exponents.
    pub fn min_exponents(&self) -> IVec {
        let mut m = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (x, y) in m.iter_mut().zip(e) {
                *x = (*x).min(*y);
            }
        }
        if self.is_zero() {
            m.iter_mut().for_each(|x| *x = 0);
        }
        m
    }

    /// The graded-lex largest term.
    pub fn leading_term(&self) -> Option<(&IVec, &Rational)> {
        self.terms.iter().max_by(|a, b| glex_cmp(a.0, b.0))
    }

    /// `g = X^twist · f / c` with all minimal exponents zero and graded-lex leading coefficient 1.
    pub fn monomial_normalize(&self) -> (LaurentPoly, MonomialTwist) {
        assert!(!self.is_zero(), "normalizing the zero polynomial");
        let twist: IVec = self.min_exponents().iter().map(|x| -x).collect();
        let g = self.shift(&twist);
        let lc = g.leading_term().unwrap().1.clone();
        (g.scale(&(Rational::one() / lc)), MonomialTwist { exponent: twist })
    }

    /// Clears rational coefficients to coprime integers with positive leading coefficient.
    pub fn primitive_integer(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c * Rational::from_integer(l.clone())).to_integer());
        }
        let mut f = Rational::new(l, g);
        if self.leading_term().unwrap().1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Exact quotient `self / d` in the Laurent ring, if it exists.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.is_monomial() {
            let (e, c) = d.terms.iter().next().unwrap();
            let inv: IVec = e.iter().map(|x| -x).collect();
            return Some(self.shift(&inv).scale(&(Rational::one() / c)));
        }
        let sa = self.min_exponents();
        let sd = d.min_exponents();
        let a = self.shift(&sa.iter().map(|x| -x).collect::<Vec<_>>());
        let b = d.shift(&sd.iter().map(|x| -x).collect::<Vec<_>>());
        // polynomial long division with respect to the lexicographic order
        let (bl_e, bl_c) = b.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = a;
        let mut q = LaurentPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: IVec = re.iter().zip(&bl_e).map(|(x, y)| x - y).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = rc / &bl_c;
            let t = LaurentPoly::monomial(qe, qc);
            rem = &rem - &(&t * &b);
            q = &q + &t;
        }
        let shift: IVec = sa.iter().zip(&sd).map(|(x, y)| x - y).collect();
        Some(q.shift(&shift))
    }

    pub fn derivative(&self, i: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Rational::from_integer(BigInt::from(e[i])));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k >= 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                } else {
                    t /= num_traits::pow(xi.clone(), (-k) as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Value at a point of `(F_p^×)^n`; `None` if a coefficient denominator vanishes mod `p`.
    pub fn eval_mod(&self, x: &[u64], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = rat_mod(c, p)?;
            for (&xi, &k) in x.iter().zip(e) {
                let base = if k >= 0 { xi } else { inv_mod(xi, p)? };
                t = mul_mod(t, pow_mod(base, k.unsigned_abs(), p), p);
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Substitutes exponents `α ↦ M α` (rows of `m` are the new coordinates).
    pub fn transform_exponents(&self, m: &[IVec]) -> LaurentPoly {
        let nv = m.len();
        LaurentPoly {
            nvars: nv,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (m.iter().map(|row| crate::polyhedra::lattice::dot(row, e)).collect(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the first `k` exponent coordinates (the rest must be constant).
    pub fn truncate_vars(&self, k: usize) -> LaurentPoly {
        LaurentPoly { nvars: k, terms: self.terms.iter().map(|(e, c)| (e[..k].to_vec(), c.clone())).collect() }
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().sum::<i64>()).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

pub(crate) fn rat_mod(c: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = ((c.numer() % &pb + &pb) % &pb).to_u64().unwrap();
    let d = ((c.denom() % &pb + &pb) % &pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    Some(mul_mod(n, inv_mod(d, p)?, p))
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        r
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&IVec, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| glex_cmp(b.0, a.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { format!("Y{}", i + 1) } else { format!("Y{}^{}", i + 1, x) })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let cs = crate::exact::format_rational(&a);
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", cs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
