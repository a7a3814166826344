//! Buchberger's algorithm over Q (graded reverse lexicographic order), used to
//! decide whether systems of Laurent polynomials have zeros in the torus.

use crate::exact::Rational;
use crate::laurent::LaurentPoly;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

type Exp = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    exp: Exp,
    deg: u32,
    coef: Rational,
}

/// Polynomial with terms sorted decreasingly in grevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<Term>,
}

fn grevlex(a: &Term, b: &Term) -> Ordering {
    a.deg.cmp(&b.deg).then_with(|| {
        for i in (0..a.exp.len()).rev() {
            if a.exp[i] != b.exp[i] {
                return b.exp[i].cmp(&a.exp[i]);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl Poly {
    fn from_terms(mut terms: Vec<Term>) -> Poly {
        terms.sort_by(|a, b| grevlex(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.exp == t.exp => l.coef += t.coef,
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| l.coef.is_zero()) {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    /// Clears negative exponents by a monomial factor.
    pub fn from_laurent(f: &LaurentPoly, nvars: usize) -> Poly {
        let m = f.min_exponents();
        let terms = f
            .terms()
            .map(|(e, c)| {
                let mut exp: Exp = e.iter().zip(&m).map(|(x, y)| (x - y) as u32).collect();
                exp.resize(nvars, 0);
                let deg = exp.iter().sum();
                Term { exp, deg, coef: c.clone() }
            })
            .collect();
        Poly::from_terms(terms).monic()
    }

    /// Conversion of a polynomial with nonnegative exponents.
    pub fn from_polynomial(f: &LaurentPoly, nvars: usize) -> Poly {
        let terms = f
            .terms()
            .map(|(e, c)| {
                let mut exp: Exp = e.iter().map(|&x| u32::try_from(x).expect("negative exponent")).collect();
                exp.resize(nvars, 0);
                let deg = exp.iter().sum();
                Term { exp, deg, coef: c.clone() }
            })
            .collect();
        Poly::from_terms(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].deg == 0
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Term {
        &self.terms[0]
    }

    fn monic(mut self) -> Poly {
        if let Some(l) = self.terms.first() {
            if !l.coef.is_one() {
                let inv = Rational::one() / &l.coef;
                for t in self.terms.iter_mut() {
                    t.coef *= &inv;
                }
            }
        }
        self
    }

    // self - c * x^e * g
    fn sub_scaled(&self, c: &Rational, e: &Exp, g: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|t| {
            let exp: Exp = t.exp.iter().zip(e).map(|(a, b)| a + b).collect();
            let deg = t.deg + e.iter().sum::<u32>();
            Term { exp, deg, coef: -(&t.coef * c) }
        });
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match grevlex(x, y) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let mut t = a.next().unwrap();
                        t.coef += b.next().unwrap().coef;
                        if !t.coef.is_zero() {
                            out.push(t);
                        }
                    }
                },
            }
        }
        Poly { terms: out }
    }

    /// Full reduction modulo `basis`.
    fn reduce(&self, basis: &[Poly]) -> Poly {
        let mut p = self.clone();
        let mut rem: Vec<Term> = vec![];
        while let Some(t) = p.terms.first().cloned() {
            match basis.iter().find(|g| divides(&g.lead().exp, &t.exp)) {
                Some(g) => {
                    let e: Exp = t.exp.iter().zip(&g.lead().exp).map(|(a, b)| a - b).collect();
                    let c = &t.coef / &g.lead().coef;
                    p = p.sub_scaled(&c, &e, g);
                }
                None => {
                    rem.push(t);
                    p.terms.remove(0);
                }
            }
        }
        Poly { terms: rem }
    }

    fn spoly(&self, g: &Poly) -> Poly {
        let l = lcm(&self.lead().exp, &g.lead().exp);
        let ea: Exp = l.iter().zip(&self.lead().exp).map(|(a, b)| a - b).collect();
        let eb: Exp = l.iter().zip(&g.lead().exp).map(|(a, b)| a - b).collect();
        let zero = Poly { terms: vec![] };
        let a = zero.sub_scaled(&(-Rational::one() / &self.lead().coef), &ea, self);
        a.sub_scaled(&(Rational::one() / &g.lead().coef), &eb, g)
    }
}

/// Reduced Gröbner basis (monic, grevlex); `[1]` for the unit ideal.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = vec![];
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return vec![Poly::from_terms(vec![g.terms[0].clone()]).monic()];
        }
        basis.push(g.clone().monic());
    }
    let mut pairs: Vec<(usize, usize)> = vec![];
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();
    while !pairs.is_empty() {
        // normal selection: smallest lcm degree
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, j))| lcm(&basis[*i].lead().exp, &basis[*j].lead().exp).iter().sum::<u32>())
            .unwrap();
        let (i, j) = pairs.swap_remove(k);
        done.insert((i, j));
        let li = &basis[i].lead().exp;
        let lj = &basis[j].lead().exp;
        // product criterion
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(li, lj);
        // chain criterion
        let chain = (0..basis.len()).any(|m| {
            m != i
                && m != j
                && divides(&basis[m].lead().exp, &l)
                && done.contains(&(i.min(m), i.max(m)))
                && done.contains(&(j.min(m), j.max(m)))
        });
        if chain {
            continue;
        }
        let s = basis[i].spoly(&basis[j]).reduce(&basis);
        if s.is_zero() {
            continue;
        }
        let s = s.monic();
        if s.is_constant() {
            return vec![s];
        }
        let new = basis.len();
        basis.push(s);
        for m in 0..new {
            pairs.push((m, new));
        }
    }
    // minimalize and interreduce
    let mut minimal: Vec<Poly> = vec![];
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            o != idx && divides(&h.lead().exp, &g.lead().exp) && (h.lead().exp != g.lead().exp || o < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = vec![];
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, p)| p.clone()).collect();
        let head = Poly { terms: vec![minimal[k].lead().clone()] };
        let tail = Poly { terms: minimal[k].terms[1..].to_vec() }.reduce(&others);
        let mut terms = head.terms;
        terms.extend(tail.terms);
        reduced.push(Poly::from_terms(terms).monic());
    }
    reduced.sort_by(|a, b| grevlex(b.lead(), a.lead()));
    reduced
}

/// Whether the Laurent system has a common zero in `(C^×)^n`.
pub fn torus_zero_exists(polys: &[LaurentPoly], n: usize) -> bool {
    if polys.iter().any(|p| p.is_monomial()) {
        return false;
    }
    if polys.is_empty() {
        return true;
    }
    let mut gens: Vec<Poly> = polys.iter().map(|p| Poly::from_laurent(p, n + 1)).collect();
    let mut sat = vec![1u32; n + 1];
    let mut t = Term { exp: sat.clone(), deg: (n + 1) as u32, coef: Rational::one() };
    sat.iter_mut().for_each(|x| *x = 0);
    let one = Term { exp: sat, deg: 0, coef: -Rational::one() };
    t.deg = (n + 1) as u32;
    gens.push(Poly::from_terms(vec![t, one]));
    let gb = groebner_basis(&gens);
    !(gb.len() == 1 && gb[0].is_constant())
}

/// Toric Jacobian `(X_j ∂g_i/∂X_j)`.
pub fn toric_jacobian(g: &[LaurentPoly], n: usize) -> Vec<Vec<LaurentPoly>> {
    g.iter()
        .map(|p| {
            (0..n)
                .map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    p.derivative(j).shift(&e)
                })
                .collect()
        })
        .collect()
}

/// The system `g = 0` together with all maximal minors of the Jacobian.
pub fn rank_drop_system(g: &[LaurentPoly], n: usize) -> Vec<LaurentPoly> {
    let mut sys: Vec<LaurentPoly> = g.to_vec();
    if g.len() > n {
        return sys;
    }
    let jac = toric_jacobian(g, n);
    let k = g.len();
    for cols in crate::lie::subsets(n, k) {
        let rows: Vec<Vec<LaurentPoly>> = jac.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let m = crate::exact::PolyMatrix::from_rows(n, rows);
        let d = crate::exact::determinant(&m);
        if !d.is_zero() {
            sys.push(d);
        }
    }
    sys
}

/// Whether `{g = 0, rank Jacobian < |g|}` has no zero in the torus.
pub fn rank_drop_locus_empty(g: &[LaurentPoly], n: usize) -> bool {
    !torus_zero_exists(&rank_drop_system(g, n), n)
}

/// Memoized torus-emptiness decisions keyed by the normalized system.
#[derive(Default)]
pub struct IdealCache {
    zeros: Mutex<HashMap<Vec<LaurentPoly>, bool>>,
}

impl IdealCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(polys: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut k: Vec<LaurentPoly> = polys.iter().map(|p| p.monomial_normalize().0).collect();
        k.sort();
        k.dedup();
        k
    }

    pub fn torus_zero_exists(&self, polys: &[LaurentPoly], n: usize) -> bool {
        let key = Self::key(polys);
        if let Some(&v) = self.zeros.lock().unwrap().get(&key) {
            return v;
        }
        let v = torus_zero_exists(&key, n);
        self.zeros.lock().unwrap().insert(key, v);
        v
    }

    pub fn rank_drop_locus_empty(&self, g: &[LaurentPoly], n: usize) -> bool {
        !self.torus_zero_exists(&rank_drop_system(g, n), n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn lp(n: usize, t: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(n, t.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))))
    }

    fn gb(n: usize, polys: &[LaurentPoly]) -> Vec<Poly> {
        groebner_basis(&polys.iter().map(|p| Poly::from_polynomial(p, n)).collect::<Vec<_>>())
    }

    #[test]
    fn small_bases() {
        let x = lp(2, &[(&[1, 0], 1)]);
        let y = lp(2, &[(&[0, 1], 1)]);
        assert_eq!(gb(2, &[x.clone(), y.clone()]).len(), 2);
        let x2y = lp(2, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let b = gb(2, &[x2y, y.clone()]);
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|p| p.len() == 1));
        let one = gb(1, &[lp(1, &[(&[1], 1), (&[0], -1)]), lp(1, &[(&[1], 1), (&[0], -2)])]);
        assert!(one.len() == 1 && one[0].is_constant());
    }

    #[test]
    fn torus_zeros() {
        let xy = lp(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(torus_zero_exists(std::slice::from_ref(&xy), 2));
        let a = lp(1, &[(&[1], 1), (&[0], -1)]);
        let b = lp(1, &[(&[1], 1), (&[0], -2)]);
        assert!(!torus_zero_exists(&[a, b], 1));
        let xmy = lp(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert!(!torus_zero_exists(&[xy.clone(), xmy.clone()], 2));
        assert!(rank_drop_locus_empty(std::slice::from_ref(&xy), 2));
        let sq = &xmy * &xmy;
        assert!(!rank_drop_locus_empty(&[sq], 2));
        let x2y = lp(2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        assert!(rank_drop_locus_empty(&[xy, x2y], 2));
    }
}
