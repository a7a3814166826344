//! Nilpotent Lie algebras over Q, adapted presentations and the polynomial
//! sets built from their commutator matrices.

mod catalog;

pub use catalog::{catalog_names, parse_expression, preset};

use crate::exact::{pfaffian_of, rank_over_function_field, PolyMatrix, Rational};
use crate::laurent::LaurentPoly;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("bracket is not antisymmetric at (e{0}, e{1}) component e{2}")]
    Antisymmetry(usize, usize, usize),
    #[error("Jacobi identity fails for (e{0}, e{1}, e{2})")]
    Jacobi(usize, usize, usize),
    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {0}")]
    NotNilpotent(usize),
    #[error("basis index {0} out of range 1..{1}")]
    IndexOutOfRange(usize, usize),
    #[error("algebra is abelian")]
    Abelian,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("cannot parse algebra expression `{0}`")]
    BadExpression(String),
}

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k` (0-based internally).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentLieAlgebra {
    dim: usize,
    c: Vec<Rational>,
    pub name: Option<String>,
}

impl NilpotentLieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        NilpotentLieAlgebra { dim, c: vec![Rational::zero(); dim * dim * dim], name: Some(format!("abelian:{dim}")) }
    }

    /// Builds an algebra from brackets `(i, j, k, c)` meaning `[e_i, e_j] += c e_k`
    /// (1-based, antisymmetric completion applied).
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, usize, Rational)]) -> Result<Self, LieError> {
        let mut l = Self::abelian(dim);
        l.name = None;
        for (i, j, k, v) in brackets {
            for &x in [i, j, k] {
                if x == 0 || x > dim {
                    return Err(LieError::IndexOutOfRange(x, dim));
                }
            }
            let a = l.idx(i - 1, j - 1, k - 1);
            let b = l.idx(j - 1, i - 1, k - 1);
            l.c[a] += v;
            l.c[b] -= v;
        }
        Ok(l)
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `e_k` in `[e_i, e_j]` (0-based).
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.idx(i, j, k)]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Nonzero brackets `(i, j, k, c)` with `i < j`, 1-based.
    pub fn brackets(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = vec![];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let v = self.coeff(i, j, k);
                    if !v.is_zero() {
                        out.push((i + 1, j + 1, k + 1, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Bracket of two vectors given in coordinates.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if *self.coeff(i, j, k) != -self.coeff(j, i, k) {
                        return Err(LieError::Antisymmetry(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        let mut term: Vec<Vec<Rational>> = (0..n).map(|i| self.basis_vec(i)).collect();
        loop {
            let mut next = vec![];
            for i in 0..n {
                for t in &term {
                    next.push(self.bracket(&self.basis_vec(i), t));
                }
            }
            let next = row_basis(next);
            if next.is_empty() {
                break;
            }
            if next.len() >= term.len() {
                return Err(LieError::NotNilpotent(next.len()));
            }
            term = next;
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
                    let t1 = self.bracket(&self.bracket(&a, &b), &c);
                    let t2 = self.bracket(&self.bracket(&b, &c), &a);
                    let t3 = self.bracket(&self.bracket(&c, &a), &b);
                    if (0..n).any(|m| !(&t1[m] + &t2[m] + &t3[m]).is_zero()) {
                        return Err(LieError::Jacobi(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis of `[g, g]` in reduced row echelon form.
    pub fn derived_basis(&self) -> Vec<Vec<Rational>> {
        let mut v = vec![];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                v.push((0..self.dim).map(|k| self.coeff(i, j, k).clone()).collect());
            }
        }
        row_basis(v)
    }

    pub fn direct_sum(&self, other: &NilpotentLieAlgebra) -> NilpotentLieAlgebra {
        let d1 = self.dim;
        let mut br = self.brackets();
        br.extend(other.brackets().into_iter().map(|(i, j, k, c)| (i + d1, j + d1, k + d1, c)));
        let mut l = NilpotentLieAlgebra::from_brackets(d1 + other.dim, &br).expect("direct sum indices in range");
        l.name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a} + {b}")),
            _ => None,
        };
        l
    }

    /// `g ⊗ Q[ε]/(ε²)` on the basis `e_1..e_h, εe_1..εe_h`.
    pub fn dual_number_extension(&self) -> NilpotentLieAlgebra {
        let h = self.dim;
        let mut br = vec![];
        for (i, j, k, c) in self.brackets() {
            br.push((i, j, k, c.clone()));
            br.push((i, j + h, k + h, c.clone()));
            br.push((i + h, j, k + h, c));
        }
        let mut l = NilpotentLieAlgebra::from_brackets(2 * h, &br).expect("extension indices in range");
        l.name = self.name.as_ref().map(|n| format!("{n}[eps]"));
        l
    }

    /// Adapted basis and commutator matrices `R(Y)`, `S(Y)`.
    pub fn adapted_presentation(&self) -> Result<AdaptedPresentation, LieError> {
        if self.is_abelian() {
            return Err(LieError::Abelian);
        }
        let h = self.dim;
        let derived = self.derived_basis();
        let n = derived.len();
        let pivots: Vec<usize> = derived.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        let mut basis: Vec<Vec<Rational>> = (0..h).filter(|i| !pivots.contains(i)).map(|i| self.basis_vec(i)).collect();
        basis.extend(derived.iter().cloned());
        // coordinates of an element of the derived algebra in the f-basis
        let coords = |v: &[Rational]| -> Vec<Rational> { pivots.iter().map(|&p| v[p].clone()).collect() };
        let lin = |c: &[Rational]| -> LaurentPoly {
            LaurentPoly::from_terms(n, c.iter().enumerate().map(|(k, x)| (crate::polyhedra::lattice::unit(n, k), x.clone())))
        };
        let mut r = PolyMatrix::zeros(h, h, n);
        for i in 0..h {
            for j in i + 1..h {
                let b = self.bracket(&basis[i], &basis[j]);
                let f = lin(&coords(&b));
                r.set(j, i, -&f);
                r.set(i, j, f);
            }
        }
        let mut s = PolyMatrix::zeros(h, n, n);
        for i in 0..h {
            for j in 0..n {
                let b = self.bracket(&basis[i], &derived[j]);
                s.set(i, j, lin(&coords(&b)));
            }
        }
        let rank_r = rank_over_function_field(&r);
        let v = rank_over_function_field(&s);
        Ok(AdaptedPresentation { base_change: basis, derived_dim: n, r, s, u: rank_r / 2, v })
    }
}

/// Rows spanning the same space, in reduced row echelon form.
pub fn row_basis(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

#[derive(Clone, Debug)]
pub struct AdaptedPresentation {
    /// New basis vectors in old coordinates; the last `derived_dim` span `[g, g]`.
    pub base_change: Vec<Vec<Rational>>,
    pub derived_dim: usize,
    pub r: PolyMatrix,
    pub s: PolyMatrix,
    pub u: usize,
    pub v: usize,
}

fn normalize_member(p: &LaurentPoly) -> LaurentPoly {
    p.primitive_integer()
}

impl AdaptedPresentation {
    /// `F_0, …, F_u`: nonzero principal `2i×2i` Pfaffians of `R`, up to scalars.
    pub fn pfaffian_sets(&self) -> Vec<Vec<LaurentPoly>> {
        let h = self.r.rows;
        let n = self.derived_dim;
        let mut memo = HashMap::new();
        let mut sets = vec![vec![LaurentPoly::one(n)]];
        for i in 1..=self.u {
            let mut set = BTreeSet::new();
            for idx in subsets(h, 2 * i) {
                let p = pfaffian_of(&self.r, &idx, &mut memo);
                if !p.is_zero() {
                    set.insert(normalize_member(&p));
                }
            }
            sets.push(set.into_iter().collect());
        }
        sets
    }

    /// `G_0, …, G_v`: nonzero `j×j` minors of `S`, up to scalars.
    pub fn minor_sets(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.derived_dim;
        let mut memo = HashMap::new();
        let mut sets = vec![vec![LaurentPoly::one(n)]];
        for j in 1..=self.v {
            let mut set = BTreeSet::new();
            for rows in subsets(self.s.rows, j) {
                for cols in subsets(self.s.cols, j) {
                    let p = minor(&self.s, &rows, &cols, &mut memo);
                    if !p.is_zero() {
                        set.insert(normalize_member(&p));
                    }
                }
            }
            sets.push(set.into_iter().collect());
        }
        sets
    }
}

fn minor(m: &PolyMatrix, rows: &[usize], cols: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), LaurentPoly>) -> LaurentPoly {
    if rows.is_empty() {
        return LaurentPoly::one(m.nvars);
    }
    let key = (rows.to_vec(), cols.to_vec());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let c0 = cols[0];
    let rest_cols = &cols[1..];
    let mut acc = LaurentPoly::zero(m.nvars);
    for (pos, &r) in rows.iter().enumerate() {
        let a = m.get(r, c0);
        if a.is_zero() {
            continue;
        }
        let rest_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let sub = minor(m, &rest_rows, rest_cols, memo);
        if sub.is_zero() {
            continue;
        }
        let t = a * &sub;
        acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    memo.insert(key, acc.clone());
    acc
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
