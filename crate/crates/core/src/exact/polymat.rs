use crate::laurent::LaurentPoly;
use crate::exact::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Dense matrix of Laurent polynomials (all in the same variables).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    pub entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        PolyMatrix { rows: r, cols: c, nvars, entries: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(rows.len(), cols.len(), self.nvars);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn eval(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect()).collect()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PfaffianError {
    #[error("Pfaffian of an odd-sized matrix")]
    OddSize,
    #[error("Pfaffian of a matrix that is not antisymmetric")]
    NotAntisymmetric,
}

/// Pfaffian of an antisymmetric matrix of even size.
pub fn pfaffian(m: &PolyMatrix) -> Result<LaurentPoly, PfaffianError> {
    if m.rows != m.cols || !m.is_antisymmetric() {
        return Err(PfaffianError::NotAntisymmetric);
    }
    if m.rows % 2 == 1 {
        return Err(PfaffianError::OddSize);
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    let mut memo = HashMap::new();
    Ok(pfaffian_of(m, &idx, &mut memo))
}

/// Pfaffian of the principal submatrix on `idx` (sorted, even length), memoized by index set.
pub fn pfaffian_of(m: &PolyMatrix, idx: &[usize], memo: &mut HashMap<Vec<usize>, LaurentPoly>) -> LaurentPoly {
    if idx.is_empty() {
        return LaurentPoly::one(m.nvars);
    }
    if let Some(p) = memo.get(idx) {
        return p.clone();
    }
    let first = idx[0];
    let mut acc = LaurentPoly::zero(m.nvars);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = m.get(first, j);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().copied().filter(|&k| k != first && k != j).collect();
        let sub = pfaffian_of(m, &rest, memo);
        if sub.is_zero() {
            continue;
        }
        let term = a * &sub;
        acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    memo.insert(idx.to_vec(), acc.clone());
    acc
}

/// Determinant by fraction-free elimination over the polynomial ring.
pub fn determinant(m: &PolyMatrix) -> LaurentPoly {
    assert_eq!(m.rows, m.cols);
    let (rank, det) = bareiss(m);
    if rank < m.rows {
        LaurentPoly::zero(m.nvars)
    } else {
        det
    }
}

/// Returns the rank and the last pivot (the determinant up to sign when full rank,
/// sign-corrected for row and column swaps).
fn bareiss(m: &PolyMatrix) -> (usize, LaurentPoly) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<LaurentPoly>> = (0..rows).map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut prev = LaurentPoly::one(m.nvars);
    let mut sign = 1i64;
    let mut r = 0;
    for k in 0..rows.min(cols) {
        // pivot: the nonzero entry with fewest terms in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].len() < a[bi][bj].len()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != k {
            a.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division must be exact");
            }
            a[i][k] = LaurentPoly::zero(m.nvars);
        }
        prev = a[k][k].clone();
        r = k + 1;
    }
    let det = if sign < 0 { -&prev } else { prev };
    (r, det)
}

fn rank_rational(rows: Vec<Vec<Rational>>) -> usize {
    let mut a = rows;
    let mut r = 0;
    let cols = a.first().map_or(0, |x| x.len());
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

/// Rank over the rational function field in the variables.
///
/// Fraction-free elimination decides the rank; evaluation at random integer
/// points must reproduce it (points are redrawn when they land on the rank-drop locus).
pub fn rank_over_function_field(m: &PolyMatrix) -> usize {
    let (r, _) = bareiss(m);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let pt: Vec<Rational> = (0..m.nvars).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-1000i64..=1000)))).collect();
        let re = rank_rational(m.eval(&pt));
        assert!(re <= r, "evaluation rank exceeds symbolic rank");
        if re == r {
            return r;
        }
    }
    panic!("symbolic rank {r} not confirmed by evaluation");
}
