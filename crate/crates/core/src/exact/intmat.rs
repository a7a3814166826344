use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n * n - 1]
        }
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64().expect("entry exceeds i64")).collect())
            .collect()
    }
}

/// Smith normal form `left * m * right = diag(d_1, ..., d_r, 0, ...)` with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for j in 0..m.cols {
            m.entries.swap(a * m.cols + j, b * m.cols + j);
        }
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for i in 0..m.rows {
            m.entries.swap(i * m.cols + a, i * m.cols + b);
        }
    }
}

// row[a] += k * row[b]
fn add_row(m: &mut IntMatrix, a: usize, b: usize, k: &BigInt) {
    for j in 0..m.cols {
        let v = m.get(b, j) * k;
        m.entries[a * m.cols + j] += v;
    }
}

fn add_col(m: &mut IntMatrix, a: usize, b: usize, k: &BigInt) {
    for i in 0..m.rows {
        let v = m.get(i, b) * k;
        m.entries[i * m.cols + a] += v;
    }
}

fn negate_row(m: &mut IntMatrix, a: usize) {
    for j in 0..m.cols {
        let idx = a * m.cols + j;
        m.entries[idx] = -&m.entries[idx];
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let r = m.rows.min(m.cols);
    for t in 0..r {
        // choose the nonzero entry of least absolute value in the remaining block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    let v = a.get(i, j);
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, left, right);
            };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut left, t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);
            let mut clean = true;
            for i in t + 1..a.rows {
                let q = a.get(i, t).div_floor(a.get(t, t));
                if !q.is_zero() {
                    let k = -q;
                    add_row(&mut a, i, t, &k);
                    add_row(&mut left, i, t, &k);
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..a.cols {
                let q = a.get(t, j).div_floor(a.get(t, t));
                if !q.is_zero() {
                    let k = -q;
                    add_col(&mut a, j, t, &k);
                    add_col(&mut right, j, t, &k);
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let p = a.get(t, t).clone();
            let mut bad = None;
            'find: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !a.get(i, j).is_multiple_of(&p) {
                        bad = Some(i);
                        break 'find;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    add_row(&mut a, t, i, &one);
                    add_row(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut left, t);
        }
    }
    finish(a, left, right)
}

fn finish(a: IntMatrix, left: IntMatrix, right: IntMatrix) -> Snf {
    let r = a.rows.min(a.cols);
    let diag = (0..r).map(|i| a.get(i, i).clone()).collect();
    Snf { diag, left, right }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = IntMatrix::from_rows_i64(rows);
        let s = smith_normal_form(&m);
        let prod = s.left.mul(&m).mul(&s.right);
        for i in 0..prod.rows {
            for j in 0..prod.cols {
                if i != j {
                    assert!(prod.get(i, j).is_zero());
                } else {
                    assert_eq!(prod.get(i, j), &s.diag[i]);
                }
            }
        }
        s.diag.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(diag_of(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
        assert_eq!(diag_of(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(diag_of(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(diag_of(&[vec![1, -1, 0]]), vec![1]);
    }

    #[test]
    fn determinant_matches_snf() {
        let m = IntMatrix::from_rows_i64(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let d = m.determinant();
        let s = smith_normal_form(&m);
        let prod: BigInt = s.diag.iter().product();
        assert_eq!(d.abs(), prod.abs());
        assert_eq!(d, BigInt::from(-90));
    }
}
