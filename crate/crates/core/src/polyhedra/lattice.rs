//! Small-integer vector helpers and exact ranks/kernels.

use crate::exact::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub type IVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    let s: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).expect("dot product overflow")
}

pub fn dot128(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divides by the gcd of the entries (zero vector unchanged).
pub fn primitive(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |g, &x| crate::exact::gcd_i64(g, x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// `p*a - q*b`, made primitive; computed in 128-bit.
pub fn combine(p: i128, a: &[i64], q: i128, b: &[i64]) -> IVec {
    let w: Vec<i128> = a.iter().zip(b).map(|(&x, &y)| p * x as i128 - q * y as i128).collect();
    let g = w.iter().fold(0i128, |g, &x| gcd128(g, x));
    w.iter()
        .map(|&x| {
            let y = if g > 1 { x / g } else { x };
            i64::try_from(y).expect("coordinate overflow in cone arithmetic")
        })
        .collect()
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> IVec {
    a.iter().map(|x| -x).collect()
}

pub fn unit(n: usize, i: usize) -> IVec {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Rank of a list of integer vectors.
pub fn rank(rows: &[IVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    // fraction-free elimination in i128 with row content removal
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[r][c], m[i][c]);
            let g = gcd128(a, b);
            let (fa, fb) = (a / g, b / g);
            let mut ok = true;
            let mut g2 = 0i128;
            for j in 0..n {
                match (m[i][j].checked_mul(fa), m[r][j].checked_mul(fb)) {
                    (Some(x), Some(y)) => {
                        m[i][j] = x - y;
                        g2 = gcd128(g2, m[i][j]);
                    }
                    _ => ok = false,
                }
            }
            if !ok {
                return rank_big(rows);
            }
            if g2 > 1 {
                for x in m[i].iter_mut() {
                    *x /= g2;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn rank_big(rows: &[IVec]) -> usize {
    smith_normal_form(&IntMatrix::from_rows_i64(rows)).rank()
}

/// Basis of the integer kernel `{x : rows * x = 0}` (a saturated lattice basis).
pub fn kernel(rows: &[IVec], n: usize) -> Vec<IVec> {
    if rows.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let m = IntMatrix::from_rows_i64(rows);
    let s = smith_normal_form(&m);
    let r = s.rank();
    (r..n)
        .map(|j| {
            let col: IVec = (0..n).map(|i| s.right.get(i, j).to_i64().expect("kernel overflow")).collect();
            primitive(&col)
        })
        .collect()
}

/// Index of the lattice spanned by independent `gens` inside its saturation.
pub fn lattice_index(gens: &[IVec]) -> BigInt {
    if gens.is_empty() {
        return BigInt::from(1);
    }
    let s = smith_normal_form(&IntMatrix::from_rows_i64(gens));
    assert_eq!(s.rank(), gens.len(), "generators are not linearly independent");
    s.diag.iter().filter(|d| !d.is_zero()).product()
}

/// Graded-lexicographic comparison (total degree first, then lexicographic).
pub fn glex_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}
