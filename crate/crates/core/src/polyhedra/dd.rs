//! Double-description conversion from constraints to generators.

use super::lattice::{combine, dot128, is_zero, primitive, unit, IVec};

struct Ray {
    v: IVec,
    tight: Vec<u64>,
}

fn bit_set(bits: &mut Vec<u64>, i: usize) {
    let w = i / 64;
    if bits.len() <= w {
        bits.resize(w + 1, 0);
    }
    bits[w] |= 1 << (i % 64);
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().enumerate().all(|(i, x)| x & !b.get(i).copied().unwrap_or(0) == 0)
}

/// Generators of `{x : eqs·x = 0, ineqs·x >= 0}` as (extreme rays, lineality basis).
pub fn generators(dim: usize, eqs: &[IVec], ineqs: &[IVec]) -> (Vec<IVec>, Vec<IVec>) {
    let mut lin: Vec<IVec> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rays: Vec<Ray> = vec![];
    let mut k = 0usize;
    let mut constraints: Vec<(IVec, bool)> = eqs.iter().map(|e| (e.clone(), true)).collect();
    constraints.extend(ineqs.iter().map(|a| (a.clone(), false)));
    for (a, is_eq) in constraints {
        if is_zero(&a) {
            continue;
        }
        if let Some(p) = lin.iter().position(|l| dot128(&a, l) != 0) {
            let mut l0 = lin.swap_remove(p);
            let mut al0 = dot128(&a, &l0);
            if al0 < 0 {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                let al = dot128(&a, l);
                if al != 0 {
                    *l = combine(al0, l, al, &l0);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot128(&a, &r.v);
                if ar != 0 {
                    r.v = combine(al0, &r.v, ar, &l0);
                }
                bit_set(&mut r.tight, k);
            }
            if !is_eq {
                let mut tight = vec![0u64; (k / 64) + 1];
                // l0 is tight on every earlier inequality
                for i in 0..k {
                    bit_set(&mut tight, i);
                }
                rays.push(Ray { v: primitive(&l0), tight });
            }
            k += 1;
            continue;
        }
        let passes: &[i128] = if is_eq { &[1, -1] } else { &[1] };
        for &sign in passes {
            rays = cut(rays, &a, sign, k);
            k += 1;
        }
    }
    (rays.into_iter().map(|r| r.v).collect(), lin)
}

fn cut(rays: Vec<Ray>, a: &[i64], sign: i128, k: usize) -> Vec<Ray> {
    let vals: Vec<i128> = rays.iter().map(|r| sign * dot128(a, &r.v)).collect();
    let mut out: Vec<Ray> = vec![];
    let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
    let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
    for &p in &plus {
        for &m in &minus {
            let z = and(&rays[p].tight, &rays[m].tight);
            let adjacent = (0..rays.len()).all(|r| r == p || r == m || !subset(&z, &rays[r].tight));
            if adjacent {
                let v = combine(vals[p], &rays[m].v, vals[m], &rays[p].v);
                let mut tight = z;
                bit_set(&mut tight, k);
                out.push(Ray { v, tight });
            }
        }
    }
    for (i, mut r) in rays.into_iter().enumerate() {
        if vals[i] > 0 {
            out.push(r);
        } else if vals[i] == 0 {
            bit_set(&mut r.tight, k);
            out.push(r);
        }
    }
    out
}
