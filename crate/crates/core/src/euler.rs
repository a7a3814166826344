//! Euler characteristics of very affine varieties
//! `{g = 0 (g ∈ V), f ≠ 0 (f ∈ N)} ⊂ (C^×)^d`.

use crate::exact::{smith_normal_form, IntMatrix, QPoly, Rational};
use crate::idealtools::IdealCache;
use crate::laurent::{inv_mod, mul_mod, pow_mod, rat_mod, LaurentPoly};
use crate::polyhedra::lattice::{lattice_index, rank, sub, IVec};
use crate::polyhedra::{mixed_volumes, refine_by_point_sets, Cone, HalfOpenCone, Polytope};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusSystem {
    pub dim: usize,
    pub vanishing: Vec<LaurentPoly>,
    pub nonvanishing: Vec<LaurentPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EulerError {
    #[error("support lattice has dimension {found}, expected at most {expected}")]
    LatticeTooLarge { expected: usize, found: usize },
    #[error("point-count oracle inconclusive for a stratum in dimension {0}")]
    OracleInconclusive(usize),
    #[error("combinatorial Euler characteristic {combinatorial} disagrees with point counts {oracle}")]
    OracleDisagreement { combinatorial: i64, oracle: i64 },
}

/// How a closed stratum's Euler characteristic was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiPath {
    Point,
    TorusFactor,
    Univariate,
    Binomial,
    Khovanskii,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    Off,
    #[default]
    Crosscheck,
    Only,
}

pub const DEFAULT_PRIMES: [u64; 5] = [101, 103, 107, 109, 113];

/// Primes `≡ 1 (mod 840)`, over which all roots of unity of order dividing 840
/// and square roots of small integers exist.
const SPLIT_PRIMES: [u64; 6] = [2521, 3361, 4201, 5881, 7561, 9241];

/// Maximal number of enumerated points `Σ p^(d-1)` per oracle call.
const ORACLE_BUDGET: f64 = 2e7;

/// Per-stratum record for traces and the oracle-agreement statistics.
#[derive(Clone, Debug, Serialize)]
pub struct StratumRecord {
    pub dim: usize,
    pub equations: usize,
    pub path: ChiPath,
    pub chi: i64,
    pub oracle: Option<i64>,
}

/// Shared state for Euler characteristic computations: emptiness cache, memo
/// of closed strata, oracle policy and a log of strata.
pub struct EulerContext {
    pub ideals: IdealCache,
    pub mode: OracleMode,
    pub primes: Vec<u64>,
    memo: Mutex<HashMap<(usize, Vec<LaurentPoly>), (i64, ChiPath, Option<i64>)>>,
    log: Mutex<Vec<StratumRecord>>,
}

impl Default for EulerContext {
    fn default() -> Self {
        Self::new(OracleMode::Off)
    }
}

impl EulerContext {
    pub fn new(mode: OracleMode) -> Self {
        EulerContext {
            ideals: IdealCache::new(),
            mode,
            primes: DEFAULT_PRIMES.to_vec(),
            memo: Mutex::new(HashMap::new()),
            log: Mutex::new(vec![]),
        }
    }

    pub fn strata(&self) -> Vec<StratumRecord> {
        self.log.lock().unwrap().clone()
    }
}

fn difference_vectors(polys: &[&LaurentPoly]) -> Vec<IVec> {
    let mut rows = vec![];
    for p in polys {
        let s = p.support();
        for e in &s[1..] {
            rows.push(sub(e, &s[0]));
        }
    }
    rows
}

/// Unimodular change of torus coordinates after which every polynomial depends
/// only on the first `dim` coordinates (up to a monomial factor), followed by
/// dropping the others.
pub fn split_torus_factor(sys: &TorusSystem, dim: usize) -> Result<TorusSystem, EulerError> {
    let all: Vec<&LaurentPoly> = sys.vanishing.iter().chain(&sys.nonvanishing).collect();
    let (m, r) = compression(&all, sys.dim);
    if r > dim {
        return Err(EulerError::LatticeTooLarge { expected: dim, found: r });
    }
    let map = |p: &LaurentPoly| compress(p, &m, dim);
    Ok(TorusSystem {
        dim,
        vanishing: sys.vanishing.iter().map(map).collect(),
        nonvanishing: sys.nonvanishing.iter().map(map).collect(),
    })
}

/// Returns the exponent transformation (rows) and the rank of the difference lattice.
fn compression(polys: &[&LaurentPoly], n: usize) -> (Vec<IVec>, usize) {
    let rows = difference_vectors(polys);
    if rows.is_empty() {
        return ((0..n).map(|i| crate::polyhedra::lattice::unit(n, i)).collect(), 0);
    }
    let s = smith_normal_form(&IntMatrix::from_rows_i64(&rows));
    let r = s.rank();
    let t = s.right.transpose();
    (t.to_i64_rows(), r)
}

fn compress(p: &LaurentPoly, m: &[IVec], dim: usize) -> LaurentPoly {
    let q = p.transform_exponents(m);
    let first = q.support()[0].clone();
    let q = q.shift(&first.iter().map(|x| -x).collect::<Vec<_>>());
    let mut out = q.truncate_vars(dim.min(m.len()));
    if dim > m.len() {
        out = LaurentPoly::from_terms(dim, out.terms().map(|(e, c)| {
            let mut e = e.clone();
            e.resize(dim, 0);
            (e, c.clone())
        }));
    }
    out.monomial_normalize().0
}

/// Euler characteristic of `{vanishing = 0, nonvanishing ≠ 0}` by
/// inclusion–exclusion over closed strata.
pub fn euler_characteristic(sys: &TorusSystem, ctx: &EulerContext) -> Result<i64, EulerError> {
    let d = sys.dim;
    let mut vanishing: Vec<LaurentPoly> = vec![];
    if sys.nonvanishing.iter().any(|p| p.is_zero()) {
        return Ok(0);
    }
    for p in sys.vanishing.iter().filter(|p| !p.is_zero()) {
        if p.is_monomial() {
            return Ok(0);
        }
        let q = p.monomial_normalize().0;
        if !vanishing.contains(&q) {
            vanishing.push(q);
        }
    }
    let mut nonvanishing: Vec<LaurentPoly> = vec![];
    for p in &sys.nonvanishing {
        if p.is_monomial() {
            continue;
        }
        let q = p.monomial_normalize().0;
        if vanishing.contains(&q) {
            return Ok(0);
        }
        if !nonvanishing.contains(&q) {
            nonvanishing.push(q);
        }
    }
    let mut total = 0i64;
    let mut chosen: Vec<LaurentPoly> = vanishing.clone();
    ie(&mut chosen, &nonvanishing, 0, 1, d, ctx, &mut total)?;
    Ok(total)
}

fn ie(
    chosen: &mut Vec<LaurentPoly>,
    rest: &[LaurentPoly],
    start: usize,
    sign: i64,
    d: usize,
    ctx: &EulerContext,
    total: &mut i64,
) -> Result<(), EulerError> {
    if !chosen.is_empty() && !ctx.ideals.torus_zero_exists(chosen, d) {
        return Ok(());
    }
    *total += sign * closed_chi(chosen, d, ctx)?;
    for i in start..rest.len() {
        chosen.push(rest[i].clone());
        ie(chosen, rest, i + 1, -sign, d, ctx, total)?;
        chosen.pop();
    }
    Ok(())
}

/// χ of the closed (nonempty) subvariety `V(polys) ⊂ (C^×)^d`.
fn closed_chi(polys: &[LaurentPoly], d: usize, ctx: &EulerContext) -> Result<i64, EulerError> {
    let mut key: Vec<LaurentPoly> = polys.to_vec();
    key.sort();
    if let Some(&(v, _, _)) = ctx.memo.lock().unwrap().get(&(d, key.clone())) {
        return Ok(v);
    }
    let (v, path) = closed_chi_uncached(&key, d, ctx)?;
    let oracle = match (ctx.mode, path) {
        (OracleMode::Off, _) | (_, ChiPath::Oracle | ChiPath::Point | ChiPath::TorusFactor) => None,
        _ => {
            let sys = TorusSystem { dim: d, vanishing: key.clone(), nonvanishing: vec![] };
            // a fit over few primes can be consistent by coincidence when the
            // count is not polynomial; a mismatch is confirmed over split primes
            match pointcount_interpolation_oracle(&sys, &ctx.primes) {
                Ok(o) if o == v => Some(o),
                first => match (first, pointcount_interpolation_oracle(&sys, &SPLIT_PRIMES)) {
                    (_, Ok(o)) => Some(o),
                    (Ok(o), Err(_)) => Some(o),
                    (Err(_), Err(_)) => None,
                },
            }
        }
    };
    if let Some(o) = oracle {
        if o != v {
            return Err(EulerError::OracleDisagreement { combinatorial: v, oracle: o });
        }
    }
    ctx.log.lock().unwrap().push(StratumRecord { dim: d, equations: key.len(), path, chi: v, oracle });
    ctx.memo.lock().unwrap().insert((d, key), (v, path, oracle));
    Ok(v)
}

fn closed_chi_uncached(polys: &[LaurentPoly], d: usize, ctx: &EulerContext) -> Result<(i64, ChiPath), EulerError> {
    if polys.is_empty() {
        return Ok((if d == 0 { 1 } else { 0 }, if d == 0 { ChiPath::Point } else { ChiPath::TorusFactor }));
    }
    if ctx.mode == OracleMode::Only {
        return oracle_closed(polys, d);
    }
    let refs: Vec<&LaurentPoly> = polys.iter().collect();
    let (m, r) = compression(&refs, d);
    if r < d {
        return Ok((0, ChiPath::TorusFactor));
    }
    let polys: Vec<LaurentPoly> = polys.iter().map(|p| compress(p, &m, d)).collect();
    if d == 0 {
        return Ok((1, ChiPath::Point));
    }
    if d == 1 {
        return Ok((univariate_roots(&polys) as i64, ChiPath::Univariate));
    }
    if polys.iter().all(|p| p.len() == 2) {
        let deltas: Vec<IVec> = polys.iter().map(|p| {
            let s = p.support();
            sub(&s[1], &s[0])
        }).collect();
        if rank(&deltas) < d {
            return Ok((0, ChiPath::Binomial));
        }
        let basis = lattice_basis(&deltas);
        return Ok((lattice_index(&basis).to_i64().expect("index fits"), ChiPath::Binomial));
    }
    if polys.len() <= d && is_nondegenerate(&polys, d, ctx) {
        let polytopes: Vec<Polytope> = polys.iter().map(|p| p.newton_polytope()).collect();
        let sum: BigInt = mixed_volumes(&polytopes, d).into_iter().map(|(_, v)| v).sum();
        let sign = if (d - polys.len()).is_multiple_of(2) { 1 } else { -1 };
        return Ok((sign * sum.to_i64().expect("mixed volume fits"), ChiPath::Khovanskii));
    }
    oracle_closed(&polys, d)
}

fn oracle_closed(polys: &[LaurentPoly], d: usize) -> Result<(i64, ChiPath), EulerError> {
    let sys = TorusSystem { dim: d, vanishing: polys.to_vec(), nonvanishing: vec![] };
    let v = pointcount_interpolation_oracle(&sys, &DEFAULT_PRIMES)
        .or_else(|_| pointcount_interpolation_oracle(&sys, &SPLIT_PRIMES))?;
    Ok((v, ChiPath::Oracle))
}

/// A basis of the lattice spanned by the given vectors (Hermite-style via SNF).
fn lattice_basis(vs: &[IVec]) -> Vec<IVec> {
    let m = IntMatrix::from_rows_i64(vs);
    let s = smith_normal_form(&m);
    // rows of D * right^{-1} span the same lattice as the rows of m
    let r = s.rank();
    let n = m.cols;
    let right_inv = invert_unimodular(&s.right);
    (0..r)
        .map(|i| (0..n).map(|j| (&s.diag[i] * right_inv.get(i, j)).to_i64().unwrap()).collect())
        .collect()
}

fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    let n = m.rows;
    // Gauss–Jordan over Q; the result is integral
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| Rational::from_integer(m.get(i, j).clone())).collect();
            row.extend((0..n).map(|j| Rational::from_integer(BigInt::from((i == j) as i64))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("singular matrix");
        a.swap(c, p);
        let inv = Rational::from_integer(BigInt::from(1)) / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a[i][n + j].to_integer());
        }
    }
    out
}

fn to_upoly(p: &LaurentPoly) -> QPoly {
    let m = p.min_exponents()[0];
    let deg = p.support().iter().map(|e| e[0] - m).max().unwrap_or(0) as usize;
    let mut c = vec![Rational::zero(); deg + 1];
    for (e, x) in p.terms() {
        c[(e[0] - m) as usize] = x.clone();
    }
    QPoly::new(c)
}

/// Number of distinct common roots in `C^×` of univariate Laurent polynomials.
fn univariate_roots(polys: &[LaurentPoly]) -> usize {
    let mut g = QPoly::zero();
    for p in polys {
        g = g.gcd(&to_upoly(p));
    }
    let sq = g.gcd(&g.derivative());
    let (free, _) = g.div_rem(&sq);
    let mut free = free;
    while !free.is_zero() && free.coeff(0).is_zero() {
        free = QPoly::new(free.coeffs()[1..].to_vec());
    }
    free.degree().max(0) as usize
}

/// Non-degeneracy: for every face of the Newton polytopes the initial system
/// has no torus zero at which the Jacobian drops rank.
pub fn is_nondegenerate(polys: &[LaurentPoly], d: usize, ctx: &EulerContext) -> bool {
    let sets: Vec<Vec<IVec>> = polys.iter().map(|p| p.support()).collect();
    let whole = HalfOpenCone::relatively_open(Cone::whole_space(d));
    for cell in refine_by_point_sets(&whole, &sets) {
        let inits: Vec<LaurentPoly> = cell
            .argmin
            .iter()
            .zip(polys)
            .map(|(am, p)| {
                let s = p.support();
                LaurentPoly::from_terms(d, am.iter().map(|&i| (s[i].clone(), p.coeff(&s[i]))))
            })
            .collect();
        if inits.iter().any(|p| p.is_monomial()) {
            continue;
        }
        if !ctx.ideals.rank_drop_locus_empty(&inits, d) {
            return false;
        }
    }
    true
}

// ---------- finite field point counts ----------

type Fp = Vec<u64>; // ascending coefficients mod p

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p).unwrap();
    while r.len() > db {
        let c = mul_mod(*r.last().unwrap(), inv, p);
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, bc, p)) % p;
        }
        r = fp_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn fp_gcd(a: Fp, b: Fp, p: u64) -> Fp {
    let (mut a, mut b) = (fp_trim(a), fp_trim(b));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_mulmod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    fp_rem(&fp_trim(out), m, p)
}

/// Number of distinct roots in `F_p^×` of `g` (nonzero, with `g(0)` arbitrary).
fn fp_count_roots(g: &Fp, p: u64) -> usize {
    let g = fp_trim(g.clone());
    if g.len() <= 1 {
        return 0;
    }
    // x^(p-1) mod g
    let mut result: Fp = vec![1];
    let mut base: Fp = fp_rem(&vec![0, 1], &g, p);
    let mut e = p - 1;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_mulmod(&result, &base, &g, p);
        }
        base = fp_mulmod(&base, &base, &g, p);
        e >>= 1;
    }
    // gcd(g, x^(p-1) - 1)
    let mut h = result;
    if h.is_empty() {
        h = vec![0];
    }
    h[0] = (h[0] + p - 1) % p;
    let h = fp_trim(h);
    let c = fp_gcd(g, h, p);
    c.len().saturating_sub(1)
}

struct ModPoly {
    terms: Vec<(IVec, u64)>,
}

fn reduce_mod(p: &LaurentPoly, modulus: u64) -> Option<ModPoly> {
    let mut terms = vec![];
    for (e, c) in p.terms() {
        let c = rat_mod(c, modulus)?;
        if c != 0 {
            terms.push((e.clone(), c));
        }
    }
    Some(ModPoly { terms })
}

/// Univariate polynomial in the last variable after fixing the others.
fn specialize(mp: &ModPoly, x: &[u64], p: u64) -> Fp {
    let d = x.len();
    let mut minlast = i64::MAX;
    for (e, _) in &mp.terms {
        minlast = minlast.min(e[d]);
    }
    let mut out: Fp = vec![];
    for (e, c) in &mp.terms {
        let mut t = *c;
        for i in 0..d {
            let k = e[i];
            let v = pow_mod(x[i], k.rem_euclid((p - 1) as i64) as u64, p);
            t = mul_mod(t, v, p);
        }
        let k = (e[d] - minlast) as usize;
        if out.len() <= k {
            out.resize(k + 1, 0);
        }
        out[k] = (out[k] + t) % p;
    }
    fp_trim(out)
}

fn count_points(sys: &TorusSystem, p: u64) -> Option<u64> {
    let d = sys.dim;
    let van: Vec<ModPoly> = sys.vanishing.iter().map(|f| reduce_mod(f, p)).collect::<Option<_>>()?;
    let non: Vec<ModPoly> = sys.nonvanishing.iter().map(|f| reduce_mod(f, p)).collect::<Option<_>>()?;
    if d == 0 {
        let ok = van.iter().all(|f| f.terms.is_empty()) && non.iter().all(|f| !f.terms.is_empty());
        return Some(ok as u64);
    }
    let mut total = 0u64;
    let mut x = vec![1u64; d - 1];
    loop {
        let mut g: Fp = vec![];
        for f in &van {
            g = fp_gcd(g, specialize(f, &x, p), p);
            if g.len() == 1 {
                break;
            }
        }
        let all_roots = if van.is_empty() || g.is_empty() { (p - 1) as usize } else { fp_count_roots(&g, p) };
        if all_roots > 0 && !non.is_empty() {
            let mut prod: Fp = vec![1];
            for f in &non {
                let s = specialize(f, &x, p);
                let mut out = vec![0u64; prod.len() + s.len().max(1) - 1];
                for (i, &a) in prod.iter().enumerate() {
                    for (j, &b) in s.iter().enumerate() {
                        out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
                    }
                }
                prod = fp_trim(out);
            }
            let bad = if prod.is_empty() {
                all_roots
            } else if van.is_empty() || g.is_empty() {
                fp_count_roots(&prod, p)
            } else {
                fp_count_roots(&fp_gcd(g.clone(), prod, p), p)
            };
            total += (all_roots - bad) as u64;
        } else {
            total += all_roots as u64;
        }
        // next point of (F_p^×)^(d-1)
        let mut i = 0;
        loop {
            if i == d - 1 {
                return Some(total);
            }
            x[i] += 1;
            if x[i] < p {
                break;
            }
            x[i] = 1;
            i += 1;
        }
    }
}

/// Counts points over `(F_p^×)^d` for each prime, fits a polynomial in `q` of
/// degree at most `d` and evaluates it at `q = 1`. Inconclusive unless there
/// are at least `d + 2` primes and the enumeration fits the budget.
pub fn pointcount_interpolation_oracle(sys: &TorusSystem, primes: &[u64]) -> Result<i64, EulerError> {
    let d = sys.dim;
    let cost: f64 = primes.iter().map(|&p| (p as f64).powi(d.saturating_sub(1) as i32)).sum();
    if primes.len() < d + 2 || cost > ORACLE_BUDGET {
        return Err(EulerError::OracleInconclusive(d));
    }
    let mut pts: Vec<(Rational, Rational)> = vec![];
    for &p in primes {
        if let Some(c) = count_points(sys, p) {
            pts.push((Rational::from_integer(BigInt::from(p)), Rational::from_integer(BigInt::from(c))));
        }
    }
    if pts.len() < d + 2 {
        return Err(EulerError::OracleInconclusive(d));
    }
    // Lagrange interpolation through the first d+1 points, checked on the rest
    let fit = &pts[..d + 1];
    let eval = |x: &Rational| -> Rational {
        let mut acc = Rational::zero();
        for (i, (xi, yi)) in fit.iter().enumerate() {
            let mut term = yi.clone();
            for (j, (xj, _)) in fit.iter().enumerate() {
                if i != j {
                    term = term * (x - xj) / (xi - xj);
                }
            }
            acc += term;
        }
        acc
    };
    for (x, y) in &pts[d + 1..] {
        if eval(x) != *y {
            return Err(EulerError::OracleInconclusive(d));
        }
    }
    let v = eval(&Rational::from_integer(BigInt::from(1)));
    if !v.is_integer() {
        return Err(EulerError::OracleInconclusive(d));
    }
    Ok(v.to_integer().to_i64().expect("Euler characteristic fits"))
}
