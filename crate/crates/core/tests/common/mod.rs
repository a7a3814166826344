//! Randomized invariant suites shared by the per-module tests and the
//! acceptance run. Each returns the number of checked samples or a description
//! of the first counterexample.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reprzeta::exact::{determinant, pfaffian, rat, PolyMatrix, Rational};
use reprzeta::laurent::LaurentPoly;
use reprzeta::polyhedra::{refine_by_point_sets, triangulate_halfopen, Cone, HalfOpenCone, IVec};

pub const DUALITY_SAMPLES: usize = 200;
pub const TRIANGULATION_SAMPLES: usize = 60;
pub const PFAFFIAN_SAMPLES: usize = 200;
pub const INITIAL_FORM_SAMPLES: usize = 500;
pub const COVERAGE_POINTS: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(r: &mut impl Rng, n: usize, lo: i64, hi: i64) -> IVec {
    (0..n).map(|_| r.gen_range(lo..=hi)).collect()
}

/// Product of `steps` random elementary row operations with multipliers in `[-k, k]`.
pub fn random_unimodular(r: &mut impl Rng, n: usize, steps: usize, k: i64) -> Vec<IVec> {
    let mut m: Vec<IVec> = (0..n).map(|i| reprzeta::polyhedra::lattice::unit(n, i)).collect();
    for _ in 0..steps {
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        if i != j {
            let k = r.gen_range(-k..=k);
            let row = m[j].clone();
            m[i].iter_mut().zip(&row).for_each(|(x, y)| *x += k * y);
        }
    }
    m
}

pub fn random_points(r: &mut impl Rng, n: usize, count: usize, bound: i64) -> Vec<IVec> {
    (0..count).map(|_| random_vec(r, n, -bound, bound)).collect()
}

/// A cone generated by a few random nonzero vectors.
pub fn random_cone(r: &mut impl Rng, n: usize) -> Cone {
    let k = r.gen_range(1..=n + 2);
    let gens: Vec<IVec> = (0..k)
        .map(|_| loop {
            let v = random_vec(r, n, -3, 3);
            if v.iter().any(|&x| x != 0) {
                break v;
            }
        })
        .collect();
    Cone::from_generators(n, &gens, &[])
}

pub fn random_laurent(r: &mut impl Rng, nvars: usize, terms: usize, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        nvars,
        (0..terms).map(|_| (random_vec(r, nvars, lo, hi), Rational::from_integer(r.gen_range(-4i64..=4).into()))),
    )
}

fn same_cone(a: &Cone, b: &Cone) -> bool {
    a.contains_cone(b) && b.contains_cone(a)
}

/// `dual(dual(C)) = C`.
pub fn duality_involution(samples: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for _ in 0..samples {
        let n = r.gen_range(1..=4);
        let c = random_cone(&mut r, n);
        let dd = c.dual().dual();
        if !same_cone(&c, &dd) {
            return Err(format!("dual of dual differs for cone with rays {:?}", c.rays()));
        }
    }
    Ok(samples)
}

fn boxed_points(n: usize, b: i64) -> Vec<IVec> {
    let mut pts = vec![vec![]];
    for _ in 0..n {
        pts = pts.into_iter().flat_map(|p: IVec| (0..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    pts
}

/// The cells of `triangulate_halfopen` partition the input: every lattice point
/// of a box `[0, B]^n` lies in the input iff it lies in exactly one cell.
pub fn triangulation_lattice_points(samples: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for _ in 0..samples {
        let n = r.gen_range(2..=3);
        let b = r.gen_range(2..=6);
        let shift = random_vec(&mut r, n, -1, 1);
        let c = loop {
            let c = random_cone(&mut r, n);
            if c.is_pointed() {
                break c;
            }
        };
        let strict: Vec<IVec> = c.facets().iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
        let h = HalfOpenCone::new(c, strict);
        let cells = triangulate_halfopen(&h);
        for p in boxed_points(n, b) {
            let p: IVec = p.iter().zip(&shift).map(|(x, s)| x - s * b / 2).collect();
            let inside = h.contains(&p) as usize;
            let hits = cells.iter().filter(|t| t.contains(&p)).count();
            if inside != hits {
                return Err(format!("point {p:?} lies in {hits} cells, input membership {inside}; rays {:?}", h.closure().rays()));
            }
        }
    }
    Ok(samples)
}

fn random_antisymmetric(r: &mut impl Rng, size: usize, nvars: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(size, size, nvars);
    for i in 0..size {
        for j in i + 1..size {
            let k = r.gen_range(0..=2);
            let f = random_laurent(r, nvars, k, 0, 2);
            m.set(i, j, f.clone());
            m.set(j, i, -&f);
        }
    }
    m
}

/// `pf(A)^2 = det(A)` for random antisymmetric polynomial matrices.
pub fn pfaffian_squared(samples: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for _ in 0..samples {
        let size = 2 * r.gen_range(1..=3);
        let m = random_antisymmetric(&mut r, size, 3);
        let pf = pfaffian(&m).map_err(|e| e.to_string())?;
        if &pf * &pf != determinant(&m) {
            return Err(format!("pf^2 != det for a {size}x{size} matrix"));
        }
    }
    Ok(samples)
}

/// `in_ω(in_ω f) = in_ω f` and `in_0 f = f`.
pub fn initial_form_idempotence(samples: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for _ in 0..samples {
        let nv = r.gen_range(1..=4);
        let k = r.gen_range(1..=6);
        let f = random_laurent(&mut r, nv, k, -3, 3);
        let w: Vec<Rational> = (0..nv).map(|_| rat(r.gen_range(-5..=5), r.gen_range(1..=3))).collect();
        let i1 = f.initial_form(&w);
        if i1.initial_form(&w) != i1 {
            return Err(format!("initial form of {f} at {w:?} is not idempotent"));
        }
        let zero = vec![Rational::from_integer(0.into()); nv];
        if f.initial_form(&zero) != f {
            return Err(format!("initial form of {f} at 0 differs from {f}"));
        }
    }
    Ok(samples)
}

/// Refines the whole space by random point sets; random integer points must
/// land in exactly one cell.
pub fn partition_coverage(points: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    let mut checked = 0;
    for round in 0..5 {
        let n = 2 + round % 3;
        let sets: Vec<Vec<IVec>> = (0..r.gen_range(1..=3))
            .map(|_| (0..r.gen_range(1..=4)).map(|_| random_vec(&mut r, n, 0, 3)).collect())
            .collect();
        let whole = HalfOpenCone::relatively_open(Cone::whole_space(n));
        let cells = refine_by_point_sets(&whole, &sets);
        for _ in 0..points / 5 {
            let p = random_vec(&mut r, n, -20, 20);
            let hits = cells.iter().filter(|c| c.cell.contains(&p)).count();
            if hits != 1 {
                return Err(format!("point {p:?} lies in {hits} cells"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
