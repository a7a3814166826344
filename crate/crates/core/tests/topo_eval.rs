mod common;

use rand::Rng;
use reprzeta::exact::{rat, rat_int, RationalFunction};
use reprzeta::laurent::LaurentPoly;
use reprzeta::polyhedra::lattice::{add, dot, IVec};
use reprzeta::polyhedra::Cone;
use reprzeta::topo_eval::{cone_red, integrate_cone, m_membership, red, MElement, MinFactor};

fn x_minus_one(nv: usize, k: usize) -> LaurentPoly {
    let mut e = vec![0; nv];
    e[0] = 1;
    let f = &LaurentPoly::monomial(e, rat_int(1)) - &LaurentPoly::one(nv);
    f.pow(k as u32)
}

fn random_factors(r: &mut impl Rng, ny: usize) -> Vec<(i64, IVec, u32)> {
    (0..r.gen_range(1..=3))
        .map(|_| loop {
            let b = common::random_vec(r, ny, 0, 3);
            let a = r.gen_range(-2..=3);
            if b.iter().any(|&x| x != 0) {
                break (a, b, r.gen_range(1..=2));
            }
        })
        .collect()
}

/// `(X-1)^K P / prod` lies in M whenever `K` is the total multiplicity.
fn element(r: &mut impl Rng, ny: usize, factors: &[(i64, IVec, u32)]) -> MElement {
    let k: u32 = factors.iter().map(|f| f.2).sum();
    let terms = r.gen_range(1..=4);
    let p = common::random_laurent(r, ny + 1, terms, -2, 2);
    MElement::new(&x_minus_one(ny + 1, k as usize) * &p, factors.to_vec())
}

#[test]
fn red_is_linear() {
    let mut r = common::rng(31);
    for _ in 0..40 {
        let ny = r.gen_range(1..=2);
        let factors = random_factors(&mut r, ny);
        let (w1, w2) = (element(&mut r, ny, &factors), element(&mut r, ny, &factors));
        let (c1, c2) = (rat(r.gen_range(-5..=5), r.gen_range(1..=3)), rat(r.gen_range(-5..=5), 1));
        let sum = MElement::new(&w1.numerator.scale(&c1) + &w2.numerator.scale(&c2), factors.clone());
        assert!(m_membership(&sum));
        let lhs = red(&sum).unwrap();
        let rhs = &(&RationalFunction::constant(c1) * &red(&w1).unwrap()) + &(&RationalFunction::constant(c2) * &red(&w2).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn red_of_a_polynomial_is_its_value_at_one() {
    let mut r = common::rng(32);
    for _ in 0..100 {
        let nv = r.gen_range(1..=4);
        let terms = r.gen_range(1..=5);
        let p = common::random_laurent(&mut r, nv, terms, -3, 3);
        let value = p.eval(&vec![rat_int(1); nv]);
        assert_eq!(red(&MElement::new(p, vec![])).unwrap(), RationalFunction::constant(value));
    }
}

/// `(X-1)^k / (1 - X^a Y^b)^k ↦ 1 / (b s - a)^k`.
#[test]
fn red_of_a_single_factor() {
    for a in -3..=3 {
        for b in 1..=3 {
            for k in 1..=3u32 {
                let w = MElement::new(x_minus_one(2, k as usize), vec![(a, vec![b], k)]);
                let mut expected = RationalFunction::one();
                for _ in 0..k {
                    expected = &expected * &RationalFunction::inverse_linear(b, -a);
                }
                assert_eq!(red(&w).unwrap(), expected, "a={a} b={b} k={k}");
            }
        }
    }
}

#[test]
fn elements_outside_m_are_rejected() {
    let w = MElement::new(LaurentPoly::one(2), vec![(1, vec![1], 1)]);
    assert!(!m_membership(&w));
    assert!(red(&w).is_err());
}

fn linear_forms(rays: &[IVec], sa: &[i64], sb: &[i64]) -> Vec<(i64, i64)> {
    rays.iter().map(|v| (dot(sa, v), dot(sb, v))).collect()
}

/// The ray formula is additive under stellar subdivision of a simplicial cone.
#[test]
fn ray_formula_is_subdivision_invariant() {
    let mut r = common::rng(33);
    let mut checked = 0;
    while checked < 100 {
        let n = r.gen_range(1..=4);
        let rays: Vec<IVec> = (0..n).map(|_| common::random_vec(&mut r, n, -3, 3)).collect();
        if reprzeta::polyhedra::lattice::rank(&rays) < n {
            continue;
        }
        let sa: IVec = common::random_vec(&mut r, n, -4, 4);
        let sb: IVec = common::random_vec(&mut r, n, -4, 4);
        let center = rays.iter().fold(vec![0; n], |acc, v| add(&acc, v));
        let mut all = rays.clone();
        all.push(center.clone());
        if linear_forms(&all, &sa, &sb).iter().any(|f| f.0 == 0) {
            continue;
        }
        let whole = cone_red(&rays, &linear_forms(&rays, &sa, &sb)).unwrap();
        let mut parts = RationalFunction::zero();
        for i in 0..n {
            let mut sub = rays.clone();
            sub[i] = center.clone();
            if reprzeta::polyhedra::lattice::rank(&sub) < n {
                continue;
            }
            parts = &parts + &cone_red(&sub, &linear_forms(&sub, &sa, &sb)).unwrap();
        }
        assert_eq!(whole, parts, "{rays:?}");
        checked += 1;
    }
}

/// Cutting the cone by a hyperplane adds up: the common wall is lower-dimensional.
#[test]
fn integration_is_additive_under_cuts() {
    let mut r = common::rng(34);
    let mut checked = 0;
    while checked < 60 {
        let n = r.gen_range(1..=3);
        let h = common::random_cone(&mut r, n);
        if !h.is_pointed() || h.dim() < n {
            continue;
        }
        let factors: Vec<MinFactor> = (0..r.gen_range(1..=2))
            .map(|_| MinFactor {
                a: r.gen_range(1..=3),
                b: r.gen_range(-2..=2),
                points: (0..r.gen_range(1..=3)).map(|_| common::random_vec(&mut r, n, 0, 3)).collect(),
            })
            .collect();
        let Ok(whole) = integrate_cone(&h, &factors) else { continue };
        let cut = common::random_vec(&mut r, n, -2, 2);
        if cut.iter().all(|&x| x == 0) {
            continue;
        }
        let pieces: Vec<Cone> = [cut.clone(), cut.iter().map(|x| -x).collect()]
            .into_iter()
            .map(|side| h.restrict(&[], &[side]))
            .filter(|p| p.dim() == n)
            .collect();
        // a new ray on the wall may have a vanishing form
        let Ok(sums) = pieces.iter().map(|p| integrate_cone(p, &factors)).collect::<Result<Vec<_>, _>>() else { continue };
        let parts = sums.iter().fold(RationalFunction::zero(), |acc, s| &acc + &s.to_rational_function());
        assert_eq!(whole.to_rational_function(), parts);
        checked += 1;
    }
}

#[test]
fn orthant_with_one_factor() {
    // (X-1)^n sum_{z >= 0} X^{-<1,z>} tends to 1
    for n in 1..=4 {
        let o = Cone::orthant(n);
        let s = integrate_cone(&o, &[]).unwrap().to_rational_function();
        assert_eq!(s, RationalFunction::one());
        let f = MinFactor { a: 1, b: 0, points: (0..n).map(|i| reprzeta::polyhedra::lattice::unit(n, i)).collect() };
        assert!(integrate_cone(&o, &[f]).is_ok());
    }
}
