mod common;

use proptest::prelude::*;
use rand::Rng;
use reprzeta::exact::{rank_over_function_field, rat_int, smith_normal_form, BigInt, IntMatrix, PolyMatrix, QPoly, Rational, RationalFunction};
use reprzeta::format;
use reprzeta::laurent::LaurentPoly;
use num_traits::Zero;

#[test]
fn pfaffian_squared_is_determinant() {
    assert_eq!(common::pfaffian_squared(common::PFAFFIAN_SAMPLES, 11), Ok(common::PFAFFIAN_SAMPLES));
}

#[test]
fn smith_form_reconstructs_and_preserves_determinant() {
    let mut r = common::rng(12);
    for _ in 0..200 {
        let rows = r.gen_range(1..=4);
        let cols = if r.gen_bool(0.5) { rows } else { r.gen_range(1..=4) };
        let m = IntMatrix::from_rows_i64(&(0..rows).map(|_| common::random_vec(&mut r, cols, -6, 6)).collect::<Vec<_>>());
        let snf = smith_normal_form(&m);
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in snf.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        assert_eq!(snf.left.mul(&m).mul(&snf.right), d);
        for w in snf.diag.windows(2) {
            assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
        if rows == cols {
            let prod: BigInt = (0..rows).map(|i| snf.diag.get(i).cloned().unwrap_or_default()).product();
            assert_eq!(m.determinant().magnitude(), prod.magnitude());
        }
    }
}

#[test]
fn symbolic_rank_matches_random_evaluations() {
    let mut r = common::rng(13);
    for _ in 0..40 {
        let size = r.gen_range(2..=4);
        let nvars = 3;
        // low-rank structure: rows mixed from a few random rows
        let base: Vec<Vec<LaurentPoly>> = (0..r.gen_range(1..=size))
            .map(|_| (0..size).map(|_| common::random_laurent(&mut r, nvars, 2, 0, 1)).collect())
            .collect();
        let rows: Vec<Vec<LaurentPoly>> = (0..size)
            .map(|_| {
                let mut row = vec![LaurentPoly::zero(nvars); size];
                for b in &base {
                    let c = common::random_laurent(&mut r, nvars, 1, 0, 1);
                    for (x, y) in row.iter_mut().zip(b) {
                        *x = &*x + &(&c * y);
                    }
                }
                row
            })
            .collect();
        let m = PolyMatrix::from_rows(nvars, rows);
        let symbolic = rank_over_function_field(&m);
        let mut best = 0;
        for _ in 0..20 {
            let pt: Vec<Rational> = (0..nvars).map(|_| rat_int(r.gen_range(-50..=50))).collect();
            best = best.max(rational_rank(m.eval(&pt)));
        }
        assert_eq!(best, symbolic);
    }
}

fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let cols = m.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != rat_int(0)) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != rat_int(0) {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot).take(cols) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn poly(c: &[i64]) -> QPoly {
    QPoly::from_ints(c)
}

proptest! {
    #[test]
    fn canonical_form_is_unique(
        a in prop::collection::vec(-5i64..=5, 1..4),
        b in prop::collection::vec(-5i64..=5, 1..4),
        c in prop::collection::vec(-5i64..=5, 1..4),
        d in prop::collection::vec(-5i64..=5, 1..4),
    ) {
        let (pa, pb, pc, pd) = (poly(&a), poly(&b), poly(&c), poly(&d));
        prop_assume!(!pb.is_zero() && !pd.is_zero());
        let x = RationalFunction::new(pa.clone(), pb.clone());
        let y = RationalFunction::new(pc.clone(), pd.clone());
        prop_assert_eq!(x == y, &pa * &pd == &pb * &pc);
    }

    #[test]
    fn plain_text_round_trips(
        a in prop::collection::vec(-9i64..=9, 1..4),
        roots in prop::collection::vec((1i64..=4, -6i64..=6), 0..4),
    ) {
        let mut den = poly(&[1]);
        for (p, q) in &roots {
            den = &den * &poly(&[-q, *p]);
        }
        let x = RationalFunction::new(poly(&a), den);
        prop_assert_eq!(format::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn field_operations_are_consistent(
        a in prop::collection::vec(-5i64..=5, 1..3),
        b in prop::collection::vec(-5i64..=5, 1..3),
        c in prop::collection::vec(-5i64..=5, 1..3),
    ) {
        let pb = poly(&b);
        prop_assume!(!pb.is_zero());
        let x = RationalFunction::new(poly(&a), pb);
        let y = RationalFunction::new(poly(&c), poly(&[1, 1]));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) / &y, x);
        }
    }
}
