mod common;

use rand::Rng;
use reprzeta::corpus;
use reprzeta::idealtools::IdealCache;
use reprzeta::laurent::LaurentPoly;
use reprzeta::lie::parse_expression;
use reprzeta::polyhedra::{HalfOpenCone, IVec};
use reprzeta::repdatum::{balance, candidate_inits, construct_datum, monomial_multiple_split, reduce_split, regularity, simplify, weight, ReprDatum};

const P16: u64 = 65521;

fn datum(expr: &str) -> ReprDatum {
    construct_datum(&parse_expression(expr).unwrap()).unwrap()
}

/// Nonnegative combination of the closure's rays and lineality.
fn sample(r: &mut impl Rng, c: &HalfOpenCone, lo: i64) -> IVec {
    let cl = c.closure();
    let mut w = vec![0i64; cl.ambient_dim()];
    for ray in cl.rays() {
        let t = r.gen_range(lo..=6);
        w.iter_mut().zip(ray).for_each(|(x, y)| *x += t * y);
    }
    for l in cl.lineality() {
        let t = r.gen_range(-6..=6);
        w.iter_mut().zip(l).for_each(|(x, y)| *x += t * y);
    }
    w
}

fn patterns(d: &ReprDatum, x: &[u64], p: u64) -> Vec<bool> {
    d.sets.iter().map(|set| set.iter().all(|f| f.eval_mod(x, p) == Some(0))).collect()
}

fn torus_points(r: &mut impl Rng, n: usize) -> Vec<Vec<u64>> {
    let mut pts: Vec<Vec<u64>> = (0..20).map(|_| (0..n).map(|_| r.gen_range(1..P16)).collect()).collect();
    if n <= 4 {
        let mut all = vec![vec![]];
        for _ in 0..n {
            all = all.into_iter().flat_map(|v: Vec<u64>| (1..7u64).map(move |a| [v.clone(), vec![a]].concat())).collect();
        }
        pts.extend(all.into_iter().map(|mut v| {
            v.push(0);
            v
        }));
    }
    pts
}

fn same_patterns(a: &ReprDatum, b: &ReprDatum, pts: &[Vec<u64>]) -> bool {
    pts.iter().all(|x| match x.last() {
        Some(0) if x.len() == a.n + 1 => patterns(a, &x[..a.n], 7) == patterns(b, &x[..a.n], 7),
        _ => patterns(a, x, P16) == patterns(b, x, P16),
    })
}

/// Walks the worklist of `expr`, checking every balancing, simplification and split.
fn walk(expr: &str, seed: u64, budget: usize) -> (usize, usize, usize) {
    let mut r = common::rng(seed);
    let d = datum(expr);
    let cache = IdealCache::new();
    let mut items: Vec<ReprDatum> = d.region.iter().map(|c| d.with_region(c.clone())).collect();
    let (mut balanced, mut simplified, mut split) = (0, 0, 0);
    while let Some(item) = items.pop() {
        if balanced >= budget {
            break;
        }
        let pieces = balance(&item);
        // the balanced cells partition the item's region
        for _ in 0..50 {
            let w = sample(&mut r, &item.region[0], 0);
            let hits = pieces.iter().filter(|(_, p)| p.cell.contains(&w)).count();
            assert_eq!(hits, item.region[0].contains(&w) as usize, "{expr}: {w:?}");
        }
        for (sub, piece) in pieces {
            balanced += 1;
            for _ in 0..100 {
                let w = sample(&mut r, &piece.cell, 1);
                assert!(piece.cell.contains(&w));
                for (set, inits) in sub.sets.iter().zip(&piece.inits) {
                    for (f, g) in set.iter().zip(inits) {
                        assert_eq!(&f.initial_form_int(&w), g, "{expr}: in_w {f} at {w:?}");
                    }
                }
            }
            if piece.cell.dim() + 1 + piece.face_dim < sub.n {
                continue;
            }
            if let Some(out) = simplify(&sub, &piece) {
                simplified += 1;
                let pts = torus_points(&mut r, sub.n);
                for o in &out {
                    assert!(same_patterns(&sub, o, &pts), "{expr}: simplify changed a zero locus");
                }
                check_partition(&mut r, &sub, &out);
                items.extend(out);
                continue;
            }
            let cands = candidate_inits(&piece);
            let reg = regularity(&cands, piece.face_dim, &cache);
            if let Some(w) = reg.witness {
                let out = match monomial_multiple_split(&sub, &piece) {
                    Some(out) => out,
                    None => reduce_split(&sub, &piece, &cands, &w, 16).unwrap(),
                };
                split += 1;
                check_partition(&mut r, &sub, &out);
                items.extend(out);
            }
        }
    }
    (balanced, simplified, split)
}

/// The regions of `out` are disjoint and cover the region of `d`.
fn check_partition(r: &mut impl Rng, d: &ReprDatum, out: &[ReprDatum]) {
    for _ in 0..300 {
        let w = if r.gen_bool(0.7) { sample(r, &d.region[0], 0) } else { common::random_vec(r, d.n, -6, 6) };
        let inside = d.region.iter().filter(|c| c.contains(&w)).count();
        let hits = out.iter().flat_map(|o| &o.region).filter(|c| c.contains(&w)).count();
        assert_eq!(inside, hits, "{w:?}");
    }
}

#[test]
fn constructed_data_are_integer_valued() {
    for e in corpus::builtin() {
        let l = e.algebra().unwrap();
        if l.is_abelian() {
            continue;
        }
        let d = construct_datum(&l).unwrap();
        assert!(d.is_integer_valued(), "{}", e.name);
        assert_eq!(d.sets[0], vec![LaurentPoly::one(d.n)]);
        assert_eq!(d.region.len(), (1 << d.n) - 1);
    }
}

#[test]
fn weights_match_tables() {
    for e in corpus::builtin() {
        let l = e.algebra().unwrap();
        if l.is_abelian() {
            continue;
        }
        if let Some(w) = e.expected_weight {
            assert_eq!(weight(&construct_datum(&l).unwrap()), w, "{}", e.name);
        }
    }
}

#[test]
fn worklist_steps_preserve_regions_and_loci() {
    let (b, s, x) = walk("L_{5,7}[eps]", 41, 100_000);
    assert!(b > 0 && s > 0 && x > 0, "{b} {s} {x}");
    walk("L_{6,25}[eps]", 42, 600);
    walk("L_{6,14}", 43, 600);
}

#[test]
fn weight_zero_pieces_are_regular() {
    let cache = IdealCache::new();
    for e in corpus::builtin().into_iter().filter(|e| e.expected_weight == Some(0)) {
        let l = e.algebra().unwrap();
        if l.is_abelian() {
            continue;
        }
        let d = construct_datum(&l).unwrap();
        let mut items: Vec<ReprDatum> = d.region.iter().map(|c| d.with_region(c.clone())).collect();
        while let Some(item) = items.pop() {
            for (sub, piece) in balance(&item) {
                assert!(piece.inits.iter().flatten().all(|f| f.is_monomial()), "{}", e.name);
                assert_eq!(piece.face_dim, 0);
                if let Some(out) = simplify(&sub, &piece) {
                    items.extend(out);
                    continue;
                }
                let cands = candidate_inits(&piece);
                assert!(cands.is_empty());
                assert!(regularity(&cands, piece.face_dim, &cache).witness.is_none(), "{}", e.name);
            }
        }
    }
}
