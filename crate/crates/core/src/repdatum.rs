//! Representation data: sets of Laurent polynomials on a cone region with
//! factors `‖Ŝ ∪ x·T̂‖^{a s + b}`, together with balancing, simplification,
//! the regularity test and the reduction split.

use crate::euler::{split_torus_factor, TorusSystem};
use crate::exact::Rational;
use crate::idealtools::IdealCache;
use crate::laurent::LaurentPoly;
use crate::lie::{AdaptedPresentation, LieError, NilpotentLieAlgebra};
use crate::polyhedra::lattice::{dot, glex_cmp, rank, sub, IVec};
use crate::polyhedra::{partition_boundary_orthant, refine_by_point_sets, Cone, HalfOpenCone};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// `‖Ŝ ∪ x·T̂‖^{a s + b}`; a missing set contributes nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub s_set: Option<usize>,
    pub t_set: Option<usize>,
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug)]
pub struct ReprDatum {
    pub n: usize,
    pub region: Vec<HalfOpenCone>,
    pub sets: Vec<Vec<LaurentPoly>>,
    pub factors: Vec<Factor>,
    pub depth: usize,
}

/// Initial forms of all members, constant on `cell`.
#[derive(Clone, Debug)]
pub struct BalancedPiece {
    pub cell: HalfOpenCone,
    pub inits: Vec<Vec<LaurentPoly>>,
    pub vertices: Vec<Vec<IVec>>,
    pub face_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionFailure {
    #[error("no polynomial set contains two members whose initial forms lie in the witness {witness:?}")]
    NoPair { witness: Vec<String> },
    #[error("reduction depth bound {0} exceeded")]
    DepthExceeded(usize),
}

fn dedup_scalar(set: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let s: BTreeSet<LaurentPoly> = set.into_iter().filter(|p| !p.is_zero()).map(|p| p.primitive_integer()).collect();
    s.into_iter().collect()
}

pub fn construct_datum(l: &NilpotentLieAlgebra) -> Result<ReprDatum, LieError> {
    let p = l.adapted_presentation()?;
    Ok(datum_from_presentation(&p))
}

pub fn datum_from_presentation(p: &AdaptedPresentation) -> ReprDatum {
    let n = p.derived_dim;
    let f = p.pfaffian_sets();
    let g = p.minor_sets();
    let mut sets = vec![vec![LaurentPoly::one(n)]];
    let mut fi = vec![0];
    for set in &f[1..] {
        fi.push(sets.len());
        sets.push(set.clone());
    }
    let mut gj = vec![0];
    for set in &g[1..] {
        gj.push(sets.len());
        sets.push(set.clone());
    }
    let mut factors = vec![Factor { s_set: None, t_set: Some(0), a: 1, b: -(n as i64) - 1 }];
    for i in 2..=p.u {
        factors.push(Factor { s_set: None, t_set: Some(fi[i - 1]), a: 1, b: 0 });
        factors.push(Factor { s_set: Some(fi[i]), t_set: Some(fi[i - 1]), a: -1, b: 0 });
    }
    for j in 1..=p.v {
        factors.push(Factor { s_set: None, t_set: Some(gj[j - 1]), a: 0, b: 1 });
        factors.push(Factor { s_set: Some(gj[j]), t_set: Some(gj[j - 1]), a: 0, b: -1 });
    }
    ReprDatum { n, region: partition_boundary_orthant(n).cells, sets, factors, depth: 0 }
}

impl ReprDatum {
    /// Restriction to a single region cell.
    pub fn with_region(&self, cell: HalfOpenCone) -> ReprDatum {
        ReprDatum { region: vec![cell], ..self.clone() }
    }

    /// Sets actually referenced by some factor.
    pub fn used_sets(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.factors.iter().flat_map(|f| f.s_set.into_iter().chain(f.t_set)).collect();
        s.into_iter().collect()
    }

    /// Every member is integer-valued on the closure of every region cell.
    pub fn is_integer_valued(&self) -> bool {
        self.region.iter().all(|c| {
            self.sets.iter().flatten().all(|f| f.is_integer_valued_on_cone(c.closure()))
        })
    }
}

/// `Σ (|supp f| - 1)` over the distinct polynomials of the datum up to monomials and scalars.
pub fn weight(d: &ReprDatum) -> usize {
    let distinct: BTreeSet<LaurentPoly> = d.sets.iter().flatten().map(|f| f.monomial_normalize().0).collect();
    distinct.iter().map(|f| f.len() - 1).sum()
}

fn glex_min(points: &[IVec]) -> IVec {
    points.iter().min_by(|a, b| glex_cmp(a, b)).unwrap().clone()
}

/// Dimension of the face of the Newton polytope of the product of all members
/// selected by the given initial forms.
pub fn face_dimension(inits: &[Vec<LaurentPoly>]) -> usize {
    let mut rows = vec![];
    for f in inits.iter().flatten() {
        let s = f.support();
        for e in &s[1..] {
            rows.push(sub(e, &s[0]));
        }
    }
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

/// Refines every region cell until all initial forms are constant on each piece.
pub fn balance(d: &ReprDatum) -> Vec<(ReprDatum, BalancedPiece)> {
    let mut supports = vec![];
    for set in &d.sets {
        for f in set {
            supports.push(f.support());
        }
    }
    let mut out = vec![];
    for cell in &d.region {
        for rc in refine_by_point_sets(cell, &supports) {
            let mut k = 0;
            let mut inits = vec![];
            let mut vertices = vec![];
            for set in &d.sets {
                let mut si = vec![];
                let mut sv = vec![];
                for f in set {
                    let pts: Vec<IVec> = rc.argmin[k].iter().map(|&i| supports[k][i].clone()).collect();
                    si.push(LaurentPoly::from_terms(d.n, pts.iter().map(|e| (e.clone(), f.coeff(e)))));
                    sv.push(glex_min(&pts));
                    k += 1;
                }
                inits.push(si);
                vertices.push(sv);
            }
            let face_dim = face_dimension(&inits);
            out.push((d.with_region(rc.cell.clone()), BalancedPiece { cell: rc.cell, inits, vertices, face_dim }));
        }
    }
    out
}

fn nonneg_on(c: &Cone, v: &[i64]) -> bool {
    c.is_nonneg(v)
}

/// One round of simplification on a balanced piece: a divisibility discard,
/// a split separating two monomial multiples of each other, or an accepted
/// cancellation. Returns `None` when nothing applies.
pub fn simplify(d: &ReprDatum, piece: &BalancedPiece) -> Option<Vec<ReprDatum>> {
    simplify_once(d, piece)
}

/// Splits the cell along `γ` when two members of a set satisfy `f = c X^γ g`,
/// keeping only the larger one on each side.
pub fn monomial_multiple_split(d: &ReprDatum, piece: &BalancedPiece) -> Option<Vec<ReprDatum>> {
    for (si, set) in d.sets.iter().enumerate() {
        let normalized: Vec<(LaurentPoly, IVec)> = set
            .iter()
            .map(|f| {
                let (g, t) = f.monomial_normalize();
                (g, t.exponent)
            })
            .collect();
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if normalized[i].0 != normalized[j].0 {
                    continue;
                }
                // f_i = c X^γ f_j with γ = twist_j - twist_i
                let gamma = sub(&normalized[j].1, &normalized[i].1);
                let mut out = vec![];
                for part in piece.cell.split_open(&gamma) {
                    let w = part.closure().interior_point();
                    let drop = if dot(&gamma, &w) >= 0 { i } else { j };
                    let mut nd = d.with_region(part);
                    nd.sets[si].remove(drop);
                    out.push(nd);
                }
                return Some(out);
            }
        }
    }
    None
}

fn simplify_once(d: &ReprDatum, piece: &BalancedPiece) -> Option<Vec<ReprDatum>> {
    let closure = piece.cell.closure();
    let w = closure.interior_point();
    for (si, set) in d.sets.iter().enumerate() {
        // divisibility: drop f when f = q g with q integral on the cell
        for (i, f) in set.iter().enumerate() {
            let vf = f.min_pairing(&w).unwrap();
            for (j, g) in set.iter().enumerate() {
                if i == j || g.min_pairing(&w).unwrap() > vf {
                    continue;
                }
                if let Some(q) = f.exact_div(g) {
                    if q.support().iter().all(|e| nonneg_on(closure, e)) {
                        let mut out = d.clone();
                        out.sets[si].remove(i);
                        return Some(vec![out]);
                    }
                }
            }
        }
        if set.len() >= 3 {
            for (i, f) in set.iter().enumerate() {
                if f.is_monomial() {
                    continue;
                }
                let others: Vec<&LaurentPoly> = set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g).collect();
                if in_integral_span(f, &others, closure) {
                    let mut out = d.clone();
                    out.sets[si].remove(i);
                    return Some(vec![out]);
                }
            }
        }
        // cancellation: f - (t/t') f' with t/t' integral on the cell and a smaller support
        for (i, f) in set.iter().enumerate() {
            for (j, g) in set.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (te, tc) in f.terms() {
                    for (ue, uc) in g.terms() {
                        let gamma = sub(te, ue);
                        if !nonneg_on(closure, &gamma) {
                            continue;
                        }
                        let m = LaurentPoly::monomial(gamma, tc / uc);
                        let h = f - &(&m * g);
                        if h.len() < f.len() {
                            let mut out = d.clone();
                            let mut new = set.clone();
                            new.remove(i);
                            if !h.is_zero() {
                                new.push(h);
                            }
                            out.sets[si] = dedup_scalar(new);
                            return Some(vec![out]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Whether `f = Σ c_j X^{β_j} g_j` with every `β_j` nonnegative on `cell`,
/// where each `β_j` is a difference of a support point of `f` and one of `g_j`.
fn in_integral_span(f: &LaurentPoly, gens: &[&LaurentPoly], cell: &Cone) -> bool {
    let mut columns: Vec<LaurentPoly> = vec![];
    for g in gens {
        let mut shifts: BTreeSet<IVec> = BTreeSet::new();
        for te in f.support() {
            for ue in g.support() {
                let b = sub(&te, &ue);
                if nonneg_on(cell, &b) {
                    shifts.insert(b);
                }
            }
        }
        for b in shifts {
            columns.push(g.shift(&b));
        }
    }
    if columns.is_empty() {
        return false;
    }
    let mut monomials: Vec<IVec> = f.support();
    for c in &columns {
        monomials.extend(c.support());
    }
    monomials.sort();
    monomials.dedup();
    let idx = |e: &IVec| monomials.binary_search(e).unwrap();
    // rows = monomials, columns = generators, augmented with f
    let ncols = columns.len();
    let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); ncols + 1]; monomials.len()];
    for (j, c) in columns.iter().enumerate() {
        for (e, x) in c.terms() {
            m[idx(e)][j] = x.clone();
        }
    }
    for (e, x) in f.terms() {
        m[idx(e)][ncols] = x.clone();
    }
    // row reduction; consistent iff no pivot lands in the augmented column
    let mut row = 0;
    for col in 0..=ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        if col == ncols {
            return false;
        }
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for k in col..=ncols {
                    let v = &factor * &m[row][k];
                    m[r][k] -= v;
                }
            }
        }
        row += 1;
    }
    true
}

/// Distinct non-monomial initial forms up to monomials and scalars.
pub fn candidate_inits(piece: &BalancedPiece) -> Vec<LaurentPoly> {
    let s: BTreeSet<LaurentPoly> = piece
        .inits
        .iter()
        .flatten()
        .filter(|f| !f.is_monomial())
        .map(|f| f.monomial_normalize().0)
        .collect();
    s.into_iter().collect()
}

/// Outcome of the regularity test on a balanced piece.
#[derive(Clone, Debug)]
pub struct Regularity {
    /// Candidates compressed to a torus of dimension `face_dim`.
    pub compressed: Vec<LaurentPoly>,
    /// Subsets `G` with nonempty zero locus in the torus, in increasing size.
    pub nonempty: Vec<Vec<usize>>,
    /// A smallest subset witnessing non-regularity.
    pub witness: Option<Vec<usize>>,
}

/// Enumerates subsets of the candidate initial forms by size, pruning those
/// with empty torus zero locus, and stops at the first singular one.
pub fn regularity(candidates: &[LaurentPoly], face_dim: usize, cache: &IdealCache) -> Regularity {
    let sys = TorusSystem { dim: candidates.first().map_or(0, |f| f.nvars()), vanishing: candidates.to_vec(), nonvanishing: vec![] };
    let compressed = split_torus_factor(&sys, face_dim).expect("initial forms lie on a face of dimension face_dim").vanishing;
    let d = face_dim;
    let mut nonempty: Vec<Vec<usize>> = vec![vec![]];
    let mut level: Vec<Vec<usize>> = vec![vec![]];
    let present: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    let mut present = present;
    present.insert(vec![]);
    while !level.is_empty() {
        let mut next = vec![];
        for g in &level {
            let start = g.last().map_or(0, |&x| x + 1);
            for k in start..compressed.len() {
                let mut h = g.clone();
                h.push(k);
                // every proper subset must have a nonempty locus
                let all_sub = (0..h.len()).all(|drop| {
                    let mut s = h.clone();
                    s.remove(drop);
                    present.contains(&s)
                });
                if !all_sub {
                    continue;
                }
                let polys: Vec<LaurentPoly> = h.iter().map(|&i| compressed[i].clone()).collect();
                if !cache.torus_zero_exists(&polys, d) {
                    continue;
                }
                if h.len() > d || !cache.rank_drop_locus_empty(&polys, d) {
                    return Regularity { compressed, nonempty, witness: Some(h) };
                }
                present.insert(h.clone());
                nonempty.push(h.clone());
                next.push(h);
            }
        }
        level = next;
    }
    Regularity { compressed, nonempty, witness: None }
}

/// Splits a non-regular piece along `γ = exp(t) - exp(t')` and exchanges one
/// witness member on each side.
pub fn reduce_split(
    d: &ReprDatum,
    piece: &BalancedPiece,
    candidates: &[LaurentPoly],
    witness: &[usize],
    depth_bound: usize,
) -> Result<Vec<ReprDatum>, ReductionFailure> {
    let wit: Vec<&LaurentPoly> = witness.iter().map(|&i| &candidates[i]).collect();
    if d.depth >= depth_bound {
        return Err(ReductionFailure::DepthExceeded(depth_bound));
    }
    let in_witness = |f: &LaurentPoly| !f.is_monomial() && wit.contains(&&f.monomial_normalize().0);
    // candidates (score, set, f, f', t, t', γ); lower score is better
    type Choice = ((usize, i64), usize, usize, usize, IVec, Rational, IVec, Rational, IVec);
    let mut best: Option<Choice> = None;
    let all_normalized: BTreeSet<LaurentPoly> = d.sets.iter().flatten().map(|f| f.monomial_normalize().0).collect();
    for (si, inits) in piece.inits.iter().enumerate() {
        let members: Vec<usize> = (0..inits.len()).filter(|&i| in_witness(&inits[i])).collect();
        let normalized: Vec<(usize, LaurentPoly)> =
            d.sets[si].iter().enumerate().map(|(k, f)| (k, f.monomial_normalize().0)).collect();
        for &i in &members {
            for &j in &members {
                if i == j {
                    continue;
                }
                let mut ti: Vec<(&IVec, &Rational)> = inits[i].terms().collect();
                let mut tj: Vec<(&IVec, &Rational)> = inits[j].terms().collect();
                ti.sort_by(|a, b| glex_cmp(a.0, b.0));
                tj.sort_by(|a, b| glex_cmp(a.0, b.0));
                for (te, tc) in &ti {
                    for (ue, uc) in &tj {
                        let gamma = sub(te, ue);
                        let h = &d.sets[si][i] - &(&LaurentPoly::monomial(gamma.clone(), *tc / *uc) * &d.sets[si][j]);
                        let produces_member = !h.is_zero() && {
                            let hn = h.monomial_normalize().0;
                            normalized.iter().any(|(k, g)| *k != i && *g == hn) || all_normalized.contains(&hn)
                        };
                        let score = (if produces_member || h.is_zero() { 0 } else { h.len() }, norm1(&gamma));
                        if best.as_ref().is_none_or(|b| score < b.0) {
                            best = Some((score, si, i, j, (*te).clone(), (*tc).clone(), (*ue).clone(), (*uc).clone(), gamma));
                        }
                    }
                }
            }
        }
    }
    let Some((_, si, i, j, te, tc, ue, uc, gamma)) = best else {
        return Err(ReductionFailure::NoPair { witness: wit.iter().map(|f| f.to_string()).collect() });
    };
    let f = &d.sets[si][i];
    let g = &d.sets[si][j];
    let plus_f = f - &(&LaurentPoly::monomial(sub(&te, &ue), &tc / &uc) * g);
    let minus_g = g - &(&LaurentPoly::monomial(sub(&ue, &te), &uc / &tc) * f);
    let mut out = vec![];
    let cell = &piece.cell;
    for part in cell.split_open(&gamma) {
        let w = part.closure().interior_point();
        let positive_side = dot(&gamma, &w) >= 0;
        let mut nd = d.with_region(part);
        nd.depth = d.depth + 1;
        let mut set = d.sets[si].clone();
        if positive_side {
            set[i] = plus_f.clone();
        } else {
            set[j] = minus_g.clone();
        }
        nd.sets[si] = dedup_scalar(set);
        out.push(nd);
    }
    Ok(out)
}

fn norm1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

