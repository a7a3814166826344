use super::cone::Cone;
use super::lattice::{dot, glex_cmp, lattice_index, neg, rank, sub, unit, IVec};
use super::polytope::Polytope;
use num_bigint::BigInt;

/// A closed cone minus the faces cut out by `strict` (each normal is
/// nonnegative on the closure and is required to be positive).
#[derive(Clone, Debug)]
pub struct HalfOpenCone {
    closure: Cone,
    strict: Vec<IVec>,
}

impl HalfOpenCone {
    pub fn new(closure: Cone, strict: Vec<IVec>) -> Self {
        debug_assert!(strict.iter().all(|g| closure.is_nonneg(g)), "strict normal negative on closure");
        HalfOpenCone { closure, strict }
    }

    pub fn closed(closure: Cone) -> Self {
        HalfOpenCone { closure, strict: vec![] }
    }

    /// The relative interior of `closure`.
    pub fn relatively_open(closure: Cone) -> Self {
        let strict = closure.facets().to_vec();
        HalfOpenCone { closure, strict }
    }

    pub fn closure(&self) -> &Cone {
        &self.closure
    }

    pub fn strict(&self) -> &[IVec] {
        &self.strict
    }

    pub fn dim(&self) -> usize {
        self.closure.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.strict.iter().any(|g| self.closure.vanishes(g))
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.closure.contains(p) && self.strict.iter().all(|g| dot(g, p) > 0)
    }

    /// Whether every proper face of the closure is removed.
    pub fn is_relatively_open(&self) -> bool {
        self.closure.facets().iter().all(|f| {
            let face = self.closure.restrict(std::slice::from_ref(f), &[]);
            self.strict.iter().any(|g| face.vanishes(g))
        })
    }

    /// Partition into relatively open cones (the relative interiors of the
    /// faces that are not removed).
    pub fn open_faces(&self) -> Vec<HalfOpenCone> {
        let mut faces: Vec<Cone> = vec![self.closure.clone()];
        let mut keys: Vec<(Vec<IVec>, usize)> = vec![face_key(&self.closure)];
        let mut i = 0;
        while i < faces.len() {
            let f = faces[i].clone();
            for a in f.facets() {
                let g = f.restrict(std::slice::from_ref(a), &[]);
                let k = face_key(&g);
                if !keys.contains(&k) {
                    keys.push(k);
                    faces.push(g);
                }
            }
            i += 1;
        }
        faces
            .into_iter()
            .filter(|f| !self.strict.iter().any(|g| f.vanishes(g)))
            .map(HalfOpenCone::relatively_open)
            .collect()
    }

    /// Nonempty pieces of a relatively open cone on which `h` is positive, zero, negative.
    pub fn split_open(&self, h: &[i64]) -> Vec<HalfOpenCone> {
        let (pos, negv) = self.closure.signs(h);
        let mut out = vec![];
        if pos {
            out.push(HalfOpenCone::relatively_open(self.closure.restrict(&[], &[h.to_vec()])));
        }
        if pos && negv || !pos && !negv {
            out.push(HalfOpenCone::relatively_open(self.closure.restrict(&[h.to_vec()], &[])));
        }
        if negv {
            out.push(HalfOpenCone::relatively_open(self.closure.restrict(&[], &[neg(h)])));
        }
        out
    }
}

fn face_key(c: &Cone) -> (Vec<IVec>, usize) {
    (c.rays().to_vec(), c.lineality().len())
}

/// Disjoint cones covering a declared region.
#[derive(Clone, Debug, Default)]
pub struct Fan {
    pub cells: Vec<HalfOpenCone>,
}

impl Fan {
    pub fn locate(&self, p: &[i64]) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].contains(p)).collect()
    }
}

/// The `2^n - 1` relatively open pieces `{ω_i = 0 (i∈Z), ω_j > 0 (j∉Z)}` of the
/// orthant boundary `{ω >= 0 : min ω_i = 0}`.
pub fn partition_boundary_orthant(n: usize) -> Fan {
    assert!(n >= 1);
    let mut cells = vec![];
    for mask in 1u64..(1 << n) {
        let eqs: Vec<IVec> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| unit(n, i)).collect();
        let ineqs: Vec<IVec> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| unit(n, i)).collect();
        cells.push(HalfOpenCone::relatively_open(Cone::from_constraints(n, &eqs, &ineqs)));
    }
    Fan { cells }
}

/// A relatively open cell on which each listed point set attains its minimum
/// pairing at a constant index set.
#[derive(Clone, Debug)]
pub struct RefinedCell {
    pub cell: HalfOpenCone,
    pub argmin: Vec<Vec<usize>>,
}

fn argmin(points: &[IVec], w: &[i64]) -> Vec<usize> {
    let vals: Vec<i64> = points.iter().map(|p| dot(p, w)).collect();
    let m = *vals.iter().min().expect("empty point set");
    (0..points.len()).filter(|&i| vals[i] == m).collect()
}

pub fn argmin_violation(c: &Cone, sets: &[Vec<IVec>]) -> Result<Vec<Vec<usize>>, IVec> {
    let w = c.interior_point();
    let mut out = Vec::with_capacity(sets.len());
    for pts in sets {
        let am = argmin(pts, &w);
        let a0 = &pts[am[0]];
        for &i in &am[1..] {
            let h = sub(&pts[i], a0);
            if !c.vanishes(&h) {
                return Err(h);
            }
        }
        for (i, p) in pts.iter().enumerate() {
            if !am.contains(&i) {
                let h = sub(p, a0);
                if !c.is_nonneg(&h) {
                    return Err(h);
                }
            }
        }
        out.push(am);
    }
    Ok(out)
}

/// Splits a relatively open cell until every `ω ↦ min_{α∈P}<α,ω>` is linear on
/// each piece with a constant set of minimizers.
pub fn refine_by_point_sets(cell: &HalfOpenCone, sets: &[Vec<IVec>]) -> Vec<RefinedCell> {
    let mut out = vec![];
    let mut stack = vec![cell.clone()];
    while let Some(c) = stack.pop() {
        match argmin_violation(c.closure(), sets) {
            Ok(argmin) => out.push(RefinedCell { cell: c, argmin }),
            Err(h) => {
                let mut pieces = c.split_open(&h);
                pieces.reverse();
                stack.extend(pieces);
            }
        }
    }
    out
}

/// Refinement of a half-open cone by the normal fans of the given polytopes,
/// with the graded-lex smallest minimizing vertex recorded per polytope.
pub fn refine_by_normal_fans(piece: &HalfOpenCone, polys: &[Polytope]) -> Vec<(HalfOpenCone, Vec<IVec>)> {
    let sets: Vec<Vec<IVec>> = polys.iter().map(|p| p.vertices().to_vec()).collect();
    let mut out = vec![];
    for face in piece.open_faces() {
        for rc in refine_by_point_sets(&face, &sets) {
            let chosen = rc
                .argmin
                .iter()
                .zip(&sets)
                .map(|(am, pts)| am.iter().map(|&i| pts[i].clone()).min_by(|a, b| glex_cmp(a, b)).unwrap())
                .collect();
            out.push((rc.cell, chosen));
        }
    }
    out
}

/// Pulling triangulation of a pointed cone; simplices as sets of ray indices.
pub fn triangulate(c: &Cone) -> Vec<Vec<usize>> {
    assert!(c.is_pointed(), "triangulation of a cone with lineality");
    let all: Vec<usize> = (0..c.rays().len()).collect();
    let tights: Vec<Vec<usize>> = c.facets().iter().map(|a| c.tight_rays(a)).collect();
    let mut out = vec![];
    pull(c, &tights, all, c.dim(), &mut out);
    out
}

fn pull(c: &Cone, tights: &[Vec<usize>], face: Vec<usize>, dim: usize, out: &mut Vec<Vec<usize>>) {
    if face.len() == dim {
        out.push(face);
        return;
    }
    let r0 = face[0];
    let mut seen: Vec<Vec<usize>> = vec![];
    for t in tights {
        let sub: Vec<usize> = face.iter().copied().filter(|i| t.contains(i)).collect();
        if sub.contains(&r0) || seen.contains(&sub) || sub.len() + 1 < dim {
            continue;
        }
        let vecs: Vec<IVec> = sub.iter().map(|&i| c.rays()[i].clone()).collect();
        if rank(&vecs) + 1 != dim {
            continue;
        }
        seen.push(sub.clone());
        let mut tri = vec![];
        pull(c, tights, sub, dim - 1, &mut tri);
        for mut s in tri {
            s.insert(0, r0);
            out.push(s);
        }
    }
}

/// Exact partition of a half-open cone into simplicial half-open cones.
///
/// Facets of the cells are opened according to a generic vector `y` in the
/// interior: a point `x` belongs to the cell containing `x + εy`.
pub fn triangulate_halfopen(c: &HalfOpenCone) -> Vec<HalfOpenCone> {
    triangulate_halfopen_seeded(c, 0)
}

pub fn triangulate_halfopen_seeded(c: &HalfOpenCone, seed: u64) -> Vec<HalfOpenCone> {
    if c.is_empty() {
        return vec![];
    }
    let cl = c.closure();
    if cl.is_simplicial() || cl.is_origin() {
        return vec![c.clone()];
    }
    let simplices: Vec<Cone> = triangulate(cl)
        .into_iter()
        .map(|s| {
            let rays: Vec<IVec> = s.iter().map(|&i| cl.rays()[i].clone()).collect();
            Cone::from_generators(cl.ambient_dim(), &rays, &[])
        })
        .collect();
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let y = loop {
        let mut y = vec![0i64; cl.ambient_dim()];
        for r in cl.rays() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let w = 1 + ((state >> 33) % 997) as i64;
            for (a, b) in y.iter_mut().zip(r) {
                *a += w * b;
            }
        }
        if simplices.iter().all(|s| s.facets().iter().all(|f| dot(f, &y) != 0)) {
            break y;
        }
    };
    simplices
        .into_iter()
        .map(|s| {
            let mut strict: Vec<IVec> = s.facets().iter().filter(|f| dot(f, &y) < 0).cloned().collect();
            strict.extend(c.strict().iter().cloned());
            HalfOpenCone::new(s, strict)
        })
        .collect()
}

/// Index of the lattice generated by the rays of a simplicial cone in its saturation.
pub fn cone_index(c: &Cone) -> BigInt {
    assert!(c.is_simplicial(), "cone index of a non-simplicial cone");
    lattice_index(c.rays())
}
