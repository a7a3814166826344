use super::dd;
use super::lattice::{dot, is_zero, kernel, neg, primitive, rank, IVec};

/// Closed rational polyhedral cone in both representations.
///
/// `rays` are the primitive extreme rays (modulo the lineality space), `lineality`
/// a lattice basis of the lineality space, `equations` a basis of the orthogonal
/// complement of the linear span and `facets` the primitive inner facet normals.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    rays: Vec<IVec>,
    lineality: Vec<IVec>,
    equations: Vec<IVec>,
    facets: Vec<IVec>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }
}

impl Cone {
    /// `{x : eqs·x = 0, ineqs·x >= 0}`.
    pub fn from_constraints(dim: usize, eqs: &[IVec], ineqs: &[IVec]) -> Cone {
        let (rays, lineality) = dd::generators(dim, eqs, ineqs);
        let mut rays: Vec<IVec> = rays.into_iter().map(|r| primitive(&r)).collect();
        rays.sort();
        rays.dedup();
        let mut gens = rays.clone();
        gens.extend(lineality.iter().cloned());
        let equations = kernel(&gens, dim);
        let k = rank(&gens);
        let mut facets: Vec<IVec> = vec![];
        let mut seen: Vec<Vec<usize>> = vec![];
        for a in ineqs {
            let tight: Vec<usize> = (0..rays.len()).filter(|&i| dot(a, &rays[i]) == 0).collect();
            if tight.len() == rays.len() {
                continue;
            }
            let mut t: Vec<IVec> = tight.iter().map(|&i| rays[i].clone()).collect();
            t.extend(lineality.iter().cloned());
            if rank(&t) + 1 != k || seen.contains(&tight) {
                continue;
            }
            seen.push(tight);
            facets.push(primitive(a));
        }
        Cone { dim, rays, lineality, equations, facets }
    }

    /// Conic hull of `rays` plus the linear span of `lineality`.
    pub fn from_generators(dim: usize, rays: &[IVec], lineality: &[IVec]) -> Cone {
        let (drays, dlin) = dd::generators(dim, lineality, rays);
        Cone::from_constraints(dim, &dlin, &drays)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IVec] {
        &self.lineality
    }

    pub fn equations(&self) -> &[IVec] {
        &self.equations
    }

    pub fn facets(&self) -> &[IVec] {
        &self.facets
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    /// The zero-dimensional cone `{0}`.
    pub fn is_origin(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, p) == 0) && self.facets.iter().all(|a| dot(a, p) >= 0)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&neg(l)))
    }

    /// A point in the relative interior (the sum of the extreme rays).
    pub fn interior_point(&self) -> IVec {
        let mut p = vec![0i64; self.dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Whether the linear functional `h` is nonnegative on the cone.
    pub fn is_nonneg(&self, h: &[i64]) -> bool {
        self.lineality.iter().all(|l| dot(h, l) == 0) && self.rays.iter().all(|r| dot(h, r) >= 0)
    }

    /// Whether `h` vanishes identically on the cone.
    pub fn vanishes(&self, h: &[i64]) -> bool {
        self.lineality.iter().all(|l| dot(h, l) == 0) && self.rays.iter().all(|r| dot(h, r) == 0)
    }

    /// Sign behaviour of `h`: (positive somewhere, negative somewhere).
    pub fn signs(&self, h: &[i64]) -> (bool, bool) {
        if self.lineality.iter().any(|l| dot(h, l) != 0) {
            return (true, true);
        }
        let pos = self.rays.iter().any(|r| dot(h, r) > 0);
        let negv = self.rays.iter().any(|r| dot(h, r) < 0);
        (pos, negv)
    }

    /// Intersection with extra constraints.
    pub fn restrict(&self, eqs: &[IVec], ineqs: &[IVec]) -> Cone {
        let mut e = self.equations.clone();
        e.extend(eqs.iter().cloned());
        let mut i = self.facets.clone();
        i.extend(ineqs.iter().cloned());
        Cone::from_constraints(self.dim, &e, &i)
    }

    /// `{ω : <α,ω> >= 0 for all α in the cone}`.
    pub fn dual(&self) -> Cone {
        Cone::from_constraints(self.dim, &self.lineality, &self.rays)
    }

    /// Extreme rays tight on the given functional.
    pub fn tight_rays(&self, h: &[i64]) -> Vec<usize> {
        (0..self.rays.len()).filter(|&i| dot(h, &self.rays[i]) == 0).collect()
    }

    pub fn whole_space(dim: usize) -> Cone {
        Cone::from_constraints(dim, &[], &[])
    }

    pub fn orthant(dim: usize) -> Cone {
        let ineqs: Vec<IVec> = (0..dim).map(|i| super::lattice::unit(dim, i)).collect();
        Cone::from_constraints(dim, &[], &ineqs)
    }

    pub fn is_trivial_functional(h: &[i64]) -> bool {
        is_zero(h)
    }
}

/// Dual of a finite union of cones: the intersection of their duals.
pub fn dual_of_union(dim: usize, cones: &[&Cone]) -> Cone {
    let mut eqs = vec![];
    let mut ineqs = vec![];
    for c in cones {
        eqs.extend(c.lineality().iter().cloned());
        ineqs.extend(c.rays().iter().cloned());
    }
    Cone::from_constraints(dim, &eqs, &ineqs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_is_self_dual() {
        let c = Cone::orthant(3);
        assert_eq!(c.rays().len(), 3);
        assert_eq!(c.facets().len(), 3);
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn duals_of_small_cones() {
        let origin = Cone::from_generators(2, &[], &[]);
        assert!(origin.is_origin());
        let d = origin.dual();
        assert_eq!(d.lineality().len(), 2);
        let ray = Cone::from_generators(2, &[vec![1, 1]], &[]);
        let half = ray.dual();
        assert_eq!(half, Cone::from_constraints(2, &[], &[vec![1, 1]]));
        assert_eq!(half.facets(), &[vec![1, 1]]);
    }

    #[test]
    fn redundant_constraints_removed() {
        let c = Cone::from_constraints(2, &[], &[vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
        assert_eq!(c.facets().len(), 2);
        assert_eq!(c.rays(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn implicit_equalities_detected() {
        let c = Cone::from_constraints(2, &[], &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.rays(), &[vec![0, 1]]);
        assert_eq!(c.facets().len(), 1);
    }

    #[test]
    fn square_cone_in_three_space() {
        let gens = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1], vec![0, 0, 1]];
        let c = Cone::from_generators(3, &gens, &[]);
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
    }
}
