use super::cone::Cone;
use super::halfopen::triangulate;
use super::lattice::{glex_cmp, lattice_index, rank, sub, IVec};
use crate::exact::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// Lattice polytope given by its vertices, sorted in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<IVec>,
}

impl Polytope {
    /// Convex hull of a nonempty point set.
    pub fn new(points: Vec<IVec>) -> Polytope {
        assert!(!points.is_empty(), "convex hull of the empty set");
        let n = points[0].len();
        let mut pts = points;
        pts.sort();
        pts.dedup();
        let vertices = if pts.len() <= 2 {
            pts
        } else {
            let lifted: Vec<IVec> = pts.iter().map(|p| lift(p)).collect();
            let c = Cone::from_generators(n + 1, &lifted, &[]);
            c.rays().iter().map(|r| r[..n].to_vec()).collect()
        };
        let mut vertices = vertices;
        vertices.sort_by(|a, b| glex_cmp(a, b));
        Polytope { dim: n, vertices }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IVec] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        let v0 = &self.vertices[0];
        let diffs: Vec<IVec> = self.vertices[1..].iter().map(|v| sub(v, v0)).collect();
        rank(&diffs)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        let mut pts = vec![];
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Polytope::new(pts)
    }

    pub fn scale(&self, k: i64) -> Polytope {
        Polytope::new(self.vertices.iter().map(|v| v.iter().map(|x| k * x).collect()).collect())
    }

    /// `d!` times the volume in the affine lattice spanned by the polytope.
    pub fn normalized_volume(&self) -> BigInt {
        if self.vertices.len() == 1 {
            return BigInt::from(1);
        }
        let n = self.dim;
        let lifted: Vec<IVec> = self.vertices.iter().map(|p| lift(p)).collect();
        let c = Cone::from_generators(n + 1, &lifted, &[]);
        triangulate(&c)
            .iter()
            .map(|s| {
                let rays: Vec<IVec> = s.iter().map(|&i| c.rays()[i].clone()).collect();
                lattice_index(&rays)
            })
            .sum()
    }

    /// Normalized volume with respect to the ambient lattice (zero unless full-dimensional).
    pub fn ambient_volume(&self) -> BigInt {
        if self.dim() < self.dim {
            BigInt::zero()
        } else {
            self.normalized_volume()
        }
    }
}

fn lift(p: &[i64]) -> IVec {
    let mut v = p.to_vec();
    v.push(1);
    v
}

/// Mixed volume of `d` polytopes in `R^d`, normalized so that `MV(P,…,P)` is the
/// normalized volume of `P`, by inclusion–exclusion over Minkowski sums.
pub fn mixed_volume(polys: &[&Polytope]) -> BigInt {
    let d = polys.len();
    assert!(d > 0 && polys.iter().all(|p| p.ambient_dim() == d), "mixed volume needs d polytopes in R^d");
    let mut total = Rational::zero();
    for mask in 1u32..(1 << d) {
        let mut sum: Option<Polytope> = None;
        for (i, p) in polys.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = Some(match sum {
                    None => (*p).clone(),
                    Some(s) => s.minkowski_sum(p),
                });
            }
        }
        let v = sum.unwrap().ambient_volume();
        let sign = if (d - mask.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += Rational::from_integer(v * sign);
    }
    let fact: BigInt = (1..=d).map(BigInt::from).product();
    let mv = total / Rational::from_integer(fact);
    assert!(mv.is_integer(), "non-integral mixed volume");
    mv.to_integer()
}

/// All mixed volumes `MV(P_1^{m_1},…,P_k^{m_k})` with `|m| = d`, every `m_i >= 1`.
pub fn mixed_volumes(polys: &[Polytope], d: usize) -> Vec<(Vec<usize>, BigInt)> {
    let k = polys.len();
    let mut out = vec![];
    let mut m = vec![1usize; k];
    if k == 0 || k > d {
        return out;
    }
    fn rec(i: usize, left: usize, m: &mut Vec<usize>, polys: &[Polytope], out: &mut Vec<(Vec<usize>, BigInt)>) {
        if i + 1 == m.len() {
            m[i] = 1 + left;
            let list: Vec<&Polytope> = m.iter().enumerate().flat_map(|(j, &c)| std::iter::repeat_n(&polys[j], c)).collect();
            out.push((m.clone(), mixed_volume(&list)));
            return;
        }
        for extra in 0..=left {
            m[i] = 1 + extra;
            rec(i + 1, left - extra, m, polys, out);
        }
    }
    rec(0, d - k, &mut m, polys, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_and_volumes() {
        let simplex = Polytope::new(vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(simplex.normalized_volume(), BigInt::from(1));
        let seg = Polytope::new(vec![vec![0], vec![1], vec![2]]);
        assert_eq!(seg.vertices(), &[vec![0], vec![2]]);
        assert_eq!(seg.normalized_volume(), BigInt::from(2));
        let sq = Polytope::new(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(sq.normalized_volume(), BigInt::from(2));
        let seg2 = Polytope::new(vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(seg2.vertices().len(), 2);
        assert_eq!(seg2.dim(), 1);
    }

    #[test]
    fn mixed_volume_of_copies_is_volume() {
        let p = Polytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(mixed_volume(&[&p, &p]), p.normalized_volume());
        let a = Polytope::new(vec![vec![0, 0], vec![1, 0]]);
        let b = Polytope::new(vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(mixed_volume(&[&a, &b]), BigInt::from(1));
    }
}
