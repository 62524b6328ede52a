//! Polyhedra in H-representation.

use num_traits::{Signed, Zero};

use super::dd::double_description;
use super::rational::{dot, neg, QVec, Q};
use super::GeomError;

/// `{x : <normal, x> >= offset for every halfspace}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    halfspaces: Vec<(QVec, Q)>,
}

/// Vertices, recession rays and recession lineality of a polyhedron.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Minkowski {
    pub vertices: Vec<QVec>,
    pub rays: Vec<QVec>,
    pub lineality: Vec<QVec>,
}

impl Polyhedron {
    pub fn new(dim: usize, halfspaces: Vec<(QVec, Q)>) -> Result<Polyhedron, GeomError> {
        if let Some((n, _)) = halfspaces.iter().find(|(n, _)| n.len() != dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, found: n.len() });
        }
        Ok(Polyhedron { dim, halfspaces })
    }

    /// The whole space.
    pub fn universe(dim: usize) -> Polyhedron {
        Polyhedron { dim, halfspaces: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[(QVec, Q)] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.halfspaces.iter().all(|(n, b)| dot(n, x) >= *b)
    }

    /// Decomposition `conv(vertices) + cone(rays) + span(lineality)` by homogenization.
    pub fn minkowski(&self) -> Minkowski {
        let d = self.dim;
        let mut ineqs: Vec<QVec> = self
            .halfspaces
            .iter()
            .map(|(n, b)| {
                let mut row = n.clone();
                row.push(-b.clone());
                row
            })
            .collect();
        let mut t = vec![Q::zero(); d + 1];
        t[d] = num_traits::One::one();
        ineqs.push(t);
        let v = double_description(d + 1, &[], &ineqs);
        let mut out = Minkowski::default();
        for r in v.rays {
            let last = r[d].clone();
            let x: QVec = r[..d].to_vec();
            if last.is_positive() {
                out.vertices.push(x.iter().map(|c| c / &last).collect());
            } else {
                out.rays.push(x);
            }
        }
        // lineality of the homogenized cone lies in t = 0 because t >= 0 is imposed
        out.lineality = v.lineality.into_iter().map(|l| l[..d].to_vec()).collect();
        out.vertices.sort();
        out.rays.sort();
        out
    }

    /// Vertices of a pointed polyhedron, sorted. Empty when there are none.
    pub fn vertices(&self) -> Vec<QVec> {
        let m = self.minkowski();
        if m.lineality.is_empty() {
            m.vertices
        } else {
            Vec::new()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.minkowski().vertices.is_empty()
    }

    /// Intersection with `{<n, x> >= b}`.
    pub fn with_halfspace(&self, n: QVec, b: Q) -> Polyhedron {
        let mut hs = self.halfspaces.clone();
        hs.push((n, b));
        Polyhedron { dim: self.dim, halfspaces: hs }
    }

    /// Intersection with `{<n, x> <= b}`.
    pub fn with_upper(&self, n: &[Q], b: &Q) -> Polyhedron {
        self.with_halfspace(neg(n), -b.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{q, qvec};

    #[test]
    fn conics_triangle() {
        // <rho(D), v> >= -1 for rho in (2,-1), (-1,2), (-1,0)
        let p = Polyhedron::new(
            2,
            vec![(qvec(&[2, -1]), q(-1)), (qvec(&[-1, 2]), q(-1)), (qvec(&[-1, 0]), q(-1))],
        )
        .unwrap();
        assert_eq!(p.vertices(), vec![qvec(&[-1, -1]), qvec(&[1, 0]), qvec(&[1, 3])]);
        assert!(p.minkowski().rays.is_empty());
    }

    #[test]
    fn empty_and_unbounded() {
        let p = Polyhedron::new(1, vec![(qvec(&[1]), q(1)), (qvec(&[-1]), q(0))]).unwrap();
        assert!(p.is_empty());
        let h = Polyhedron::new(1, vec![(qvec(&[1]), q(0))]).unwrap();
        assert_eq!(h.minkowski().rays, vec![qvec(&[1])]);
    }
}
