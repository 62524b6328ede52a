//! Polyhedral cones with a generator description and lazily cached facets.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use super::dd::{double_description, VRep};
use super::rational::{dot, neg, unit, QVec, Q};
use super::GeomError;

/// `{x : <e, x> = 0 for e in equations, <f, x> >= 0 for f in inequalities}`.
///
/// Produced by [`Cone::hrep`] it is irredundant: the inequalities are the facet
/// normals and none of them is an implicit equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HRep {
    pub equations: Vec<QVec>,
    pub inequalities: Vec<QVec>,
}

/// A rational polyhedral cone `cone(generators)` in `Q^dim`.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<QVec>,
    hrep: OnceLock<HRep>,
    vrep: OnceLock<VRep>,
}

impl Cone {
    /// Panics if a generator has the wrong length; see [`Cone::try_new`].
    pub fn new(dim: usize, generators: Vec<QVec>) -> Cone {
        Self::try_new(dim, generators).expect("generator dimension")
    }

    pub fn try_new(dim: usize, generators: Vec<QVec>) -> Result<Cone, GeomError> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, found: g.len() });
        }
        Ok(Cone { dim, generators, hrep: OnceLock::new(), vrep: OnceLock::new() })
    }

    pub fn zero(dim: usize) -> Cone {
        Cone::new(dim, Vec::new())
    }

    pub fn full(dim: usize) -> Cone {
        let mut gens = Vec::new();
        for i in 0..dim {
            gens.push(unit(dim, i));
            gens.push(neg(&unit(dim, i)));
        }
        Cone::new(dim, gens)
    }

    /// The cone cut out by the given (possibly redundant) constraints.
    pub fn from_hrep(dim: usize, equations: &[QVec], inequalities: &[QVec]) -> Cone {
        let v = double_description(dim, equations, inequalities);
        let mut gens = v.rays.clone();
        for l in &v.lineality {
            gens.push(l.clone());
            gens.push(neg(l));
        }
        let cone = Cone::new(dim, gens);
        let _ = cone.vrep.set(v);
        cone
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    /// Irredundant facet description, computed once.
    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            let dual = double_description(self.dim, &[], &self.generators);
            HRep { equations: dual.lineality, inequalities: dual.rays }
        })
    }

    /// Lineality space and extreme rays (modulo lineality), computed once.
    pub fn vrep(&self) -> &VRep {
        self.vrep.get_or_init(|| {
            let h = self.hrep();
            double_description(self.dim, &h.equations, &h.inequalities)
        })
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|e| dot(e, v).is_zero())
            && h.inequalities.iter().all(|f| !dot(f, v).is_negative())
    }

    /// Membership in the relative interior (interior within the linear span).
    pub fn relative_interior_contains(&self, v: &[Q]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|e| dot(e, v).is_zero())
            && h.inequalities.iter().all(|f| dot(f, v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as point sets.
    pub fn same_set(&self, other: &Cone) -> bool {
        self.dim == other.dim && self.contains_cone(other) && other.contains_cone(self)
    }

    /// `{f : <f, c> >= 0 for all c in self}`.
    pub fn dual(&self) -> Cone {
        let h = self.hrep();
        let mut gens = h.inequalities.clone();
        for e in &h.equations {
            gens.push(e.clone());
            gens.push(neg(e));
        }
        Cone::new(self.dim, gens)
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let (a, b) = (self.hrep(), other.hrep());
        let eqs: Vec<QVec> = a.equations.iter().chain(&b.equations).cloned().collect();
        let ineqs: Vec<QVec> = a.inequalities.iter().chain(&b.inequalities).cloned().collect();
        Cone::from_hrep(self.dim, &eqs, &ineqs)
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        self.dim - self.hrep().equations.len()
    }

    pub fn is_full_dim(&self) -> bool {
        self.hrep().equations.is_empty()
    }

    pub fn lineality_dim(&self) -> usize {
        self.vrep().lineality.len()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.vrep().lineality.is_empty()
    }

    /// Primitive extreme rays, sorted. Meaningful for strictly convex cones.
    pub fn extreme_rays(&self) -> Vec<QVec> {
        let mut rays = self.vrep().rays.clone();
        rays.sort();
        rays
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_strictly_convex() && self.vrep().rays.len() == self.span_dim()
    }

    /// Faces of a strictly convex cone as index sets into [`Cone::extreme_rays`],
    /// from the apex (empty set) to the cone itself.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>, GeomError> {
        if !self.is_strictly_convex() {
            return Err(GeomError::NotStrictlyConvex);
        }
        let rays = self.extreme_rays();
        let all: Vec<usize> = (0..rays.len()).collect();
        let facets: Vec<Vec<usize>> = self
            .hrep()
            .inequalities
            .iter()
            .map(|f| (0..rays.len()).filter(|&i| dot(f, &rays[i]).is_zero()).collect())
            .collect();
        Ok(intersection_closure(all, &facets))
    }
}

/// All intersections of the given sets, together with `top`.
pub(crate) fn intersection_closure(top: Vec<usize>, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(top);
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if found.insert(s.clone()) {
            frontier.push(s.clone());
        }
    }
    while let Some(f) = frontier.pop() {
        for s in sets {
            let meet: Vec<usize> = f.iter().filter(|i| s.contains(i)).copied().collect();
            if found.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// `C^vee` as a cone.
pub fn dual_cone(c: &Cone) -> Cone {
    c.dual()
}

/// `v` in the relative interior of `c`.
pub fn relative_interior_contains(c: &Cone, v: &[Q]) -> Result<bool, GeomError> {
    if v.len() != c.dim() {
        return Err(GeomError::DimensionMismatch { expected: c.dim(), found: v.len() });
    }
    Ok(c.relative_interior_contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::qvec;

    fn orthant2() -> Cone {
        Cone::new(2, vec![qvec(&[1, 0]), qvec(&[0, 1])])
    }

    #[test]
    fn orthant_is_self_dual() {
        assert!(dual_cone(&orthant2()).same_set(&orthant2()));
    }

    #[test]
    fn zero_cone_dual_is_everything() {
        let d = dual_cone(&Cone::zero(2));
        assert!(d.same_set(&Cone::full(2)));
        assert_eq!(d.lineality_dim(), 2);
    }

    #[test]
    fn relative_interior_examples() {
        assert!(relative_interior_contains(&orthant2(), &qvec(&[1, 1])).unwrap());
        assert!(!relative_interior_contains(&orthant2(), &qvec(&[1, 0])).unwrap());
        let ray = Cone::new(2, vec![qvec(&[1, 0])]);
        assert!(relative_interior_contains(&ray, &qvec(&[2, 0])).unwrap());
        assert!(!relative_interior_contains(&ray, &qvec(&[0, 0])).unwrap());
        assert!(Cone::zero(2).relative_interior_contains(&qvec(&[0, 0])));
    }

    #[test]
    fn square_cone_faces() {
        let c = Cone::new(
            3,
            vec![qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[1, 0, 1]), qvec(&[0, 1, 1]), qvec(&[1, 1, 1])],
        );
        assert_eq!(c.extreme_rays().len(), 4);
        let faces = c.faces().unwrap();
        // apex, 4 rays, 4 two-dimensional facets, the cone
        assert_eq!(faces.len(), 10);
        assert!(!c.is_simplicial());
    }
}
