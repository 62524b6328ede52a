//! Placing triangulations of pointed cones.

use num_traits::Zero;

use super::cone::Cone;
use super::linalg::{in_span, nullspace};
use super::rational::{dot, sign, QVec};
use super::GeomError;

/// Placing triangulation of `C` using the marked generators in the given order.
///
/// Returns simplices as sorted index sets into `marked`. Every marked vector must
/// lie in `C`, and together they must generate it.
pub fn triangulate_cone(c: &Cone, marked: &[QVec]) -> Result<Vec<Vec<usize>>, GeomError> {
    if !c.is_strictly_convex() {
        return Err(GeomError::NotStrictlyConvex);
    }
    for v in marked {
        if v.len() != c.dim() {
            return Err(GeomError::DimensionMismatch { expected: c.dim(), found: v.len() });
        }
        if !c.contains(v) {
            return Err(GeomError::Precondition("marked vector outside the cone".into()));
        }
    }
    let d = c.dim();
    let mut simplices: Vec<Vec<usize>> = vec![Vec::new()];
    let mut placed: Vec<QVec> = Vec::new();
    for (p, v) in marked.iter().enumerate() {
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        if !in_span(&placed, v) {
            for s in simplices.iter_mut() {
                s.push(p);
            }
            placed.push(v.clone());
            continue;
        }
        let inside = simplices.iter().any(|s| {
            Cone::new(d, s.iter().map(|&i| marked[i].clone()).collect()).contains(v)
        });
        if inside {
            continue;
        }
        let mut added = Vec::new();
        for s in &simplices {
            for (k, &q) in s.iter().enumerate() {
                let facet: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &i)| i).collect();
                let shared = simplices.iter().filter(|t| facet.iter().all(|i| t.contains(i))).count();
                if shared != 1 {
                    continue;
                }
                let rows: Vec<QVec> = facet.iter().map(|&i| marked[i].clone()).collect();
                let Some(h) = nullspace(&rows, d).into_iter().find(|h| !dot(h, &marked[q]).is_zero())
                else {
                    continue;
                };
                let sq = sign(&dot(&h, &marked[q]));
                let sp = dot(&h, v);
                if !sp.is_zero() && sign(&sp) == -sq {
                    let mut t = facet.clone();
                    t.push(p);
                    added.push(t);
                }
            }
        }
        simplices.extend(added);
    }
    for s in simplices.iter_mut() {
        s.sort();
    }
    Ok(simplices)
}

/// The simplicial cones of a triangulation.
pub fn simplex_cones(dim: usize, marked: &[QVec], simplices: &[Vec<usize>]) -> Vec<Cone> {
    simplices
        .iter()
        .map(|s| Cone::new(dim, s.iter().map(|&i| marked[i].clone()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::qvec;

    #[test]
    fn simplicial_input_is_kept() {
        let gens = vec![qvec(&[1, 0]), qvec(&[1, 2])];
        let c = Cone::new(2, gens.clone());
        assert_eq!(triangulate_cone(&c, &gens).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn square_cone_in_placing_order() {
        let gens = vec![qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[1, 0, 1]), qvec(&[0, 1, 1])];
        let c = Cone::new(3, gens.clone());
        assert_eq!(triangulate_cone(&c, &gens).unwrap(), vec![vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn interior_marked_generator_placed_first() {
        let gens = vec![qvec(&[1, 1]), qvec(&[1, 0]), qvec(&[1, 2])];
        let c = Cone::new(2, gens.clone());
        assert_eq!(triangulate_cone(&c, &gens).unwrap(), vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn rejects_lines() {
        let gens = vec![qvec(&[1]), qvec(&[-1])];
        assert_eq!(triangulate_cone(&Cone::new(1, gens.clone()), &gens), Err(GeomError::NotStrictlyConvex));
    }
}
