//! Labeled vector configurations and their regular subdivisions.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::cone::{intersection_closure, Cone};
use super::lp::{lp_max, LpResult};
use super::rational::{dot, zeros, QVec, Q};
use super::GeomError;

/// An ordered multiset of labeled vectors, optionally with heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfiguration {
    pub dim: usize,
    pub labels: Vec<String>,
    pub vectors: Vec<QVec>,
    pub lift: Option<Vec<Q>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lower,
    Upper,
}

/// Cells as sorted label sets, closed under faces (the empty cell included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub side: Side,
    pub cells: Vec<Vec<String>>,
}

impl Subdivision {
    pub fn maximal_cells(&self) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .filter(|c| {
                !self.cells.iter().any(|d| d.len() > c.len() && c.iter().all(|l| d.contains(l)))
            })
            .cloned()
            .collect()
    }
}

impl VectorConfiguration {
    pub fn new(dim: usize, items: Vec<(String, QVec)>) -> Result<Self, GeomError> {
        let mut seen = BTreeSet::new();
        for (l, v) in &items {
            if v.len() != dim {
                return Err(GeomError::DimensionMismatch { expected: dim, found: v.len() });
            }
            if !seen.insert(l.clone()) {
                return Err(GeomError::Precondition(format!("duplicate label {l}")));
            }
        }
        let (labels, vectors) = items.into_iter().unzip();
        Ok(VectorConfiguration { dim, labels, vectors, lift: None })
    }

    pub fn with_lift(mut self, heights: Vec<Q>) -> Result<Self, GeomError> {
        if heights.len() != self.vectors.len() {
            return Err(GeomError::Precondition("one height per vector".into()));
        }
        self.lift = Some(heights);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `(v_i, omega_i)`.
    pub fn lifted(&self) -> Vec<QVec> {
        let h = self.lift.clone().unwrap_or_else(|| zeros(self.len()));
        self.vectors
            .iter()
            .zip(h)
            .map(|(v, w)| {
                let mut x = v.clone();
                x.push(w);
                x
            })
            .collect()
    }
}

fn lower_precondition(a: &VectorConfiguration, heights: &[Q]) -> bool {
    // some linear l with omega_i + l(v_i) >= 0 for all i
    let ineqs: Vec<(QVec, Q)> =
        a.vectors.iter().zip(heights).map(|(v, w)| (v.clone(), -w.clone())).collect();
    !matches!(lp_max(a.dim, &ineqs, &[], &zeros(a.dim)), LpResult::Infeasible)
}

/// Regular subdivision induced by the lower or upper faces of the lifted configuration.
pub fn regular_subdivision(a: &VectorConfiguration, side: Side) -> Result<Subdivision, GeomError> {
    let heights = a
        .lift
        .clone()
        .ok_or_else(|| GeomError::Precondition("configuration has no lift".into()))?;
    match side {
        Side::Lower if !lower_precondition(a, &heights) => {
            return Err(GeomError::Precondition("no linear function makes the lift nonnegative".into()))
        }
        Side::Upper if !Cone::new(a.dim, a.vectors.clone()).is_strictly_convex() => {
            return Err(GeomError::Precondition("cone(A) is not strictly convex".into()))
        }
        _ => {}
    }
    let lifted = a.lifted();
    let k = Cone::new(a.dim + 1, lifted.clone());
    let h = k.hrep();
    let n = a.len();
    let all: Vec<usize> = (0..n).collect();
    let tight = |f: &QVec| -> Vec<usize> { (0..n).filter(|&i| dot(f, &lifted[i]).is_zero()).collect() };
    let facet_sets: Vec<Vec<usize>> = h.inequalities.iter().map(tight).collect();
    let faces = intersection_closure(all, &facet_sets);

    let graph = h.equations.iter().any(|e| !e[a.dim].is_zero());
    let selected: Vec<Vec<usize>> = if graph {
        faces
    } else {
        faces
            .into_iter()
            .filter(|face| {
                h.inequalities.iter().zip(&facet_sets).any(|(f, s)| {
                    let last = &f[a.dim];
                    let good = match side {
                        Side::Lower => last.is_positive(),
                        Side::Upper => last.is_negative(),
                    };
                    good && face.iter().all(|i| s.contains(i))
                })
            })
            .collect()
    };
    let mut cells: Vec<Vec<String>> = selected
        .into_iter()
        .map(|face| {
            let mut c: Vec<String> = face.iter().map(|&i| a.labels[i].clone()).collect();
            c.sort();
            c
        })
        .collect();
    cells.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    cells.dedup();
    Ok(Subdivision { side, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{q, qvec};

    fn config(items: &[(&str, &[i64])], h: &[i64]) -> VectorConfiguration {
        let d = items[0].1.len();
        VectorConfiguration::new(d, items.iter().map(|(l, v)| (l.to_string(), qvec(v))).collect())
            .unwrap()
            .with_lift(h.iter().map(|&x| q(x)).collect())
            .unwrap()
    }

    fn s(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn flat_simplex_is_one_cell() {
        let a = config(&[("a", &[1, 0]), ("b", &[0, 1])], &[1, 1]);
        for side in [Side::Lower, Side::Upper] {
            assert_eq!(regular_subdivision(&a, side).unwrap().maximal_cells(), vec![s(&["a", "b"])]);
        }
    }

    #[test]
    fn three_vectors_in_the_plane() {
        let a = config(&[("a", &[1, 0]), ("b", &[0, 1]), ("c", &[1, 1])], &[1, 1, 1]);
        let lower = regular_subdivision(&a, Side::Lower).unwrap();
        assert_eq!(lower.maximal_cells(), vec![s(&["a", "c"]), s(&["b", "c"])]);
        let upper = regular_subdivision(&a, Side::Upper).unwrap();
        assert_eq!(upper.maximal_cells(), vec![s(&["a", "b"])]);
        assert!(lower.cells.contains(&Vec::new()));
    }

    #[test]
    fn single_vector() {
        let a = config(&[("a", &[2, 1])], &[5]);
        let sub = regular_subdivision(&a, Side::Lower).unwrap();
        assert_eq!(sub.maximal_cells(), vec![s(&["a"])]);
    }

    #[test]
    fn upper_needs_strict_convexity() {
        let a = config(&[("a", &[1]), ("b", &[-1])], &[1, 1]);
        assert!(regular_subdivision(&a, Side::Upper).is_err());
        assert!(regular_subdivision(&a, Side::Lower).is_ok());
    }
}
