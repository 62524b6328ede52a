//! Double description: from constraints `<a, x> >= 0` to lineality plus extreme rays.

use num_traits::{Signed, Zero};

use super::linalg::nullspace;
use super::rational::{dot, is_zero, neg, primitive_unchecked, scale, sub, QVec};

/// A cone written as `span(lineality) + cone(rays)` with the rays pointed modulo the lineality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VRep {
    pub lineality: Vec<QVec>,
    pub rays: Vec<QVec>,
}

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        if i / 64 >= self.0.len() {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        let n = self.0.len().max(o.0.len());
        Bits((0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) & o.0.get(i).copied().unwrap_or(0))
            .collect())
    }
    fn contains_all(&self, o: &Bits) -> bool {
        (0..o.0.len()).all(|i| {
            let a = self.0.get(i).copied().unwrap_or(0);
            o.0[i] & !a == 0
        })
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// V-representation of `{x : <e, x> = 0 (e in eqs), <a, x> >= 0 (a in ineqs)}` in `Q^dim`.
pub fn double_description(dim: usize, eqs: &[QVec], ineqs: &[QVec]) -> VRep {
    let mut lin = nullspace(eqs, dim);
    let ambient = lin.len();
    let mut rays: Vec<QVec> = Vec::new();
    let mut processed: Vec<&QVec> = Vec::new();

    for a in ineqs {
        if is_zero(a) {
            continue;
        }
        if let Some(k) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(k);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0 = neg(&l0);
                s0 = -s0;
            }
            for l in lin.iter_mut() {
                let s = dot(a, l);
                if !s.is_zero() {
                    *l = sub(l, &scale(&(s / &s0), &l0));
                }
            }
            for r in rays.iter_mut() {
                let s = dot(a, r);
                if !s.is_zero() {
                    *r = primitive_unchecked(&sub(r, &scale(&(s / &s0), &l0)));
                }
            }
            rays.push(primitive_unchecked(&l0));
            processed.push(a);
            continue;
        }

        let vals: Vec<_> = rays.iter().map(|r| dot(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            processed.push(a);
            continue;
        }
        let zsets: Vec<Bits> = rays
            .iter()
            .map(|r| {
                let mut b = Bits::new(processed.len());
                for (i, c) in processed.iter().enumerate() {
                    if dot(c, r).is_zero() {
                        b.set(i);
                    }
                }
                b
            })
            .collect();
        // adjacent rays share at least (dim of the pointed part) - 2 tight constraints
        let need = ambient.saturating_sub(lin.len()).saturating_sub(2);
        let mut next: Vec<QVec> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                next.push(r.clone());
            }
        }
        for p in (0..rays.len()).filter(|&i| vals[i].is_positive()) {
            for n in (0..rays.len()).filter(|&i| vals[i].is_negative()) {
                let common = zsets[p].and(&zsets[n]);
                if common.count() < need {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != n)
                    .all(|r| !zsets[r].contains_all(&common));
                if adjacent {
                    let v = sub(&scale(&vals[p], &rays[n]), &scale(&vals[n], &rays[p]));
                    next.push(primitive_unchecked(&v));
                }
            }
        }
        rays = next;
        processed.push(a);
    }

    VRep {
        lineality: lin.iter().map(|l| primitive_unchecked(l)).collect(),
        rays,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::qvec;

    #[test]
    fn equations_do_not_count_toward_adjacency() {
        let eqs = vec![qvec(&[2, 1, 0])];
        let ineqs = vec![qvec(&[-1, 0, 2]), qvec(&[-2, 2, 1]), qvec(&[-1, 0, 0]), qvec(&[0, 0, 1])];
        let mut rays = double_description(3, &eqs, &ineqs).rays;
        rays.sort();
        assert_eq!(rays, vec![qvec(&[-1, 2, 0]), qvec(&[0, 0, 1])]);
    }

    #[test]
    fn orthant() {
        let v = double_description(2, &[], &[qvec(&[1, 0]), qvec(&[0, 1])]);
        assert!(v.lineality.is_empty());
        let mut rays = v.rays;
        rays.sort();
        assert_eq!(rays, vec![qvec(&[0, 1]), qvec(&[1, 0])]);
    }

    #[test]
    fn halfplane_keeps_a_line() {
        let v = double_description(2, &[], &[qvec(&[1, 1])]);
        assert_eq!(v.lineality.len(), 1);
        assert_eq!(v.rays.len(), 1);
    }

    #[test]
    fn square_cone() {
        // x>=0, y>=0, z-x>=0... cone over a square: x,y,z-x,z-y >= 0
        let v = double_description(
            3,
            &[],
            &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[-1, 0, 1]), qvec(&[0, -1, 1])],
        );
        assert!(v.lineality.is_empty());
        let mut rays = v.rays;
        rays.sort();
        assert_eq!(
            rays,
            vec![qvec(&[0, 0, 1]), qvec(&[0, 1, 1]), qvec(&[1, 0, 1]), qvec(&[1, 1, 1])]
        );
    }
}
