//! Exact two-phase simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::linalg::{nullspace, rank};
use super::polyhedron::Polyhedron;
use super::rational::{add, dot, scale, zeros, QVec, Q};
use super::GeomError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Value { value: Q, argmax: QVec },
    Unbounded,
    Infeasible,
}

impl LpResult {
    pub fn value(&self) -> Option<&Q> {
        match self {
            LpResult::Value { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<QVec>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.rows[i].len() {
                if !self.rows[r][j].is_zero() {
                    let t = &f * &self.rows[r][j];
                    self.rows[i][j] -= t;
                }
            }
            let t = &f * &self.rhs[r];
            self.rhs[i] -= t;
        }
        self.basis[r] = c;
    }

    /// Maximize `cost . z` over the columns `< ncols`. `false` means unbounded.
    fn optimize(&mut self, cost: &[Q], ncols: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..ncols {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                if d.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }

    fn value_of(&self, ncols: usize) -> QVec {
        let mut z = zeros(ncols);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                z[b] = self.rhs[i].clone();
            }
        }
        z
    }
}

/// Maximize `c . x` over `{x in Q^dim : a . x >= b for (a, b) in ineqs, a . x = b for (a, b) in eqs}`.
///
/// A finite optimum is reported at a vertex whenever the feasible region has one.
pub fn lp_max(dim: usize, ineqs: &[(QVec, Q)], eqs: &[(QVec, Q)], c: &[Q]) -> LpResult {
    // columns: u (dim), w (dim), one slack per inequality, one artificial per row
    let m = ineqs.len() + eqs.len();
    let nslack = ineqs.len();
    let nreal = 2 * dim + nslack;
    let ncols = nreal + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, (a, b)) in ineqs.iter().chain(eqs).enumerate() {
        let mut row = zeros(ncols);
        for j in 0..dim {
            row[j] = a[j].clone();
            row[dim + j] = -a[j].clone();
        }
        if k < nslack {
            row[2 * dim + k] = -Q::one();
        }
        let mut bb = b.clone();
        if bb.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            bb = -bb;
        }
        row[nreal + k] = Q::one();
        rows.push(row);
        rhs.push(bb);
    }
    let mut t = Tableau { rows, rhs, basis: (nreal..ncols).collect() };

    let mut phase1 = zeros(ncols);
    for x in phase1.iter_mut().skip(nreal) {
        *x = -Q::one();
    }
    t.optimize(&phase1, ncols);
    let infeas: Q = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= nreal)
        .map(|(i, _)| t.rhs[i].clone())
        .fold(Q::zero(), |a, x| a + x);
    if infeas.is_positive() {
        return LpResult::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nreal {
            if let Some(j) = (0..nreal).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    let mut cost = zeros(ncols);
    for j in 0..dim {
        cost[j] = c[j].clone();
        cost[dim + j] = -c[j].clone();
    }
    if !t.optimize(&cost, nreal) {
        return LpResult::Unbounded;
    }
    let z = t.value_of(nreal);
    let x: QVec = (0..dim).map(|j| &z[j] - &z[dim + j]).collect();
    let x = purify(dim, ineqs, eqs, x);
    LpResult::Value { value: dot(c, &x), argmax: x }
}

/// Move an optimal point along directions that keep every active constraint tight
/// until it becomes a vertex (or the active set leaves a line through the region).
fn purify(dim: usize, ineqs: &[(QVec, Q)], eqs: &[(QVec, Q)], mut x: QVec) -> QVec {
    loop {
        let mut active: Vec<QVec> = eqs.iter().map(|(a, _)| a.clone()).collect();
        for (a, b) in ineqs {
            if dot(a, &x) == *b {
                active.push(a.clone());
            }
        }
        if rank(&active) == dim {
            return x;
        }
        let d = nullspace(&active, dim).remove(0);
        let mut step: Option<(Q, QVec)> = None;
        for dir in [d.clone(), d.iter().map(|v| -v).collect()] {
            for (a, b) in ineqs {
                let s = dot(a, &dir);
                if s.is_negative() {
                    let t = (dot(a, &x) - b) / -s;
                    if step.as_ref().map_or(true, |(best, _)| t < *best) {
                        step = Some((t, dir.clone()));
                    }
                }
            }
            if step.is_some() {
                break;
            }
        }
        match step {
            Some((t, dir)) => x = add(&x, &scale(&t, &dir)),
            None => return x,
        }
    }
}

/// Supremum of `objective` over `P intersected with T`.
pub fn solve_lp_sup(p: &Polyhedron, t: &Cone, objective: &[Q]) -> Result<LpResult, GeomError> {
    let d = p.dim();
    for n in [t.dim(), objective.len()] {
        if n != d {
            return Err(GeomError::DimensionMismatch { expected: d, found: n });
        }
    }
    let h = t.hrep();
    let mut ineqs: Vec<(QVec, Q)> = p.halfspaces().to_vec();
    ineqs.extend(h.inequalities.iter().map(|f| (f.clone(), Q::zero())));
    let eqs: Vec<(QVec, Q)> = h.equations.iter().map(|e| (e.clone(), Q::zero())).collect();
    Ok(lp_max(d, &ineqs, &eqs, objective))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{q, qvec};

    fn orthant(d: usize) -> Cone {
        Cone::new(d, (0..d).map(|i| crate::exactgeom::rational::unit(d, i)).collect())
    }

    #[test]
    fn conics_triangle_sup() {
        let p = Polyhedron::new(
            2,
            vec![(qvec(&[2, -1]), q(-1)), (qvec(&[-1, 2]), q(-1)), (qvec(&[-1, 0]), q(-1))],
        )
        .unwrap();
        let r = solve_lp_sup(&p, &orthant(2), &qvec(&[0, 1])).unwrap();
        assert_eq!(r, LpResult::Value { value: q(3), argmax: qvec(&[1, 3]) });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = Polyhedron::new(1, vec![(qvec(&[1]), q(1))]).unwrap();
        let neg_half = Cone::new(1, vec![qvec(&[-1])]);
        assert_eq!(solve_lp_sup(&p, &neg_half, &qvec(&[1])).unwrap(), LpResult::Infeasible);
        let p0 = Polyhedron::new(1, vec![(qvec(&[1]), q(0))]).unwrap();
        assert_eq!(solve_lp_sup(&p0, &Cone::full(1), &qvec(&[1])).unwrap(), LpResult::Unbounded);
    }

    #[test]
    fn dimension_mismatch() {
        let p = Polyhedron::universe(2);
        assert!(solve_lp_sup(&p, &Cone::full(3), &qvec(&[1, 0])).is_err());
    }

    #[test]
    fn degenerate_optimum_lands_on_vertex() {
        // maximize y on the square [0,1]^2: the optimal edge is purified to a vertex
        let ineqs = vec![
            (qvec(&[1, 0]), q(0)),
            (qvec(&[0, 1]), q(0)),
            (qvec(&[-1, 0]), q(-1)),
            (qvec(&[0, -1]), q(-1)),
        ];
        let LpResult::Value { value, argmax } = lp_max(2, &ineqs, &[], &qvec(&[0, 1])) else {
            panic!()
        };
        assert_eq!(value, q(1));
        assert!(argmax == qvec(&[0, 1]) || argmax == qvec(&[1, 1]));
    }
}
