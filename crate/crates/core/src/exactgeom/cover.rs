//! Exact covering checks by iterated polyhedral subtraction.

use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::lp::{lp_max, LpResult};
use super::rational::{neg, QVec, Q};

/// A polyhedral cone given by `equations = 0`, `inequalities >= 0`.
#[derive(Clone, Debug)]
struct Piece {
    ineqs: Vec<QVec>,
}

fn full_in_span(dim: usize, eqs: &[QVec], ineqs: &[QVec]) -> bool {
    // maximize s subject to <f, x> >= s for every inequality, s <= 1
    let mut rows: Vec<(QVec, Q)> = ineqs
        .iter()
        .map(|f| {
            let mut r = f.clone();
            r.push(-Q::one());
            (r, Q::zero())
        })
        .collect();
    let mut cap = vec![Q::zero(); dim + 1];
    cap[dim] = -Q::one();
    rows.push((cap, -Q::one()));
    let eqrows: Vec<(QVec, Q)> = eqs
        .iter()
        .map(|e| {
            let mut r = e.clone();
            r.push(Q::zero());
            (r, Q::zero())
        })
        .collect();
    let mut obj = vec![Q::zero(); dim + 1];
    obj[dim] = Q::one();
    match lp_max(dim + 1, &rows, &eqrows, &obj) {
        LpResult::Value { value, .. } => value.is_positive(),
        LpResult::Unbounded => true,
        LpResult::Infeasible => false,
    }
}

/// True when `region` is contained in the union of `cones`.
pub fn covers(cones: &[Cone], region: &Cone) -> bool {
    let dim = region.dim();
    let span_eqs = region.hrep().equations.clone();
    let span = Cone::from_hrep(dim, &span_eqs, &[]);
    let target = region.span_dim();
    let usable: Vec<Vec<QVec>> = cones
        .iter()
        .filter_map(|c| {
            let cut = c.intersect(&span);
            (cut.span_dim() == target).then(|| cut.hrep().inequalities.clone())
        })
        .collect();
    if target == 0 {
        return !cones.is_empty();
    }
    let mut work = vec![Piece { ineqs: region.hrep().inequalities.clone() }];
    for facets in &usable {
        let mut next = Vec::new();
        for piece in work {
            let mut prefix = piece.ineqs.clone();
            for h in facets {
                let mut ineqs = prefix.clone();
                ineqs.push(neg(h));
                if full_in_span(dim, &span_eqs, &ineqs) {
                    next.push(Piece { ineqs });
                }
                prefix.push(h.clone());
            }
        }
        work = next;
        if work.is_empty() {
            return true;
        }
    }
    work.is_empty()
}

/// `region` minus the union of `cones` has empty interior relative to `region`'s span.
pub fn difference_is_empty(region: &Cone, cones: &[Cone]) -> bool {
    covers(cones, region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::qvec;

    #[test]
    fn quadrants_cover_the_plane() {
        let quads: Vec<Cone> = [[1, 1], [-1, 1], [-1, -1], [1, -1]]
            .iter()
            .map(|&[a, b]| Cone::new(2, vec![qvec(&[a, 0]), qvec(&[0, b])]))
            .collect();
        assert!(covers(&quads, &Cone::full(2)));
        assert!(!covers(&quads[..3], &Cone::full(2)));
    }

    #[test]
    fn lower_dimensional_region() {
        let ray = Cone::new(2, vec![qvec(&[1, 1])]);
        let halves = vec![Cone::new(2, vec![qvec(&[1, 0]), qvec(&[1, 2])])];
        assert!(covers(&halves, &ray));
        let off = vec![Cone::new(2, vec![qvec(&[1, 0]), qvec(&[2, 1])])];
        assert!(!covers(&off, &ray));
    }

    #[test]
    fn zero_region() {
        assert!(covers(&[Cone::zero(2)], &Cone::zero(2)));
        assert!(!covers(&[], &Cone::zero(2)));
    }
}
