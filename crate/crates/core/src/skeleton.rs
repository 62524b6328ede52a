//! Spherical skeletons `(Sigma, Sp, D^a, Gamma)` with `rho'` and `varsigma`.
//!
//! Spherical roots are weights (simple-root then torus coordinates) and form the
//! basis of `Lambda`; every `rho'` is the vector of its values on `Sigma`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactgeom::lp::{lp_max, LpResult};
use crate::exactgeom::rational::{fmt_q, q, unit, zeros, QVec, Q};
use crate::luna::{check_axioms, derived_colors, ColorType, TypeAView, Violation};
use crate::rootsystems::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAColor {
    pub label: String,
    pub moved_by: BTreeSet<usize>,
    pub rho: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantDivisor {
    pub label: String,
    pub rho: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalSkeleton {
    pub root_system: RootSystem,
    pub sigma: Vec<QVec>,
    pub sp: BTreeSet<usize>,
    pub type_a: Vec<TypeAColor>,
    pub gamma: Vec<InvariantDivisor>,
}

/// A color with everything the criteria need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pub label: String,
    pub kind: ColorType,
    pub moved_by: BTreeSet<usize>,
    pub rho: QVec,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullColorSet {
    pub colors: Vec<Color>,
}

/// An element of `Delta`: a color (with its type) or an invariant divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub label: String,
    pub kind: Option<ColorType>,
    pub moved_by: BTreeSet<usize>,
    pub rho: QVec,
    pub m: i64,
}

/// Value of the p-tilde function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wp {
    Value(Q),
    NegativeInfinity,
}

impl Wp {
    pub fn value(&self) -> Option<&Q> {
        match self {
            Wp::Value(v) => Some(v),
            Wp::NegativeInfinity => None,
        }
    }

    /// The exact test `wp < 1` used by the smoothness criterion.
    pub fn less_than_one(&self) -> bool {
        match self {
            Wp::Value(v) => *v < q(1),
            Wp::NegativeInfinity => true,
        }
    }
}

impl fmt::Display for Wp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wp::Value(v) => f.write_str(&fmt_q(v)),
            Wp::NegativeInfinity => f.write_str("-inf"),
        }
    }
}

/// `rplus_diff - (sum (m_D - 1) + sup <sum rho(D), theta>)` over
/// `{<rho(D), theta> >= -m_D} intersected with the region` given by `tail`.
pub(crate) fn wp_from_program(
    dim: usize,
    rplus_diff: usize,
    divisors: &[(QVec, i64)],
    tail_ineqs: &[QVec],
    tail_eqs: &[QVec],
) -> Result<Wp> {
    let mut ineqs: Vec<(QVec, Q)> = divisors.iter().map(|(r, m)| (r.clone(), q(-m))).collect();
    ineqs.extend(tail_ineqs.iter().map(|f| (f.clone(), Q::zero())));
    let eqs: Vec<(QVec, Q)> = tail_eqs.iter().map(|e| (e.clone(), Q::zero())).collect();
    let mut obj = zeros(dim);
    for (r, _) in divisors {
        for (o, x) in obj.iter_mut().zip(r) {
            *o += x;
        }
    }
    let constant: i64 = divisors.iter().map(|(_, m)| m - 1).sum();
    match lp_max(dim, &ineqs, &eqs, &obj) {
        LpResult::Value { value, .. } => Ok(Wp::Value(q(rplus_diff as i64) - q(constant) - value)),
        LpResult::Unbounded => Ok(Wp::NegativeInfinity),
        LpResult::Infeasible => Err(Error::Internal("the region of the p-tilde program is empty".into())),
    }
}

impl SphericalSkeleton {
    /// The skeleton with nothing but a root system (`Sp = S`).
    pub fn trivial(root_system: RootSystem) -> Self {
        let sp = root_system.all();
        SphericalSkeleton { root_system, sigma: Vec::new(), sp, type_a: Vec::new(), gamma: Vec::new() }
    }

    pub fn lattice_rank(&self) -> usize {
        self.sigma.len()
    }

    fn structural(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let wd = self.root_system.weight_dim();
        let n = self.sigma.len();
        for g in &self.sigma {
            if g.len() != wd {
                v.push(Violation::new("shape", format!("spherical root of length {} in weight dimension {wd}", g.len())));
            }
        }
        for &a in &self.sp {
            if a >= self.root_system.rank() {
                v.push(Violation::new("shape", format!("Sp index {a} out of range")));
            }
        }
        for d in &self.type_a {
            if d.rho.len() != n {
                v.push(Violation::new("shape", format!("rho'({}) has {} values, expected {n}", d.label, d.rho.len())));
            }
            if d.moved_by.iter().any(|&a| a >= self.root_system.rank()) {
                v.push(Violation::new("shape", format!("{} is moved by an unknown root", d.label)));
            }
        }
        for d in &self.gamma {
            if d.rho.len() != n {
                v.push(Violation::new("shape", format!("rho'({}) has {} values, expected {n}", d.label, d.rho.len())));
            }
        }
        v
    }

    /// Every failed axiom instance; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = self.structural();
        if !v.is_empty() {
            return v;
        }
        let n = self.sigma.len();
        let ident: Vec<QVec> = (0..n).map(|k| unit(n, k)).collect();
        let views: Vec<TypeAView<'_>> = self
            .type_a
            .iter()
            .map(|d| TypeAView { label: &d.label, moved_by: &d.moved_by, rho: &d.rho })
            .collect();
        v.extend(check_axioms(&self.root_system, &self.sp, &self.sigma, &ident, &views, false));
        let mut seen = BTreeSet::new();
        for l in self.delta_labels() {
            if !seen.insert(l.clone()) {
                v.push(Violation::new("labels", format!("label {l} is used twice")));
            }
        }
        v
    }

    fn delta_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self.type_a.iter().map(|d| d.label.clone()).collect();
        if self.structural().is_empty() {
            out.extend(self.derived().into_iter().map(|c| c.label));
        }
        out.extend(self.gamma.iter().map(|d| d.label.clone()));
        out
    }

    fn derived(&self) -> Vec<Color> {
        derived_colors(&self.root_system, &self.sp, &self.sigma, &self.sigma)
            .into_iter()
            .map(|c| Color { label: c.label, kind: c.kind, moved_by: c.moved_by, rho: c.rho, m: c.m })
            .collect()
    }

    fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSkeleton(v.iter().map(ToString::to_string).collect()))
        }
    }

    /// All colors: the given type-a colors followed by the reconstructed ones.
    pub fn reconstruct_colors(&self) -> Result<FullColorSet> {
        self.require_valid()?;
        let mut colors: Vec<Color> = self
            .type_a
            .iter()
            .map(|d| Color { label: d.label.clone(), kind: ColorType::A, moved_by: d.moved_by.clone(), rho: d.rho.clone(), m: 1 })
            .collect();
        colors.extend(self.derived());
        Ok(FullColorSet { colors })
    }

    /// `Delta = D cup Gamma` with coefficients `m_D`.
    pub fn divisors(&self) -> Result<Vec<Divisor>> {
        let mut out: Vec<Divisor> = self
            .reconstruct_colors()?
            .colors
            .into_iter()
            .map(|c| Divisor { label: c.label, kind: Some(c.kind), moved_by: c.moved_by, rho: c.rho, m: c.m })
            .collect();
        out.extend(self.gamma.iter().map(|g| Divisor {
            label: g.label.clone(),
            kind: None,
            moved_by: BTreeSet::new(),
            rho: g.rho.clone(),
            m: 1,
        }));
        Ok(out)
    }

    pub fn rplus_diff(&self) -> usize {
        self.root_system.rplus_diff(&self.sp)
    }

    /// The p-tilde value of the skeleton.
    pub fn wp_tilde(&self) -> Result<Wp> {
        let divs = self.divisors()?;
        let n = self.sigma.len();
        let data: Vec<(QVec, i64)> = divs.iter().map(|d| (d.rho.clone(), d.m)).collect();
        let orthant: Vec<QVec> = (0..n).map(|k| unit(n, k)).collect();
        wp_from_program(n, self.rplus_diff(), &data, &orthant, &[])
    }

    /// Localization at the divisors labelled by `labels`.
    pub fn localize<S: AsRef<str>>(&self, labels: &[S]) -> Result<SphericalSkeleton> {
        let divs = self.divisors()?;
        let by_label: BTreeMap<&str, &Divisor> = divs.iter().map(|d| (d.label.as_str(), d)).collect();
        let mut s_i: BTreeSet<usize> = BTreeSet::new();
        let mut chosen: BTreeSet<String> = BTreeSet::new();
        for l in labels {
            let d = by_label.get(l.as_ref()).ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            s_i.extend(d.moved_by.iter().copied());
            chosen.insert(d.label.clone());
        }
        let rs = &self.root_system;
        let keep: Vec<usize> = (0..self.sigma.len())
            .filter(|&k| {
                let g = &self.sigma[k];
                (0..rs.rank()).all(|j| g[j].is_zero() || s_i.contains(&j))
                    && g[rs.rank()..].iter().all(Zero::is_zero)
            })
            .collect();
        let position: BTreeMap<usize, usize> = s_i.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let restrict_w = |g: &QVec| -> QVec { s_i.iter().map(|&j| g[j].clone()).collect() };
        let restrict_rho = |r: &QVec| -> QVec { keep.iter().map(|&k| r[k].clone()).collect() };
        let sigma: Vec<QVec> = keep.iter().map(|&k| restrict_w(&self.sigma[k])).collect();
        let simple_in_sigma_i: BTreeSet<usize> = keep
            .iter()
            .filter_map(|&k| (0..rs.rank()).find(|&a| self.sigma[k] == rs.simple_root(a)))
            .collect();
        let type_a = self
            .type_a
            .iter()
            .filter(|d| d.moved_by.iter().any(|a| simple_in_sigma_i.contains(a)))
            .map(|d| TypeAColor {
                label: d.label.clone(),
                moved_by: d.moved_by.iter().filter_map(|a| position.get(a).copied()).collect(),
                rho: restrict_rho(&d.rho),
            })
            .collect();
        let gamma = self
            .gamma
            .iter()
            .filter(|g| chosen.contains(&g.label))
            .map(|g| InvariantDivisor { label: g.label.clone(), rho: restrict_rho(&g.rho) })
            .collect();
        let sp = self.sp.iter().filter_map(|a| position.get(a).copied()).collect();
        Ok(SphericalSkeleton { root_system: rs.restrict(&s_i), sigma, sp, type_a, gamma })
    }

    /// Drop invariant divisors with `rho' = 0`.
    pub fn reduce_equivalence(&self) -> SphericalSkeleton {
        let mut out = self.clone();
        out.gamma.retain(|g| g.rho.iter().any(|x| !x.is_zero()));
        out
    }

    /// Direct sum; labels of `other` that collide are prefixed with `r2.`.
    pub fn direct_sum(&self, other: &SphericalSkeleton) -> SphericalSkeleton {
        let (r1, r2) = (self.root_system.rank(), other.root_system.rank());
        let (t1, t2) = (self.root_system.torus_rank(), other.root_system.torus_rank());
        let (n1, n2) = (self.sigma.len(), other.sigma.len());
        let map1 = |w: &QVec| -> QVec {
            let mut v = w[..r1].to_vec();
            v.extend(zeros(r2));
            v.extend(w[r1..].iter().cloned());
            v.extend(zeros(t2));
            v
        };
        let map2 = |w: &QVec| -> QVec {
            let mut v = zeros(r1);
            v.extend(w[..r2].iter().cloned());
            v.extend(zeros(t1));
            v.extend(w[r2..].iter().cloned());
            v
        };
        let ext1 = |r: &QVec| -> QVec { r.iter().cloned().chain(zeros(n2)).collect() };
        let ext2 = |r: &QVec| -> QVec { zeros(n1).into_iter().chain(r.iter().cloned()).collect() };
        let taken: BTreeSet<String> = self.delta_labels().into_iter().collect();
        let rename = |l: &str| if taken.contains(l) { format!("r2.{l}") } else { l.to_string() };

        let mut sigma: Vec<QVec> = self.sigma.iter().map(map1).collect();
        sigma.extend(other.sigma.iter().map(map2));
        let mut sp = self.sp.clone();
        sp.extend(other.sp.iter().map(|a| a + r1));
        let mut type_a: Vec<TypeAColor> = self
            .type_a
            .iter()
            .map(|d| TypeAColor { label: d.label.clone(), moved_by: d.moved_by.clone(), rho: ext1(&d.rho) })
            .collect();
        type_a.extend(other.type_a.iter().map(|d| TypeAColor {
            label: rename(&d.label),
            moved_by: d.moved_by.iter().map(|a| a + r1).collect(),
            rho: ext2(&d.rho),
        }));
        let mut gamma: Vec<InvariantDivisor> =
            self.gamma.iter().map(|g| InvariantDivisor { label: g.label.clone(), rho: ext1(&g.rho) }).collect();
        gamma.extend(other.gamma.iter().map(|g| InvariantDivisor { label: rename(&g.label), rho: ext2(&g.rho) }));
        SphericalSkeleton { root_system: self.root_system.direct_sum(&other.root_system), sigma, sp, type_a, gamma }
    }

    /// Isomorphism through a Cartan-preserving relabelling of the simple roots,
    /// with bijections of type-a colors and invariant divisors compatible with `rho'`.
    pub fn is_isomorphic(&self, other: &SphericalSkeleton) -> bool {
        let (a, b) = (&self.root_system, &other.root_system);
        if a.rank() != b.rank() || a.torus_rank() != b.torus_rank() || self.sigma.len() != other.sigma.len() {
            return false;
        }
        let mut perm = vec![usize::MAX; a.rank()];
        let mut used = vec![false; a.rank()];
        self.search(other, 0, &mut perm, &mut used)
    }

    fn search(&self, other: &SphericalSkeleton, i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let (a, b) = (&self.root_system, &other.root_system);
        if i == a.rank() {
            return self.matches_under(other, perm);
        }
        for j in 0..b.rank() {
            if used[j] {
                continue;
            }
            let ok = (0..i).all(|k| a.cartan()[i][k] == b.cartan()[j][perm[k]] && a.cartan()[k][i] == b.cartan()[perm[k]][j])
                && self.sp.contains(&i) == other.sp.contains(&j);
            if !ok {
                continue;
            }
            perm[i] = j;
            used[j] = true;
            if self.search(other, i + 1, perm, used) {
                return true;
            }
            used[j] = false;
        }
        perm[i] = usize::MAX;
        false
    }

    fn matches_under(&self, other: &SphericalSkeleton, perm: &[usize]) -> bool {
        let r = self.root_system.rank();
        let image = |w: &QVec| -> QVec {
            let mut v = w.clone();
            for i in 0..r {
                v[perm[i]] = w[i].clone();
            }
            v
        };
        let mut sigma_map = Vec::new();
        for g in &self.sigma {
            let Some(k) = other.sigma.iter().position(|h| *h == image(g)) else { return false };
            sigma_map.push(k);
        }
        let moved = |rho: &QVec| -> QVec {
            let mut v = zeros(rho.len());
            for (k, x) in rho.iter().enumerate() {
                v[sigma_map[k]] = x.clone();
            }
            v
        };
        let mut left: Vec<(Vec<usize>, QVec)> = self
            .type_a
            .iter()
            .map(|d| (d.moved_by.iter().map(|&i| perm[i]).collect::<BTreeSet<_>>().into_iter().collect(), moved(&d.rho)))
            .collect();
        let mut right: Vec<(Vec<usize>, QVec)> =
            other.type_a.iter().map(|d| (d.moved_by.iter().copied().collect(), d.rho.clone())).collect();
        left.sort();
        right.sort();
        let mut gl: Vec<QVec> = self.gamma.iter().map(|g| moved(&g.rho)).collect();
        let mut gr: Vec<QVec> = other.gamma.iter().map(|g| g.rho.clone()).collect();
        gl.sort();
        gr.sort();
        left == right && gl == gr
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactgeom::rational::qvec;

    pub(crate) fn conics() -> SphericalSkeleton {
        let rs = RootSystem::parse("A2").unwrap();
        SphericalSkeleton {
            root_system: rs,
            sigma: vec![qvec(&[2, 0]), qvec(&[0, 2])],
            sp: BTreeSet::new(),
            type_a: Vec::new(),
            gamma: vec![InvariantDivisor { label: "X1".into(), rho: qvec(&[-1, 0]) }],
        }
    }

    #[test]
    fn conics_is_valid_with_two_2a_colors() {
        let r = conics();
        assert!(r.validate().is_empty(), "{:?}", r.validate());
        let colors = r.reconstruct_colors().unwrap().colors;
        assert_eq!(colors.len(), 2);
        assert_eq!(colors[0].label, "D1");
        assert_eq!(colors[0].kind, ColorType::TwoA);
        assert_eq!(colors[0].rho, qvec(&[2, -1]));
        assert_eq!(colors[1].rho, qvec(&[-1, 2]));
        assert!(colors.iter().all(|c| c.m == 1));
    }

    #[test]
    fn conics_wp_and_localization() {
        let r = conics();
        assert_eq!(r.wp_tilde().unwrap(), Wp::Value(q(0)));
        let loc = r.localize(&["X1", "D1"]).unwrap();
        assert_eq!(loc.sigma, vec![qvec(&[2])]);
        assert_eq!(loc.gamma, vec![InvariantDivisor { label: "X1".into(), rho: qvec(&[-1]) }]);
        let colors = loc.reconstruct_colors().unwrap().colors;
        assert_eq!(colors.len(), 1);
        assert_eq!(colors[0].rho, qvec(&[2]));
        assert_eq!(loc.wp_tilde().unwrap(), Wp::Value(q(0)));
    }

    #[test]
    fn localize_at_nothing_and_everything() {
        let r = conics();
        let empty = r.localize::<&str>(&[]).unwrap();
        assert!(empty.sigma.is_empty() && empty.gamma.is_empty());
        assert_eq!(empty.root_system.rank(), 0);
        assert_eq!(empty.wp_tilde().unwrap(), Wp::Value(q(0)));
        let all = r.localize(&["X1", "D1", "D2"]).unwrap();
        assert_eq!(all, r.clone().with_name(all.root_system.clone()));
        assert!(r.localize(&["nope"]).is_err());
    }

    impl SphericalSkeleton {
        fn with_name(mut self, rs: RootSystem) -> Self {
            self.root_system = rs;
            self
        }
    }

    #[test]
    fn a1_rules() {
        let rs = RootSystem::parse("A1").unwrap();
        let b = SphericalSkeleton {
            root_system: rs.clone(),
            sigma: vec![],
            sp: BTreeSet::new(),
            type_a: vec![],
            gamma: vec![],
        };
        let c = b.reconstruct_colors().unwrap().colors;
        assert_eq!((c.len(), c[0].kind, c[0].rho.len(), c[0].m), (1, ColorType::B, 0, 2));
        let a = SphericalSkeleton {
            root_system: rs,
            sigma: vec![qvec(&[1])],
            sp: BTreeSet::new(),
            type_a: vec![
                TypeAColor { label: "D+".into(), moved_by: [0].into(), rho: qvec(&[1]) },
                TypeAColor { label: "D-".into(), moved_by: [0].into(), rho: qvec(&[1]) },
            ],
            gamma: vec![],
        };
        assert!(a.validate().is_empty());
        let mut bad = a.clone();
        bad.type_a[1].rho = qvec(&[0]);
        assert!(bad.validate().iter().any(|v| v.axiom == "A2"));
    }

    #[test]
    fn sigma1_violation() {
        // 2 alpha1 and alpha1 + alpha2 in A2: <alpha1^vee, alpha1 + alpha2> = 1 > 0
        let r = SphericalSkeleton {
            root_system: RootSystem::parse("A2").unwrap(),
            sigma: vec![qvec(&[2, 0]), qvec(&[1, 1])],
            sp: BTreeSet::new(),
            type_a: vec![],
            gamma: vec![],
        };
        assert!(r.validate().iter().any(|v| v.axiom == "Sigma1"));
    }

    #[test]
    fn equivalence_and_sums() {
        let r = conics();
        assert_eq!(r.reduce_equivalence(), r);
        let mut t = SphericalSkeleton::trivial(RootSystem::parse("A1").unwrap());
        t.gamma.push(InvariantDivisor { label: "Y".into(), rho: vec![] });
        assert!(t.reduce_equivalence().gamma.is_empty());
        let s = r.direct_sum(&r);
        assert_eq!(s.lattice_rank(), 4);
        assert!(s.validate().is_empty(), "{:?}", s.validate());
        assert_eq!(s.wp_tilde().unwrap(), Wp::Value(q(0)));
        assert!(s.is_isomorphic(&s));
        assert!(r.is_isomorphic(&r));
    }
}
