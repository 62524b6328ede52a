//! Color rules and axiom checks shared by skeletons and embeddings.
//!
//! A lattice is given by a basis of weights; functionals on it are coordinate
//! vectors of values on that basis.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactgeom::linalg::rank;
use crate::exactgeom::rational::{dot, is_zero, q, scale, zeros, QVec, Q};
use crate::rootsystems::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ColorType {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "b")]
    B,
}

impl fmt::Display for ColorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorType::A => "a",
            ColorType::TwoA => "2a",
            ColorType::B => "b",
        })
    }
}

/// A failed axiom instance with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: &str, detail: impl Into<String>) -> Self {
        Violation { axiom: axiom.to_string(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.axiom, self.detail)
    }
}

/// A color produced by the reconstruction rules (types 2a and b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedColor {
    pub label: String,
    pub kind: ColorType,
    pub moved_by: BTreeSet<usize>,
    pub rho: QVec,
    pub m: i64,
}

/// `alpha_i^vee` restricted to the lattice spanned by `basis`.
pub fn coroot_on(rs: &RootSystem, i: usize, basis: &[QVec]) -> QVec {
    basis.iter().map(|b| rs.coroot_pair(i, b)).collect()
}

/// Weights `sum_k c_k basis_k` for each coordinate vector `c`.
pub fn to_weights(basis: &[QVec], dim: usize, coords: &[QVec]) -> Vec<QVec> {
    coords
        .iter()
        .map(|c| {
            let mut w = zeros(dim);
            for (ck, b) in c.iter().zip(basis) {
                for (wj, bj) in w.iter_mut().zip(b) {
                    *wj += ck * bj;
                }
            }
            w
        })
        .collect()
}

fn is_multiple_of_simple(rs: &RootSystem, w: &[Q], i: usize, k: i64) -> bool {
    let target = scale(&q(k), &rs.simple_root(i));
    w == target.as_slice()
}

/// `alpha_i` belongs to `Sigma`.
pub fn in_sigma(rs: &RootSystem, sigma: &[QVec], i: usize) -> bool {
    sigma.iter().any(|g| is_multiple_of_simple(rs, g, i, 1))
}

/// `2 alpha_i` belongs to `Sigma`.
pub fn in_half_sigma(rs: &RootSystem, sigma: &[QVec], i: usize) -> bool {
    sigma.iter().any(|g| is_multiple_of_simple(rs, g, i, 2))
}

/// `alpha_i + alpha_j` lies in `Sigma` or in `2 Sigma`.
fn sum_in_sigma(rs: &RootSystem, sigma: &[QVec], i: usize, j: usize) -> bool {
    let mut s = rs.simple_root(i);
    s[j] += q(1);
    let half = scale(&crate::exactgeom::rational::qf(1, 2), &s);
    sigma.iter().any(|g| *g == s || *g == half)
}

fn root_number(rs: &RootSystem, i: usize) -> String {
    let l = &rs.labels()[i];
    l.strip_prefix('a').unwrap_or(l).to_string()
}

/// `m_D` for a color of the given type moved by `moved_by`.
pub fn anticanonical_coeff(rs: &RootSystem, sp: &BTreeSet<usize>, kind: ColorType, moved_by: &BTreeSet<usize>) -> i64 {
    match kind {
        ColorType::A | ColorType::TwoA => 1,
        ColorType::B => {
            let Some(&alpha) = moved_by.iter().next() else { return 1 };
            let v = rs.coroot_pair(alpha, &rs.kappa(sp));
            v.to_integer().try_into().unwrap_or(i64::MAX)
        }
    }
}

/// Colors of types 2a and b, ordered by their first moving root.
pub fn derived_colors(rs: &RootSystem, sp: &BTreeSet<usize>, sigma: &[QVec], basis: &[QVec]) -> Vec<DerivedColor> {
    let kappa = rs.kappa(sp);
    let mut out = Vec::new();
    let mut merged_into: BTreeSet<usize> = BTreeSet::new();
    for i in 0..rs.rank() {
        if in_half_sigma(rs, sigma, i) {
            let rho = scale(&crate::exactgeom::rational::qf(1, 2), &coroot_on(rs, i, basis));
            out.push(DerivedColor {
                label: format!("D{}", root_number(rs, i)),
                kind: ColorType::TwoA,
                moved_by: [i].into_iter().collect(),
                rho,
                m: 1,
            });
            continue;
        }
        if sp.contains(&i) || in_sigma(rs, sigma, i) || merged_into.contains(&i) {
            continue;
        }
        let partner = (i + 1..rs.rank()).find(|&j| {
            !sp.contains(&j)
                && !in_sigma(rs, sigma, j)
                && !in_half_sigma(rs, sigma, j)
                && rs.orthogonal(i, j)
                && sum_in_sigma(rs, sigma, i, j)
        });
        let m: i64 = rs.coroot_pair(i, &kappa).to_integer().try_into().unwrap_or(i64::MAX);
        let (label, moved_by) = match partner {
            Some(j) => {
                merged_into.insert(j);
                (format!("D{}_{}", root_number(rs, i), root_number(rs, j)), [i, j].into_iter().collect())
            }
            None => (format!("D{}", root_number(rs, i)), [i].into_iter().collect()),
        };
        out.push(DerivedColor { label, kind: ColorType::B, moved_by, rho: coroot_on(rs, i, basis), m });
    }
    out
}

/// A type-a color as seen by the axiom checks.
pub struct TypeAView<'a> {
    pub label: &'a str,
    pub moved_by: &'a BTreeSet<usize>,
    pub rho: &'a QVec,
}

/// Luna-style axioms for `(Sigma, Sp, D^a)` on the lattice spanned by `basis`.
///
/// `sigma_coords` are the spherical roots in basis coordinates. `sp_on_lattice`
/// selects whether (S) is checked on the whole lattice or only on `Sigma`.
pub fn check_axioms(
    rs: &RootSystem,
    sp: &BTreeSet<usize>,
    basis: &[QVec],
    sigma_coords: &[QVec],
    type_a: &[TypeAView<'_>],
    sp_on_lattice: bool,
) -> Vec<Violation> {
    let mut v = Vec::new();
    let wd = rs.weight_dim();
    let sigma = to_weights(basis, wd, sigma_coords);
    let names = |set: &BTreeSet<usize>| -> String {
        set.iter().map(|&i| rs.labels()[i].clone()).collect::<Vec<_>>().join(",")
    };
    let fmt_w = crate::exactgeom::rational::fmt_vec;

    for (k, g) in sigma.iter().enumerate() {
        if is_zero(g) {
            v.push(Violation::new("Sigma", format!("spherical root {k} is zero")));
        }
        if g.iter().any(Signed::is_negative) {
            v.push(Violation::new("Sigma", format!("spherical root {} has a negative coefficient", fmt_w(g))));
        }
        if g[rs.rank()..].iter().any(|x| !x.is_zero()) {
            v.push(Violation::new("Sigma", format!("spherical root {} has a torus component", fmt_w(g))));
        }
    }
    if rank(&sigma) < sigma.len() {
        v.push(Violation::new("Sigma", "spherical roots are linearly dependent"));
    }

    for &a in sp {
        if in_sigma(rs, &sigma, a) || in_half_sigma(rs, &sigma, a) {
            v.push(Violation::new("S", format!("{} in Sp meets Sigma or Sigma/2", rs.labels()[a])));
        }
        let targets: &[QVec] = if sp_on_lattice { basis } else { &sigma };
        for t in targets {
            let p = rs.coroot_pair(a, t);
            if !p.is_zero() {
                v.push(Violation::new(
                    "S",
                    format!("<{}^vee, {}> = {} for {} in Sp", rs.labels()[a], fmt_w(t), p, rs.labels()[a]),
                ));
            }
        }
    }

    for d in type_a {
        if d.rho.len() != basis.len() {
            v.push(Violation::new("A1", format!("{} has rho of length {}", d.label, d.rho.len())));
            continue;
        }
        if d.moved_by.is_empty() {
            v.push(Violation::new("A3", format!("{} is moved by no simple root", d.label)));
        }
        for &a in d.moved_by {
            if !in_sigma(rs, &sigma, a) {
                v.push(Violation::new("A3", format!("{} is moved by {} which is not in S and Sigma", d.label, rs.labels()[a])));
            }
        }
        for (k, g) in sigma.iter().enumerate() {
            let val = dot(d.rho, &sigma_coords[k]);
            let is_mover = d.moved_by.iter().any(|&a| is_multiple_of_simple(rs, g, a, 1));
            if val > q(1) || (val == q(1)) != is_mover {
                v.push(Violation::new(
                    "A1",
                    format!("<rho({}), {}> = {} (movers {})", d.label, fmt_w(g), val, names(d.moved_by)),
                ));
            }
        }
    }

    for a in 0..rs.rank() {
        if !in_sigma(rs, &sigma, a) {
            continue;
        }
        let pair: Vec<&TypeAView<'_>> = type_a.iter().filter(|d| d.moved_by.contains(&a)).collect();
        if pair.len() != 2 {
            v.push(Violation::new(
                "A2",
                format!("{} in S and Sigma moves {} type-a colors, expected 2", rs.labels()[a], pair.len()),
            ));
            continue;
        }
        if pair.iter().any(|d| d.rho.len() != basis.len()) {
            continue;
        }
        let sum: QVec = pair[0].rho.iter().zip(pair[1].rho.iter()).map(|(x, y)| x + y).collect();
        if sum != coroot_on(rs, a, basis) {
            v.push(Violation::new(
                "A2",
                format!(
                    "rho({}) + rho({}) = {} differs from {}^vee = {}",
                    pair[0].label,
                    pair[1].label,
                    fmt_w(&sum),
                    rs.labels()[a],
                    fmt_w(&coroot_on(rs, a, basis))
                ),
            ));
        }
    }

    for a in 0..rs.rank() {
        if !in_half_sigma(rs, &sigma, a) {
            continue;
        }
        let two_alpha = scale(&q(2), &rs.simple_root(a));
        for g in sigma.iter().filter(|g| **g != two_alpha) {
            let p = rs.coroot_pair(a, g);
            if p.is_positive() {
                v.push(Violation::new("Sigma1", format!("<{}^vee, {}> = {} > 0", rs.labels()[a], fmt_w(g), p)));
            }
        }
        for b in basis {
            let p = rs.coroot_pair(a, b) / q(2);
            if !p.is_integer() {
                v.push(Violation::new("Sigma1", format!("<{}^vee, {}> is odd", rs.labels()[a], fmt_w(b))));
            }
        }
    }

    for a in 0..rs.rank() {
        for b in a + 1..rs.rank() {
            if rs.orthogonal(a, b) && sum_in_sigma(rs, &sigma, a, b) && coroot_on(rs, a, basis) != coroot_on(rs, b, basis) {
                v.push(Violation::new(
                    "Sigma2",
                    format!("{}^vee and {}^vee differ on the lattice", rs.labels()[a], rs.labels()[b]),
                ));
            }
        }
    }
    v
}
