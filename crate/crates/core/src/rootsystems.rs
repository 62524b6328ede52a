//! Root systems of types A to G (and central tori), with coroot pairings,
//! positive roots and the weight `kappa`.
//!
//! Weights are written in simple-root coordinates followed by torus coordinates.
//! Simple roots are labelled `a1, a2, ...` in component order.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactgeom::rational::{q, zeros, QVec, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    name: String,
    labels: Vec<String>,
    cartan: Vec<Vec<i64>>,
    torus_rank: usize,
}

fn component_cartan(kind: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match (kind, n) {
        ('A', n) if n >= 1 => {
            for i in 1..n {
                link(i - 1, i, -1, -1);
            }
        }
        ('B', n) if n >= 2 => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            link(n - 2, n - 1, -1, -2);
        }
        ('C', n) if n >= 2 => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            link(n - 2, n - 1, -2, -1);
        }
        ('D', n) if n >= 3 => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        ('E', n) if (6..=8).contains(&n) => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 3..n {
                link(i - 1, i, -1, -1);
            }
        }
        ('F', 4) => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        ('G', 2) => link(0, 1, -3, -1),
        _ => return None,
    }
    Some(c)
}

impl RootSystem {
    /// Parse names such as `"A2"`, `"A1xT1xA1"`, `"E6xT1"`. `"T0"` or `""` give the trivial system.
    ///
    /// A suffix `|a1,a3` restricts to the listed simple roots, as produced by [`RootSystem::restrict`].
    pub fn parse(name: &str) -> Result<RootSystem> {
        if let Some((base, sub)) = name.rsplit_once('|') {
            let rs = RootSystem::parse(base)?;
            let labels: Vec<&str> = sub.split(',').map(str::trim).filter(|l| !l.is_empty()).collect();
            return Ok(rs.restrict(&rs.indices_of(&labels)?));
        }
        let mut blocks: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut torus = 0;
        for part in name.split('x').map(str::trim).filter(|p| !p.is_empty()) {
            let mut chars = part.chars();
            let kind = chars.next().unwrap_or(' ').to_ascii_uppercase();
            let n: usize = chars.as_str().parse().map_err(|_| Error::UnknownRootSystem(part.into()))?;
            if kind == 'T' {
                torus += n;
                continue;
            }
            blocks.push(component_cartan(kind, n).ok_or_else(|| Error::UnknownRootSystem(part.into()))?);
        }
        let rank: usize = blocks.iter().map(Vec::len).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for b in &blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    cartan[off + i][off + j] = v;
                }
            }
            off += b.len();
        }
        let labels = (1..=rank).map(|i| format!("a{i}")).collect();
        Ok(RootSystem { name: name.to_string(), labels, cartan, torus_rank: torus })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// Length of a weight vector.
    pub fn weight_dim(&self) -> usize {
        self.rank() + self.torus_rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<BTreeSet<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// The simple root `alpha_i` as a weight.
    pub fn simple_root(&self, i: usize) -> QVec {
        let mut v = zeros(self.weight_dim());
        v[i] = q(1);
        v
    }

    /// `<alpha_i^vee, chi>` for `chi` in root (and torus) coordinates.
    pub fn coroot_pair(&self, i: usize, chi: &[Q]) -> Q {
        self.cartan[i].iter().zip(chi).fold(Q::zero(), |acc, (&c, x)| acc + q(c) * x)
    }

    pub fn coroot_pair_label(&self, alpha: &str, chi: &[Q]) -> Result<Q> {
        Ok(self.coroot_pair(self.index_of(alpha)?, chi))
    }

    /// `alpha_i` and `alpha_j` orthogonal.
    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] == 0
    }

    /// Positive roots of the sub-system generated by `subset`, in simple-root
    /// coordinates (length `rank()`), sorted.
    pub fn positive_roots(&self, subset: &BTreeSet<usize>) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = Vec::new();
        for &i in subset {
            let mut v = vec![0; n];
            v[i] = 1;
            if found.insert(v.clone()) {
                frontier.push(v);
            }
        }
        while let Some(beta) = frontier.pop() {
            for &i in subset {
                let pair: i64 = (0..n).map(|j| self.cartan[i][j] * beta[j]).sum();
                let mut r = beta.clone();
                r[i] -= pair;
                let positive = r.iter().all(|&x| x >= 0);
                let key = if positive { r } else { r.iter().map(|x| -x).collect() };
                if found.insert(key.clone()) {
                    frontier.push(key);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn all(&self) -> BTreeSet<usize> {
        (0..self.rank()).collect()
    }

    /// `2 rho_I`, the sum of the positive roots of the sub-system on `subset`.
    pub fn two_rho(&self, subset: &BTreeSet<usize>) -> QVec {
        let mut v = zeros(self.weight_dim());
        for r in self.positive_roots(subset) {
            for (j, c) in r.iter().enumerate() {
                v[j] += q(*c);
            }
        }
        v
    }

    /// `kappa = 2 (rho_S - rho_Sp)`.
    pub fn kappa(&self, sp: &BTreeSet<usize>) -> QVec {
        let a = self.two_rho(&self.all());
        let b = self.two_rho(sp);
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }

    /// `|R^+| - |R^+_{Sp}|`.
    pub fn rplus_diff(&self, sp: &BTreeSet<usize>) -> usize {
        self.positive_roots(&self.all()).len() - self.positive_roots(sp).len()
    }

    /// The sub-system on `subset` with its labels kept and no torus.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> RootSystem {
        let idx: Vec<usize> = subset.iter().copied().collect();
        let cartan = idx.iter().map(|&i| idx.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        let labels: Vec<String> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        RootSystem {
            name: format!("{}|{}", self.name, labels.join(",")),
            labels,
            cartan,
            torus_rank: 0,
        }
    }

    /// Direct sum; simple roots of `other` are relabelled after those of `self`.
    pub fn direct_sum(&self, other: &RootSystem) -> RootSystem {
        let n = self.rank() + other.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..self.rank() {
            cartan[i][..self.rank()].copy_from_slice(&self.cartan[i]);
        }
        for i in 0..other.rank() {
            cartan[self.rank() + i][self.rank()..].copy_from_slice(&other.cartan[i]);
        }
        RootSystem {
            name: format!("{}x{}", self.name, other.name),
            labels: (1..=n).map(|i| format!("a{i}")).collect(),
            cartan,
            torus_rank: self.torus_rank + other.torus_rank,
        }
    }
}
