//! Toricness, smoothness along an orbit, and the multiplicity-free-space corpus.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloredfan::{is_complete, orbit_divisor_set, skeleton_of_embedding, wp_tilde_embedding, ColoredCone, ColoredFan, LunaEmbeddingData};
use crate::error::{Error, Result};
use crate::exactgeom::rational::{fmt_q, parse_q, q, qf};
use crate::exactgeom::{solve_lp_sup, Cone, LpResult, Polyhedron, QVec, Q};
use crate::luna::{anticanonical_coeff, ColorType};
use crate::rootsystems::RootSystem;
use crate::skeleton::{SphericalSkeleton, Wp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricVerdict {
    pub toric: bool,
    pub wp: Wp,
}

/// A complete embedding is toric exactly when its p-tilde value is 0.
pub fn is_toric(e: &LunaEmbeddingData, f: &ColoredFan) -> Result<ToricVerdict> {
    if !is_complete(e, f) {
        return Err(Error::Precondition("the fan is not complete".into()));
    }
    let wp = wp_tilde_embedding(e, f)?;
    Ok(ToricVerdict { toric: wp == Wp::Value(Q::zero()), wp })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothVerdict {
    pub smooth: bool,
    /// Divisors containing the orbit.
    pub divisors: BTreeSet<String>,
    pub localized: SphericalSkeleton,
    pub wp: Wp,
}

/// Smooth along the orbit of `orbit` iff the localized skeleton has `wp < 1`.
pub fn is_smooth_along(e: &LunaEmbeddingData, f: &ColoredFan, orbit: &ColoredCone) -> Result<SmoothVerdict> {
    let divisors = orbit_divisor_set(e, f, orbit)?;
    let labels: Vec<&String> = divisors.iter().collect();
    let localized = skeleton_of_embedding(e, f)?.localize(&labels)?;
    let wp = localized.wp_tilde()?;
    Ok(SmoothVerdict { smooth: wp.less_than_one(), divisors, localized, wp })
}

/// `k mod 2`.
pub fn delta(k: i64) -> i64 {
    k.rem_euclid(2)
}

mod qstrings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|x| parse_q(x).map_err(serde::de::Error::custom)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfsDivisor {
    pub label: String,
    /// `a`, `2a`, `b` or `invariant`.
    pub kind: String,
    #[serde(default)]
    pub moved_by: Vec<String>,
}

/// One multiplicity free space in the dual basis `{chi_D}`: `rho(D)` are the unit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfsCase {
    pub id: u32,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    pub root_system: String,
    #[serde(default)]
    pub sp: Vec<String>,
    pub rank: usize,
    pub rplus_diff: i64,
    pub divisor_count: usize,
    pub m: Vec<i64>,
    /// Spherical roots `lambda_i` in the basis `{chi_D}`.
    pub lambda_coords: Vec<Vec<i64>>,
    /// `theta_argmax = sum a_i lambda_i`.
    #[serde(with = "qstrings")]
    pub argmax_coeffs: Vec<Q>,
    #[serde(default)]
    pub divisors: Vec<MfsDivisor>,
}

impl MfsCase {
    pub fn params_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Malformed(format!("item {}: {m}", self.id)));
        if self.divisor_count != self.rank {
            return bad(format!("divisor_count {} differs from rank {}", self.divisor_count, self.rank));
        }
        if self.m.len() != self.divisor_count {
            return bad(format!("{} values of m for {} divisors", self.m.len(), self.divisor_count));
        }
        if let Some(l) = self.lambda_coords.iter().find(|l| l.len() != self.rank) {
            return bad(format!("spherical root of length {} in rank {}", l.len(), self.rank));
        }
        if self.argmax_coeffs.len() != self.lambda_coords.len() {
            return bad(format!("{} coefficients for {} spherical roots", self.argmax_coeffs.len(), self.lambda_coords.len()));
        }
        if self.argmax_coeffs.iter().any(Signed::is_negative) {
            return bad("negative coefficient in theta_argmax".into());
        }
        Ok(())
    }

    /// `theta_argmax` in the basis `{chi_D}`.
    pub fn theta(&self) -> QVec {
        let mut t = vec![Q::zero(); self.rank];
        for (a, l) in self.argmax_coeffs.iter().zip(&self.lambda_coords) {
            for (tj, lj) in t.iter_mut().zip(l) {
                *tj += a * q(*lj);
            }
        }
        t
    }

    /// Disagreements with the root system module and the transcribed argmax formulas.
    pub fn consistency(&self) -> Vec<String> {
        let mut out = Vec::new();
        let rs = match RootSystem::parse(&self.root_system) {
            Ok(rs) => rs,
            Err(e) => return vec![e.to_string()],
        };
        let sp = match rs.indices_of(&self.sp) {
            Ok(sp) => sp,
            Err(e) => return vec![e.to_string()],
        };
        let expected = rs.rplus_diff(&sp) as i64;
        if expected != self.rplus_diff {
            out.push(format!("rplus_diff is {} but the root system gives {expected}", self.rplus_diff));
        }
        if !self.divisors.is_empty() {
            if self.divisors.len() != self.divisor_count {
                out.push(format!("{} divisors listed, divisor_count is {}", self.divisors.len(), self.divisor_count));
            }
            for (d, &m) in self.divisors.iter().zip(&self.m) {
                let want = match d.kind.as_str() {
                    "invariant" | "a" | "2a" => 1,
                    "b" => match rs.indices_of(&d.moved_by) {
                        Ok(movers) => anticanonical_coeff(&rs, &sp, ColorType::B, &movers),
                        Err(e) => {
                            out.push(e.to_string());
                            continue;
                        }
                    },
                    other => {
                        out.push(format!("unknown divisor kind {other:?}"));
                        continue;
                    }
                };
                if want != m {
                    out.push(format!("m({}) is {m} but the root system gives {want}", d.label));
                }
            }
        }
        match argmax_formula(self.id, &self.params, self.lambda_coords.len()) {
            Some(a) if a != self.argmax_coeffs => out.push("argmax coefficients differ from the item's formula".into()),
            _ => {}
        }
        out
    }
}

/// Coefficients `a_i` of `theta_argmax` for the listed items, as functions of the parameters.
///
/// Returns `None` for items without a transcribed formula, or when a formula
/// refers to a spherical root beyond `count`.
pub fn argmax_formula(item: u32, params: &BTreeMap<String, i64>, count: usize) -> Option<Vec<Q>> {
    let n = params.get("n").copied().unwrap_or(0);
    let n2 = params.get("n'").copied().unwrap_or(0);
    let mut a = vec![Q::zero(); count];
    let mut put = |i: i64, v: Q| -> Option<()> {
        let slot = a.get_mut(usize::try_from(i - 1).ok()?)?;
        *slot += v;
        Some(())
    };
    match item {
        1 | 2 => {}
        3 | 4 | 15 | 18 | 21 | 23 => put(1, q(1))?,
        5 => {
            for k in 1..n {
                put(n - k, qf(k * (k + 1), 2))?;
            }
        }
        6 => {
            let h = n / 2;
            for k in 1..h {
                put(h - k, q(k * (2 * k + 1)))?;
            }
        }
        7 => {
            let h = n / 2;
            for k in 1..h {
                put(h - k, q(k * (2 * k - 1)))?;
            }
        }
        8 => {
            for k in 1..n {
                put(n - k, q(k * k))?;
            }
        }
        9 => {
            for k in 1..n {
                put(n - k, q(k * (k + n - n2)))?;
            }
        }
        10 => {
            put(1, q(2 * n2 - 1))?;
            put(2, q(1))?;
        }
        11 => {
            for (i, c) in [8, 3, 6, 2].into_iter().enumerate() {
                put(i as i64 + 1, q(c))?;
            }
        }
        13 => {
            for (i, c) in [12, 5, 9, 4, 1].into_iter().enumerate() {
                put(i as i64 + 1, q(c))?;
            }
        }
        14 => {
            for (i, c) in [4 * n - 4, 2 * n - 3, 3 * n - 3, 2 * n - 4, n - 3].into_iter().enumerate() {
                put(i as i64 + 1, q(c))?;
            }
        }
        16 => {
            put(1, q(1))?;
            put(2, q(5))?;
        }
        17 => put(1, q(5))?,
        19 => {
            put(1, q(10))?;
            put(2, q(1))?;
        }
        20 => {
            put(1, q(1))?;
            put(2, q(1))?;
        }
        22 => put(1, q(n - 1))?,
        24 => {
            for k in 1..=n - 2 {
                put(n - 1 - k, qf(k * (k + 1), 2))?;
            }
        }
        25 => {
            for k in 1..=n - 2 {
                put(n - 1 - k, qf(k * (k - 1), 2) + q((n - 1) * delta(k)))?;
            }
        }
        26 => {
            put(n - 2, q(n - 1))?;
            for k in 1..=n - 3 {
                put(n - 2 - k, qf(k * (k + 1), 2) + q((n - 1) * delta(k)))?;
            }
        }
        _ => return None,
    }
    Some(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfsReport {
    pub id: u32,
    pub params: String,
    pub wp: Wp,
    /// `sum (m_D - 1) + <sum rho(D), theta>` at `theta_argmax`.
    pub argmax_value: Q,
    pub argmax_feasible: bool,
    pub argmax_optimal: bool,
    pub consistency: Vec<String>,
}

impl MfsReport {
    pub fn passed(&self) -> bool {
        self.wp == Wp::Value(Q::zero()) && self.argmax_feasible && self.argmax_optimal && self.consistency.is_empty()
    }
}

impl fmt::Display for MfsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = if self.params.is_empty() { "-".to_string() } else { self.params.clone() };
        write!(f, "item {} {} wp={} {}", self.id, params, self.wp, if self.passed() { "pass" } else { "fail" })?;
        if !self.argmax_feasible {
            write!(f, " (argmax infeasible)")?;
        } else if !self.argmax_optimal {
            write!(f, " (argmax not optimal)")?;
        }
        for c in &self.consistency {
            write!(f, " ({c})")?;
        }
        Ok(())
    }
}

/// Checks `theta_argmax` against `Q* ∩ T` and solves the program independently.
pub fn verify_mfs_case(c: &MfsCase) -> Result<MfsReport> {
    c.check_shape()?;
    let r = c.rank;
    let halfspaces: Vec<(QVec, Q)> = (0..r).map(|j| (crate::exactgeom::rational::unit(r, j), q(-c.m[j]))).collect();
    let qstar = Polyhedron::new(r, halfspaces)?;
    let lambdas: Vec<QVec> = c.lambda_coords.iter().map(|l| l.iter().map(|&x| q(x)).collect()).collect();
    let tail = Cone::new(r, lambdas);
    let ones = vec![q(1); r];
    let constant = q(c.m.iter().map(|m| m - 1).sum::<i64>());
    let theta = c.theta();
    let argmax_value = constant.clone() + theta.iter().sum::<Q>();
    let argmax_feasible = qstar.contains(&theta) && tail.contains(&theta);
    let (wp, optimum) = match solve_lp_sup(&qstar, &tail, &ones)? {
        LpResult::Value { value, .. } => {
            let opt = constant + value;
            (Wp::Value(q(c.rplus_diff) - opt.clone()), Some(opt))
        }
        LpResult::Unbounded => (Wp::NegativeInfinity, None),
        LpResult::Infeasible => return Err(Error::Internal(format!("item {}: empty program", c.id))),
    };
    let argmax_optimal = argmax_feasible && optimum.as_ref() == Some(&argmax_value);
    Ok(MfsReport {
        id: c.id,
        params: c.params_string(),
        wp,
        argmax_value,
        argmax_feasible,
        argmax_optimal,
        consistency: c.consistency(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusStatus {
    Pass,
    Fail,
    NoCases,
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub reports: Vec<MfsReport>,
    /// Sources that could not be read or verified, with the reason.
    pub errors: Vec<(String, String)>,
    pub skipped: usize,
}

impl CorpusReport {
    pub fn status(&self) -> CorpusStatus {
        if self.reports.is_empty() && self.errors.is_empty() {
            CorpusStatus::NoCases
        } else if self.errors.is_empty() && self.reports.iter().all(MfsReport::passed) {
            CorpusStatus::Pass
        } else {
            CorpusStatus::Fail
        }
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            writeln!(f, "{r}")?;
        }
        for (src, why) in &self.errors {
            writeln!(f, "error {src}: {why}")?;
        }
        let status = match self.status() {
            CorpusStatus::Pass => "pass",
            CorpusStatus::Fail => "fail",
            CorpusStatus::NoCases => "no cases",
        };
        let passed = self.reports.iter().filter(|r| r.passed()).count();
        write!(f, "summary: {passed}/{} passed, {} errors, {} skipped: {status}", self.reports.len(), self.errors.len(), self.skipped)
    }
}

/// Reads every `*.json` file of a directory, in file-name order.
pub fn load_corpus_dir(dir: &Path) -> std::io::Result<Vec<(String, std::result::Result<MfsCase, String>)>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let parsed = std::fs::read_to_string(&p)
                .map_err(|e| e.to_string())
                .and_then(|s| serde_json::from_str::<MfsCase>(&s).map_err(|e| e.to_string()));
            (name, parsed)
        })
        .collect())
}

/// Verifies the cases of rank at most `max_rank` on `jobs` threads; output order is by item, then parameters.
pub fn run_corpus(
    cases: Vec<(String, std::result::Result<MfsCase, String>)>,
    max_rank: Option<usize>,
    jobs: usize,
) -> Result<CorpusReport> {
    let mut errors = Vec::new();
    let mut todo = Vec::new();
    let mut skipped = 0;
    for (src, c) in cases {
        match c {
            Err(e) => errors.push((src, e)),
            Ok(c) if max_rank.is_some_and(|k| c.rank > k) => skipped += 1,
            Ok(c) => todo.push((src, c)),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let results: Vec<(String, MfsCase, Result<MfsReport>)> = pool.install(|| {
        todo.into_par_iter().map(|(src, c)| {
            let r = verify_mfs_case(&c);
            (src, c, r)
        })
        .collect()
    });
    let mut reports = Vec::new();
    let mut keyed = Vec::new();
    for (src, c, r) in results {
        match r {
            Ok(rep) => keyed.push(((c.id, c.params.clone()), rep)),
            Err(e) => errors.push((src, e.to_string())),
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    reports.extend(keyed.into_iter().map(|(_, r)| r));
    errors.sort();
    Ok(CorpusReport { reports, errors, skipped })
}
