//! Shared fixtures: a seeded corpus of Luna data with random colored fans, and an
//! LP oracle by vertex and ray enumeration.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherical_core::coloredfan::{valuation_cone, validate_fan, is_complete, ColoredCone, ColoredFan, LunaEmbeddingData};
use spherical_core::exactgeom::dd::double_description;
use spherical_core::exactgeom::rational::{dot, parse_q, primitive, q, same_ray, QVec, Q};
use spherical_core::exactgeom::{Cone, LpResult, Polyhedron};
use spherical_core::rootsystems::RootSystem;

use num_traits::{Signed, Zero};

pub fn qs(xs: &[&str]) -> QVec {
    xs.iter().map(|x| parse_q(x).unwrap()).collect()
}

pub fn qi(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| q(x)).collect()
}

/// Luna data of a homogeneous space, in local coordinates.
#[derive(Clone, Debug)]
pub struct Template {
    pub name: &'static str,
    pub blocks: Vec<&'static str>,
    pub root_rank: usize,
    pub torus: usize,
    pub sp: Vec<usize>,
    /// Weights: simple-root coordinates, then torus coordinates.
    pub m_basis: Vec<QVec>,
    /// In `M` coordinates.
    pub sigma: Vec<Vec<i64>>,
    pub type_a: Vec<(&'static str, Vec<usize>, Vec<i64>)>,
}

pub fn templates() -> Vec<Template> {
    let t = |name, blocks: Vec<&'static str>, root_rank, torus, sp: Vec<usize>, m: Vec<QVec>, sigma: Vec<Vec<i64>>, a| Template {
        name,
        blocks,
        root_rank,
        torus,
        sp,
        m_basis: m,
        sigma,
        type_a: a,
    };
    vec![
        t("torus", vec![], 0, 1, vec![], vec![qs(&["1"])], vec![], vec![]),
        t("SL2/T", vec!["A1"], 1, 0, vec![], vec![qs(&["1"])], vec![vec![1]], vec![("Dp", vec![0], vec![1]), ("Dm", vec![0], vec![1])]),
        t("SL2/N(T)", vec!["A1"], 1, 0, vec![], vec![qs(&["2"])], vec![vec![1]], vec![]),
        t("SL2/U", vec!["A1"], 1, 0, vec![], vec![qs(&["1/2"])], vec![], vec![]),
        t("SL2xC*/a+e", vec!["A1"], 1, 1, vec![], vec![qs(&["1", "1"])], vec![], vec![]),
        t("SL2xC*/w+e", vec!["A1"], 1, 1, vec![], vec![qs(&["1/2", "1"])], vec![], vec![]),
        t("conics", vec!["A2"], 2, 0, vec![], vec![qs(&["2", "0"]), qs(&["0", "2"])], vec![vec![1, 0], vec![0, 1]], vec![]),
        t("SL3/U", vec!["A2"], 2, 0, vec![], vec![qs(&["2/3", "1/3"]), qs(&["1/3", "2/3"])], vec![], vec![]),
        t(
            "example2",
            vec!["A1", "A1"],
            2,
            1,
            vec![],
            vec![qs(&["1/2", "0", "1"]), qs(&["1/2", "0", "-1"]), qs(&["0", "1", "0"])],
            vec![vec![1, 1, 0], vec![0, 0, 1]],
            vec![("E1", vec![0], vec![1, 0, 0]), ("E2", vec![0], vec![0, 1, 0]), ("E3", vec![1], vec![0, 0, 1]), ("E4", vec![1], vec![0, 0, 1])],
        ),
        t("SL3/GL2", vec!["A2"], 2, 0, vec![], vec![qs(&["1", "1"])], vec![vec![1]], vec![]),
        t("SL2xSL2/SL2", vec!["A1", "A1"], 2, 0, vec![], vec![qs(&["1", "1"])], vec![vec![1]], vec![]),
        t("SL3/P2'", vec!["A2"], 2, 0, vec![1], vec![qs(&["2/3", "1/3"])], vec![], vec![]),
        t("SL2/B", vec!["A1"], 1, 0, vec![0], vec![], vec![], vec![]),
    ]
}

/// The product of homogeneous spaces.
pub fn product(parts: &[&Template]) -> LunaEmbeddingData {
    let root_rank: usize = parts.iter().map(|p| p.root_rank).sum();
    let torus: usize = parts.iter().map(|p| p.torus).sum();
    let m_rank: usize = parts.iter().map(|p| p.m_basis.len()).sum();
    let mut name: Vec<String> = parts.iter().flat_map(|p| p.blocks.iter().map(|b| b.to_string())).collect();
    if torus > 0 {
        name.push(format!("T{torus}"));
    }
    let rs = RootSystem::parse(&name.join("x")).unwrap();
    let (mut r_off, mut t_off, mut m_off) = (0, 0, 0);
    let mut m_basis = Vec::new();
    let mut sigma = Vec::new();
    let mut sp = BTreeSet::new();
    let mut type_a = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        for w in &p.m_basis {
            let mut g = vec![Q::zero(); root_rank + torus];
            for i in 0..p.root_rank {
                g[r_off + i] = w[i].clone();
            }
            for i in 0..p.torus {
                g[root_rank + t_off + i] = w[p.root_rank + i].clone();
            }
            m_basis.push(g);
        }
        let place = |local: &[i64]| -> QVec {
            let mut v = vec![Q::zero(); m_rank];
            for (i, &x) in local.iter().enumerate() {
                v[m_off + i] = q(x);
            }
            v
        };
        sigma.extend(p.sigma.iter().map(|s| place(s)));
        sp.extend(p.sp.iter().map(|i| r_off + i));
        for (label, moved, rho) in &p.type_a {
            let label = if parts.len() > 1 { format!("{label}f{k}") } else { label.to_string() };
            type_a.push((label, moved.iter().map(|i| r_off + i).collect(), place(rho)));
        }
        r_off += p.root_rank;
        t_off += p.torus;
        m_off += p.m_basis.len();
    }
    LunaEmbeddingData::with_type_a(rs, sp, m_basis, sigma, type_a)
}

/// A product of one to three templates with root rank and `M` rank at most 3.
pub fn random_data(rng: &mut ChaCha8Rng) -> (String, LunaEmbeddingData) {
    let all = templates();
    loop {
        let k = rng.gen_range(1..=3);
        let parts: Vec<&Template> = (0..k).map(|_| all.choose(rng).unwrap()).collect();
        let root: usize = parts.iter().map(|p| p.root_rank).sum();
        let m: usize = parts.iter().map(|p| p.m_basis.len()).sum();
        if root > 3 || m > 3 || m == 0 {
            continue;
        }
        let name = parts.iter().map(|p| p.name).collect::<Vec<_>>().join(" * ");
        return (name, product(&parts));
    }
}

fn spans_everything(n: usize, pts: &[QVec]) -> bool {
    let h = Cone::new(n, pts.to_vec()).hrep().clone();
    h.equations.is_empty() && h.inequalities.is_empty()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> QVec {
    (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()
}

/// The face fan of a random polytope whose vertices are valuations and colors,
/// colored by a random set of colors.
pub fn random_complete_fan(rng: &mut ChaCha8Rng, e: &LunaEmbeddingData) -> Option<ColoredFan> {
    let n = e.rank();
    let v = valuation_cone(e);
    let mut valuations: Vec<QVec> = Vec::new();
    let wanted = rng.gen_range(1..=n + 2);
    for _ in 0..200 {
        if valuations.len() >= wanted {
            break;
        }
        let x = random_vector(rng, n);
        if x.iter().all(Zero::is_zero) || !v.contains(&x) {
            continue;
        }
        let x = primitive(&x).unwrap();
        if !valuations.contains(&x) {
            valuations.push(x);
        }
    }
    let colored: Vec<_> = e.colors.iter().filter(|c| c.rho.iter().any(|x| !x.is_zero())).collect();
    let mut used: BTreeSet<String> = colored.iter().filter(|_| rng.gen_bool(0.6)).map(|c| c.label.clone()).collect();
    let points = |vals: &[QVec], used: &BTreeSet<String>| -> Vec<QVec> {
        let mut p = vals.to_vec();
        p.extend(colored.iter().filter(|c| used.contains(&c.label)).map(|c| c.rho.clone()));
        p
    };
    if !spans_everything(n, &points(&valuations, &used)) {
        used.extend(colored.iter().map(|c| c.label.clone()));
    }
    if !spans_everything(n, &points(&valuations, &used)) {
        let vrep = v.vrep();
        for r in vrep.rays.iter().chain(&vrep.lineality) {
            valuations.push(r.clone());
        }
        for l in &vrep.lineality {
            valuations.push(l.iter().map(|x| -x).collect());
        }
    }
    let pts = points(&valuations, &used);
    if !spans_everything(n, &pts) {
        return None;
    }
    let scaled: Vec<QVec> = pts
        .iter()
        .map(|p| {
            let s = q(rng.gen_range(1..=3));
            p.iter().map(|x| x * &s).collect()
        })
        .collect();
    let polar = Polyhedron::new(n, scaled.iter().map(|p| (p.iter().map(|x| -x).collect(), q(-1))).collect()).unwrap();
    let mut cones = Vec::new();
    for y in polar.vertices() {
        let gens: Vec<QVec> = scaled.iter().filter(|p| dot(p, &y) == q(1)).cloned().collect();
        let c = Cone::new(n, gens.clone());
        let colors = colored.iter().filter(|d| used.contains(&d.label) && c.contains(&d.rho)).map(|d| d.label.clone()).collect();
        cones.push(ColoredCone::new(n, gens, colors));
    }
    let mut labels: Vec<(String, QVec)> = Vec::new();
    for x in &valuations {
        if !labels.iter().any(|(_, w)| same_ray(w, x)) {
            labels.push((format!("X{}", labels.len() + 1), primitive(x).unwrap()));
        }
    }
    ColoredFan::from_cones(e, cones, false, labels).ok()
}

/// The fan with some maximal cones (and the faces only they carry) removed.
pub fn drop_maximal_cones(rng: &mut ChaCha8Rng, e: &LunaEmbeddingData, f: &ColoredFan) -> ColoredFan {
    let keep: Vec<ColoredCone> = f.maximal_cones().into_iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    ColoredFan::from_cones(e, keep, false, f.ray_labels.clone()).unwrap()
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub data: LunaEmbeddingData,
    pub fan: ColoredFan,
}

/// `count` valid complete colored fans, reproducible from `seed`.
pub fn complete_corpus(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let (name, data) = random_data(&mut rng);
        assert!(data.validate().is_empty(), "{name}: {:?}", data.validate());
        let Some(fan) = random_complete_fan(&mut rng, &data) else { continue };
        let problems = validate_fan(&data, &fan);
        assert!(problems.is_empty(), "{name}: {problems:?}");
        assert!(is_complete(&data, &fan), "{name}");
        out.push(Instance { name, data, fan });
    }
    out
}

/// A random instance `max <c, x>` over `P ∩ T` in dimension `dim`.
pub fn random_lp(rng: &mut ChaCha8Rng, dim: usize) -> (Polyhedron, Cone, QVec) {
    let rows = rng.gen_range(0..=dim + 3);
    let hs: Vec<(QVec, Q)> = (0..rows).map(|_| (random_vector(rng, dim), q(rng.gen_range(-3..=3)))).collect();
    let gens = rng.gen_range(0..=dim + 1);
    let mut t: Vec<QVec> = (0..gens).map(|_| random_vector(rng, dim)).collect();
    if rng.gen_bool(0.25) {
        t = Cone::full(dim).generators().to_vec();
    }
    let c = random_vector(rng, dim);
    (Polyhedron::new(dim, hs).unwrap(), Cone::new(dim, t), c)
}

/// `sup <c, x>` over `P ∩ T` from the vertices and rays of the homogenized cone.
pub fn enumeration_oracle(p: &Polyhedron, t: &Cone, c: &[Q]) -> LpResult {
    let d = p.dim();
    let mut ineqs: Vec<QVec> = p
        .halfspaces()
        .iter()
        .map(|(a, b)| {
            let mut row = a.clone();
            row.push(-b.clone());
            row
        })
        .collect();
    let h = t.hrep();
    ineqs.extend(h.inequalities.iter().map(|f| {
        let mut row = f.clone();
        row.push(Q::zero());
        row
    }));
    let eqs: Vec<QVec> = h
        .equations
        .iter()
        .map(|f| {
            let mut row = f.clone();
            row.push(Q::zero());
            row
        })
        .collect();
    let mut last = vec![Q::zero(); d + 1];
    last[d] = q(1);
    ineqs.push(last);
    let v = double_description(d + 1, &eqs, &ineqs);
    let mut best: Option<(Q, QVec)> = None;
    let mut unbounded = false;
    for l in &v.lineality {
        if !dot(&l[..d], c).is_zero() {
            unbounded = true;
        }
    }
    for r in &v.rays {
        let x = &r[..d];
        if r[d].is_positive() {
            let pt: QVec = x.iter().map(|a| a / &r[d]).collect();
            let val = dot(&pt, c);
            if best.as_ref().is_none_or(|(b, _)| val > *b) {
                best = Some((val, pt));
            }
        } else if dot(x, c).is_positive() {
            unbounded = true;
        }
    }
    match best {
        None => LpResult::Infeasible,
        Some(_) if unbounded => LpResult::Unbounded,
        Some((value, argmax)) => LpResult::Value { value, argmax },
    }
}
