//! Luna data of an embedding, colored cones and colored fans.
//!
//! `M` is given by a basis of weights; spherical roots and characters are
//! coordinates in that basis and elements of `N` are coordinates in the dual basis.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactgeom::linalg::{rank, solve};
use crate::exactgeom::lp::{lp_max, LpResult};
use crate::exactgeom::rational::{content, dot, fmt_vec, is_integral, is_zero, neg, primitive_unchecked, q, same_ray, unit, zeros};
use crate::exactgeom::{Cone, QVec, Q};
use crate::luna::{check_axioms, derived_colors, to_weights, ColorType, TypeAView, Violation};
use crate::rootsystems::RootSystem;
use crate::skeleton::{wp_from_program, InvariantDivisor, SphericalSkeleton, TypeAColor, Wp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbColor {
    pub label: String,
    pub kind: ColorType,
    pub moved_by: BTreeSet<usize>,
    pub rho: QVec,
    pub m: i64,
}

/// Root system, `Sp`, the lattice `M`, `Sigma` and the full set of colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LunaEmbeddingData {
    pub root_system: RootSystem,
    pub sp: BTreeSet<usize>,
    /// Basis of `M` as weights.
    pub m_basis: Vec<QVec>,
    /// Spherical roots in `M` coordinates.
    pub sigma: Vec<QVec>,
    pub colors: Vec<EmbColor>,
}

/// Outcome of comparing the directions of two colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codirection {
    NotCodirectional,
    TypeAEqual,
    TypeBProportional,
    /// Codirectional in a way no valid datum allows.
    Forbidden,
}

impl LunaEmbeddingData {
    /// Data whose 2a and b colors are generated from `(Sigma, Sp, M)`.
    pub fn with_type_a(
        root_system: RootSystem,
        sp: BTreeSet<usize>,
        m_basis: Vec<QVec>,
        sigma: Vec<QVec>,
        type_a: Vec<(String, BTreeSet<usize>, QVec)>,
    ) -> Self {
        let mut colors: Vec<EmbColor> = type_a
            .into_iter()
            .map(|(label, moved_by, rho)| EmbColor { label, kind: ColorType::A, moved_by, rho, m: 1 })
            .collect();
        let weights = to_weights(&m_basis, root_system.weight_dim(), &sigma);
        colors.extend(derived_colors(&root_system, &sp, &weights, &m_basis).into_iter().map(|c| EmbColor {
            label: c.label,
            kind: c.kind,
            moved_by: c.moved_by,
            rho: c.rho,
            m: c.m,
        }));
        LunaEmbeddingData { root_system, sp, m_basis, sigma, colors }
    }

    pub fn rank(&self) -> usize {
        self.m_basis.len()
    }

    pub fn sigma_weights(&self) -> Vec<QVec> {
        to_weights(&self.m_basis, self.root_system.weight_dim(), &self.sigma)
    }

    pub fn color(&self, label: &str) -> Option<&EmbColor> {
        self.colors.iter().find(|c| c.label == label)
    }

    fn rho_of(&self, label: &str) -> Result<&QVec> {
        self.color(label).map(|c| &c.rho).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn rplus_diff(&self) -> usize {
        self.root_system.rplus_diff(&self.sp)
    }

    /// Every violated condition; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let rs = &self.root_system;
        let (wd, n) = (rs.weight_dim(), self.rank());
        if self.m_basis.iter().any(|b| b.len() != wd) {
            v.push(Violation::new("shape", format!("basis of M must consist of weights of length {wd}")));
            return v;
        }
        if rank(&self.m_basis) < n {
            v.push(Violation::new("shape", "basis of M is linearly dependent"));
        }
        for g in &self.sigma {
            if g.len() != n {
                v.push(Violation::new("shape", format!("spherical root {} is not in M coordinates", fmt_vec(g))));
                return v;
            }
            if !is_integral(g) || content(g) != One::one() {
                v.push(Violation::new("Sigma", format!("spherical root {} is not primitive in M", fmt_vec(g))));
            }
        }
        for c in &self.colors {
            if c.rho.len() != n {
                v.push(Violation::new("shape", format!("rho({}) has length {}, expected {n}", c.label, c.rho.len())));
                return v;
            }
            if !is_integral(&c.rho) {
                v.push(Violation::new("N", format!("rho({}) = {} is not in N", c.label, fmt_vec(&c.rho))));
            }
            if c.kind == ColorType::A && c.m != 1 {
                v.push(Violation::new("m", format!("type-a color {} must have m = 1", c.label)));
            }
        }
        let type_a: Vec<TypeAView<'_>> = self
            .colors
            .iter()
            .filter(|c| c.kind == ColorType::A)
            .map(|c| TypeAView { label: &c.label, moved_by: &c.moved_by, rho: &c.rho })
            .collect();
        v.extend(check_axioms(rs, &self.sp, &self.m_basis, &self.sigma, &type_a, true));

        let expected: BTreeMap<String, EmbColor> = derived_colors(rs, &self.sp, &self.sigma_weights(), &self.m_basis)
            .into_iter()
            .map(|c| (c.label.clone(), EmbColor { label: c.label, kind: c.kind, moved_by: c.moved_by, rho: c.rho, m: c.m }))
            .collect();
        let given: BTreeMap<String, &EmbColor> = self
            .colors
            .iter()
            .filter(|c| c.kind != ColorType::A)
            .map(|c| (c.label.clone(), c))
            .collect();
        for (l, e) in &expected {
            match given.get(l) {
                None => v.push(Violation::new("colors", format!("missing {} color {l}", e.kind))),
                Some(g) if *g != e => v.push(Violation::new(
                    "colors",
                    format!("{l} differs from the color determined by Sigma and Sp (rho {}, m {})", fmt_vec(&e.rho), e.m),
                )),
                _ => {}
            }
        }
        for l in given.keys() {
            if !expected.contains_key(l) {
                v.push(Violation::new("colors", format!("{l} is not a color of type 2a or b of this datum")));
            }
        }
        let mut seen = BTreeSet::new();
        for c in &self.colors {
            if !seen.insert(c.label.as_str()) {
                v.push(Violation::new("labels", format!("color label {} is used twice", c.label)));
            }
        }
        for (i, a) in self.colors.iter().enumerate() {
            for b in &self.colors[i + 1..] {
                if classify(a, b) == Codirection::Forbidden {
                    v.push(Violation::new("codirectional", format!("{} and {} are codirectional", a.label, b.label)));
                }
            }
        }
        v
    }

    pub fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSkeleton(v.iter().map(ToString::to_string).collect()))
        }
    }
}

fn classify(a: &EmbColor, b: &EmbColor) -> Codirection {
    if is_zero(&a.rho) || is_zero(&b.rho) || !same_ray(&a.rho, &b.rho) {
        return Codirection::NotCodirectional;
    }
    match (a.kind, b.kind) {
        (ColorType::A, ColorType::A) if a.rho == b.rho => Codirection::TypeAEqual,
        (ColorType::B, ColorType::B) => Codirection::TypeBProportional,
        _ => Codirection::Forbidden,
    }
}

pub fn codirectional_classify(e: &LunaEmbeddingData, d1: &str, d2: &str) -> Result<Codirection> {
    if d1 == d2 {
        return Err(Error::Precondition("the two colors must differ".into()));
    }
    let a = e.color(d1).ok_or_else(|| Error::UnknownLabel(d1.to_string()))?;
    let b = e.color(d2).ok_or_else(|| Error::UnknownLabel(d2.to_string()))?;
    Ok(classify(a, b))
}

/// `V = {v : <v, gamma> <= 0 for gamma in Sigma}`.
pub fn valuation_cone(e: &LunaEmbeddingData) -> Cone {
    let ineqs: Vec<QVec> = e.sigma.iter().map(|g| neg(g)).collect();
    Cone::from_hrep(e.rank(), &[], &ineqs)
}

/// A cone in `N_Q` with a set of color labels.
#[derive(Clone, Debug)]
pub struct ColoredCone {
    pub cone: Cone,
    pub colors: BTreeSet<String>,
}

impl ColoredCone {
    pub fn new(dim: usize, generators: Vec<QVec>, colors: BTreeSet<String>) -> Self {
        ColoredCone { cone: Cone::new(dim, generators), colors }
    }

    pub fn zero(dim: usize) -> Self {
        ColoredCone::new(dim, Vec::new(), BTreeSet::new())
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// Primitive extreme rays, sorted; the raw generators if the cone has lineality.
    pub fn rays(&self) -> Vec<QVec> {
        if self.cone.is_strictly_convex() {
            self.cone.extreme_rays()
        } else {
            let mut g = self.cone.generators().to_vec();
            g.sort();
            g
        }
    }

    /// Identity of the colored cone: its rays and its colors.
    pub fn key(&self) -> (Vec<QVec>, BTreeSet<String>) {
        (self.rays(), self.colors.clone())
    }

    /// The same colored cone with its extreme rays as generators.
    pub fn normalized(&self) -> ColoredCone {
        ColoredCone::new(self.dim(), self.rays(), self.colors.clone())
    }
}

impl PartialEq for ColoredCone {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for ColoredCone {}

/// A face-closed collection of colored cones.
///
/// `abstract_cones` allows cones whose relative interior misses the valuation cone.
#[derive(Clone, Debug)]
pub struct ColoredFan {
    pub dim: usize,
    pub cones: Vec<ColoredCone>,
    pub abstract_cones: bool,
    /// Names of invariant rays by primitive generator.
    pub ray_labels: Vec<(String, QVec)>,
}

impl PartialEq for ColoredFan {
    fn eq(&self, other: &Self) -> bool {
        let keys = |f: &ColoredFan| f.cones.iter().map(ColoredCone::key).collect::<BTreeSet<_>>();
        self.dim == other.dim && keys(self) == keys(other)
    }
}

fn induced_colors(e: &LunaEmbeddingData, colors: &BTreeSet<String>, face: &Cone) -> BTreeSet<String> {
    colors
        .iter()
        .filter(|l| e.color(l).is_some_and(|c| face.contains(&c.rho)))
        .cloned()
        .collect()
}

/// All faces of a strictly convex colored cone with their induced colorings.
pub fn colored_faces(e: &LunaEmbeddingData, c: &ColoredCone) -> Result<Vec<ColoredCone>> {
    let rays = c.cone.extreme_rays();
    let faces = c.cone.faces()?;
    Ok(faces
        .into_iter()
        .map(|idx| {
            let gens: Vec<QVec> = idx.iter().map(|&i| rays[i].clone()).collect();
            let cone = Cone::new(c.dim(), gens);
            let colors = induced_colors(e, &c.colors, &cone);
            ColoredCone { cone, colors }
        })
        .collect())
}

/// `C° ∩ V` is nonempty: some `sum l_i r_i` with all `l_i >= 1` lies in `V`.
pub fn is_genuine(v: &Cone, c: &Cone) -> bool {
    let rays = if c.is_strictly_convex() { c.extreme_rays() } else { c.generators().to_vec() };
    relints_meet(v, &[&rays])
}

/// Whether the relative interiors of the cones spanned by each ray list share a point of `v`.
fn relints_meet(v: &Cone, ray_lists: &[&[QVec]]) -> bool {
    let dim = v.dim();
    let total: usize = ray_lists.iter().map(|r| r.len()).sum();
    let mut ineqs: Vec<(QVec, Q)> = (0..total).map(|i| (unit(total, i), Q::one())).collect();
    let mut eqs: Vec<(QVec, Q)> = Vec::new();
    let first = ray_lists[0];
    let image = |f: &QVec| -> QVec {
        let mut row: QVec = first.iter().map(|r| dot(f, r)).collect();
        row.resize(total, Q::zero());
        row
    };
    let h = v.hrep();
    for f in &h.inequalities {
        ineqs.push((image(f), Q::zero()));
    }
    for f in &h.equations {
        eqs.push((image(f), Q::zero()));
    }
    let mut offset = first.len();
    for other in &ray_lists[1..] {
        for k in 0..dim {
            let mut row = zeros(total);
            for (i, r) in first.iter().enumerate() {
                row[i] = r[k].clone();
            }
            for (j, s) in other.iter().enumerate() {
                row[offset + j] = -s[k].clone();
            }
            eqs.push((row, Q::zero()));
        }
        offset += other.len();
    }
    !matches!(lp_max(total, &ineqs, &eqs, &zeros(total)), LpResult::Infeasible)
}

impl ColoredFan {
    /// The face closure of `cones`, keeping only genuine cones unless `abstract_cones`.
    pub fn from_cones(
        e: &LunaEmbeddingData,
        cones: Vec<ColoredCone>,
        abstract_cones: bool,
        ray_labels: Vec<(String, QVec)>,
    ) -> Result<ColoredFan> {
        let v = valuation_cone(e);
        let mut seen: BTreeMap<(Vec<QVec>, BTreeSet<String>), ColoredCone> = BTreeMap::new();
        for c in &cones {
            if !c.cone.is_strictly_convex() {
                return Err(Error::InvalidFan(vec![format!("cone {} is not strictly convex", fmt_vec_list(&c.rays()))]));
            }
            for f in colored_faces(e, c)? {
                let k = f.key();
                if seen.contains_key(&k) {
                    continue;
                }
                if abstract_cones || is_genuine(&v, &f.cone) {
                    seen.insert(k, f.normalized());
                }
            }
        }
        let mut fan = ColoredFan { dim: e.rank(), cones: seen.into_values().collect(), abstract_cones, ray_labels };
        fan.canonicalize();
        Ok(fan)
    }

    /// Sort cones by dimension, then rays and colors, dropping duplicates.
    pub fn canonicalize(&mut self) {
        let mut keyed: Vec<(usize, (Vec<QVec>, BTreeSet<String>), ColoredCone)> =
            self.cones.drain(..).map(|c| (c.cone.span_dim(), c.key(), c)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        keyed.dedup_by(|a, b| a.1 == b.1);
        self.cones = keyed.into_iter().map(|(_, _, c)| c).collect();
    }

    pub fn position(&self, c: &ColoredCone) -> Option<usize> {
        let k = c.key();
        self.cones.iter().position(|d| d.key() == k)
    }

    /// Cones that are not proper faces of other cones.
    pub fn maximal_cones(&self) -> Vec<&ColoredCone> {
        self.cones
            .iter()
            .filter(|c| {
                !self.cones.iter().any(|d| d.cone.span_dim() > c.cone.span_dim() && d.cone.contains_cone(&c.cone))
            })
            .collect()
    }

    /// Label of the invariant ray through `v`.
    pub fn ray_label(&self, v: &[Q]) -> String {
        self.ray_labels
            .iter()
            .find(|(_, w)| same_ray(w, v))
            .map(|(l, _)| l.clone())
            .unwrap_or_else(|| format!("ray{}", fmt_vec(&primitive_unchecked(v))))
    }

    /// Colorless rays of the fan with their labels and primitive generators.
    pub fn invariant_rays(&self) -> Vec<(String, QVec)> {
        self.cones
            .iter()
            .filter(|c| c.colors.is_empty() && c.cone.span_dim() == 1 && c.cone.is_strictly_convex())
            .map(|c| {
                let r = c.cone.extreme_rays().remove(0);
                (self.ray_label(&r), r)
            })
            .collect()
    }

    /// Sorted labels naming the rays of a cone: invariant labels, or the colors on a ray.
    pub fn generator_labels(&self, e: &LunaEmbeddingData, c: &ColoredCone) -> Vec<String> {
        let mut out = BTreeSet::new();
        for r in c.rays() {
            let on: Vec<&String> =
                c.colors.iter().filter(|l| e.color(l).is_some_and(|d| same_ray(&d.rho, &r))).collect();
            if on.is_empty() {
                out.insert(self.ray_label(&r));
            } else {
                out.extend(on.into_iter().cloned());
            }
        }
        out.into_iter().collect()
    }
}

fn fmt_vec_list(v: &[QVec]) -> String {
    v.iter().map(|x| fmt_vec(x)).collect::<Vec<_>>().join(" ")
}

/// Every violated fan condition; empty means valid.
pub fn validate_fan(e: &LunaEmbeddingData, f: &ColoredFan) -> Vec<Violation> {
    let mut out = Vec::new();
    let v = valuation_cone(e);
    let n = e.rank();
    let mut ok: Vec<usize> = Vec::new();
    for (i, c) in f.cones.iter().enumerate() {
        let name = fmt_vec_list(&c.rays());
        if c.dim() != n {
            out.push(Violation::new("shape", format!("cone {name} lives in dimension {}, expected {n}", c.dim())));
            continue;
        }
        if !c.cone.is_strictly_convex() {
            out.push(Violation::new("convex", format!("cone {name} is not strictly convex")));
            continue;
        }
        let mut good = true;
        for l in &c.colors {
            match e.color(l) {
                None => {
                    out.push(Violation::new("label", format!("cone {name} uses unknown color {l}")));
                    good = false;
                }
                Some(d) if is_zero(&d.rho) => {
                    out.push(Violation::new("color", format!("color {l} of cone {name} has rho = 0")));
                    good = false;
                }
                Some(d) if !c.cone.contains(&d.rho) => {
                    out.push(Violation::new("color", format!("rho({l}) does not lie in cone {name}")));
                    good = false;
                }
                _ => {}
            }
        }
        for r in c.rays() {
            let colored = c.colors.iter().any(|l| e.color(l).is_some_and(|d| same_ray(&d.rho, &r)));
            if !colored && !v.contains(&r) {
                out.push(Violation::new(
                    "provenance",
                    format!("ray {} of cone {name} is neither in V nor spanned by a color", fmt_vec(&r)),
                ));
                good = false;
            }
        }
        if !f.abstract_cones && !is_genuine(&v, &c.cone) {
            out.push(Violation::new("genuine", format!("relative interior of cone {name} misses V")));
            good = false;
        }
        if good {
            ok.push(i);
        }
    }
    let keys: BTreeSet<(Vec<QVec>, BTreeSet<String>)> = f.cones.iter().map(ColoredCone::key).collect();
    for &i in &ok {
        let c = &f.cones[i];
        let Ok(faces) = colored_faces(e, c) else { continue };
        for face in faces {
            if (f.abstract_cones || is_genuine(&v, &face.cone)) && !keys.contains(&face.key()) {
                out.push(Violation::new(
                    "faces",
                    format!("face {} of cone {} is missing", fmt_vec_list(&face.rays()), fmt_vec_list(&c.rays())),
                ));
            }
        }
    }
    let rays: Vec<Vec<QVec>> = f.cones.iter().map(ColoredCone::rays).collect();
    let pairs: Vec<(usize, usize)> =
        ok.iter().enumerate().flat_map(|(a, &i)| ok[a + 1..].iter().map(move |&j| (i, j))).collect();
    let overlapping: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(i, j)| relints_meet(&v, &[&rays[i], &rays[j]]))
        .collect();
    for (i, j) in overlapping {
        out.push(Violation::new(
            "overlap",
            format!(
                "relative interiors of cones {} and {} meet inside V",
                fmt_vec_list(&rays[i]),
                fmt_vec_list(&rays[j])
            ),
        ));
    }
    out
}

/// `V` is contained in the support of the fan.
pub fn is_complete(e: &LunaEmbeddingData, f: &ColoredFan) -> bool {
    let cones: Vec<Cone> = f.maximal_cones().into_iter().map(|c| c.cone.clone()).collect();
    crate::exactgeom::covers(&cones, &valuation_cone(e))
}

/// Per-cone linear functions `f` with `<v, f> = 1` on invariant rays and `<rho(D), f> = m_D` on colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGorenstein {
    pub certificates: Vec<Option<QVec>>,
}

impl QGorenstein {
    pub fn holds(&self) -> bool {
        self.certificates.iter().all(Option::is_some)
    }
}

pub fn is_q_gorenstein(e: &LunaEmbeddingData, f: &ColoredFan) -> Result<QGorenstein> {
    let n = e.rank();
    let mut certificates = Vec::with_capacity(f.cones.len());
    for c in &f.cones {
        let mut rows: Vec<QVec> = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        let colored: Vec<&EmbColor> = c.colors.iter().map(|l| e.color(l).ok_or_else(|| Error::UnknownLabel(l.clone()))).collect::<Result<_>>()?;
        for r in c.rays() {
            if !colored.iter().any(|d| same_ray(&d.rho, &r)) {
                rows.push(r);
                rhs.push(Q::one());
            }
        }
        for d in colored {
            rows.push(d.rho.clone());
            rhs.push(q(d.m));
        }
        certificates.push(solve(&rows, &rhs, n));
    }
    Ok(QGorenstein { certificates })
}

/// The p-tilde value of the embedding: colors and invariant rays over `Q* ∩ cone(Sigma)`.
pub fn wp_tilde_embedding(e: &LunaEmbeddingData, f: &ColoredFan) -> Result<Wp> {
    let n = e.rank();
    let mut data: Vec<(QVec, i64)> = e.colors.iter().map(|c| (c.rho.clone(), c.m)).collect();
    data.extend(f.invariant_rays().into_iter().map(|(_, r)| (r, 1)));
    let t = Cone::new(n, e.sigma.clone());
    let h = t.hrep();
    wp_from_program(n, e.rplus_diff(), &data, &h.inequalities, &h.equations)
}

/// The spherical skeleton: `rho` restricted to `Lambda` and the invariant rays as `Gamma`.
pub fn skeleton_of_embedding(e: &LunaEmbeddingData, f: &ColoredFan) -> Result<SphericalSkeleton> {
    e.require_valid()?;
    let restrict = |r: &QVec| -> QVec { e.sigma.iter().map(|g| dot(r, g)).collect() };
    let type_a = e
        .colors
        .iter()
        .filter(|c| c.kind == ColorType::A)
        .map(|c| TypeAColor { label: c.label.clone(), moved_by: c.moved_by.clone(), rho: restrict(&c.rho) })
        .collect();
    let gamma = f
        .invariant_rays()
        .into_iter()
        .map(|(label, r)| InvariantDivisor { label, rho: restrict(&r) })
        .collect();
    Ok(SphericalSkeleton {
        root_system: e.root_system.clone(),
        sigma: e.sigma_weights(),
        sp: e.sp.clone(),
        type_a,
        gamma,
    })
}

/// Star subdivision at the color `d`: the genuine cones of `F^a(D)`.
pub fn colored_star_subdivision(e: &LunaEmbeddingData, f: &ColoredFan, d: &str) -> Result<ColoredFan> {
    let rho = e.rho_of(d)?.clone();
    if !f.cones.iter().any(|c| c.cone.contains(&rho)) {
        return Err(Error::Precondition(format!("rho({d}) does not lie in the support of the fan")));
    }
    let mut fa: BTreeMap<(Vec<QVec>, BTreeSet<String>), ColoredCone> = BTreeMap::new();
    for c in &f.cones {
        for face in colored_faces(e, c)? {
            fa.entry(face.key()).or_insert_with(|| face.normalized());
        }
    }
    let fa: Vec<ColoredCone> = fa.into_values().collect();
    let n = e.rank();
    let mut out: Vec<ColoredCone> = Vec::new();
    for c in &fa {
        if c.cone.contains(&rho) {
            continue;
        }
        out.push(c.clone());
        if fa.iter().any(|big| big.cone.contains(&rho) && big.cone.contains_cone(&c.cone)) {
            let mut gens = c.rays();
            gens.push(primitive_unchecked(&rho));
            let mut colors = c.colors.clone();
            colors.insert(d.to_string());
            out.push(ColoredCone::new(n, gens, colors).normalized());
        }
    }
    let v = valuation_cone(e);
    out.retain(|c| is_genuine(&v, &c.cone));
    let mut fan = ColoredFan { dim: n, cones: out, abstract_cones: false, ray_labels: f.ray_labels.clone() };
    fan.canonicalize();
    Ok(fan)
}

/// Labels of the divisors containing the orbit of `orbit`: its colors and the invariant rays in it.
pub fn orbit_divisor_set(e: &LunaEmbeddingData, f: &ColoredFan, orbit: &ColoredCone) -> Result<BTreeSet<String>> {
    let idx = f.position(orbit).ok_or_else(|| Error::Precondition("the cone is not in the fan".into()))?;
    let c = &f.cones[idx];
    for l in &c.colors {
        e.rho_of(l)?;
    }
    let mut out = c.colors.clone();
    for (label, r) in f.invariant_rays() {
        if c.cone.contains(&r) {
            out.insert(label);
        }
    }
    Ok(out)
}
