//! From a complete colored fan to a complete Q-Gorenstein one with the same p-tilde.
//!
//! Stages: `F` (input), `F2` (lift to `N + Z` after adding `kappa` to `M`),
//! `F3` (completion with the poles `Y+`, `Y-`), `F4` (colors made into rays),
//! `F5` (triangulated and pruned). When a multiple of `kappa` already lies in `M`
//! the lift and completion are skipped and `F3 = F`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::coloredfan::{
    colored_star_subdivision, is_complete, is_genuine, is_q_gorenstein, valuation_cone, wp_tilde_embedding, ColoredCone,
    ColoredFan, EmbColor, LunaEmbeddingData, QGorenstein,
};
use crate::error::{Error, Result};
use crate::exactgeom::linalg::in_span;
use crate::exactgeom::rational::{neg, q, same_ray, unit};
use crate::exactgeom::subdivision::{regular_subdivision, Side, VectorConfiguration};
use crate::exactgeom::triangulate::triangulate_cone;
use crate::exactgeom::{Cone, QVec, Q};
use crate::skeleton::Wp;

pub const POLE_PLUS: &str = "Y+";
pub const POLE_MINUS: &str = "Y-";

#[derive(Clone, Debug)]
pub struct Stage {
    pub name: String,
    pub fan: ColoredFan,
    pub wp: Wp,
}

#[derive(Clone, Debug)]
pub struct PipelineTrace {
    pub input: LunaEmbeddingData,
    /// Data of the output fan; equal to `input` unless `augmented`.
    pub data: LunaEmbeddingData,
    pub augmented: bool,
    pub stages: Vec<Stage>,
    pub output_complete: bool,
    pub certificates: QGorenstein,
}

impl PipelineTrace {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn output(&self) -> &ColoredFan {
        &self.stages.last().expect("a trace has stages").fan
    }

    pub fn wp_preserved(&self) -> bool {
        self.stages.windows(2).all(|w| w[0].wp == w[1].wp)
    }
}

/// No positive multiple of `kappa` lies in `M`.
pub fn needs_augmentation(e: &LunaEmbeddingData) -> bool {
    !in_span(&e.m_basis, &e.root_system.kappa(&e.sp))
}

/// `M' = M + Z kappa`, with `rho'(D) = (rho(D), m_D)`.
pub fn augment_kappa(e: &LunaEmbeddingData) -> Result<LunaEmbeddingData> {
    if !needs_augmentation(e) {
        return Err(Error::Precondition("a multiple of kappa already lies in M".into()));
    }
    let mut m_basis = e.m_basis.clone();
    m_basis.push(e.root_system.kappa(&e.sp));
    let sigma = e
        .sigma
        .iter()
        .map(|g| g.iter().cloned().chain([Q::zero()]).collect())
        .collect();
    let colors = e
        .colors
        .iter()
        .map(|c| EmbColor { rho: c.rho.iter().cloned().chain([q(c.m)]).collect(), ..c.clone() })
        .collect();
    let out = LunaEmbeddingData { m_basis, sigma, colors, ..e.clone() };
    out.require_valid()?;
    Ok(out)
}

fn lifted(v: &[Q], h: Q) -> QVec {
    v.iter().cloned().chain([h]).collect()
}

/// Colorless extreme rays of a colored cone.
fn invariant_rays_of(e: &LunaEmbeddingData, c: &ColoredCone) -> Vec<QVec> {
    c.rays()
        .into_iter()
        .filter(|r| !c.colors.iter().any(|l| e.color(l).is_some_and(|d| same_ray(&d.rho, r))))
        .collect()
}

/// `F2`: every cone lifted to `cone(rho'(D_i))`, with its faces.
pub fn lift_fan(e: &LunaEmbeddingData, e2: &LunaEmbeddingData, f: &ColoredFan) -> Result<ColoredFan> {
    let n2 = e2.rank();
    let mut cones = Vec::new();
    for c in &f.cones {
        let mut gens: Vec<QVec> = invariant_rays_of(e, c).iter().map(|r| lifted(r, Q::one())).collect();
        for l in &c.colors {
            let d = e2.color(l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            gens.push(d.rho.clone());
        }
        cones.push(ColoredCone::new(n2, gens, c.colors.clone()));
    }
    let labels = f.invariant_rays().into_iter().map(|(l, r)| (l, lifted(&r, Q::one()))).collect();
    ColoredFan::from_cones(e2, cones, false, labels)
}

/// `F3`: `F2` together with `sigma' + Q>=0 (0,...,0,+1)` for genuine upper cells and
/// `sigma' + Q>=0 (0,...,0,-1)` for genuine lower cells of every cone of `F`.
pub fn complete_with_poles(
    e: &LunaEmbeddingData,
    e2: &LunaEmbeddingData,
    f: &ColoredFan,
    f2: &ColoredFan,
) -> Result<ColoredFan> {
    let n = e.rank();
    let n2 = e2.rank();
    let v = valuation_cone(e);
    let up = unit(n2, n2 - 1);
    let down = neg(&up);
    let mut cones: Vec<ColoredCone> = f2.cones.clone();
    for c in &f.cones {
        let mut items: Vec<(String, QVec)> = Vec::new();
        let mut heights: Vec<Q> = Vec::new();
        let mut color_items: BTreeSet<String> = BTreeSet::new();
        for r in invariant_rays_of(e, c) {
            items.push((format!("ray:{}", f.ray_label(&r)), r));
            heights.push(Q::one());
        }
        for l in &c.colors {
            let d = e.color(l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            items.push((l.clone(), d.rho.clone()));
            heights.push(q(d.m));
            color_items.insert(l.clone());
        }
        let config = VectorConfiguration::new(n, items)?.with_lift(heights)?;
        let lifted_vecs = config.lifted();
        for (side, pole) in [(Side::Upper, &up), (Side::Lower, &down)] {
            for cell in regular_subdivision(&config, side)?.cells {
                let idx: Vec<usize> =
                    cell.iter().map(|l| config.labels.iter().position(|x| x == l).expect("cell label")).collect();
                let flat = Cone::new(n, idx.iter().map(|&i| config.vectors[i].clone()).collect());
                if !is_genuine(&v, &flat) {
                    continue;
                }
                let mut gens: Vec<QVec> = idx.iter().map(|&i| lifted_vecs[i].clone()).collect();
                gens.push(pole.clone());
                let colors = cell.iter().filter(|l| color_items.contains(*l)).cloned().collect();
                cones.push(ColoredCone::new(n2, gens, colors));
            }
        }
    }
    let mut labels = f2.ray_labels.clone();
    labels.push((POLE_PLUS.into(), up));
    labels.push((POLE_MINUS.into(), down));
    ColoredFan::from_cones(e2, cones, false, labels)
}

/// Colors used by some cone without spanning one of its rays.
pub fn off_ray_colors(e: &LunaEmbeddingData, f: &ColoredFan) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for c in &f.cones {
        let rays = c.rays();
        for l in &c.colors {
            if let Some(d) = e.color(l) {
                if !rays.iter().any(|r| same_ray(r, &d.rho)) {
                    out.insert(l.clone());
                }
            }
        }
    }
    out
}

/// `F4`: star subdivisions at the off-ray colors, in ascending label order.
pub fn colors_to_rays(e: &LunaEmbeddingData, f: &ColoredFan) -> Result<ColoredFan> {
    let mut cur = f.clone();
    for d in off_ray_colors(e, f) {
        let rho = &e.color(&d).expect("color of the fan").rho;
        // a color whose vector left the support is no longer used by any cone
        if cur.cones.iter().any(|c| c.cone.contains(rho)) {
            cur = colored_star_subdivision(e, &cur, &d)?;
        }
    }
    Ok(cur)
}

/// `F5`: placing triangulations of the maximal cones with one global ray order,
/// keeping the genuine simplices and their genuine faces.
pub fn triangulate_and_prune(e: &LunaEmbeddingData, f: &ColoredFan) -> Result<ColoredFan> {
    let n = e.rank();
    let mut simplices = Vec::new();
    for c in f.maximal_cones() {
        let marked = c.rays();
        for s in triangulate_cone(&c.cone, &marked)? {
            let cone = Cone::new(n, s.iter().map(|&i| marked[i].clone()).collect());
            let colors = c
                .colors
                .iter()
                .filter(|l| e.color(l).is_some_and(|d| cone.contains(&d.rho)))
                .cloned()
                .collect();
            simplices.push(ColoredCone { cone, colors });
        }
    }
    ColoredFan::from_cones(e, simplices, false, f.ray_labels.clone())
}

/// Runs every stage on a complete fan and records the p-tilde value of each.
pub fn gorensteinify(e: &LunaEmbeddingData, f: &ColoredFan) -> Result<PipelineTrace> {
    e.require_valid()?;
    if !is_complete(e, f) {
        return Err(Error::Precondition("the input fan is not complete".into()));
    }
    let stage = |name: &str, data: &LunaEmbeddingData, fan: ColoredFan| -> Result<Stage> {
        let wp = wp_tilde_embedding(data, &fan)?;
        Ok(Stage { name: name.into(), fan, wp })
    };
    let mut stages = vec![stage("F", e, f.clone())?];
    let augmented = needs_augmentation(e);
    let data = if augmented {
        let e2 = augment_kappa(e)?;
        let f2 = lift_fan(e, &e2, f)?;
        let f3 = complete_with_poles(e, &e2, f, &f2)?;
        stages.push(stage("F2", &e2, f2)?);
        stages.push(stage("F3", &e2, f3)?);
        e2
    } else {
        stages.push(stage("F3", e, f.clone())?);
        e.clone()
    };
    let f4 = colors_to_rays(&data, &stages.last().expect("F3").fan)?;
    let f5 = triangulate_and_prune(&data, &f4)?;
    stages.push(stage("F4", &data, f4)?);
    stages.push(stage("F5", &data, f5)?);
    let out = &stages.last().expect("F5").fan;
    let output_complete = is_complete(&data, out);
    let certificates = is_q_gorenstein(&data, out)?;
    Ok(PipelineTrace { input: e.clone(), data, augmented, stages, output_complete, certificates })
}
