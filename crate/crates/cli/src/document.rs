//! JSON documents: skeletons, embeddings, fans, corpus cases and pipeline traces.
//!
//! Rationals are strings such as `"-3/2"` or `"4"`; plain JSON integers are accepted on input.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Map, Value};
use spherical_core::coloredfan::{validate_fan, ColoredCone, ColoredFan, LunaEmbeddingData, QGorenstein};
use spherical_core::criteria::MfsCase;
use spherical_core::exactgeom::rational::{fmt_q, parse_q};
use spherical_core::exactgeom::{Cone, QVec, Q};
use spherical_core::gorensteinify::{PipelineTrace, Stage};
use spherical_core::luna::ColorType;
use spherical_core::rootsystems::RootSystem;
use spherical_core::skeleton::{InvariantDivisor, SphericalSkeleton, TypeAColor, Wp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocError {
    Syntax { line: usize, column: usize, message: String },
    Schema { path: String, message: String },
    Semantic(Vec<String>),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Syntax { line, column, message } => write!(f, "syntax error at line {line}, column {column}: {message}"),
            DocError::Schema { path, message } => write!(f, "schema violation at {path}: {message}"),
            DocError::Semantic(v) => {
                write!(f, "invalid document:")?;
                for x in v {
                    write!(f, "\n  {x}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for DocError {}

/// A colored fan given by color points only, without Luna data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BareFan {
    pub dim: usize,
    pub colors: Vec<(String, QVec)>,
    pub cones: Vec<(Vec<QVec>, BTreeSet<String>)>,
    pub invariant_rays: Vec<(String, QVec)>,
}

#[derive(Clone, Debug)]
pub enum Document {
    Skeleton(SphericalSkeleton),
    Embedding { data: LunaEmbeddingData, fan: ColoredFan },
    Fan(BareFan),
    MfsCase(MfsCase),
    Trace(PipelineTrace),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Skeleton(_) => "skeleton",
            Document::Embedding { .. } => "embedding",
            Document::Fan(_) => "fan",
            Document::MfsCase(_) => "mfs-case",
            Document::Trace(_) => "trace",
        }
    }
}

struct At<'a> {
    v: &'a Value,
    path: String,
    text: &'a str,
}

type R<T> = std::result::Result<T, DocError>;

impl<'a> At<'a> {
    fn schema<T>(&self, message: impl Into<String>) -> R<T> {
        Err(DocError::Schema { path: self.path.clone(), message: message.into() })
    }

    fn obj(&self, allowed: &[&str]) -> R<&'a Map<String, Value>> {
        let Some(m) = self.v.as_object() else { return self.schema("expected an object") };
        if let Some(k) = m.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(DocError::Schema { path: format!("{}.{k}", self.path), message: "unknown field".into() });
        }
        Ok(m)
    }

    fn child(&self, v: &'a Value, suffix: String) -> At<'a> {
        At { v, path: format!("{}{suffix}", self.path), text: self.text }
    }

    fn opt(&self, name: &str) -> Option<At<'a>> {
        self.v.get(name).filter(|v| !v.is_null()).map(|v| self.child(v, format!(".{name}")))
    }

    fn field(&self, name: &str) -> R<At<'a>> {
        match self.opt(name) {
            Some(a) => Ok(a),
            None => Err(DocError::Schema { path: format!("{}.{name}", self.path), message: "missing field".into() }),
        }
    }

    fn list(&self) -> R<Vec<At<'a>>> {
        let Some(xs) = self.v.as_array() else { return self.schema("expected a list") };
        Ok(xs.iter().enumerate().map(|(i, v)| self.child(v, format!("[{i}]"))).collect())
    }

    fn string(&self) -> R<String> {
        match self.v.as_str() {
            Some(s) => Ok(s.to_string()),
            None => self.schema("expected a string"),
        }
    }

    fn int(&self) -> R<i64> {
        match self.v.as_i64() {
            Some(x) => Ok(x),
            None => self.schema("expected an integer"),
        }
    }

    fn boolean(&self) -> R<bool> {
        match self.v.as_bool() {
            Some(x) => Ok(x),
            None => self.schema("expected true or false"),
        }
    }

    fn rational(&self) -> R<Q> {
        if let Some(i) = self.v.as_i64() {
            return Ok(Q::from_integer(i.into()));
        }
        let Some(s) = self.v.as_str() else { return self.schema("expected a rational string") };
        parse_q(s).map_err(|message| {
            let (line, column) = locate(self.text, &format!("\"{s}\""));
            DocError::Syntax { line, column, message: format!("invalid rational {s:?}: {message}") }
        })
    }

    fn vector(&self, len: Option<usize>) -> R<QVec> {
        let v: QVec = self.list()?.iter().map(At::rational).collect::<R<_>>()?;
        match len {
            Some(n) if v.len() != n => self.schema(format!("expected {n} entries, found {}", v.len())),
            _ => Ok(v),
        }
    }

    fn vectors(&self, len: Option<usize>) -> R<Vec<QVec>> {
        self.list()?.iter().map(|a| a.vector(len)).collect()
    }

    fn root_system(&self) -> R<RootSystem> {
        RootSystem::parse(&self.string()?).or_else(|e| self.schema(e.to_string()))
    }

    fn roots(&self, rs: &RootSystem) -> R<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for a in self.list()? {
            let l = a.string()?;
            match rs.index_of(&l) {
                Ok(i) => {
                    out.insert(i);
                }
                Err(_) => return a.schema(format!("unknown simple root {l:?}")),
            }
        }
        Ok(out)
    }
}

/// 1-based line and column of the first occurrence of `needle`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let Some(pos) = text.find(needle) else { return (0, 0) };
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn unique_labels<'a>(labels: impl IntoIterator<Item = (&'a str, String)>) -> R<()> {
    let mut seen = BTreeSet::new();
    for (l, path) in labels {
        if !seen.insert(l) {
            return Err(DocError::Schema { path, message: format!("duplicate label {l:?}") });
        }
    }
    Ok(())
}

pub fn parse_document(text: &str) -> R<Document> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| DocError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let top = At { v: &v, path: "$".into(), text };
    let kind = top.field("kind")?.string()?;
    let doc = match kind.as_str() {
        "skeleton" => Document::Skeleton(parse_skeleton(&top)?),
        "embedding" => {
            top.obj(&["kind", "root_system", "sp", "m_basis", "sigma", "type_a", "fan"])?;
            let data = parse_data(&top)?;
            let fan = parse_fan(&top.field("fan")?, &data)?;
            Document::Embedding { data, fan }
        }
        "fan" => Document::Fan(parse_bare_fan(&top)?),
        "mfs-case" => {
            let mut stripped = v.clone();
            if let Some(m) = stripped.as_object_mut() {
                m.remove("kind");
            }
            Document::MfsCase(
                serde_json::from_value(stripped).map_err(|e| DocError::Schema { path: "$".into(), message: e.to_string() })?,
            )
        }
        "trace" => Document::Trace(parse_trace(&top)?),
        other => return top.field("kind")?.schema(format!("unknown kind {other:?}")),
    };
    check_semantics(&doc)?;
    Ok(doc)
}

fn check_semantics(doc: &Document) -> R<()> {
    let problems: Vec<String> = match doc {
        Document::Skeleton(s) => s.validate().iter().map(ToString::to_string).collect(),
        Document::Embedding { data, fan } => {
            let mut p: Vec<String> = data.validate().iter().map(ToString::to_string).collect();
            if p.is_empty() {
                p.extend(validate_fan(data, fan).iter().map(ToString::to_string));
            }
            p
        }
        Document::Fan(f) => bare_fan_problems(f),
        Document::MfsCase(_) => Vec::new(),
        Document::Trace(t) => {
            let mut p = Vec::new();
            for s in &t.stages {
                let e = if s.name == "F" { &t.input } else { &t.data };
                p.extend(validate_fan(e, &s.fan).iter().map(|v| format!("stage {}: {v}", s.name)));
            }
            p
        }
    };
    if problems.is_empty() {
        Ok(())
    } else {
        Err(DocError::Semantic(problems))
    }
}

fn parse_skeleton(top: &At) -> R<SphericalSkeleton> {
    top.obj(&["kind", "root_system", "sp", "sigma", "type_a", "invariant"])?;
    let rs = top.field("root_system")?.root_system()?;
    let sp = top.field("sp")?.roots(&rs)?;
    let sigma = top.field("sigma")?.vectors(Some(rs.weight_dim()))?;
    let k = sigma.len();
    let mut type_a = Vec::new();
    if let Some(list) = top.opt("type_a") {
        for a in list.list()? {
            a.obj(&["label", "moved_by", "rho"])?;
            type_a.push(TypeAColor {
                label: a.field("label")?.string()?,
                moved_by: a.field("moved_by")?.roots(&rs)?,
                rho: a.field("rho")?.vector(Some(k))?,
            });
        }
    }
    let mut gamma = Vec::new();
    if let Some(list) = top.opt("invariant") {
        for a in list.list()? {
            a.obj(&["label", "rho"])?;
            gamma.push(InvariantDivisor { label: a.field("label")?.string()?, rho: a.field("rho")?.vector(Some(k))? });
        }
    }
    let labels = type_a
        .iter()
        .enumerate()
        .map(|(i, c)| (c.label.as_str(), format!("$.type_a[{i}].label")))
        .chain(gamma.iter().enumerate().map(|(i, d)| (d.label.as_str(), format!("$.invariant[{i}].label"))));
    unique_labels(labels)?;
    Ok(SphericalSkeleton { root_system: rs, sigma, sp, type_a, gamma })
}

fn parse_data(top: &At) -> R<LunaEmbeddingData> {
    let rs = top.field("root_system")?.root_system()?;
    let sp = top.field("sp")?.roots(&rs)?;
    let m_basis = top.field("m_basis")?.vectors(Some(rs.weight_dim()))?;
    let sigma = top.field("sigma")?.vectors(Some(m_basis.len()))?;
    let mut type_a = Vec::new();
    if let Some(list) = top.opt("type_a") {
        for a in list.list()? {
            a.obj(&["label", "moved_by", "rho"])?;
            type_a.push((a.field("label")?.string()?, a.field("moved_by")?.roots(&rs)?, a.field("rho")?.vector(Some(m_basis.len()))?));
        }
    }
    let data = LunaEmbeddingData::with_type_a(rs, sp, m_basis, sigma, type_a);
    let labels = data.colors.iter().map(|c| (c.label.as_str(), format!("{}.type_a", top.path)));
    unique_labels(labels)?;
    Ok(data)
}

fn parse_rays(at: &At, dim: usize) -> R<Vec<(String, QVec)>> {
    let mut out = Vec::new();
    for a in at.list()? {
        a.obj(&["label", "ray"])?;
        let ray = a.field("ray")?.vector(Some(dim))?;
        if ray.iter().all(|x| *x == Q::from_integer(0.into())) {
            return a.field("ray")?.schema("zero ray");
        }
        out.push((a.field("label")?.string()?, ray));
    }
    Ok(out)
}

fn parse_cone_list(at: &At, dim: usize, known: &dyn Fn(&str) -> bool) -> R<Vec<(Vec<QVec>, BTreeSet<String>)>> {
    let mut out = Vec::new();
    for c in at.list()? {
        c.obj(&["rays", "colors"])?;
        let rays = c.field("rays")?.vectors(Some(dim))?;
        let mut colors = BTreeSet::new();
        if let Some(list) = c.opt("colors") {
            for l in list.list()? {
                let s = l.string()?;
                if !known(&s) {
                    return l.schema(format!("unknown color {s:?}"));
                }
                colors.insert(s);
            }
        }
        out.push((rays, colors));
    }
    Ok(out)
}

fn parse_fan(at: &At, data: &LunaEmbeddingData) -> R<ColoredFan> {
    at.obj(&["cones", "invariant_rays"])?;
    let dim = data.rank();
    let labels = match at.opt("invariant_rays") {
        Some(a) => parse_rays(&a, dim)?,
        None => Vec::new(),
    };
    unique_labels(
        labels
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (l.as_str(), format!("{}.invariant_rays[{i}].label", at.path)))
            .chain(data.colors.iter().map(|c| (c.label.as_str(), format!("{}.invariant_rays", at.path)))),
    )?;
    let known = |l: &str| data.color(l).is_some();
    let listed = parse_cone_list(&at.field("cones")?, dim, &known)?;
    let cones: Vec<ColoredCone> = listed.into_iter().map(|(r, c)| ColoredCone::new(dim, r, c)).collect();
    let fan = ColoredFan::from_cones(data, cones.clone(), false, labels).map_err(|e| DocError::Semantic(vec![e.to_string()]))?;
    let dropped: Vec<String> = cones
        .iter()
        .filter(|c| fan.position(c).is_none())
        .map(|c| format!("(genuine) cone {} has a relative interior missing the valuation cone", rays_text(c)))
        .collect();
    if dropped.is_empty() {
        Ok(fan)
    } else {
        Err(DocError::Semantic(dropped))
    }
}

fn rays_text(c: &ColoredCone) -> String {
    let r: Vec<String> = c.rays().iter().map(|v| spherical_core::exactgeom::rational::fmt_vec(v)).collect();
    format!("cone({})", r.join(", "))
}

fn parse_bare_fan(top: &At) -> R<BareFan> {
    top.obj(&["kind", "dim", "colors", "cones", "invariant_rays"])?;
    let dim = usize::try_from(top.field("dim")?.int()?).or_else(|_| top.field("dim")?.schema("negative dimension"))?;
    let colors = match top.opt("colors") {
        Some(a) => {
            let mut out = Vec::new();
            for c in a.list()? {
                c.obj(&["label", "rho"])?;
                out.push((c.field("label")?.string()?, c.field("rho")?.vector(Some(dim))?));
            }
            out
        }
        None => Vec::new(),
    };
    let invariant_rays = match top.opt("invariant_rays") {
        Some(a) => parse_rays(&a, dim)?,
        None => Vec::new(),
    };
    unique_labels(
        colors
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (l.as_str(), format!("$.colors[{i}].label")))
            .chain(invariant_rays.iter().enumerate().map(|(i, (l, _))| (l.as_str(), format!("$.invariant_rays[{i}].label")))),
    )?;
    let known = |l: &str| colors.iter().any(|(c, _)| c == l);
    let cones = parse_cone_list(&top.field("cones")?, dim, &known)?;
    Ok(BareFan { dim, colors, cones, invariant_rays })
}

fn bare_fan_problems(f: &BareFan) -> Vec<String> {
    let mut out = Vec::new();
    for (i, (rays, colors)) in f.cones.iter().enumerate() {
        let c = Cone::new(f.dim, rays.clone());
        if !c.is_strictly_convex() {
            out.push(format!("(convex) cone {i} is not strictly convex"));
        }
        for l in colors {
            let rho = &f.colors.iter().find(|(c, _)| c == l).expect("checked at parse").1;
            if !c.contains(rho) {
                out.push(format!("(color) rho({l}) is not in cone {i}"));
            }
        }
    }
    out
}

fn parse_stage(at: &At, data: &LunaEmbeddingData) -> R<Stage> {
    at.obj(&["name", "wp", "fan"])?;
    let wp_at = at.field("wp")?;
    let wp = if wp_at.v.as_str() == Some("-inf") { Wp::NegativeInfinity } else { Wp::Value(wp_at.rational()?) };
    Ok(Stage { name: at.field("name")?.string()?, fan: parse_fan(&at.field("fan")?, data)?, wp })
}

fn parse_trace(top: &At) -> R<PipelineTrace> {
    top.obj(&["kind", "input", "augmented", "data", "stages", "output_complete", "certificates"])?;
    let input_at = top.field("input")?;
    input_at.obj(&["root_system", "sp", "m_basis", "sigma", "type_a"])?;
    let input = parse_data(&input_at)?;
    let data_at = top.field("data")?;
    data_at.obj(&["root_system", "sp", "m_basis", "sigma", "type_a"])?;
    let data = parse_data(&data_at)?;
    let mut stages = Vec::new();
    for s in top.field("stages")?.list()? {
        let name = s.field("name")?.string()?;
        stages.push(parse_stage(&s, if name == "F" { &input } else { &data })?);
    }
    if stages.is_empty() {
        return top.field("stages")?.schema("a trace has at least one stage");
    }
    let mut certificates = Vec::new();
    for c in top.field("certificates")?.list()? {
        certificates.push(if c.v.is_null() { None } else { Some(c.vector(Some(data.rank()))?) });
    }
    Ok(PipelineTrace {
        input,
        data,
        augmented: top.field("augmented")?.boolean()?,
        stages,
        output_complete: top.field("output_complete")?.boolean()?,
        certificates: QGorenstein { certificates },
    })
}

fn qv(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect())
}

fn qvs(vs: &[QVec]) -> Value {
    Value::Array(vs.iter().map(|v| qv(v)).collect())
}

fn root_labels(rs: &RootSystem, s: &BTreeSet<usize>) -> Value {
    Value::Array(s.iter().map(|&i| Value::String(rs.labels()[i].clone())).collect())
}

fn data_value(e: &LunaEmbeddingData) -> Map<String, Value> {
    let rs = &e.root_system;
    let type_a: Vec<Value> = e
        .colors
        .iter()
        .filter(|c| c.kind == ColorType::A)
        .map(|c| json!({"label": c.label, "moved_by": root_labels(rs, &c.moved_by), "rho": qv(&c.rho)}))
        .collect();
    let mut m = Map::new();
    m.insert("root_system".into(), json!(rs.name()));
    m.insert("sp".into(), root_labels(rs, &e.sp));
    m.insert("m_basis".into(), qvs(&e.m_basis));
    m.insert("sigma".into(), qvs(&e.sigma));
    m.insert("type_a".into(), Value::Array(type_a));
    m
}

fn fan_value(f: &ColoredFan) -> Value {
    let cones: Vec<Value> = f
        .maximal_cones()
        .into_iter()
        .map(|c| json!({"rays": qvs(&c.rays()), "colors": c.colors.iter().collect::<Vec<_>>()}))
        .collect();
    let rays: Vec<Value> = f.ray_labels.iter().map(|(l, r)| json!({"label": l, "ray": qv(r)})).collect();
    json!({"cones": cones, "invariant_rays": rays})
}

pub fn embedding_value(e: &LunaEmbeddingData, f: &ColoredFan) -> Value {
    let mut m = data_value(e);
    m.insert("kind".into(), json!("embedding"));
    m.insert("fan".into(), fan_value(f));
    Value::Object(m)
}

pub fn skeleton_value(s: &SphericalSkeleton) -> Value {
    let rs = &s.root_system;
    json!({
        "kind": "skeleton",
        "root_system": rs.name(),
        "sp": root_labels(rs, &s.sp),
        "sigma": qvs(&s.sigma),
        "type_a": s.type_a.iter().map(|c| json!({"label": c.label, "moved_by": root_labels(rs, &c.moved_by), "rho": qv(&c.rho)})).collect::<Vec<_>>(),
        "invariant": s.gamma.iter().map(|d| json!({"label": d.label, "rho": qv(&d.rho)})).collect::<Vec<_>>(),
    })
}

pub fn trace_value(t: &PipelineTrace) -> Value {
    let stages: Vec<Value> =
        t.stages.iter().map(|s| json!({"name": s.name, "wp": s.wp.to_string(), "fan": fan_value(&s.fan)})).collect();
    let certs: Vec<Value> = t.certificates.certificates.iter().map(|c| c.as_ref().map_or(Value::Null, |v| qv(v))).collect();
    json!({
        "kind": "trace",
        "input": Value::Object(data_value(&t.input)),
        "augmented": t.augmented,
        "data": Value::Object(data_value(&t.data)),
        "stages": stages,
        "output_complete": t.output_complete,
        "certificates": certs,
    })
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Skeleton(s) => skeleton_value(s),
        Document::Embedding { data, fan } => embedding_value(data, fan),
        Document::Fan(f) => json!({
            "kind": "fan",
            "dim": f.dim,
            "colors": f.colors.iter().map(|(l, r)| json!({"label": l, "rho": qv(r)})).collect::<Vec<_>>(),
            "cones": f.cones.iter().map(|(r, c)| json!({"rays": qvs(r), "colors": c.iter().collect::<Vec<_>>()})).collect::<Vec<_>>(),
            "invariant_rays": f.invariant_rays.iter().map(|(l, r)| json!({"label": l, "ray": qv(r)})).collect::<Vec<_>>(),
        }),
        Document::MfsCase(c) => {
            let mut v = serde_json::to_value(c).expect("plain data serializes");
            if let Some(m) = v.as_object_mut() {
                m.insert("kind".into(), json!("mfs-case"));
            }
            v
        }
        Document::Trace(t) => trace_value(t),
    }
}

pub fn serialize_document(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("values serialize");
    s.push('\n');
    s
}
