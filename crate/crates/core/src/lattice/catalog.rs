use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use serde_json::Value;

use super::class::{Curve, DivClass};
use super::format::{ExtractionFile, IncidenceFile, ModelFile, SingFile};
use super::model::{Extraction, SingPoint, SurfaceModel};
use crate::azflag::FlagSpec;
use crate::error::{Error, Result};
use crate::exactnum::{gcd, Rat};
use crate::localvol::QuotientSing;

const MODEL_FILES: &[&str] = &[
    include_str!("../../catalog/models/P2.json"),
    include_str!("../../catalog/models/P1xP1.json"),
    include_str!("../../catalog/models/Bl1P2.json"),
    include_str!("../../catalog/models/Bl2P2.json"),
    include_str!("../../catalog/models/Bl3P2.json"),
    include_str!("../../catalog/models/Bl4P2.json"),
    include_str!("../../catalog/models/Bl5P2.json"),
    include_str!("../../catalog/models/Bl6P2.json"),
    include_str!("../../catalog/models/Bl7P2.json"),
    include_str!("../../catalog/models/Bl8P2.json"),
    include_str!("../../catalog/models/P1-1-2.json"),
    include_str!("../../catalog/models/P1-1-3.json"),
    include_str!("../../catalog/models/P1-1-4.json"),
    include_str!("../../catalog/models/P1-1-5.json"),
    include_str!("../../catalog/models/P1-1-6.json"),
    include_str!("../../catalog/models/F2_P1-1-2.json"),
    include_str!("../../catalog/models/F3_P1-1-3.json"),
    include_str!("../../catalog/models/F4_P1-1-4.json"),
    include_str!("../../catalog/models/F5_P1-1-5.json"),
    include_str!("../../catalog/models/F6_P1-1-6.json"),
];

const FLAG_FILES: &[&str] = &[
    include_str!("../../catalog/flags/cubic-anticanonical.json"),
    include_str!("../../catalog/flags/P112-ruling.json"),
    include_str!("../../catalog/flags/P112-exceptional.json"),
    include_str!("../../catalog/flags/F1-exceptional.json"),
    include_str!("../../catalog/flags/dP7-line.json"),
];

/// Named surface models and flags. Models are resolved eagerly (extraction
/// targets become shared handles) but validated on access.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    files: BTreeMap<String, ModelFile>,
    aliases: BTreeMap<String, String>,
    models: BTreeMap<String, Arc<SurfaceModel>>,
    flags: BTreeMap<String, FlagSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub rank: usize,
    /// `(−K − Δ)²`.
    pub degree: Rat,
}

impl Catalog {
    /// The shipped catalog.
    pub fn builtin() -> &'static Catalog {
        static BUILTIN: OnceLock<Catalog> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            let mut c = Catalog::default();
            for src in MODEL_FILES {
                let f: ModelFile = serde_json::from_str(src).expect("shipped model file parses");
                c.insert_file(f);
            }
            for src in FLAG_FILES {
                let f: FlagSpec = serde_json::from_str(src).expect("shipped flag file parses");
                c.flags.insert(f.name.clone(), f);
            }
            c.resolve_all().expect("shipped catalog resolves");
            c
        })
    }

    fn insert_file(&mut self, f: ModelFile) {
        self.aliases.retain(|_, target| *target != f.name);
        for a in &f.aliases {
            self.aliases.insert(a.clone(), f.name.clone());
        }
        self.models.remove(&f.name);
        self.files.insert(f.name.clone(), f);
    }

    /// Copy of this catalog with a declarative document added: a single
    /// model, a single flag, or `{"models": [...], "flags": [...]}`.
    /// Entries with an existing name replace it.
    pub fn with_document(&self, json: &str) -> Result<Catalog> {
        let v: Value = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let mut c = self.clone();
        let parse_err = |e: serde_json::Error| Error::Parse(e.to_string());
        let mut models = Vec::new();
        let mut flags = Vec::new();
        if v.get("models").is_some() || v.get("flags").is_some() {
            if let Some(ms) = v.get("models") {
                models = serde_json::from_value::<Vec<ModelFile>>(ms.clone()).map_err(parse_err)?;
            }
            if let Some(fs) = v.get("flags") {
                flags = serde_json::from_value::<Vec<FlagSpec>>(fs.clone()).map_err(parse_err)?;
            }
        } else if v.get("gram").is_some() {
            models.push(serde_json::from_value(v).map_err(parse_err)?);
        } else if v.get("chambers").is_some() {
            flags.push(serde_json::from_value(v).map_err(parse_err)?);
        } else {
            return Err(Error::Parse("document is neither a model, a flag, nor a bundle".into()));
        }
        for m in models {
            c.insert_file(m);
        }
        for f in flags {
            c.flags.insert(f.name.clone(), f);
        }
        c.models.clear();
        c.resolve_all()?;
        Ok(c)
    }

    fn resolve_all(&mut self) -> Result<()> {
        let names: Vec<String> = self.files.keys().cloned().collect();
        for n in names {
            self.resolve(&n, &mut Vec::new())?;
        }
        Ok(())
    }

    fn canonical_name<'a>(&'a self, name: &'a str) -> &'a str {
        self.aliases.get(name).map(String::as_str).unwrap_or(name)
    }

    fn resolve(&mut self, name: &str, stack: &mut Vec<String>) -> Result<Arc<SurfaceModel>> {
        let name = self.canonical_name(name).to_string();
        if let Some(m) = self.models.get(&name) {
            return Ok(m.clone());
        }
        if stack.contains(&name) {
            return Err(Error::InvalidModel { model: name, reason: "extraction targets form a cycle".into() });
        }
        let file = self.files.get(&name).cloned().ok_or_else(|| Error::UnknownModel(name.clone()))?;
        stack.push(name.clone());
        let mut extractions = Vec::new();
        for x in &file.extractions {
            let target = self.resolve(&x.target, stack)?;
            extractions.push(Extraction {
                label: x.label.clone(),
                target,
                pullback: x.pullback.clone(),
                exceptional: x.exceptional.clone(),
                graph: x.graph.clone(),
                exceptional_vertex: x.exceptional_vertex,
                boundary_incidence: x
                    .boundary_incidence
                    .iter()
                    .map(|b| (b.label.clone(), b.incidences.clone()))
                    .collect(),
            });
        }
        stack.pop();
        let model = Arc::new(build_model(&file, extractions)?);
        self.models.insert(name, model.clone());
        Ok(model)
    }

    /// A validated model by name or alias; `P(a,b,c)` builds a rank-one
    /// weighted projective plane on demand.
    pub fn model(&self, name: &str) -> Result<Arc<SurfaceModel>> {
        let m = self.model_unchecked(name)?;
        m.validate()?;
        Ok(m)
    }

    /// As [`Catalog::model`] without the invariant check.
    pub fn model_unchecked(&self, name: &str) -> Result<Arc<SurfaceModel>> {
        if let Some(m) = self.models.get(self.canonical_name(name)) {
            return Ok(m.clone());
        }
        if let Some(w) = parse_weights(name) {
            let w = w?;
            let canonical = format!("P({},{},{})", w[0], w[1], w[2]);
            if w == [1, 1, 1] {
                return self.model_unchecked("P2");
            }
            if let Some(m) = self.models.get(self.canonical_name(&canonical)) {
                return Ok(m.clone());
            }
            return Ok(Arc::new(weighted_plane(w)?));
        }
        Err(Error::UnknownModel(name.to_string()))
    }

    pub fn names(&self) -> Vec<String> {
        self.files.keys().cloned().collect()
    }

    pub fn entries(&self) -> Vec<CatalogEntry> {
        self.models
            .values()
            .map(|m| {
                let l = m.log_anticanonical();
                CatalogEntry {
                    name: m.name.clone(),
                    aliases: m.aliases.clone(),
                    rank: m.rank(),
                    degree: m.dot(&l, &l),
                }
            })
            .collect()
    }

    /// Every invariant violation, by model.
    pub fn validate_all(&self) -> Vec<(String, Vec<String>)> {
        self.models
            .values()
            .map(|m| (m.name.clone(), m.violations()))
            .filter(|(_, v)| !v.is_empty())
            .collect()
    }

    pub fn flag(&self, name: &str) -> Result<&FlagSpec> {
        self.flags.get(name).ok_or_else(|| Error::UnknownFlag(name.to_string()))
    }

    pub fn flags(&self) -> impl Iterator<Item = &FlagSpec> {
        self.flags.values()
    }

    /// Flags whose surface is `model` (by canonical name).
    pub fn flags_for(&self, model: &str) -> Vec<&FlagSpec> {
        let name = self.canonical_name(model);
        self.flags.values().filter(|f| self.canonical_name(&f.surface) == name).collect()
    }

    pub fn file(&self, name: &str) -> Option<&ModelFile> {
        self.files.get(self.canonical_name(name))
    }
}

/// A validated model from the shipped catalog.
pub fn catalog(name: &str) -> Result<Arc<SurfaceModel>> {
    Catalog::builtin().model(name)
}

fn build_model(f: &ModelFile, extractions: Vec<Extraction>) -> Result<SurfaceModel> {
    let rho = f.basis.len();
    if f.gram.len() != rho * rho {
        return Err(Error::InvalidModel {
            model: f.name.clone(),
            reason: format!("gram has {} entries, expected {}", f.gram.len(), rho * rho),
        });
    }
    let gram = f.gram.chunks(rho.max(1)).map(<[Rat]>::to_vec).collect();
    let sings = f
        .sings
        .iter()
        .map(|s| SingPoint {
            location: s.location.clone(),
            sing: QuotientSing { index: s.index, weights: (s.weights[0], s.weights[1]) },
        })
        .collect();
    Ok(SurfaceModel {
        name: f.name.clone(),
        aliases: f.aliases.clone(),
        basis: f.basis.clone(),
        gram,
        canonical: f.canonical.clone(),
        neg_curves: f.neg_curves.clone(),
        extra_generators: f.extra_generators.clone(),
        named_curves: f.named_curves.clone(),
        boundary: f.boundary.clone(),
        sings,
        point_classes: f.point_classes.clone(),
        extractions,
        del_pezzo_points: f.del_pezzo_points,
    })
}

impl SurfaceModel {
    /// Declarative form of the model.
    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            name: self.name.clone(),
            aliases: self.aliases.clone(),
            basis: self.basis.clone(),
            gram: self.gram.iter().flatten().cloned().collect(),
            canonical: self.canonical.clone(),
            neg_curves: self.neg_curves.clone(),
            extra_generators: self.extra_generators.clone(),
            named_curves: self.named_curves.clone(),
            boundary: self.boundary.clone(),
            sings: self
                .sings
                .iter()
                .map(|s| SingFile {
                    location: s.location.clone(),
                    index: s.sing.index,
                    weights: [s.sing.weights.0, s.sing.weights.1],
                })
                .collect(),
            point_classes: self.point_classes.clone(),
            extractions: self
                .extractions
                .iter()
                .map(|x| ExtractionFile {
                    label: x.label.clone(),
                    target: x.target.name.clone(),
                    pullback: x.pullback.clone(),
                    exceptional: x.exceptional.clone(),
                    graph: x.graph.clone(),
                    exceptional_vertex: x.exceptional_vertex,
                    boundary_incidence: x
                        .boundary_incidence
                        .iter()
                        .map(|(l, i)| IncidenceFile { label: l.clone(), incidences: i.clone() })
                        .collect(),
                })
                .collect(),
            del_pezzo_points: self.del_pezzo_points,
        }
    }
}

/// Parses `P(a,b,c)` into sorted weights.
fn parse_weights(name: &str) -> Option<Result<[u64; 3]>> {
    let inner = name.trim().strip_prefix("P(")?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Some(Err(Error::UnknownModel(name.to_string())));
    }
    let mut w = [0u64; 3];
    for (slot, p) in w.iter_mut().zip(&parts) {
        match p.parse::<u64>() {
            Ok(v) if v > 0 => *slot = v,
            _ => return Some(Err(Error::UnknownModel(name.to_string()))),
        }
    }
    w.sort_unstable();
    Some(Ok(w))
}

/// Rank-one model of the well-formed plane `P(a,b,c)`: `O(1)² = 1/(abc)`,
/// `K = O(−a−b−c)`, a point `1/a_i(a_j, a_k)` at each coordinate vertex.
pub fn weighted_plane(w: [u64; 3]) -> Result<SurfaceModel> {
    let [a, b, c] = w.map(|x| x as i64);
    if gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1 {
        return Err(Error::Domain(format!("P({a},{b},{c}) is not well formed")));
    }
    let name = format!("P({a},{b},{c})");
    let one = DivClass::from_ints(&[1]);
    let mut sings = Vec::new();
    for (i, &n) in [a, b, c].iter().enumerate() {
        if n > 1 {
            let others: Vec<i64> = [a, b, c].iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            let r = |x: i64| x.rem_euclid(n) as u32;
            sings.push(SingPoint {
                location: format!("vertex {}", i + 1),
                sing: QuotientSing::new(n as u32, r(others[0]), r(others[1]))?,
            });
        }
    }
    Ok(SurfaceModel {
        name,
        aliases: Vec::new(),
        basis: vec!["O(1)".into()],
        gram: vec![vec![Rat::new(1, a * b * c)]],
        canonical: DivClass::from_ints(&[-(a + b + c)]),
        neg_curves: Vec::new(),
        extra_generators: vec![Curve::new("generator", one)],
        named_curves: [a, b, c]
            .iter()
            .enumerate()
            .map(|(i, &x)| Curve::new(format!("x{i}=0"), DivClass::from_ints(&[x])))
            .collect(),
        boundary: Vec::new(),
        sings,
        point_classes: Vec::new(),
        extractions: Vec::new(),
        del_pezzo_points: None,
    })
}
