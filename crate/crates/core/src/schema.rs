//! JSON problem files.
//!
//! ```json
//! {
//!   "groups": { "S3": { "permutations": [[[1, 2]], [[1, 2, 3]]], "degree": 3 },
//!               "Z2": { "cayley": [[0, 1], [1, 0]], "labels": ["0", "1"] } },
//!   "extension": { "domain": "S3", "codomain": "Z2",
//!                  "images": ["0", "1", "0", "1", "1", "0"] },
//!   "surface_hom": { "genus": 1, "x": ["1"], "y": ["1"] },
//!   "task": "count"
//! }
//! ```
//!
//! Element references are indices or labels. Permutation cycles are 1-based.
//! Groups may also be given as `{"catalog": "Q8"}`, and an extension as
//! `{"catalog": "S3->Z2"}`. Cocycle entries are `[re, im]` or
//! `{"root_of_unity": [k, n]}` meaning `e^{2πik/n}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::catalog;
use crate::cohomology::TwoCocycle;
use crate::error::Error;
use crate::group::{pullback_datum, Automorphism, Elem, Extension, ExtensionDatum, FiniteGroup, GroupHom, SurfaceAction, SurfaceHom};
use crate::{Config, C64};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupSpec {
    Cayley {
        cayley: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    Permutations {
        /// One entry per generator, each a list of 1-based cycles.
        permutations: Vec<Vec<Vec<usize>>>,
        degree: usize,
    },
    Catalog {
        catalog: String,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ExtensionSpec {
    Explicit { domain: String, codomain: String, images: Vec<ElemRef> },
    Catalog { catalog: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceHomSpec {
    #[serde(default)]
    pub genus: Option<usize>,
    pub x: Vec<ElemRef>,
    pub y: Vec<ElemRef>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CocycleEntry {
    Pair([f64; 2]),
    Root { root_of_unity: [i64; 2] },
}

impl CocycleEntry {
    fn value(&self) -> Result<C64, String> {
        match *self {
            CocycleEntry::Pair([re, im]) => Ok(C64::new(re, im)),
            CocycleEntry::Root { root_of_unity: [k, n] } if n > 0 => {
                Ok(C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            }
            CocycleEntry::Root { .. } => Err("root_of_unity needs a positive order".into()),
        }
    }
}

/// A cocycle on the extension group `G′`, as a dense table.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub values: Vec<Vec<CocycleEntry>>,
}

/// Automorphisms given as images arrays over the named group.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub group: String,
    pub x: Vec<Vec<ElemRef>>,
    pub y: Vec<Vec<ElemRef>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum DatumSpec {
    Explicit { group: String, psi_x: Vec<Vec<ElemRef>>, psi_y: Vec<Vec<ElemRef>>, phi0: ElemRef },
    /// Pulled back from the extension along the surface hom.
    Pullback { pullback: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Validate,
    Count,
    Irr,
    Vk,
    Sections,
    H1,
    T2,
    Bundles,
    Genusbound,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Task::Validate => "validate",
            Task::Count => "count",
            Task::Irr => "irr",
            Task::Vk => "vk",
            Task::Sections => "sections",
            Task::H1 => "h1",
            Task::T2 => "t2",
            Task::Bundles => "bundles",
            Task::Genusbound => "genusbound",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub extension: Option<ExtensionSpec>,
    #[serde(default)]
    pub surface_hom: Option<SurfaceHomSpec>,
    #[serde(default)]
    pub cocycle: Option<CocycleSpec>,
    #[serde(default)]
    pub action: Option<ActionSpec>,
    #[serde(default)]
    pub datum: Option<DatumSpec>,
    /// Group decomposed by the `irr` task; defaults to the kernel.
    #[serde(default)]
    pub irr_group: Option<String>,
    pub task: Task,
}

/// A loading failure, located by the path of the offending object.
#[derive(Debug)]
pub struct LoadError {
    pub path: String,
    pub error: Error,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.error)
    }
}

impl std::error::Error for LoadError {}

type Load<T> = std::result::Result<T, LoadError>;

fn at<T>(path: &str, r: crate::Result<T>) -> Load<T> {
    r.map_err(|error| LoadError { path: path.to_string(), error })
}

fn malformed(path: &str, msg: impl Into<String>) -> LoadError {
    LoadError { path: path.to_string(), error: Error::Malformed(msg.into()) }
}

/// Everything in a problem file, resolved and validated.
#[derive(Clone, Debug)]
pub struct Problem {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub extension: Option<Extension>,
    pub surface_hom: Option<SurfaceHom>,
    pub cocycle: Option<Arc<TwoCocycle>>,
    pub action: Option<SurfaceAction>,
    pub datum: Option<ExtensionDatum>,
    pub irr_group: Option<Arc<FiniteGroup>>,
    pub task: Task,
}

/// Builds a group from its description.
pub fn load_group(spec: &GroupSpec, max_order: usize) -> crate::Result<FiniteGroup> {
    match spec {
        GroupSpec::Cayley { cayley, labels } => FiniteGroup::from_table(cayley, labels.clone(), max_order),
        GroupSpec::Permutations { permutations, degree } => {
            let gens = permutations
                .iter()
                .map(|cycles| cycles_to_images(cycles, *degree))
                .collect::<crate::Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(&gens, *degree, max_order)
        }
        GroupSpec::Catalog { catalog: name } => {
            let g = catalog::group_by_name(name).ok_or_else(|| Error::Malformed(format!("unknown catalog group {name:?}")))?;
            if g.order() > max_order {
                return Err(Error::OrderCap { order: g.order(), cap: max_order });
            }
            Ok(g)
        }
    }
}

fn cycles_to_images(cycles: &[Vec<usize>], degree: usize) -> crate::Result<Vec<usize>> {
    let mut images: Vec<usize> = (0..degree).collect();
    let mut moved = vec![false; degree];
    if let Some(p) = cycles.iter().flatten().find(|&&p| p == 0 || p > degree) {
        return Err(Error::Malformed(format!("cycle point {p} is outside 1..={degree}")));
    }
    for cycle in cycles {
        for (i, &p) in cycle.iter().enumerate() {
            if std::mem::replace(&mut moved[p - 1], true) {
                return Err(Error::Malformed(format!("point {p} appears in two cycles")));
            }
            images[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
        }
    }
    Ok(images)
}

fn resolve(group: &FiniteGroup, r: &ElemRef, path: &str) -> Load<Elem> {
    match r {
        ElemRef::Index(i) if *i < group.order() => Ok(*i),
        ElemRef::Index(i) => Err(malformed(path, format!("index {i} is out of range for a group of order {}", group.order()))),
        ElemRef::Label(s) => group
            .find_label(s)
            .ok_or_else(|| malformed(path, format!("no element labeled {s:?}"))),
    }
}

fn resolve_all(group: &FiniteGroup, refs: &[ElemRef], path: &str) -> Load<Vec<Elem>> {
    refs.iter().enumerate().map(|(i, r)| resolve(group, r, &format!("{path}[{i}]"))).collect()
}

fn automorphisms(group: &FiniteGroup, list: &[Vec<ElemRef>], path: &str) -> Load<Vec<Automorphism>> {
    list.iter()
        .enumerate()
        .map(|(i, imgs)| {
            let p = format!("{path}[{i}]");
            let images = resolve_all(group, imgs, &p)?;
            at(&p, Automorphism::new(group, images))
        })
        .collect()
}

impl Problem {
    /// Parses and validates a problem file.
    pub fn from_json(text: &str, cfg: &Config) -> Load<Problem> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| malformed("file", e.to_string()))?;
        Self::load(&file, cfg)
    }

    pub fn load(file: &ProblemFile, cfg: &Config) -> Load<Problem> {
        let mut groups = BTreeMap::new();
        for (name, spec) in &file.groups {
            let g = at(&format!("groups.{name}"), load_group(spec, cfg.max_order))?;
            groups.insert(name.clone(), Arc::new(g));
        }
        let group = |name: &str, path: &str| -> Load<Arc<FiniteGroup>> {
            if let Some(g) = groups.get(name) {
                return Ok(g.clone());
            }
            at(path, load_group(&GroupSpec::Catalog { catalog: name.to_string() }, cfg.max_order)).map(Arc::new)
        };

        let extension = match &file.extension {
            None => None,
            Some(ExtensionSpec::Catalog { catalog: name }) => Some(
                catalog::extension_by_name(name).ok_or_else(|| malformed("extension", format!("unknown catalog extension {name:?}")))?,
            ),
            Some(ExtensionSpec::Explicit { domain, codomain, images }) => {
                let dom = group(domain, "extension.domain")?;
                let cod = group(codomain, "extension.codomain")?;
                if images.len() != dom.order() {
                    return Err(malformed("extension.images", format!("{} images for a group of order {}", images.len(), dom.order())));
                }
                let imgs = resolve_all(&cod, images, "extension.images")?;
                let q = at("extension", GroupHom::new(dom, cod, imgs))?;
                Some(at("extension", Extension::new(q))?)
            }
        };

        let surface_hom = match &file.surface_hom {
            None => None,
            Some(spec) => {
                let ext = extension.as_ref().ok_or_else(|| malformed("surface_hom", "needs an extension to name its target"))?;
                let target = ext.base().clone();
                let x = resolve_all(&target, &spec.x, "surface_hom.x")?;
                let y = resolve_all(&target, &spec.y, "surface_hom.y")?;
                let genus = spec.genus.unwrap_or(x.len());
                Some(at("surface_hom", SurfaceHom::new(target, genus, x, y))?)
            }
        };

        let cocycle = match &file.cocycle {
            None => None,
            Some(spec) => {
                let ext = extension.as_ref().ok_or_else(|| malformed("cocycle", "needs an extension"))?;
                let g = ext.big().clone();
                let n = g.order();
                if spec.values.len() != n || spec.values.iter().any(|r| r.len() != n) {
                    return Err(malformed("cocycle.values", format!("expected a {n}×{n} table")));
                }
                let raw = spec
                    .values
                    .iter()
                    .flatten()
                    .map(CocycleEntry::value)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| malformed("cocycle.values", e))?;
                Some(Arc::new(at("cocycle", TwoCocycle::new(g, &raw, &cfg.tol))?))
            }
        };

        let action = match &file.action {
            None => None,
            Some(spec) => {
                let phi = group(&spec.group, "action.group")?;
                let x = automorphisms(&phi, &spec.x, "action.x")?;
                let y = automorphisms(&phi, &spec.y, "action.y")?;
                Some(at("action", SurfaceAction::new(phi, x, y))?)
            }
        };

        let datum = match &file.datum {
            None => None,
            Some(DatumSpec::Pullback { pullback: false }) => None,
            Some(DatumSpec::Pullback { pullback: true }) => {
                let (Some(ext), Some(g)) = (&extension, &surface_hom) else {
                    return Err(malformed("datum", "a pullback datum needs an extension and a surface hom"));
                };
                Some(at("datum", pullback_datum(ext, g, None))?)
            }
            Some(DatumSpec::Explicit { group: name, psi_x, psi_y, phi0 }) => {
                let phi = group(name, "datum.group")?;
                let px = automorphisms(&phi, psi_x, "datum.psi_x")?;
                let py = automorphisms(&phi, psi_y, "datum.psi_y")?;
                let p0 = resolve(&phi, phi0, "datum.phi0")?;
                Some(at("datum", ExtensionDatum::new(phi, px, py, p0))?)
            }
        };

        let irr_group = match &file.irr_group {
            Some(name) => Some(group(name, "irr_group")?),
            None => None,
        };

        Ok(Problem { groups, extension, surface_hom, cocycle, action, datum, irr_group, task: file.task })
    }

    /// Raises the genus of every surface object by adding trivial handles.
    pub fn with_genus(mut self, genus: usize) -> crate::Result<Problem> {
        if let Some(g) = &self.surface_hom {
            self.surface_hom = Some(g.stabilized(genus)?);
        }
        let pad = |order: usize, v: &[Automorphism]| -> crate::Result<Vec<Automorphism>> {
            if genus < v.len() {
                return Err(Error::Malformed(format!("cannot lower genus from {} to {genus}", v.len())));
            }
            let mut v = v.to_vec();
            v.resize(genus, Automorphism::identity(order));
            Ok(v)
        };
        if let Some(a) = &self.action {
            let n = a.phi.order();
            self.action = Some(SurfaceAction::new(a.phi.clone(), pad(n, &a.x)?, pad(n, &a.y)?)?);
        }
        if let Some(d) = &self.datum {
            let n = d.phi.order();
            self.datum = Some(ExtensionDatum::new(d.phi.clone(), pad(n, &d.psi_x)?, pad(n, &d.psi_y)?, d.phi0)?);
        }
        Ok(self)
    }
}
