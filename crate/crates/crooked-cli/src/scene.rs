//! Scene documents: named vectors, points, crooked planes, flows and
//! foliation specs in one TOML file. Parsing is strict (unknown keys are
//! rejected) and resolution validates every cross-reference and every
//! director's causal class up front, so commands operate on clean data.

use std::collections::BTreeMap;

use crooked_core::flows::OrbitParams;
use crooked_core::{
    AffinePoint, CausalClass, CrookedPlane, CurveSpec, DirectorFamily, FoliationSpec,
    HyperbolicFlow, Isometry, LorentzVector, Mat3, ParabolicFlow,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("scene is not valid TOML:\n{0}")]
    Parse(#[from] toml::de::Error),
    #[error("{entry}: unknown {kind} `{name}`")]
    UnknownName {
        entry: String,
        kind: &'static str,
        name: String,
    },
    #[error("crooked plane `{entry}`: director `{name}` is {class}, not spacelike")]
    DirectorNotSpacelike {
        entry: String,
        name: String,
        class: String,
    },
    #[error("flow `{entry}`: {source}")]
    BadFlow {
        entry: String,
        source: crooked_core::FlowError,
    },
    #[error("foliation spec `{entry}`: unknown family `{family}` (expected ultraparallel, asymptotic or parabolic)")]
    BadFamily { entry: String, family: String },
    #[error(
        "foliation spec `{entry}`: unknown orbit region `{region}` (expected axis, t, w+, w- or s)"
    )]
    BadRegion { entry: String, region: String },
    #[error("foliation spec `{entry}`: orbit region `{region}` {problem}")]
    BadOrbitParams {
        entry: String,
        region: String,
        problem: &'static str,
    },
    #[error("foliation spec `{entry}`: hyperbolic flows need an orbit table")]
    MissingOrbit { entry: String },
    #[error("foliation spec `{entry}`: parabolic flows have a single orbit; drop the orbit table")]
    UnexpectedOrbit { entry: String },
    #[error("foliation spec `{entry}`: interval must satisfy a < b, got [{0}, {1}]", .interval[0], .interval[1])]
    BadInterval { entry: String, interval: [f64; 2] },
    #[error("foliation spec `{entry}`: need at least 2 samples, got {samples}")]
    BadSamples { entry: String, samples: usize },
}

/// Serialized form of a scene. Keys are sorted maps so emission is
/// deterministic and round-trips byte-for-byte.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, [f64; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, [f64; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crooked_planes: BTreeMap<String, PlaneEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flows: BTreeMap<String, FlowEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub foliation_specs: BTreeMap<String, SpecEntry>,
}

/// A crooked plane referencing a named point and a named vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneEntry {
    pub vertex: String,
    pub director: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FlowEntry {
    Hyperbolic {
        l: f64,
        alpha: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        conjugator: Option<ConjugatorEntry>,
    },
    Parabolic {
        a: f64,
        b: f64,
        c: f64,
    },
}

/// Isometry taking the normalized model frame of a flow to the working
/// frame: linear part in rows, then the translation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugatorEntry {
    pub linear: [[f64; 3]; 3],
    pub translation: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecEntry {
    pub flow: String,
    /// `ultraparallel`, `asymptotic` or `parabolic`.
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

/// Orbit selector for hyperbolic flows: `axis`, `t`, `w+`, `w-` or `s`,
/// with scale `k` (all but the axis) and phase `t0` (t and s only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitEntry {
    pub region: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
}

/// A scene with every name resolved and every entry validated.
#[derive(Debug, Clone)]
pub struct ResolvedScene {
    pub vectors: BTreeMap<String, LorentzVector>,
    pub points: BTreeMap<String, AffinePoint>,
    pub planes: BTreeMap<String, CrookedPlane>,
    pub flows: BTreeMap<String, ResolvedFlow>,
    pub specs: BTreeMap<String, FoliationSpec>,
}

#[derive(Debug, Clone)]
pub enum ResolvedFlow {
    Hyperbolic(HyperbolicFlow),
    Parabolic(ParabolicFlow),
}

pub fn vector_of(a: [f64; 3]) -> LorentzVector {
    LorentzVector::new(a[0], a[1], a[2])
}

pub fn point_of(a: [f64; 3]) -> AffinePoint {
    AffinePoint::new(a[0], a[1], a[2])
}

pub fn array_of(v: LorentzVector) -> [f64; 3] {
    [v.x1, v.x2, v.x3]
}

fn class_name(c: CausalClass) -> &'static str {
    match c {
        CausalClass::Zero => "zero",
        CausalClass::Timelike => "timelike",
        CausalClass::Null => "null",
        CausalClass::Spacelike { .. } => "spacelike",
    }
}

pub fn parse(text: &str) -> Result<SceneDocument, SceneError> {
    Ok(toml::from_str(text)?)
}

pub fn emit(doc: &SceneDocument) -> String {
    toml::to_string_pretty(doc).expect("scene documents always serialize")
}

pub fn family_of(name: &str) -> Option<DirectorFamily> {
    match name {
        "ultraparallel" => Some(DirectorFamily::Ultraparallel),
        "asymptotic" => Some(DirectorFamily::Asymptotic),
        "parabolic" => Some(DirectorFamily::Parabolic),
        _ => None,
    }
}

pub fn family_name(family: DirectorFamily) -> &'static str {
    match family {
        DirectorFamily::Ultraparallel => "ultraparallel",
        DirectorFamily::Asymptotic => "asymptotic",
        DirectorFamily::Parabolic => "parabolic",
    }
}

fn resolve_orbit(entry: &str, orbit: &OrbitEntry) -> Result<OrbitParams, SceneError> {
    let need_k = || {
        orbit.k.ok_or(SceneError::BadOrbitParams {
            entry: entry.to_string(),
            region: orbit.region.clone(),
            problem: "needs a scale k",
        })
    };
    let no_t0 = |params: OrbitParams| {
        if orbit.t0.is_some() {
            Err(SceneError::BadOrbitParams {
                entry: entry.to_string(),
                region: orbit.region.clone(),
                problem: "takes no phase t0",
            })
        } else {
            Ok(params)
        }
    };
    match orbit.region.as_str() {
        "axis" => {
            if orbit.k.is_some() {
                return Err(SceneError::BadOrbitParams {
                    entry: entry.to_string(),
                    region: orbit.region.clone(),
                    problem: "takes no scale k",
                });
            }
            no_t0(OrbitParams::Axis)
        }
        "t" => Ok(OrbitParams::T {
            k: need_k()?,
            t0: orbit.t0.unwrap_or(0.0),
        }),
        "w+" => no_t0(OrbitParams::WPlus { k: need_k()? }),
        "w-" => no_t0(OrbitParams::WMinus { k: need_k()? }),
        "s" => Ok(OrbitParams::S {
            k: need_k()?,
            t0: orbit.t0.unwrap_or(0.0),
        }),
        _ => Err(SceneError::BadRegion {
            entry: entry.to_string(),
            region: orbit.region.clone(),
        }),
    }
}

pub fn resolve(doc: &SceneDocument) -> Result<ResolvedScene, SceneError> {
    let vectors: BTreeMap<String, LorentzVector> = doc
        .vectors
        .iter()
        .map(|(name, a)| (name.clone(), vector_of(*a)))
        .collect();
    let points: BTreeMap<String, AffinePoint> = doc
        .points
        .iter()
        .map(|(name, a)| (name.clone(), point_of(*a)))
        .collect();

    let mut planes = BTreeMap::new();
    for (name, entry) in &doc.crooked_planes {
        let label = format!("crooked plane `{name}`");
        let vertex = *points
            .get(&entry.vertex)
            .ok_or_else(|| SceneError::UnknownName {
                entry: label.clone(),
                kind: "point",
                name: entry.vertex.clone(),
            })?;
        let director = *vectors
            .get(&entry.director)
            .ok_or_else(|| SceneError::UnknownName {
                entry: label.clone(),
                kind: "vector",
                name: entry.director.clone(),
            })?;
        let plane =
            CrookedPlane::new(vertex, director).map_err(|_| SceneError::DirectorNotSpacelike {
                entry: name.clone(),
                name: entry.director.clone(),
                class: class_name(director.causal_class()).to_string(),
            })?;
        planes.insert(name.clone(), plane);
    }

    let mut flows = BTreeMap::new();
    for (name, entry) in &doc.flows {
        let resolved = match entry {
            FlowEntry::Hyperbolic {
                l,
                alpha,
                conjugator,
            } => {
                let flow = match conjugator {
                    None => HyperbolicFlow::new(*l, *alpha),
                    Some(c) => {
                        let iso = Isometry::new(Mat3(c.linear), vector_of(c.translation))
                            .map_err(crooked_core::FlowError::from)
                            .and_then(|iso| HyperbolicFlow::with_conjugator(*l, *alpha, iso));
                        iso
                    }
                }
                .map_err(|source| SceneError::BadFlow {
                    entry: name.clone(),
                    source,
                })?;
                ResolvedFlow::Hyperbolic(flow)
            }
            FlowEntry::Parabolic { a, b, c } => {
                ResolvedFlow::Parabolic(ParabolicFlow::new(*a, *b, *c))
            }
        };
        flows.insert(name.clone(), resolved);
    }

    let mut specs = BTreeMap::new();
    for (name, entry) in &doc.foliation_specs {
        let label = format!("foliation spec `{name}`");
        let family = family_of(&entry.family).ok_or_else(|| SceneError::BadFamily {
            entry: name.clone(),
            family: entry.family.clone(),
        })?;
        let flow = flows
            .get(&entry.flow)
            .ok_or_else(|| SceneError::UnknownName {
                entry: label.clone(),
                kind: "flow",
                name: entry.flow.clone(),
            })?;
        let curve = match flow {
            ResolvedFlow::Hyperbolic(f) => {
                let orbit = entry
                    .orbit
                    .as_ref()
                    .ok_or_else(|| SceneError::MissingOrbit {
                        entry: name.clone(),
                    })?;
                CurveSpec::HyperbolicOrbit {
                    flow: f.clone(),
                    orbit: resolve_orbit(name, orbit)?,
                }
            }
            ResolvedFlow::Parabolic(f) => {
                if entry.orbit.is_some() {
                    return Err(SceneError::UnexpectedOrbit {
                        entry: name.clone(),
                    });
                }
                CurveSpec::ParabolicOrbit { flow: f.clone() }
            }
        };
        let interval = entry.interval.unwrap_or([
            crooked_core::foliation::DEFAULT_INTERVAL.0,
            crooked_core::foliation::DEFAULT_INTERVAL.1,
        ]);
        if !(interval[0] < interval[1]) {
            return Err(SceneError::BadInterval {
                entry: name.clone(),
                interval,
            });
        }
        let samples = entry
            .samples
            .unwrap_or(crooked_core::foliation::DEFAULT_SAMPLES);
        if samples < 2 {
            return Err(SceneError::BadSamples {
                entry: name.clone(),
                samples,
            });
        }
        specs.insert(
            name.clone(),
            FoliationSpec {
                curve,
                family,
                interval: (interval[0], interval[1]),
                samples,
            },
        );
    }

    Ok(ResolvedScene {
        vectors,
        points,
        planes,
        flows,
        specs,
    })
}

pub fn load(path: &std::path::Path) -> Result<(SceneDocument, ResolvedScene), SceneError> {
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc = parse(&text)?;
    let resolved = resolve(&doc)?;
    Ok((doc, resolved))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCENE: &str = r#"
[vectors]
u0 = [1.0, 0.0, 0.0]
u1 = [1.5430806348152437, 0.0, 1.1752011936438014]

[points]
o = [0.0, 0.0, 0.0]
p1 = [0.0, 1.0, 0.0]

[crooked_planes.c0]
vertex = "o"
director = "u0"

[crooked_planes.c1]
vertex = "p1"
director = "u1"

[flows.boost]
kind = "hyperbolic"
l = 1.0
alpha = 1.0

[flows.shear]
kind = "parabolic"
a = 0.0
b = -1.0
c = 1.0

[foliation_specs.s-half]
flow = "boost"
family = "ultraparallel"
orbit = { region = "s", k = 0.5 }

[foliation_specs.shear-orbit]
flow = "shear"
family = "parabolic"
interval = [-1.0, 1.0]
samples = 17
"#;

    #[test]
    fn parses_and_resolves() {
        let doc = parse(SCENE).unwrap();
        let scene = resolve(&doc).unwrap();
        assert_eq!(scene.planes.len(), 2);
        assert_eq!(scene.specs.len(), 2);
        let spec = &scene.specs["s-half"];
        assert_eq!(spec.samples, 33);
        assert_eq!(spec.interval, (-2.0, 2.0));
        assert_eq!(scene.specs["shear-orbit"].samples, 17);
    }

    #[test]
    fn round_trips_exactly() {
        let doc = parse(SCENE).unwrap();
        let emitted = emit(&doc);
        let reparsed = parse(&emitted).unwrap();
        assert_eq!(doc, reparsed);
        // And emission is a fixed point.
        assert_eq!(emitted, emit(&reparsed));
    }

    #[test]
    fn rejects_unknown_keys_and_names() {
        let err = parse("[vectors]\nu = [1, 0, 0]\n[typo]\nx = 1\n").unwrap_err();
        assert!(err.to_string().contains("line"), "not line-anchored: {err}");

        let doc = parse(
            "[points]\no = [0,0,0]\n[crooked_planes.c]\nvertex = \"o\"\ndirector = \"nope\"\n",
        )
        .unwrap();
        let err = resolve(&doc).unwrap_err();
        assert!(err.to_string().contains("unknown vector `nope`"));
    }

    #[test]
    fn rejects_non_spacelike_directors() {
        let doc = parse(
            "[vectors]\nt = [0,0,1]\n[points]\no = [0,0,0]\n[crooked_planes.c]\nvertex = \"o\"\ndirector = \"t\"\n",
        )
        .unwrap();
        let err = resolve(&doc).unwrap_err();
        assert!(err.to_string().contains("timelike, not spacelike"), "{err}");
    }

    #[test]
    fn rejects_bad_orbit_tables() {
        let base = "[flows.f]\nkind = \"hyperbolic\"\nl = 1.0\nalpha = 1.0\n";
        let doc = parse(&format!(
            "{base}[foliation_specs.s]\nflow = \"f\"\nfamily = \"ultraparallel\"\n"
        ))
        .unwrap();
        assert!(matches!(
            resolve(&doc).unwrap_err(),
            SceneError::MissingOrbit { .. }
        ));

        let doc = parse(&format!(
            "{base}[foliation_specs.s]\nflow = \"f\"\nfamily = \"ultraparallel\"\norbit = {{ region = \"w+\" }}\n"
        ))
        .unwrap();
        assert!(matches!(
            resolve(&doc).unwrap_err(),
            SceneError::BadOrbitParams { .. }
        ));
    }
}
