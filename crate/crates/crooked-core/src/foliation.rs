//! Verification that a one-parameter family of crooked planes foliates its
//! swept region: per-leaf tangency of the vertex curve to the stem quadrant
//! of the director, plus pairwise disjointness of sampled leaves.
//!
//! A family is described by a [`FoliationSpec`]: a vertex/director curve
//! (closed-form orbit of a hyperbolic or parabolic flow, or sampled data)
//! together with the director family that fixes which null edge of the stem
//! quadrant is shared between leaves. [`verify`] samples the family on a
//! grid and reports, per sample, the derivative dot products against the
//! director and its null frame, and per pair of samples, the analytic
//! disjointness verdicts.

use crate::crooked::{
    cone_disjoint, consistently_oriented, dg_disjoint, pair_class, CrookedError, CrookedPlane,
    PairClass,
};
use crate::flows::{Calibration, FlowError, HyperbolicFlow, OrbitParams, ParabolicFlow};
use crate::minkowski::{null_frame, AffinePoint, LorentzVector};
use rayon::prelude::*;
use thiserror::Error;

/// Default sampling interval for verification grids.
pub const DEFAULT_INTERVAL: (f64, f64) = (-2.0, 2.0);
/// Default number of grid samples.
pub const DEFAULT_SAMPLES: usize = 33;
/// Default dot-product tolerance for closed-form curves.
pub const DEFAULT_TOL_CLOSED_FORM: f64 = 1e-9;
/// Default dot-product tolerance for sampled curves, whose derivatives come
/// from finite differences.
pub const DEFAULT_TOL_SAMPLED: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("interval must satisfy a < b, got [{0}, {1}]")]
    BadInterval(f64, f64),
    #[error("need at least {1} samples, got {0}")]
    TooFewSamples(usize, usize),
    #[error(
        "sampled curve arrays must share one length: {ts} times, {vertices} vertices, {directors} directors"
    )]
    MismatchedSamples {
        ts: usize,
        vertices: usize,
        directors: usize,
    },
    #[error("sample times must be strictly increasing, violated at index {0}")]
    NonMonotonicSamples(usize),
    #[error("director family `{family}` does not apply to a {curve} curve")]
    FamilyMismatch {
        family: DirectorFamily,
        curve: &'static str,
    },
    #[error("vertex curve derivative vanishes at t = {0}")]
    ZeroDerivative(f64),
    #[error("directors at t = {t} and s = {s} cross: no crooked foliation contains both leaves")]
    CrossingDirectors { t: f64, s: f64 },
    #[error(transparent)]
    Crooked(#[from] CrookedError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// Which director family the leaves use. The family decides the edge of the
/// stem quadrant shared by every leaf, and with it which tangency inequality
/// must hold strictly: sliding a leaf along the shared null line always
/// produces intersections, so the derivative component off that edge may not
/// vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectorFamily {
    /// Pairwise ultraparallel directors (boost orbit of a spacelike vector).
    /// No shared null edge; both edge inequalities are non-strict.
    Ultraparallel,
    /// Directors of a hyperbolic flow sharing their expanding null
    /// direction `u⁺`; the `ṗ·u⁺ < 0` inequality is strict.
    Asymptotic,
    /// Directors of a parabolic flow sharing their null direction `u⁻`;
    /// the `ṗ·u⁻ > 0` inequality is strict.
    Parabolic,
}

impl std::fmt::Display for DirectorFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DirectorFamily::Ultraparallel => write!(f, "ultraparallel"),
            DirectorFamily::Asymptotic => write!(f, "asymptotic"),
            DirectorFamily::Parabolic => write!(f, "parabolic"),
        }
    }
}

/// The vertex/director curve of a candidate foliation.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    /// Closed-form orbit of a hyperbolic flow; directors come from the
    /// flow's ultraparallel or asymptotic family.
    HyperbolicOrbit {
        flow: HyperbolicFlow,
        orbit: OrbitParams,
    },
    /// Closed-form orbit of a parabolic flow with its canonical directors.
    ParabolicOrbit { flow: ParabolicFlow },
    /// Sampled vertex and director data at strictly increasing times.
    /// Derivatives are taken by finite differences; at a breakpoint both
    /// one-sided derivatives are checked.
    Sampled {
        ts: Vec<f64>,
        vertices: Vec<AffinePoint>,
        directors: Vec<LorentzVector>,
        breakpoints: Vec<f64>,
    },
}

impl CurveSpec {
    fn kind_name(&self) -> &'static str {
        match self {
            CurveSpec::HyperbolicOrbit { .. } => "hyperbolic orbit",
            CurveSpec::ParabolicOrbit { .. } => "parabolic orbit",
            CurveSpec::Sampled { .. } => "sampled",
        }
    }
}

/// A candidate crooked foliation: curve, director family, and sampling
/// grid. For sampled curves the sample times themselves form the grid and
/// `interval`/`samples` are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliationSpec {
    pub curve: CurveSpec,
    pub family: DirectorFamily,
    pub interval: (f64, f64),
    pub samples: usize,
}

impl FoliationSpec {
    /// Foliation candidate along the S-orbit (or axis) found by
    /// [`calibrate`](crate::flows::calibrate), with the flow's
    /// ultraparallel director family and default grid.
    pub fn from_calibration(cal: &Calibration) -> FoliationSpec {
        FoliationSpec {
            curve: CurveSpec::HyperbolicOrbit {
                flow: cal.flow.clone(),
                orbit: cal.orbit,
            },
            family: DirectorFamily::Ultraparallel,
            interval: DEFAULT_INTERVAL,
            samples: DEFAULT_SAMPLES,
        }
    }

    /// Default verification tolerance: tighter for closed-form curves than
    /// for sampled ones, whose derivatives carry finite-difference error.
    pub fn default_tolerance(&self) -> f64 {
        match self.curve {
            CurveSpec::Sampled { .. } => DEFAULT_TOL_SAMPLED,
            _ => DEFAULT_TOL_CLOSED_FORM,
        }
    }

    /// The verification grid: uniform over `interval` for closed-form
    /// curves, the sample times for sampled curves.
    pub fn grid(&self) -> Result<Vec<f64>, VerifyError> {
        match &self.curve {
            CurveSpec::Sampled { ts, .. } => {
                validate_sampled(&self.curve)?;
                Ok(ts.clone())
            }
            _ => {
                let (a, b) = self.interval;
                if !(a < b) {
                    return Err(VerifyError::BadInterval(a, b));
                }
                if self.samples < 2 {
                    return Err(VerifyError::TooFewSamples(self.samples, 2));
                }
                Ok(uniform_grid(a, b, self.samples))
            }
        }
    }

    /// Vertices and directors of the sampled leaves.
    pub fn leaves(&self) -> Result<Vec<(f64, AffinePoint, LorentzVector)>, VerifyError> {
        Ok(build_leaves(self)?
            .into_iter()
            .map(|l| (l.t, l.vertex, l.director))
            .collect())
    }
}

/// `n` evenly spaced points with exact endpoints `a` and `b`.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "grid needs at least two points");
    (0..n)
        .map(|i| {
            if i == n - 1 {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Dot products of one vertex derivative against the leaf's director and
/// null frame. At a sampled breakpoint two records share the same `t`, one
/// per one-sided derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfinitesimalRecord {
    pub t: f64,
    /// `ṗ·u` — must vanish (tangency to the director's orthogonal plane).
    pub du: f64,
    /// `ṗ·u⁻` — must be ≥ 0; strictly > 0 for the parabolic family.
    pub dm: f64,
    /// `ṗ·u⁺` — must be ≤ 0; strictly < 0 for the asymptotic family.
    pub dp: f64,
    pub pass: bool,
}

/// Analytic disjointness verdicts for one pair of sampled leaves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairRecord {
    pub t: f64,
    pub s: f64,
    /// Drumm–Goldman verdict; `None` when the directors are not
    /// ultraparallel (the criterion does not apply).
    pub dg: Option<bool>,
    /// Cone-criterion verdict.
    pub cone: bool,
    pub pass: bool,
}

/// Outcome of [`verify`]: per-sample tangency records and per-pair
/// disjointness records. Failing records are data, not errors; structural
/// problems (crossing directors, degenerate data) surface as
/// [`VerifyError`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub family: DirectorFamily,
    pub tol: f64,
    pub grid: Vec<f64>,
    /// Whether `(−u_t, u_s)` is consistently oriented for the extreme grid
    /// pair — the sign convention the pairwise criteria assume.
    pub orientation_consistent: bool,
    pub infinitesimal: Vec<InfinitesimalRecord>,
    pub pairs: Vec<PairRecord>,
}

impl VerificationReport {
    pub fn infinitesimal_pass(&self) -> bool {
        self.infinitesimal.iter().all(|r| r.pass)
    }

    pub fn pairwise_pass(&self) -> bool {
        self.pairs.iter().all(|r| r.pass)
    }

    pub fn pass(&self) -> bool {
        self.orientation_consistent && self.infinitesimal_pass() && self.pairwise_pass()
    }

    pub fn first_infinitesimal_failure(&self) -> Option<&InfinitesimalRecord> {
        self.infinitesimal.iter().find(|r| !r.pass)
    }

    pub fn first_pair_failure(&self) -> Option<&PairRecord> {
        self.pairs.iter().find(|r| !r.pass)
    }
}

struct Leaf {
    t: f64,
    vertex: AffinePoint,
    director: LorentzVector,
    /// One derivative for smooth parameters, two one-sided ones at sampled
    /// breakpoints.
    derivatives: Vec<LorentzVector>,
}

fn validate_sampled(curve: &CurveSpec) -> Result<(), VerifyError> {
    let CurveSpec::Sampled {
        ts,
        vertices,
        directors,
        ..
    } = curve
    else {
        return Ok(());
    };
    if ts.len() != vertices.len() || ts.len() != directors.len() {
        return Err(VerifyError::MismatchedSamples {
            ts: ts.len(),
            vertices: vertices.len(),
            directors: directors.len(),
        });
    }
    if ts.len() < 3 {
        return Err(VerifyError::TooFewSamples(ts.len(), 3));
    }
    for i in 1..ts.len() {
        if !(ts[i] > ts[i - 1]) {
            return Err(VerifyError::NonMonotonicSamples(i));
        }
    }
    Ok(())
}

/// Second-order one-sided derivative from three points in the direction of
/// increasing index distance: `q0` at distance 0, `q1` at `h1`, `q2` at
/// `h1 + h2`.
fn one_sided_derivative(
    q0: AffinePoint,
    q1: AffinePoint,
    q2: AffinePoint,
    h1: f64,
    h2: f64,
) -> LorentzVector {
    let c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
    let c1 = (h1 + h2) / (h1 * h2);
    let c2 = -h1 / (h2 * (h1 + h2));
    q0.to_vector() * c0 + q1.to_vector() * c1 + q2.to_vector() * c2
}

/// Second-order central derivative on a non-uniform stencil: `qm` at `−h1`,
/// `q0` at 0, `qp` at `+h2`.
fn central_derivative(
    qm: AffinePoint,
    q0: AffinePoint,
    qp: AffinePoint,
    h1: f64,
    h2: f64,
) -> LorentzVector {
    let cm = -h2 / (h1 * (h1 + h2));
    let c0 = (h2 - h1) / (h1 * h2);
    let cp = h1 / (h2 * (h1 + h2));
    qm.to_vector() * cm + q0.to_vector() * c0 + qp.to_vector() * cp
}

fn sampled_derivatives(
    ts: &[f64],
    vertices: &[AffinePoint],
    breakpoints: &[f64],
    i: usize,
) -> Vec<LorentzVector> {
    let n = ts.len();
    let is_break = breakpoints
        .iter()
        .any(|&b| (ts[i] - b).abs() <= 1e-12 * b.abs().max(1.0));
    let backward = |i: usize| {
        if i >= 2 {
            one_sided_derivative(
                vertices[i],
                vertices[i - 1],
                vertices[i - 2],
                ts[i - 1] - ts[i],
                ts[i - 2] - ts[i - 1],
            )
        } else {
            (vertices[i] - vertices[i - 1]) * (1.0 / (ts[i] - ts[i - 1]))
        }
    };
    let forward = |i: usize| {
        if i + 2 < n {
            one_sided_derivative(
                vertices[i],
                vertices[i + 1],
                vertices[i + 2],
                ts[i + 1] - ts[i],
                ts[i + 2] - ts[i + 1],
            )
        } else {
            (vertices[i + 1] - vertices[i]) * (1.0 / (ts[i + 1] - ts[i]))
        }
    };
    if i == 0 {
        vec![forward(0)]
    } else if i == n - 1 {
        vec![backward(n - 1)]
    } else if is_break {
        vec![backward(i), forward(i)]
    } else {
        vec![central_derivative(
            vertices[i - 1],
            vertices[i],
            vertices[i + 1],
            ts[i] - ts[i - 1],
            ts[i + 1] - ts[i],
        )]
    }
}

fn build_leaves(spec: &FoliationSpec) -> Result<Vec<Leaf>, VerifyError> {
    match (&spec.curve, spec.family) {
        (CurveSpec::HyperbolicOrbit { .. }, DirectorFamily::Parabolic)
        | (CurveSpec::ParabolicOrbit { .. }, DirectorFamily::Ultraparallel)
        | (CurveSpec::ParabolicOrbit { .. }, DirectorFamily::Asymptotic) => {
            return Err(VerifyError::FamilyMismatch {
                family: spec.family,
                curve: spec.curve.kind_name(),
            });
        }
        _ => {}
    }
    match &spec.curve {
        CurveSpec::HyperbolicOrbit { flow, orbit } => {
            let grid = spec.grid()?;
            grid.into_iter()
                .map(|t| {
                    let director = match spec.family {
                        DirectorFamily::Ultraparallel => flow.director_ultraparallel(t),
                        DirectorFamily::Asymptotic => flow.director_asymptotic(t),
                        DirectorFamily::Parabolic => unreachable!("rejected above"),
                    };
                    Ok(Leaf {
                        t,
                        vertex: flow.orbit(orbit, t)?,
                        director,
                        derivatives: vec![flow.orbit_derivative(orbit, t)?],
                    })
                })
                .collect()
        }
        CurveSpec::ParabolicOrbit { flow } => {
            let grid = spec.grid()?;
            Ok(grid
                .into_iter()
                .map(|t| Leaf {
                    t,
                    vertex: flow.orbit(t),
                    director: ParabolicFlow::director(t),
                    derivatives: vec![flow.orbit_derivative(t)],
                })
                .collect())
        }
        CurveSpec::Sampled {
            ts,
            vertices,
            directors,
            breakpoints,
        } => {
            validate_sampled(&spec.curve)?;
            Ok((0..ts.len())
                .map(|i| Leaf {
                    t: ts[i],
                    vertex: vertices[i],
                    director: directors[i],
                    derivatives: sampled_derivatives(ts, vertices, breakpoints, i),
                })
                .collect())
        }
    }
}

fn infinitesimal_records(
    leaf: &Leaf,
    family: DirectorFamily,
    tol: f64,
) -> Result<Vec<InfinitesimalRecord>, VerifyError> {
    let frame = null_frame(leaf.director).map_err(CrookedError::from)?;
    leaf.derivatives
        .iter()
        .map(|&d| {
            if d.euclid_norm() <= tol {
                return Err(VerifyError::ZeroDerivative(leaf.t));
            }
            let du = d.dot(frame.u);
            let dm = d.dot(frame.minus);
            let dp = d.dot(frame.plus);
            let su = tol * (d.euclid_norm() * frame.u.euclid_norm()).max(1.0);
            let sm = tol * (d.euclid_norm() * frame.minus.euclid_norm()).max(1.0);
            let sp = tol * (d.euclid_norm() * frame.plus.euclid_norm()).max(1.0);
            let pass = du.abs() <= su
                && match family {
                    DirectorFamily::Ultraparallel => dm >= -sm && dp <= sp,
                    DirectorFamily::Asymptotic => dm >= -sm && dp <= -sp,
                    DirectorFamily::Parabolic => dm >= sm && dp <= sp,
                };
            Ok(InfinitesimalRecord {
                t: leaf.t,
                du,
                dm,
                dp,
                pass,
            })
        })
        .collect()
}

/// Verify a candidate foliation on its grid. Structural defects (crossing
/// or degenerate directors, vanishing derivatives, malformed sampled data)
/// are errors; tangency or disjointness violations are recorded in the
/// report with `pass = false`.
pub fn verify(spec: &FoliationSpec, tol: f64) -> Result<VerificationReport, VerifyError> {
    let leaves = build_leaves(spec)?;
    let grid: Vec<f64> = leaves.iter().map(|l| l.t).collect();

    let first = leaves.first().expect("grid has at least two points");
    let last = leaves.last().expect("grid has at least two points");
    let orientation_consistent = match consistently_oriented(-first.director, last.director) {
        Ok(ok) => ok,
        Err(CrookedError::CrossingPair) => {
            return Err(VerifyError::CrossingDirectors {
                t: first.t,
                s: last.t,
            });
        }
        Err(e) => return Err(e.into()),
    };

    let inf_results: Vec<Result<Vec<InfinitesimalRecord>, VerifyError>> = leaves
        .par_iter()
        .map(|leaf| infinitesimal_records(leaf, spec.family, tol))
        .collect();
    let mut infinitesimal = Vec::with_capacity(leaves.len());
    for r in inf_results {
        infinitesimal.extend(r?);
    }

    let planes: Vec<CrookedPlane> = leaves
        .iter()
        .map(|l| CrookedPlane::new(l.vertex, l.director))
        .collect::<Result<_, _>>()
        .map_err(VerifyError::from)?;

    let index_pairs: Vec<(usize, usize)> = (0..leaves.len())
        .flat_map(|i| ((i + 1)..leaves.len()).map(move |j| (i, j)))
        .collect();
    let pair_results: Vec<Result<PairRecord, VerifyError>> = index_pairs
        .par_iter()
        .map(|&(i, j)| {
            let (t, s) = (grid[i], grid[j]);
            let class = match pair_class(leaves[i].director, leaves[j].director) {
                Ok(PairClass::Crossing) => return Err(VerifyError::CrossingDirectors { t, s }),
                Ok(c) => c,
                Err(e) => return Err(e.into()),
            };
            let cone = cone_disjoint(&planes[i], &planes[j]).map_err(VerifyError::from)?;
            let dg = if class == PairClass::Ultraparallel {
                Some(dg_disjoint(&planes[i], &planes[j]).map_err(VerifyError::from)?)
            } else {
                None
            };
            Ok(PairRecord {
                t,
                s,
                dg,
                cone,
                pass: cone && dg.unwrap_or(true),
            })
        })
        .collect();
    let mut pairs = Vec::with_capacity(pair_results.len());
    for r in pair_results {
        pairs.push(r?);
    }

    Ok(VerificationReport {
        family: spec.family,
        tol,
        grid,
        orientation_consistent,
        infinitesimal,
        pairs,
    })
}
