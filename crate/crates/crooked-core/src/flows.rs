//! One-parameter isometry groups with hyperbolic or parabolic linear part,
//! their orbit curves, and which orbits admit crooked foliations.
//!
//! The hyperbolic family is kept in a normalized model — the boost
//!
//! ```text
//!         ⎡cosh lt   0   sinh lt⎤
//!   g_t = ⎢   0      1      0   ⎥   plus translation (0, αt, 0)
//!         ⎣sinh lt   0   cosh lt⎦
//! ```
//!
//! with `l, α > 0` — and conjugated into the caller's frame by a stored
//! isometry. The parabolic family is expressed in the basis
//! ℬ = ((0,1,1), (1,0,0), (0,2,0)), in which the linear part is unipotent
//! upper triangular and the orbit of the origin is polynomial in `t`.

use crate::crooked::{dg_terms, normalize_consistent, pair_class, CrookedError, PairClass};
use crate::minkowski::{
    AffinePoint, CausalClass, Isometry, LorentzVector, Mat3, MinkowskiError, EPS_NULL,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("eigenvalue rate l must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("axis translation alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("conjugator must be an orthochronous isometry")]
    BadConjugator,
    #[error("orbit scale k must be nonzero off the axis")]
    BadRegionParams,
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
}

/// Coarse location of a point relative to a hyperbolic flow: on the
/// invariant axis, or in one of the four regions swept by the orbit
/// families, keyed by the causal class of the displacement off the axis.
/// `S { k }` reports the unsigned cylinder radius `k = √(x·x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Axis,
    T,
    WPlus,
    WMinus,
    S { k: f64 },
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Axis => write!(f, "axis"),
            Region::T => write!(f, "T"),
            Region::WPlus => write!(f, "W+"),
            Region::WMinus => write!(f, "W-"),
            Region::S { k } => write!(f, "S({k})"),
        }
    }
}

/// Parameters of a single orbit of a hyperbolic flow, in the normalized
/// model frame. `k` is signed; `t0` is the phase shift along the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitParams {
    /// The invariant axis `(0, αt, 0)`.
    Axis,
    /// `(k sinh l(t+t0), αt, k cosh l(t+t0))` — timelike displacement.
    T { k: f64, t0: f64 },
    /// `(k e^{lt}, αt, k e^{lt})` — expanding null displacement.
    WPlus { k: f64 },
    /// `(k e^{−lt}, αt, −k e^{−lt})` — contracting null displacement.
    WMinus { k: f64 },
    /// `(k cosh l(t+t0), αt, k sinh l(t+t0))` — spacelike displacement.
    S { k: f64, t0: f64 },
}

impl OrbitParams {
    fn validate(&self) -> Result<(), FlowError> {
        let k = match self {
            OrbitParams::Axis => return Ok(()),
            OrbitParams::T { k, .. }
            | OrbitParams::WPlus { k }
            | OrbitParams::WMinus { k }
            | OrbitParams::S { k, .. } => *k,
        };
        if k == 0.0 {
            return Err(FlowError::BadRegionParams);
        }
        Ok(())
    }
}

impl std::fmt::Display for OrbitParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitParams::Axis => write!(f, "axis"),
            OrbitParams::T { k, t0 } => write!(f, "T(k={k}, t0={t0})"),
            OrbitParams::WPlus { k } => write!(f, "W+(k={k})"),
            OrbitParams::WMinus { k } => write!(f, "W-(k={k})"),
            OrbitParams::S { k, t0 } => write!(f, "S(k={k}, t0={t0})"),
        }
    }
}

/// A one-parameter group of hyperbolic isometries, stored as the normalized
/// model (`l`, `alpha`) plus a conjugating isometry into the working frame.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicFlow {
    l: f64,
    alpha: f64,
    conjugator: Isometry,
    conjugator_inv: Isometry,
}

impl HyperbolicFlow {
    /// Flow in the normalized model frame (identity conjugator).
    pub fn new(l: f64, alpha: f64) -> Result<HyperbolicFlow, FlowError> {
        HyperbolicFlow::with_conjugator(l, alpha, Isometry::IDENTITY)
    }

    /// Flow conjugated into a working frame. The conjugator must be a valid
    /// isometry and orthochronous, so that the model's time orientation (and
    /// with it the labelling of null frames) carries over.
    pub fn with_conjugator(
        l: f64,
        alpha: f64,
        conjugator: Isometry,
    ) -> Result<HyperbolicFlow, FlowError> {
        if !(l > 0.0) {
            return Err(FlowError::NonPositiveRate(l));
        }
        if !(alpha > 0.0) {
            return Err(FlowError::NonPositiveAlpha(alpha));
        }
        if !conjugator.linear.is_lorentz() || !conjugator.linear.is_orthochronous() {
            return Err(FlowError::BadConjugator);
        }
        let conjugator_inv = conjugator.inverse();
        Ok(HyperbolicFlow {
            l,
            alpha,
            conjugator,
            conjugator_inv,
        })
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Generalized Margulis invariant `μ = α / l`, the same for every
    /// nontrivial power of the flow.
    pub fn mu(&self) -> f64 {
        self.alpha / self.l
    }

    pub fn conjugator(&self) -> &Isometry {
        &self.conjugator
    }

    fn model_linear(&self, t: f64) -> Mat3 {
        let (s, c) = ((self.l * t).sinh(), (self.l * t).cosh());
        Mat3([[c, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, c]])
    }

    fn model_isometry(&self, t: f64) -> Isometry {
        Isometry::from_parts(
            self.model_linear(t),
            LorentzVector::new(0.0, self.alpha * t, 0.0),
        )
    }

    /// Linear part of `γ_t` in the working frame.
    pub fn linear_at(&self, t: f64) -> Mat3 {
        self.conjugator
            .linear
            .mul(&self.model_linear(t))
            .mul(&self.conjugator_inv.linear)
    }

    /// The isometry `γ_t` in the working frame.
    pub fn isometry_at(&self, t: f64) -> Isometry {
        self.conjugator
            .compose(&self.model_isometry(t))
            .compose(&self.conjugator_inv)
    }

    fn model_orbit(&self, params: &OrbitParams, t: f64) -> LorentzVector {
        let (l, a) = (self.l, self.alpha);
        match *params {
            OrbitParams::Axis => LorentzVector::new(0.0, a * t, 0.0),
            OrbitParams::T { k, t0 } => {
                let th = l * (t + t0);
                LorentzVector::new(k * th.sinh(), a * t, k * th.cosh())
            }
            OrbitParams::WPlus { k } => {
                let e = (l * t).exp();
                LorentzVector::new(k * e, a * t, k * e)
            }
            OrbitParams::WMinus { k } => {
                let e = (-l * t).exp();
                LorentzVector::new(k * e, a * t, -k * e)
            }
            OrbitParams::S { k, t0 } => {
                let th = l * (t + t0);
                LorentzVector::new(k * th.cosh(), a * t, k * th.sinh())
            }
        }
    }

    /// Point of the orbit with the given parameters at flow time `t`,
    /// in the working frame.
    pub fn orbit(&self, params: &OrbitParams, t: f64) -> Result<AffinePoint, FlowError> {
        params.validate()?;
        Ok(self
            .conjugator
            .apply(AffinePoint::from_vector(self.model_orbit(params, t))))
    }

    /// Closed-form orbit derivative `ṗ_t` in the working frame.
    pub fn orbit_derivative(
        &self,
        params: &OrbitParams,
        t: f64,
    ) -> Result<LorentzVector, FlowError> {
        params.validate()?;
        let (l, a) = (self.l, self.alpha);
        let d = match *params {
            OrbitParams::Axis => LorentzVector::new(0.0, a, 0.0),
            OrbitParams::T { k, t0 } => {
                let th = l * (t + t0);
                LorentzVector::new(k * l * th.cosh(), a, k * l * th.sinh())
            }
            OrbitParams::WPlus { k } => {
                let e = (l * t).exp();
                LorentzVector::new(k * l * e, a, k * l * e)
            }
            OrbitParams::WMinus { k } => {
                let e = (-l * t).exp();
                LorentzVector::new(-k * l * e, a, k * l * e)
            }
            OrbitParams::S { k, t0 } => {
                let th = l * (t + t0);
                LorentzVector::new(k * l * th.sinh(), a, k * l * th.cosh())
            }
        };
        Ok(self.conjugator.apply_vector(d))
    }

    /// Director curve of the ultraparallel family, `g_t` applied to the
    /// unit-spacelike fixed-plane vector: `(cosh lt, 0, sinh lt)` in the
    /// model.
    pub fn director_ultraparallel(&self, t: f64) -> LorentzVector {
        let th = self.l * t;
        self.conjugator
            .apply_vector(LorentzVector::new(th.cosh(), 0.0, th.sinh()))
    }

    /// Director curve of the asymptotic family, `(e^{lt}, 1, e^{lt})` in the
    /// model: every director shares the null direction `(1, 0, 1)`.
    pub fn director_asymptotic(&self, t: f64) -> LorentzVector {
        let e = (self.l * t).exp();
        self.conjugator.apply_vector(LorentzVector::new(e, 1.0, e))
    }

    /// Classify a point by the causal class of its displacement off the
    /// invariant axis.
    pub fn region_classify(&self, p: AffinePoint) -> Region {
        let m = self.conjugator_inv.apply(p).to_vector();
        let x = LorentzVector::new(m.x1, 0.0, m.x3);
        if x.euclid_norm() <= EPS_NULL * m.euclid_norm().max(1.0) {
            return Region::Axis;
        }
        match x.causal_class() {
            CausalClass::Zero => Region::Axis,
            CausalClass::Timelike => Region::T,
            CausalClass::Null => {
                if x.x1 * x.x3 > 0.0 {
                    Region::WPlus
                } else {
                    Region::WMinus
                }
            }
            CausalClass::Spacelike { .. } => Region::S {
                k: x.norm2().sqrt(),
            },
        }
    }

    /// Recover the parameters of the unique orbit through `p`.
    pub fn orbit_through(&self, p: AffinePoint) -> OrbitParams {
        let m = self.conjugator_inv.apply(p).to_vector();
        let tp = m.x2 / self.alpha;
        match self.region_classify(p) {
            Region::Axis => OrbitParams::Axis,
            Region::S { .. } => {
                let th = (m.x3 / m.x1).atanh();
                OrbitParams::S {
                    k: m.x1 / th.cosh(),
                    t0: th / self.l - tp,
                }
            }
            Region::T => {
                let th = (m.x1 / m.x3).atanh();
                OrbitParams::T {
                    k: m.x3 / th.cosh(),
                    t0: th / self.l - tp,
                }
            }
            Region::WPlus => OrbitParams::WPlus {
                k: m.x1 * (-self.l * tp).exp(),
            },
            Region::WMinus => OrbitParams::WMinus {
                k: m.x1 * (self.l * tp).exp(),
            },
        }
    }

    /// Whether the orbit through `p` admits a crooked foliation with the
    /// ultraparallel director family: the axis always does; an S-orbit does
    /// exactly when `|k| ≤ μ` and its phase vanishes; T- and W-orbits never
    /// do.
    pub fn admits_ultraparallel(&self, p: AffinePoint) -> bool {
        match self.orbit_through(p) {
            OrbitParams::Axis => true,
            OrbitParams::S { k, t0 } => {
                k.abs() <= self.mu() + EPS_NULL * self.mu().max(1.0)
                    && (self.l * t0).abs() <= EPS_NULL
            }
            _ => false,
        }
    }

    /// Whether the orbit through `p` admits a crooked foliation with the
    /// asymptotic director family; returns the orbit parameters when it
    /// does.
    ///
    /// The candidates with `ṗ_t ⊥ u_t` are: W⁻ orbits with `k = μ/2`,
    /// T-orbits with `k = −μe^{lt0}`, and S-orbits with `k = μe^{lt0}`. The
    /// axis and W⁺ orbits have `ṗ·u_t = α ≠ 0` and never qualify. An
    /// S-orbit candidate additionally needs `t0 ≤ 0`: for `t0 > 0` its
    /// derivative leaves the stem quadrant (`ṗ·u⁻ ∝ 1 − e^{2lt0} < 0`).
    pub fn admits_asymptotic(&self, p: AffinePoint) -> Option<OrbitParams> {
        let close = |k: f64, target: f64| (k - target).abs() <= 1e-9 * target.abs().max(1.0);
        let params = self.orbit_through(p);
        match params {
            OrbitParams::Axis | OrbitParams::WPlus { .. } => None,
            OrbitParams::WMinus { k } => close(k, self.mu() / 2.0).then_some(params),
            OrbitParams::T { k, t0 } => {
                close(k, -self.mu() * (self.l * t0).exp()).then_some(params)
            }
            OrbitParams::S { k, t0 } => (close(k, self.mu() * (self.l * t0).exp())
                && self.l * t0 <= EPS_NULL)
                .then_some(params),
        }
    }
}

/// A one-parameter group of parabolic isometries, determined by the
/// translational part `(a, b, c)` of its time-1 element in the basis ℬ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicFlow {
    a: f64,
    b: f64,
    c: f64,
}

/// Change-of-basis matrix whose columns are ℬ = ((0,1,1), (1,0,0), (0,2,0)).
const BASIS: Mat3 = Mat3([[0.0, 1.0, 0.0], [1.0, 0.0, 2.0], [1.0, 0.0, 0.0]]);

/// Inverse of [`BASIS`], exact: det ℬ = 2.
const BASIS_INV: Mat3 = Mat3([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 0.5, -0.5]]);

impl ParabolicFlow {
    pub fn new(a: f64, b: f64, c: f64) -> ParabolicFlow {
        ParabolicFlow { a, b, c }
    }

    pub fn abc(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    /// Convert coordinates in ℬ to standard coordinates.
    pub fn to_standard(v: LorentzVector) -> LorentzVector {
        BASIS.apply(v)
    }

    /// Convert standard coordinates to coordinates in ℬ.
    pub fn from_standard(v: LorentzVector) -> LorentzVector {
        BASIS_INV.apply(v)
    }

    /// Linear part of `g_t` in the basis ℬ: unipotent upper triangular.
    pub fn linear_in_basis(t: f64) -> Mat3 {
        Mat3([[1.0, t, -t * t], [0.0, 1.0, -2.0 * t], [0.0, 0.0, 1.0]])
    }

    /// Linear part of `g_t` in standard coordinates.
    pub fn linear_at(t: f64) -> Mat3 {
        BASIS.mul(&Self::linear_in_basis(t)).mul(&BASIS_INV)
    }

    fn translation_at(&self, t: f64) -> LorentzVector {
        // Cumulative sum of the group action on (a, b, c), extended from
        // integer powers to real t; polynomial in t of degree ≤ 3.
        let m = Mat3([
            [
                t,
                (t - 1.0) * t / 2.0,
                -(t - 1.0) * t * (2.0 * t - 1.0) / 6.0,
            ],
            [0.0, t, -(t - 1.0) * t],
            [0.0, 0.0, t],
        ]);
        BASIS.apply(m.apply(LorentzVector::new(self.a, self.b, self.c)))
    }

    /// The isometry `γ_t` in standard coordinates.
    pub fn isometry_at(&self, t: f64) -> Isometry {
        Isometry::from_parts(Self::linear_at(t), self.translation_at(t))
    }

    /// Orbit of the origin: `γ_t(o)`.
    pub fn orbit(&self, t: f64) -> AffinePoint {
        AffinePoint::from_vector(self.translation_at(t))
    }

    /// Closed-form orbit derivative.
    pub fn orbit_derivative(&self, t: f64) -> LorentzVector {
        let m = Mat3([
            [1.0, t - 0.5, -t * t + t - 1.0 / 6.0],
            [0.0, 1.0, -2.0 * t + 1.0],
            [0.0, 0.0, 1.0],
        ]);
        BASIS.apply(m.apply(LorentzVector::new(self.a, self.b, self.c)))
    }

    /// Normalized director path `(t, 1, 0)` in ℬ, i.e. `(1, t, t)` in
    /// standard coordinates; every director shares the null direction
    /// `(0, 1, 1)`.
    pub fn director(t: f64) -> LorentzVector {
        LorentzVector::new(1.0, t, t)
    }

    /// Whether the orbit admits a crooked foliation with the parabolic
    /// director family: `b = −c` (tangency to `u_t⊥`), `c > 0` (derivative
    /// off the shared null edge), and `a ≥ −4c/3` (inside the quadrant;
    /// non-strict — equality puts `ṗ` on the varying null edge, which is
    /// allowed).
    pub fn admits(&self) -> bool {
        let scale = self.b.abs().max(self.c.abs()).max(1.0);
        (self.b + self.c).abs() <= EPS_NULL * scale
            && self.c > 0.0
            && self.a + 4.0 * self.c / 3.0 >= -EPS_NULL * self.c.abs().max(1.0)
    }
}

/// How a disjoint ultraparallel pair of crooked planes relates to the
/// hyperbolic flow built through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalibrationKind {
    /// Both vertices lie on a common S-orbit with phase `t0 = 0`: the flow
    /// interpolates the pair by a crooked foliation.
    Calibrated,
    /// Both vertices lie on a common S-orbit but the phase is nonzero.
    Miscalibrated,
    /// The vertex chord is parallel to the flow axis; the axis foliation
    /// interpolates the pair.
    Axis,
    /// The off-axis part of the vertex chord is not timelike: the vertices
    /// lie on no common S-orbit (they share a T- or W-orbit instead).
    NonTimelikeChord,
}

impl std::fmt::Display for CalibrationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CalibrationKind::Calibrated => write!(f, "calibrated"),
            CalibrationKind::Miscalibrated => write!(f, "miscalibrated"),
            CalibrationKind::Axis => write!(f, "axis"),
            CalibrationKind::NonTimelikeChord => write!(f, "non-timelike chord"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalibrateError {
    #[error(transparent)]
    Crooked(#[from] CrookedError),
    #[error("crooked planes are not disjoint (Drumm–Goldman margin {0:.6e})")]
    NotDisjoint(f64),
}

/// Result of calibrating a hyperbolic flow through a disjoint pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    /// Flow with `γ_0 = id`, `γ_1` carrying `(p0, ±u0)` to `(p1, ±u1)` when
    /// the vertices share an orbit; conjugator maps the model onto the
    /// working frame.
    pub flow: HyperbolicFlow,
    pub kind: CalibrationKind,
    /// Parameters of the orbit through both vertices (axis, S, T or W).
    pub orbit: OrbitParams,
    /// Coefficient of the expanding null direction in the chord
    /// decomposition `Δp = α·x⁰ + k1·x⁺ + k2·x⁻`.
    pub k1: f64,
    /// Coefficient of the contracting null direction.
    pub k2: f64,
    /// `|ln(k1/k2) − l|`, which equals `2l·|t0|` on a shared S-orbit;
    /// `None` when the ratio is undefined (`k1·k2 ≤ 0`).
    pub ln_ratio_error: Option<f64>,
}

impl Calibration {
    pub fn is_calibrated(&self) -> bool {
        self.kind == CalibrationKind::Calibrated
    }
}

/// Build the hyperbolic flow through a disjoint ultraparallel pair of
/// crooked planes `C(p0, u0)`, `C(p1, u1)` and report whether the pair is
/// calibrated (vertices on a common S-orbit with zero phase), in which case
/// the flow's orbit interpolates them by a crooked foliation.
pub fn calibrate(
    p0: AffinePoint,
    u0: LorentzVector,
    p1: AffinePoint,
    u1: LorentzVector,
) -> Result<Calibration, CalibrateError> {
    match pair_class(u0, u1) {
        Ok(PairClass::Ultraparallel) => {}
        Ok(other) => return Err(CrookedError::NotUltraparallel(other).into()),
        Err(e) => return Err(e.into()),
    }
    let cp0 = crate::crooked::CrookedPlane::new(p0, u0)?;
    let cp1 = crate::crooked::CrookedPlane::new(p1, u1)?;
    let terms = dg_terms(&cp0, &cp1)?;
    if !(terms.lhs > terms.rhs) {
        return Err(CalibrateError::NotDisjoint(terms.margin()));
    }

    // Directors oriented as the model path: (−ũ0, ũ1) consistent.
    let (w0, w1) = normalize_consistent(u0, u1)?;
    let tilde0 = -w0;
    let tilde1 = w1;

    // Common orthogonal direction; sign fixed by Δp·x > 0 (guaranteed by
    // the inequality above since x is the positive multiple of w0 × w1).
    let x = w0.cross(w1).unit_spacelike().map_err(CrookedError::from)?;

    // Frame map: columns (ũ0, x, x × ũ0) form a Lorentz matrix with
    // determinant one, orthochronous by construction.
    let lmap = Mat3::from_columns(tilde0, x, x.cross(tilde0));
    let lmap_inv = lmap.inverse();
    let delta = p1 - p0;
    let dm = lmap_inv.apply(delta);
    let u1m = lmap_inv.apply(tilde1);

    // In the model, ũ1 = (cosh l, 0, sinh l) with l > 0 forced by the
    // consistent orientation.
    let l = (u1m.x1 + u1m.x3).ln();
    let alpha = dm.x2;
    let k1 = (dm.x1 + dm.x3) / 2.0;
    let k2 = (dm.x3 - dm.x1) / 2.0;

    let axis_band = EPS_NULL * dm.euclid_norm().max(1.0);
    let make_flow = |translation: LorentzVector| {
        HyperbolicFlow::with_conjugator(l, alpha, Isometry::from_parts(lmap, translation))
            .expect("frame map is Lorentz and orthochronous; l, alpha positive by construction")
    };

    if k1.abs() <= axis_band && k2.abs() <= axis_band {
        // Chord along the axis: conjugator sends the model origin to p0.
        return Ok(Calibration {
            flow: make_flow(p0.to_vector()),
            kind: CalibrationKind::Axis,
            orbit: OrbitParams::Axis,
            k1,
            k2,
            ln_ratio_error: None,
        });
    }

    if k1 * k2 > 0.0 {
        // Common S-orbit: k1 = (k/2)e^{lt0}(e^l − 1), k2 = (k/2)e^{−lt0}(1 − e^{−l}).
        let ln_ratio = (k1 / k2).ln();
        let t0 = (ln_ratio - l) / (2.0 * l);
        let k = 2.0 * k1 * (-l * t0).exp() / (l.exp() - 1.0);
        let error = (ln_ratio - l).abs();
        let anchor = LorentzVector::new(k * (l * t0).cosh(), 0.0, k * (l * t0).sinh());
        let flow = make_flow(p0.to_vector() - lmap.apply(anchor));
        let kind = if error <= 1e-8 * l.max(1.0) {
            CalibrationKind::Calibrated
        } else {
            CalibrationKind::Miscalibrated
        };
        return Ok(Calibration {
            flow,
            kind,
            orbit: OrbitParams::S { k, t0 },
            k1,
            k2,
            ln_ratio_error: Some(error),
        });
    }

    // k1·k2 ≤ 0: the chord's off-axis part is spacelike or null, so the
    // vertices share a T-orbit (or a W-orbit when one coefficient vanishes).
    let (orbit, anchor) = if k1.abs() <= axis_band {
        // k2 alone: W⁻ orbit, where k2 = k(1 − e^{−l}).
        let k = k2 / (1.0 - (-l).exp());
        (OrbitParams::WMinus { k }, LorentzVector::new(k, 0.0, -k))
    } else if k2.abs() <= axis_band {
        // k1 alone: W⁺ orbit, where k1 = k(e^l − 1).
        let k = k1 / (l.exp() - 1.0);
        (OrbitParams::WPlus { k }, LorentzVector::new(k, 0.0, k))
    } else {
        // T-orbit: k1 = (k/2)e^{lt0}(e^l − 1), k2 = (k/2)e^{−lt0}(e^{−l} − 1).
        let t0 = ((k1 / -k2).abs().ln() - l) / (2.0 * l);
        let k = 2.0 * k1 * (-l * t0).exp() / (l.exp() - 1.0);
        (
            OrbitParams::T { k, t0 },
            LorentzVector::new(k * (l * t0).sinh(), 0.0, k * (l * t0).cosh()),
        )
    };
    Ok(Calibration {
        flow: make_flow(p0.to_vector() - lmap.apply(anchor)),
        kind: CalibrationKind::NonTimelikeChord,
        orbit,
        k1,
        k2,
        ln_ratio_error: None,
    })
}
