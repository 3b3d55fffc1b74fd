//! Crooked planes, director-pair classification, and disjointness criteria.
//!
//! A crooked plane `C(p, u)` is the piecewise-linear surface with vertex `p`
//! and spacelike director `u` made of a *stem* (the causal part of `u⊥`) and
//! two null half-plane *wings* attached along the stem's null boundary lines.
//! Two analytic disjointness tests are provided: the Drumm–Goldman inequality
//! for ultraparallel directors and the four-inequality cone criterion, which
//! also covers asymptotic directors.

use crate::minkowski::{
    null_frame, AffinePoint, CausalClass, Isometry, LorentzVector, MinkowskiError, NullFrame,
    EPS_NULL,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrookedError {
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
    #[error("directors span crossing crooked planes")]
    CrossingPair,
    #[error("directors are parallel (degenerate pair)")]
    DegeneratePair,
    #[error("directors form a {0} pair, not ultraparallel")]
    NotUltraparallel(PairClass),
    #[error("no sign choice makes the directors consistently oriented")]
    NoConsistentOrientation,
}

/// Relative position of two crooked-plane director lines, read off from the
/// causal class of the intersection line `u1⊥ ∩ u2⊥ = span(u1 × u2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    Crossing,
    Ultraparallel,
    Asymptotic,
}

impl std::fmt::Display for PairClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PairClass::Crossing => write!(f, "crossing"),
            PairClass::Ultraparallel => write!(f, "ultraparallel"),
            PairClass::Asymptotic => write!(f, "asymptotic"),
        }
    }
}

/// Classify a pair of spacelike directors.
pub fn pair_class(u1: LorentzVector, u2: LorentzVector) -> Result<PairClass, CrookedError> {
    for u in [u1, u2] {
        if !u.is_spacelike() {
            return Err(MinkowskiError::NotSpacelike(u.x1, u.x2, u.x3).into());
        }
    }
    let c = u1.cross(u2);
    if c.euclid_norm() <= EPS_NULL * u1.euclid_norm() * u2.euclid_norm() {
        return Err(CrookedError::DegeneratePair);
    }
    Ok(match c.causal_class() {
        CausalClass::Timelike => PairClass::Crossing,
        CausalClass::Null => PairClass::Asymptotic,
        CausalClass::Spacelike { .. } => PairClass::Ultraparallel,
        CausalClass::Zero => unreachable!("degenerate pairs are rejected above"),
    })
}

/// Whether two spacelike directors are consistently oriented:
/// `u1·u2 < 0` and all four products `u_i · u_j^±` (i ≠ j) are ≤ 0.
///
/// Errors on crossing pairs, for which no orientation is consistent.
pub fn consistently_oriented(u1: LorentzVector, u2: LorentzVector) -> Result<bool, CrookedError> {
    match pair_class(u1, u2) {
        Ok(PairClass::Crossing) => return Err(CrookedError::CrossingPair),
        Ok(_) | Err(CrookedError::DegeneratePair) => {}
        Err(e) => return Err(e),
    }
    let f1 = null_frame(u1)?;
    let f2 = null_frame(u2)?;
    Ok(consistent_with_frames(&f1, &f2))
}

fn consistent_with_frames(f1: &NullFrame, f2: &NullFrame) -> bool {
    if f1.u.dot(f2.u) >= 0.0 {
        return false;
    }
    let band = |a: LorentzVector, b: LorentzVector| EPS_NULL * a.euclid_norm() * b.euclid_norm();
    f1.u.dot(f2.minus) <= band(f1.u, f2.minus)
        && f1.u.dot(f2.plus) <= band(f1.u, f2.plus)
        && f2.u.dot(f1.minus) <= band(f2.u, f1.minus)
        && f2.u.dot(f1.plus) <= band(f2.u, f1.plus)
}

/// Rescale a non-crossing, non-parallel director pair to the unique
/// unit-spacelike consistently oriented representatives of their lines.
pub fn normalize_consistent(
    w1: LorentzVector,
    w2: LorentzVector,
) -> Result<(LorentzVector, LorentzVector), CrookedError> {
    match pair_class(w1, w2)? {
        PairClass::Crossing => return Err(CrookedError::CrossingPair),
        PairClass::Ultraparallel | PairClass::Asymptotic => {}
    }
    let a = w1.unit_spacelike()?;
    let b = w2.unit_spacelike()?;
    for (s1, s2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let u1 = a * s1;
        let u2 = b * s2;
        let f1 = null_frame(u1)?;
        let f2 = null_frame(u2)?;
        if consistent_with_frames(&f1, &f2) {
            return Ok((u1, u2));
        }
    }
    Err(CrookedError::NoConsistentOrientation)
}

/// Position of a vector relative to the stem quadrant
/// `V(u) = {a·u⁻ − b·u⁺ : a, b ≥ 0} \ {0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrantPosition {
    Interior,
    Edge,
    Outside,
}

/// Locate `x` relative to the stem quadrant of `u`.
///
/// Membership requires `x ≠ 0`, `x·u = 0`, `x·u⁻ ≥ 0` and `x·u⁺ ≤ 0`
/// (the frame products recover the coefficients: `x·u⁻ = b·|u⁻·u⁺|`,
/// `x·u⁺ = −a·|u⁻·u⁺|`). The edge is where exactly one coefficient
/// vanishes.
pub fn in_stem_quadrant(
    u: LorentzVector,
    x: LorentzVector,
) -> Result<QuadrantPosition, CrookedError> {
    let f = null_frame(u)?;
    if x.euclid_norm2() == 0.0 {
        return Ok(QuadrantPosition::Outside);
    }
    if x.dot(u).abs() > EPS_NULL * x.euclid_norm() * u.euclid_norm() {
        return Ok(QuadrantPosition::Outside);
    }
    let dm = x.dot(f.minus);
    let dp = x.dot(f.plus);
    let sm = EPS_NULL * x.euclid_norm() * f.minus.euclid_norm();
    let sp = EPS_NULL * x.euclid_norm() * f.plus.euclid_norm();
    if dm < -sm || dp > sp {
        return Ok(QuadrantPosition::Outside);
    }
    match (dm.abs() <= sm, dp.abs() <= sp) {
        // Both coefficients vanish only at the excluded origin.
        (true, true) => Ok(QuadrantPosition::Outside),
        (true, false) | (false, true) => Ok(QuadrantPosition::Edge),
        (false, false) => Ok(QuadrantPosition::Interior),
    }
}

/// A crooked plane: vertex, spacelike director, and the director's cached
/// null frame.
///
/// `C(p, u)` and `C(p, −u)` are the same point set; so are `C(p, λu)` for
/// λ > 0. Construction keeps the director as given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrookedPlane {
    vertex: AffinePoint,
    director: LorentzVector,
    frame: NullFrame,
}

impl CrookedPlane {
    pub fn new(vertex: AffinePoint, director: LorentzVector) -> Result<CrookedPlane, CrookedError> {
        let frame = null_frame(director)?;
        Ok(CrookedPlane {
            vertex,
            director,
            frame,
        })
    }

    pub fn vertex(&self) -> AffinePoint {
        self.vertex
    }

    pub fn director(&self) -> LorentzVector {
        self.director
    }

    pub fn frame(&self) -> &NullFrame {
        &self.frame
    }

    /// Image under an isometry: the vertex moves by the affine action, the
    /// director by the linear part.
    pub fn transformed(&self, g: &Isometry) -> Result<CrookedPlane, CrookedError> {
        CrookedPlane::new(g.apply(self.vertex), g.apply_vector(self.director))
    }

    /// Point of the stem plane `vertex + a·u⁻ + b·u⁺`; lies on the stem
    /// exactly when `a·b ≥ 0`.
    pub fn stem_point(&self, a: f64, b: f64) -> AffinePoint {
        self.vertex + a * self.frame.minus + b * self.frame.plus
    }

    /// Point of the positive wing `vertex + a·u + b·u⁺` (on the wing when
    /// `a ≥ 0`).
    pub fn wing_plus_point(&self, a: f64, b: f64) -> AffinePoint {
        self.vertex + a * self.director + b * self.frame.plus
    }

    /// Point of the negative wing `vertex − a·u + b·u⁻` (on the wing when
    /// `a ≥ 0`).
    pub fn wing_minus_point(&self, a: f64, b: f64) -> AffinePoint {
        self.vertex - a * self.director + b * self.frame.minus
    }

    /// Whether `q` lies on the crooked plane, within a relative tolerance.
    ///
    /// The stem is `{x ∈ u⊥ : x·x ≤ 0}`; the wings are the half-planes
    /// `{a·u + b·u⁺ : a ≥ 0}` and `{−a·u + b·u⁻ : a ≥ 0}` anchored at the
    /// vertex.
    pub fn contains_point(&self, q: AffinePoint, tol: f64) -> bool {
        let x = q - self.vertex;
        let u = self.director;
        let du = x.dot(u);
        let su = tol * (x.euclid_norm() * u.euclid_norm()).max(1.0);
        let stem = du.abs() <= su && x.norm2() <= tol * x.euclid_norm2().max(1.0);
        if stem {
            return true;
        }
        let dp = x.dot(self.frame.plus);
        let sp = tol * (x.euclid_norm() * self.frame.plus.euclid_norm()).max(1.0);
        if dp.abs() <= sp && du >= -su {
            return true;
        }
        let dm = x.dot(self.frame.minus);
        let sm = tol * (x.euclid_norm() * self.frame.minus.euclid_norm()).max(1.0);
        dm.abs() <= sm && du <= su
    }
}

/// The two sides of the Drumm–Goldman inequality for a normalized pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DgTerms {
    /// `(p2 − p1) · (u1 × u2)` for the consistently oriented unit directors.
    pub lhs: f64,
    /// `|(p2 − p1)·u1| + |(p2 − p1)·u2|`.
    pub rhs: f64,
}

impl DgTerms {
    /// Signed distance from the decision boundary; positive means disjoint.
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// Evaluate both sides of the Drumm–Goldman inequality after normalizing
/// the directors to their consistent orientation.
pub fn dg_terms(cp1: &CrookedPlane, cp2: &CrookedPlane) -> Result<DgTerms, CrookedError> {
    match pair_class(cp1.director(), cp2.director()) {
        Ok(PairClass::Ultraparallel) => {}
        Ok(other) => return Err(CrookedError::NotUltraparallel(other)),
        Err(e) => return Err(e),
    }
    let (u1, u2) = normalize_consistent(cp1.director(), cp2.director())?;
    let delta = cp2.vertex() - cp1.vertex();
    Ok(DgTerms {
        lhs: delta.dot(u1.cross(u2)),
        rhs: delta.dot(u1).abs() + delta.dot(u2).abs(),
    })
}

/// Drumm–Goldman disjointness test for ultraparallel directors: the planes
/// are disjoint iff the inequality holds strictly (equality means they
/// touch).
pub fn dg_disjoint(cp1: &CrookedPlane, cp2: &CrookedPlane) -> Result<bool, CrookedError> {
    let t = dg_terms(cp1, cp2)?;
    Ok(t.lhs > t.rhs)
}

/// Cone (four-inequality) disjointness test for non-crossing directors.
///
/// With directors oriented so that `(−u1, u2)` is the consistent pair, the
/// planes are disjoint iff `p2 − p1` lies in the open cone
/// `int(V(u1) + V(u2))`, i.e. all four products
/// `(p2 − p1)·(u1^± × u2^∓)` and `(p2 − p1)·(u1^± × u2^±)` are positive.
/// For asymptotic pairs the inequality for the shared null direction is
/// vacuous and omitted.
pub fn cone_disjoint(cp1: &CrookedPlane, cp2: &CrookedPlane) -> Result<bool, CrookedError> {
    let (w1, w2) = normalize_consistent(cp1.director(), cp2.director())?;
    let u1 = -w1;
    let u2 = w2;
    let f1 = null_frame(u1)?;
    let f2 = null_frame(u2)?;
    let delta = cp2.vertex() - cp1.vertex();
    if delta.dot(f1.minus.cross(f2.plus)) <= 0.0 {
        return Ok(false);
    }
    if delta.dot(f1.plus.cross(f2.minus)) <= 0.0 {
        return Ok(false);
    }
    // Null directions within 1e-9 of each other are treated as shared
    // (asymptotic pair); their inequality degenerates and is skipped.
    if (f1.minus - f2.minus).euclid_norm() > 1e-9 && delta.dot(f1.minus.cross(f2.minus)) <= 0.0 {
        return Ok(false);
    }
    if (f1.plus - f2.plus).euclid_norm() > 1e-9 && delta.dot(f1.plus.cross(f2.plus)) <= 0.0 {
        return Ok(false);
    }
    Ok(true)
}
