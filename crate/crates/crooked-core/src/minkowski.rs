//! Lorentzian linear and affine algebra for Minkowski 2+1 space.
//!
//! Vectors carry the signature (2,1) scalar product
//! `x · y = x1*y1 + x2*y2 - x3*y3`. Points of the affine space are a
//! separate type so that point/vector arithmetic stays honest: points
//! subtract to vectors and translate by vectors, nothing else.

use thiserror::Error;

/// Half-width of the null band used when classifying causal characters.
pub const EPS_NULL: f64 = 1e-9;

/// Tolerance for Lorentz-orthogonality checks on matrices.
pub const EPS_ORTH: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinkowskiError {
    #[error("vector ({0}, {1}, {2}) is not spacelike")]
    NotSpacelike(f64, f64, f64),
    #[error("matrix is not Lorentz-orthogonal with determinant one (deviation {0:.3e})")]
    NotLorentzOrthogonal(f64),
}

/// A vector of Minkowski 2+1 space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzVector {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Causal character of a vector under the (2,1) scalar product.
///
/// The null band is `|v·v| <= EPS_NULL * max(1, |v|^2)` where `|v|` is the
/// Euclidean norm; the `unit` flag on spacelike vectors marks `v·v = 1`
/// within `EPS_NULL`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Zero,
    Timelike,
    Null,
    Spacelike { unit: bool },
}

impl std::fmt::Display for CausalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CausalClass::Zero => write!(f, "zero"),
            CausalClass::Timelike => write!(f, "timelike"),
            CausalClass::Null => write!(f, "null"),
            CausalClass::Spacelike { unit: true } => write!(f, "spacelike unit"),
            CausalClass::Spacelike { unit: false } => write!(f, "spacelike"),
        }
    }
}

impl LorentzVector {
    pub const ZERO: LorentzVector = LorentzVector {
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        LorentzVector { x1, x2, x3 }
    }

    /// Signature (2,1) scalar product.
    pub fn dot(self, other: LorentzVector) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2 - self.x3 * other.x3
    }

    /// `v · v` under the Lorentzian product.
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    /// Lorentzian cross product, fixed by the determinant identity
    /// `cross(u, v) · w = det[u v w]` (columns) for all `w`.
    ///
    /// Concretely this is the Euclidean cross product with the sign of the
    /// third component flipped.
    pub fn cross(self, other: LorentzVector) -> LorentzVector {
        LorentzVector {
            x1: self.x2 * other.x3 - self.x3 * other.x2,
            x2: self.x3 * other.x1 - self.x1 * other.x3,
            x3: -(self.x1 * other.x2 - self.x2 * other.x1),
        }
    }

    pub fn euclid_norm2(self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn euclid_norm(self) -> f64 {
        self.euclid_norm2().sqrt()
    }

    pub fn causal_class(self) -> CausalClass {
        let e2 = self.euclid_norm2();
        if e2 == 0.0 {
            return CausalClass::Zero;
        }
        let q = self.norm2();
        if q.abs() <= EPS_NULL * e2.max(1.0) {
            CausalClass::Null
        } else if q < 0.0 {
            CausalClass::Timelike
        } else {
            CausalClass::Spacelike {
                unit: (q - 1.0).abs() <= EPS_NULL,
            }
        }
    }

    pub fn is_spacelike(self) -> bool {
        matches!(self.causal_class(), CausalClass::Spacelike { .. })
    }

    /// Rescale a spacelike vector to unit Lorentzian norm.
    pub fn unit_spacelike(self) -> Result<LorentzVector, MinkowskiError> {
        if !self.is_spacelike() {
            return Err(MinkowskiError::NotSpacelike(self.x1, self.x2, self.x3));
        }
        Ok(self * (1.0 / self.norm2().sqrt()))
    }
}

impl std::ops::Add for LorentzVector {
    type Output = LorentzVector;
    fn add(self, o: LorentzVector) -> LorentzVector {
        LorentzVector::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl std::ops::Sub for LorentzVector {
    type Output = LorentzVector;
    fn sub(self, o: LorentzVector) -> LorentzVector {
        LorentzVector::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl std::ops::Neg for LorentzVector {
    type Output = LorentzVector;
    fn neg(self) -> LorentzVector {
        LorentzVector::new(-self.x1, -self.x2, -self.x3)
    }
}

impl std::ops::Mul<f64> for LorentzVector {
    type Output = LorentzVector;
    fn mul(self, s: f64) -> LorentzVector {
        LorentzVector::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl std::ops::Mul<LorentzVector> for f64 {
    type Output = LorentzVector;
    fn mul(self, v: LorentzVector) -> LorentzVector {
        v * self
    }
}

/// A point of the affine Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinePoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl AffinePoint {
    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        AffinePoint { x1, x2, x3 }
    }

    pub const fn origin() -> Self {
        AffinePoint::new(0.0, 0.0, 0.0)
    }

    /// Position vector relative to the origin.
    pub fn to_vector(self) -> LorentzVector {
        LorentzVector::new(self.x1, self.x2, self.x3)
    }

    pub fn from_vector(v: LorentzVector) -> Self {
        AffinePoint::new(v.x1, v.x2, v.x3)
    }
}

impl std::ops::Sub for AffinePoint {
    type Output = LorentzVector;
    fn sub(self, o: AffinePoint) -> LorentzVector {
        LorentzVector::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl std::ops::Add<LorentzVector> for AffinePoint {
    type Output = AffinePoint;
    fn add(self, v: LorentzVector) -> AffinePoint {
        AffinePoint::new(self.x1 + v.x1, self.x2 + v.x2, self.x3 + v.x3)
    }
}

impl std::ops::Sub<LorentzVector> for AffinePoint {
    type Output = AffinePoint;
    fn sub(self, v: LorentzVector) -> AffinePoint {
        self + (-v)
    }
}

/// The null frame of a spacelike vector `u`.
///
/// `minus` and `plus` are the two null directions orthogonal to `u`,
/// normalised to third coordinate exactly 1, ordered so that
/// `det[u, minus, plus] > 0`. Their product satisfies `minus · plus < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullFrame {
    pub u: LorentzVector,
    pub minus: LorentzVector,
    pub plus: LorentzVector,
}

/// Compute the null frame of a spacelike vector.
///
/// The null directions orthogonal to `u = (u1, u2, u3)` with third
/// coordinate 1 are `(a, b, 1)` with `a^2 + b^2 = 1` and
/// `a*u1 + b*u2 = u3`; spacelikeness guarantees two solutions.
pub fn null_frame(u: LorentzVector) -> Result<NullFrame, MinkowskiError> {
    if !u.is_spacelike() {
        return Err(MinkowskiError::NotSpacelike(u.x1, u.x2, u.x3));
    }
    let r2 = u.x1 * u.x1 + u.x2 * u.x2;
    let d = u.x3;
    // r2 - d^2 = u·u > 0 for spacelike u.
    let m = (r2 - d * d).sqrt();
    let a = LorentzVector::new((u.x1 * d - u.x2 * m) / r2, (u.x2 * d + u.x1 * m) / r2, 1.0);
    let b = LorentzVector::new((u.x1 * d + u.x2 * m) / r2, (u.x2 * d - u.x1 * m) / r2, 1.0);
    // Orient the pair so that det[u, minus, plus] > 0.
    if u.cross(a).dot(b) > 0.0 {
        Ok(NullFrame {
            u,
            minus: a,
            plus: b,
        })
    } else {
        Ok(NullFrame {
            u,
            minus: b,
            plus: a,
        })
    }
}

/// Check the frame-swap law under negation: the frame of `-u` is the frame
/// of `u` with the roles of `minus` and `plus` exchanged.
pub fn negation_swaps_null_frame(u: LorentzVector) -> Result<bool, MinkowskiError> {
    let f = null_frame(u)?;
    let g = null_frame(-u)?;
    let close = |x: LorentzVector, y: LorentzVector| (x - y).euclid_norm() <= 1e-12;
    Ok(close(g.minus, f.plus) && close(g.plus, f.minus))
}

/// A 3x3 matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Matrix with the given columns.
    pub fn from_columns(c1: LorentzVector, c2: LorentzVector, c3: LorentzVector) -> Mat3 {
        Mat3([
            [c1.x1, c2.x1, c3.x1],
            [c1.x2, c2.x2, c3.x2],
            [c1.x3, c2.x3, c3.x3],
        ])
    }

    pub fn column(&self, j: usize) -> LorentzVector {
        LorentzVector::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn apply(&self, v: LorentzVector) -> LorentzVector {
        let m = &self.0;
        LorentzVector::new(
            m[0][0] * v.x1 + m[0][1] * v.x2 + m[0][2] * v.x3,
            m[1][0] * v.x1 + m[1][1] * v.x2 + m[1][2] * v.x3,
            m[2][0] * v.x1 + m[2][1] * v.x2 + m[2][2] * v.x3,
        )
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Mat3(r)
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Inverse via the adjugate; panics on a singular matrix.
    pub fn inverse(&self) -> Mat3 {
        let m = &self.0;
        let det = self.det();
        assert!(det != 0.0, "singular matrix");
        let inv = |r1: usize, c1: usize, r2: usize, c2: usize| {
            m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
        };
        let adj = [
            [inv(1, 1, 2, 2), -inv(0, 1, 2, 2), inv(0, 1, 1, 2)],
            [-inv(1, 0, 2, 2), inv(0, 0, 2, 2), -inv(0, 0, 1, 2)],
            [inv(1, 0, 2, 1), -inv(0, 0, 2, 1), inv(0, 0, 1, 1)],
        ];
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = adj[i][j] / det;
            }
        }
        Mat3(r)
    }

    pub fn max_abs_diff(&self, o: &Mat3) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - o.0[i][j]).abs());
            }
        }
        worst
    }

    /// Deviation from the Lorentz group: `max(|AᵀJA - J|, |det A - 1|)`.
    pub fn lorentz_deviation(&self) -> f64 {
        const J: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        let gram = self.transpose().mul(&J).mul(self);
        gram.max_abs_diff(&J).max((self.det() - 1.0).abs())
    }

    pub fn is_lorentz(&self) -> bool {
        self.lorentz_deviation() <= EPS_ORTH
    }

    /// Preserves the time orientation (maps the future cone to itself).
    pub fn is_orthochronous(&self) -> bool {
        // Image of the future-pointing (0, 0, 1) keeps a positive third
        // coordinate exactly when the map is orthochronous.
        self.0[2][2] > 0.0
    }
}

/// Conjugacy class of the linear part of an isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearClass {
    Identity,
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl std::fmt::Display for LinearClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinearClass::Identity => write!(f, "identity"),
            LinearClass::Hyperbolic => write!(f, "hyperbolic"),
            LinearClass::Parabolic => write!(f, "parabolic"),
            LinearClass::Elliptic => write!(f, "elliptic"),
        }
    }
}

/// Classify a Lorentz-orthogonal matrix with determinant one.
///
/// The characteristic polynomial of such a matrix factors as
/// `(λ - 1)(λ² - (tr - 1)λ + 1)`, so the trace decides the class:
/// `tr > 3` gives eigenvalues `{e^-l, 1, e^l}` (hyperbolic), `tr = 3` with
/// the matrix not the identity is parabolic, anything else is elliptic.
pub fn linear_class(m: &Mat3) -> Result<LinearClass, MinkowskiError> {
    let dev = m.lorentz_deviation();
    if dev > EPS_ORTH {
        return Err(MinkowskiError::NotLorentzOrthogonal(dev));
    }
    if m.max_abs_diff(&Mat3::IDENTITY) <= EPS_NULL {
        return Ok(LinearClass::Identity);
    }
    let tr = m.trace();
    if tr > 3.0 + EPS_NULL {
        Ok(LinearClass::Hyperbolic)
    } else if tr >= 3.0 - EPS_NULL {
        Ok(LinearClass::Parabolic)
    } else {
        Ok(LinearClass::Elliptic)
    }
}

/// An affine isometry `p ↦ o + A(p - o) + v` of Minkowski space, with
/// Lorentz-orthogonal linear part `A` of determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub linear: Mat3,
    pub translation: LorentzVector,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        linear: Mat3::IDENTITY,
        translation: LorentzVector::ZERO,
    };

    /// Validated constructor; rejects linear parts that are not
    /// Lorentz-orthogonal with determinant one.
    pub fn new(linear: Mat3, translation: LorentzVector) -> Result<Isometry, MinkowskiError> {
        let dev = linear.lorentz_deviation();
        if dev > EPS_ORTH {
            return Err(MinkowskiError::NotLorentzOrthogonal(dev));
        }
        Ok(Isometry {
            linear,
            translation,
        })
    }

    /// Constructor for matrices known to be Lorentz by construction.
    pub(crate) fn from_parts(linear: Mat3, translation: LorentzVector) -> Isometry {
        Isometry {
            linear,
            translation,
        }
    }

    pub fn apply(&self, p: AffinePoint) -> AffinePoint {
        AffinePoint::from_vector(self.linear.apply(p.to_vector()) + self.translation)
    }

    pub fn apply_vector(&self, v: LorentzVector) -> LorentzVector {
        self.linear.apply(v)
    }

    /// Composition acting as `apply(compose(g, h), p) = apply(g, apply(h, p))`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            linear: self.linear.mul(&other.linear),
            translation: self.linear.apply(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let inv = self.linear.inverse();
        Isometry {
            linear: inv,
            translation: -inv.apply(self.translation),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x1: f64, x2: f64, x3: f64) -> LorentzVector {
        LorentzVector::new(x1, x2, x3)
    }

    #[test]
    fn dot_has_signature_two_one() {
        assert_eq!(v(1.0, 0.0, 0.0).dot(v(1.0, 0.0, 0.0)), 1.0);
        assert_eq!(v(0.0, 1.0, 0.0).dot(v(0.0, 1.0, 0.0)), 1.0);
        assert_eq!(v(0.0, 0.0, 1.0).dot(v(0.0, 0.0, 1.0)), -1.0);
        assert_eq!(v(1.0, 2.0, 3.0).dot(v(4.0, 5.0, 6.0)), 4.0 + 10.0 - 18.0);
    }

    #[test]
    fn causal_classes() {
        assert_eq!(v(0.0, 0.0, 1.0).causal_class(), CausalClass::Timelike);
        assert_eq!(v(1.0, 0.0, 1.0).causal_class(), CausalClass::Null);
        assert_eq!(
            v(1.0, 0.0, 0.0).causal_class(),
            CausalClass::Spacelike { unit: true }
        );
        assert_eq!(
            v(2.0, 0.0, 0.0).causal_class(),
            CausalClass::Spacelike { unit: false }
        );
        assert_eq!(v(0.0, 0.0, 0.0).causal_class(), CausalClass::Zero);
        // Third coordinate of a nonzero null vector never vanishes.
        assert_eq!(v(3.0, 4.0, 5.0).causal_class(), CausalClass::Null);
    }

    #[test]
    fn cross_matches_known_values() {
        // cross(e1, e2) = (0, 0, -1): the determinant identity forces the
        // sign flip in the third component relative to the Euclidean cross.
        assert_eq!(v(1.0, 0.0, 0.0).cross(v(0.0, 1.0, 0.0)), v(0.0, 0.0, -1.0));
        let c = v(-1.0, 0.0, 0.0).cross(v(1.0_f64.cosh(), 0.0, 1.0_f64.sinh()));
        assert!((c - v(0.0, 1.0_f64.sinh(), 0.0)).euclid_norm() < 1e-15);
        // cross(u, u) = 0
        assert_eq!(
            v(1.0, 2.0, 3.0).cross(v(1.0, 2.0, 3.0)),
            LorentzVector::ZERO
        );
    }

    #[test]
    fn cross_satisfies_determinant_identity() {
        // Independent determinant via the rule of Sarrus on columns.
        let det3 = |a: LorentzVector, b: LorentzVector, c: LorentzVector| {
            a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - b.x1 * (a.x2 * c.x3 - a.x3 * c.x2)
                + c.x1 * (a.x2 * b.x3 - a.x3 * b.x2)
        };
        let samples = [
            v(1.0, 2.0, 3.0),
            v(-0.4, 0.3, 2.2),
            v(5.0, -1.0, 0.7),
            v(0.1, 0.0, -3.0),
        ];
        for &a in &samples {
            for &b in &samples {
                for &c in &samples {
                    let lhs = a.cross(b).dot(c);
                    let rhs = det3(a, b, c);
                    assert!(
                        (lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0),
                        "identity violated: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn null_frame_known_values() {
        let f = null_frame(v(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(f.minus, v(-1.0, 0.0, 1.0));
        assert_eq!(f.plus, v(1.0, 0.0, 1.0));

        let f = null_frame(v(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(f.minus, v(0.0, 1.0, 1.0));
        assert_eq!(f.plus, v(0.0, -1.0, 1.0));

        for &t in &[-1.5_f64, -0.3, 0.0, 0.7, 2.0] {
            let f = null_frame(v(t.cosh(), 0.0, t.sinh())).unwrap();
            let tanh = t.tanh();
            let sech = 1.0 / t.cosh();
            assert!((f.minus - v(tanh, sech, 1.0)).euclid_norm() < 1e-12);
            assert!((f.plus - v(tanh, -sech, 1.0)).euclid_norm() < 1e-12);
        }
    }

    #[test]
    fn null_frame_rejects_non_spacelike() {
        assert!(null_frame(v(0.0, 0.0, 1.0)).is_err());
        assert!(null_frame(v(1.0, 0.0, 1.0)).is_err());
        assert!(null_frame(LorentzVector::ZERO).is_err());
    }

    #[test]
    fn null_frame_negation_swap() {
        for &u in &[v(1.0, 0.0, 0.0), v(0.3, -1.2, 0.4), v(2.0, 1.0, -1.5)] {
            assert!(negation_swaps_null_frame(u).unwrap());
        }
    }

    #[test]
    fn linear_class_examples() {
        // Hyperbolic standard form at l*t = 1.
        let g = Mat3([
            [1.0_f64.cosh(), 0.0, 1.0_f64.sinh()],
            [0.0, 1.0, 0.0],
            [1.0_f64.sinh(), 0.0, 1.0_f64.cosh()],
        ]);
        assert_eq!(linear_class(&g).unwrap(), LinearClass::Hyperbolic);

        // Rotation by pi/2 about the time axis.
        let r = Mat3([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(linear_class(&r).unwrap(), LinearClass::Elliptic);

        assert_eq!(
            linear_class(&Mat3::IDENTITY).unwrap(),
            LinearClass::Identity
        );

        // Not Lorentz-orthogonal.
        let bad = Mat3([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(linear_class(&bad).is_err());
    }

    #[test]
    fn isometry_apply_and_compose() {
        let boost = Mat3([
            [1.0_f64.cosh(), 0.0, 1.0_f64.sinh()],
            [0.0, 1.0, 0.0],
            [1.0_f64.sinh(), 0.0, 1.0_f64.cosh()],
        ]);
        let g = Isometry::new(boost, v(0.0, 1.0, 0.0)).unwrap();
        let p = AffinePoint::origin();
        assert_eq!(g.apply(p), AffinePoint::new(0.0, 1.0, 0.0));

        let h = Isometry::new(Mat3::IDENTITY, v(1.0, 0.0, 0.0)).unwrap();
        let gh = g.compose(&h);
        let q = AffinePoint::new(0.2, -0.3, 0.4);
        let lhs = gh.apply(q);
        let rhs = g.apply(h.apply(q));
        assert!((lhs - rhs).euclid_norm() < 1e-14);

        let inv = g.inverse();
        let back = inv.apply(g.apply(q));
        assert!((back - q).euclid_norm() < 1e-14);
    }

    #[test]
    fn isometry_rejects_non_lorentz_linear_part() {
        let bad = Mat3([[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(Isometry::new(bad, LorentzVector::ZERO).is_err());
    }
}
