//! Brute-force disjointness oracle: mesh two crooked planes into triangles,
//! clip them to boxes around their vertices, and search for a
//! triangle–triangle intersection with a BVH.
//!
//! The mesh triangles lie exactly on the planar pieces of the surface
//! (stem quadrants and wings are ruled by straight parameter lines), so
//! resolution affects only triangle granularity, not geometric fidelity.
//! The oracle is sound for intersections inside both clip boxes; growing
//! `extent` widens the region it can certify.

use crate::crooked::CrookedPlane;
use crate::minkowski::{AffinePoint, LorentzVector};
use rayon::prelude::*;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid oracle parameters: {0}")]
    InvalidParams(String),
}

/// Which planar piece of the crooked plane a triangle belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceTag {
    Stem,
    WingPlus,
    WingMinus,
}

impl std::fmt::Display for PieceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PieceTag::Stem => write!(f, "stem"),
            PieceTag::WingPlus => write!(f, "wing_plus"),
            PieceTag::WingMinus => write!(f, "wing_minus"),
        }
    }
}

/// Triangle soup: `triangles[i]` indexes `vertices`, `tags[i]` names the
/// piece the triangle lies on.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<AffinePoint>,
    pub triangles: Vec<[usize; 3]>,
    pub tags: Vec<PieceTag>,
}

impl TriangleMesh {
    pub fn triangle(&self, i: usize) -> [AffinePoint; 3] {
        let [a, b, c] = self.triangles[i];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Euclidean distance from `q` to the nearest mesh triangle.
    pub fn distance_to(&self, q: AffinePoint) -> f64 {
        (0..self.triangles.len())
            .map(|i| {
                let t = self.triangle(i);
                let c = closest_point_on_triangle(q, t[0], t[1], t[2]);
                (q - c).euclid_norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `q` lies on the meshed surface, within `eps`.
    pub fn contains(&self, q: AffinePoint, eps: f64) -> bool {
        self.distance_to(q) <= eps
    }

    fn max_abs_coordinate(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.to_vector().euclid_norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleVerdict {
    /// A point on both meshed surfaces (the lexicographically smallest
    /// candidate found).
    Intersecting(AffinePoint),
    /// No intersection within the clipped extents at this resolution.
    NoIntersectionFound,
}

impl OracleVerdict {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, OracleVerdict::NoIntersectionFound)
    }

    pub fn witness(&self) -> Option<AffinePoint> {
        match *self {
            OracleVerdict::Intersecting(p) => Some(p),
            OracleVerdict::NoIntersectionFound => None,
        }
    }
}

fn edot(u: LorentzVector, v: LorentzVector) -> f64 {
    u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3
}

fn ecross(u: LorentzVector, v: LorentzVector) -> LorentzVector {
    LorentzVector::new(
        u.x2 * v.x3 - u.x3 * v.x2,
        u.x3 * v.x1 - u.x1 * v.x3,
        u.x1 * v.x2 - u.x2 * v.x1,
    )
}

fn triangle_area(a: AffinePoint, b: AffinePoint, c: AffinePoint) -> f64 {
    0.5 * ecross(b - a, c - a).euclid_norm()
}

/// Cell edges on `[0, total]`: a geometric ramp (ratio 3/2) over the first
/// cells, then uniform, rescaled to end exactly at `total`. Concentrates
/// resolution near 0, where the piece boundaries meet.
fn graded_breakpoints(total: f64, n: usize) -> Vec<f64> {
    let ramp = n.min(8);
    let mut sizes = Vec::with_capacity(n);
    let mut s = 1.0;
    for i in 0..n {
        if i > 0 && i < ramp {
            s *= 1.5;
        }
        sizes.push(s);
    }
    let sum: f64 = sizes.iter().sum();
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for (i, sz) in sizes.iter().enumerate() {
        acc += sz;
        out.push(if i == n - 1 { total } else { acc / sum * total });
    }
    out
}

/// Breakpoints on `[-total, total]`, mirrored so both sides are graded
/// toward 0.
fn mirrored_breakpoints(total: f64, n_half: usize) -> Vec<f64> {
    let half = graded_breakpoints(total, n_half);
    let mut out: Vec<f64> = half.iter().rev().map(|&x| -x).collect();
    out.extend(half.iter().skip(1));
    out
}

fn clip_polygon_to_box(mut poly: Vec<AffinePoint>, lo: [f64; 3], hi: [f64; 3]) -> Vec<AffinePoint> {
    let coord = |p: &AffinePoint, axis: usize| match axis {
        0 => p.to_vector().x1,
        1 => p.to_vector().x2,
        _ => p.to_vector().x3,
    };
    // Six half-spaces: axis ≥ lo and axis ≤ hi.
    for axis in 0..3 {
        for &(bound, keep_ge) in &[(lo[axis], true), (hi[axis], false)] {
            if poly.is_empty() {
                return poly;
            }
            let inside = |p: &AffinePoint| {
                if keep_ge {
                    coord(p, axis) >= bound
                } else {
                    coord(p, axis) <= bound
                }
            };
            let mut clipped = Vec::with_capacity(poly.len() + 2);
            for i in 0..poly.len() {
                let cur = poly[i];
                let nxt = poly[(i + 1) % poly.len()];
                let cur_in = inside(&cur);
                let nxt_in = inside(&nxt);
                if cur_in {
                    clipped.push(cur);
                }
                if cur_in != nxt_in {
                    let a = coord(&cur, axis);
                    let b = coord(&nxt, axis);
                    let t = (bound - a) / (b - a);
                    clipped.push(cur + (nxt - cur) * t);
                }
            }
            poly = clipped;
        }
    }
    poly
}

struct MeshBuilder {
    mesh: TriangleMesh,
    lo: [f64; 3],
    hi: [f64; 3],
    area_floor: f64,
}

impl MeshBuilder {
    fn push_triangle(&mut self, a: AffinePoint, b: AffinePoint, c: AffinePoint, tag: PieceTag) {
        let poly = clip_polygon_to_box(vec![a, b, c], self.lo, self.hi);
        if poly.len() < 3 {
            return;
        }
        for i in 1..poly.len() - 1 {
            let (p, q, r) = (poly[0], poly[i], poly[i + 1]);
            if triangle_area(p, q, r) <= self.area_floor {
                continue;
            }
            let base = self.mesh.vertices.len();
            self.mesh.vertices.extend([p, q, r]);
            self.mesh.triangles.push([base, base + 1, base + 2]);
            self.mesh.tags.push(tag);
        }
    }

    fn add_patch(
        &mut self,
        f: impl Fn(f64, f64) -> AffinePoint,
        a_breaks: &[f64],
        b_breaks: &[f64],
        tag: PieceTag,
    ) {
        for ai in 0..a_breaks.len() - 1 {
            for bi in 0..b_breaks.len() - 1 {
                let (a0, a1) = (a_breaks[ai], a_breaks[ai + 1]);
                let (b0, b1) = (b_breaks[bi], b_breaks[bi + 1]);
                let p00 = f(a0, b0);
                let p10 = f(a1, b0);
                let p01 = f(a0, b1);
                let p11 = f(a1, b1);
                self.push_triangle(p00, p10, p11, tag);
                self.push_triangle(p00, p11, p01, tag);
            }
        }
    }
}

/// Mesh the part of a crooked plane inside the axis-aligned box of
/// half-width `extent` around its vertex, with `n` cells per parameter
/// axis. The parameter ranges are sized so the mesh covers the whole
/// surface-in-box; triangles lie exactly on the planar pieces.
pub fn mesh_crooked_plane(
    cp: &CrookedPlane,
    extent: f64,
    n: usize,
) -> Result<TriangleMesh, OracleError> {
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(OracleError::InvalidParams(format!(
            "extent must be positive and finite, got {extent}"
        )));
    }
    if n < 2 {
        return Err(OracleError::InvalidParams(format!(
            "resolution must be at least 2, got {n}"
        )));
    }
    let v = cp.vertex().to_vector();
    let u = cp.director();
    let f = cp.frame();
    let d = f.minus.dot(f.plus).abs();
    let s3 = 3.0_f64.sqrt();

    // Parameter bounds that cover every surface point inside the box: for a
    // box point x − vertex with Euclidean norm ≤ √3·extent, the stem
    // coordinates are bounded through x·u± = (coeff)·(u⁻·u⁺), the wing
    // coordinate along u through x·u, and the null coordinate through the
    // third component, where u± have third component 1.
    let stem_a = s3 * extent * f.plus.euclid_norm() / d;
    let stem_b = s3 * extent * f.minus.euclid_norm() / d;
    let wing_a = s3 * extent * u.euclid_norm() / u.dot(u);
    let wing_b = extent + wing_a * u.x3.abs();

    let mut builder = MeshBuilder {
        mesh: TriangleMesh {
            vertices: Vec::new(),
            triangles: Vec::new(),
            tags: Vec::new(),
        },
        lo: [v.x1 - extent, v.x2 - extent, v.x3 - extent],
        hi: [v.x1 + extent, v.x2 + extent, v.x3 + extent],
        area_floor: 1e-12 * (extent * extent).max(1.0),
    };

    let a_breaks = graded_breakpoints(stem_a, n);
    let b_breaks = graded_breakpoints(stem_b, n);
    builder.add_patch(
        |a, b| cp.stem_point(a, b),
        &a_breaks,
        &b_breaks,
        PieceTag::Stem,
    );
    builder.add_patch(
        |a, b| cp.stem_point(-a, -b),
        &a_breaks,
        &b_breaks,
        PieceTag::Stem,
    );

    let wa_breaks = graded_breakpoints(wing_a, n);
    let wb_breaks = mirrored_breakpoints(wing_b, n.div_ceil(2));
    builder.add_patch(
        |a, b| cp.wing_plus_point(a, b),
        &wa_breaks,
        &wb_breaks,
        PieceTag::WingPlus,
    );
    builder.add_patch(
        |a, b| cp.wing_minus_point(a, b),
        &wa_breaks,
        &wb_breaks,
        PieceTag::WingMinus,
    );

    Ok(builder.mesh)
}

/// Closest point on triangle `(a, b, c)` to `p` (Euclidean metric).
fn closest_point_on_triangle(
    p: AffinePoint,
    a: AffinePoint,
    b: AffinePoint,
    c: AffinePoint,
) -> AffinePoint {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = edot(ab, ap);
    let d2 = edot(ac, ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = p - b;
    let d3 = edot(ab, bp);
    let d4 = edot(ac, bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return a + ab * (d1 / (d1 - d3));
    }
    let cp = p - c;
    let d5 = edot(ab, cp);
    let d6 = edot(ac, cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return a + ac * (d2 / (d2 - d6));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    }
    let denom = 1.0 / (va + vb + vc);
    a + ab * (vb * denom) + ac * (vc * denom)
}

#[derive(Clone, Copy, Debug)]
struct Aabb {
    lo: [f64; 3],
    hi: [f64; 3],
}

impl Aabb {
    fn of_triangle(t: &[AffinePoint; 3]) -> Aabb {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in t {
            let v = p.to_vector();
            for (axis, &x) in [v.x1, v.x2, v.x3].iter().enumerate() {
                lo[axis] = lo[axis].min(x);
                hi[axis] = hi[axis].max(x);
            }
        }
        Aabb { lo, hi }
    }

    fn union(&self, other: &Aabb) -> Aabb {
        let mut lo = [0.0; 3];
        let mut hi = [0.0; 3];
        for axis in 0..3 {
            lo[axis] = self.lo[axis].min(other.lo[axis]);
            hi[axis] = self.hi[axis].max(other.hi[axis]);
        }
        Aabb { lo, hi }
    }

    fn overlaps(&self, other: &Aabb, margin: f64) -> bool {
        (0..3).all(|axis| {
            self.lo[axis] <= other.hi[axis] + margin && other.lo[axis] <= self.hi[axis] + margin
        })
    }

    fn center(&self, axis: usize) -> f64 {
        0.5 * (self.lo[axis] + self.hi[axis])
    }

    fn longest_axis(&self) -> usize {
        let ext = [
            self.hi[0] - self.lo[0],
            self.hi[1] - self.lo[1],
            self.hi[2] - self.lo[2],
        ];
        if ext[0] >= ext[1] && ext[0] >= ext[2] {
            0
        } else if ext[1] >= ext[2] {
            1
        } else {
            2
        }
    }
}

const BVH_LEAF_SIZE: usize = 16;

enum BvhKind {
    Leaf { start: usize, end: usize },
    Inner { left: usize, right: usize },
}

struct BvhNode {
    aabb: Aabb,
    kind: BvhKind,
}

struct Bvh {
    nodes: Vec<BvhNode>,
    /// Triangle indices, partitioned so each leaf owns a contiguous range.
    order: Vec<usize>,
    tri_boxes: Vec<Aabb>,
}

impl Bvh {
    fn build(mesh: &TriangleMesh) -> Bvh {
        let tri_boxes: Vec<Aabb> = (0..mesh.triangles.len())
            .map(|i| Aabb::of_triangle(&mesh.triangle(i)))
            .collect();
        let mut order: Vec<usize> = (0..mesh.triangles.len()).collect();
        let mut bvh = Bvh {
            nodes: Vec::new(),
            order: Vec::new(),
            tri_boxes,
        };
        if !order.is_empty() {
            bvh.build_range(&mut order, 0);
        }
        bvh.order = order;
        bvh
    }

    fn build_range(&mut self, range: &mut [usize], offset: usize) -> usize {
        let aabb = range
            .iter()
            .map(|&i| self.tri_boxes[i])
            .reduce(|a, b| a.union(&b))
            .expect("non-empty range");
        let node_index = self.nodes.len();
        self.nodes.push(BvhNode {
            aabb,
            kind: BvhKind::Leaf {
                start: offset,
                end: offset + range.len(),
            },
        });
        if range.len() <= BVH_LEAF_SIZE {
            return node_index;
        }
        let axis = aabb.longest_axis();
        let mid = range.len() / 2;
        range.select_nth_unstable_by(mid, |&a, &b| {
            let ca = self.tri_boxes[a].center(axis);
            let cb = self.tri_boxes[b].center(axis);
            ca.partial_cmp(&cb)
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        let (left_range, right_range) = range.split_at_mut(mid);
        let left = self.build_range(left_range, offset);
        let right = self.build_range(right_range, offset + mid);
        self.nodes[node_index].kind = BvhKind::Inner { left, right };
        node_index
    }
}

/// Collect triangle-index pairs whose AABBs (inflated by `margin`) overlap.
fn candidate_pairs(b1: &Bvh, b2: &Bvh, margin: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    if b1.nodes.is_empty() || b2.nodes.is_empty() {
        return pairs;
    }
    let mut stack = vec![(0usize, 0usize)];
    while let Some((i, j)) = stack.pop() {
        let (n1, n2) = (&b1.nodes[i], &b2.nodes[j]);
        if !n1.aabb.overlaps(&n2.aabb, margin) {
            continue;
        }
        match (&n1.kind, &n2.kind) {
            (BvhKind::Leaf { start: s1, end: e1 }, BvhKind::Leaf { start: s2, end: e2 }) => {
                for &t1 in &b1.order[*s1..*e1] {
                    for &t2 in &b2.order[*s2..*e2] {
                        if b1.tri_boxes[t1].overlaps(&b2.tri_boxes[t2], margin) {
                            pairs.push((t1, t2));
                        }
                    }
                }
            }
            (BvhKind::Inner { left, right }, BvhKind::Leaf { .. }) => {
                stack.push((*left, j));
                stack.push((*right, j));
            }
            (BvhKind::Leaf { .. }, BvhKind::Inner { left, right }) => {
                stack.push((i, *left));
                stack.push((i, *right));
            }
            (
                BvhKind::Inner {
                    left: l1,
                    right: r1,
                },
                BvhKind::Inner {
                    left: l2,
                    right: r2,
                },
            ) => {
                stack.push((*l1, *l2));
                stack.push((*l1, *r2));
                stack.push((*r1, *l2));
                stack.push((*r1, *r2));
            }
        }
    }
    pairs
}

fn point_cmp(a: &AffinePoint, b: &AffinePoint) -> Ordering {
    let (va, vb) = (a.to_vector(), b.to_vector());
    for (x, y) in [(va.x1, vb.x1), (va.x2, vb.x2), (va.x3, vb.x3)] {
        match x.partial_cmp(&y).unwrap_or(Ordering::Equal) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Intersection point of two triangles, treating points within `eps`
/// (absolute, world units) of a plane as on it. Returns the midpoint of the
/// intersection segment, or a representative point in the coplanar case.
fn tri_tri_intersection(
    t1: &[AffinePoint; 3],
    t2: &[AffinePoint; 3],
    eps: f64,
) -> Option<AffinePoint> {
    let n1 = ecross(t1[1] - t1[0], t1[2] - t1[0]);
    let n2 = ecross(t2[1] - t2[0], t2[2] - t2[0]);
    let (l1, l2) = (n1.euclid_norm(), n2.euclid_norm());
    if l1 == 0.0 || l2 == 0.0 {
        return None;
    }
    let n1 = n1 * (1.0 / l1);
    let n2 = n2 * (1.0 / l2);

    let sign = |d: f64| {
        if d > eps {
            1
        } else if d < -eps {
            -1
        } else {
            0
        }
    };
    let d1: Vec<f64> = t1.iter().map(|&p| edot(n2, p - t2[0])).collect();
    let s1: Vec<i32> = d1.iter().map(|&d| sign(d)).collect();
    if s1.iter().all(|&s| s > 0) || s1.iter().all(|&s| s < 0) {
        return None;
    }
    let d2: Vec<f64> = t2.iter().map(|&p| edot(n1, p - t1[0])).collect();
    let s2: Vec<i32> = d2.iter().map(|&d| sign(d)).collect();
    if s2.iter().all(|&s| s > 0) || s2.iter().all(|&s| s < 0) {
        return None;
    }

    if s1.iter().all(|&s| s == 0) || s2.iter().all(|&s| s == 0) {
        return coplanar_intersection(t1, t2, n2, eps);
    }

    let dir = ecross(n1, n2);
    let dl = dir.euclid_norm();
    if dl <= 1e-14 {
        // Near-parallel planes that were not separated by the sign gates:
        // treat as near-coplanar contact.
        return coplanar_intersection(t1, t2, n2, eps);
    }
    let dir = dir * (1.0 / dl);
    // A point on both planes.
    let c1 = edot(n1, t1[0].to_vector());
    let c2 = edot(n2, t2[0].to_vector());
    let denom = edot(ecross(n1, n2), ecross(n1, n2));
    let origin = AffinePoint::from_vector(
        (ecross(n2, ecross(n1, n2)) * c1 + ecross(ecross(n1, n2), n1) * c2) * (1.0 / denom),
    );

    let interval = |t: &[AffinePoint; 3], d: &[f64], s: &[i32]| -> Option<(f64, f64)> {
        let mut params: Vec<f64> = Vec::with_capacity(4);
        for i in 0..3 {
            if s[i] == 0 {
                params.push(edot(t[i] - origin, dir));
            }
            let j = (i + 1) % 3;
            if s[i] * s[j] < 0 {
                let f = d[i] / (d[i] - d[j]);
                let p = t[i] + (t[j] - t[i]) * f;
                params.push(edot(p - origin, dir));
            }
        }
        let lo = params.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = params.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo <= hi).then_some((lo, hi))
    };
    let (lo1, hi1) = interval(t1, &d1, &s1)?;
    let (lo2, hi2) = interval(t2, &d2, &s2)?;
    let lo = lo1.max(lo2);
    let hi = hi1.min(hi2);
    if lo > hi + eps {
        return None;
    }
    Some(origin + dir * (0.5 * (lo + hi.max(lo))))
}

/// Intersection representative for (near-)coplanar triangles, via 2D
/// overlap in the dominant plane of the normal.
fn coplanar_intersection(
    t1: &[AffinePoint; 3],
    t2: &[AffinePoint; 3],
    n: LorentzVector,
    eps: f64,
) -> Option<AffinePoint> {
    let ax = [n.x1.abs(), n.x2.abs(), n.x3.abs()];
    let drop = if ax[0] >= ax[1] && ax[0] >= ax[2] {
        0
    } else if ax[1] >= ax[2] {
        1
    } else {
        2
    };
    let flat = |p: AffinePoint| -> [f64; 2] {
        let v = p.to_vector();
        match drop {
            0 => [v.x2, v.x3],
            1 => [v.x1, v.x3],
            _ => [v.x1, v.x2],
        }
    };
    let q1: Vec<[f64; 2]> = t1.iter().map(|&p| flat(p)).collect();
    let q2: Vec<[f64; 2]> = t2.iter().map(|&p| flat(p)).collect();

    let cross2 = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let inside = |p: [f64; 2], tri: &[[f64; 2]]| {
        let c0 = cross2(tri[0], tri[1], p);
        let c1 = cross2(tri[1], tri[2], p);
        let c2 = cross2(tri[2], tri[0], p);
        (c0 >= -eps && c1 >= -eps && c2 >= -eps) || (c0 <= eps && c1 <= eps && c2 <= eps)
    };
    for i in 0..3 {
        if inside(q1[i], &q2) {
            return Some(t1[i]);
        }
    }
    for i in 0..3 {
        if inside(q2[i], &q1) {
            return Some(t2[i]);
        }
    }
    // Edge-edge crossings.
    for i in 0..3 {
        let (a, b) = (q1[i], q1[(i + 1) % 3]);
        for j in 0..3 {
            let (c, d) = (q2[j], q2[(j + 1) % 3]);
            let r = [b[0] - a[0], b[1] - a[1]];
            let s = [d[0] - c[0], d[1] - c[1]];
            let denom = r[0] * s[1] - r[1] * s[0];
            if denom.abs() <= 1e-30 {
                continue;
            }
            let qp = [c[0] - a[0], c[1] - a[1]];
            let t = (qp[0] * s[1] - qp[1] * s[0]) / denom;
            let u = (qp[0] * r[1] - qp[1] * r[0]) / denom;
            if (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u) {
                let p1 = t1[i];
                let p2 = t1[(i + 1) % 3];
                return Some(p1 + (p2 - p1) * t.clamp(0.0, 1.0));
            }
        }
    }
    None
}

/// Brute-force disjointness check: meshes both planes at the given extent
/// and resolution and searches for a triangle–triangle intersection.
/// Distances up to `eps` (relative to coordinate scale) count as touching.
pub fn oracle_disjoint(
    cp1: &CrookedPlane,
    cp2: &CrookedPlane,
    extent: f64,
    n: usize,
    eps: f64,
) -> Result<OracleVerdict, OracleError> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(OracleError::InvalidParams(format!(
            "eps must be a nonnegative finite number, got {eps}"
        )));
    }

    // A vertex lying on the other plane is an intersection regardless of
    // resolution; it is also the exact witness for coincident planes.
    if cp1.contains_point(cp2.vertex(), eps) {
        return Ok(OracleVerdict::Intersecting(cp2.vertex()));
    }
    if cp2.contains_point(cp1.vertex(), eps) {
        return Ok(OracleVerdict::Intersecting(cp1.vertex()));
    }

    let m1 = mesh_crooked_plane(cp1, extent, n)?;
    let m2 = mesh_crooked_plane(cp2, extent, n)?;
    let scale = m1
        .max_abs_coordinate()
        .max(m2.max_abs_coordinate())
        .max(1.0);
    let eps_world = eps * scale;

    let b1 = Bvh::build(&m1);
    let b2 = Bvh::build(&m2);
    let pairs = candidate_pairs(&b1, &b2, eps_world);

    let witness = pairs
        .par_iter()
        .filter_map(|&(i, j)| tri_tri_intersection(&m1.triangle(i), &m2.triangle(j), eps_world))
        .min_by(point_cmp);

    Ok(match witness {
        Some(p) => OracleVerdict::Intersecting(p),
        None => OracleVerdict::NoIntersectionFound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::LorentzVector;

    fn v(x1: f64, x2: f64, x3: f64) -> LorentzVector {
        LorentzVector::new(x1, x2, x3)
    }

    fn p(x1: f64, x2: f64, x3: f64) -> AffinePoint {
        AffinePoint::new(x1, x2, x3)
    }

    fn standard_plane() -> CrookedPlane {
        CrookedPlane::new(AffinePoint::origin(), v(0.0, 1.0, 0.0)).unwrap()
    }

    #[test]
    fn breakpoints_are_monotone_and_graded() {
        let b = graded_breakpoints(10.0, 16);
        assert_eq!(b.len(), 17);
        assert_eq!(b[0], 0.0);
        assert_eq!(b[16], 10.0);
        for w in b.windows(2) {
            assert!(w[1] > w[0]);
        }
        // First cell is smaller than the last.
        assert!(b[1] - b[0] < b[16] - b[15]);

        let m = mirrored_breakpoints(5.0, 8);
        assert_eq!(m.len(), 17);
        assert_eq!(m[0], -5.0);
        assert_eq!(m[8], 0.0);
        assert_eq!(m[16], 5.0);
        for w in m.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn mesh_invalid_params() {
        let cp = standard_plane();
        assert!(matches!(
            mesh_crooked_plane(&cp, 0.0, 8),
            Err(OracleError::InvalidParams(_))
        ));
        assert!(matches!(
            mesh_crooked_plane(&cp, 5.0, 1),
            Err(OracleError::InvalidParams(_))
        ));
    }

    #[test]
    fn mesh_lies_on_the_surface() {
        let cp = standard_plane();
        let mesh = mesh_crooked_plane(&cp, 5.0, 16).unwrap();
        assert!(!mesh.triangles.is_empty());
        assert_eq!(mesh.triangles.len(), mesh.tags.len());
        for q in &mesh.vertices {
            assert!(
                cp.contains_point(*q, 1e-7),
                "mesh vertex {q:?} off the surface"
            );
        }
        // Clipping keeps everything inside the box.
        for q in &mesh.vertices {
            let w = q.to_vector();
            for x in [w.x1, w.x2, w.x3] {
                assert!(x.abs() <= 5.0 + 1e-9);
            }
        }
        // Triangle centroids stay on the surface too (planar pieces).
        for i in 0..mesh.triangles.len() {
            let t = mesh.triangle(i);
            let centroid = AffinePoint::from_vector(
                (t[0].to_vector() + t[1].to_vector() + t[2].to_vector()) * (1.0 / 3.0),
            );
            assert!(cp.contains_point(centroid, 1e-7));
        }
    }

    #[test]
    fn mesh_covers_known_points() {
        let cp = standard_plane();
        let mesh = mesh_crooked_plane(&cp, 5.0, 16).unwrap();
        // The crooked-plane vertex is a stem corner.
        assert!(mesh
            .vertices
            .iter()
            .any(|q| (*q - AffinePoint::origin()).euclid_norm() == 0.0));
        // Interior stem direction u⁻ + u⁺ = (0,0,2).
        for s in [0.1, 0.7, 2.0] {
            assert!(mesh.contains(p(0.0, 0.0, 2.0 * s), 1e-9), "s = {s}");
            assert!(mesh.contains(p(0.0, 0.0, -2.0 * s), 1e-9), "s = {s}");
        }
        // A wing-plus point: vertex + a·u + b·u⁺ with u = (0,1,0),
        // u⁺ = (1,0,1).
        assert!(mesh.contains(p(0.5, 1.0, 0.5), 1e-9));
        // A wing-minus point: vertex − a·u + b·u⁻ with u⁻ = (−1,0,1).
        assert!(mesh.contains(p(-0.5, -1.0, 0.5), 1e-9));
        // Off-surface points are rejected.
        assert!(!mesh.contains(p(0.0, 0.5, -1.0), 1e-3));
        // Piece tags are all present.
        assert!(mesh.tags.iter().any(|t| *t == PieceTag::Stem));
        assert!(mesh.tags.iter().any(|t| *t == PieceTag::WingPlus));
        assert!(mesh.tags.iter().any(|t| *t == PieceTag::WingMinus));
    }

    #[test]
    fn identical_planes_intersect_at_vertex() {
        let cp = standard_plane();
        let verdict = oracle_disjoint(&cp, &cp, 5.0, 8, 1e-9).unwrap();
        assert_eq!(verdict, OracleVerdict::Intersecting(AffinePoint::origin()));
    }

    #[test]
    fn translate_along_shared_null_direction_intersects() {
        // Translating along u⁻ = (−1,0,1) slides the wing-minus plane along
        // itself: the translated plane still meets the original.
        let cp1 = standard_plane();
        let cp2 = CrookedPlane::new(p(-1.0, 0.0, 1.0), v(0.0, 1.0, 0.0)).unwrap();
        let verdict = oracle_disjoint(&cp1, &cp2, 5.0, 16, 1e-9).unwrap();
        let w = verdict.witness().expect("must intersect");
        assert!(cp1.contains_point(w, 1e-6), "witness {w:?} not on cp1");
        assert!(cp2.contains_point(w, 1e-6), "witness {w:?} not on cp2");
    }

    #[test]
    fn crossing_directors_always_intersect() {
        let cp1 = standard_plane();
        let cp2 = CrookedPlane::new(p(0.3, 0.2, -0.1), v(1.0, 0.0, 0.0)).unwrap();
        let verdict = oracle_disjoint(&cp1, &cp2, 5.0, 24, 1e-9).unwrap();
        let w = verdict.witness().expect("crossing pair must intersect");
        assert!(cp1.contains_point(w, 1e-6));
        assert!(cp2.contains_point(w, 1e-6));
    }

    #[test]
    fn disjoint_pair_reports_no_intersection() {
        // Axis-translated ultraparallel pair: analytic margin is positive,
        // and the meshes must not touch.
        let cp1 = CrookedPlane::new(p(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0)).unwrap();
        let cp2 =
            CrookedPlane::new(p(0.0, 2.0, 0.0), v(1.0_f64.cosh(), 0.0, 1.0_f64.sinh())).unwrap();
        assert!(crate::crooked::dg_disjoint(&cp1, &cp2).unwrap());
        let verdict = oracle_disjoint(&cp1, &cp2, 6.0, 24, 1e-9).unwrap();
        assert!(verdict.is_disjoint());
    }

    #[test]
    fn near_touching_vertices_are_caught_by_eps() {
        let cp1 = standard_plane();
        let cp2 = CrookedPlane::new(p(1e-12, 0.0, 0.0), v(0.0, 1.0, 0.0)).unwrap();
        let verdict = oracle_disjoint(&cp1, &cp2, 2.0, 8, 1e-9).unwrap();
        assert!(!verdict.is_disjoint());
    }

    #[test]
    fn witness_is_deterministic() {
        let cp1 = standard_plane();
        let cp2 = CrookedPlane::new(p(0.3, 0.2, -0.1), v(1.0, 0.0, 0.0)).unwrap();
        let w1 = oracle_disjoint(&cp1, &cp2, 5.0, 16, 1e-9).unwrap();
        let w2 = oracle_disjoint(&cp1, &cp2, 5.0, 16, 1e-9).unwrap();
        assert_eq!(w1, w2);
    }

    #[test]
    fn tri_tri_basics() {
        // Perpendicular triangles crossing at the origin.
        let t1 = [p(-1.0, 0.0, -1.0), p(1.0, 0.0, -1.0), p(0.0, 0.0, 2.0)];
        let t2 = [p(0.0, -1.0, -1.0), p(0.0, 1.0, -1.0), p(0.0, 0.0, 2.0)];
        let w = tri_tri_intersection(&t1, &t2, 1e-12).expect("intersect");
        let wv = w.to_vector();
        assert!(wv.x1.abs() < 1e-12 && wv.x2.abs() < 1e-12);

        // Separated parallel triangles.
        let t3 = [p(-1.0, 1.0, -1.0), p(1.0, 1.0, -1.0), p(0.0, 1.0, 2.0)];
        assert!(tri_tri_intersection(&t1, &t3, 1e-12).is_none());

        // Coplanar overlapping triangles.
        let t4 = [p(-0.5, 0.0, -0.5), p(0.5, 0.0, -0.5), p(0.0, 0.0, 1.0)];
        assert!(tri_tri_intersection(&t1, &t4, 1e-12).is_some());

        // Coplanar disjoint triangles.
        let t5 = [p(5.0, 0.0, 5.0), p(6.0, 0.0, 5.0), p(5.0, 0.0, 6.0)];
        assert!(tri_tri_intersection(&t1, &t5, 1e-12).is_none());
    }

    #[test]
    fn closest_point_examples() {
        let (a, b, c) = (p(0.0, 0.0, 0.0), p(2.0, 0.0, 0.0), p(0.0, 2.0, 0.0));
        // Interior projection.
        let q = closest_point_on_triangle(p(0.5, 0.5, 3.0), a, b, c);
        assert!((q - p(0.5, 0.5, 0.0)).euclid_norm() < 1e-12);
        // Vertex region.
        let q = closest_point_on_triangle(p(-1.0, -1.0, 0.0), a, b, c);
        assert!((q - a).euclid_norm() < 1e-12);
        // Edge region.
        let q = closest_point_on_triangle(p(1.0, -2.0, 0.0), a, b, c);
        assert!((q - p(1.0, 0.0, 0.0)).euclid_norm() < 1e-12);
    }
}
