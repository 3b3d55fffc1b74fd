//! Differential tests: the brute-force mesh oracle against the analytic
//! disjointness criteria on seeded random input. The oracle never sees the
//! analytic machinery, so agreement here is evidence for both sides.

use crooked_core::{
    cone_disjoint, dg_disjoint, dg_terms, mesh_crooked_plane, oracle_disjoint, AffinePoint,
    CrookedPlane, LorentzVector, OracleVerdict, ParabolicFlow, PieceTag,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_vec(rng: &mut ChaCha8Rng, half_width: f64) -> LorentzVector {
    LorentzVector::new(
        rng.random_range(-half_width..half_width),
        rng.random_range(-half_width..half_width),
        rng.random_range(-half_width..half_width),
    )
}

fn random_point(rng: &mut ChaCha8Rng, half_width: f64) -> AffinePoint {
    AffinePoint::from_vector(random_vec(rng, half_width))
}

fn random_spacelike(rng: &mut ChaCha8Rng) -> LorentzVector {
    loop {
        let v = random_vec(rng, 5.0);
        if v.dot(v) > 0.05 * v.euclid_norm2().max(1e-6) {
            return v;
        }
    }
}

/// Random ultraparallel director pair: two spacelike vectors orthogonal to
/// a common spacelike line, so their cross product is spacelike.
fn random_ultraparallel(rng: &mut ChaCha8Rng) -> (LorentzVector, LorentzVector) {
    loop {
        let x = random_spacelike(rng);
        let project = |w: LorentzVector| w - x * (w.dot(x) / x.dot(x));
        let u1 = project(random_vec(rng, 5.0));
        let u2 = project(random_vec(rng, 5.0));
        if [u1, u2]
            .iter()
            .any(|v| v.euclid_norm2() < 1e-2 || v.dot(*v) <= 0.05 * v.euclid_norm2())
        {
            continue;
        }
        let c = u1.cross(u2);
        if c.dot(c) > 1e-4 * c.euclid_norm2().max(1e-9) {
            return (u1, u2);
        }
    }
}

/// Disjoint analytic verdicts must never be contradicted by a mesh
/// intersection, and clear non-disjoint verdicts must be confirmed by one
/// at some extent.
#[test]
fn oracle_agrees_with_analytic_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bac1e);
    let mut confirmed = 0;
    let mut cleared = 0;
    for i in 0..60 {
        let (u1, u2) = random_ultraparallel(&mut rng);
        let p1 = random_point(&mut rng, 2.0);
        let c1 = CrookedPlane::new(p1, u1).unwrap();
        // Fully random vertices mostly intersect; on even rounds separate
        // the pair along its common orthogonal so both verdicts get
        // exercised. The jitter keeps the placement generic.
        let p2 = if i % 2 == 0 {
            let x = u1.cross(u2).unit_spacelike().unwrap();
            let jitter = random_vec(&mut rng, 0.3);
            let cand = p1 + x * 3.5 + jitter;
            let probe = CrookedPlane::new(cand, u2).unwrap();
            if dg_terms(&c1, &probe).unwrap().margin() > 0.0 {
                cand
            } else {
                p1 - x * 3.5 + jitter
            }
        } else {
            random_point(&mut rng, 2.0)
        };
        let c2 = CrookedPlane::new(p2, u2).unwrap();
        let terms = dg_terms(&c1, &c2).unwrap();
        if terms.margin().abs() <= 1e-3 * (terms.lhs.abs() + terms.rhs.abs()).max(1.0) {
            continue;
        }
        let disjoint = dg_disjoint(&c1, &c2).unwrap();
        assert_eq!(disjoint, cone_disjoint(&c1, &c2).unwrap());

        if disjoint {
            let verdict = oracle_disjoint(&c1, &c2, 12.0, 32, 1e-9).unwrap();
            assert!(
                verdict.is_disjoint(),
                "oracle found {:?} on an analytically disjoint pair",
                verdict.witness()
            );
            cleared += 1;
        } else {
            // Sound but extent-limited: grow the boxes until the
            // intersection is inside them.
            let mut extent = 12.0;
            let mut found = false;
            while extent <= 96.0 {
                let verdict = oracle_disjoint(&c1, &c2, extent, 32, 1e-9).unwrap();
                if let Some(w) = verdict.witness() {
                    assert!(c1.contains_point(w, 1e-6), "witness off the first plane");
                    assert!(c2.contains_point(w, 1e-6), "witness off the second plane");
                    found = true;
                    break;
                }
                extent *= 2.0;
            }
            assert!(
                found,
                "no mesh intersection up to extent 96 for a non-disjoint pair"
            );
            confirmed += 1;
        }
    }
    // The sample must exercise both branches to mean anything.
    assert!(cleared >= 20, "only {cleared} disjoint pairs sampled");
    assert!(
        confirmed >= 15,
        "only {confirmed} intersecting pairs sampled"
    );
}

#[test]
fn meshes_lie_on_their_planes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..25 {
        let u = loop {
            let v = random_vec(&mut rng, 5.0);
            if v.dot(v) > 0.05 * v.euclid_norm2().max(1e-6) {
                break v;
            }
        };
        let cp = CrookedPlane::new(random_point(&mut rng, 5.0), u).unwrap();
        let mesh = mesh_crooked_plane(&cp, 5.0, 16).unwrap();
        assert!(mesh.vertices.iter().all(|&q| cp.contains_point(q, 1e-7)));
        for tag in [PieceTag::Stem, PieceTag::WingPlus, PieceTag::WingMinus] {
            assert!(mesh.tags.contains(&tag), "piece {tag} missing from mesh");
        }
        for i in 0..mesh.triangles.len() {
            let t = mesh.triangle(i);
            let ab = t[1] - t[0];
            let ac = t[2] - t[0];
            let area = 0.5
                * LorentzVector::new(
                    ab.x2 * ac.x3 - ab.x3 * ac.x2,
                    ab.x3 * ac.x1 - ab.x1 * ac.x3,
                    ab.x1 * ac.x2 - ab.x2 * ac.x1,
                )
                .euclid_norm();
            assert!(area > 1e-12, "degenerate triangle {i}");
        }
    }
}

/// Asymptotic-director pairs (shared null edge) are outside the
/// Drumm–Goldman hypothesis but the cone criterion and the oracle still
/// agree on them.
#[test]
fn asymptotic_pairs_cone_vs_oracle() {
    let flow = ParabolicFlow::new(0.0, -1.0, 1.0);
    let leaf = |t: f64| CrookedPlane::new(flow.orbit(t), ParabolicFlow::director(t)).unwrap();
    let c0 = leaf(0.0);
    let c1 = leaf(1.0);
    assert!(cone_disjoint(&c0, &c1).unwrap());
    assert!(oracle_disjoint(&c0, &c1, 10.0, 48, 1e-9)
        .unwrap()
        .is_disjoint());

    // Sliding one leaf along the shared null direction (0,1,1) forces an
    // intersection, and the cone criterion notices.
    let slid = CrookedPlane::new(
        c1.vertex() + LorentzVector::new(0.0, 1.0, 1.0) * 3.0 - (c1.vertex() - c0.vertex()),
        c1.director(),
    )
    .unwrap();
    assert!(!cone_disjoint(&c0, &slid).unwrap());
    let verdict = oracle_disjoint(&c0, &slid, 20.0, 48, 1e-9).unwrap();
    match verdict {
        OracleVerdict::Intersecting(w) => {
            assert!(c0.contains_point(w, 1e-6));
            assert!(slid.contains_point(w, 1e-6));
        }
        OracleVerdict::NoIntersectionFound => panic!("missed a shared-null-line intersection"),
    }
}
