//! `crooked foliate <scene> <spec> --out <dir>` — verify a foliation spec,
//! then sample leaves, mesh each one, and write OBJ files plus a manifest.

use std::path::Path;

use crooked_core::{mesh_crooked_plane, uniform_grid, verify, CrookedPlane, FoliationSpec};

use super::{CliError, CmdOutput};
use crate::report::{fmt_f64, Manifest, ManifestLeaf, Report};
use crate::scene::{self, array_of, family_name};

#[allow(clippy::too_many_arguments)]
pub fn run(
    scene_path: &Path,
    spec_name: &str,
    out_dir: &Path,
    count: usize,
    extent: f64,
    resolution: usize,
    force: bool,
) -> Result<CmdOutput, CliError> {
    let (_, resolved) = scene::load(scene_path)?;
    let spec: FoliationSpec = resolved
        .specs
        .get(spec_name)
        .cloned()
        .ok_or_else(|| CliError::UnknownSpec(spec_name.to_string()))?;
    if count < 1 {
        return Err(CliError::Invalid("--count must be at least 1".into()));
    }

    let mut report = Report::new();
    super::verify::describe_spec(&mut report, spec_name, &spec);

    // Exporting leaves of a family that is not a foliation is misleading;
    // require a passing verification unless forced.
    let verification = verify(&spec, spec.default_tolerance());
    let verified = match verification {
        Ok(outcome) => {
            super::verify::describe_outcome(&mut report, &outcome);
            outcome.pass()
        }
        Err(err) => {
            report.section("verification");
            report.kv("error", &err);
            report.kv("result", "FAIL");
            false
        }
    };
    if !verified && !force {
        report.section("export");
        report.kv(
            "skipped",
            "verification failed; pass --force to export anyway",
        );
        return Ok(CmdOutput::with_code(report.render(), 4));
    }

    // Sample `count` leaves uniformly across the spec interval.
    let all_leaves = spec
        .leaves()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let ts: Vec<f64> = if count == 1 {
        vec![spec.interval.0]
    } else {
        uniform_grid(spec.interval.0, spec.interval.1, count)
    };
    // Reuse exact sampled leaves where grids coincide; otherwise evaluate
    // fresh from the curve.
    let leaf_at = |t: f64| -> Option<(crooked_core::AffinePoint, crooked_core::LorentzVector)> {
        all_leaves
            .iter()
            .find(|(s, _, _)| *s == t)
            .map(|(_, p, u)| (*p, *u))
    };

    std::fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;

    let mut manifest = Manifest {
        spec: spec_name.to_string(),
        family: family_name(spec.family).to_string(),
        interval: [spec.interval.0, spec.interval.1],
        count,
        extent,
        resolution,
        leaves: Vec::new(),
    };

    report.section("export");
    for (index, &t) in ts.iter().enumerate() {
        let (vertex, director) = match leaf_at(t) {
            Some(l) => l,
            None => {
                let tmp = FoliationSpec {
                    samples: 2,
                    interval: (t, t + 1.0),
                    ..spec.clone()
                };
                let leaves = tmp.leaves().map_err(|e| CliError::Invalid(e.to_string()))?;
                let (_, p, u) = leaves[0];
                (p, u)
            }
        };
        let plane = CrookedPlane::new(vertex, director)?;
        let mesh = mesh_crooked_plane(&plane, extent, resolution)?;
        let file = format!("leaf_{index:03}.obj");
        let path = out_dir.join(&file);
        let obj = crate::report::obj_for_leaves(&[(index, &mesh)]);
        std::fs::write(&path, obj).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        report.kv(
            &file,
            format!(
                "t = {}, {} vertices, {} triangles",
                fmt_f64(t),
                mesh.vertices.len(),
                mesh.triangles.len()
            ),
        );
        manifest.leaves.push(ManifestLeaf {
            index,
            file,
            t,
            vertex: array_of(vertex.to_vector()),
            director: array_of(director),
            vertices: mesh.vertices.len(),
            triangles: mesh.triangles.len(),
        });
    }

    let manifest_path = out_dir.join("manifest.toml");
    std::fs::write(&manifest_path, manifest.render()).map_err(|source| CliError::Io {
        path: manifest_path.display().to_string(),
        source,
    })?;
    report.kv("manifest", manifest_path.display());
    report.kv("leaves", ts.len());

    Ok(CmdOutput::ok(report.render()))
}
