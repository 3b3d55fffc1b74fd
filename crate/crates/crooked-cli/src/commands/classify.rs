//! `crooked classify <scene>` — causal classes of the named vectors, pair
//! classes of the spacelike ones, linear classes of the flows, and the
//! region of every named point under every flow.

use std::path::Path;

use crooked_core::{linear_class, pair_class};

use super::{CliError, CmdOutput};
use crate::report::{fmt_f64, Report};
use crate::scene::{self, ResolvedFlow};

pub fn run(scene_path: &Path) -> Result<CmdOutput, CliError> {
    let (_, resolved) = scene::load(scene_path)?;
    let mut report = Report::new();

    if !resolved.vectors.is_empty() {
        report.section("vectors");
        for (name, v) in &resolved.vectors {
            report.kv(name, v.causal_class());
        }
    }

    let spacelike: Vec<_> = resolved
        .vectors
        .iter()
        .filter(|(_, v)| v.is_spacelike())
        .collect();
    if spacelike.len() >= 2 {
        report.section("vector pairs");
        for (i, (n1, v1)) in spacelike.iter().enumerate() {
            for (n2, v2) in spacelike.iter().skip(i + 1) {
                match pair_class(**v1, **v2) {
                    Ok(class) => report.kv(&format!("({n1}, {n2})"), class),
                    Err(_) => report.kv(&format!("({n1}, {n2})"), "degenerate (parallel)"),
                }
            }
        }
    }

    if !resolved.flows.is_empty() {
        report.section("flows");
        for (name, flow) in &resolved.flows {
            match flow {
                ResolvedFlow::Hyperbolic(f) => {
                    let class = linear_class(&f.linear_at(1.0))
                        .map(|c| c.to_string())
                        .unwrap_or_else(|e| format!("unclassifiable ({e})"));
                    report.kv(
                        name,
                        format!(
                            "{class} (l = {}, alpha = {}, mu = {})",
                            fmt_f64(f.l()),
                            fmt_f64(f.alpha()),
                            fmt_f64(f.mu())
                        ),
                    );
                }
                ResolvedFlow::Parabolic(f) => {
                    let class = linear_class(&crooked_core::ParabolicFlow::linear_at(1.0))
                        .map(|c| c.to_string())
                        .unwrap_or_else(|e| format!("unclassifiable ({e})"));
                    let (a, b, c) = f.abc();
                    report.kv(
                        name,
                        format!(
                            "{class} (a = {}, b = {}, c = {})",
                            fmt_f64(a),
                            fmt_f64(b),
                            fmt_f64(c)
                        ),
                    );
                }
            }
        }
    }

    let hyperbolic: Vec<_> = resolved
        .flows
        .iter()
        .filter_map(|(name, flow)| match flow {
            ResolvedFlow::Hyperbolic(f) => Some((name, f)),
            ResolvedFlow::Parabolic(_) => None,
        })
        .collect();
    if !hyperbolic.is_empty() && !resolved.points.is_empty() {
        report.section("regions");
        for (fname, flow) in &hyperbolic {
            for (pname, p) in &resolved.points {
                report.kv(&format!("{fname}/{pname}"), flow.region_classify(*p));
            }
        }
    }

    Ok(CmdOutput::ok(report.render()))
}
