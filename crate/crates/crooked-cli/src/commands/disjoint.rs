//! `crooked disjoint <scene> <plane> <plane>` — run the analytic criteria
//! and/or the mesh oracle on a pair of crooked planes and compare verdicts.

use std::path::Path;

use crooked_core::{
    cone_disjoint, dg_terms, oracle_disjoint, pair_class, CrookedPlane, OracleVerdict, PairClass,
};

use super::{CliError, CmdOutput};
use crate::report::{fmt_f64, fmt_point, Report};
use crate::scene;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Dg,
    Cone,
    Oracle,
    All,
}

fn verdict_name(disjoint: bool) -> &'static str {
    if disjoint {
        "disjoint"
    } else {
        "intersecting"
    }
}

pub fn run(
    scene_path: &Path,
    name1: &str,
    name2: &str,
    method: Method,
    extent: f64,
    resolution: usize,
    eps: f64,
) -> Result<CmdOutput, CliError> {
    let (_, resolved) = scene::load(scene_path)?;
    let plane = |name: &str| -> Result<CrookedPlane, CliError> {
        resolved
            .planes
            .get(name)
            .copied()
            .ok_or_else(|| CliError::UnknownPlane(name.to_string()))
    };
    let c1 = plane(name1)?;
    let c2 = plane(name2)?;

    let mut report = Report::new();
    report.section("pair");
    report.kv(
        "first",
        format!("{name1} (vertex {})", fmt_point(c1.vertex())),
    );
    report.kv(
        "second",
        format!("{name2} (vertex {})", fmt_point(c2.vertex())),
    );
    let class = pair_class(c1.director(), c2.director())?;
    report.kv("directors", class);

    report.section("verdicts");
    let mut verdicts: Vec<bool> = Vec::new();

    if matches!(method, Method::Dg | Method::All) {
        if class == PairClass::Ultraparallel {
            let t = dg_terms(&c1, &c2)?;
            let disjoint = t.lhs > t.rhs;
            report.kv(
                "dg",
                format!(
                    "{} (lhs = {}, rhs = {}, margin = {})",
                    verdict_name(disjoint),
                    fmt_f64(t.lhs),
                    fmt_f64(t.rhs),
                    fmt_f64(t.margin())
                ),
            );
            verdicts.push(disjoint);
        } else {
            report.kv("dg", format!("not applicable (directors are {class})"));
        }
    }

    if matches!(method, Method::Cone | Method::All) {
        if class == PairClass::Crossing {
            report.kv("cone", "not applicable (directors are crossing)");
        } else {
            let disjoint = cone_disjoint(&c1, &c2)?;
            report.kv("cone", verdict_name(disjoint));
            verdicts.push(disjoint);
        }
    }

    if matches!(method, Method::Oracle | Method::All) {
        let verdict = oracle_disjoint(&c1, &c2, extent, resolution, eps)?;
        match verdict {
            OracleVerdict::Intersecting(w) => {
                report.kv(
                    "oracle",
                    format!("intersecting (witness = {})", fmt_point(w)),
                );
                verdicts.push(false);
            }
            OracleVerdict::NoIntersectionFound => {
                report.kv(
                    "oracle",
                    format!(
                        "no intersection found (extent = {}, resolution = {resolution})",
                        fmt_f64(extent)
                    ),
                );
                verdicts.push(true);
            }
        }
    }

    let code = if method == Method::All {
        let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
        report.kv("agreement", agree);
        if agree {
            0
        } else {
            3
        }
    } else {
        0
    };

    Ok(CmdOutput::with_code(report.render(), code))
}
