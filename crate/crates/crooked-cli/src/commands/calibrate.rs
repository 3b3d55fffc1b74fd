//! `crooked calibrate --p0 … --u0 … --p1 … --u1 …` — build the hyperbolic
//! flow through a disjoint ultraparallel pair of crooked planes and report
//! whether its orbit interpolates them by a crooked foliation.
//!
//! Stdout is a valid scene document: the report lines are TOML comments,
//! and when the pair admits an interpolating foliation the flow and spec
//! are emitted below them, ready to be fed back into `verify`/`foliate`.

use std::collections::BTreeMap;

use crooked_core::flows::OrbitParams;
use crooked_core::{calibrate, CalibrateError, CalibrationKind};

use super::{CliError, CmdOutput};
use crate::report::fmt_f64;
use crate::scene::{self, point_of, vector_of, ConjugatorEntry, FlowEntry, OrbitEntry, SpecEntry};

fn orbit_entry(orbit: OrbitParams) -> OrbitEntry {
    match orbit {
        OrbitParams::Axis => OrbitEntry {
            region: "axis".into(),
            k: None,
            t0: None,
        },
        OrbitParams::T { k, t0 } => OrbitEntry {
            region: "t".into(),
            k: Some(k),
            t0: Some(t0),
        },
        OrbitParams::WPlus { k } => OrbitEntry {
            region: "w+".into(),
            k: Some(k),
            t0: None,
        },
        OrbitParams::WMinus { k } => OrbitEntry {
            region: "w-".into(),
            k: Some(k),
            t0: None,
        },
        OrbitParams::S { k, t0 } => OrbitEntry {
            region: "s".into(),
            k: Some(k),
            t0: Some(t0),
        },
    }
}

pub fn run(p0: [f64; 3], u0: [f64; 3], p1: [f64; 3], u1: [f64; 3]) -> Result<CmdOutput, CliError> {
    let cal = match calibrate(point_of(p0), vector_of(u0), point_of(p1), vector_of(u1)) {
        Ok(cal) => cal,
        Err(CalibrateError::NotDisjoint(margin)) => {
            let mut out = String::new();
            out.push_str("# calibration\n");
            out.push_str("# kind = not disjoint\n");
            out.push_str(&format!("# dg_margin = {}\n", fmt_f64(margin)));
            return Ok(CmdOutput::with_code(out, 5));
        }
        Err(CalibrateError::Crooked(e)) => return Err(e.into()),
    };

    let mut out = String::new();
    out.push_str("# calibration\n");
    out.push_str(&format!("# kind = {}\n", cal.kind));
    out.push_str(&format!("# orbit = {}\n", cal.orbit));
    out.push_str(&format!("# l = {}\n", fmt_f64(cal.flow.l())));
    out.push_str(&format!("# alpha = {}\n", fmt_f64(cal.flow.alpha())));
    out.push_str(&format!("# mu = {}\n", fmt_f64(cal.flow.mu())));
    out.push_str(&format!("# k1 = {}\n", fmt_f64(cal.k1)));
    out.push_str(&format!("# k2 = {}\n", fmt_f64(cal.k2)));
    if let Some(err) = cal.ln_ratio_error {
        out.push_str(&format!("# ln_ratio_error = {}\n", fmt_f64(err)));
        if let OrbitParams::S { t0, .. } = cal.orbit {
            out.push_str(&format!("# t0 = {}\n", fmt_f64(t0)));
        }
    }
    out.push_str(&format!("# calibrated = {}\n", cal.is_calibrated()));

    let emit_spec = match cal.kind {
        CalibrationKind::Calibrated | CalibrationKind::Axis => true,
        CalibrationKind::Miscalibrated | CalibrationKind::NonTimelikeChord => false,
    };
    let code = match cal.kind {
        CalibrationKind::Axis => 6,
        _ => 0,
    };

    if emit_spec {
        let conj = cal.flow.conjugator();
        let doc = scene::SceneDocument {
            flows: BTreeMap::from([(
                "calibrated".to_string(),
                FlowEntry::Hyperbolic {
                    l: cal.flow.l(),
                    alpha: cal.flow.alpha(),
                    conjugator: Some(ConjugatorEntry {
                        linear: conj.linear.0,
                        translation: scene::array_of(conj.translation),
                    }),
                },
            )]),
            foliation_specs: BTreeMap::from([(
                "interpolating".to_string(),
                SpecEntry {
                    flow: "calibrated".to_string(),
                    family: "ultraparallel".to_string(),
                    orbit: Some(orbit_entry(cal.orbit)),
                    interval: None,
                    samples: None,
                },
            )]),
            ..Default::default()
        };
        out.push('\n');
        out.push_str(&scene::emit(&doc));
    }

    Ok(CmdOutput::with_code(out, code))
}
