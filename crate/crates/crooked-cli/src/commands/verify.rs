//! `crooked verify <scene> <spec>` — run the foliation verifier and print
//! its report; exit 4 on failure with the first failing records as
//! witnesses.

use std::path::Path;

use crooked_core::{verify, FoliationSpec, VerificationReport, VerifyError};

use super::{CliError, CmdOutput};
use crate::report::{fmt_f64, Report};
use crate::scene::{self, family_name};

/// Structural errors mean the spec itself is malformed (exit 2); geometric
/// errors mean the family can never foliate and count as a failed
/// verification (exit 4).
fn is_structural(err: &VerifyError) -> bool {
    matches!(
        err,
        VerifyError::BadInterval(..)
            | VerifyError::TooFewSamples(..)
            | VerifyError::MismatchedSamples { .. }
            | VerifyError::NonMonotonicSamples(..)
            | VerifyError::FamilyMismatch { .. }
    )
}

pub fn describe_spec(report: &mut Report, name: &str, spec: &FoliationSpec) {
    report.section("spec");
    report.kv("name", name);
    report.kv("family", family_name(spec.family));
    match &spec.curve {
        crooked_core::CurveSpec::HyperbolicOrbit { flow, orbit } => {
            report.kv("curve", format!("hyperbolic orbit {orbit}"));
            report.kvf("l", flow.l());
            report.kvf("alpha", flow.alpha());
            report.kvf("mu", flow.mu());
        }
        crooked_core::CurveSpec::ParabolicOrbit { flow } => {
            let (a, b, c) = flow.abc();
            report.kv(
                "curve",
                format!(
                    "parabolic orbit (a = {}, b = {}, c = {})",
                    fmt_f64(a),
                    fmt_f64(b),
                    fmt_f64(c)
                ),
            );
        }
        crooked_core::CurveSpec::Sampled { ts, .. } => {
            report.kv("curve", format!("sampled ({} points)", ts.len()));
        }
    }
    report.kv(
        "interval",
        format!(
            "[{}, {}]",
            fmt_f64(spec.interval.0),
            fmt_f64(spec.interval.1)
        ),
    );
    report.kv("samples", spec.samples);
}

pub fn describe_outcome(report: &mut Report, outcome: &VerificationReport) {
    report.section("verification");
    report.kvf("tol", outcome.tol);
    report.kv("orientation_consistent", outcome.orientation_consistent);

    let inf_failures = outcome.infinitesimal.iter().filter(|r| !r.pass).count();
    report.kv(
        "infinitesimal",
        format!(
            "{} of {} records pass",
            outcome.infinitesimal.len() - inf_failures,
            outcome.infinitesimal.len()
        ),
    );
    if let Some(r) = outcome.first_infinitesimal_failure() {
        report.kv(
            "infinitesimal_witness",
            format!(
                "t = {}: du = {}, dm = {}, dp = {}",
                fmt_f64(r.t),
                fmt_f64(r.du),
                fmt_f64(r.dm),
                fmt_f64(r.dp)
            ),
        );
    }

    let pair_failures = outcome.pairs.iter().filter(|r| !r.pass).count();
    report.kv(
        "pairs",
        format!(
            "{} of {} records pass",
            outcome.pairs.len() - pair_failures,
            outcome.pairs.len()
        ),
    );
    if let Some(r) = outcome.first_pair_failure() {
        let dg = match r.dg {
            Some(true) => "disjoint",
            Some(false) => "intersecting",
            None => "not applicable",
        };
        report.kv(
            "pair_witness",
            format!(
                "(t, s) = ({}, {}): dg = {dg}, cone = {}",
                fmt_f64(r.t),
                fmt_f64(r.s),
                if r.cone { "disjoint" } else { "intersecting" }
            ),
        );
    }

    report.kv("result", if outcome.pass() { "PASS" } else { "FAIL" });
}

pub fn run(
    scene_path: &Path,
    spec_name: &str,
    interval: Option<(f64, f64)>,
    samples: Option<usize>,
    tol: Option<f64>,
) -> Result<CmdOutput, CliError> {
    let (_, resolved) = scene::load(scene_path)?;
    let mut spec = resolved
        .specs
        .get(spec_name)
        .cloned()
        .ok_or_else(|| CliError::UnknownSpec(spec_name.to_string()))?;
    if let Some(iv) = interval {
        spec.interval = iv;
    }
    if let Some(n) = samples {
        spec.samples = n;
    }
    let tol = tol.unwrap_or_else(|| spec.default_tolerance());

    let mut report = Report::new();
    describe_spec(&mut report, spec_name, &spec);

    match verify(&spec, tol) {
        Ok(outcome) => {
            describe_outcome(&mut report, &outcome);
            let code = if outcome.pass() { 0 } else { 4 };
            Ok(CmdOutput::with_code(report.render(), code))
        }
        Err(err) if is_structural(&err) => Err(CliError::Invalid(err.to_string())),
        Err(err) => {
            report.section("verification");
            report.kv("error", &err);
            report.kv("result", "FAIL");
            Ok(CmdOutput::with_code(report.render(), 4))
        }
    }
}
