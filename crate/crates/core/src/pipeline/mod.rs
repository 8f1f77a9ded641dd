//! End-to-end run: validate the curve, find the divisor, build the graded
//! model, verify the resolution and canonical module, reduce to the artinian
//! quotient, and collect everything into one JSON document.

mod config;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub use config::{parse_poly, RunConfig, DEFAULT_WINDOW};

use crate::artinian::{
    build_artinian, find_sop, socle_and_type, verify_total_reflexivity_artinian,
    ArtinianCertificate, SocleReport, Sop,
};
use crate::curve::{validate_curve, HyperellipticCurve};
use crate::divisor_search::{search, CertificateRecord};
use crate::error::{Error, Result};
use crate::reflexivity::{
    betti_numbers, canonical_and_type, ext_vanishing, syzygy_matrix, verify_complex_window,
    verify_dual_and_hom, ExactnessRecord, ExtReport, HomReport, Resolution, SyzygyRecord,
    TypeReport,
};
use crate::section_ring::{
    build_graded_model, check_exact_sequences, check_standard_graded, hilbert_check, HilbertReport,
    SequenceReport, StandardGradedReport,
};

/// Pipeline stages in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Validate,
    Search,
    Build,
    Resolution,
    Canonical,
    Artinian,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Validate,
        Stage::Search,
        Stage::Build,
        Stage::Resolution,
        Stage::Canonical,
        Stage::Artinian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Validate => "validate",
            Stage::Search => "search",
            Stage::Build => "build",
            Stage::Resolution => "resolution",
            Stage::Canonical => "canonical",
            Stage::Artinian => "artinian",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSummary {
    pub p: u64,
    pub f: Vec<u64>,
    pub genus: usize,
    pub rational_places: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedSummary {
    pub hilbert: HilbertReport,
    pub standard_graded: StandardGradedReport,
    pub sequences: SequenceReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub syzygy: SyzygyRecord,
    pub complex: Vec<ExactnessRecord>,
    pub hom: HomReport,
    pub ext: ExtReport,
    pub betti: Vec<usize>,
    /// Ranks of the final free modules `F_1 → F_0 → M → 0`.
    pub tail_ranks: [usize; 2],
    pub windowed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinianSummary {
    pub sop: Sop,
    pub rbar_dims: Vec<usize>,
    pub mbar_dims: Vec<usize>,
    pub certificate: ArtinianCertificate,
    pub socle: SocleReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: Stage,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDocument {
    pub config: RunConfig,
    pub curve: Option<CurveSummary>,
    pub divisor: Option<CertificateRecord>,
    pub graded_model: Option<GradedSummary>,
    pub resolution: Option<ResolutionSummary>,
    pub canonical: Option<TypeReport>,
    pub artinian: Option<ArtinianSummary>,
    pub stages: Vec<StageRecord>,
    pub notes: Vec<String>,
    pub verdict: String,
    pub failed_stage: Option<Stage>,
    pub tool_version: String,
    /// Milliseconds per stage; excluded from reproducibility comparisons.
    pub timings: BTreeMap<String, u64>,
}

impl CertificateDocument {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }

    /// Process exit code: 0 on PASS, 1 on a failed stage.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("document serializes")
    }

    /// Sorted-key, pretty-printed JSON with a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        canonical_json(&self.to_value())
    }
}

/// Sorted keys (serde_json's default map is ordered), two-space indent.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

/// Copy of a document value with the timings block blanked.
pub fn mask_timings(v: &Value) -> Value {
    let mut v = v.clone();
    if let Some(obj) = v.as_object_mut() {
        obj.insert("timings".into(), Value::Object(Default::default()));
    }
    v
}

const NOTES: [&str; 3] = [
    "resolution, dual, Hom and Ext checks are windowed: internal degrees up to degree_bound - 1",
    "resolution tail read as R(-1)^2 -> R^2 -> M -> 0: M needs two generators in degree 0",
    "artinian certificate is complete: the reduced complex is 1-periodic",
];

/// Validates the config and curve; errors here map to exit code 2.
pub fn prepare(config: &RunConfig) -> Result<HyperellipticCurve> {
    config.check()?;
    validate_curve(config.p, &config.curve_coeffs()).map_err(|e| Error::Config(e.to_string()))
}

/// Runs stages up to and including `last`.
pub fn run_until(config: &RunConfig, last: Stage) -> Result<CertificateDocument> {
    let mut doc = CertificateDocument {
        config: config.clone(),
        curve: None,
        divisor: None,
        graded_model: None,
        resolution: None,
        canonical: None,
        artinian: None,
        stages: Vec::new(),
        notes: NOTES.iter().map(|s| s.to_string()).collect(),
        verdict: "PASS".into(),
        failed_stage: None,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        timings: BTreeMap::new(),
    };
    let clock = Instant::now();
    let curve = prepare(config)?;
    doc.curve = Some(CurveSummary {
        p: config.p,
        f: curve.f().coeffs().to_vec(),
        genus: curve.genus(),
        rational_places: curve.rational_points().len(),
    });
    doc.stages.push(StageRecord {
        stage: Stage::Validate,
        passed: true,
        error: None,
    });
    doc.timings
        .insert("validate".into(), clock.elapsed().as_millis() as u64);

    let mut state = State::default();
    for stage in Stage::ALL.into_iter().skip(1).filter(|&s| s <= last) {
        let clock = Instant::now();
        let outcome = run_stage(stage, config, &curve, &mut state, &mut doc);
        doc.timings
            .insert(stage.name().into(), clock.elapsed().as_millis() as u64);
        let error = outcome.err().map(|e| e.to_string());
        let passed = error.is_none();
        doc.stages.push(StageRecord {
            stage,
            passed,
            error,
        });
        if !passed {
            doc.verdict = "FAIL".into();
            doc.failed_stage = Some(stage);
            break;
        }
    }
    Ok(doc)
}

/// The full pipeline.
pub fn run_pipeline(config: &RunConfig) -> Result<CertificateDocument> {
    run_until(config, Stage::Artinian)
}

#[derive(Default)]
struct State {
    cert: Option<crate::divisor_search::DivisorCertificate>,
    model: Option<crate::section_ring::GradedModel>,
    syzygy: Option<crate::reflexivity::SyzygyMatrix>,
}

fn run_stage(
    stage: Stage,
    config: &RunConfig,
    curve: &HyperellipticCurve,
    state: &mut State,
    doc: &mut CertificateDocument,
) -> Result<()> {
    match stage {
        Stage::Validate => {}
        Stage::Search => {
            let cert = search(curve, config.seed, config.max_tries, config.strong)?;
            doc.divisor = Some(cert.record());
            state.cert = Some(cert);
        }
        Stage::Build => {
            let cert = state.cert.as_ref().expect("search ran");
            let model = build_graded_model(curve, cert, config.degree_bound)?;
            doc.graded_model = Some(GradedSummary {
                hilbert: hilbert_check(&model)?,
                standard_graded: check_standard_graded(&model)?,
                sequences: check_exact_sequences(&model)?,
            });
            state.model = Some(model);
        }
        Stage::Resolution => {
            let model = state.model.as_ref().expect("build ran");
            let a = syzygy_matrix(model)?;
            let complex = verify_complex_window(model, &a)?;
            let hom = verify_dual_and_hom(model, &a)?;
            let ext = ext_vanishing(model, Resolution::Periodic(&a), config.window)?;
            let betti = betti_numbers(model, Resolution::Periodic(&a), config.window)?;
            doc.resolution = Some(ResolutionSummary {
                syzygy: a.record(model),
                complex,
                hom,
                ext,
                tail_ranks: [betti[1], betti[0]],
                betti,
                windowed: true,
            });
            state.syzygy = Some(a);
        }
        Stage::Canonical => {
            let model = state.model.as_ref().expect("build ran");
            doc.canonical = Some(canonical_and_type(model)?);
        }
        Stage::Artinian => {
            let model = state.model.as_ref().expect("build ran");
            let a = state.syzygy.as_ref().expect("resolution ran");
            let sop = find_sop(model, config.seed, config.max_tries)?;
            let am = build_artinian(model, &sop, a)?;
            let certificate = verify_total_reflexivity_artinian(&am)?;
            let socle = socle_and_type(&am)?;
            if let Some(t) = &doc.canonical {
                if t.type_of_r != socle.type_of_quotient {
                    return Err(Error::SocleMismatch(format!(
                        "type {} of the quotient differs from type {} of the ring",
                        socle.type_of_quotient, t.type_of_r
                    )));
                }
            }
            doc.artinian = Some(ArtinianSummary {
                sop,
                rbar_dims: am.rbar_dims.clone(),
                mbar_dims: am.mbar_dims.clone(),
                certificate,
                socle,
            });
        }
    }
    Ok(())
}

/// Writes the canonical JSON to `path`.
pub fn emit_report(doc: &CertificateDocument, path: &Path) -> Result<()> {
    std::fs::write(path, doc.to_canonical_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_curve_is_a_config_error() {
        let cfg = RunConfig::new(101, vec![1, 0, 0, 0, 1]);
        assert!(matches!(run_pipeline(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn partial_run_stops_at_requested_stage() {
        let doc = run_until(&RunConfig::demo_g2(), Stage::Search).unwrap();
        assert!(doc.passed());
        assert!(doc.divisor.is_some() && doc.graded_model.is_none());
        assert_eq!(doc.stages.len(), 2);
    }

    #[test]
    fn failing_stage_is_named() {
        let curve = prepare(&RunConfig::demo_g2()).unwrap();
        // a seed whose single try draws a divisor with a base point
        let seed = (0..500)
            .find(|&s| search(&curve, s, 1, false).is_err())
            .expect("some single try fails");
        let mut cfg = RunConfig::demo_g2();
        cfg.seed = seed;
        cfg.max_tries = 1;
        let doc = run_pipeline(&cfg).unwrap();
        assert_eq!(doc.verdict, "FAIL");
        assert_eq!(doc.exit_code(), 1);
        assert_eq!(doc.failed_stage, Some(Stage::Search));
        assert!(doc.stages.last().unwrap().error.is_some());
        assert!(doc.graded_model.is_none());
    }

    #[test]
    fn json_keys_are_sorted() {
        let doc = run_until(&RunConfig::demo_g2(), Stage::Validate).unwrap();
        let s = doc.to_canonical_json();
        let top: Vec<&str> = s
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = top.clone();
        sorted.sort();
        assert_eq!(top, sorted);
    }
}
