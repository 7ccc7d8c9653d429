//! JSON documents for singular loci and reduction transcripts, and replay of
//! a transcript read back from JSON.
//!
//! Every polynomial, point, line and matrix is stored in the same text syntax
//! the parser accepts, so a document can be checked without this library.

use serde::{Deserialize, Serialize};

use super::parse::{parse_form, parse_line, parse_matrix, parse_point, parse_poly, Params};
use crate::birational::{frame_for, BirationalStep, BuiltinMap, LinearFrame, QuadraticMap, StepMap};
use crate::error::{Error, Result};
use crate::foliation::FoliationForm;
use crate::reducer::{LemmaStep, ReductionTranscript};
use crate::singular::{darboux_check, singular_records, DarbouxCheck, SingularLocation, SingularRecord};

/// JSON Schema describing [`TranscriptJson`].
pub const TRANSCRIPT_SCHEMA: &str = include_str!("../../schema/transcript.schema.json");

/// One singular location: either `point` or `cluster` is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SingularJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<ClusterJson>,
    pub mu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ClusterJson {
    pub minpoly: String,
    pub point: String,
    pub size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DarbouxJson {
    pub sum: u64,
    pub target: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StepJson {
    pub line: String,
    pub base_point: String,
    pub frame: String,
    pub map: String,
    pub extracted_factor: String,
    pub result_form: String,
    pub result_degree: u32,
    pub singular: Vec<SingularJson>,
    pub darboux: DarbouxJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FinalJson {
    pub form: String,
    pub degree: u32,
    pub singular: Vec<SingularJson>,
    /// A frame sending a line off the remaining point to infinity leaves no
    /// singular point in the affine plane; with at most one point such a
    /// line always exists.
    pub no_affine_singularity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TranscriptJson {
    pub input: String,
    pub degree: u32,
    pub steps: Vec<StepJson>,
    #[serde(rename = "final")]
    pub final_state: FinalJson,
}

/// Output of `sing --json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SingularLocusJson {
    pub form: String,
    pub degree: u32,
    pub singular: Vec<SingularJson>,
    pub darboux: DarbouxJson,
}

impl From<&SingularRecord> for SingularJson {
    fn from(r: &SingularRecord) -> Self {
        match &r.location {
            SingularLocation::Point(p) => SingularJson {
                point: Some(p.to_string()),
                cluster: None,
                mu: r.mu,
            },
            SingularLocation::Cluster(c) => SingularJson {
                point: None,
                cluster: Some(ClusterJson {
                    minpoly: c.minpoly_text(),
                    point: c.point_text(),
                    size: c.size(),
                }),
                mu: r.mu,
            },
        }
    }
}

impl From<DarbouxCheck> for DarbouxJson {
    fn from(d: DarbouxCheck) -> Self {
        DarbouxJson {
            sum: d.sum,
            target: d.target,
            ok: d.ok(),
        }
    }
}

pub fn singular_json(records: &[SingularRecord]) -> Vec<SingularJson> {
    records.iter().map(SingularJson::from).collect()
}

pub fn singular_locus_json(form: &FoliationForm, records: &[SingularRecord]) -> SingularLocusJson {
    SingularLocusJson {
        form: form.to_string(),
        degree: form.degree(),
        singular: singular_json(records),
        darboux: darboux_check(form.degree(), records).into(),
    }
}

fn quadratic_label(step: &LemmaStep) -> String {
    step.steps
        .iter()
        .find_map(|s| match &s.map {
            StepMap::Quadratic(q) => Some(q.label().to_string()),
            StepMap::Frame(_) => None,
        })
        .unwrap_or_default()
}

pub fn step_json(step: &LemmaStep) -> StepJson {
    StepJson {
        line: step.line.to_string(),
        base_point: step.base_point.to_string(),
        frame: step.frame.to_string(),
        map: quadratic_label(step),
        extracted_factor: step.extracted_factor().to_string(),
        result_form: step.form.to_string(),
        result_degree: step.form.degree(),
        singular: singular_json(&step.records),
        darboux: step.darboux.into(),
    }
}

pub fn transcript_json(t: &ReductionTranscript) -> TranscriptJson {
    let last = t.final_form();
    TranscriptJson {
        input: t.initial.to_string(),
        degree: t.initial.degree(),
        steps: t.steps.iter().map(step_json).collect(),
        final_state: FinalJson {
            form: last.to_string(),
            degree: last.degree(),
            singular: singular_json(t.final_records()),
            no_affine_singularity: t.final_count() <= 1,
        },
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_transcript(text: &str) -> Result<TranscriptJson> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

fn mismatch(what: impl Into<String>) -> Error {
    Error::ReplayMismatch(what.into())
}

fn check_locus(
    label: &str,
    form: &FoliationForm,
    singular: &[SingularJson],
) -> Result<Vec<SingularRecord>> {
    let records = singular_records(form)?;
    if singular_json(&records) != singular {
        return Err(mismatch(format!("{label}: recorded singular locus differs")));
    }
    Ok(records)
}

/// Re-applies every recorded map to the input form, checking each recorded
/// frame, factor, result and singular locus. Returns the final form.
pub fn replay_transcript(doc: &TranscriptJson) -> Result<FoliationForm> {
    let params = Params::new();
    let mut form = parse_form(&doc.input, &params)?;
    if form.degree() != doc.degree {
        return Err(mismatch(format!("input has degree {}, recorded {}", form.degree(), doc.degree)));
    }
    for (i, s) in doc.steps.iter().enumerate() {
        let label = format!("step {}", i + 1);
        let line = parse_line(&s.line)?;
        let base = parse_point(&s.base_point)?;
        let frame = LinearFrame::new(parse_matrix(&s.frame)?)?;
        if frame != frame_for(&line, &base)? {
            return Err(mismatch(format!("{label}: frame does not match line and base point")));
        }
        let which = BuiltinMap::from_name(&s.map)
            .ok_or_else(|| Error::UnsupportedMap(s.map.clone()))?;
        let factor = parse_poly(&s.extracted_factor, &params)?;
        form = BirationalStep {
            map: StepMap::Frame(frame),
            extracted_factor: crate::algebra::MultiPoly::one(3),
        }
        .apply(&form)?;
        form = BirationalStep {
            map: StepMap::Quadratic(QuadraticMap::builtin(which)),
            extracted_factor: factor,
        }
        .apply(&form)
        .map_err(|e| match e {
            Error::Invariant(m) => mismatch(format!("{label}: {m}")),
            other => other,
        })?;
        if form != parse_form(&s.result_form, &params)? || form.degree() != s.result_degree {
            return Err(mismatch(format!("{label}: result form differs")));
        }
        let records = check_locus(&label, &form, &s.singular)?;
        if DarbouxJson::from(darboux_check(form.degree(), &records)) != s.darboux {
            return Err(mismatch(format!("{label}: Darboux record differs")));
        }
    }
    let fin = &doc.final_state;
    if form != parse_form(&fin.form, &params)? || form.degree() != fin.degree {
        return Err(mismatch("final form differs"));
    }
    let records = check_locus("final", &form, &fin.singular)?;
    let distinct = records.iter().map(|r| r.location.size()).sum::<usize>();
    if fin.no_affine_singularity != (distinct <= 1) {
        return Err(mismatch("final affine-singularity flag differs"));
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::io::parse::{form, lambda_family};
    use crate::reducer::{reduce, ReducerConfig};

    #[test]
    fn pencil_locus_document() {
        let f = form("y dx - x dy");
        let doc = singular_locus_json(&f, &singular_records(&f).unwrap());
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            text,
            r#"{"form":"(y) dx + (-x) dy + (0) dz","degree":0,"singular":[{"point":"(0:0:1)","mu":1}],"darboux":{"sum":1,"target":1,"ok":true}}"#
        );
    }

    #[test]
    fn cluster_entry_has_minpoly_and_point() {
        let f = form("(y*z - x*z) dx + (2*y*z - x*z) dy + (x^2 - 2*y^2) dz");
        let entries = singular_json(&singular_records(&f).unwrap());
        let c = entries[1].cluster.as_ref().unwrap();
        assert_eq!((c.minpoly.as_str(), c.point.as_str(), c.size), ("t^2 - 2", "(t:1:0)", 2));
        assert!(entries[1].point.is_none());
    }

    #[test]
    fn transcript_round_trips_and_replays() {
        let f = lambda_family(&rat(3)).unwrap();
        let t = reduce(&f, &ReducerConfig::default()).unwrap();
        let doc = transcript_json(&t);
        assert_eq!(doc.steps.len(), 2);
        assert!(doc.steps.iter().all(|s| s.map == "phi" && s.darboux.ok));
        let text = to_json_string(&doc);
        let back = parse_transcript(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(replay_transcript(&back).unwrap(), *t.final_form());
    }

    #[test]
    fn tampered_transcript_is_rejected() {
        let f = lambda_family(&rat(2)).unwrap();
        let doc = transcript_json(&reduce(&f, &ReducerConfig::default()).unwrap());
        let mut bad = doc.clone();
        bad.steps[0].singular[0].mu += 1;
        assert!(matches!(replay_transcript(&bad), Err(Error::ReplayMismatch(_))));
        let mut bad = doc.clone();
        bad.steps[1].extracted_factor = "x^3".into();
        assert!(matches!(replay_transcript(&bad), Err(Error::ReplayMismatch(_))));
        let mut bad = doc;
        bad.steps[0].base_point = "(1:0:0)".into();
        assert!(replay_transcript(&bad).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"input":"y dx - x dy","degree":0,"steps":[],"final":{"form":"y dx - x dy","degree":0,"singular":[],"noAffineSingularity":true},"extra":1}"#;
        assert!(matches!(parse_transcript(text), Err(Error::Json(_))));
    }
}
