mod common;

use folia::io::parse::form;
use folia::io::transcript::{parse_transcript, replay_transcript, to_json_string, transcript_json, TRANSCRIPT_SCHEMA};
use folia::reducer::{count_on_line, distinct_count, reduce, reduce_partial, ReducerConfig};
use folia::singular::SingularLocation;
use folia::Error;
use serde_json::Value;

#[test]
fn corpus_transcripts_validate_and_replay() {
    let schema: Value = serde_json::from_str(TRANSCRIPT_SCHEMA).unwrap();
    for (name, f) in common::corpus() {
        let t = reduce(&f, &ReducerConfig::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        let text = to_json_string(&transcript_json(&t));
        let value: Value = serde_json::from_str(&text).unwrap();
        common::validate(&schema, &value).unwrap_or_else(|e| panic!("{name}: {e}"));
        let doc = parse_transcript(&text).unwrap();
        assert_eq!(replay_transcript(&doc).unwrap(), *t.final_form(), "{name}");
        assert_eq!(t.replay().unwrap(), *t.final_form(), "{name}");
    }
}

#[test]
fn every_step_collapses_exactly_the_points_on_its_line() {
    for (name, f) in common::corpus() {
        let t = reduce(&f, &ReducerConfig::default()).unwrap();
        let mut prev = &t.initial_records;
        for step in &t.steps {
            let n = count_on_line(&step.line, prev);
            assert!(n >= 2, "{name}");
            assert_eq!(distinct_count(&step.records), distinct_count(prev) - n + 1, "{name}");
            assert_eq!(count_on_line(step.contracted_line(), &step.records), 1, "{name}");
            prev = &step.records;
        }
        assert!(t.steps.len() + 1 <= distinct_count(&t.initial_records).max(1), "{name}");
    }
}

#[test]
fn conjugate_points_are_collapsed_along_their_rational_line() {
    // (1:1:1) plus a pair of conjugate points on x + y + z = 0
    let f = form("(x*y - z^2) dx + (y*z - x^2) dy + (x*z - y^2) dz");
    let t = reduce(&f, &ReducerConfig::default()).unwrap();
    assert!(t
        .initial_records
        .iter()
        .any(|r| matches!(r.location, SingularLocation::Cluster(_))));
    assert_eq!(t.final_count(), 1);
    assert!(t.steps.len() <= 2);
}

#[test]
fn seven_point_quadratic_field_hits_the_degree_ceiling() {
    // the vector field (x^2, y^2, z^2): seven rational singular points, so
    // several steps each roughly doubling the degree
    let f = form("(-y^2*z + y*z^2) dx + (x^2*z - x*z^2) dy + (-x^2*y + x*y^2) dz");
    let config = ReducerConfig { degree_ceiling: 5 };
    let (t, err) = reduce_partial(&f, &config);
    assert!(matches!(err, Some(Error::DegreeCeiling { ceiling: 5, .. })), "{err:?}");
    assert_eq!(distinct_count(&t.initial_records), 7);
    assert_eq!(t.steps.len(), 1);
    assert_eq!(t.steps[0].form.degree(), 5);
    assert!(t.steps[0].darboux.ok());
    assert_eq!(t.replay().unwrap(), t.steps[0].form);
}
