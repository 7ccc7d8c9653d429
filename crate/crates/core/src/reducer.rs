//! Reduction of a foliation to one with at most one singular point by
//! repeatedly collapsing the singular points on a line.

use crate::birational::{frame_for, BirationalStep, BuiltinMap, LinearFrame, QuadraticMap, StepMap};
use crate::error::{Error, Result};
use crate::foliation::FoliationForm;
use crate::geometry::{ProjectiveLine, ProjectivePoint};
use crate::singular::{darboux_check, singular_records, DarbouxCheck, SingularLocation, SingularRecord};

pub const DEFAULT_DEGREE_CEILING: u32 = 64;
pub const DEGREE_CEILING_ENV: &str = "FOLIA_DEGREE_CEILING";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducerConfig {
    /// Largest foliation degree a step may produce.
    pub degree_ceiling: u32,
}

impl Default for ReducerConfig {
    fn default() -> Self {
        ReducerConfig {
            degree_ceiling: DEFAULT_DEGREE_CEILING,
        }
    }
}

impl ReducerConfig {
    /// Defaults, with the ceiling overridden by `FOLIA_DEGREE_CEILING` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(DEGREE_CEILING_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|degree_ceiling| ReducerConfig { degree_ceiling })
                .map_err(|_| Error::Precondition(format!("{DEGREE_CEILING_ENV}={v} is not a degree"))),
            Err(_) => Ok(ReducerConfig::default()),
        }
    }
}

/// Number of distinct geometric singular points.
pub fn distinct_count(records: &[SingularRecord]) -> usize {
    records.iter().map(|r| r.location.size()).sum()
}

fn on_line(line: &ProjectiveLine, loc: &SingularLocation) -> bool {
    line.contains(&loc.member())
}

/// Geometric singular points lying on `line`.
pub fn count_on_line(line: &ProjectiveLine, records: &[SingularRecord]) -> usize {
    records
        .iter()
        .filter(|r| on_line(line, &r.location))
        .map(|r| r.location.size())
        .sum()
}

/// The rational line through the most singular points, ties going to the
/// smallest normalized coefficient vector.
pub fn select_line(records: &[SingularRecord]) -> Result<ProjectiveLine> {
    let count = distinct_count(records);
    if count < 2 {
        return Err(Error::Precondition(format!(
            "already reduced: {count} singular point(s)"
        )));
    }
    let rational: Vec<&ProjectivePoint> = records
        .iter()
        .filter_map(|r| match &r.location {
            SingularLocation::Point(p) => Some(p),
            SingularLocation::Cluster(_) => None,
        })
        .collect();
    let mut candidates = Vec::new();
    for (i, p) in rational.iter().enumerate() {
        for q in &rational[i + 1..] {
            candidates.push(ProjectiveLine::through(p, q)?);
        }
    }
    for r in records {
        if let SingularLocation::Cluster(c) = &r.location {
            candidates.extend(c.rational_line());
        }
    }
    candidates.sort();
    candidates.dedup();
    let best = candidates
        .into_iter()
        .map(|l| (count_on_line(&l, records), l))
        .filter(|(n, _)| *n >= 2)
        .fold(None::<(usize, ProjectiveLine)>, |best, cand| match best {
            Some(b) if b.0 >= cand.0 => Some(b),
            _ => Some(cand),
        });
    best.map(|(_, l)| l).ok_or_else(|| {
        Error::ExtensionRequired(format!(
            "{count} singular points, no two on a line defined over the rationals"
        ))
    })
}

/// Candidate base points on `line`: `p0 + t·p1` for `t = 0, 1, …` and then
/// `p1`, where `p0, p1` are the line's first canonical points.
pub fn base_point_candidates(line: &ProjectiveLine, count: usize) -> Result<Vec<ProjectivePoint>> {
    let pts = line.canonical_points(2)?;
    let (p0, p1) = (pts[0], pts[1]);
    let mut out: Vec<ProjectivePoint> = (0..count.saturating_sub(1) as i64)
        .map(|t| ProjectivePoint::from_ints(std::array::from_fn(|i| p0[i] + t * p1[i])))
        .collect::<Result<_>>()?;
    out.push(ProjectivePoint::from_ints(p1)?);
    Ok(out)
}

/// A rational point of `line` that is not singular and, when the line is not
/// invariant, where the leaf through it crosses the line transversally.
pub fn select_base_point(
    form: &FoliationForm,
    line: &ProjectiveLine,
    records: &[SingularRecord],
) -> Result<ProjectivePoint> {
    let n = form.degree() as usize;
    let scan = (n + 3).max(distinct_count(records) + n + 2);
    let invariant = form.is_line_invariant(line)?;
    let pts = line.canonical_points(2)?;
    let candidates = base_point_candidates(line, scan)?;
    for p in &candidates {
        let values = form.coeffs().clone().map(|c| p.eval(&c));
        if values.iter().all(|v| v.is_zero()) {
            continue;
        }
        if !invariant {
            // a(p)·q for a second point q of the line
            let q = pts
                .iter()
                .map(|v| ProjectivePoint::from_ints(*v).unwrap())
                .find(|q| q != p)
                .unwrap();
            let mut dot = crate::algebra::Scalar::zero();
            for (v, c) in values.iter().zip(q.coords()) {
                dot = &dot + &(v * c);
            }
            if dot.is_zero() {
                continue;
            }
        }
        return Ok(p.clone());
    }
    Err(Error::ScanExhausted {
        scanned: candidates.len(),
    })
}

/// One application of frame plus quadratic involution.
#[derive(Clone, Debug)]
pub struct LemmaStep {
    pub line: ProjectiveLine,
    pub line_invariant: bool,
    pub base_point: ProjectivePoint,
    pub frame: LinearFrame,
    pub steps: Vec<BirationalStep>,
    pub form: FoliationForm,
    pub records: Vec<SingularRecord>,
    pub darboux: DarbouxCheck,
}

impl LemmaStep {
    /// The factor removed after the quadratic pullback.
    pub fn extracted_factor(&self) -> &crate::algebra::MultiPoly {
        &self.steps.last().unwrap().extracted_factor
    }

    /// The point of the input plane corresponding to `p` in the output plane.
    pub fn point_to_input(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let mut q = p.clone();
        for s in self.steps.iter().rev() {
            q = s.point_to_input(&q)?;
        }
        Ok(q)
    }

    /// The line collapsed in the output plane.
    pub fn contracted_line(&self) -> &ProjectiveLine {
        self.steps.last().unwrap().contracted_line().unwrap()
    }
}

/// Frames `line` to `z = 0` with the base point at `(0:1:0)`, pulls back by
/// the quadratic involution contracting `z = 0`, and checks the outcome: the
/// points on `line` merge into one, every other point survives with its
/// Milnor number.
pub fn lemma_step(form: &FoliationForm, line: &ProjectiveLine) -> Result<LemmaStep> {
    let records = singular_records(form)?;
    lemma_step_with(form, &records, line, &ReducerConfig::default())
}

pub fn lemma_step_with(
    form: &FoliationForm,
    records: &[SingularRecord],
    line: &ProjectiveLine,
    config: &ReducerConfig,
) -> Result<LemmaStep> {
    let n = count_on_line(line, records);
    if n < 2 {
        return Err(Error::Precondition(format!(
            "{line} carries {n} singular point(s); need at least 2"
        )));
    }
    let line_invariant = form.is_line_invariant(line)?;
    let base_point = select_base_point(form, line, records)?;
    let frame = frame_for(line, &base_point)?;
    let (frame_step, framed) = BirationalStep::record(form, StepMap::Frame(frame.clone()))?;
    let phi = QuadraticMap::builtin(BuiltinMap::Phi);
    let (phi_step, out) = BirationalStep::record(&framed, StepMap::Quadratic(phi))?;
    if out.degree() > config.degree_ceiling {
        return Err(Error::DegreeCeiling {
            degree: out.degree(),
            ceiling: config.degree_ceiling,
        });
    }
    let out_records = singular_records(&out)?;
    let darboux = darboux_check(out.degree(), &out_records);
    if !darboux.ok() {
        return Err(Error::Invariant(format!(
            "Milnor numbers sum to {} instead of {}",
            darboux.sum, darboux.target
        )));
    }
    let step = LemmaStep {
        line: line.clone(),
        line_invariant,
        base_point,
        frame,
        steps: vec![frame_step, phi_step],
        form: out,
        records: out_records,
        darboux,
    };
    let expected = distinct_count(records) - n + 1;
    let got = distinct_count(&step.records);
    if got != expected {
        return Err(Error::Invariant(format!(
            "expected {expected} singular points after collapsing {n} on {line}, found {got}"
        )));
    }
    let on_contracted = count_on_line(step.contracted_line(), &step.records);
    if on_contracted != 1 {
        return Err(Error::Invariant(format!(
            "expected one singular point on the contracted line, found {on_contracted}"
        )));
    }
    off_line_correspondence(records, &step)?;
    Ok(step)
}

/// Pairs every output singular location off the contracted line with the
/// input location it comes from, checking Milnor numbers agree and that
/// nothing off `step.line` is lost.
pub fn off_line_correspondence<'a>(
    input: &'a [SingularRecord],
    step: &'a LemmaStep,
) -> Result<Vec<(&'a SingularRecord, &'a SingularRecord)>> {
    let contracted = step.contracted_line();
    let mut pairs = Vec::new();
    for rec in &step.records {
        if on_line(contracted, &rec.location) {
            continue;
        }
        let image = step.point_to_input(&rec.location.member())?;
        let Some(src) = input.iter().find(|r| r.location.contains(&image)) else {
            return Err(Error::Invariant(format!(
                "{} maps to {image}, which is not singular",
                rec.location
            )));
        };
        if on_line(&step.line, &src.location) || src.mu != rec.mu || src.location.size() != rec.location.size() {
            return Err(Error::Invariant(format!(
                "{} (mu {}) does not match {} (mu {})",
                rec.location, rec.mu, src.location, src.mu
            )));
        }
        pairs.push((rec, src));
    }
    let mapped: usize = pairs.iter().map(|(r, _)| r.location.size()).sum();
    let off: usize = distinct_count(input) - count_on_line(&step.line, input);
    if mapped != off {
        return Err(Error::Invariant(format!(
            "{off} singular points off {} but {mapped} off the contracted line",
            step.line
        )));
    }
    Ok(pairs)
}

/// The whole run: the input, each step, and the final foliation.
#[derive(Clone, Debug)]
pub struct ReductionTranscript {
    pub initial: FoliationForm,
    pub initial_records: Vec<SingularRecord>,
    pub steps: Vec<LemmaStep>,
}

impl ReductionTranscript {
    pub fn final_form(&self) -> &FoliationForm {
        self.steps.last().map_or(&self.initial, |s| &s.form)
    }

    pub fn final_records(&self) -> &[SingularRecord] {
        self.steps.last().map_or(&self.initial_records, |s| &s.records)
    }

    pub fn final_count(&self) -> usize {
        distinct_count(self.final_records())
    }

    /// Reapplies every recorded map to the initial form and checks each
    /// intermediate result; returns the final form.
    pub fn replay(&self) -> Result<FoliationForm> {
        let mut form = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            for s in &step.steps {
                form = s.apply(&form)?;
            }
            if form != step.form {
                return Err(Error::Invariant(format!("step {} does not replay", i + 1)));
            }
        }
        Ok(form)
    }
}

/// Applies lemma steps until fewer than two singular points remain.
pub fn reduce(form: &FoliationForm, config: &ReducerConfig) -> Result<ReductionTranscript> {
    match reduce_partial(form, config) {
        (t, None) => Ok(t),
        (_, Some(e)) => Err(e),
    }
}

/// Like [`reduce`], but on failure also returns the steps completed so far.
/// When the input's own singular locus cannot be computed the transcript has
/// no records and no steps.
pub fn reduce_partial(
    form: &FoliationForm,
    config: &ReducerConfig,
) -> (ReductionTranscript, Option<Error>) {
    let mut t = ReductionTranscript {
        initial: form.clone(),
        initial_records: Vec::new(),
        steps: Vec::new(),
    };
    match singular_records(form) {
        Ok(r) => t.initial_records = r,
        Err(e) => return (t, Some(e)),
    }
    if form.degree() > config.degree_ceiling {
        let e = Error::DegreeCeiling {
            degree: form.degree(),
            ceiling: config.degree_ceiling,
        };
        return (t, Some(e));
    }
    let budget = distinct_count(&t.initial_records).saturating_sub(1);
    while distinct_count(t.final_records()) >= 2 {
        if t.steps.len() >= budget {
            let e = Error::Invariant(format!("no reduction after {budget} steps"));
            return (t, Some(e));
        }
        let result = select_line(t.final_records()).and_then(|line| {
            lemma_step_with(t.final_form(), t.final_records(), &line, config)
        });
        match result {
            Ok(step) => t.steps.push(step),
            Err(e) => return (t, Some(e)),
        }
    }
    (t, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::io::parse::{form, lambda_family};

    fn pt(v: [i64; 3]) -> ProjectivePoint {
        ProjectivePoint::from_ints(v).unwrap()
    }

    #[test]
    fn line_policy() {
        let f = lambda_family(&rat(2)).unwrap();
        let recs = singular_records(&f).unwrap();
        assert_eq!(select_line(&recs).unwrap(), ProjectiveLine::coordinate(2));
        let pencil = singular_records(&form("y dx - x dy")).unwrap();
        assert!(matches!(select_line(&pencil), Err(Error::Precondition(_))));
    }

    #[test]
    fn base_points_on_invariant_lines() {
        let f = lambda_family(&rat(2)).unwrap();
        let recs = singular_records(&f).unwrap();
        let y0 = ProjectiveLine::coordinate(1);
        assert_eq!(select_base_point(&f, &y0, &recs).unwrap(), pt([1, 0, 1]));
        let z0 = ProjectiveLine::coordinate(2);
        assert_eq!(select_base_point(&f, &z0, &recs).unwrap(), pt([1, 1, 0]));
    }

    #[test]
    fn base_point_avoids_tangency() {
        // x + y + z = 0 is not invariant for the λ-example
        let f = lambda_family(&rat(2)).unwrap();
        let recs = singular_records(&f).unwrap();
        let l = ProjectiveLine::from_ints([1, 1, 1]).unwrap();
        let p = select_base_point(&f, &l, &recs).unwrap();
        let framed = f.pullback_matrix(frame_for(&l, &p).unwrap().matrix()).unwrap();
        assert!(!pt([0, 1, 0]).eval(framed.a()).is_zero());
    }

    #[test]
    fn lemma_counts_on_the_example() {
        let f = lambda_family(&rat(2)).unwrap();
        let step = lemma_step(&f, &ProjectiveLine::coordinate(1)).unwrap();
        assert_eq!(distinct_count(&step.records), 2);
        assert_eq!(count_on_line(&ProjectiveLine::coordinate(2), &step.records), 1);
        assert!(step.line_invariant);
        assert_eq!(step.form.degree(), 2 * f.degree() + 1);
        let line = select_line(&step.records).unwrap();
        let next = lemma_step(&step.form, &line).unwrap();
        assert_eq!(distinct_count(&next.records), 1);
    }

    #[test]
    fn single_point_is_a_precondition_error() {
        let f = form("y dx - x dy");
        assert!(matches!(
            lemma_step(&f, &ProjectiveLine::coordinate(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduce_the_example_and_the_pencil() {
        for l in [2, 3] {
            let f = lambda_family(&rat(l)).unwrap();
            let t = reduce(&f, &ReducerConfig::default()).unwrap();
            assert_eq!(t.steps.len(), 2);
            assert_eq!(t.final_count(), 1);
            assert_eq!(&t.replay().unwrap(), t.final_form());
        }
        let t = reduce(&form("y dx - x dy"), &ReducerConfig::default()).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.final_count(), 1);
    }

    #[test]
    fn degree_ceiling_aborts_with_partial_transcript() {
        let f = lambda_family(&rat(2)).unwrap();
        let (t, err) = reduce_partial(&f, &ReducerConfig { degree_ceiling: 3 });
        assert!(matches!(err, Some(Error::DegreeCeiling { .. })));
        assert!(t.steps.len() < 2);
    }
}
