//! Replay of the diagonal family `λyz dx + xz dy − (1+λ)xy dz` through the
//! involutions `I1` then `I2`, with the expected singular sets at each stage.

use crate::algebra::{Monomial, MultiPoly, Rational, Scalar};
use crate::birational::{pullback_quadratic, BuiltinMap, QuadraticMap};
use crate::error::Result;
use crate::foliation::{FoliationForm, LineRestriction};
use crate::geometry::{ProjectiveLine, ProjectivePoint};
use crate::io::parse::{lambda_family, parse_form, Params};
use crate::singular::{darboux_check, singular_records, SingularRecord};

/// One foliation along the replay.
#[derive(Clone, Debug)]
pub struct Stage {
    pub label: &'static str,
    pub form: FoliationForm,
    pub factor: MultiPoly,
    pub records: Vec<SingularRecord>,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub lambda: Rational,
    pub stages: Vec<Stage>,
    pub restriction: LineRestriction,
    pub checks: Vec<Check>,
}

impl ExampleReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn params(lambda: &Rational) -> Params {
    let mut p = Params::new();
    p.insert("lambda".into(), lambda.clone());
    p
}

/// The form expected after pulling back by `I1`.
pub fn expected_after_first(lambda: &Rational) -> Result<FoliationForm> {
    parse_form(
        "-y*((2+lambda)*x^2 + lambda*y*z) dx + x*((2+lambda)*x^2 - y*z) dy + (1+lambda)*x*y^2 dz",
        &params(lambda),
    )
}

fn points(records: &[SingularRecord]) -> Vec<ProjectivePoint> {
    let mut v: Vec<ProjectivePoint> = records.iter().map(|r| r.location.member()).collect();
    v.sort();
    v
}

fn expect_points(records: &[SingularRecord], expected: &[[i64; 3]]) -> bool {
    let mut want: Vec<ProjectivePoint> = expected
        .iter()
        .map(|c| ProjectivePoint::from_ints(*c).unwrap())
        .collect();
    want.sort();
    points(records) == want
}

fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    match (a.leading_coeff(), b.leading_coeff()) {
        (Some(ca), Some(cb)) => a.scale(cb) == b.scale(ca),
        _ => false,
    }
}

/// Runs the replay for one value of `λ` and evaluates every check. Errors
/// only come from the underlying algebra; failed expectations are reported
/// in [`ExampleReport::checks`].
pub fn verify_example(lambda: &Rational) -> Result<ExampleReport> {
    let start = lambda_family(lambda)?;
    let mut stages = vec![Stage {
        label: "input",
        records: singular_records(&start)?,
        form: start,
        factor: MultiPoly::one(3),
    }];
    for (label, which) in [("after I1", BuiltinMap::I1), ("after I2", BuiltinMap::I2)] {
        let prev = &stages.last().unwrap().form;
        let (form, factor) = pullback_quadratic(prev, &QuadraticMap::builtin(which))?;
        stages.push(Stage {
            label,
            records: singular_records(&form)?,
            form,
            factor,
        });
    }
    let restriction = stages[2].form.restrict_to_line(&ProjectiveLine::coordinate(0))?;
    let one_minus = Scalar::from(Rational::from_integer(1.into()) - lambda);
    // the line x = 0 is parametrized by (y, z)
    let expected_normal = MultiPoly::monomial(2, Monomial::var(1, 5), one_minus);

    let mut checks = Vec::new();
    let mut check = |name: &str, ok: bool| checks.push(Check { name: name.to_string(), ok });
    check(
        "input: Sing = {(0:0:1), (1:0:0), (0:1:0)}",
        expect_points(&stages[0].records, &[[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    );
    check(
        "after I1: form matches the expected triple",
        stages[1].form == expected_after_first(lambda)?,
    );
    check(
        "after I1: Sing = {(0:0:1), (0:1:0)}",
        expect_points(&stages[1].records, &[[0, 0, 1], [0, 1, 0]]),
    );
    check(
        "after I2: Sing = {(0:1:0)}",
        expect_points(&stages[2].records, &[[0, 1, 0]]),
    );
    check(
        "after I2: restriction to x = 0 is (1 - lambda) z^5 dx up to scalar",
        !expected_normal.is_zero() && proportional(&restriction.normal, &expected_normal),
    );
    for s in &stages {
        let d = darboux_check(s.form.degree(), &s.records);
        checks.push(Check {
            name: format!("{}: Milnor numbers sum to {} (expected {})", s.label, d.sum, d.target),
            ok: d.ok(),
        });
    }
    Ok(ExampleReport {
        lambda: lambda.clone(),
        stages,
        restriction,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn lambda_two_and_three_pass() {
        for l in [2, 3] {
            let r = verify_example(&rat(l)).unwrap();
            for c in &r.checks {
                assert!(c.ok, "lambda {l}: {}", c.name);
            }
            let expected = MultiPoly::monomial(2, Monomial::var(1, 5), Scalar::from_int(1 - l));
            assert_eq!(r.restriction.normal, expected);
        }
    }

    #[test]
    fn lambda_one_degenerates() {
        let r = verify_example(&rat(1)).unwrap();
        assert!(!r.ok());
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
        assert!(failed.iter().any(|n| n.contains("restriction")), "{failed:?}");
    }
}
