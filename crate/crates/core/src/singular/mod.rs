//! Singular locus of a foliation and local Milnor numbers.

mod cluster;
mod milnor;
mod points;

use std::fmt;

use crate::algebra::{MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::foliation::FoliationForm;
use crate::geometry::ProjectivePoint;

pub use cluster::PointCluster;
pub use milnor::{
    intersection_multiplicity, intersection_multiplicity_bounded,
    intersection_multiplicity_by_projection, quotient_dimension,
    truncated_quotient_dimension,
};
pub use points::singular_locations;

/// One rational singular point or a cluster of conjugate ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularLocation {
    Point(ProjectivePoint),
    Cluster(PointCluster),
}

impl SingularLocation {
    /// Number of geometric points.
    pub fn size(&self) -> usize {
        match self {
            SingularLocation::Point(_) => 1,
            SingularLocation::Cluster(c) => c.size(),
        }
    }

    /// A representative point (over the cluster's field for clusters).
    pub fn member(&self) -> ProjectivePoint {
        match self {
            SingularLocation::Point(p) => p.clone(),
            SingularLocation::Cluster(c) => c.member(),
        }
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        match self {
            SingularLocation::Point(q) => q == p,
            SingularLocation::Cluster(c) => c.contains(p),
        }
    }
}

impl fmt::Display for SingularLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularLocation::Point(p) => write!(f, "{p}"),
            SingularLocation::Cluster(c) => write!(f, "{c}"),
        }
    }
}

/// A singular location with the Milnor number of each of its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularRecord {
    pub location: SingularLocation,
    pub mu: u32,
}

/// Milnor number of `form` at `p`, computed in the affine chart of the last
/// nonzero coordinate of `p`, as the order of a resultant under a generic
/// projection (see [`intersection_multiplicity_by_projection`]).
pub fn milnor_number(form: &FoliationForm, p: &ProjectivePoint) -> Result<u32> {
    if !form.coeffs().iter().all(|c| p.eval(c).is_zero()) {
        return Err(Error::NotSingular(p.to_string()));
    }
    let chart = form.affine_chart(p.chart());
    let [iu, iv] = match p.chart() {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    let shift = |var: usize, c: &Scalar| &MultiPoly::var(2, var) + &MultiPoly::constant(2, c.clone());
    let images = [shift(0, &p.coords()[iu]), shift(1, &p.coords()[iv])];
    let e = chart.e.substitute(&images)?;
    let f = chart.f.substitute(&images)?;
    intersection_multiplicity_by_projection(&e, &f)
}

/// Every singular location with its Milnor number.
pub fn singular_records(form: &FoliationForm) -> Result<Vec<SingularRecord>> {
    singular_locations(form)?
        .into_iter()
        .map(|location| {
            let mu = milnor_number(form, &location.member())?;
            Ok(SingularRecord { location, mu })
        })
        .collect()
}

/// Total Milnor number against the expected `N² + N + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DarbouxCheck {
    pub sum: u64,
    pub target: u64,
}

impl DarbouxCheck {
    pub fn ok(&self) -> bool {
        self.sum == self.target
    }
}

pub fn darboux_check(degree: u32, records: &[SingularRecord]) -> DarbouxCheck {
    let n = degree as u64;
    DarbouxCheck {
        sum: records.iter().map(|r| r.location.size() as u64 * r.mu as u64).sum(),
        target: n * n + n + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse::{form, lambda_family};
    use crate::algebra::rat;

    fn points(f: &FoliationForm) -> Vec<String> {
        singular_records(f)
            .unwrap()
            .iter()
            .map(|r| format!("{} mu={}", r.location, r.mu))
            .collect()
    }

    #[test]
    fn lambda_example_has_three_simple_points() {
        let f = lambda_family(&rat(2)).unwrap();
        assert_eq!(points(&f), ["(0:0:1) mu=1", "(0:1:0) mu=1", "(1:0:0) mu=1"]);
        let recs = singular_records(&f).unwrap();
        assert!(darboux_check(1, &recs).ok());
    }

    #[test]
    fn radial_pencil_has_one_point() {
        let f = form("y dx - x dy");
        assert_eq!(points(&f), ["(0:0:1) mu=1"]);
        assert!(darboux_check(0, &singular_records(&f).unwrap()).ok());
    }

    #[test]
    fn conjugate_points_form_a_cluster() {
        // eigenvectors of the linear field (2y, x, z)
        let f = form("(y*z - x*z) dx + (2*y*z - x*z) dy + (x^2 - 2*y^2) dz");
        assert_eq!(
            points(&f),
            ["(0:0:1) mu=1", "minpoly t^2 - 2; point (t:1:0) mu=1"]
        );
        assert!(darboux_check(1, &singular_records(&f).unwrap()).ok());
    }

    #[test]
    fn not_singular_is_rejected() {
        let f = form("y dx - x dy");
        let p = ProjectivePoint::from_ints([1, 0, 0]).unwrap();
        assert!(matches!(milnor_number(&f, &p), Err(Error::NotSingular(_))));
    }
}
