//! Exact computation of the common zeros of the coefficients of a form.

use super::cluster::PointCluster;
use super::SingularLocation;
use crate::algebra::{
    gcd_list, irreducible_factors, resultant, MultiPoly, NumberField, Rational, Scalar, UniPoly,
};
use crate::error::{Error, Result};
use crate::foliation::FoliationForm;
use crate::geometry::ProjectivePoint;

/// Singular points of `form`, rational points first in canonical order,
/// then clusters of conjugate points.
pub fn singular_locations(form: &FoliationForm) -> Result<Vec<SingularLocation>> {
    let mut points = Vec::new();
    let mut clusters = Vec::new();
    affine_zeros(form, &mut points, &mut clusters)?;
    line_at_infinity_zeros(form, &mut points, &mut clusters)?;
    for loc in points.iter().cloned().chain(clusters.iter().map(PointCluster::member)) {
        if !form.coeffs().iter().all(|c| loc.eval(c).is_zero()) {
            return Err(Error::Invariant(format!("{loc} is not a common zero")));
        }
    }
    points.sort();
    points.dedup();
    clusters.sort_by(|a, b| cluster_key(a).cmp(&cluster_key(b)));
    clusters.dedup();
    Ok(points
        .into_iter()
        .map(SingularLocation::Point)
        .chain(clusters.into_iter().map(SingularLocation::Cluster))
        .collect())
}

type ClusterKey = (usize, Vec<Rational>, [Vec<Rational>; 3]);

fn cluster_key(c: &PointCluster) -> ClusterKey {
    (c.size(), c.minpoly().to_vec(), c.coord_polys().clone())
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

/// Zeros with `z = 1`.
fn affine_zeros(
    form: &FoliationForm,
    points: &mut Vec<ProjectivePoint>,
    clusters: &mut Vec<PointCluster>,
) -> Result<()> {
    let chart = |p: &MultiPoly| p.set_var(2, &Scalar::one()).remove_var(2);
    let e = chart(form.a());
    let f = chart(form.b());
    // gcd(a, b) divides z, so e and f are coprime
    if e.is_zero() || f.is_zero() {
        let other = if e.is_zero() { &f } else { &e };
        if other.is_constant() && !other.is_zero() {
            return Ok(());
        }
        return Err(Error::Invariant("chart coefficients share a curve".into()));
    }
    if e.is_constant() || f.is_constant() {
        return Ok(());
    }
    let (de, df) = (e.total_degree().unwrap(), f.total_degree().unwrap());
    let e_top = e.homogeneous_part(de);
    let f_top = f.homogeneous_part(df);
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    'shift: for k in shifts() {
        let slope = [Scalar::from_int(-k), Scalar::one()];
        if e_top.eval(&slope).is_zero() && f_top.eval(&slope).is_zero() {
            continue;
        }
        // x = s - k y
        let images = [&x - &y.scale(&Scalar::from_int(k)), y.clone()];
        let ek = e.substitute(&images)?;
        let fk = f.substitute(&images)?;
        let res = resultant(&ek, &fk, 1)?;
        if res.is_zero() {
            return Err(Error::Invariant("chart coefficients share a curve".into()));
        }
        let res = UniPoly::from_multi(&res, 0);
        if res.degree() == Some(0) {
            return Ok(());
        }
        let mut found_points = Vec::new();
        let mut found_clusters = Vec::new();
        for p in irreducible_factors(&res)? {
            let s0 = if p.degree() == Some(1) {
                -&(&p.coeff(0) / &p.coeff(1))
            } else {
                let rats = p.to_rationals().unwrap();
                NumberField::new_unchecked(rats).generator()
            };
            let g = UniPoly::from_multi(&ek.set_var(0, &s0), 1)
                .gcd(&UniPoly::from_multi(&fk.set_var(0, &s0), 1))
                .squarefree_part();
            match g.degree() {
                Some(1) => {}
                Some(0) | None => {
                    return Err(Error::Invariant(format!(
                        "resultant root {s0} carries no common zero"
                    )))
                }
                _ => continue 'shift,
            }
            let y0 = -&(&g.coeff(0) / &g.coeff(1));
            let x0 = &s0 - &(&y0 * &Scalar::from_int(k));
            let pt = ProjectivePoint::new([x0, y0, Scalar::one()])?;
            if pt.is_rational() {
                found_points.push(pt);
            } else {
                found_clusters.push(PointCluster::from_member(&pt)?);
            }
        }
        points.extend(found_points);
        clusters.extend(found_clusters);
        return Ok(());
    }
    unreachable!("finitely many shifts fail")
}

/// Zeros with `z = 0`.
fn line_at_infinity_zeros(
    form: &FoliationForm,
    points: &mut Vec<ProjectivePoint>,
    clusters: &mut Vec<PointCluster>,
) -> Result<()> {
    let on_line: Vec<MultiPoly> = form
        .coeffs()
        .iter()
        .map(|p| p.set_var(2, &Scalar::zero()))
        .collect();
    let g = gcd_list(&on_line);
    if g.is_zero() {
        return Err(Error::Invariant("z divides every coefficient".into()));
    }
    if g.is_constant() {
        return Ok(());
    }
    let d = g.total_degree().unwrap();
    let h = UniPoly::from_multi(&g.set_var(1, &Scalar::one()), 0);
    if h.degree().unwrap_or(0) < d as usize {
        points.push(ProjectivePoint::from_ints([1, 0, 0])?);
    }
    if h.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    for p in irreducible_factors(&h)? {
        if p.degree() == Some(1) {
            let t = -&(&p.coeff(0) / &p.coeff(1));
            points.push(ProjectivePoint::new([t, Scalar::one(), Scalar::zero()])?);
        } else {
            let field = NumberField::new_unchecked(p.to_rationals().unwrap());
            let member = ProjectivePoint::new([field.generator(), Scalar::one(), Scalar::zero()])?;
            clusters.push(PointCluster::from_member(&member)?);
        }
    }
    Ok(())
}
