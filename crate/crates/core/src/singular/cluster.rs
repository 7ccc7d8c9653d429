//! Galois-stable clusters of conjugate singular points.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::linalg::{rank, row_reduce};
use crate::algebra::{qpoly, NumberField, Rational, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{ProjectiveLine, ProjectivePoint};

/// The conjugates of one algebraic point, written canonically.
///
/// Let `j` be the last nonzero coordinate of the members and `(u, v)` the
/// other two coordinates in order. The generator `θ = u + shift·v`, with the
/// first `shift` in `0, 1, -1, 2, …` that separates the conjugates, has an
/// irreducible minimal polynomial `p`; each coordinate is stored as a
/// polynomial in `θ` of degree below `deg p`. The representation depends only
/// on the set of points.
#[derive(Clone, PartialEq, Eq)]
pub struct PointCluster {
    chart: usize,
    shift: i64,
    minpoly: Vec<Rational>,
    coords: [Vec<Rational>; 3],
    field: NumberField,
}

impl PointCluster {
    /// The cluster of conjugates of `member`, a point over a number field
    /// whose coordinates generate an extension of degree at least two.
    pub fn from_member(member: &ProjectivePoint) -> Result<PointCluster> {
        let field = member
            .coords()
            .iter()
            .find_map(Scalar::field)
            .cloned()
            .ok_or_else(|| Error::InvalidPoint(format!("{member} is rational")))?;
        if member.is_rational() {
            return Err(Error::InvalidPoint(format!("{member} is rational")));
        }
        let chart = member.chart();
        let [iu, iv] = others(chart);
        let u = &member.coords()[iu];
        let v = &member.coords()[iv];
        let n = field.degree();
        for shift in shifts().take(2 * n * n + 3) {
            let theta = u + &(v * &Scalar::from_int(shift));
            let mut powers = vec![Scalar::one()];
            for _ in 0..n {
                let next = &powers[powers.len() - 1] * &theta;
                powers.push(next);
            }
            let vecs: Vec<Vec<Scalar>> = powers
                .iter()
                .map(|p| p.coeffs_in(&field).into_iter().map(Scalar::from).collect())
                .collect();
            // degree of θ over ℚ is the rank of its first n powers
            let d = rank(&vecs[..n]);
            if d < 2 {
                continue;
            }
            // columns θ^0..θ^(d-1), solve in a d-dimensional subspace
            let basis = &vecs[..d];
            let express = |target: &[Scalar]| -> Option<Vec<Rational>> {
                let sol = solve_in_span(basis, target)?;
                Some(sol.into_iter().map(|s| s.as_rational().unwrap().clone()).collect())
            };
            let Some(top) = express(&vecs[d]) else {
                return Err(Error::Invariant("power of a generator outside its span".into()));
            };
            let coord_vecs: Vec<Vec<Scalar>> = member
                .coords()
                .iter()
                .map(|c| c.coeffs_in(&field).into_iter().map(Scalar::from).collect())
                .collect();
            let Some(cu) = express(&coord_vecs[iu]) else {
                continue;
            };
            let Some(cv) = express(&coord_vecs[iv]) else {
                continue;
            };
            let mut minpoly: Vec<Rational> = top.iter().map(|c| -c).collect();
            minpoly.push(Rational::one());
            let mut coords: [Vec<Rational>; 3] = Default::default();
            coords[chart] = vec![Rational::one()];
            coords[iu] = qpoly::trim(cu);
            coords[iv] = qpoly::trim(cv);
            let field = NumberField::new_unchecked(minpoly.clone());
            return Ok(PointCluster {
                chart,
                shift,
                minpoly,
                coords,
                field,
            });
        }
        Err(Error::Invariant(format!("no primitive element found for {member}")))
    }

    /// Number of conjugate points.
    /// The minimal polynomial in `t`, e.g. `t^2 - 2`.
    pub fn minpoly_text(&self) -> String {
        qpoly::render(&self.minpoly, "t")
    }

    /// The parametrized point, e.g. `(t:1:0)`.
    pub fn point_text(&self) -> String {
        let c = self.coords.clone().map(|p| {
            if p.is_empty() {
                "0".to_string()
            } else {
                qpoly::render(&p, "t")
            }
        });
        format!("({}:{}:{})", c[0], c[1], c[2])
    }

    pub fn size(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Ascending coefficients of the minimal polynomial of the generator.
    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    /// Ascending coefficients of each coordinate as a polynomial in the
    /// generator.
    pub fn coord_polys(&self) -> &[Vec<Rational>; 3] {
        &self.coords
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// The member at the generator of [`PointCluster::field`].
    pub fn member(&self) -> ProjectivePoint {
        let coords = self.coords.clone().map(|c| self.field.element(c));
        ProjectivePoint::new(coords).expect("nonzero member")
    }

    /// Whether `p` is one of the conjugates.
    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        if p.chart() != self.chart {
            return false;
        }
        let [iu, iv] = others(self.chart);
        let theta = &p.coords()[iu] + &(&p.coords()[iv] * &Scalar::from_int(self.shift));
        if !theta.compatible(&p.coords()[iu]) {
            return false;
        }
        if !eval_rational_poly(&self.minpoly, &theta).is_zero() {
            return false;
        }
        (0..3).all(|i| eval_rational_poly(&self.coords[i], &theta) == p.coords()[i])
    }

    /// The rational line containing every conjugate, if there is one.
    pub fn rational_line(&self) -> Option<ProjectiveLine> {
        let n = self.size();
        // rows: powers of θ; columns: coordinates
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|k| {
                (0..3)
                    .map(|i| Scalar::from(self.coords[i].get(k).cloned().unwrap_or_else(Rational::zero)))
                    .collect()
            })
            .collect();
        let pivots = row_reduce(&mut rows);
        if pivots.len() != 2 {
            return None;
        }
        let free = (0..3).find(|c| !pivots.contains(c)).unwrap();
        let mut l = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        l[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            l[p] = -&rows[r][free];
        }
        ProjectiveLine::new(l).ok()
    }
}

fn others(chart: usize) -> [usize; 2] {
    match chart {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

fn eval_rational_poly(p: &[Rational], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + &Scalar::from(c.clone());
    }
    acc
}

/// Coefficients expressing `target` in the span of `basis` (row vectors),
/// `None` if it lies outside.
fn solve_in_span(basis: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let d = basis.len();
    let n = target.len();
    // unknowns c_0..c_{d-1}: Σ c_i basis[i][k] = target[k] for every k
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut r: Vec<Scalar> = basis.iter().map(|b| b[k].clone()).collect();
            r.push(target[k].clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.contains(&d) || pivots.len() != d {
        return None;
    }
    let mut sol = vec![Scalar::zero(); d];
    for (r, &p) in pivots.iter().enumerate() {
        sol[p] = rows[r][d].clone();
    }
    Some(sol)
}

impl fmt::Display for PointCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "minpoly {}; point {}", self.minpoly_text(), self.point_text())
    }
}

impl fmt::Debug for PointCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{extend_field, rat, MultiPoly};

    fn sqrt2() -> (NumberField, Scalar) {
        let t = MultiPoly::var(1, 0);
        let k = extend_field(&(&t.pow(2) - &MultiPoly::constant(1, Scalar::from_int(2)))).unwrap();
        let a = k.generator();
        (k, a)
    }

    #[test]
    fn canonical_form_ignores_the_chosen_conjugate() {
        let (_, a) = sqrt2();
        // (√2 : 1 + √2 : 1) and its conjugate give the same cluster
        let p = ProjectivePoint::new([a.clone(), &Scalar::one() + &a, Scalar::one()]).unwrap();
        let q = ProjectivePoint::new([-&a, &Scalar::one() - &a, Scalar::one()]).unwrap();
        let cp = PointCluster::from_member(&p).unwrap();
        let cq = PointCluster::from_member(&q).unwrap();
        assert_eq!(cp, cq);
        assert_eq!(cp.size(), 2);
        assert!(cp.contains(&p) && cp.contains(&q));
        assert!(cp.contains(&cp.member()));
        assert_eq!(cp.to_string(), "minpoly t^2 - 2; point (t:t + 1:1)");
    }

    #[test]
    fn shift_used_when_first_coordinate_is_rational() {
        let (_, a) = sqrt2();
        let p = ProjectivePoint::new([Scalar::from_int(3), a, Scalar::one()]).unwrap();
        let c = PointCluster::from_member(&p).unwrap();
        assert!(c.contains(&p));
        assert_eq!(c.coord_polys()[2], vec![rat(1)]);
    }

    #[test]
    fn rational_line_of_a_pair() {
        let (_, a) = sqrt2();
        // (√2 : 1 : 1) and (-√2 : 1 : 1) lie on y = z
        let p = ProjectivePoint::new([a, Scalar::one(), Scalar::one()]).unwrap();
        let c = PointCluster::from_member(&p).unwrap();
        assert_eq!(c.rational_line().unwrap(), ProjectiveLine::from_ints([0, 1, -1]).unwrap());
    }
}
