//! Foliations of the projective plane as homogeneous 1-forms
//! `a dx + b dy + c dz` with `ax + by + cz = 0`.

use std::fmt;

use crate::algebra::linalg::Mat3;
use crate::algebra::{gcd_list, MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::geometry::ProjectiveLine;

/// A validated, gcd-free 1-form of degree `N` (coefficients of degree `N+1`).
#[derive(Clone)]
pub struct FoliationForm {
    coeffs: [MultiPoly; 3],
    degree: u32,
}

impl FoliationForm {
    /// Validates the triple, checks the Euler identity and divides out the
    /// common factor of the coefficients.
    pub fn new(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> Result<Self> {
        Self::with_factor(a, b, c).map(|(f, _)| f)
    }

    /// Like [`FoliationForm::new`], also returning the removed common factor
    /// (normalized, `1` when there was none).
    pub fn with_factor(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> Result<(Self, MultiPoly)> {
        let coeffs = [a, b, c];
        for p in &coeffs {
            if p.nvars() != 3 {
                return Err(Error::ArityMismatch {
                    expected: 3,
                    found: p.nvars(),
                });
            }
            if !p.is_rational() {
                return Err(Error::NonRationalForm);
            }
        }
        if coeffs.iter().all(MultiPoly::is_zero) {
            return Err(Error::ZeroForm);
        }
        let mut degree = None;
        for (p, name) in coeffs.iter().zip(["dx", "dy", "dz"]) {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("{name} coefficient {p}")));
            }
            let d = p.total_degree().unwrap();
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Inhomogeneous(format!(
                        "{name} coefficient has degree {d}, expected {e}"
                    )))
                }
                _ => {}
            }
        }
        let residual = euler_residual(&coeffs);
        if !residual.is_zero() {
            return Err(Error::EulerFailure {
                residual: residual.to_string(),
                note: String::new(),
            });
        }
        let g = gcd_list(&coeffs);
        let coeffs = if g.is_constant() {
            coeffs
        } else {
            coeffs.map(|p| p.div_exact(&g).expect("gcd divides"))
        };
        let d = coeffs
            .iter()
            .find_map(MultiPoly::total_degree)
            .expect("nonzero form");
        if d == 0 {
            return Err(Error::Invariant("constant coefficients cannot satisfy Euler".into()));
        }
        Ok((
            FoliationForm {
                coeffs,
                degree: d - 1,
            },
            g,
        ))
    }

    pub fn a(&self) -> &MultiPoly {
        &self.coeffs[0]
    }

    pub fn b(&self) -> &MultiPoly {
        &self.coeffs[1]
    }

    pub fn c(&self) -> &MultiPoly {
        &self.coeffs[2]
    }

    pub fn coeffs(&self) -> &[MultiPoly; 3] {
        &self.coeffs
    }

    /// The degree `N` of the foliation.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn euler_residual(&self) -> MultiPoly {
        euler_residual(&self.coeffs)
    }

    /// The representative whose first nonzero coefficient has leading
    /// coefficient 1.
    pub fn normalized(&self) -> FoliationForm {
        let lead = self
            .coeffs
            .iter()
            .find_map(MultiPoly::leading_coeff)
            .expect("nonzero form")
            .clone();
        let inv = lead.inv().unwrap();
        FoliationForm {
            coeffs: self.coeffs.clone().map(|p| p.scale(&inv)),
            degree: self.degree,
        }
    }

    /// The representative with jointly integer-primitive coefficients and a
    /// positive leading coefficient on the first nonzero one.
    pub fn primitive(&self) -> FoliationForm {
        let s = MultiPoly::joint_content(&[&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]]);
        let inv = Scalar::from(s).inv().unwrap();
        FoliationForm {
            coeffs: self.coeffs.clone().map(|p| p.scale(&inv)),
            degree: self.degree,
        }
    }

    /// Whether the two forms agree up to a nonzero scalar.
    pub fn same_foliation(&self, other: &FoliationForm) -> bool {
        self == other
    }

    /// `E du + F dv` in the chart where coordinate `chart` equals 1; `(u, v)`
    /// are the two remaining coordinates in order.
    pub fn affine_chart(&self, chart: usize) -> AffineChartForm {
        assert!(chart < 3, "chart index out of range");
        let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let restrict = |p: &MultiPoly| {
            let q = p.set_var(chart, &Scalar::one()).remove_var(chart);
            debug_assert_eq!(q.nvars(), 2);
            q
        };
        let e = restrict(&self.coeffs[others[0]]);
        let f = restrict(&self.coeffs[others[1]]);
        let s = MultiPoly::joint_content(&[&e, &f]);
        let inv = Scalar::from(s).inv().unwrap();
        AffineChartForm {
            chart,
            e: e.scale(&inv),
            f: f.scale(&inv),
        }
    }

    /// Pullback by the linear map `x = M w`: the new coefficient vector is
    /// `Mᵀ a(M w)`.
    pub fn pullback_matrix(&self, m: &Mat3) -> Result<FoliationForm> {
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| {
                let mut acc = MultiPoly::zero(3);
                for (j, c) in m[i].iter().enumerate() {
                    acc = &acc + &MultiPoly::var(3, j).scale(c);
                }
                acc
            })
            .collect();
        let subs: Vec<MultiPoly> = self
            .coeffs
            .iter()
            .map(|p| p.substitute(&images))
            .collect::<Result<_>>()?;
        let new: [MultiPoly; 3] = std::array::from_fn(|j| {
            let mut acc = MultiPoly::zero(3);
            for (i, s) in subs.iter().enumerate() {
                acc = &acc + &s.scale(&m[i][j]);
            }
            acc
        });
        let [a, b, c] = new;
        FoliationForm::new(a, b, c).map_err(|e| match e {
            Error::EulerFailure { residual, .. } => {
                Error::Invariant(format!("Euler identity lost under a linear pullback: {residual}"))
            }
            other => other,
        })
    }

    /// Restriction of the form to a rational line. See [`LineRestriction`].
    pub fn restrict_to_line(&self, line: &ProjectiveLine) -> Result<LineRestriction> {
        let pts = line.canonical_points(2)?;
        let (p0, p1) = (pts[0], pts[1]);
        let off = line.first_point_off();
        // x = s*p0 + t*p1 in variables (s, t)
        let images: Vec<MultiPoly> = (0..3)
            .map(|i| {
                &MultiPoly::var(2, 0).scale(&Scalar::from_int(p0[i]))
                    + &MultiPoly::var(2, 1).scale(&Scalar::from_int(p1[i]))
            })
            .collect();
        let on_line: Vec<MultiPoly> = self
            .coeffs
            .iter()
            .map(|p| p.substitute(&images))
            .collect::<Result<_>>()?;
        let dot = |v: [i64; 3]| {
            let mut acc = MultiPoly::zero(2);
            for (p, c) in on_line.iter().zip(v) {
                acc = &acc + &p.scale(&Scalar::from_int(c));
            }
            acc
        };
        Ok(LineRestriction {
            line: line.clone(),
            p0,
            p1,
            off,
            ds: dot(p0),
            dt: dot(p1),
            normal: dot(off),
        })
    }

    /// Whether the line is a union of leaves and singular points.
    ///
    /// Decided by moving the line to `z = 0` with a frame and testing that
    /// `z` divides the new `dx` and `dy` coefficients.
    pub fn is_line_invariant(&self, line: &ProjectiveLine) -> Result<bool> {
        let pts = line.canonical_points(2)?;
        let off = line.first_point_off();
        let cols = [pts[0], pts[1], off];
        let m: Mat3 =
            std::array::from_fn(|i| std::array::from_fn(|j| Scalar::from_int(cols[j][i])));
        let framed = self.pullback_matrix(&m)?;
        let z = MultiPoly::var(3, 2);
        Ok(framed.coeffs[..2]
            .iter()
            .all(|p| p.div_exact(&z).is_some()))
    }
}

fn euler_residual(c: &[MultiPoly; 3]) -> MultiPoly {
    let mut acc = MultiPoly::zero(3);
    for (i, p) in c.iter().enumerate() {
        acc = &acc + &(p * &MultiPoly::var(3, i));
    }
    acc
}

impl PartialEq for FoliationForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.normalized().coeffs == other.normalized().coeffs
    }
}

impl Eq for FoliationForm {}

impl fmt::Display for FoliationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "({a}) dx + ({b}) dy + ({c}) dz")
    }
}

impl fmt::Debug for FoliationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `E du + F dv` in an affine chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineChartForm {
    /// The homogeneous coordinate set to 1.
    pub chart: usize,
    pub e: MultiPoly,
    pub f: MultiPoly,
}

impl AffineChartForm {
    /// Names of the chart coordinates `(u, v)`.
    pub fn names(&self) -> [&'static str; 2] {
        match self.chart {
            0 => ["y", "z"],
            1 => ["x", "z"],
            _ => ["x", "y"],
        }
    }
}

impl fmt::Display for AffineChartForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.names();
        write!(
            f,
            "({}) d{} + ({}) d{}",
            self.e.display_with(&n),
            n[0],
            self.f.display_with(&n),
            n[1]
        )
    }
}

/// A form restricted to a line parametrized as `s·p0 + t·p1`.
///
/// `ds` and `dt` are the coefficients of the pulled-back form on the line; by
/// the Euler identity `ds = t·q`, `dt = -s·q`, and both vanish exactly when
/// the line is invariant. `normal` is the coefficient of the differential of
/// the line's equation, in the frame `(p0, p1, off)`, along the line: for a
/// coordinate line `x_i = 0` it is the `dx_i` coefficient with `x_i = 0`.
#[derive(Clone, Debug)]
pub struct LineRestriction {
    pub line: ProjectiveLine,
    pub p0: [i64; 3],
    pub p1: [i64; 3],
    pub off: [i64; 3],
    pub ds: MultiPoly,
    pub dt: MultiPoly,
    pub normal: MultiPoly,
}

impl LineRestriction {
    pub fn is_zero(&self) -> bool {
        self.ds.is_zero() && self.dt.is_zero()
    }

    /// The induced form `q(t) dt` in the affine parameter `t` (with `s = 1`).
    pub fn induced(&self) -> MultiPoly {
        self.dt.set_var(0, &Scalar::one()).remove_var(0)
    }

    /// Names for the parameters: the line's own coordinates for coordinate
    /// lines, `s, t` otherwise.
    pub fn parameter_names(&self) -> [&'static str; 2] {
        match self.line.coordinate_index() {
            Some(0) => ["y", "z"],
            Some(1) => ["x", "z"],
            Some(2) => ["x", "y"],
            _ => ["s", "t"],
        }
    }

    /// The differential of the line's equation: `dx`, `dy`, `dz` for
    /// coordinate lines and `dl` otherwise.
    pub fn normal_differential(&self) -> &'static str {
        match self.line.coordinate_index() {
            Some(0) => "dx",
            Some(1) => "dy",
            Some(2) => "dz",
            _ => "dl",
        }
    }

    /// `normal` rendered as a 1-form, e.g. `-z^5 dx`.
    pub fn normal_text(&self) -> String {
        let n = self.parameter_names();
        let body = self.normal.display_with(&n).to_string();
        if self.normal.len() > 1 {
            format!("({body}) {}", self.normal_differential())
        } else {
            format!("{body} {}", self.normal_differential())
        }
    }

    /// The tangential part rendered as `(...) ds + (...) dt`.
    pub fn tangential_text(&self) -> String {
        let n = ["s", "t"];
        format!("({}) ds + ({}) dt", self.ds.display_with(&n), self.dt.display_with(&n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::io::parse::{form, lambda_family, poly};

    #[test]
    fn common_factor_is_removed() {
        let (f, g) = FoliationForm::with_factor(poly("y*z"), poly("-x*z"), poly("0")).unwrap();
        assert_eq!(g, poly("z"));
        assert_eq!(f.degree(), 0);
        assert_eq!(f, form("y dx - x dy"));
    }

    #[test]
    fn euler_failure() {
        let e = FoliationForm::new(poly("0"), poly("x"), poly("0")).unwrap_err();
        match e {
            Error::EulerFailure { residual, .. } => assert_eq!(residual, "x*y"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            FoliationForm::new(poly("0"), poly("0"), poly("0")),
            Err(Error::ZeroForm)
        ));
    }

    #[test]
    fn equality_up_to_scalar() {
        let f = form("y dx - x dy");
        let g = form("-3*y dx + 3*x dy");
        assert_eq!(f, g);
        assert_ne!(f, form("(x*y - z^2) dx + (y*z - x^2) dy + (x*z - y^2) dz").primitive());
    }

    #[test]
    fn charts_of_the_lambda_example() {
        let f = lambda_family(&rat(2)).unwrap();
        let z = f.affine_chart(2);
        assert_eq!((z.e.to_string(), z.f.to_string()), ("2*v".into(), "u".into()));
        assert_eq!(z.to_string(), "(2*y) dx + (x) dy");
        let x = f.affine_chart(0);
        assert_eq!((x.e.to_string(), x.f.to_string()), ("v".into(), "-3*u".into()));
        let pencil = form("y dx - x dy").affine_chart(2);
        assert_eq!((pencil.e.to_string(), pencil.f.to_string()), ("v".into(), "-u".into()));
    }

    #[test]
    fn invariant_lines_of_the_lambda_example() {
        let f = lambda_family(&rat(2)).unwrap();
        for i in 0..3 {
            let l = ProjectiveLine::coordinate(i);
            assert!(f.is_line_invariant(&l).unwrap());
            assert!(f.restrict_to_line(&l).unwrap().is_zero());
        }
        let diag = ProjectiveLine::from_ints([1, 1, 1]).unwrap();
        assert!(!f.is_line_invariant(&diag).unwrap());
        let r = f.restrict_to_line(&diag).unwrap();
        assert!(!r.is_zero());
        assert!(r.induced().total_degree().unwrap() <= f.degree() + 1);
    }

    #[test]
    fn pencil_lines_through_the_center_are_invariant() {
        let f = form("y dx - x dy");
        for c in [[1, 0, 0], [0, 1, 0], [1, 1, 0], [2, -5, 0]] {
            let l = ProjectiveLine::from_ints(c).unwrap();
            assert!(f.is_line_invariant(&l).unwrap());
        }
        assert!(!f.is_line_invariant(&ProjectiveLine::coordinate(2)).unwrap());
    }

    #[test]
    fn tangential_parts_satisfy_euler_on_the_line() {
        let f = form("(x*y - z^2) dx + (y*z - x^2) dy + (x*z - y^2) dz");
        let r = f.restrict_to_line(&ProjectiveLine::from_ints([1, 2, 3]).unwrap()).unwrap();
        let s = MultiPoly::var(2, 0);
        let t = MultiPoly::var(2, 1);
        assert!((&(&s * &r.ds) + &(&t * &r.dt)).is_zero());
    }

    #[test]
    fn display_round_trip() {
        let f = lambda_family(&rat(3)).unwrap();
        assert_eq!(form(&f.to_string()), f);
    }
}
