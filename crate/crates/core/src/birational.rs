//! Linear frames and quadratic involutions of the plane, and pullback of
//! foliations along them.

use std::fmt;

use crate::algebra::linalg::{det3, inverse3, mul_vec3, transpose3, Mat3};
use crate::algebra::{MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::foliation::FoliationForm;
use crate::geometry::{ProjectiveLine, ProjectivePoint};

/// An invertible change of coordinates `x = M w`, with `M` scaled so its
/// first nonzero entry (row by row) is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearFrame {
    matrix: Mat3,
}

impl LinearFrame {
    pub fn new(matrix: Mat3) -> Result<Self> {
        if det3(&matrix).is_zero() {
            return Err(Error::SingularMatrix(render_matrix(&matrix)));
        }
        let first = matrix.iter().flatten().find(|c| !c.is_zero()).unwrap();
        let inv = first.inv().unwrap();
        Ok(LinearFrame {
            matrix: matrix.map(|row| row.map(|c| &c * &inv)),
        })
    }

    pub fn identity() -> Self {
        LinearFrame::from_columns([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    fn from_columns(cols: [[i64; 3]; 3]) -> Self {
        let m: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| Scalar::from_int(cols[j][i])));
        LinearFrame::new(m).expect("independent columns")
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearFrame::identity()
    }

    pub fn inverse(&self) -> LinearFrame {
        LinearFrame::new(inverse3(&self.matrix).expect("frames are invertible")).unwrap()
    }

    /// The point with new coordinates `w`, in old coordinates `M w`.
    pub fn to_old(&self, w: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(mul_vec3(&self.matrix, w.coords())).expect("invertible")
    }

    /// New coordinates `M⁻¹ x` of an old point.
    pub fn to_new(&self, x: &ProjectivePoint) -> ProjectivePoint {
        self.inverse().to_old(x)
    }

    /// The line `ℓ(M w) = 0` in new coordinates.
    pub fn line_to_new(&self, line: &ProjectiveLine) -> ProjectiveLine {
        ProjectiveLine::new(mul_vec3(&transpose3(&self.matrix), line.coeffs())).expect("invertible")
    }

    /// Linear forms `x_i = Σ_j M_ij w_j`.
    fn images(&self) -> [MultiPoly; 3] {
        std::array::from_fn(|i| {
            let mut acc = MultiPoly::zero(3);
            for (j, c) in self.matrix[i].iter().enumerate() {
                acc = &acc + &MultiPoly::var(3, j).scale(c);
            }
            acc
        })
    }
}

/// Frame sending `line` to `z = 0` and `p` to `(0:1:0)`.
///
/// The columns of `M` are the first canonical point of the line other than
/// `p`, then `p`, then the first canonical point off the line.
pub fn frame_for(line: &ProjectiveLine, p: &ProjectivePoint) -> Result<LinearFrame> {
    if !line.contains(p) {
        return Err(Error::PointNotOnLine {
            point: p.to_string(),
            line: line.to_string(),
        });
    }
    let pv: [Scalar; 3] = match p.integer_coords() {
        Some(ints) => ints.map(|v| Scalar::from(crate::algebra::Rational::from_integer(v))),
        None => p.coords().clone(),
    };
    let q = line
        .canonical_points(2)?
        .into_iter()
        .map(|v| v.map(Scalar::from_int))
        .find(|v| ProjectivePoint::new(v.clone()).map(|q| q != *p).unwrap_or(false))
        .expect("a line has two canonical points");
    let r = line.first_point_off().map(Scalar::from_int);
    let cols = [q, pv, r];
    let m: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
    LinearFrame::new(m)
}

/// `M*ω` for the frame `x = M w`; degree and singular data are carried along
/// by `M⁻¹`.
pub fn pullback_linear(form: &FoliationForm, frame: &LinearFrame) -> Result<FoliationForm> {
    form.pullback_matrix(&frame.matrix)
}

/// The named quadratic involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinMap {
    /// `(xz : -yz + x² : z²)`
    Phi,
    /// `(xy : y² : x² - yz)`
    I1,
    /// `(x² : -xy + z² : xz)`
    I2,
}

impl BuiltinMap {
    pub const ALL: [BuiltinMap; 3] = [BuiltinMap::Phi, BuiltinMap::I1, BuiltinMap::I2];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinMap::Phi => "phi",
            BuiltinMap::I1 => "I1",
            BuiltinMap::I2 => "I2",
        }
    }

    pub fn from_name(name: &str) -> Option<BuiltinMap> {
        BuiltinMap::ALL.into_iter().find(|m| m.name().eq_ignore_ascii_case(name))
    }
}

/// A quadratic map `(P : Q : R)` with its indeterminacy point, contracted
/// line and the point that line is sent to.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticMap {
    label: String,
    components: [MultiPoly; 3],
    indeterminacy: ProjectivePoint,
    contracted: ProjectiveLine,
    image: ProjectivePoint,
}

impl QuadraticMap {
    pub fn builtin(which: BuiltinMap) -> QuadraticMap {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let (components, ind, line, image) = match which {
            BuiltinMap::Phi => ([&x * &z, &(&x * &x) - &(&y * &z), &z * &z], [0, 1, 0], 2, [0, 1, 0]),
            BuiltinMap::I1 => ([&x * &y, &y * &y, &(&x * &x) - &(&y * &z)], [0, 0, 1], 1, [0, 0, 1]),
            BuiltinMap::I2 => ([&x * &x, &(&z * &z) - &(&x * &y), &x * &z], [0, 1, 0], 0, [0, 1, 0]),
        };
        QuadraticMap {
            label: which.name().to_string(),
            components,
            indeterminacy: ProjectivePoint::from_ints(ind).unwrap(),
            contracted: ProjectiveLine::coordinate(line),
            image: ProjectivePoint::from_ints(image).unwrap(),
        }
    }

    /// The three built-in involutions.
    pub fn builtins() -> [QuadraticMap; 3] {
        BuiltinMap::ALL.map(QuadraticMap::builtin)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[MultiPoly; 3] {
        &self.components
    }

    pub fn indeterminacy(&self) -> &ProjectivePoint {
        &self.indeterminacy
    }

    pub fn contracted_line(&self) -> &ProjectiveLine {
        &self.contracted
    }

    /// Where the contracted line goes.
    pub fn contracted_image(&self) -> &ProjectivePoint {
        &self.image
    }

    /// The image of `p`; fails at the indeterminacy point.
    pub fn apply(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let v = self.components.clone().map(|c| p.eval(&c));
        ProjectivePoint::new(v).map_err(|_| Error::InvalidPoint(format!("{p} is indeterminate for {}", self.label)))
    }

    /// Components of `self ∘ other`.
    pub fn compose(&self, other: &QuadraticMap) -> Result<[MultiPoly; 3]> {
        let mut out = Vec::with_capacity(3);
        for c in &self.components {
            out.push(c.substitute(&other.components)?);
        }
        Ok(out.try_into().unwrap())
    }

    /// The cubic `s` with `self ∘ self = s · id`, if the map is an involution.
    pub fn involution_factor(&self) -> Result<Option<MultiPoly>> {
        let sq = self.compose(self)?;
        let x = MultiPoly::var(3, 0);
        let Some(s) = sq[0].div_exact(&x) else {
            return Ok(None);
        };
        let ok = (0..3).all(|i| sq[i] == &s * &MultiPoly::var(3, i));
        Ok(if ok && !s.is_zero() { Some(s) } else { None })
    }

    /// The same map seen through the frame `x = M w`, i.e.
    /// `w ↦ M⁻¹ S(M w)`.
    pub fn conjugate(&self, frame: &LinearFrame) -> Result<QuadraticMap> {
        let inv = frame.inverse();
        let images = frame.images();
        let mut inner = Vec::with_capacity(3);
        for c in &self.components {
            inner.push(c.substitute(&images)?);
        }
        let components: [MultiPoly; 3] = std::array::from_fn(|i| {
            let mut acc = MultiPoly::zero(3);
            for (j, p) in inner.iter().enumerate() {
                acc = &acc + &p.scale(&inv.matrix[i][j]);
            }
            acc
        });
        let content = MultiPoly::joint_content(&components.iter().collect::<Vec<_>>());
        let s = Scalar::from(content).inv().unwrap();
        Ok(QuadraticMap {
            label: format!("{} in frame [{}]", self.label, render_matrix(&frame.matrix)),
            components: components.map(|c| c.scale(&s)),
            indeterminacy: frame.to_new(&self.indeterminacy),
            contracted: frame.line_to_new(&self.contracted),
            image: frame.to_new(&self.image),
        })
    }

    /// Whether the two maps agree up to a nonzero scalar.
    pub fn same_map(&self, other: &QuadraticMap) -> bool {
        same_triple(&self.components, &other.components)
    }
}

fn same_triple(a: &[MultiPoly; 3], b: &[MultiPoly; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
        && a.iter().zip(b).all(|(p, q)| p.is_zero() == q.is_zero())
}

/// `S*ω`: coefficient `j` is `Σ_i a_i(S) ∂S_i/∂x_j`, divided by the gcd of
/// the three. Returns the normalized form and the removed factor.
pub fn pullback_quadratic(form: &FoliationForm, map: &QuadraticMap) -> Result<(FoliationForm, MultiPoly)> {
    let subs: Vec<MultiPoly> = form
        .coeffs()
        .iter()
        .map(|a| a.substitute(&map.components))
        .collect::<Result<_>>()?;
    let raw: [MultiPoly; 3] = std::array::from_fn(|j| {
        let mut acc = MultiPoly::zero(3);
        for (a, s) in subs.iter().zip(&map.components) {
            acc = &acc + &(a * &s.partial(j));
        }
        acc
    });
    if raw.iter().all(MultiPoly::is_zero) {
        return Err(Error::Invariant(format!("pullback by {} vanished", map.label)));
    }
    let [a, b, c] = raw;
    FoliationForm::with_factor(a, b, c).map_err(|e| match e {
        Error::EulerFailure { residual, .. } => {
            Error::Invariant(format!("Euler identity lost under {}: {residual}", map.label))
        }
        other => other,
    })
}

/// One recorded map of a reduction, with the factor removed after pulling
/// back along it.
#[derive(Clone, PartialEq, Eq)]
pub enum StepMap {
    Frame(LinearFrame),
    Quadratic(QuadraticMap),
}

#[derive(Clone, PartialEq, Eq)]
pub struct BirationalStep {
    pub map: StepMap,
    pub extracted_factor: MultiPoly,
}

impl BirationalStep {
    pub fn kind(&self) -> &str {
        match &self.map {
            StepMap::Frame(_) => "frame",
            StepMap::Quadratic(q) => q.label(),
        }
    }

    pub fn contracted_line(&self) -> Option<&ProjectiveLine> {
        match &self.map {
            StepMap::Frame(_) => None,
            StepMap::Quadratic(q) => Some(q.contracted_line()),
        }
    }

    /// Pulls `form` back along this step and records the removed factor.
    pub fn record(form: &FoliationForm, map: StepMap) -> Result<(BirationalStep, FoliationForm)> {
        let (out, factor) = match &map {
            StepMap::Frame(f) => (pullback_linear(form, f)?, MultiPoly::one(3)),
            StepMap::Quadratic(q) => pullback_quadratic(form, q)?,
        };
        Ok((
            BirationalStep {
                map,
                extracted_factor: factor,
            },
            out,
        ))
    }

    /// Replays the step, checking the removed factor against the record.
    pub fn apply(&self, form: &FoliationForm) -> Result<FoliationForm> {
        let (step, out) = BirationalStep::record(form, self.map.clone())?;
        if !same_up_to_scalar(&step.extracted_factor, &self.extracted_factor) {
            return Err(Error::Invariant(format!(
                "replayed factor {} differs from recorded {}",
                step.extracted_factor, self.extracted_factor
            )));
        }
        Ok(out)
    }

    /// Image of a point of the output's plane in the input's plane.
    pub fn point_to_input(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        match &self.map {
            StepMap::Frame(f) => Ok(f.to_old(p)),
            StepMap::Quadratic(q) => q.apply(p),
        }
    }
}

fn same_up_to_scalar(a: &MultiPoly, b: &MultiPoly) -> bool {
    match (a.leading_coeff(), b.leading_coeff()) {
        (Some(ca), Some(cb)) => a.scale(cb) == b.scale(ca),
        (None, None) => true,
        _ => false,
    }
}

pub fn render_matrix(m: &Mat3) -> String {
    m.iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("; ")
}

impl fmt::Display for LinearFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_matrix(&self.matrix))
    }
}

impl fmt::Debug for LinearFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadraticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r] = &self.components;
        write!(f, "({p} : {q} : {r})")
    }
}

impl fmt::Debug for QuadraticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self)
    }
}

impl fmt::Debug for BirationalStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.map {
            StepMap::Frame(m) => write!(f, "frame [{m}]"),
            StepMap::Quadratic(q) => write!(f, "{q:?}, factor {}", self.extracted_factor),
        }
    }
}
