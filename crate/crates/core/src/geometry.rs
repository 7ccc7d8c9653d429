//! Points and lines of the projective plane.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{MultiPoly, Rational, Scalar};
use crate::error::{Error, Result};

/// A point `(x:y:z)`, scaled so its last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: [Scalar; 3],
}

impl ProjectivePoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        let Some(last) = coords.iter().rposition(|c| !c.is_zero()) else {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        };
        if coords.iter().any(|c| !c.compatible(&coords[last])) {
            return Err(Error::MixedFields);
        }
        let inv = coords[last].inv().unwrap();
        Ok(ProjectivePoint {
            coords: coords.map(|c| &c * &inv),
        })
    }

    pub fn from_ints(c: [i64; 3]) -> Result<Self> {
        ProjectivePoint::new(c.map(Scalar::from_int))
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        self.coords.iter().rposition(|c| !c.is_zero()).unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.as_rational().is_some())
    }

    /// Coprime integer representative with positive last nonzero entry.
    pub fn integer_coords(&self) -> Option<[BigInt; 3]> {
        let r: Vec<&Rational> = self
            .coords
            .iter()
            .map(Scalar::as_rational)
            .collect::<Option<_>>()?;
        let den = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = r
            .iter()
            .map(|q| (*q * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        Some(std::array::from_fn(|i| &ints[i] / &g))
    }

    /// Value of a homogeneous polynomial at this representative.
    pub fn eval(&self, p: &MultiPoly) -> Scalar {
        p.eval(&self.coords)
    }
}

impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            let o = a.canonical_cmp(b);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x}:{y}:{z})")
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A line `αx + βy + γz = 0`, scaled so its first nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectiveLine {
    coeffs: [Scalar; 3],
}

impl ProjectiveLine {
    pub fn new(coeffs: [Scalar; 3]) -> Result<Self> {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Err(Error::InvalidLine("all coefficients are zero".into()));
        };
        if coeffs.iter().any(|c| !c.compatible(&coeffs[first])) {
            return Err(Error::MixedFields);
        }
        let inv = coeffs[first].inv().unwrap();
        Ok(ProjectiveLine {
            coeffs: coeffs.map(|c| &c * &inv),
        })
    }

    pub fn from_ints(c: [i64; 3]) -> Result<Self> {
        ProjectiveLine::new(c.map(Scalar::from_int))
    }

    /// The coordinate line `x_i = 0`.
    pub fn coordinate(i: usize) -> Self {
        let mut c = [0; 3];
        c[i] = 1;
        ProjectiveLine::from_ints(c).unwrap()
    }

    /// The line through two distinct points.
    pub fn through(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<Self> {
        let [a, b, c] = p.coords();
        let [d, e, f] = q.coords();
        let cross = [
            &(b * f) - &(c * e),
            &(c * d) - &(a * f),
            &(a * e) - &(b * d),
        ];
        ProjectiveLine::new(cross)
            .map_err(|_| Error::InvalidLine(format!("{p} and {q} coincide")))
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    /// `Some(i)` if this is the coordinate line `x_i = 0`.
    pub fn coordinate_index(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..3).filter(|&i| !self.coeffs[i].is_zero()).collect();
        match nz.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    pub fn eval(&self, p: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.coeffs.iter().zip(p) {
            acc = &acc + &(a * b);
        }
        acc
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.eval(p.coords()).is_zero()
    }

    /// The linear form as a polynomial in `x, y, z`.
    pub fn linear_form(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(3);
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &MultiPoly::var(3, i).scale(c);
        }
        acc
    }

    /// The first `count` points of this rational line in the canonical
    /// small-height order, as integer vectors.
    pub fn canonical_points(&self, count: usize) -> Result<Vec<[i64; 3]>> {
        if !self.is_rational() {
            return Err(Error::InvalidLine(format!("{self} is not defined over the rationals")));
        }
        Ok(small_height_points()
            .filter(|v| self.eval(&v.map(Scalar::from_int)).is_zero())
            .take(count)
            .collect())
    }

    /// The first canonical point not on this line.
    pub fn first_point_off(&self) -> [i64; 3] {
        small_height_points()
            .find(|v| !self.eval(&v.map(Scalar::from_int)).is_zero())
            .expect("a line does not cover the plane")
    }
}

impl Ord for ProjectiveLine {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            let o = a.canonical_cmp(b);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ProjectiveLine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjectiveLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.linear_form())
    }
}

impl fmt::Debug for ProjectiveLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer points of the plane, one per projective point, ordered by height,
/// then number of nonzero entries, then their positions, then their values
/// in the order 1, -1, 2, -2, ... The last nonzero entry is positive.
pub fn small_height_points() -> impl Iterator<Item = [i64; 3]> {
    (1i64..).flat_map(points_of_height)
}

fn points_of_height(h: i64) -> Vec<[i64; 3]> {
    let values: Vec<i64> = (1..=h).flat_map(|v| [v, -v]).collect();
    let supports: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];
    let mut out = Vec::new();
    for support in supports {
        for vals in tuples(&values, support.len()) {
            let last_positive = *vals.last().unwrap() > 0;
            let reaches_h = vals.iter().any(|v| v.abs() == h);
            let g = vals.iter().fold(0i64, |acc, v| acc.gcd(v));
            if last_positive && reaches_h && g == 1 {
                let mut p = [0i64; 3];
                for (pos, v) in support.iter().zip(&vals) {
                    p[*pos] = *v;
                }
                out.push(p);
            }
        }
    }
    out
}

/// All `k`-tuples over `values`, lexicographic in the given value order.
fn tuples(values: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let tails = tuples(values, k - 1);
    values
        .iter()
        .flat_map(|v| {
            tails.iter().map(move |t| {
                let mut row = vec![*v];
                row.extend_from_slice(t);
                row
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let p = ProjectivePoint::from_ints([2, 4, 2]).unwrap();
        assert_eq!(p, ProjectivePoint::from_ints([1, 2, 1]).unwrap());
        assert_eq!(p.to_string(), "(1:2:1)");
        let q = ProjectivePoint::from_ints([3, 0, 0]).unwrap();
        assert_eq!(q.to_string(), "(1:0:0)");
        assert!(ProjectivePoint::from_ints([0, 0, 0]).is_err());
        let l = ProjectiveLine::from_ints([0, -2, 4]).unwrap();
        assert_eq!(l.to_string(), "y - 2*z = 0");
    }

    #[test]
    fn height_one_points_come_first() {
        let first: Vec<[i64; 3]> = small_height_points().take(6).collect();
        assert_eq!(
            first,
            vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [-1, 1, 0], [1, 0, 1]]
        );
        let h1: Vec<[i64; 3]> = points_of_height(1);
        assert_eq!(h1.len(), 13);
        let h2 = points_of_height(2);
        assert!(h2.iter().all(|p| p.iter().any(|v| v.abs() == 2)));
        assert!(!h2.contains(&[2, 2, 0]));
    }

    #[test]
    fn canonical_points_on_lines() {
        let z = ProjectiveLine::coordinate(2);
        assert_eq!(z.canonical_points(2).unwrap(), vec![[1, 0, 0], [0, 1, 0]]);
        let y = ProjectiveLine::coordinate(1);
        assert_eq!(y.canonical_points(2).unwrap(), vec![[1, 0, 0], [0, 0, 1]]);
        let x = ProjectiveLine::coordinate(0);
        assert_eq!(x.canonical_points(2).unwrap(), vec![[0, 1, 0], [0, 0, 1]]);
        assert_eq!(x.first_point_off(), [1, 0, 0]);
        let diag = ProjectiveLine::from_ints([1, 1, 1]).unwrap();
        assert_eq!(diag.canonical_points(2).unwrap(), vec![[-1, 1, 0], [-1, 0, 1]]);
    }

    #[test]
    fn line_through_points() {
        let p = ProjectivePoint::from_ints([1, 0, 0]).unwrap();
        let q = ProjectivePoint::from_ints([0, 1, 0]).unwrap();
        assert_eq!(ProjectiveLine::through(&p, &q).unwrap(), ProjectiveLine::coordinate(2));
        assert!(ProjectiveLine::through(&p, &p).is_err());
        assert_eq!(ProjectiveLine::coordinate(2).coordinate_index(), Some(2));
    }

    #[test]
    fn integer_representative() {
        let p = ProjectivePoint::new([
            Scalar::from(Rational::new(1.into(), 2.into())),
            Scalar::from_int(0),
            Scalar::from_int(1),
        ])
        .unwrap();
        let c = p.integer_coords().unwrap();
        assert_eq!(c, [BigInt::from(1), BigInt::from(0), BigInt::from(2)]);
    }
}
