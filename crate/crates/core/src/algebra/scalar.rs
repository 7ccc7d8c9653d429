//! Exact scalars: rationals and elements of simple extensions `ℚ[t]/(p)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A simple algebraic extension of ℚ, given by a monic irreducible
/// polynomial of degree at least two.
///
/// Handles are cheap to clone. Two handles compare equal when their minimal
/// polynomials agree.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    // ascending coefficients, monic, len = degree + 1
    minpoly: Vec<Rational>,
}

impl NumberField {
    /// Caller guarantees the polynomial is monic and irreducible. Use
    /// [`crate::algebra::extend_field`] for the checked constructor.
    pub(crate) fn new_unchecked(minpoly: Vec<Rational>) -> Self {
        debug_assert!(minpoly.len() >= 3);
        debug_assert!(minpoly.last().map_or(false, |c| c.is_one()));
        NumberField {
            inner: Arc::new(FieldInner { minpoly }),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.minpoly.len() - 1
    }

    /// Ascending coefficients of the minimal polynomial.
    pub fn minpoly(&self) -> &[Rational] {
        &self.inner.minpoly
    }

    /// The class of `t`.
    pub fn generator(&self) -> Scalar {
        let mut c = vec![Rational::zero(); self.degree()];
        c[1] = Rational::one();
        self.element(c)
    }

    /// The class of the polynomial with ascending coefficients `coeffs`.
    pub fn element(&self, coeffs: Vec<Rational>) -> Scalar {
        let reduced = qpoly::rem(coeffs, self.minpoly());
        Scalar::from_field_coeffs(self, reduced)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.minpoly == other.inner.minpoly
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[a]/({})", qpoly::render(self.minpoly(), "a"))
    }
}

/// An element of a number field that is not rational. Rational values are
/// always demoted to [`Scalar::Rational`], so representations are canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebraic {
    field: NumberField,
    // len == field degree
    coeffs: Vec<Rational>,
}

impl Algebraic {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rational),
    Algebraic(Algebraic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(rat(n))
    }

    fn from_field_coeffs(field: &NumberField, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(field.degree(), Rational::zero());
        if coeffs[1..].iter().all(Zero::is_zero) {
            Scalar::Rational(coeffs.swap_remove(0))
        } else {
            Scalar::Algebraic(Algebraic {
                field: field.clone(),
                coeffs,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Algebraic(_) => None,
        }
    }

    pub fn field(&self) -> Option<&NumberField> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Algebraic(a) => Some(&a.field),
        }
    }

    /// Coefficients in the power basis of `field`; rationals embed canonically.
    pub fn coeffs_in(&self, field: &NumberField) -> Vec<Rational> {
        match self {
            Scalar::Rational(r) => {
                let mut v = vec![Rational::zero(); field.degree()];
                v[0] = r.clone();
                v
            }
            Scalar::Algebraic(a) => {
                assert!(a.field == *field, "arithmetic across different number fields");
                a.coeffs.clone()
            }
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => None,
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Algebraic(a) => {
                let inv = qpoly::inverse_mod(&a.coeffs, a.field.minpoly())?;
                Some(Scalar::from_field_coeffs(&a.field, inv))
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Deterministic total order used for canonical sorting. Rationals sort
    /// numerically and before algebraic elements.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Algebraic(_)) => Ordering::Less,
            (Scalar::Algebraic(_), Scalar::Rational(_)) => Ordering::Greater,
            (Scalar::Algebraic(a), Scalar::Algebraic(b)) => a
                .field
                .degree()
                .cmp(&b.field.degree())
                .then_with(|| a.field.minpoly().cmp(b.field.minpoly()))
                .then_with(|| a.coeffs.cmp(&b.coeffs)),
        }
    }

    /// Whether `self` and `other` could be combined arithmetically.
    pub fn compatible(&self, other: &Scalar) -> bool {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        rat_op: impl Fn(&Rational, &Rational) -> Rational,
        alg_op: impl Fn(&[Rational], &[Rational], &[Rational]) -> Vec<Rational>,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat_op(a, b)),
            _ => {
                let field = match (self.field(), other.field()) {
                    (Some(a), Some(b)) => {
                        assert!(a == b, "arithmetic across different number fields");
                        a
                    }
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!(),
                };
                let x = self.coeffs_in(field);
                let y = other.coeffs_in(field);
                Scalar::from_field_coeffs(field, alg_op(&x, &y, field.minpoly()))
            }
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |x, y, _| {
            x.iter().zip(y).map(|(a, b)| a + b).collect()
        })
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |x, y, _| {
            x.iter().zip(y).map(|(a, b)| a - b).collect()
        })
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |x, y, m| qpoly::rem(qpoly::mul(x, y), m))
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Algebraic(a) => Scalar::Algebraic(Algebraic {
                field: a.field.clone(),
                coeffs: a.coeffs.iter().map(|c| -c).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&fmt_rational(r)),
            Scalar::Algebraic(a) => write!(f, "({})", qpoly::render(&a.coeffs, "a")),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether a rendered scalar needs parentheses when used as a factor.
pub(crate) fn is_negative(s: &Scalar) -> bool {
    matches!(s, Scalar::Rational(r) if r.is_negative())
}

/// Dense ascending polynomials over ℚ, just enough for field arithmetic.
pub(crate) mod qpoly {
    use super::{fmt_rational, Rational};
    use num_traits::{One, Signed, Zero};

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().map_or(false, Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// Remainder modulo a monic `m`.
    pub fn rem(p: Vec<Rational>, m: &[Rational]) -> Vec<Rational> {
        let mut p = trim(p);
        let d = m.len() - 1;
        while p.len() > d {
            let top = p.len() - 1;
            let c = p[top].clone();
            if !c.is_zero() {
                for j in 0..d {
                    p[top - d + j] -= &c * &m[j];
                }
            }
            p.pop();
            p = trim(p);
        }
        p
    }

    pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let lc_inv = b[db].recip();
        let mut q = vec![Rational::zero(); r.len() - db];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = &r[r.len() - 1] * &lc_inv;
            for j in 0..=db {
                let t = &c * &b[j];
                r[k + j] -= t;
            }
            q[k] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let z = Rational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// `u` with `u·a ≡ 1 (mod m)`, if `a` is invertible.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        let (mut r0, mut r1) = (m.to_vec(), trim(a.to_vec()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        Some(rem(s0.into_iter().map(|x| x * &c).collect(), m))
    }

    pub fn render(p: &[Rational], var: &str) -> String {
        let mut out = String::new();
        for (i, c) in p.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
