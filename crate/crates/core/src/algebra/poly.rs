//! Sparse multivariate polynomials in at most three variables.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{fmt_rational, is_negative, Rational, Scalar};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 3;

/// Exponent vector. Unused slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial([u32; MAX_VARS]);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::one();
        m.0[i] = e;
        m
    }

    pub fn exps(&self) -> &[u32; MAX_VARS] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }

    fn with_exp(mut self, i: usize, e: u32) -> Monomial {
        self.0[i] = e;
        self
    }
}

/// Graded lexicographic with x > y > z.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial stored as `(monomial, coefficient)` pairs, sorted by
/// decreasing graded-lex order, with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
    degree: Option<u32>,
    homogeneous: bool,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly {
            nvars,
            terms: Vec::new(),
            degree: None,
            homogeneous: true,
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::from_terms(nvars, [(Monomial::one(), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::from_terms(nvars, [(Monomial::var(i, 1), Scalar::one())])
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Scalar) -> Self {
        Self::from_terms(nvars, [(m, c)])
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Self::from_sorted(nvars, terms)
    }

    fn from_sorted(nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        let degree = terms.first().map(|(m, _)| m.degree());
        let homogeneous = match degree {
            None => true,
            Some(d) => terms.iter().all(|(m, _)| m.degree() == d),
        };
        MultiPoly {
            nvars,
            terms,
            degree,
            homogeneous,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree.map_or(true, |d| d == 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    /// Smallest exponent of `var` over all terms.
    pub fn order_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).min()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.as_rational().is_some())
    }

    /// The number field the coefficients live in, `None` for ℚ.
    pub fn field(&self) -> Result<Option<super::NumberField>> {
        let mut field: Option<&super::NumberField> = None;
        for (_, c) in &self.terms {
            if let Some(f) = c.field() {
                match field {
                    Some(g) if g != f => return Err(Error::MixedFields),
                    _ => field = Some(f),
                }
            }
        }
        Ok(field.cloned())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        Self::from_sorted(self.nvars, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Self::from_sorted(self.nvars, terms)
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Composition `f(images[0], …, images[n-1])`. All images share one arity.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        if let Some(p) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::ArityMismatch {
                expected: target,
                found: p.nvars,
            });
        }
        let mut field = self.field()?;
        for p in images {
            if let Some(f) = p.field()? {
                match &field {
                    Some(g) if *g != f => return Err(Error::MixedFields),
                    _ => field = Some(f),
                }
            }
        }
        // powers[i][e] = images[i]^e
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|_| vec![MultiPoly::one(target)])
            .collect();
        for i in 0..self.nvars {
            let max = self.degree_in(i).unwrap_or(0) as usize;
            while powers[i].len() <= max {
                let next = &powers[i][powers[i].len() - 1] * &images[i];
                powers[i].push(next);
            }
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v = &*v + &tc,
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(MultiPoly::from_terms(target, acc))
    }

    /// Replaces `var` by the constant `value`, keeping the arity.
    pub fn set_var(&self, var: usize, value: &Scalar) -> MultiPoly {
        let mut pw = vec![Scalar::one()];
        let max = self.degree_in(var).unwrap_or(0) as usize;
        while pw.len() <= max {
            let next = &pw[pw.len() - 1] * value;
            pw.push(next);
        }
        MultiPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.with_exp(var, 0), c * &pw[m.exp(var) as usize])),
        )
    }

    /// Drops variable `var` (which must not occur) and shifts later ones down.
    pub fn remove_var(&self, var: usize) -> MultiPoly {
        assert!(!self.involves(var), "variable still occurs");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Vec::with_capacity(self.nvars - 1);
                for i in 0..self.nvars {
                    if i != var {
                        e.push(m.exp(i));
                    }
                }
                (Monomial::new(&e), c.clone())
            })
            .collect::<Vec<_>>();
        MultiPoly::from_terms(self.nvars - 1, terms)
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable `i` to
    /// `map[i]`.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = [0u32; MAX_VARS];
                for (i, &j) in map.iter().enumerate() {
                    e[j] += m.exp(i);
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), c * &Scalar::from_int(e as i64))
            }),
        )
    }

    /// Coefficients of `var^k` for k = 0..=deg, as polynomials free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| MultiPoly::from_sorted_unchecked(self.nvars, t))
            .collect()
    }

    // Terms taken from a sorted list with one exponent zeroed keep their
    // relative order only within equal exponents; re-sort to be safe.
    fn from_sorted_unchecked(nvars: usize, mut terms: Vec<(Monomial, Scalar)>) -> MultiPoly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Self::from_sorted(nvars, terms)
    }

    /// Leading coefficient with respect to `var`, a polynomial free of `var`.
    pub fn lc_in(&self, var: usize) -> MultiPoly {
        match self.degree_in(var) {
            None => MultiPoly::zero(self.nvars),
            Some(d) => MultiPoly::from_sorted_unchecked(
                self.nvars,
                self.terms
                    .iter()
                    .filter(|(m, _)| m.exp(var) == d)
                    .map(|(m, c)| (m.with_exp(var, 0), c.clone()))
                    .collect(),
            ),
        }
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly::from_sorted(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        )
    }

    /// Division with remainder by a single divisor in graded-lex order.
    pub fn div_rem(&self, d: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        let (lm, lc) = d.leading_term().ok_or(Error::DivisionByZero)?.clone();
        let lc_inv = lc.inv().ok_or(Error::DivisionByZero)?;
        let mut p = self.clone();
        let mut q = Vec::new();
        let mut r = Vec::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = &c * &lc_inv;
                    p = &p - &d.mul_monomial(&qm, &qc);
                    q.push((qm, qc));
                }
                None => {
                    p.terms.remove(0);
                    r.push((m, c));
                }
            }
        }
        Ok((
            MultiPoly::from_terms(self.nvars, q),
            MultiPoly::from_terms(self.nvars, r),
        ))
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if d.is_constant() {
            return Some(self.scale(&d.constant_term().inv()?));
        }
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Divides every exponent of `var` down by `k` (caller checks `order_in(var) >= k`).
    pub fn shift_down(&self, var: usize, k: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_exp(var, m.exp(var) - k), c.clone()))
            .collect();
        MultiPoly::from_sorted(self.nvars, terms)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Over ℚ: the associate with coprime integer coefficients and positive
    /// leading coefficient, together with the factor `s` such that
    /// `self = s · result`. Other fields: the monic associate.
    pub fn primitive(&self) -> (Scalar, MultiPoly) {
        if self.is_zero() {
            return (Scalar::one(), self.clone());
        }
        if !self.is_rational() {
            let lc = self.leading_coeff().unwrap().clone();
            return (lc.clone(), self.scale(&lc.inv().unwrap()));
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            let r = c.as_rational().unwrap();
            den = den.lcm(r.denom());
            num = num.gcd(r.numer());
        }
        let mut s = Rational::new(num, den);
        if self.leading_coeff().map_or(false, is_negative) {
            s = -s;
        }
        let s = Scalar::from(s);
        let p = self.scale(&s.inv().unwrap());
        (s, p)
    }

    /// Common scalar normalization for a tuple of polynomials: the factor `s`
    /// making all of them jointly integer-primitive, sign fixed by the first
    /// nonzero leading coefficient. Rational inputs only.
    pub fn joint_content(polys: &[&MultiPoly]) -> Rational {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        let mut sign = None;
        for p in polys {
            for (_, c) in &p.terms {
                let r = c.as_rational().expect("rational coefficients");
                den = den.lcm(r.denom());
                num = num.gcd(r.numer());
            }
            if sign.is_none() {
                sign = p.leading_coeff().map(is_negative);
            }
        }
        if num.is_zero() {
            return Rational::one();
        }
        let s = Rational::new(num, den);
        if sign == Some(true) {
            -s
        } else {
            s
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn default_names(nvars: usize) -> &'static [&'static str] {
        match nvars {
            0 => &[],
            1 => &["t"],
            2 => &["u", "v"],
            _ => &["x", "y", "z"],
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        merge(self, rhs, true)
    }
}

fn merge(a: &MultiPoly, b: &MultiPoly, negate: bool) -> MultiPoly {
    assert_eq!(a.nvars, b.nvars, "arity mismatch");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, c) = &b.terms[j];
                out.push((*m, if negate { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let (m, x) = &a.terms[i];
                let y = &b.terms[j].1;
                let c = if negate { x - y } else { x + y };
                if !c.is_zero() {
                    out.push((*m, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    MultiPoly::from_sorted(a.nvars, out)
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_monomial(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly::from_terms(self.nvars, acc)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::from_sorted(
            self.nvars,
            self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [&'a str],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let (neg, mag) = match c {
                Scalar::Rational(r) => (r.is_negative(), Scalar::from(r.abs())),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for i in 0..self.poly.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.names[i].to_string()),
                    e => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                let s = match &mag {
                    Scalar::Rational(r) => fmt_rational(r),
                    other => other.to_string(),
                };
                factors.insert(0, s);
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with(MultiPoly::default_names(self.nvars)), f)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{frac, rat};

    fn x() -> MultiPoly {
        MultiPoly::var(3, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(3, 1)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(3, 2)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(3, Scalar::from_int(n))
    }

    #[test]
    fn grlex_order() {
        let p = &(&(&x() * &y()) + &z().pow(3)) + &c(1);
        assert_eq!(p.to_string(), "z^3 + x*y + 1");
        let q = &(&x() * &x()) + &(&y() * &z());
        assert_eq!(q.to_string(), "x^2 + y*z");
    }

    #[test]
    fn rendering_of_fractions_and_signs() {
        let p = MultiPoly::from_terms(
            3,
            [
                (Monomial::new(&[2, 1, 0]), Scalar::from(frac(-3, 2))),
                (Monomial::new(&[0, 0, 1]), Scalar::from(rat(-1))),
                (Monomial::one(), Scalar::from(rat(5))),
            ],
        );
        assert_eq!(p.to_string(), "-3/2*x^2*y - z + 5");
    }

    #[test]
    fn substitute_quadratic_involution() {
        let images = [&x() * &z(), &(&x() * &x()) - &(&y() * &z()), &z() * &z()];
        let f = y();
        assert_eq!(f.substitute(&images).unwrap().to_string(), "x^2 - y*z");
        let g = &(&x() * &y()) * &z();
        let expected = &(&(&x() * &z().pow(3)) * &(&(&x() * &x()) - &(&y() * &z()))) + &c(0);
        assert_eq!(g.substitute(&images).unwrap(), expected);
        assert!(g.substitute(&images[..2]).is_err());
    }

    #[test]
    fn division() {
        let f = &(&x() * &x()) - &(&y() * &y());
        let d = &x() - &y();
        assert_eq!(f.div_exact(&d).unwrap(), &x() + &y());
        assert!(f.div_exact(&(&x() + &z())).is_none());
    }

    #[test]
    fn primitive_part() {
        let p = &MultiPoly::constant(3, Scalar::from(frac(-2, 3))) * &(&x() - &y());
        let (s, q) = p.primitive();
        assert_eq!(q, &x() - &y());
        assert_eq!(s, Scalar::from(frac(-2, 3)));
    }

    #[test]
    fn coefficients_in_a_variable() {
        let p = &(&(&x() * &y()) * &y()) + &(&z() * &y());
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[1], z());
        assert_eq!(cs[2], x());
        assert_eq!(p.lc_in(1), x());
    }
}
