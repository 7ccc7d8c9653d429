//! Dense univariate polynomials over [`Scalar`], plus integer helpers used
//! for ℚ-specific algorithms (gcd by primitive remainder sequences).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, MultiPoly};
use super::scalar::{Rational, Scalar};

/// Ascending coefficients; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// `t - r`
    pub fn linear_root(r: &Scalar) -> Self {
        UniPoly::new(vec![-r, Scalar::one()])
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        UniPoly::new(c.iter().cloned().map(Scalar::from).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs
            .iter()
            .map(|c| c.as_rational().cloned())
            .collect()
    }

    /// Reads a polynomial involving only `var` out of a multivariate one.
    pub fn from_multi(p: &MultiPoly, var: usize) -> Self {
        let deg = p.degree_in(var).unwrap_or(0) as usize;
        let mut c = vec![Scalar::zero(); deg + 1];
        for (m, a) in p.terms() {
            debug_assert!((0..p.nvars()).all(|i| i == var || m.exp(i) == 0));
            c[m.exp(var) as usize] = a.clone();
        }
        UniPoly::new(c)
    }

    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(var, i as u32), c.clone())),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::constant(Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.lc() {
            None => UniPoly::zero(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division over the coefficient field. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().unwrap().inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..r.len() - dd).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                r[k + j] = &r[k + j] - &(&c * &d.coeffs[j]);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        if self.is_rational() && o.is_rational() {
            let a = IntPoly::from_rationals(&self.to_rationals().unwrap());
            let b = IntPoly::from_rationals(&o.to_rationals().unwrap());
            return UniPoly::from_rationals(&a.gcd(&b).to_rationals()).monic();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Resultant with respect to the actual degrees of both inputs.
    pub fn resultant(&self, o: &UniPoly) -> Scalar {
        let (n, m) = match (self.degree(), o.degree()) {
            (None, _) | (_, None) => return Scalar::zero(),
            (Some(n), Some(m)) => (n, m),
        };
        if m == 0 {
            return o.coeffs[0].pow(n as u32);
        }
        if n == 0 {
            return self.coeffs[0].pow(m as u32);
        }
        let r = self.rem(o);
        let Some(dr) = r.degree() else {
            return Scalar::zero();
        };
        let mut res = o.lc().unwrap().pow((n - dr) as u32) * o.resultant(&r);
        if (n * m) % 2 == 1 {
            res = -res;
        }
        res
    }
}

/// Dense integer polynomial, ascending. Used for ℚ[t] computations where
/// working with primitive integer representatives keeps coefficients small.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn trim(mut self) -> Self {
        while self.0.last().map_or(false, Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    /// The primitive integer associate (positive leading coefficient).
    pub fn from_rationals(c: &[Rational]) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints = c
            .iter()
            .map(|r| (r * Rational::from_integer(den.clone())).to_integer())
            .collect();
        IntPoly(ints).trim().primitive()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().cloned().map(Rational::from_integer).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lc(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        IntPoly(self.0.into_iter().map(|a| a / &c).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
        .trim()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn prem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.lc().clone();
        let mut r = self.0.clone();
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let k = top - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for j in 0..=db {
                r[k + j] -= &lr * &b.0[j];
            }
            r.pop();
            while r.last().map_or(false, Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly(r)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.clone().primitive(), o.clone().primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return IntPoly(vec![BigInt::one()]);
            }
            let r = a.prem(&b).primitive();
            a = std::mem::replace(&mut b, r);
        }
        a
    }

    /// Exact quotient over ℚ, returned as primitive integer polynomial.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = UniPoly::from_rationals(&self.to_rationals())
            .div_rem(&UniPoly::from_rationals(&d.to_rationals()));
        if !r.is_zero() {
            return None;
        }
        Some(IntPoly::from_rationals(&q.to_rationals()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    #[test]
    fn gcd_of_rational_polys() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = up(&[-2, 1, 1]);
        let b = up(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
    }

    #[test]
    fn squarefree_part_drops_repeats() {
        // (t-1)^2 (t+1)
        let p = up(&[-1, 1]).pow(2).mul(&up(&[1, 1]));
        assert_eq!(p.squarefree_part(), up(&[-1, 0, 1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(t^2 - 2, t - 3) = (3^2 - 2) * (-1)^(2*1) ... = 7
        let f = up(&[-2, 0, 1]);
        let g = up(&[-3, 1]);
        assert_eq!(f.resultant(&g), Scalar::from(rat(7)));
        assert_eq!(g.resultant(&f), Scalar::from(rat(7)));
        assert_eq!(f.resultant(&f), Scalar::zero());
    }

    #[test]
    fn int_prem_and_gcd() {
        let a = IntPoly(vec![(-1).into(), 0.into(), 1.into()]);
        let b = IntPoly(vec![1.into(), 1.into()]);
        assert!(a.prem(&b).is_zero());
        assert_eq!(a.gcd(&b), b);
    }
}
