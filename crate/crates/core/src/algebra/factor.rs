//! Univariate factorization over ℚ.
//!
//! Squarefree decomposition (Yun), then rational roots through a monic
//! transform and p-adic Newton lifting, then a biquadratic shortcut for
//! even quartics and a Kronecker search with divided-difference pruning for
//! the remaining factors of degree at most [`MAX_SEARCH_DEGREE`].

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::MultiPoly;
use super::scalar::{Rational, Scalar};
use super::univariate::{IntPoly, UniPoly};
use crate::error::{Error, Result};

/// Irreducible pieces of degree above this are rejected.
pub const MAX_SEARCH_DEGREE: usize = 8;

/// Node budget for the Kronecker search.
const SEARCH_BUDGET: u64 = 4_000_000;

/// `f = content · Π factor^multiplicity` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self, nvars: usize) -> MultiPoly {
        let mut acc = MultiPoly::constant(nvars, Scalar::from(self.content.clone()));
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Factors a polynomial in (at most) one variable with rational coefficients.
pub fn factor_univariate(f: &MultiPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars: Vec<usize> = (0..f.nvars()).filter(|&v| f.involves(v)).collect();
    if vars.len() > 1 || !f.is_rational() {
        return Err(Error::NotUnivariate(f.to_string()));
    }
    let var = vars.first().copied().unwrap_or(0);
    let (content, factors) = factor_rational(&UniPoly::from_multi(f, var))?;
    Ok(Factorization {
        content,
        factors: factors
            .into_iter()
            .map(|(p, e)| (p.to_multi(f.nvars(), var), e))
            .collect(),
    })
}

/// Dense counterpart of [`factor_univariate`]; the input must be rational.
pub(crate) fn factor_rational(f: &UniPoly) -> Result<(Rational, Vec<(UniPoly, u32)>)> {
    let coeffs = f.to_rationals().ok_or_else(|| Error::NotUnivariate(render(f)))?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = coeffs.last().unwrap().clone();
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for g in factor_squarefree(&part)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| canonical_order(&a.0, &b.0));
    Ok((content, out))
}

/// Distinct monic irreducible factors.
pub(crate) fn irreducible_factors(f: &UniPoly) -> Result<Vec<UniPoly>> {
    Ok(factor_rational(f)?.1.into_iter().map(|(p, _)| p).collect())
}

/// By degree, then coefficients from the constant term up, each compared by
/// absolute value with the negative sign first.
fn canonical_order(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            let (x, y) = (x.as_rational().unwrap(), y.as_rational().unwrap());
            let o = x.abs().cmp(&y.abs()).then_with(|| x.cmp(y));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Yun's algorithm on a monic polynomial: squarefree monic parts with their
/// multiplicities (parts equal to 1 omitted).
fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).unwrap();
    let c = df.div_exact(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).unwrap();
        let c = d.div_exact(&a).unwrap();
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let mut out = Vec::new();
    let mut rest = IntPoly::from_rationals(&f.to_rationals().unwrap());
    for r in rational_roots_squarefree(&rest) {
        out.push(UniPoly::linear_root(&Scalar::from(r.clone())));
        let lin = IntPoly(vec![-r.numer().clone(), r.denom().clone()]);
        rest = rest.div_exact(&lin).expect("root divides");
    }
    let mut pending = vec![rest];
    while let Some(p) = pending.pop() {
        let d = p.degree().unwrap_or(0);
        if d == 0 {
            continue;
        }
        if d <= 3 {
            out.push(to_monic(&p));
            continue;
        }
        if d == 4 {
            if let Some((g, h)) = split_biquadratic(&p) {
                out.push(to_monic(&g));
                out.push(to_monic(&h));
                continue;
            }
        }
        if d > MAX_SEARCH_DEGREE {
            return Err(Error::FactorizationDegree {
                poly: render(&to_monic(&p)),
            });
        }
        match kronecker_split(&p)? {
            Some(g) => {
                let h = p.div_exact(&g).expect("factor divides");
                pending.push(g);
                pending.push(h);
            }
            None => out.push(to_monic(&p)),
        }
    }
    Ok(out)
}

fn to_monic(p: &IntPoly) -> UniPoly {
    UniPoly::from_rationals(&p.to_rationals()).monic()
}

fn render(p: &UniPoly) -> String {
    p.to_multi(1, 0).to_string()
}

/// All rational roots of a polynomial, each once.
#[cfg(test)]
pub(crate) fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    if !f.is_rational() || f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = f.squarefree_part();
    let mut roots = rational_roots_squarefree(&IntPoly::from_rationals(&sf.to_rationals().unwrap()));
    roots.sort();
    roots
}

/// Rational roots of a squarefree primitive integer polynomial.
fn rational_roots_squarefree(p: &IntPoly) -> Vec<Rational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let lc = p.lc().clone();
    // q(y) = lc^(d-1) p(y / lc) is monic with integer coefficients
    let mut q = Vec::with_capacity(d + 1);
    let mut scale = BigInt::one();
    for i in (0..d).rev() {
        q.push((i, &p.0[i] * &scale));
        scale *= &lc;
    }
    let mut qc = vec![BigInt::zero(); d + 1];
    for (i, c) in q {
        qc[i] = c;
    }
    qc[d] = BigInt::one();
    let q = IntPoly(qc);
    integer_roots_monic(&q)
        .into_iter()
        .map(|y| Rational::new(y, lc.clone()))
        .collect()
}

/// Integer roots of a monic squarefree integer polynomial.
fn integer_roots_monic(q: &IntPoly) -> Vec<BigInt> {
    let d = q.degree().unwrap();
    let bound = q.0.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let dq = q.derivative();
    for p in primes().skip(1) {
        if (p as usize) <= d {
            continue;
        }
        let qm = reduce_mod(q, p);
        let dqm = reduce_mod(&dq, p);
        if gcd_mod(&qm, &dqm, p).len() > 1 {
            continue;
        }
        let modulus_target: BigInt = &bound * 2;
        let mut roots = Vec::new();
        for r0 in 0..p {
            if eval_mod(&qm, r0, p) != 0 {
                continue;
            }
            let mut r = BigInt::from(r0);
            let mut m = BigInt::from(p);
            while m <= modulus_target {
                m = &m * &m;
                let fr = q.eval(&r).mod_floor(&m);
                let dfr = dq.eval(&r).mod_floor(&m);
                let inv = mod_inverse(&dfr, &m).expect("simple root stays simple");
                r = (&r - fr * inv).mod_floor(&m);
            }
            let half: BigInt = &m / 2;
            if r > half {
                r -= &m;
            }
            if q.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        return roots;
    }
    unreachable!("a squarefree polynomial has finitely many bad primes")
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..).take_while(|k| k * k <= n).all(|k| n % k != 0))
}

fn reduce_mod(p: &IntPoly, m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    let mut v: Vec<u64> = p
        .0
        .iter()
        .map(|c| c.mod_floor(&mb).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn eval_mod(p: &[u64], x: u64, m: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| (acc * x + c) % m)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn gcd_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = a.last().unwrap() * inv % m;
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + m - f * c % m) % m;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Splits an even quartic without rational roots, if it factors.
fn split_biquadratic(p: &IntPoly) -> Option<(IntPoly, IntPoly)> {
    if !p.0[1].is_zero() || !p.0[3].is_zero() {
        return None;
    }
    let lc = Rational::from_integer(p.0[4].clone());
    let b = Rational::from_integer(p.0[2].clone()) / &lc;
    let c = Rational::from_integer(p.0[0].clone()) / &lc;
    let zero = Rational::zero();
    let one = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    let four = Rational::from_integer(BigInt::from(4));
    if let Some(s) = exact_sqrt(&(&b * &b - &four * &c)) {
        // t^4 + b t^2 + c = (t^2 - r1)(t^2 - r2)
        let r1 = (-&b + &s) / &two;
        let r2 = (-&b - &s) / &two;
        let g = IntPoly::from_rationals(&[-r1, zero.clone(), one.clone()]);
        let h = IntPoly::from_rationals(&[-r2, zero, one]);
        return Some((g, h));
    }
    let e = exact_sqrt(&c)?;
    for e in [e.clone(), -e] {
        // (t^2 + a t + e)(t^2 - a t + e) with a^2 = 2e - b
        if let Some(a) = exact_sqrt(&(&two * &e - &b)) {
            if !a.is_zero() {
                let g = IntPoly::from_rationals(&[e.clone(), a.clone(), one.clone()]);
                let h = IntPoly::from_rationals(&[e.clone(), -a, one.clone()]);
                return Some((g, h));
            }
        }
    }
    None
}

/// Positive divisors of `n != 0`, or `None` if `n` could not be factored.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut k = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &k * &k <= n && k <= limit {
        let mut e = 0;
        while (&n % &k).is_zero() {
            n /= &k;
            e += 1;
        }
        if e > 0 {
            primes.push((k.clone(), e));
        }
        k += 1u32;
    }
    if n > BigInt::one() {
        if &k * &k <= n && !is_probable_prime(&n) {
            return None;
        }
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

fn is_probable_prime(n: &BigInt) -> bool {
    let one = BigInt::one();
    let two = BigInt::from(2u32);
    if n < &two {
        return false;
    }
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigInt::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A factor of degree between 2 and deg/2, searched by increasing degree (so
/// the first hit is irreducible), or `None` when `p` is irreducible.
fn kronecker_split(p: &IntPoly) -> Result<Option<IntPoly>> {
    let d = p.degree().unwrap();
    let mut budget = SEARCH_BUDGET;
    // sample points, preferring values with few divisors
    let mut samples: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    for i in 0..64i64 {
        let x = BigInt::from(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
        let v = p.eval(&x);
        if let Some(ds) = divisors(&v) {
            samples.push((x, ds));
        }
    }
    samples.sort_by_key(|(_, ds)| ds.len());
    for k in 2..=d / 2 {
        if samples.len() < k + 1 {
            break;
        }
        let pts = &samples[..k + 1];
        let mut search = Search {
            target: p,
            k,
            xs: pts.iter().map(|(x, _)| x.clone()).collect(),
            divs: pts.iter().map(|(_, ds)| ds.clone()).collect(),
            table: Vec::new(),
            budget: &mut budget,
        };
        if let Some(g) = search.run(0)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

struct Search<'a> {
    target: &'a IntPoly,
    k: usize,
    xs: Vec<BigInt>,
    divs: Vec<Vec<BigInt>>,
    // divided-difference rows: table[j][i] = g[x_{j-i}, ..., x_j]
    table: Vec<Vec<BigInt>>,
    budget: &'a mut u64,
}

impl Search<'_> {
    fn run(&mut self, j: usize) -> Result<Option<IntPoly>> {
        if j == self.k + 1 {
            return Ok(self.candidate());
        }
        let divs = self.divs[j].clone();
        for d in &divs {
            let signs: &[bool] = if j == 0 { &[false] } else { &[false, true] };
            for &neg in signs {
                if *self.budget == 0 {
                    return Err(Error::FactorSearchExhausted {
                        poly: render(&to_monic(self.target)),
                    });
                }
                *self.budget -= 1;
                let v = if neg { -d.clone() } else { d.clone() };
                if let Some(row) = self.extend_row(j, v) {
                    self.table.push(row);
                    let found = self.run(j + 1)?;
                    self.table.pop();
                    if found.is_some() {
                        return Ok(found);
                    }
                }
            }
        }
        Ok(None)
    }

    /// Divided differences ending at x_j; all must be integers for an
    /// integer polynomial, and the order-k one is the leading coefficient.
    fn extend_row(&self, j: usize, value: BigInt) -> Option<Vec<BigInt>> {
        let mut row = vec![value];
        for i in 1..=j {
            let num = &row[i - 1] - &self.table[j - 1][i - 1];
            let den = &self.xs[j] - &self.xs[j - i];
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return None;
            }
            row.push(q);
        }
        if j == self.k {
            let lc = &row[self.k];
            if lc.is_zero() || !(self.target.lc() % lc).is_zero() {
                return None;
            }
        }
        Some(row)
    }

    fn candidate(&self) -> Option<IntPoly> {
        // Newton form, evaluated Horner-style from the top coefficient
        let mut g = vec![self.table[self.k][self.k].clone()];
        for i in (0..self.k).rev() {
            let mut next = vec![BigInt::zero(); g.len() + 1];
            for (e, c) in g.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * &self.xs[i];
            }
            next[0] += &self.table[i][i];
            g = next;
        }
        let g = IntPoly(g).trim();
        if g.degree() != Some(self.k) {
            return None;
        }
        self.target.div_exact(&g).map(|_| g.primitive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn t() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(1, Scalar::from_int(n))
    }

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    #[test]
    fn cubic_splits_into_sorted_linears() {
        let f = &t().pow(3) - &t();
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.content, rat(1));
        let expected = vec![(t(), 1), (&t() - &c(1), 1), (&t() + &c(1), 1)];
        assert_eq!(fac.factors, expected);
    }

    #[test]
    fn biquadratic_split() {
        let f = &t().pow(4) - &c(4);
        let fac = factor_univariate(&f).unwrap();
        let expected = vec![(&t().pow(2) - &c(2), 1), (&t().pow(2) + &c(2), 1)];
        assert_eq!(fac.factors, expected);
        assert_eq!(fac.expand(1), f);
    }

    #[test]
    fn repeated_factor() {
        let f = (&t() - &c(1)).pow(2);
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.factors, vec![(&t() - &c(1), 2)]);
    }

    #[test]
    fn content_and_rational_roots() {
        // 6t^2 - t - 1 = 6 (t - 1/2)(t + 1/3)
        let f = up(&[-1, -1, 6]);
        let (content, fs) = factor_rational(&f).unwrap();
        assert_eq!(content, rat(6));
        assert_eq!(fs.len(), 2);
        assert_eq!(rational_roots(&f), vec![Rational::new((-1).into(), 3.into()), Rational::new(1.into(), 2.into())]);
    }

    #[test]
    fn kronecker_finds_quadratic_times_cubic() {
        // (t^2 + t + 1)(t^3 - t - 1)
        let g = up(&[1, 1, 1]);
        let h = up(&[-1, -1, 0, 1]);
        let f = g.mul(&h);
        let (_, fs) = factor_rational(&f).unwrap();
        let got: Vec<UniPoly> = fs.into_iter().map(|(p, _)| p).collect();
        assert_eq!(got, vec![g, h]);
    }

    #[test]
    fn quartic_product_of_quadratics() {
        // (t^2 + 1)(t^2 + t + 2), not even
        let f = up(&[1, 0, 1]).mul(&up(&[2, 1, 1]));
        let (_, fs) = factor_rational(&f).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn irreducible_sextic_stays_whole() {
        let f = up(&[-2, 0, 0, 0, 0, 0, 1]);
        let (_, fs) = factor_rational(&f).unwrap();
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn eight_squares_split() {
        // t^8 - 1 = (t-1)(t+1)(t^2+1)(t^4+1)
        let f = up(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let (_, fs) = factor_rational(&f).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(p, _)| p.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 2, 4]);
    }

    #[test]
    fn high_degree_irreducible_is_rejected() {
        let f = up(&[-2, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(factor_rational(&f), Err(Error::FactorizationDegree { .. })));
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(factor_univariate(&MultiPoly::zero(1)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn large_integer_roots_are_found() {
        // (t - 123456789)(t + 987654321)(t^2 + 3)
        let a = UniPoly::linear_root(&Scalar::from_int(123456789));
        let b = UniPoly::linear_root(&Scalar::from_int(-987654321));
        let f = a.mul(&b).mul(&up(&[3, 0, 1]));
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![rat(-987654321), rat(123456789)]);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigInt::from(1_000_000_007u64 * 3)));
    }

    #[test]
    fn divisor_listing() {
        let ds = divisors(&BigInt::from(-12)).unwrap();
        let want: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(ds, want);
    }
}
