//! Resultant orders computed modulo word-sized primes.
//!
//! For integer polynomials `f, g` in two variables, `Res_v(f, g)` is an
//! integer polynomial in `s` whose ℓ¹ norm is at most `‖f‖₁^m · ‖g‖₁^n`
//! (the product of the row norms of the Sylvester matrix). A coefficient that
//! vanishes modulo primes whose product exceeds twice that bound is zero, so
//! the order at `s = 0` is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::MultiPoly;

/// Order at `other = 0` of `Res_var(f, g)`, for polynomials over ℚ in which
/// only `var` and `other` occur. `None` when an input is not over ℚ;
/// `Some(None)` when the resultant is identically zero.
pub fn resultant_order(f: &MultiPoly, g: &MultiPoly, var: usize, other: usize) -> Option<Option<u32>> {
    let fi = IntBivariate::new(f, var, other)?;
    let gi = IntBivariate::new(g, var, other)?;
    let (n, m) = (fi.deg_v, gi.deg_v);
    let degree_bound = match (f.total_degree(), g.total_degree()) {
        (Some(a), Some(b)) => (a * b) as usize,
        _ => return Some(None),
    };
    let norm_bits = fi.norm_bits() * m as u64 + gi.norm_bits() * n as u64 + 2;
    let mut covered_bits = 0u64;
    let mut best: Option<usize> = None;
    for p in primes_below_2_62() {
        if covered_bits > norm_bits {
            break;
        }
        covered_bits += 61;
        let coeffs = fi.resultant_mod(&gi, p, degree_bound);
        if let Some(k) = coeffs.iter().position(|&c| c != 0) {
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    Some(best.map(|k| k as u32))
}

/// Integer polynomial in (v, s), dense in both.
struct IntBivariate {
    deg_v: u32,
    /// `rows[j][i]` is the coefficient of `v^j s^i`.
    rows: Vec<Vec<BigInt>>,
}

impl IntBivariate {
    fn new(p: &MultiPoly, var: usize, other: usize) -> Option<Self> {
        if !p.is_rational() {
            return None;
        }
        let deg_v = p.degree_in(var).unwrap_or(0);
        let deg_s = p.degree_in(other).unwrap_or(0);
        let den = p
            .terms()
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.as_rational().unwrap().denom()));
        let mut rows = vec![vec![BigInt::zero(); deg_s as usize + 1]; deg_v as usize + 1];
        for (mono, c) in p.terms() {
            let r = c.as_rational().unwrap();
            rows[mono.exp(var) as usize][mono.exp(other) as usize] = r.numer() * (&den / r.denom());
        }
        Some(IntBivariate { deg_v, rows })
    }

    fn norm_bits(&self) -> u64 {
        let norm: BigInt = self.rows.iter().flatten().map(|c| c.abs()).sum();
        norm.bits().max(1)
    }

    fn reduce(&self, p: u64) -> Vec<Vec<u64>> {
        let pb = BigInt::from(p);
        self.rows
            .iter()
            .map(|row| row.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
            .collect()
    }

    /// Coefficients in `s` of `Res_v` mod `p`, degree at most `bound`.
    fn resultant_mod(&self, o: &IntBivariate, p: u64, bound: usize) -> Vec<u64> {
        let fr = self.reduce(p);
        let gr = o.reduce(p);
        let xs: Vec<u64> = (0..=bound as u64).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| {
                let fv: Vec<u64> = fr.iter().map(|row| horner(row, x, p)).collect();
                let gv: Vec<u64> = gr.iter().map(|row| horner(row, x, p)).collect();
                formal_resultant_mod(fv, gv, p)
            })
            .collect();
        interpolate_mod(&xs, &ys, p)
    }
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn horner(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| add(mul(acc, x, p), a, p))
}

/// Sylvester resultant for the formal degrees `f.len() - 1`, `g.len() - 1`.
fn formal_resultant_mod(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> u64 {
    let mut acc = 1u64;
    loop {
        let (n, m) = (f.len() - 1, g.len() - 1);
        if n == 0 {
            return mul(acc, pow(f[0], m as u64, p), p);
        }
        if m == 0 {
            return mul(acc, pow(g[0], n as u64, p), p);
        }
        if f[n] == 0 {
            // expand along the first column: Res_{n,m} = (-1)^m g_m Res_{n-1,m}
            acc = mul(acc, g[m], p);
            if m % 2 == 1 {
                acc = sub(0, acc, p);
            }
            f.pop();
            continue;
        }
        if n < m {
            if (n * m) % 2 == 1 {
                acc = sub(0, acc, p);
            }
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        if g[m] == 0 {
            // Res_{n,m}(f,g) = (-1)^{nm} Res_{m,n}(g,f), then strip g's top
            if (n * m) % 2 == 1 {
                acc = sub(0, acc, p);
            }
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // n >= m, both leading coefficients nonzero: reduce f modulo g
        let li = inv(g[m], p);
        for k in (0..=n - m).rev() {
            let c = mul(f[k + m], li, p);
            if c != 0 {
                for j in 0..=m {
                    f[k + j] = sub(f[k + j], mul(c, g[j], p), p);
                }
            }
        }
        f.truncate(m);
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        if f.len() == 1 && f[0] == 0 {
            return 0;
        }
        let dr = f.len() - 1;
        // Res(f, g) = (-1)^{nm} lc(g)^{n - dr} Res(g, r)
        acc = mul(acc, pow(g[m], (n - dr) as u64, p), p);
        if (n * m) % 2 == 1 {
            acc = sub(0, acc, p);
        }
        std::mem::swap(&mut f, &mut g);
    }
}

/// Monomial coefficients of the interpolating polynomial through
/// `(i, ys[i])` for `i = 0, 1, ...`.
fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    debug_assert!(xs.iter().enumerate().all(|(i, &x)| x == i as u64));
    let inverses: Vec<u64> = (0..n as u64).map(|j| if j == 0 { 0 } else { inv(j, p) }).collect();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = mul(sub(dd[i], dd[i - 1], p), inverses[j], p);
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out * (t - xs[i]) + dd[i]
        for k in (1..n).rev() {
            out[k] = sub(out[k - 1], mul(out[k], xs[i], p), p);
        }
        out[0] = sub(dd[i], mul(out[0], xs[i], p), p);
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes_below_2_62() -> impl Iterator<Item = u64> {
    ((1u64 << 61) + 1..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::resultant;

    fn p(text: &str) -> MultiPoly {
        crate::io::parse::poly(text).remove_var(2)
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(561));
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let q = 1_000_000_007;
        let c = [5u64, 0, 3, 7];
        let xs: Vec<u64> = (0..4).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| horner(&c, x, q)).collect();
        assert_eq!(interpolate_mod(&xs, &ys, q), c);
    }

    #[test]
    fn matches_exact_resultant() {
        let cases = [
            ("y^2 - x^3", "2*y + x^2"),
            ("x*y^3 + 1/2*y - x^2", "y^2*x + 3*x^5 - 7"),
            ("y - x^2", "y*(y - 1)"),
            ("x^4*y^2 + y", "x^2 + y^3"),
        ];
        for (a, b) in cases {
            let exact = resultant(&p(a), &p(b), 1).unwrap();
            let expected = exact.order_in(0);
            assert_eq!(resultant_order(&p(a), &p(b), 1, 0), Some(expected), "{a}, {b}");
        }
    }

    #[test]
    fn common_factor_gives_zero() {
        assert_eq!(resultant_order(&p("(y - x)*(y + 1)"), &p("(y - x)*x"), 1, 0), Some(None));
    }
}
