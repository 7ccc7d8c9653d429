//! Multivariate gcd by recursion on one variable: contents are gcds over
//! fewer variables, primitive parts go through a primitive pseudo-remainder
//! sequence, and univariate inputs use the dense Euclidean algorithm.

use super::poly::{Monomial, MultiPoly};
use super::scalar::Scalar;
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// Normalized gcd: integer-primitive with positive leading coefficient over ℚ,
/// monic over an extension. `gcd(0, 0) = 0`.
pub fn gcd_poly(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    match (f.field()?, g.field()?) {
        (Some(a), Some(b)) if a != b => return Err(Error::MixedFields),
        _ => {}
    }
    Ok(gcd_list(&[f.clone(), g.clone()]))
}

/// Normalized gcd of several polynomials of one arity and field.
pub fn gcd_list(polys: &[MultiPoly]) -> MultiPoly {
    let nvars = polys.first().map_or(0, MultiPoly::nvars);
    let nonzero: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return MultiPoly::zero(nvars);
    }
    if nonzero.len() == 1 {
        return normalize(nonzero[0]);
    }

    // common monomial factor
    let mut mono = [0u32; 3];
    for (v, e) in mono.iter_mut().enumerate().take(nvars) {
        *e = nonzero.iter().map(|p| p.order_in(v).unwrap()).min().unwrap();
    }
    let mono = Monomial::new(&mono[..nvars]);
    let stripped: Vec<MultiPoly> = nonzero.iter().map(|p| strip_monomial(p)).collect();
    let mono_poly = MultiPoly::monomial(nvars, mono, Scalar::one());

    if stripped.iter().any(MultiPoly::is_constant) || coprime_certificate(&stripped) {
        return mono_poly;
    }
    let mut g = stripped[0].clone();
    for p in &stripped[1..] {
        g = gcd_rec(&g, p);
        if g.is_constant() {
            return mono_poly;
        }
    }
    normalize(&(&mono_poly * &g))
}

fn strip_monomial(p: &MultiPoly) -> MultiPoly {
    let mut q = p.clone();
    for v in 0..p.nvars() {
        let k = q.order_in(v).unwrap_or(0);
        if k > 0 {
            q = q.shift_down(v, k);
        }
    }
    q
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    p.primitive().1
}

/// Proves `gcd(polys) = 1` by specializing all but one variable at a time:
/// if the leading coefficient of one input survives the specialization, the
/// gcd's degree in the kept variable is bounded by the degree of the
/// specialized gcd.
fn coprime_certificate(polys: &[MultiPoly]) -> bool {
    let nvars = polys[0].nvars();
    'vars: for v in 0..nvars {
        if polys.iter().any(|p| !p.involves(v)) {
            continue;
        }
        let pivot = polys
            .iter()
            .min_by_key(|p| p.degree_in(v).unwrap_or(0))
            .unwrap();
        let lc = pivot.lc_in(v);
        for trial in 0..3i64 {
            let point: Vec<Scalar> = (0..nvars)
                .map(|i| {
                    if i == v {
                        Scalar::zero()
                    } else {
                        Scalar::from_int(2 + trial * 7 + (i as i64) * (i as i64 + trial + 3))
                    }
                })
                .collect();
            if lc.eval(&point).is_zero() {
                continue;
            }
            let mut g: Option<UniPoly> = None;
            for p in polys {
                let mut q = p.clone();
                for (i, val) in point.iter().enumerate() {
                    if i != v {
                        q = q.set_var(i, val);
                    }
                }
                let u = UniPoly::from_multi(&q, v);
                g = Some(match g {
                    None => u,
                    Some(acc) => acc.gcd(&u),
                });
                if g.as_ref().unwrap().degree() == Some(0) {
                    continue 'vars;
                }
            }
        }
        return false;
    }
    true
}

fn variables(p: &MultiPoly) -> Vec<usize> {
    (0..p.nvars()).filter(|&v| p.involves(v)).collect()
}

/// Unnormalized gcd; both inputs nonzero.
fn gcd_rec(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let nvars = f.nvars();
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(nvars);
    }
    let mut vars = variables(f);
    for v in variables(g) {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    if vars.len() == 1 {
        let v = vars[0];
        let u = UniPoly::from_multi(f, v).gcd(&UniPoly::from_multi(g, v));
        return u.to_multi(nvars, v);
    }
    // main variable: present in both with the largest degree
    let v = *vars
        .iter()
        .max_by_key(|&&v| {
            (
                f.involves(v) && g.involves(v),
                f.degree_in(v).unwrap_or(0).max(g.degree_in(v).unwrap_or(0)),
            )
        })
        .unwrap();
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_rec(&cf, &cg);
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    let h = primitive_prs(pf, pg, v);
    &c * &h
}

/// gcd of the coefficients with respect to `v`.
fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = p.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(MultiPoly::len);
    let mut g = coeffs[0].clone();
    for c in &coeffs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, c);
    }
    if g.is_constant() {
        MultiPoly::one(p.nvars())
    } else {
        normalize(&g)
    }
}

fn primitive_part_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
pub(crate) fn prem_in(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v).unwrap_or(0);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v).unwrap_or(0) >= db {
        let dr = r.degree_in(v).unwrap();
        let lr = r.lc_in(v);
        let shift = MultiPoly::monomial(a.nvars(), Monomial::var(v, dr - db), Scalar::one());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

/// gcd of two polynomials primitive with respect to `v`.
fn primitive_prs(mut a: MultiPoly, mut b: MultiPoly, v: usize) -> MultiPoly {
    let nvars = a.nvars();
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return a;
        }
        if b.degree_in(v) == Some(0) {
            return MultiPoly::one(nvars);
        }
        let r = prem_in(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}
