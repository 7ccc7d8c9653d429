//! Sylvester resultants.
//!
//! Two routes compute the same polynomial: a fraction-free (Bareiss)
//! determinant of the Sylvester matrix over the polynomial ring, and, when the
//! result is univariate, evaluation at integer points followed by Newton
//! interpolation. [`resultant`] picks the second whenever it applies.

use super::poly::MultiPoly;
use super::scalar::Scalar;
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// `Res_var(f, g)` as a polynomial in the remaining variables (same arity,
/// `var` absent). Zero iff `f` and `g` share a factor of positive degree in
/// `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    check_inputs(f, g, var)?;
    let others: Vec<usize> = (0..f.nvars())
        .filter(|&v| v != var && (f.involves(v) || g.involves(v)))
        .collect();
    match others.as_slice() {
        [] | [_] => Ok(resultant_interpolated(f, g, var, others.first().copied())),
        _ => Ok(sylvester_resultant_unchecked(f, g, var)),
    }
}

/// The Bareiss route, exposed so both routes can be checked against each other.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    check_inputs(f, g, var)?;
    Ok(sylvester_resultant_unchecked(f, g, var))
}

fn check_inputs(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<()> {
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    if var >= f.nvars() || (!f.involves(var) && !g.involves(var)) {
        return Err(Error::MissingVariable(var));
    }
    match (f.field()?, g.field()?) {
        (Some(a), Some(b)) if a != b => Err(Error::MixedFields),
        _ => Ok(()),
    }
}

fn sylvester_resultant_unchecked(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let nvars = f.nvars();
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero(nvars);
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let n = fc.len() - 1;
    let m = gc.len() - 1;
    let size = n + m;
    if size == 0 {
        return MultiPoly::one(nvars);
    }
    let zero = MultiPoly::zero(nvars);
    let mut mat = vec![vec![zero; size]; size];
    // rows 0..m: shifts of f (highest coefficient first), rows m..m+n: shifts of g
    for i in 0..m {
        for (k, c) in fc.iter().enumerate() {
            mat[i][i + n - k] = c.clone();
        }
    }
    for i in 0..n {
        for (k, c) in gc.iter().enumerate() {
            mat[m + i][i + m - k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant with exact divisions.
fn bareiss_det(mut mat: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let size = mat.len();
    let nvars = mat[0][0].nvars();
    let mut prev = MultiPoly::one(nvars);
    let mut negate = false;
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        if k + 1 == size {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = MultiPoly::zero(nvars);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant when at most one other variable `other` occurs.
fn resultant_interpolated(
    f: &MultiPoly,
    g: &MultiPoly,
    var: usize,
    other: Option<usize>,
) -> MultiPoly {
    let nvars = f.nvars();
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero(nvars);
    }
    let n = f.degree_in(var).unwrap();
    let m = g.degree_in(var).unwrap();
    let Some(w) = other else {
        let v = formal_resultant(&UniPoly::from_multi(f, var), n, &UniPoly::from_multi(g, var), m);
        return MultiPoly::constant(nvars, v);
    };
    let bound = (f.total_degree().unwrap() * g.total_degree().unwrap()) as usize;
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        let x = Scalar::from_int(i as i64);
        let fi = UniPoly::from_multi(&f.set_var(w, &x), var);
        let gi = UniPoly::from_multi(&g.set_var(w, &x), var);
        ys.push(formal_resultant(&fi, n, &gi, m));
        xs.push(x);
    }
    newton_interpolate(&xs, &ys).to_multi(nvars, w)
}

/// Sylvester determinant for formal degrees `n >= deg f`, `m >= deg g`.
fn formal_resultant(f: &UniPoly, n: u32, g: &UniPoly, m: u32) -> Scalar {
    if m == 0 {
        return g.coeff(0).pow(n);
    }
    if n == 0 {
        return f.coeff(0).pow(m);
    }
    match (f.degree(), g.degree()) {
        (None, _) | (_, None) => Scalar::zero(),
        (Some(a), Some(b)) => {
            let (a, b) = (a as u32, b as u32);
            if a == n {
                // Res_{n,m} = lc(f)^(m - b) Res_{n,b}
                f.lc().unwrap().pow(m - b) * f.resultant(g)
            } else if b == m {
                // Res_{n,m}(f,g) = (-1)^(nm) lc(g)^(n - a) Res_{m,a}(g,f)
                let sign = if (n * m) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
                sign * g.lc().unwrap().pow(n - a) * g.resultant(f)
            } else {
                // both leading coefficients vanish: first column of the matrix is zero
                Scalar::zero()
            }
        }
    }
}

/// Newton divided differences; returns the interpolating polynomial.
pub(crate) fn newton_interpolate(xs: &[Scalar], ys: &[Scalar]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &xs[i] - &xs[i - j];
            coef[i] = &num / &den;
        }
    }
    let mut p = UniPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p.mul(&UniPoly::linear_root(&xs[i])).add(&UniPoly::constant(coef[i].clone()));
    }
    p
}
