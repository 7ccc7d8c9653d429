//! Exact arithmetic: scalars over ℚ and simple extensions, sparse
//! multivariate polynomials, gcds, resultants and univariate factorization.

mod factor;
mod gcd;
pub mod linalg;
mod modular;
mod poly;
mod resultant;
mod scalar;
mod univariate;

pub use factor::{factor_univariate, Factorization, MAX_SEARCH_DEGREE};
pub use gcd::{gcd_list, gcd_poly};
pub use modular::resultant_order;
pub use poly::{Monomial, MultiPoly, PolyDisplay, MAX_VARS};
pub use resultant::{resultant, sylvester_resultant};
pub use scalar::{frac, rat, Algebraic, NumberField, Rational, Scalar};
pub use univariate::{IntPoly, UniPoly};

pub(crate) use factor::{factor_rational, irreducible_factors};
pub(crate) use scalar::qpoly;

use crate::error::{Error, Result};

/// Checked constructor for `ℚ[t]/(minpoly)`.
///
/// The polynomial must be univariate over ℚ, monic, of degree at least two
/// and irreducible. A reducible input is rejected with its first factor.
pub fn extend_field(minpoly: &MultiPoly) -> Result<NumberField> {
    let text = minpoly.to_string();
    if minpoly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars: Vec<usize> = (0..minpoly.nvars()).filter(|&v| minpoly.involves(v)).collect();
    if vars.len() > 1 || !minpoly.is_rational() {
        return Err(Error::NotUnivariate(text));
    }
    let var = vars.first().copied().unwrap_or(0);
    let u = UniPoly::from_multi(minpoly, var);
    if u.degree().unwrap_or(0) < 2 {
        return Err(Error::DegreeTooSmall(text));
    }
    if !u.lc().unwrap().is_one() {
        return Err(Error::NotMonic(text));
    }
    let (_, factors) = factor_rational(&u)?;
    if factors.len() > 1 || factors[0].1 > 1 {
        let f = &factors[0].0;
        return Err(Error::Reducible {
            factor: f.to_multi(minpoly.nvars(), var).to_string(),
        });
    }
    Ok(NumberField::new_unchecked(u.to_rationals().unwrap()))
}
