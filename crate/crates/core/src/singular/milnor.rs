//! Local intersection multiplicity of two plane curves at the origin.

use crate::algebra::linalg::rank;
use crate::algebra::{resultant, resultant_order, Monomial, MultiPoly, Scalar, UniPoly};
use crate::error::{Error, Result};

/// `dim k[u,v]_(u,v) / (f, g)` for polynomials in two variables.
///
/// Uses Fulton's reduction: split off factors of `v` and cancel leading terms
/// of `f(u,0)` and `g(u,0)`. The value never exceeds `deg f · deg g` when the
/// curves share no component through the origin, so passing that bound means
/// the multiplicity is infinite.
pub fn intersection_multiplicity(f: &MultiPoly, g: &MultiPoly) -> Result<u32> {
    check_arity(f, g)?;
    let (Some(df), Some(dg)) = (f.total_degree(), g.total_degree()) else {
        return Err(Error::InfiniteMultiplicity);
    };
    fulton(f.clone(), g.clone(), df as u64 * dg as u64, false)
}

/// Like [`intersection_multiplicity`] for curves known to share no
/// component, given an upper bound for the answer.
///
/// Once the multiplicity still to be found is at most `k`, terms of total
/// degree above `k` no longer change the local ideal, so they are dropped as
/// the reduction proceeds. A bound that is too small gives wrong answers.
pub fn intersection_multiplicity_bounded(f: &MultiPoly, g: &MultiPoly, bound: u64) -> Result<u32> {
    check_arity(f, g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::InfiniteMultiplicity);
    }
    fulton(f.clone(), g.clone(), bound, true)
}

fn check_arity(f: &MultiPoly, g: &MultiPoly) -> Result<()> {
    if f.nvars() != 2 || g.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: if f.nvars() != 2 { f.nvars() } else { g.nvars() },
        });
    }
    Ok(())
}

fn truncate(p: &MultiPoly, max_degree: u64) -> MultiPoly {
    MultiPoly::from_terms(
        p.nvars(),
        p.terms()
            .iter()
            .filter(|(m, _)| m.degree() as u64 <= max_degree)
            .cloned(),
    )
}

fn fulton(mut f: MultiPoly, mut g: MultiPoly, bound: u64, trim: bool) -> Result<u32> {
    let mut acc: u64 = 0;
    loop {
        if acc > bound {
            return Err(Error::InfiniteMultiplicity);
        }
        if trim {
            f = truncate(&f, bound - acc);
            g = truncate(&g, bound - acc);
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return Ok(acc as u32);
        }
        let mut r = UniPoly::from_multi(&f.set_var(1, &Scalar::zero()), 0);
        let mut s = UniPoly::from_multi(&g.set_var(1, &Scalar::zero()), 0);
        if r.is_zero() && s.is_zero() {
            // v divides both
            return Err(Error::InfiniteMultiplicity);
        }
        let deg = |p: &UniPoly| p.degree().unwrap_or(usize::MAX);
        if deg(&r) > deg(&s) {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut r, &mut s);
        }
        if s.is_zero() {
            // g = v·h, and I(f, v) is the order of f(u, 0)
            let ord = r.coeffs().iter().position(|c| !c.is_zero()).unwrap();
            acc += ord as u64;
            g = g.shift_down(1, 1).primitive().1;
            continue;
        }
        let dr = r.degree().unwrap();
        let ds = s.degree().unwrap();
        let shift = Monomial::var(0, (ds - dr) as u32);
        let next = &g.scale(r.lc().unwrap()) - &f.mul_monomial(&shift, s.lc().unwrap());
        if next.is_zero() {
            return Err(Error::InfiniteMultiplicity);
        }
        g = next.primitive().1;
    }
}

/// Intersection multiplicity at the origin read off a resultant.
///
/// After a shear `u = s - k·v` chosen so that one polynomial has constant
/// leading coefficient in `v` and the fibre `s = 0` meets no other common
/// zero, the multiplicity is the order of `Res_v(f, g)` at `s = 0`: every
/// branch of one curve through the fibre contributes its order of contact
/// with the other, and only branches through the origin contribute.
pub fn intersection_multiplicity_by_projection(f: &MultiPoly, g: &MultiPoly) -> Result<u32> {
    check_arity(f, g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::InfiniteMultiplicity);
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(0);
    }
    let (df, dg) = (f.total_degree().unwrap(), g.total_degree().unwrap());
    let (f_top, g_top) = (f.homogeneous_part(df), g.homogeneous_part(dg));
    let u = MultiPoly::var(2, 0);
    let v = MultiPoly::var(2, 1);
    let zero = Scalar::zero();
    for k in shifts().take(4 * (df as usize * dg as usize + 2)) {
        let slope = [Scalar::from_int(-k), Scalar::one()];
        if f_top.eval(&slope).is_zero() && g_top.eval(&slope).is_zero() {
            continue;
        }
        let images = [&u - &v.scale(&Scalar::from_int(k)), v.clone()];
        let fk = f.substitute(&images)?;
        let gk = g.substitute(&images)?;
        let common = UniPoly::from_multi(&fk.set_var(0, &zero), 1)
            .gcd(&UniPoly::from_multi(&gk.set_var(0, &zero), 1));
        if common.coeffs().iter().filter(|c| !c.is_zero()).count() != 1 {
            // another common zero on the fibre
            continue;
        }
        if !fk.involves(1) && !gk.involves(1) {
            return Err(Error::Invariant("curves without v after shear".into()));
        }
        let ord = match resultant_order(&fk, &gk, 1, 0) {
            Some(ord) => ord,
            None => resultant(&fk, &gk, 1)?.order_in(0),
        };
        return ord.ok_or(Error::InfiniteMultiplicity);
    }
    Err(Error::Invariant("no admissible projection found".into()))
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

/// `dim k[u,v] / ((f, g) + m^k)` with `m = (u, v)`.
pub fn truncated_quotient_dimension(f: &MultiPoly, g: &MultiPoly, k: u32) -> usize {
    let monomials: Vec<Monomial> = (0..k)
        .flat_map(|d| (0..=d).map(move |i| Monomial::new(&[d - i, i])))
        .collect();
    let index = |m: &Monomial| monomials.iter().position(|x| x == m);
    let mut rows = Vec::new();
    for gen in [f, g] {
        for mult in &monomials {
            let shifted = gen.mul_monomial(mult, &Scalar::from_int(1));
            let mut row = vec![Scalar::zero(); monomials.len()];
            let mut any = false;
            for (m, c) in shifted.terms() {
                if let Some(i) = index(m) {
                    row[i] = c.clone();
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    monomials.len() - rank(&rows)
}

/// The local quotient dimension found by truncating at growing powers of the
/// maximal ideal until two successive values agree; `None` if that does not
/// happen below `max_k`.
pub fn quotient_dimension(f: &MultiPoly, g: &MultiPoly, max_k: u32) -> Option<usize> {
    let mut prev = truncated_quotient_dimension(f, g, 1);
    for k in 2..=max_k {
        let cur = truncated_quotient_dimension(f, g, k);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> MultiPoly {
        // u, v as x, y
        let q = crate::io::parse::poly(text);
        q.remove_var(2)
    }

    #[test]
    fn transversal_and_tangent_pairs() {
        assert_eq!(intersection_multiplicity(&p("x"), &p("y")).unwrap(), 1);
        assert_eq!(intersection_multiplicity(&p("y"), &p("x^2")).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&p("y - x^2"), &p("y")).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&p("y^2 - x^3"), &p("y")).unwrap(), 3);
        assert_eq!(intersection_multiplicity(&p("x + 1"), &p("y")).unwrap(), 0);
    }

    #[test]
    fn projection_ignores_other_common_zeros() {
        // a second intersection at (0, 1) lies on the first fibre tried
        let f = p("x");
        let g = p("y*(y - 1) + x");
        assert_eq!(intersection_multiplicity_by_projection(&f, &g).unwrap(), 1);
        let f = p("y - x^2");
        let g = p("y*(y - 1)");
        assert_eq!(intersection_multiplicity_by_projection(&f, &g).unwrap(), 2);
    }

    #[test]
    fn common_component_is_infinite() {
        assert!(matches!(
            intersection_multiplicity_by_projection(&p("x*y"), &p("x")),
            Err(Error::InfiniteMultiplicity)
        ));
        assert!(matches!(
            intersection_multiplicity(&p("x*y"), &p("x")),
            Err(Error::InfiniteMultiplicity)
        ));
        assert!(matches!(
            intersection_multiplicity(&p("x*y + x^2"), &p("x^3 - x*y^2")),
            Err(Error::InfiniteMultiplicity)
        ));
    }

    #[test]
    fn agrees_with_truncated_quotients() {
        let cases = [
            ("y^2 - x^3", "2*y"),
            ("y^2 - x^3", "x^2 + y^3"),
            ("x^3 + y^4", "x*y + y^5"),
            ("x^2 - y^3 + x*y", "y^2 + x^3"),
            ("(x - y)^2 + x^3", "x*y + y^3"),
        ];
        for (a, b) in cases {
            let fulton = intersection_multiplicity(&p(a), &p(b)).unwrap() as usize;
            assert_eq!(Some(fulton), quotient_dimension(&p(a), &p(b), 20), "{a}, {b}");
            let projected = intersection_multiplicity_by_projection(&p(a), &p(b)).unwrap() as usize;
            assert_eq!(projected, fulton, "{a}, {b}");
            let bounded = intersection_multiplicity_bounded(&p(a), &p(b), fulton as u64).unwrap() as usize;
            assert_eq!(bounded, fulton, "{a}, {b}");
        }
    }
}
