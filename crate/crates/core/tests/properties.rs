use folia::algebra::{factor_univariate, gcd_list, gcd_poly, resultant, Monomial, MultiPoly, Scalar};
use folia::birational::{pullback_linear, pullback_quadratic, BuiltinMap, LinearFrame, QuadraticMap};
use folia::io::parse::{parse_form, Params};
use folia::singular::{milnor_number, singular_records, SingularRecord};
use folia::{FoliationForm, ProjectiveLine, ProjectivePoint};
use proptest::prelude::*;

fn poly_strategy(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -4i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MultiPoly::from_terms(
            nvars,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::new(&e), Scalar::from_int(c))),
        )
    })
}

fn linear(c: &[i64]) -> MultiPoly {
    MultiPoly::from_terms(
        3,
        (0..3).map(|i| (Monomial::var(i, 1), Scalar::from_int(c[i]))),
    )
}

/// The form `i_R (dx ∧ dy ∧ dz)` of the vector field with components built
/// from `coeffs` (3 per linear component, 6 per quadratic one).
fn field_form(coeffs: &[i64]) -> Option<FoliationForm> {
    let comps: Vec<MultiPoly> = if coeffs.len() == 9 {
        coeffs.chunks(3).map(linear).collect()
    } else {
        let monos = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
        coeffs
            .chunks(6)
            .map(|c| {
                MultiPoly::from_terms(
                    3,
                    monos.iter().zip(c).map(|(m, &k)| (Monomial::new(m), Scalar::from_int(k))),
                )
            })
            .collect()
    };
    let (x, y, z) = (MultiPoly::var(3, 0), MultiPoly::var(3, 1), MultiPoly::var(3, 2));
    let a = &(&y * &comps[2]) - &(&z * &comps[1]);
    let b = &(&z * &comps[0]) - &(&x * &comps[2]);
    let c = &(&x * &comps[1]) - &(&y * &comps[0]);
    FoliationForm::new(a, b, c).ok()
}

fn linear_field() -> impl Strategy<Value = Option<FoliationForm>> {
    prop::collection::vec(-3i64..=3, 9).prop_map(|c| field_form(&c))
}

fn quadratic_field() -> impl Strategy<Value = Option<FoliationForm>> {
    prop::collection::vec(-2i64..=2, 18).prop_map(|c| field_form(&c))
}

fn determinant_of_linear_part(form: &FoliationForm, p: &ProjectivePoint) -> Scalar {
    let chart = form.affine_chart(p.chart());
    let [iu, iv] = match p.chart() {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    let shift = |var: usize, c: &Scalar| &MultiPoly::var(2, var) + &MultiPoly::constant(2, c.clone());
    let images = [shift(0, &p.coords()[iu]), shift(1, &p.coords()[iv])];
    let e = chart.e.substitute(&images).unwrap();
    let f = chart.f.substitute(&images).unwrap();
    let d = |p: &MultiPoly, i: usize| p.coeff(&Monomial::var(i, 1));
    &(&d(&e, 0) * &d(&f, 1)) - &(&d(&e, 1) * &d(&f, 0))
}

fn mu_multiset(records: &[SingularRecord]) -> Vec<(usize, u32)> {
    let mut v: Vec<(usize, u32)> = records.iter().map(|r| (r.location.size(), r.mu)).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_both_inputs(
        a in poly_strategy(2, 2, 3),
        b in poly_strategy(2, 2, 3),
        h in poly_strategy(2, 2, 3),
    ) {
        let f = &a * &h;
        let g = &b * &h;
        let d = gcd_poly(&f, &g).unwrap();
        if !f.is_zero() || !g.is_zero() {
            prop_assert!(!d.is_zero());
            prop_assert!(f.div_exact(&d).is_some());
            prop_assert!(g.div_exact(&d).is_some());
            if !h.is_zero() {
                prop_assert!(d.div_exact(&h).is_some(), "gcd {} misses {}", d, h);
            }
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor_in_var(
        a in poly_strategy(2, 2, 3),
        b in poly_strategy(2, 2, 3),
        h in poly_strategy(2, 1, 2),
    ) {
        let f = &a * &h;
        let g = &b * &h;
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(f.involves(0) || g.involves(0));
        let r = resultant(&f, &g, 0).unwrap();
        let d = gcd_poly(&f, &g).unwrap();
        prop_assert_eq!(r.is_zero(), d.degree_in(0).unwrap_or(0) > 0);
    }

    #[test]
    fn factorization_multiplies_back(f in poly_strategy(1, 6, 4)) {
        prop_assume!(!f.is_zero());
        let fac = factor_univariate(&f).unwrap();
        prop_assert_eq!(fac.expand(1), f);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        f in poly_strategy(3, 2, 3),
        g in poly_strategy(3, 2, 3),
        images in prop::collection::vec(poly_strategy(2, 1, 3), 3),
    ) {
        let s = |p: &MultiPoly| p.substitute(&images).unwrap();
        prop_assert_eq!(s(&(&f * &g)), &s(&f) * &s(&g));
        prop_assert_eq!(s(&(&f + &g)), &s(&f) + &s(&g));
    }

    #[test]
    fn substitution_multiplies_homogeneous_degrees(
        f in poly_strategy(3, 2, 4),
        images in prop::collection::vec(poly_strategy(3, 2, 3), 3),
        d in 1u32..=3,
        e in 1u32..=2,
    ) {
        let f = f.homogeneous_part(d);
        let images: Vec<MultiPoly> = images.iter().map(|p| p.homogeneous_part(e)).collect();
        let out = f.substitute(&images).unwrap();
        if !out.is_zero() {
            prop_assert!(out.is_homogeneous());
            prop_assert_eq!(out.total_degree(), Some(d * e));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn forms_are_coprime_and_print_parse_round_trip(f in linear_field()) {
        let Some(f) = f else { return Ok(()) };
        prop_assert!(gcd_list(f.coeffs()).is_constant());
        prop_assert_eq!(f.euler_residual(), MultiPoly::zero(3));
        let back = parse_form(&f.to_string(), &Params::new()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), f.to_string());
    }

    #[test]
    fn restriction_vanishes_exactly_on_invariant_lines(
        f in linear_field(),
        line in prop::collection::vec(-2i64..=2, 3),
    ) {
        let Some(f) = f else { return Ok(()) };
        let Ok(line) = ProjectiveLine::from_ints([line[0], line[1], line[2]]) else { return Ok(()) };
        let r = f.restrict_to_line(&line).unwrap();
        prop_assert_eq!(r.is_zero(), f.is_line_invariant(&line).unwrap());
        if !r.is_zero() {
            prop_assert!(r.ds.total_degree().unwrap_or(0) <= f.degree() + 1);
            prop_assert!(r.dt.total_degree().unwrap_or(0) <= f.degree() + 1);
        }
    }

    #[test]
    fn simple_points_are_those_with_invertible_linear_part(f in linear_field()) {
        let Some(f) = f else { return Ok(()) };
        let Ok(records) = singular_records(&f) else { return Ok(()) };
        for r in &records {
            let p = r.location.member();
            let det = determinant_of_linear_part(&f, &p);
            prop_assert_eq!(r.mu == 1, !det.is_zero(), "{} at {}", f, p);
            prop_assert!(f.coeffs().iter().all(|c| p.eval(c).is_zero()));
        }
    }

    #[test]
    fn singular_locus_does_not_depend_on_the_chart(
        f in linear_field(),
        m in prop::collection::vec(-2i64..=2, 9),
    ) {
        let Some(f) = f else { return Ok(()) };
        let matrix = std::array::from_fn(|i| std::array::from_fn(|j| Scalar::from_int(m[3 * i + j])));
        let Ok(frame) = LinearFrame::new(matrix) else { return Ok(()) };
        let Ok(records) = singular_records(&f) else { return Ok(()) };
        let g = pullback_linear(&f, &frame).unwrap();
        let moved = singular_records(&g).unwrap();
        prop_assert_eq!(mu_multiset(&records), mu_multiset(&moved));
        for r in &records {
            let image = frame.to_new(&r.location.member());
            let hit = moved.iter().find(|s| s.location.contains(&image));
            prop_assert!(hit.is_some_and(|s| s.mu == r.mu), "{} lost under {}", r.location, frame);
        }
    }

    #[test]
    fn quadratic_pullback_keeps_euler_and_darboux(f in linear_field(), which in 0usize..3) {
        let Some(f) = f else { return Ok(()) };
        let map = QuadraticMap::builtin(BuiltinMap::ALL[which]);
        let (g, _) = pullback_quadratic(&f, &map).unwrap();
        prop_assert_eq!(g.euler_residual(), MultiPoly::zero(3));
        prop_assert!(gcd_list(g.coeffs()).is_constant());
        let records = singular_records(&g).unwrap();
        let n = g.degree() as u64;
        let total: u64 = records.iter().map(|r| r.location.size() as u64 * r.mu as u64).sum();
        prop_assert_eq!(total, n * n + n + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadratic_fields_satisfy_darboux(f in quadratic_field()) {
        let Some(f) = f else { return Ok(()) };
        let records = singular_records(&f).unwrap();
        let n = f.degree() as u64;
        let total: u64 = records.iter().map(|r| r.location.size() as u64 * r.mu as u64).sum();
        prop_assert_eq!(total, n * n + n + 1, "{}", f);
        for r in &records {
            prop_assert_eq!(milnor_number(&f, &r.location.member()).unwrap(), r.mu);
        }
    }
}
