use frobdiv::algebra::{Ambient, VarietySpec};
use frobdiv::counting::{count_exhaustive, CountOptions};
use frobdiv::padic::{newton_polygon, WeightOptions};
use frobdiv::verify::{
    closure_and_infinity, estimate_dimension, probe_affine, verify_ax_katz, verify_excision,
    verify_projective_bounds, ProbeStatus, Verdict, VerifyOptions,
};
use frobdiv::zeta::{
    factor_integer_poly, pade_reconstruct, series_from_sequence, zeta_with_counts, ZetaFunction,
    ZetaOptions,
};
use frobdiv::IntPoly;
use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

fn spec(p: u64, e: u32, amb: Ambient, n: usize, polys: &[&str]) -> VarietySpec {
    VarietySpec::parse(p, e, amb, n, polys).unwrap()
}

fn ip(v: &[i64]) -> IntPoly {
    IntPoly::new(v.iter().map(|&x| BigInt::from(x)).collect())
}

fn small_cases() -> Vec<VarietySpec> {
    vec![
        spec(2, 1, Ambient::Affine, 2, &["x1^2 + x1*x2 + x2^2 + 1"]),
        spec(3, 1, Ambient::Affine, 2, &["x2^2 - x1^3 - 1"]),
        spec(5, 1, Ambient::Affine, 2, &["x1^2 - 2*x2^2 - 1"]),
        spec(2, 2, Ambient::Affine, 2, &["x1*x2 + x1 + 1"]),
        spec(3, 1, Ambient::Projective, 2, &["x0*x1 - x2^2"]),
        spec(2, 1, Ambient::Projective, 2, &["x0^3 + x1^3 + x2^3"]),
        spec(3, 1, Ambient::Affine, 3, &["x1 + x2^2", "x3 - x1*x2"]),
    ]
}

// The fitted zeta function predicts counts beyond those used to fit it; an
// independent brute-force evaluation must agree.
#[test]
fn zeta_predicts_exhaustive_counts() {
    for s in small_cases() {
        let (z, used) = zeta_with_counts(&s, false, &ZetaOptions::default()).unwrap();
        let m = used.len();
        let predicted = z.counts(m + 1);
        for k in 1..=(m as u32 + 1) {
            // keep the brute-force oracle small
            if (s.q() as f64).powi((k as usize * s.slots()) as i32) > 2e6 {
                break;
            }
            let brute = match count_exhaustive(&s, k) {
                Ok(n) => n,
                Err(_) => break,
            };
            assert_eq!(
                predicted[k as usize - 1],
                BigInt::from(brute),
                "{s:?} at k = {k}"
            );
        }
    }
}

#[test]
fn variety_and_complement_multiply_to_ambient() {
    let opts = ZetaOptions::default();
    for s in small_cases() {
        let (zx, _) = zeta_with_counts(&s, false, &opts).unwrap();
        let (zc, _) = zeta_with_counts(&s, true, &opts).unwrap();
        let ambient = match s.ambient() {
            Ambient::Affine => ZetaFunction::tate(s.q(), &[s.n() as u32]),
            Ambient::Projective => {
                ZetaFunction::tate(s.q(), &(0..=s.n() as u32).collect::<Vec<_>>())
            }
        };
        assert_eq!(zx.mul(&zc).unwrap(), ambient, "{s:?}");
    }
}

#[test]
fn elliptic_curve_dimension_and_bounds() {
    // y^2 z = x^3 - x z^2 + z^3 over F_3 (smooth: the cubic has no repeated root)
    let s = spec(
        3,
        1,
        Ambient::Projective,
        2,
        &["x1^2*x2 - x0^3 + x0*x2^2 - x2^3"],
    );
    let (z, _) = zeta_with_counts(&s, false, &ZetaOptions::default()).unwrap();
    assert_eq!(z.denominator(), &ip(&[1, -4, 3]));
    assert_eq!(z.numerator().degree(), Some(2));
    assert_eq!(
        estimate_dimension(&z, &WeightOptions::default()).unwrap(),
        1
    );
    let r = verify_projective_bounds(&s, &VerifyOptions::default()).unwrap();
    assert_eq!(r.overall, Verdict::Pass);
    // the weight-1 numerator is checked against the baseline exponent 0
    let h1 = r.variety.rows.iter().find(|row| row.weight == 1).unwrap();
    assert!(h1.required <= 1);
}

#[test]
fn projective_ax_katz_uses_cone_and_complement() {
    let s = spec(3, 1, Ambient::Projective, 3, &["x0^2 + x1^2 + x2^2 + x3^2"]);
    let r = verify_ax_katz(&s, 2, &CountOptions::default()).unwrap();
    assert_eq!(r.mu, 1);
    let forms: Vec<&str> = r.rows.iter().map(|row| row.form.as_str()).collect();
    assert_eq!(forms, ["complement", "cone", "complement", "cone"]);
    assert_eq!(r.overall, Verdict::Pass);
}

#[test]
fn excision_for_points_at_infinity_of_a_line() {
    let s = spec(5, 1, Ambient::Affine, 1, &["x1^2 - 2"]);
    let (y, y_inf) = closure_and_infinity(&s).unwrap();
    assert_eq!(y.n(), 1);
    assert_eq!(y_inf.n(), 0);
    let r = verify_excision(&s, 3, &CountOptions::default()).unwrap();
    assert_eq!(r.overall, Verdict::Pass);
    // x^2 = 2 has no root over F_5 and two over F_25
    assert_eq!(r.rows[0].affine_complement, 5);
    assert_eq!(r.rows[1].affine_complement, 23);
}

#[test]
fn probe_on_hypersurfaces() {
    let opts = VerifyOptions::default();
    for s in [
        spec(3, 1, Ambient::Affine, 2, &["x1*x2 - 1"]),
        spec(2, 1, Ambient::Affine, 2, &["x2^2 + x2 - x1^3"]),
    ] {
        let r = probe_affine(&s, &opts).unwrap();
        assert_eq!(
            r.violations,
            r.variety
                .iter()
                .chain(&r.complement)
                .filter(|x| !x.pass)
                .count()
        );
        assert_eq!(r.status == ProbeStatus::Satisfied, r.violations == 0);
    }
}

#[test]
fn budget_propagates_to_reports() {
    let s = spec(3, 1, Ambient::Projective, 3, &["x0^2 + x1^2 + x2^2 + x3^2"]);
    let r = verify_projective_bounds(&s, &VerifyOptions::with_budget(50)).unwrap();
    assert_eq!(r.overall, Verdict::Error);
    assert!(r.complement.error.as_deref().unwrap().contains("budget"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // (1 - aT)(1 - bT) / (1 - cT) from the series prefix alone
    #[test]
    fn pade_recovers_rational_functions(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9) {
        let num = &ip(&[1, -a]) * &ip(&[1, -b]);
        let den = ip(&[1, -c]);
        let z = ZetaFunction::new(7, num, den).unwrap();
        let series = frobdiv::zeta::SeriesPrefix::new(z.series(6)).unwrap();
        let (p, q) = pade_reconstruct(&series, 3).unwrap();
        prop_assert_eq!(&p, z.numerator());
        prop_assert_eq!(&q, z.denominator());
        // counts give back the same series
        let counts = z.counts(6);
        let again = series_from_sequence(&counts, 6);
        if let Ok(s) = again {
            prop_assert_eq!(s.coeffs(), &z.series(6)[..]);
        }
    }

    #[test]
    fn factors_multiply_back(coeffs in proptest::collection::vec(-20i64..=20, 2..7)) {
        let mut c = coeffs.clone();
        c[0] = 1;
        let f = ip(&c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let mut prod = IntPoly::one();
        for (g, m) in factor_integer_poly(&f).unwrap() {
            prod = &prod * &g.pow(m);
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn newton_slopes_sum_to_valuation_drop(a in 0u32..4, b in 0u32..4, u in 1i64..5) {
        let f = &ip(&[1, -(u * 3i64.pow(a))]) * &ip(&[1, -(3i64.pow(b))]);
        let np = newton_polygon(&f, 3).unwrap();
        let total: Ratio<i64> = np.slope_multiset().into_iter().sum();
        let expect = if u == 3 { a + b + 1 } else { a + b };
        prop_assert_eq!(total, Ratio::from_integer(expect as i64));
    }
}

fn row_summary(r: &frobdiv::verify::ProjectiveReport) -> Vec<(String, u32, u32, bool)> {
    let mut rows: Vec<_> = r
        .complement
        .rows
        .iter()
        .chain(&r.variety.rows)
        .map(|row| (row.factor.to_string(), row.weight, row.required, row.pass))
        .collect();
    rows.sort();
    rows
}

#[test]
fn projective_report_ignores_relabeling_and_scaling() {
    let opts = VerifyOptions::default();
    let base = spec(3, 1, Ambient::Projective, 2, &["x1^2*x2 - x0^2*(x0 + x2)"]);
    let relabeled = base.permute_variables(&[2, 0, 1]).unwrap();
    let scaled = spec(
        3,
        1,
        Ambient::Projective,
        2,
        &["2*x1^2*x2 - 2*x0^2*(x0 + x2)"],
    );
    let want = row_summary(&verify_projective_bounds(&base, &opts).unwrap());
    assert_eq!(
        row_summary(&verify_projective_bounds(&relabeled, &opts).unwrap()),
        want
    );
    assert_eq!(
        row_summary(&verify_projective_bounds(&scaled, &opts).unwrap()),
        want
    );
}

#[test]
fn estimated_dimension_of_complete_intersections() {
    let opts = VerifyOptions::default();
    for s in [
        spec(3, 1, Ambient::Projective, 2, &["x0 + x1 + x2"]),
        spec(2, 1, Ambient::Projective, 2, &["x0^3 + x1^3 + x2^3"]),
        spec(3, 1, Ambient::Projective, 3, &["x0^2 + x1^2 + x2^2 + x3^2"]),
        spec(
            3,
            1,
            Ambient::Projective,
            3,
            &["x0*x1 - x2*x3", "x0^2 + x1^2 - x2^2 + x3^2 + x0*x2"],
        ),
    ] {
        let r = verify_projective_bounds(&s, &opts).unwrap();
        assert_eq!(r.dim_used, Some(s.n() as i64 - s.r() as i64), "{s:?}");
    }
}

#[test]
fn required_exponents_are_reproducible() {
    let s = spec(3, 1, Ambient::Projective, 3, &["x0^2 + x1^2 + x2^2 + x3^2"]);
    let r = verify_projective_bounds(&s, &VerifyOptions::default()).unwrap();
    for row in r.complement.rows.iter().chain(&r.variety.rows) {
        if let Some(args) = &row.mu_args {
            assert_eq!(frobdiv::mu::compute_mu(args).unwrap(), row.required);
            assert_eq!(args.n, 4);
            assert_eq!(args.degrees, vec![2]);
        }
        assert!(!row.justification.is_empty());
    }
}
