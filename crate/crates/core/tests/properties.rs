use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use paramod::characters::{enumerate_characters, DirichletCharacter};
use paramod::convolution::{dirichlet_d, twist_coeffs, CoeffSeries};
use paramod::epstein::{epstein_continued, epstein_direct, epstein_direct_completed, DirectMode, EpsteinParams};
use paramod::majorant::{det4, mul4, pz_form, quad_form, siegel_action, transpose4, Mat4, SiegelPoint};
use paramod::qfield::{rat, QuadExt};
use paramod::report::{emit_report, Case, Format, VerificationReport};
use paramod::symplectic::{
    extended_char_angle, level_generators, make_generator, make_hp, pdt_bezout, preserves_j, row_matches,
    similitude_member, Generator, Group, GroupContext, SignChoice, SpMatrix,
};

const RADICANDS: [u64; 4] = [2, 3, 5, 7];

fn quad(p: u64) -> impl Strategy<Value = QuadExt> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(move |(a, da, b, db)| QuadExt::new(rat(a, da), rat(b, db), p).unwrap())
}

fn quad_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    prop::sample::select(RADICANDS.to_vec()).prop_flat_map(|p| (quad(p), quad(p), quad(p)))
}

fn ulp(x: f64) -> f64 {
    (f64::from_bits(x.abs().to_bits() + 1) - x.abs()).abs()
}

proptest! {
    #[test]
    fn quad_field_axioms((x, y, z) in quad_triple()) {
        prop_assert_eq!((&x * &y) * z.clone(), x.clone() * (&y * &z));
        prop_assert_eq!((&x + &y) + z.clone(), x.clone() + (&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn quad_inverse_is_exact((x, _, _) in quad_triple()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inverse().unwrap(), QuadExt::one());
    }

    #[test]
    fn embedding_is_multiplicative_to_two_ulp((x, y, _) in quad_triple()) {
        let xy = (&x * &y).embed_real(53).unwrap();
        let prod = x.embed_real(53).unwrap() * y.embed_real(53).unwrap();
        prop_assert!((xy - prod).abs() <= 2.0 * ulp(xy), "{xy} vs {prod}");
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn j_generator() -> impl Strategy<Value = SpMatrix> {
    prop_oneof![
        (-20i64..20, 1i64..6).prop_map(|(n, d)| make_generator(&Generator::MEta(rat(n, d))).unwrap()),
        (-9i64..9, -9i64..9)
            .prop_filter("primitive", |&(a, b)| gcd(a, b) == 1)
            .prop_map(|(a, b)| make_generator(&Generator::MLambda([a, b])).unwrap()),
        Just(make_generator(&Generator::J).unwrap()),
        prop::sample::select(vec![(1u64, 6u64), (2, 6), (3, 6), (1, 10), (5, 10), (1, 7)]).prop_map(|(d, t)| {
            let (x, y) = pdt_bezout(d, t).unwrap();
            make_generator(&Generator::Pdt { d, t, x, y }).unwrap()
        }),
    ]
}

proptest! {
    #[test]
    fn generators_are_symplectic(g in j_generator()) {
        prop_assert!(preserves_j(&g, 1));
    }
}

fn level_word(ctx: &GroupContext) -> impl Strategy<Value = SpMatrix> {
    let mut alphabet = level_generators(ctx);
    let h = make_hp(ctx.p, ctx.n).unwrap();
    alphabet.push(h.inverse().unwrap());
    alphabet.push(h);
    prop::collection::vec(prop::sample::select(alphabet), 1..=8)
        .prop_map(|w| w.iter().skip(1).fold(w[0].clone(), |acc, g| acc.try_mul(g).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn words_lie_in_gamma_star_and_classify_uniquely(m in level_word(&GroupContext::new(5, 4, 1).unwrap())) {
        let ctx = GroupContext::new(5, 4, 1).unwrap();
        prop_assert!(similitude_member(&m, Group::GammaStar, &ctx));
        prop_assert_eq!(row_matches(&m, &ctx).len(), 1);
    }

    #[test]
    fn extended_character_is_multiplicative(
        a in level_word(&GroupContext::new(7, 6, 1).unwrap()),
        b in level_word(&GroupContext::new(7, 6, 1).unwrap()),
        idx in 0usize..2,
    ) {
        let ctx = GroupContext::new(7, 6, 1).unwrap();
        let chi = &enumerate_characters(6)[idx];
        let ab = a.try_mul(&b).unwrap();
        let lhs = extended_char_angle(&ab, chi, SignChoice::Plus, &ctx).unwrap();
        let x = extended_char_angle(&a, chi, SignChoice::Plus, &ctx).unwrap();
        let y = extended_char_angle(&b, chi, SignChoice::Plus, &ctx).unwrap();
        let rhs = x.zip(y).map(|(u, v)| paramod::characters::reduce_angle(u + v));
        prop_assert_eq!(lhs, rhs);
    }
}

fn character() -> impl Strategy<Value = DirichletCharacter> {
    (1u64..=30).prop_flat_map(|n| prop::sample::select(enumerate_characters(n)))
}

fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

proptest! {
    #[test]
    fn two_variable_kernel_recovers_chi(chi in character(), m in -40i64..40) {
        let n = chi.modulus() as i64;
        let nf = n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for nu in 0..n {
            for mu in 0..n {
                acc += chi.eval(nu) * e(((m - nu) * mu) as f64 / nf);
            }
        }
        prop_assert!((acc / nf - chi.eval(m)).norm() <= 1e-9);
    }
}

fn siegel_point() -> impl Strategy<Value = SiegelPoint> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.5f64..2.0, -0.4f64..0.4, 0.5f64..2.0)
        .prop_filter_map("Y positive", |(a, b, c, d, e, f)| SiegelPoint::from_six([a, b, c, d, e, f]).ok())
}

proptest! {
    #[test]
    fn majorant_has_unit_determinant(z in siegel_point()) {
        prop_assert!((det4(&pz_form(&z).p) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn majorant_transformation_law(z in siegel_point(), g in j_generator()) {
        let mz = siegel_action(&g, &z).unwrap();
        let m = g.to_f64();
        let lhs = pz_form(&mz).p;
        let rhs: Mat4 = mul4(&mul4(&m, &pz_form(&z).p), &transpose4(&m));
        let scale = rhs.iter().flatten().fold(1.0f64, |a, x| a.max(x.abs()));
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((lhs[i][j] - rhs[i][j]).abs() <= 1e-9 * scale, "{i}{j}: {} vs {}", lhs[i][j], rhs[i][j]);
            }
        }
    }

    #[test]
    fn majorant_bounded_below(z in siegel_point(), l in prop::array::uniform4(-5i32..5)) {
        prop_assume!(l != [0; 4]);
        let p = pz_form(&z).p;
        let lf = l.map(f64::from);
        let min_eig = paramod::epstein::min_eigenvalue(&p);
        let norm2: f64 = lf.iter().map(|x| x * x).sum();
        prop_assert!(min_eig > 0.0);
        prop_assert!(quad_form(&p, &lf) >= min_eig * norm2 * (1.0 - 1e-12));
    }
}

fn spd() -> impl Strategy<Value = Mat4> {
    prop::array::uniform4(prop::array::uniform4(-0.5f64..0.5)).prop_map(|b| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| b[i][k] * b[j][k]).sum::<f64>() + if i == j { 0.6 } else { 0.0 })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn continued_matches_direct_in_overlap(
        q in spd(),
        u in prop::array::uniform4(0u8..6),
        v in prop::array::uniform4(0u8..4),
        re in 2.2f64..3.5,
        im in -1.0f64..1.0,
    ) {
        let params = EpsteinParams::new(q, u.map(|x| x as f64 / 6.0), v.map(|x| x as f64 / 4.0), Complex64::new(re, im));
        let a = epstein_continued(&params).unwrap().value;
        let b = epstein_direct_completed(&params, DirectMode::Smoothed).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-8 * (1.0 + a.norm()), "{a} vs {b}");
    }

    #[test]
    fn plain_tail_bound_is_sound(q in spd(), re in 3.0f64..4.0) {
        let params = EpsteinParams::new(q, [0.0; 4], [0.0; 4], Complex64::new(re, 0.0)).with_radius(6.0);
        let a = epstein_direct(&params, DirectMode::Plain).unwrap();
        let b = epstein_direct(&params.clone().with_radius(12.0), DirectMode::Plain).unwrap();
        prop_assert!((a.value - b.value).norm() <= a.tail_bound, "{} > {}", (a.value - b.value).norm(), a.tail_bound);
    }
}

fn coeffs() -> impl Strategy<Value = CoeffSeries> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 400).prop_map(|v| {
        let c =
            v.into_iter().enumerate().map(|(i, (a, b))| Complex64::new(a, b) * ((i + 1) as f64).powf(0.5)).collect();
        CoeffSeries::new(c, 4, 0.5)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twisting_composes(c in coeffs(), a in character(), idx in 0usize..64) {
        let chars = enumerate_characters(a.modulus());
        let b = &chars[idx % chars.len()];
        let lhs = twist_coeffs(&twist_coeffs(&c, &a), b);
        let rhs = twist_coeffs(&c, &a.mul(b));
        for m in 1..=c.len() as u64 {
            prop_assert!((lhs.get(m) - rhs.get(m)).norm() <= 1e-12 * (1.0 + c.get(m).norm()));
        }
    }

    #[test]
    fn conjugate_coefficients_conjugate_the_series(c in coeffs(), chi in character(), s in 3.0f64..6.0) {
        let cc = CoeffSeries::new(c.coefficients().iter().map(|z| z.conj()).collect(), 4, 0.5);
        let sv = Complex64::new(s, 0.0);
        let a = dirichlet_d(&c, &chi, sv, c.len()).unwrap().value;
        let b = dirichlet_d(&cc, &chi.conj(), sv, c.len()).unwrap().value;
        prop_assert!((a.conj() - b).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn series_tail_bound_is_sound(c in coeffs(), chi in character(), s in 3.0f64..6.0) {
        let sv = Complex64::new(s, 0.0);
        let half = dirichlet_d(&c, &chi, sv, c.len() / 2).unwrap();
        let full = dirichlet_d(&c, &chi, sv, c.len()).unwrap();
        prop_assert!((half.value - full.value).norm() <= half.tail_bound);
    }
}

proptest! {
    #[test]
    fn report_pass_flags_and_counts(errs in prop::collection::vec((0.0f64..2.0, 0.1f64..1.5), 0..20)) {
        let cases: Vec<Case> = errs
            .iter()
            .enumerate()
            .map(|(i, &(e, tol))| Case::absolute(format!("c{i}"), Complex64::new(e, 0.0), Complex64::new(0.0, 0.0), tol))
            .collect();
        let r = VerificationReport::new("prop", cases);
        for c in &r.cases {
            prop_assert_eq!(c.pass, c.rel_err <= c.tolerance);
        }
        prop_assert_eq!(r.summary.passed + r.summary.failed, r.summary.total);
        prop_assert_eq!(r.summary.passed, r.cases.iter().filter(|c| c.pass).count());
        prop_assert_eq!(emit_report(&r, Format::Json), emit_report(&r.clone(), Format::Json));
        prop_assert_eq!(emit_report(&r, Format::Csv).lines().count(), r.cases.len() + 1);
    }
}
