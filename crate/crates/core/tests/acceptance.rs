//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL ...` line.
//! Run with `cargo test --test acceptance -- --nocapture`.

use std::f64::consts::PI;

use num_complex::Complex64;
use paramod::characters::{achisum_closed, enumerate_characters, gauss_sum, DirichletCharacter};
use paramod::eisenstein::{
    eis_residue, eis_residue_with, smart_sum_check, EisensteinParams, PrincipalPart, ResidueMethod,
};
use paramod::epstein::{epstein_continued, EpsteinParams};
use paramod::majorant::SiegelPoint;
use paramod::report::VerificationReport;
use paramod::suites::{
    coherence_suite, coset_suite, diff_suite, epstein_suite, fe_suite, group_suite, series_suite, smartsum_suite,
    SuiteConfig,
};

fn announce(n: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n:>2}: {tag}  {title}  ({detail})");
}

fn report_line(n: u32, title: &str, r: &VerificationReport) -> bool {
    let worst = r
        .cases
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: err {:.3e} > {:.1e}", c.name, c.rel_err, c.tolerance))
        .take(3)
        .collect::<Vec<_>>();
    let detail = if worst.is_empty() {
        let ratio = r.cases.iter().filter(|c| c.tolerance > 0.0).map(|c| c.rel_err / c.tolerance).fold(0.0, f64::max);
        format!("{}/{} cases, worst err/tol {ratio:.2e}", r.summary.passed, r.summary.total)
    } else {
        format!("{}/{} cases; {}", r.summary.passed, r.summary.total, worst.join("; "))
    };
    announce(n, title, r.all_pass(), &detail);
    r.all_pass()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Defining double sum over β ≡ γ (ν), tabulated for all m mod Nν.
fn achisum_oracle(chi: &DirichletCharacter, nu: u64) -> Vec<Complex64> {
    let n = chi.modulus() as i64;
    let nu = nu as i64;
    let m = n * nu;
    let units: Vec<i64> = (0..m).filter(|&x| gcd(x, m) == 1).collect();
    let inv = |x: i64| (0..m).find(|&y| (x * y) % m == 1 % m).unwrap();
    let inverses: Vec<i64> = units.iter().map(|&x| inv(x)).collect();
    let mut w = vec![Complex64::new(0.0, 0.0); m as usize];
    for (i, &b) in units.iter().enumerate() {
        for (j, &g) in units.iter().enumerate() {
            if (b - g).rem_euclid(nu) == 0 {
                let d = (inverses[j] - inverses[i]).rem_euclid(m) as usize;
                w[d] += chi.eval((b - g) / nu);
            }
        }
    }
    (0..m).map(|k| w.iter().enumerate().map(|(d, &c)| c * e((k * d as i64) as f64 / m as f64)).sum()).collect()
}

#[test]
fn criterion_01_character_sum_lemma() {
    let mut total = 0usize;
    let (mut bad_prim, mut bad_imprim, mut cases_prim) = (0usize, 0usize, 0usize);
    let mut example = String::new();
    for n in 1..=24u64 {
        for chi in enumerate_characters(n) {
            for nu in divisors(n) {
                let table = achisum_oracle(&chi, nu);
                let a1 = table[1 % table.len()];
                let mut ok = true;
                for (m, &a) in table.iter().enumerate() {
                    let closed = achisum_closed(&chi, nu, m as i64);
                    let mult = chi.eval(m as i64) * a1;
                    if (a - closed).norm() > 1e-9 || (a - mult).norm() > 1e-9 {
                        ok = false;
                        if example.is_empty() {
                            example =
                                format!("N={n} chi#{} nu={nu} m={m}: sum {a:.6} vs closed {closed:.6}", chi.index());
                        }
                    }
                }
                total += 1;
                if chi.is_primitive() {
                    cases_prim += 1;
                }
                match (ok, chi.is_primitive()) {
                    (false, true) => bad_prim += 1,
                    (false, false) => bad_imprim += 1,
                    _ => {}
                }
            }
        }
    }
    let pass = bad_prim + bad_imprim == 0;
    announce(
        1,
        "character-sum closed form and A(m) = chi(m)A(1), every chi mod N <= 24",
        pass,
        &format!(
            "{total} (chi, nu) pairs; primitive {}/{cases_prim} hold; imprimitive failures {bad_imprim}; first: {example}",
            cases_prim - bad_prim
        ),
    );
    assert_eq!(bad_prim, 0, "primitive characters must satisfy the lemma");
    assert!(pass, "the identity fails for imprimitive characters, e.g. {example}");
}

#[test]
fn criterion_02_gauss_sums() {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=50u64 {
        for chi in enumerate_characters(n).into_iter().filter(|c| c.is_primitive()) {
            let nf = n as f64;
            let g = |c: &DirichletCharacter| -> Complex64 { (0..n).map(|k| c.eval(k as i64) * e(k as f64 / nf)).sum() };
            let gc = g(&chi);
            let gb = g(&chi.conj());
            let sign = chi.eval(-1);
            worst = worst.max((gc.norm_sqr() - nf).abs() / nf);
            worst = worst.max((gc * gb - sign * nf).norm() / nf);
            worst = worst.max((gauss_sum(&chi) - gc).norm() / nf);
            for m in 0..n as i64 {
                let kernel: Complex64 = (0..n as i64).map(|mu| chi.conj().eval(mu) * e((m * mu) as f64 / nf)).sum();
                worst = worst.max((kernel - chi.eval(m) * gb).norm());
            }
            count += 1;
        }
    }
    let pass = worst <= 1e-9;
    announce(
        2,
        "Gauss-sum identities and twist kernel, primitive chi, N <= 50",
        pass,
        &format!("{count} characters, max err {worst:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_03_group_algebra() {
    let r = group_suite(&SuiteConfig::default());
    assert!(report_line(3, "generators, H_p(N), word classification, extended character", &r));
}

#[test]
fn criterion_04_coset_systems() {
    let r = coset_suite(&SuiteConfig::default());
    assert!(report_line(4, "coset representatives pairwise inequivalent and complete", &r));
}

/// ζ(k) for integer k >= 2 by direct summation with an Euler-Maclaurin tail.
fn zeta_oracle(k: f64) -> f64 {
    let m = 10_000u32;
    let head: f64 = (1..m).map(|n| (n as f64).powf(-k)).sum();
    let mf = m as f64;
    head + mf.powf(1.0 - k) / (k - 1.0) + 0.5 * mf.powf(-k) + k * mf.powf(-k - 1.0) / 12.0
}

#[test]
fn criterion_05_epstein_engine() {
    // Σ r₄(n) n^{-s} = 8(1 − 4^{1−s}) ζ(s) ζ(s−1), completed by π^{-s} Γ(s)
    let s = 3.0;
    let oracle = PI.powf(-s) * 2.0 * 8.0 * (1.0 - 4f64.powf(1.0 - s)) * zeta_oracle(s) * zeta_oracle(s - 1.0);
    let id: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8 as f64));
    let v = epstein_continued(&EpsteinParams::new(id, [0.0; 4], [0.0; 4], Complex64::new(s, 0.0))).unwrap().value;
    let rel = (v - oracle).norm() / oracle;
    let r = epstein_suite(&SuiteConfig::default());
    let pass = rel <= 1e-3 && r.all_pass();
    report_line(5, "Epstein engine: continued vs direct, residues", &r);
    announce(
        5,
        "Epstein engine: four-squares value at s = 3",
        rel <= 1e-3,
        &format!("{v:.12} vs oracle {oracle:.12}, rel {rel:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_06_representation_coherence() {
    let r = coherence_suite(&SuiteConfig::default()).unwrap();
    assert!(report_line(6, "lattice, second and third representations agree", &r));
}

fn ii() -> SiegelPoint {
    SiegelPoint::from_six([0.0, 0.0, 0.0, 1.0, 0.0, 1.0]).unwrap()
}

#[test]
fn criterion_07_residue() {
    let s = Complex64::new(2.6, 0.0);
    // 2κφ(N)/N
    let cases = [(1u64, 1u64, 2.0), (2, 1, 1.0), (6, 2, 4.0 / 3.0)];
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (n, k, expected) in cases {
        let params = EisensteinParams::new(7, n, k, DirichletCharacter::principal(n), ii(), s).unwrap();
        let res = eis_residue(&params).unwrap().numeric;
        worst = worst.max((res - expected).abs());
        parts.push(format!("(N={n}, k={k}) {res:.8}"));
        if n == 6 {
            let rich = eis_residue_with(&params, ResidueMethod::Richardson).unwrap().numeric;
            println!("  info: Richardson extrapolation at (N=6, k=2) gives {rich:.4}, contour gives {res:.8}");
        }
    }
    let quad = enumerate_characters(5).into_iter().find(|c| c.order() == 2).unwrap();
    let params = EisensteinParams::new(11, 5, 1, quad, ii(), s).unwrap();
    let hol = eis_residue(&params).unwrap().numeric.abs();
    parts.push(format!("quadratic chi mod 5: {hol:.2e}"));
    let pass = worst <= 1e-3 && hol <= 1e-3;
    announce(7, "residue 2k phi(N)/N for trivial chi, 0 otherwise", pass, &parts.join(", "));
    assert!(pass);
}

#[test]
fn criterion_08_functional_equation() {
    let r = fe_suite(&SuiteConfig::default()).unwrap();
    assert!(report_line(8, "functional equation, proposition and corollary forms", &r));
}

#[test]
fn criterion_09_smart_sum() {
    let r = smartsum_suite(&SuiteConfig::default()).unwrap();
    let pass = report_line(9, "smart-sum identity and exact Moebius telescoping", &r);
    // even character mod 10 induced from the quadratic character mod 5
    let chi = enumerate_characters(10).into_iter().find(|c| c.conductor() == 5 && c.order() == 2).unwrap();
    let params = EisensteinParams::new(11, 10, 1, chi, ii(), Complex64::new(2.4, 0.0)).unwrap();
    let alt = smart_sum_check(&params, PrincipalPart::R).unwrap();
    let main = smart_sum_check(&params, PrincipalPart::RoverTheta).unwrap();
    println!(
        "  info: N=10 even chi: R/theta principal part rel err {:.2e}, literal R rel err {:.2e}",
        main.rel_err, alt.rel_err
    );
    assert!(pass);
}

#[test]
fn criterion_10_difference_series() {
    let r = diff_suite(&SuiteConfig::default()).unwrap();
    assert!(report_line(10, "difference series (i)-(iv) and vanishing sum", &r));
}

#[test]
fn criterion_11_prefactor_algebra() {
    let r = series_suite(&SuiteConfig::default());
    assert!(report_line(11, "functional-equation prefactors, involutions, coefficient interface", &r));
}
