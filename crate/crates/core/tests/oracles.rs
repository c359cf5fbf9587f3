//! Independent-arithmetic oracles: exact-rational hypergeometric sums,
//! exact integer polynomial evaluation, the Bessel integral representation,
//! and the bottom-up continued fraction behind the intelligent-state
//! recursion.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use num_complex::Complex64;

use qnlo_core::fock::{apply_ladder, f_tilde_sq, tilde_factorial, FockIndex, LadderKind};
use qnlo_core::special::{bessel_k, integrate, pfq, HypergeometricSpec, QuadratureSpec};
use qnlo_core::states::{build_gis, GisParameters, DEFAULT_N_MAX};

fn idx(n: u32) -> FockIndex {
    FockIndex::new(n).unwrap()
}

fn br(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact-rational partial sum of pFq.
fn pfq_rational(num: &[BigRational], den: &[BigRational], x: &BigRational, terms: i64) -> f64 {
    let mut term = BigRational::one();
    let mut sum = term.clone();
    for k in 0..terms {
        let kb = BigRational::from_integer(BigInt::from(k));
        let mut ratio = x / BigRational::from_integer(BigInt::from(k + 1));
        for a in num {
            ratio *= a + &kb;
        }
        for b in den {
            ratio /= b + &kb;
        }
        term *= ratio;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    sum.to_f64().unwrap()
}

#[test]
fn pfq_matches_exact_rational_sums_for_all_report_tuples() {
    let tuples: Vec<(Vec<BigRational>, Vec<BigRational>)> = vec![
        (vec![br(3, 1)], vec![br(3, 1), br(3, 1), br(4, 1)]),
        (vec![br(4, 1)], vec![br(3, 1), br(3, 1), br(4, 1)]),
        (vec![br(4, 1)], vec![br(3, 1), br(3, 1), br(3, 1)]),
        (vec![], vec![br(2, 1), br(3, 1), br(3, 2), br(5, 2), br(5, 2)]),
        (vec![], vec![br(2, 1), br(2, 1), br(3, 2), br(5, 2), br(5, 2)]),
        (
            vec![br(3, 1)],
            vec![br(2, 1), br(2, 1), br(2, 1), br(3, 2), br(5, 2), br(5, 2)],
        ),
        (vec![], vec![br(2, 1), br(2, 1), br(1, 2), br(3, 2), br(5, 2)]),
        (vec![], vec![br(2, 1), br(2, 1), br(1, 2), br(3, 2), br(3, 2)]),
        (
            vec![br(5, 2)],
            vec![br(2, 1), br(2, 1), br(1, 2), br(3, 2), br(3, 2), br(3, 2)],
        ),
    ];
    for (num_p, den_p) in &tuples {
        for x in [br(1, 2), br(1, 1), br(5, 1), br(20, 1)] {
            let oracle = pfq_rational(num_p, den_p, &x, 100);
            let nf: Vec<f64> = num_p.iter().map(|v| v.to_f64().unwrap()).collect();
            let df: Vec<f64> = den_p.iter().map(|v| v.to_f64().unwrap()).collect();
            let got = pfq(
                &HypergeometricSpec::new(&nf, &df, x.to_f64().unwrap()).unwrap(),
            )
            .unwrap();
            assert!(
                (got - oracle).abs() <= 1e-13 * oracle.abs(),
                "tuple {nf:?};{df:?} at x = {x}: got {got}, oracle {oracle}"
            );
        }
    }
}

#[test]
fn pfq_spec_example_by_rational_oracle() {
    // 1F3(3;3,3,4; 1)
    let oracle = pfq_rational(&[br(3, 1)], &[br(3, 1), br(3, 1), br(4, 1)], &br(1, 1), 200);
    let got = pfq(&HypergeometricSpec::new(&[3.0], &[3.0, 3.0, 4.0], 1.0).unwrap()).unwrap();
    assert!((got - oracle).abs() < 1e-14 * oracle);
}

/// Hermite coefficients by exact integer recurrence.
fn hermite_coeffs(n: usize) -> Vec<i128> {
    let mut prev = vec![0i128; n + 1];
    let mut cur = vec![0i128; n + 1];
    prev[0] = 1; // H_0
    if n == 0 {
        return prev;
    }
    cur[1] = 2; // H_1
    for k in 1..n {
        let mut next = vec![0i128; n + 1];
        for (j, &c) in cur.iter().enumerate() {
            if c != 0 && j < n {
                next[j + 1] += 2 * c;
            }
        }
        for (j, &c) in prev.iter().enumerate() {
            if c != 0 {
                next[j] -= 2 * k as i128 * c;
            }
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn eval_i128(coeffs: &[i128], x: i128) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c)
}

#[test]
fn p_hermite_matches_exact_integer_polynomials() {
    use qnlo_core::phermite::{p_hermite, EvalRoute};
    for n in 3..=14usize {
        // P_n = H_n + 4n H_{n-2} + 4n(n-3) H_{n-4}
        let hn = hermite_coeffs(n);
        let h2 = hermite_coeffs(n - 2);
        let mut p = vec![0i128; n + 1];
        for (j, &c) in hn.iter().enumerate() {
            p[j] += c;
        }
        for (j, &c) in h2.iter().enumerate() {
            p[j] += 4 * n as i128 * c;
        }
        if n >= 4 {
            let h4 = hermite_coeffs(n - 4);
            for (j, &c) in h4.iter().enumerate() {
                p[j] += 4 * n as i128 * (n as i128 - 3) * c;
            }
        }
        for x in -3i128..=3 {
            let exact = eval_i128(&p, x);
            for route in [EvalRoute::Definition, EvalRoute::Reduced] {
                let got = p_hermite(idx(n as u32), x as f64, route);
                assert!(
                    (got - exact as f64).abs() <= 1e-12 * (exact.abs() as f64).max(1.0),
                    "n = {n}, x = {x}, {route:?}"
                );
            }
        }
    }
}

#[test]
fn tilde_products_match_exact_integers() {
    // tilde-n! = n!/6 and f~(n)!^2 = (n-1)!(n-3)!/2 as exact integers
    let fact = |m: u32| -> BigInt { (1..=m).map(BigInt::from).product::<BigInt>().max(BigInt::one()) };
    for n in 3..=30u32 {
        let t_expect = (fact(n) / BigInt::from(6)).to_f64().unwrap();
        let t_got = tilde_factorial(idx(n)).unwrap().value();
        assert!((t_got - t_expect).abs() <= 1e-11 * t_expect, "tilde {n}");
        let f_expect = (fact(n - 1) * fact(n - 3) / BigInt::from(2)).to_f64().unwrap();
        let f_got = f_tilde_sq(idx(n)).unwrap().value();
        assert!((f_got - f_expect).abs() <= 1e-11 * f_expect, "f~^2 {n}");
    }
}

#[test]
fn bessel_k_matches_integral_representation() {
    // K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt
    for &(nu, x) in &[(0.0, 5.0), (0.5, 1.0), (1.0, 2.0), (3.0, 2.0), (9.0, 12.0)] {
        let oracle = integrate(
            |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh(),
            &QuadratureSpec::semi_infinite(1e-12),
        )
        .unwrap()
        .value;
        let got = bessel_k(nu, x).unwrap();
        assert!(
            (got - oracle).abs() <= 1e-10 * oracle,
            "nu = {nu}, x = {x}: got {got}, oracle {oracle}"
        );
    }
}

#[test]
fn gis_recursion_equals_bottom_up_continued_fraction() {
    // The nested fraction evaluated bottom-up: D_3 = 2a/(1+l),
    // D_k = 2a/(1+l) + ((l-1)/(l+1)) k f(k)^2 / D_{k-1}, c_{n+1}/c_n =
    // D_n / (sqrt(n+1) f(n+1)).
    let f_sq = |k: u32| ((k as f64) - 1.0) * ((k as f64) - 3.0);
    for (ar, lr, li) in [(1.0, 0.5, 0.0), (2.0, 0.3, 0.0), (1.5, 2.0, 0.7)] {
        let alpha = Complex64::new(ar, 0.0);
        let lambda = Complex64::new(lr, li);
        let one = Complex64::new(1.0, 0.0);
        let seed = 2.0 * alpha / (one + lambda);
        let ratio = (lambda - one) / (lambda + one);

        let state = build_gis(GisParameters { alpha, lambda }, DEFAULT_N_MAX).unwrap();
        let top = 14u32;
        let mut d = seed;
        let mut c = vec![Complex64::new(1.0, 0.0)]; // c_3 = 1 before normalization
        for n in 3..top {
            if n > 3 {
                d = seed + ratio * (n as f64) * f_sq(n) / d;
            }
            let b = d / (((n + 1) as f64).sqrt() * f_sq(n + 1).sqrt());
            let last = *c.last().unwrap();
            c.push(last * b);
        }
        // compare ratios to the built state's ratios
        let c3 = state.amplitude(3);
        for (i, n) in (3..=top).enumerate() {
            let expect = c[i] / c[0];
            let got = state.amplitude(n) / c3;
            assert!(
                (got - expect).norm() <= 1e-12 * expect.norm().max(1e-12),
                "alpha {ar} lambda {lr}+{li}i, n = {n}"
            );
        }
    }
}

#[test]
fn ladder_round_trip_spec_value() {
    // A+ applied after A on |4>: amplitude n f(n)^2 = 12 back on |4>
    let s = qnlo_core::states::StateVector::unit(4).unwrap();
    let down = apply_ladder(LadderKind::DeformedA, &s, 0.0).unwrap();
    let up = apply_ladder(LadderKind::DeformedADagger, &down, 0.0).unwrap();
    assert!((up.amplitude(4).re - 12.0).abs() < 1e-12);
}
