//! Randomized invariants of the library, checked against independent formulas.

use mvlaguerre::gamma::{log_gamma, pochhammer, rgamma};
use mvlaguerre::hypergeometric::{
    bessel_i, humbert_phi1_integral_auto, humbert_phi1_series, hyp1f1, hyp2f1, lauricella_phi2k, le_roy, Phi1Params,
};
use mvlaguerre::identities::{
    cor3_addition, hardy_hille, lemma_expansion, prop1_exponential, prop1_general, product_formula, product_rule,
    theorem_multiple,
};
use mvlaguerre::laguerre::{laguerre_multi, laguerre_uni};
use mvlaguerre::multi_index::{box_enumerate, graded_enumerate};
use mvlaguerre::quadrature::{
    beta_rule, box_rule, cosine_power_integral, cosine_power_rule, semi_infinite_rule_with_power,
};
use mvlaguerre::series::diagonal_collapse;
use mvlaguerre::{CPoint, Complex64, MultiIndex, SeriesControl};
use proptest::prelude::*;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn complex(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(re, im)| Complex64::new(re, im))
}

fn cpoint(k: usize, mag: f64) -> impl Strategy<Value = CPoint> {
    prop::collection::vec(complex(-mag..mag, -mag..mag), k).prop_map(|v| CPoint::new(v).unwrap())
}

/// A point of dimension 1..=3 scaled to `|u|_1 = l1`.
fn small_point(l1: std::ops::Range<f64>) -> impl Strategy<Value = CPoint> {
    (1usize..=3).prop_flat_map(move |k| {
        (cpoint(k, 1.0), l1.clone()).prop_map(|(p, target)| {
            let p = p.map(|z| if z.norm() < 1e-2 { Complex64::new(0.3, 0.1) } else { z });
            let s = target / p.l1_norm();
            p.scale(Complex64::new(s, 0.0))
        })
    })
}

fn index(k: usize, max: usize) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max, k).prop_map(|v| MultiIndex::new(v).unwrap())
}

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graded_sum_of_total_order_terms_collapses(x in small_point(0.05..0.6), a in complex(0.2..2.0, -0.5..0.5)) {
        let k = x.dim();
        let f = |n: usize| pochhammer(a, n) / pochhammer(a + 1.0, n);
        // truncated at total order 8: shell by shell the multinomial theorem is exact
        let brute: Complex64 = graded_enumerate(k, 8)
            .map(|n| f(n.total()) * x.power(&n).unwrap() / n.factorial().unwrap() as f64)
            .sum();
        let mut single = Complex64::new(0.0, 0.0);
        let mut term = ONE;
        for n in 0..=8 {
            if n > 0 {
                term *= x.angle() / n as f64;
            }
            single += f(n) * term;
        }
        prop_assert!(rel(brute, single) < 1e-13);
        // and the untruncated collapse against a deep brute-force sum
        let deep: Complex64 = graded_enumerate(k, 40)
            .map(|n| f(n.total()) * x.power(&n).unwrap() * (-n.ln_factorial()).exp())
            .sum();
        prop_assert!(rel(deep, diagonal_collapse(f, &x, &ctl()).unwrap()) < 1e-12);
    }

    #[test]
    fn pochhammer_steps(a in complex(-20.0..20.0, -20.0..20.0), m in 0usize..50) {
        prop_assert!(rel(pochhammer(a, m + 1), pochhammer(a, m) * (a + m as f64)) < 1e-13);
    }

    #[test]
    fn log_gamma_steps(z in complex(0.05..50.0, -30.0..30.0)) {
        prop_assume!(z.norm() <= 50.0);
        let lhs = (log_gamma(z + 1.0).unwrap()).exp();
        let rhs = z * log_gamma(z).unwrap().exp();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn vandermonde_convolution(
        l1 in complex(-3.0..3.0, -2.0..2.0),
        l2 in complex(-3.0..3.0, -2.0..2.0),
        m in (1usize..=3).prop_flat_map(|k| index(k, 3)),
    ) {
        prop_assume!(m.total() <= 6);
        let fact = |n: &MultiIndex| n.factorial().unwrap() as f64;
        let lhs: Complex64 = box_enumerate(&m)
            .map(|p| {
                let q = MultiIndex::new(m.entries().iter().zip(p.entries()).map(|(a, b)| a - b).collect()).unwrap();
                pochhammer(l1, p.total()) * pochhammer(l2, q.total()) / (fact(&p) * fact(&q))
            })
            .sum();
        let rhs = pochhammer(l1 + l2, m.total()) / fact(&m);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(lhs.norm()).max(1e-12));
    }

    #[test]
    fn phi1_with_equal_parameters_is_elementary(
        a in complex(0.2..3.0, -1.0..1.0),
        b in complex(-2.0..2.0, -1.0..1.0),
        x in complex(-0.56..0.56, -0.56..0.56),
        y in complex(-3.0..3.0, -3.0..3.0),
    ) {
        let v = humbert_phi1_series(Phi1Params::new(a, b, a), x, y, &SeriesControl::inner()).unwrap();
        prop_assert!(rel(v, (ONE - x).powc(-b) * y.exp()) < 1e-10);
    }

    #[test]
    fn phi1_series_matches_beta_integral(
        a in 0.3f64..2.5,
        gap in 0.3f64..2.0,
        b in complex(-1.5..1.5, -0.5..0.5),
        x in complex(-0.56..0.56, -0.56..0.56),
        y in complex(-2.0..2.0, -2.0..2.0),
    ) {
        let p = Phi1Params::real(a, 0.0, a + gap);
        let p = Phi1Params { b, ..p };
        let series = humbert_phi1_series(p, x, y, &SeriesControl::inner()).unwrap();
        let integral = humbert_phi1_integral_auto(p, x, y, 80).unwrap();
        prop_assert!(rel(series, integral) < 1e-9);
    }

    #[test]
    fn kummer_point_matches_euler_integral(b in 0.1f64..0.9, extra in 0.2f64..2.5) {
        // c = a - b + 1 and c - b > 0; Euler: 2F1(a,b;c;-1) = E[(1+t)^{-a}] under Beta(b, c-b)
        let a = 2.0 * b + extra - 1.0;
        let c = a - b + 1.0;
        let rule = beta_rule(b, c - b, 80).unwrap();
        let euler = rule.integrate(|t| Complex64::new((1.0 + t[0]).powf(-a), 0.0));
        let v = hyp2f1(Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::new(c, 0.0), -ONE, &SeriesControl::inner()).unwrap();
        prop_assert!(rel(v, euler) < 1e-10);
    }

    #[test]
    fn one_variable_phi2_is_1f1(b in complex(-2.0..2.0, -1.0..1.0), c in complex(0.3..3.0, -1.0..1.0), x in complex(-5.0..5.0, -5.0..5.0)) {
        let inner = SeriesControl::inner();
        let lhs = lauricella_phi2k(&CPoint::splat(1, b), c, &CPoint::splat(1, x), &inner).unwrap();
        prop_assert!(rel(lhs, hyp1f1(b, c, x, &inner).unwrap()) < 1e-12);
    }

    #[test]
    fn regularized_bessel_at_zero(alpha in complex(-5.0..5.0, -2.0..2.0)) {
        let v = bessel_i(alpha, Complex64::new(0.0, 0.0), &ctl()).unwrap();
        prop_assert!((v - rgamma(alpha + 1.0)).norm() <= 1e-13 * rgamma(alpha + 1.0).norm().max(1e-300));
    }

    #[test]
    fn laguerre_ignores_coordinates_of_zero_degree(
        (n, x, other) in (2usize..=3).prop_flat_map(|k| (index(k, 4), cpoint(k, 2.0), complex(-3.0..3.0, -3.0..3.0))),
        alpha in complex(-0.9..3.0, -1.0..1.0),
        slot in 0usize..3,
    ) {
        let j = slot % n.dim();
        let mut e = n.entries().to_vec();
        e[j] = 0;
        let n = MultiIndex::new(e).unwrap();
        let mut moved = x.entries().to_vec();
        moved[j] = other;
        let moved = CPoint::new(moved).unwrap();
        let a = laguerre_multi(&n, alpha, &x).unwrap();
        prop_assert!((a - laguerre_multi(&n, alpha, &moved).unwrap()).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn laguerre_is_symmetric_under_joint_permutation(
        (n, x) in (2usize..=3).prop_flat_map(|k| (index(k, 5), cpoint(k, 2.0))),
        alpha in complex(-0.9..3.0, -1.0..1.0),
    ) {
        let k = n.dim();
        let perm: Vec<usize> = (0..k).rev().collect();
        let pn = MultiIndex::new(perm.iter().map(|&i| n.entries()[i]).collect()).unwrap();
        let a = laguerre_multi(&n, alpha, &x).unwrap();
        let b = laguerre_multi(&pn, alpha, &x.permute(&perm)).unwrap();
        prop_assert!((a - b).norm() <= 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn laguerre_at_origin(n in (1usize..=3).prop_flat_map(|k| index(k, 6)), alpha in complex(-0.9..3.0, -1.0..1.0)) {
        let v = laguerre_multi(&n, alpha, &CPoint::zeros(n.dim())).unwrap();
        let expect = pochhammer(alpha + 1.0, n.total()) / n.factorial().unwrap() as f64;
        prop_assert!(rel(v, expect) < 1e-14);
    }

    #[test]
    fn one_dimensional_laguerre_agrees(n in 0usize..30, alpha in complex(-0.9..3.0, -1.0..1.0), x in complex(-4.0..4.0, -4.0..4.0)) {
        let multi = laguerre_multi(&MultiIndex::new(vec![n]).unwrap(), alpha, &CPoint::splat(1, x)).unwrap();
        let uni = laguerre_uni(n, alpha, x);
        prop_assert!((multi - uni).norm() <= 1e-11 * uni.norm().max(1.0));
    }

    #[test]
    fn le_roy_is_positive_and_increasing(k in 1u32..=4, start in 0.01f64..5.0) {
        let mut last = 0.0;
        for step in 0..20 {
            let z = start * (1.0 + 0.5 * step as f64);
            let v = le_roy(Complex64::new(k as f64, 0.0), Complex64::new(z, 0.0), &SeriesControl::inner()).unwrap();
            prop_assert!(v.re > 0.0 && v.re > last);
            last = v.re;
        }
    }

    #[test]
    fn quadrature_weights_have_the_right_mass(
        dim in 2usize..=3, per_axis in 2usize..=12,
        power in -0.9f64..4.0, decay in 0.2f64..5.0, m in 2usize..40,
    ) {
        let pi = std::f64::consts::PI;
        let total: f64 = box_rule(dim, per_axis).unwrap().weights().iter().sum();
        prop_assert!((total / pi.powi(dim as i32) - 1.0).abs() < 1e-13);
        // the cosine weight is only Jacobi up to an analytic factor, so it needs a few more nodes
        let (_, w) = cosine_power_rule(power, m + 24).unwrap();
        prop_assert!((w.iter().sum::<f64>() / cosine_power_integral(power) - 1.0).abs() < 1e-12);
        let lag: f64 = semi_infinite_rule_with_power(decay, power, m).unwrap().weights().iter().sum();
        let exact = (log_gamma(Complex64::new(power + 1.0, 0.0)).unwrap().re - (power + 1.0) * decay.ln()).exp();
        prop_assert!((lag / exact - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beta_rule_mean(a in 0.05f64..5.0, gap in 0.05f64..5.0, m in 2usize..40) {
        let mean = beta_rule(a, gap, m).unwrap().integrate(|t| Complex64::new(t[0], 0.0)).re;
        prop_assert!((mean - a / (a + gap)).abs() < 1e-13);
    }

    #[test]
    fn box_rule_refines(dim in 2usize..=3, c in prop::collection::vec(-1.0f64..1.0, 3)) {
        let f = |t: &[f64]| Complex64::new(t.iter().zip(&c).map(|(t, c)| c * t).sum::<f64>().exp(), 0.0);
        let coarse = box_rule(dim, 12).unwrap().integrate(f);
        let fine = box_rule(dim, 24).unwrap().integrate(f);
        let exact: f64 = c[..dim]
            .iter()
            .map(|&c| if c.abs() < 1e-12 { std::f64::consts::PI } else { 2.0 * (c * std::f64::consts::FRAC_PI_2).sinh() / c })
            .product();
        prop_assert!((fine.re - exact).abs() <= 1e-13 * exact);
        prop_assert!((coarse - fine).norm() <= 1e-12 * exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn single_level_theorem_is_the_lemma(
        (sigma, x, y) in (1usize..=2).prop_flat_map(|k| (cpoint(k, 1.0), cpoint(k, 0.35), cpoint(k, 0.6))),
        alpha in complex(0.2..2.5, -0.5..0.5),
        beta in complex(-0.5..1.5, -0.3..0.3),
        beta1 in complex(-0.5..1.5, -0.3..0.3),
        gamma in complex(0.8..3.0, -0.5..0.5),
    ) {
        prop_assume!(x.l1_norm() < 0.6 && x.iter().all(|z| z.norm() > 1e-3));
        let lemma = lemma_expansion(alpha, beta, beta1, gamma, &sigma, &x, &y, &ctl()).unwrap();
        let thm = theorem_multiple(alpha, gamma, &[beta, beta1], std::slice::from_ref(&sigma), &x, &y, &ctl()).unwrap();
        prop_assert!(rel(lemma.rhs, thm.rhs) < 1e-11);
    }

    #[test]
    fn lemma_specializes_to_proposition(
        (u, w) in (1usize..=3).prop_flat_map(|k| (small_point(0.05..0.45), cpoint(k, 1.0)))
            .prop_filter("dims", |(u, w)| u.dim() == w.dim()),
        alpha in complex(0.2..2.5, -0.5..0.5),
        beta in complex(-1.0..2.0, -0.5..0.5),
        gamma in complex(0.5..3.0, -0.5..0.5),
    ) {
        let k = u.dim();
        let y = -&u.hadamard(&w).unwrap();
        let lemma = lemma_expansion(alpha, beta, Complex64::new(0.0, 0.0), gamma, &CPoint::zeros(k), &-&u, &y, &ctl()).unwrap();
        let prop = prop1_general(alpha, beta, gamma, &u, &w, &ctl()).unwrap();
        prop_assert!(rel(lemma.lhs, prop.lhs) < 1e-11);
        prop_assert!(rel(lemma.rhs, prop.rhs) < 1e-11);
    }

    #[test]
    fn equal_numerator_and_denominator_gives_exponential_form(
        u in small_point(0.05..0.5),
        gamma in complex(0.5..3.0, -0.5..0.5),
        beta in complex(-1.0..2.0, -0.5..0.5),
        seed in cpoint(3, 1.5),
    ) {
        let x = CPoint::new(seed.entries()[..u.dim()].to_vec()).unwrap();
        let general = prop1_general(gamma, beta, gamma, &u, &x, &ctl()).unwrap();
        let exponential = prop1_exponential(beta, &u, &x, &ctl()).unwrap();
        prop_assert!(rel(general.lhs, exponential.lhs) < 1e-11);
        prop_assert!(rel(general.rhs, exponential.rhs) < 1e-11);
    }

    #[test]
    fn addition_formula_is_exact(
        m in 0usize..=6,
        (head, ws) in (1usize..=3, 1usize..=2).prop_flat_map(|(k, l)| (cpoint(k, 0.8), prop::collection::vec(cpoint(k, 1.0), l + 1))),
        a in prop::collection::vec(complex(0.2..2.5, -0.5..0.5), 3),
    ) {
        let mut e = head.entries().to_vec();
        let rest: Complex64 = e[..e.len() - 1].iter().sum();
        *e.last_mut().unwrap() = -ONE - rest;
        let u = CPoint::new(e).unwrap();
        let a = &a[..ws.len()];
        let rep = cor3_addition(m, a, &u, &ws, &ctl()).unwrap();
        prop_assert!(rep.converged && rep.rel_residual <= 1e-12, "rel {}", rep.rel_residual);
    }

    #[test]
    fn bilinear_form_is_symmetric(
        (x, y, u) in (1usize..=3).prop_flat_map(|k| (cpoint(k, 1.0), cpoint(k, 1.0), cpoint(k, 0.12))),
        alpha in prop::sample::select(vec![-0.5, 0.0, 0.5, 2.0]),
    ) {
        let alpha = Complex64::new(alpha, 0.0);
        let a = hardy_hille(alpha, &x, &y, &u, &ctl()).unwrap();
        let b = hardy_hille(alpha, &y, &x, &u, &ctl()).unwrap();
        prop_assert!(rel(a.lhs, b.lhs) <= 1e-12);
        prop_assert!(rel(a.rhs, b.rhs) <= 1e-12);
    }

    #[test]
    fn truncation_error_does_not_grow(u in small_point(0.2..0.5), beta in complex(-1.0..2.0, -0.5..0.5), seed in cpoint(3, 1.5)) {
        let x = CPoint::new(seed.entries()[..u.dim()].to_vec()).unwrap();
        // a tail tolerance that is never met, so each run stops exactly at its cap
        let mut last = f64::INFINITY;
        for order in (20..=60).step_by(5) {
            let capped = SeriesControl::new(order, 1e-300, 3).unwrap();
            let r = prop1_exponential(beta, &u, &x, &capped).unwrap().rel_residual;
            prop_assert!(r <= last.max(1e-12) * 1.5, "order {order}: {r} after {last}");
            last = r;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn product_formula_is_real_for_real_data(
        m in 0usize..=2, n in 0usize..=2,
        alpha in -0.45f64..2.0, beta in -0.45f64..2.0,
        x in -1.0f64..2.0, y in -1.0f64..2.0,
    ) {
        let rule = product_rule(1, 64, alpha, beta).unwrap();
        let rep = product_formula(
            &MultiIndex::new(vec![m]).unwrap(),
            &MultiIndex::new(vec![n]).unwrap(),
            Complex64::new(alpha, 0.0),
            Complex64::new(beta, 0.0),
            &CPoint::from_reals(&[x]).unwrap(),
            &CPoint::from_reals(&[y]).unwrap(),
            &rule,
        )
        .unwrap();
        prop_assert!(rep.channels["rhs_imag_ratio"] <= 1e-8);
        prop_assert!(rep.rel_residual <= 1e-6);
    }
}
