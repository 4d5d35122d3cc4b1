use pnkit_core::ddf::{distance_to_eps0, sibley_distance};
use pnkit_core::phi::{topology_refinement_probe, transform_ddf, transform_space};
use pnkit_core::spaces::{
    beta, better_than, check_characterization_alpha, check_pn_axioms, check_serstnev, check_tau_m_upgrade,
    fnorm_to_pn, holder_scalar_check, Ordering, SerstnevKind,
};
use pnkit_core::tnorms::{check_tnorm_axioms, make_tg};
use pnkit_core::topology::{
    check_bounded_iff_dbounded, default_null_sequence, delta, fnormed_dbounded_props, is_bounded, is_d_bounded,
    neighborhood_contains, probabilistic_radius, scalar_continuity_probe, Verdict,
};
use pnkit_core::triangle::{check_triangle_axioms, default_samples};
use pnkit_core::{
    BaseCdf, CheckParams, Ddf, FNorm, LOp, NormKind, PhiMap, PnSpace, ProbNorm, SetSpec, TNorm, TriangleFn,
    VectorSpace,
};

const E1: f64 = 0.632_120_558_828_557_7;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol || (a.is_infinite() && a == b)
}

fn line() -> VectorSpace {
    VectorSpace::new(1, NormKind::L2).unwrap()
}

fn plane() -> VectorSpace {
    VectorSpace::new(2, NormKind::L2).unwrap()
}

fn exp(c: f64) -> Ddf {
    Ddf::scaled(BaseCdf::Exponential, c).unwrap()
}

fn params() -> CheckParams {
    CheckParams::new(60, 7)
}

#[test]
fn steps_and_scaled_bases() {
    let e2 = Ddf::eps(2.0).unwrap();
    assert_eq!(e2.eval(2.0), 0.0);
    assert_eq!(e2.eval(2.5), 1.0);
    let inf = Ddf::eps(f64::INFINITY).unwrap();
    for x in [0.0, 1.0, 1e300] {
        assert_eq!(inf.eval(x), 0.0);
    }
    assert!(close(exp(4.0).eval(4.0), E1, 1e-12));
    assert_eq!(Ddf::Step(1.0).eval(1.0), 0.0);
    let half = Ddf::scaled(BaseCdf::HalfExponential, 1.0).unwrap();
    assert!(close(half.tail(), 0.5, 1e-12));
    assert!(close(half.eval(1e6), 0.5, 1e-12));
}

#[test]
fn quasi_inverses_of_ddfs() {
    for a in [0.0, 0.5, 3.0] {
        let q = Ddf::eps(a).unwrap().quasi_inverse();
        for t in [0.01, 0.5, 1.0] {
            assert_eq!(q.eval(t), a);
        }
    }
    let c = 2.5;
    let q = exp(c).quasi_inverse();
    for t in [0.1, 0.5, 0.9] {
        assert!(close(q.eval(t), -c * (1.0 - t).ln(), 1e-9));
    }
    let half = Ddf::scaled(BaseCdf::HalfExponential, 1.0).unwrap();
    assert_eq!(half.quasi_inverse().eval(0.75), f64::INFINITY);
}

#[test]
fn sibley_distance_to_steps() {
    let f = exp(1.0);
    assert!(sibley_distance(&f, &f) <= 1e-5);
    for a in [0.3, 0.7, 2.0] {
        let d = sibley_distance(&Ddf::eps0(), &Ddf::eps(a).unwrap());
        assert!(close(d, a.min(1.0), 1e-4), "a = {a}: {d}");
        assert!(close(distance_to_eps0(&Ddf::eps(a).unwrap()), a.min(1.0), 1e-9));
    }
}

#[test]
fn membership_in_dplus() {
    assert!(Ddf::eps(4.0).unwrap().is_in_dplus());
    assert!(!Ddf::scaled(BaseCdf::HalfExponential, 1.0).unwrap().is_in_dplus());
    assert!(!Ddf::eps(f64::INFINITY).unwrap().is_in_dplus());
}

#[test]
fn tnorm_values() {
    assert_eq!(TNorm::Z.eval(0.5, 0.7), 0.0);
    assert_eq!(TNorm::Z.eval(0.5, 1.0), 0.5);
    for x in [0.0, 0.3, 0.99, 1.0] {
        assert_eq!(TNorm::M.eval(x, 1.0), x);
    }
    let tg = make_tg(BaseCdf::Exponential, 2.0).unwrap();
    let g = |x: f64| 1.0 - (-x).exp();
    let ginv = |y: f64| -(1.0 - y).ln();
    assert!(close(tg.eval(E1, E1), 1.0 - (-0.5f64).exp(), 1e-12));
    let u = ginv(0.2);
    assert!(close(tg.eval(0.2, 0.2), g(u / 2.0), 1e-12));
    for x in [0.1, 0.5, 0.9] {
        assert!(close(tg.eval(x, 1.0), x, 1e-12));
    }
}

#[test]
fn lop_values() {
    assert_eq!(LOp::PowerSum(2.0).eval(1.0, 1.0), 4.0);
    for x in [0.0, 1.5, 10.0] {
        assert_eq!(LOp::Sum.eval(x, 0.0), x);
    }
}

#[test]
fn tnorm_checker_verdicts() {
    assert!(check_tnorm_axioms(&TNorm::M, 200, 1).passed());
    assert!(check_tnorm_axioms(&TNorm::Z, 200, 1).passed());
    let bad = TNorm::custom("shrunk product", |x, y| (x * y * 0.9).clamp(0.0, 1.0));
    let r = check_tnorm_axioms(&bad, 200, 1);
    assert!(!r.passed());
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.iter().any(|c| c.name.contains("identity")));
}

#[test]
fn tau_m_adds_steps() {
    let r = TriangleFn::tau_m().apply(&Ddf::eps(1.0).unwrap(), &Ddf::eps(2.0).unwrap());
    assert_eq!(r.eval(3.0), 0.0);
    assert_eq!(r.eval(3.0 + 1e-9), 1.0);
    let f = exp(1.5);
    for tau in [TriangleFn::tau_m(), TriangleFn::tau_m_star(), TriangleFn::PointwiseM] {
        let id = tau.apply(&Ddf::eps0(), &f);
        for x in [0.1, 1.0, 4.0] {
            assert!(close(id.eval(x), f.eval(x), 1e-9));
        }
    }
}

#[test]
fn power_sum_closed_form_for_alpha_simple() {
    let s = PnSpace::alpha_simple(line(), BaseCdf::Exponential, 2.0).unwrap();
    let (np, nq) = (s.nu(&[2.0]).unwrap(), s.nu(&[1.0]).unwrap());
    let tau = TriangleFn::TauTL(TNorm::M, LOp::PowerSum(2.0));
    assert!(close(tau.apply(&np, &nq).eval(9.0), E1, 1e-9));
}

#[test]
fn triangle_checker_verdicts() {
    let samples = default_samples();
    assert!(check_triangle_axioms(&TriangleFn::tau_m(), &samples, 3).passed());
    assert!(check_triangle_axioms(&TriangleFn::PointwiseM, &samples, 3).passed());
    assert!(check_triangle_axioms(&TriangleFn::TauTL(TNorm::M, LOp::PowerSum(2.0)), &samples, 3).passed());
    let (f, g) = (exp(1.0), Ddf::scaled(BaseCdf::UniformUnit, 2.0).unwrap());
    let (m, tm) = (TriangleFn::PointwiseM.apply(&f, &g), TriangleFn::tau_m().apply(&f, &g));
    for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
        assert!(m.eval(x) >= tm.eval(x));
    }
}

#[test]
fn phi_transformed_tau_m() {
    let steps = (Ddf::eps(1.0).unwrap(), Ddf::eps(1.0).unwrap());
    let plain = TriangleFn::tau_m().phi_transform(PhiMap::identity()).apply(&steps.0, &steps.1);
    assert_eq!(plain.eval(2.0), 0.0);
    assert_eq!(plain.eval(2.001), 1.0);
    let r = TriangleFn::tau_m().phi_transform(PhiMap::power(2.0).unwrap()).apply(&steps.0, &steps.1);
    assert_eq!(r.eval(3.99), 0.0);
    assert_eq!(r.eval(4.01), 1.0);
}

#[test]
fn quasi_inverses_of_maps() {
    assert!(close(PhiMap::power(2.0).unwrap().quasi_inverse().eval(4.0), 16.0, 1e-12));
    let id = PhiMap::identity().quasi_inverse();
    for y in [0.0, 0.5, 7.0] {
        assert_eq!(id.eval(y), y);
    }
    let b = 3.0;
    let q = PhiMap::capped(b).unwrap().quasi_inverse();
    for y in [0.5, 3.0, 10.0] {
        assert!(close(q.eval(y), y.min(b), 1e-12));
    }
}

#[test]
fn transformed_ddfs() {
    let f = exp(1.0);
    let same = transform_ddf(&f, &PhiMap::identity()).unwrap();
    for x in [0.1, 1.0, 3.0] {
        assert_eq!(same.eval(x), f.eval(x));
    }
    let step = transform_ddf(&Ddf::eps(1.0).unwrap(), &PhiMap::power(2.0).unwrap()).unwrap();
    assert_eq!(step.eval(1.0), 0.0);
    assert_eq!(step.eval(1.0 + 1e-9), 1.0);
    let g = transform_ddf(&f, &PhiMap::power(2.0).unwrap()).unwrap();
    assert!(close(g.eval(4.0), 1.0 - (-2.0f64).exp(), 1e-12));
}

#[test]
fn transform_of_simple_is_alpha_simple() {
    let s = PnSpace::simple(plane(), BaseCdf::Exponential);
    let t = transform_space(&s, &PhiMap::power(2.0).unwrap()).unwrap();
    let id = transform_space(&s, &PhiMap::identity()).unwrap();
    // ν'_p(x) = H(x / ‖p‖²) with H(y) = G(√y)
    let h = |y: f64| 1.0 - (-y.sqrt()).exp();
    for p in [[1.0, 0.0], [0.3, -2.0], [5.0, 5.0]] {
        let n2 = p[0] * p[0] + p[1] * p[1];
        for x in [0.05, 1.0, 10.0, 80.0] {
            assert!(close(t.nu(&p).unwrap().eval(x), h(x / n2), 1e-12));
            assert!(close(id.nu(&p).unwrap().eval(x), s.nu(&p).unwrap().eval(x), 1e-12));
        }
    }
    assert!(check_serstnev(&t, &SerstnevKind::Alpha(2.0), &params()).passed());
    assert!(check_pn_axioms(&t, &params()).passed());
}

#[test]
fn neighbourhood_refinement() {
    let s = PnSpace::simple(line(), BaseCdf::Exponential);
    let id = topology_refinement_probe(&s, &PhiMap::identity(), 20, 1, 12).unwrap();
    assert!(id.forward_ok);
    assert!(id.forward.iter().all(|(m, n)| m == n));
    let sq = topology_refinement_probe(&s, &PhiMap::power(2.0).unwrap(), 20, 1, 12).unwrap();
    assert!(sq.forward_ok);
    assert_eq!(sq.reverse_ok, Some(true));
    let cap = topology_refinement_probe(&s, &PhiMap::capped(2.0).unwrap(), 20, 1, 12).unwrap();
    assert!(cap.forward_ok);
}

#[test]
fn probabilistic_norm_values() {
    let s = PnSpace::alpha_simple(line(), BaseCdf::Exponential, 2.0).unwrap();
    assert!(close(s.nu(&[2.0]).unwrap().eval(4.0), E1, 1e-12));
    let e = PnSpace::eps_of_g(line(), FNorm::norm_ratio(1.0).unwrap());
    let n = e.nu(&[3.0]).unwrap();
    assert_eq!(n.eval(0.75), 0.0);
    assert_eq!(n.eval(0.75 + 1e-12), 1.0);
    for sp in [s, e, PnSpace::simple(line(), BaseCdf::UniformUnit)] {
        let z = sp.nu(&[0.0]).unwrap();
        assert_eq!(z.eval(1e-12), 1.0);
    }
}

#[test]
fn pn_axioms_of_standard_spaces() {
    let s = PnSpace::simple(plane(), BaseCdf::Exponential);
    assert!(check_pn_axioms(&s, &params()).passed());
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 2.0).unwrap();
    assert!(check_pn_axioms(&a, &params()).passed());
    let menger = a.with_triangles(TriangleFn::tau_m(), TriangleFn::tau_m());
    let r = check_pn_axioms(&menger, &params());
    assert!(!r.passed());
    assert!(r.checks.iter().any(|c| !c.passed && c.witness.is_some()));
}

#[test]
fn serstnev_conditions() {
    let s = PnSpace::simple(plane(), BaseCdf::Exponential);
    assert!(check_serstnev(&s, &SerstnevKind::Plain, &params()).passed());
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 2.0).unwrap();
    assert!(check_serstnev(&a, &SerstnevKind::Alpha(2.0), &params()).passed());
    assert!(!check_serstnev(&a, &SerstnevKind::Plain, &params()).passed());
    let sq = PhiMap::power(2.0).unwrap();
    let t = transform_space(&s, &sq).unwrap();
    assert!(check_serstnev(&t, &SerstnevKind::Phi(sq), &params()).passed());
}

#[test]
fn alpha_characterization() {
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 2.0).unwrap();
    assert!(check_characterization_alpha(&a, 2.0, &params()).unwrap().passed());
    let r = check_characterization_alpha(&a, 2.5, &params()).unwrap();
    assert!(!r.passed());
}

#[test]
fn beta_values() {
    assert!(close(beta(0.5, 2.0), 0.5f64.sqrt(), 1e-15));
    for l in [0.0, 0.2, 0.5, 1.0] {
        assert!(close(beta(l, 1.0), 1.0, 1e-15));
    }
    for a in [1.5, 2.0, 3.0] {
        assert!(close(beta(0.0, a), 1.0, 1e-15));
        assert!(close(beta(1.0, a), 1.0, 1e-15));
    }
    // both sides of the upgraded law at λ = 1/2: G(2x/‖p‖²)
    let a = PnSpace::alpha_simple(line(), BaseCdf::Exponential, 2.0).unwrap();
    let p = 1.7;
    let b = beta(0.5, 2.0);
    let half = a.nu(&[p / 2.0]).unwrap();
    let lhs = TriangleFn::tau_m().apply(&half, &half);
    let rhs = a.nu(&[b * p]).unwrap();
    for x in [0.1, 1.0, 5.0] {
        let want = 1.0 - (-2.0 * x / (p * p)).exp();
        assert!(close(lhs.eval(x), want, 1e-9));
        assert!(close(rhs.eval(x), want, 1e-9));
    }
}

#[test]
fn tau_m_upgrade_in_alpha_simple() {
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 2.0).unwrap();
    assert!(check_tau_m_upgrade(&a, 2.0, &params()).unwrap().passed());
}

#[test]
fn better_structures() {
    let s = PnSpace::simple(plane(), BaseCdf::Exponential).with_triangles(
        TriangleFn::TauT(TNorm::Product),
        TriangleFn::TauTStar(TNorm::Product.dual()),
    );
    let upgraded = s.with_triangles(s.tau.clone(), TriangleFn::tau_m());
    let b = better_than(&upgraded, &s, &params()).unwrap();
    assert!(b.is_better());
    assert_eq!(better_than(&s, &s, &params()).unwrap().ordering, Ordering::Equal);

    let a = PnSpace::alpha_simple(line(), BaseCdf::Exponential, 2.0).unwrap();
    let tg = make_tg(BaseCdf::Exponential, 2.0).unwrap();
    let weak = a.with_triangles(TriangleFn::TauT(tg.clone()), TriangleFn::TauTStar(tg.dual()));
    let b = better_than(&a, &weak, &CheckParams::new(12, 7)).unwrap();
    assert!(b.is_better(), "{:?}", b.report);
}

#[test]
fn fnorm_correspondence() {
    let r = fnorm_to_pn(&line(), &FNorm::norm_ratio(1.0).unwrap(), &params());
    assert!(r.fnorm_axioms.passed());
    assert!(r.pn_axioms.passed());
    let n = fnorm_to_pn(&plane(), &FNorm::PlainNorm, &params());
    assert!(n.serstnev.checks[0].passed);
    let root = fnorm_to_pn(&plane(), &FNorm::norm_power(0.5).unwrap(), &params());
    assert!(root.fnorm_axioms.passed());
    assert!(!root.serstnev.checks[0].passed);
}

#[test]
fn scalar_holder_inequality() {
    let (alpha, lambda, a, b) = (2.0f64, 0.3f64, 1.0f64, 2.0f64);
    let lhs = (a + b).powf(1.0 - alpha);
    let rhs = lambda.powf(alpha) * a.powf(1.0 - alpha) + (1.0 - lambda).powf(alpha) * b.powf(1.0 - alpha);
    assert!(close(lhs, 1.0 / 3.0, 1e-15));
    assert!(close(rhs, 0.335, 1e-15));
    assert!(lhs <= rhs);
    assert!(holder_scalar_check(500, 11).passed);
}

#[test]
fn strong_neighbourhoods() {
    let s = PnSpace::simple(line(), BaseCdf::Exponential);
    for t in [0.01, 0.5, 2.0] {
        assert!(neighborhood_contains(&s, &[1.5], t, &[1.5]).unwrap());
    }
    assert!(neighborhood_contains(&s, &[0.0], 0.5, &[0.1]).unwrap());
    assert!(close(s.nu(&[0.1]).unwrap().eval(0.5), 1.0 - (-5.0f64).exp(), 1e-12));
    let half = PnSpace::simple(line(), BaseCdf::HalfExponential);
    for q in [1e-9, 0.3, 100.0] {
        assert!(!neighborhood_contains(&half, &[0.0], 0.4, &[q]).unwrap());
    }
}

#[test]
fn semi_metric_delta() {
    let s = PnSpace::simple(plane(), BaseCdf::Exponential);
    assert!(delta(&s, &[1.0, 2.0], &[1.0, 2.0]).unwrap() <= 1e-9);
    let e = PnSpace::eps_of_g(plane(), FNorm::PlainNorm);
    for (p, q) in [([0.0, 0.0], [0.3, 0.4]), ([1.0, 1.0], [4.0, 5.0]), ([0.0, 0.0], [0.06, 0.08])] {
        let want = f64::hypot(p[0] - q[0], p[1] - q[1]).min(1.0);
        assert!(close(delta(&e, &p, &q).unwrap(), want, 1e-9));
    }
}

#[test]
fn radius_of_simple_sets() {
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 2.0).unwrap();
    let set = SetSpec::Finite { points: vec![vec![1.0, 0.0], vec![0.0, 3.0]] };
    let r = probabilistic_radius(&a, &set).unwrap();
    for x in [0.5, 3.0, 20.0] {
        assert!(close(r.radius.eval(x), 1.0 - (-x / 9.0).exp(), 1e-12));
    }
    let z = probabilistic_radius(&a, &SetSpec::Singleton { point: vec![0.0, 0.0] }).unwrap();
    assert_eq!(z.radius.eval(1e-9), 1.0);
    assert!(is_d_bounded(&a, &SetSpec::Singleton { point: vec![0.0, 0.0] }).unwrap().0);
    let s = PnSpace::simple(plane(), BaseCdf::Exponential);
    let ball = probabilistic_radius(&s, &SetSpec::Ball { radius: 1.0 }).unwrap();
    assert!(ball.in_dplus);
    for x in [0.5, 3.0] {
        assert!(close(ball.radius.eval(x), 1.0 - (-x).exp(), 1e-9));
    }
}

#[test]
fn d_boundedness() {
    let half = PnSpace::simple(line(), BaseCdf::HalfExponential);
    assert!(!is_d_bounded(&half, &SetSpec::Singleton { point: vec![2.0] }).unwrap().0);
    let e = PnSpace::eps_of_g(line(), FNorm::norm_ratio(1.0).unwrap());
    let (ok, r) = is_d_bounded(&e, &SetSpec::line(vec![1.0])).unwrap();
    assert!(ok);
    assert_eq!(r.radius.eval(1.01), 1.0);
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 3.0).unwrap();
    let set = SetSpec::Finite { points: vec![vec![10.0, 0.0], vec![-4.0, 7.0], vec![0.1, 0.1]] };
    assert!(is_d_bounded(&a, &set).unwrap().0);
}

#[test]
fn boundedness_verdicts() {
    let e = PnSpace::eps_of_g(line(), FNorm::norm_ratio(1.0).unwrap());
    let finite = SetSpec::Finite { points: vec![vec![1e6], vec![-3.0]] };
    assert_eq!(is_bounded(&e, &finite, 64, 1 << 20).unwrap().verdict, Verdict::Bounded);
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 2.0).unwrap();
    let b = is_bounded(&a, &SetSpec::Ball { radius: 3.0 }, 64, 1 << 20).unwrap();
    assert_eq!(b.verdict, Verdict::Bounded);
    assert_eq!(b.criterion_a, Some(true));
    let l = is_bounded(&e, &SetSpec::line(vec![1.0]), 64, 1 << 20).unwrap();
    assert_eq!(l.verdict, Verdict::NotBounded);
    assert_eq!(l.criterion_a, Some(false));
}

#[test]
fn criterion_a_against_d_boundedness() {
    let a = PnSpace::alpha_simple(plane(), BaseCdf::Exponential, 2.0).unwrap();
    let r = check_bounded_iff_dbounded(&a, &PhiMap::power(2.0).unwrap(), &SetSpec::Ball { radius: 5.0 }, 64, 1 << 20, &params())
        .unwrap();
    assert!(r.report.passed());
    assert_eq!(r.criterion_a, Some(true));
    assert!(r.d_bounded);

    let half = PnSpace::simple(line(), BaseCdf::HalfExponential);
    let r = check_bounded_iff_dbounded(&half, &PhiMap::identity(), &SetSpec::Singleton { point: vec![2.0] }, 64, 1 << 20, &params())
        .unwrap();
    assert!(r.report.passed());
    assert_eq!(r.criterion_a, Some(false));
    assert!(!r.d_bounded);
    assert_eq!(r.bounded.verdict, Verdict::Bounded);

    let s = PnSpace::simple(line(), BaseCdf::Exponential);
    let r = check_bounded_iff_dbounded(&s, &PhiMap::identity(), &SetSpec::Singleton { point: vec![0.0] }, 64, 1 << 20, &params())
        .unwrap();
    assert_eq!(r.criterion_a, Some(true));
    assert!(r.d_bounded);
    assert_eq!(r.bounded.verdict, Verdict::Bounded);
}

#[test]
fn criterion_a_needs_unbounded_quasi_inverse() {
    let s = PnSpace::simple(line(), BaseCdf::Exponential);
    let e = check_bounded_iff_dbounded(&s, &PhiMap::capped(2.0).unwrap(), &SetSpec::Ball { radius: 1.0 }, 8, 64, &params());
    assert!(e.is_err());
}

#[test]
fn continuity_matches_dplus() {
    let pts = vec![vec![1.0, 0.0], vec![-3.0, 2.0]];
    let nulls = vec![default_null_sequence()];
    let s = PnSpace::simple(plane(), BaseCdf::Exponential);
    let p = scalar_continuity_probe(&s, &pts, &nulls).unwrap();
    assert!(p.continuous && p.in_dplus);
    let h = PnSpace::simple(plane(), BaseCdf::HalfExponential);
    let p = scalar_continuity_probe(&h, &pts, &nulls).unwrap();
    assert!(!p.continuous && !p.in_dplus);
    assert!(p.report.passed());
}

#[test]
fn fnormed_d_boundedness() {
    let ks = [0.5, 2.0, 10.0];
    let r = fnormed_dbounded_props(&plane(), &FNorm::PlainNorm, &SetSpec::Ball { radius: 1.0 }, &ks).unwrap();
    assert!(r.passed());
    let r = fnormed_dbounded_props(&line(), &FNorm::norm_ratio(1.0).unwrap(), &SetSpec::line(vec![1.0]), &ks).unwrap();
    assert!(r.passed());
    let r = fnormed_dbounded_props(&plane(), &FNorm::norm_power(0.5).unwrap(), &SetSpec::Singleton { point: vec![0.0, 0.0] }, &ks)
        .unwrap();
    assert!(r.passed());
}

#[test]
fn eps_of_g_serstnev_flag() {
    assert!(matches!(PnSpace::eps_of_g(line(), FNorm::PlainNorm).norm, ProbNorm::EpsOfG(_)));
}
