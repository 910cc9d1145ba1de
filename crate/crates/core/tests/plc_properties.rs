mod common;

use common::{defect_grid, linspace, max_abs_slope, quadratic_grid};
use normcurve::{LinearFn, PLConvex, Window};
use proptest::prelude::*;

fn window(lo: f64, hi: f64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn arb_plconvex() -> impl Strategy<Value = PLConvex> {
    (
        -3i64..=3,
        prop::collection::vec((-5.0f64..5.0, 1i64..=3), 0..12),
        -2.0f64..2.0,
    )
        .prop_map(|(left, jumps, v0)| PLConvex::from_jumps(left, jumps, (0.0, v0)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn midpoint_convexity(f in arb_plconvex(), t1 in -8.0f64..8.0, gap1 in 0.0f64..4.0, gap2 in 0.0f64..4.0) {
        let (t2, t3) = (t1 + gap1, t1 + gap1 + gap2);
        if gap1 + gap2 > 0.0 {
            let lam = gap2 / (gap1 + gap2);
            let interp = lam * f.eval(t1) + (1.0 - lam) * f.eval(t3);
            prop_assert!(f.eval(t2) <= interp + 1e-9);
        }
    }

    #[test]
    fn slopes_strictly_increase(f in arb_plconvex()) {
        prop_assert!(f.slopes().windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(f.slopes().len(), f.knots().len() + 1);
    }

    #[test]
    fn right_derivative_matches_forward_difference(f in arb_plconvex(), t in -8.0f64..8.0) {
        let h = 1e-7;
        if f.knots().iter().all(|k| (k - t).abs() > 2.0 * h) {
            let fd = (f.eval(t + h) - f.eval(t)) / h;
            prop_assert!((fd - f.right_derivative(t) as f64).abs() < 1e-4);
        }
    }

    #[test]
    fn envelope_is_pointwise_max(fs in prop::collection::vec(arb_plconvex(), 1..5), t in -10.0f64..10.0) {
        let env = PLConvex::max_envelope(&fs).unwrap();
        let direct = fs.iter().map(|f| f.eval(t)).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((env.eval(t) - direct).abs() <= 1e-12 * direct.abs().max(1.0) + 1e-12);
        prop_assert!(env.slopes().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn shift_translates(f in arb_plconvex(), d in -6.0f64..6.0, t in -6.0f64..6.0) {
        prop_assert!((f.shift(d).eval(t) - f.eval(t + d)).abs() < 1e-9);
    }

    #[test]
    fn tangent_lies_below(f in arb_plconvex(), s in -6.0f64..6.0, t in -10.0f64..10.0) {
        let l = f.tangent_at(s);
        prop_assert!(f.eval(t) - l.eval(t) >= -1e-9);
    }

    #[test]
    fn tangent_normalization_has_minimum_zero_at_s(f in arb_plconvex(), s in -6.0f64..6.0) {
        let g = f.subtract_linear(f.tangent_at(s));
        prop_assert!(g.eval(s).abs() < 1e-9);
        for t in linspace(-10.0, 10.0, 201) {
            prop_assert!(g.eval(t) >= -1e-9);
        }
    }

    #[test]
    fn defect_nonnegative_and_zero_iff_linear(f in arb_plconvex(), a in 0.1f64..3.0) {
        let w = window(-6.0, 6.0);
        let d = f.sup_tangent_defect(a, w).unwrap();
        prop_assert!(d.value >= 0.0);
        let kinked = f.knots().iter().any(|&k| k > w.lo && k < w.hi);
        prop_assert_eq!(d.value > 0.0, kinked);
    }

    #[test]
    fn defect_matches_coarse_grid(f in arb_plconvex(), a in 0.2f64..3.0) {
        let w = window(-6.0, 6.0);
        let n = 300;
        let exact = f.sup_tangent_defect(a, w).unwrap().value;
        let grid = defect_grid(&f, a, w, n);
        let h = (w.len() / (n - 1) as f64).max(2.0 * a / (n - 1) as f64);
        prop_assert!(grid <= exact + 1e-9, "grid {grid} exceeds exact {exact}");
        prop_assert!(exact - grid <= 4.0 * h * max_abs_slope(&f).max(1.0), "exact {exact}, grid {grid}");
    }

    #[test]
    fn witness_attains_value(f in arb_plconvex(), a in 0.2f64..3.0) {
        let w = window(-6.0, 6.0);
        let d = f.sup_tangent_defect(a, w).unwrap();
        let slope = f.derivative(d.s, d.side) as f64;
        let again = f.eval(d.t) - f.eval(d.s) - slope * (d.t - d.s);
        prop_assert!((again - d.value).abs() < 1e-9);
        prop_assert!((d.t - d.s).abs() <= a + 1e-12);
        prop_assert!(w.contains(d.s) && w.contains(d.t));
    }

    #[test]
    fn quadratic_constant_scales_with_jumps(
        jumps in prop::collection::vec((-4.0f64..4.0, 1i64..=2), 1..6),
    ) {
        let w = window(-5.0, 5.0);
        let f = PLConvex::from_jumps(0, jumps.clone(), (0.0, 0.0)).unwrap();
        let g = PLConvex::from_jumps(0, jumps.iter().map(|&(t, k)| (t, 2 * k)), (0.0, 0.0)).unwrap();
        let cf = f.min_quadratic_constant(w).value;
        let cg = g.min_quadratic_constant(w).value;
        prop_assert!((cg - 2.0 * cf).abs() < 1e-9 * cf.max(1.0));
    }
}

#[test]
fn defect_examples_against_dense_grid() {
    let w = window(-5.0, 5.0);
    let ramp = PLConvex::from_jumps(0, [(0.0, 1)], (0.0, 0.0)).unwrap();
    let abs = PLConvex::from_jumps(-1, [(0.0, 2)], (0.0, 0.0)).unwrap();
    let line = PLConvex::linear(1, 0.0);

    let exact = ramp.sup_tangent_defect(2.0, w).unwrap().value;
    assert_eq!(exact, 2.0);
    assert!((defect_grid(&ramp, 2.0, w, 2001) - 2.0).abs() < 1e-9);

    // the tangent at the kink has slope ±1, so the defect reaches 2a
    let exact = abs.sup_tangent_defect(1.0, w).unwrap().value;
    assert_eq!(exact, 2.0);
    assert!((defect_grid(&abs, 1.0, w, 2001) - 2.0).abs() < 1e-9);

    for a in [0.5, 1.0, 7.0] {
        assert_eq!(line.sup_tangent_defect(a, w).unwrap().value, 0.0);
    }
}

#[test]
fn quadratic_constant_examples() {
    let w = window(-5.0, 5.0);
    assert_eq!(PLConvex::linear(3, 1.0).min_quadratic_constant(w).value, 0.0);

    // max(0, t): the 2-D grid contains s = 0 (left slope 0) and t = 1, where t/(1 + t²) peaks
    let ramp = PLConvex::from_jumps(0, [(0.0, 1)], (0.0, 0.0)).unwrap();
    let exact = ramp.min_quadratic_constant(w).value;
    let grid = quadratic_grid(&ramp, w, 2001);
    assert!(grid <= exact + 1e-12);
    assert!(exact - grid < 1e-6, "exact {exact}, grid {grid}");
    assert!((exact - 0.5).abs() < 1e-12);
}

#[test]
fn quadratic_constant_matches_grid_on_kinked_function() {
    let w = window(-3.0, 4.0);
    let f = PLConvex::from_jumps(-2, [(-1.3, 1), (0.4, 2), (2.2, 1)], (0.0, 0.7)).unwrap();
    let exact = f.min_quadratic_constant(w).value;
    let grid = quadratic_grid(&f, w, 2001);
    let h = w.len() / 2000.0;
    assert!(grid <= exact + 1e-9);
    assert!(exact - grid <= 4.0 * h * max_abs_slope(&f));
}

#[test]
fn subtract_linear_examples() {
    let line = PLConvex::linear(1, 0.0);
    let zero = line.subtract_linear(LinearFn::new(1, 0.0));
    assert!(zero.is_linear() && zero.eval(5.0) == 0.0 && zero.right_slope() == 0);
    let ramp = PLConvex::from_jumps(0, [(0.0, 1)], (0.0, 0.0)).unwrap();
    let lowered = ramp.subtract_linear(LinearFn::new(0, 3.0));
    assert_eq!(lowered.eval(2.0), -1.0);
    assert_eq!(lowered.eval(-2.0), -3.0);
}
