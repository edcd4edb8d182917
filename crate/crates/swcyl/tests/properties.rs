use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use swcyl::circle::ModeBand;
use swcyl::config::RunConfig;
use swcyl::euclid2::{act_on_cylinder, coadjoint, inverse, multiply, rep_matrix, CoadjointPoint, CylinderPoint, GroupElement};
use swcyl::flat_moyal::{h_inverse, h_multiply, HeisenbergElement};
use swcyl::swkernel::{builtin, l_coeff, KernelParams, SymbolFunction};
use swcyl::verify::PropertyReport;

fn group() -> impl Strategy<Value = GroupElement> {
    (-2.0..2.0f64, -1.5..1.5f64, -1.5..1.5f64, 0.0..std::f64::consts::TAU).prop_map(|(e, x, y, p)| GroupElement::new(e, [x, y], p))
}

fn point() -> impl Strategy<Value = CylinderPoint> {
    (0.0..std::f64::consts::TAU, -4.0..4.0f64).prop_map(|(a, j)| CylinderPoint::new(a, j))
}

fn heis() -> impl Strategy<Value = HeisenbergElement> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b, c)| HeisenbergElement::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_is_associative_with_inverses(g1 in group(), g2 in group(), g3 in group()) {
        let left = multiply(&multiply(&g1, &g2), &g3);
        let right = multiply(&g1, &multiply(&g2, &g3));
        prop_assert!(left.distance(&right) < 1e-12);
        prop_assert!(multiply(&g1, &inverse(&g1)).distance(&GroupElement::identity()) < 1e-12);
    }

    #[test]
    fn coadjoint_action_preserves_casimir(g in group(), beta in -1.0..1.0f64, px in -2.0..2.0f64, py in -2.0..2.0f64, j in -3.0..3.0f64) {
        let x = CoadjointPoint::new(beta, [px, py], j);
        let y = coadjoint(&g, &x);
        prop_assert!((y.casimir() - x.casimir()).abs() < 1e-10);
    }

    #[test]
    fn cylinder_action_is_an_action(g1 in group(), g2 in group(), u in point(), r in 0.5..2.0f64) {
        let step = act_on_cylinder(&g1, &act_on_cylinder(&g2, &u, r), r);
        let once = act_on_cylinder(&multiply(&g1, &g2), &u, r);
        prop_assert!(step.distance(&once) < 1e-10);
    }

    #[test]
    fn heisenberg_law_is_associative(g1 in heis(), g2 in heis(), g3 in heis()) {
        let l = h_multiply(&h_multiply(&g1, &g2), &g3);
        let r = h_multiply(&g1, &h_multiply(&g2, &g3));
        prop_assert!((l.a - r.a).abs() + (l.b - r.b).abs() + (l.c - r.c).abs() < 1e-12);
        let e = h_multiply(&g1, &h_inverse(&g1));
        prop_assert!(e.a.abs() + e.b.abs() + e.c.abs() < 1e-12);
    }

    #[test]
    fn random_parameters_are_admissible(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SymbolFunction::from_params("random", KernelParams::random(&mut rng)).unwrap();
        let rep = a.check_admissible();
        prop_assert!(rep.hermitian_residual < 1e-12);
        prop_assert!(rep.traciality_residual < 1e-9);
        prop_assert!(a.flags().hermitian);
    }

    #[test]
    fn report_pass_tracks_residual(res in 0.0..2.0f64, tol in 0.0..2.0f64) {
        let mut r = PropertyReport::new("x", res, tol);
        prop_assert_eq!(r.pass, res <= tol);
        r.retolerate(res);
        prop_assert!(r.pass);
    }

    #[test]
    fn config_echo_parses_back(n in 30usize..80, seed in any::<u64>(), k in 8usize..128, name in prop::sample::select(vec!["parity", "sqrt-cos", "half-cos", "collision"])) {
        let text = format!("kernel.builtin = {name}\nband.N = {n}\nrun.seed = {seed}\ngrid.K = {k}\n");
        let c = RunConfig::parse(&text, None).unwrap();
        let echo: String = c.resolved().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        prop_assert_eq!(RunConfig::parse(&echo, None).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn representation_is_a_homomorphism(g1 in group(), g2 in group()) {
        let band = ModeBand::new(40).unwrap();
        let prod = rep_matrix(&g1, 1.0, band).unwrap().compose(&rep_matrix(&g2, 1.0, band).unwrap()).unwrap();
        let direct = rep_matrix(&multiply(&g1, &g2), 1.0, band).unwrap();
        prop_assert!(prod.distance_within(&direct, band.interior()).unwrap() < 1e-10);
    }

    #[test]
    fn parity_coefficients_have_bessel_symmetries(n in -20i64..20, j in -6.0..6.0f64) {
        let a = builtin("parity").unwrap();
        let l = l_coeff(&a, n, j);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((l_coeff(&a, -n, j) - sign * l).norm() < 1e-13);
        prop_assert!((l_coeff(&a, n, -j) - sign * l).norm() < 1e-13);
        prop_assert!(l.im.abs() < 1e-13);
    }
}
