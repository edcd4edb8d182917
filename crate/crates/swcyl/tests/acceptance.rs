//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swcyl::circle::{FourierOperator, ModeBand};
use swcyl::euclid2::CylinderPoint;
use swcyl::flat_moyal::PhaseGrid;
use swcyl::quadrature::JWeighting;
use swcyl::swkernel::{builtin, l_coeff, omega_matrix, CylinderGrid, KernelParams, Quantizer, SymbolFunction};
use swcyl::verify::{
    check_injectivity, check_overlap_structure, check_trace, covariance_residual, flat_suite, infinitesimal_residual,
    random_group_element, random_point, solve_covariance_recurrence, traciality_residuals, TracialitySettings,
};

struct Line {
    pass: bool,
    text: String,
}

fn line(pass: bool, text: String) -> Line {
    Line { pass, text }
}

/// `J_n(x)` by its power series; independent of the library's recurrences.
fn bessel_series(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs();
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let mut sum = term;
    for k in 1..200u64 {
        term *= -half * half / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    if n < 0 && m % 2 == 1 {
        -sum
    } else {
        sum
    }
}

fn ac1() -> Line {
    let a = builtin("parity").unwrap();
    let mut worst: f64 = 0.0;
    for n in -16..=16 {
        for i in 0..=100 {
            let j = -5.0 + 0.1 * i as f64;
            worst = worst.max((l_coeff(&a, n, j) - bessel_series(n, 2.0 * j)).norm());
        }
    }
    line(worst <= 1e-10, format!("Bessel specialization: max |L_n(j) - J_n(2j)| = {worst:.2e} (tol 1e-10)"))
}

fn ac2(rng: &mut ChaCha8Rng) -> Line {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = SymbolFunction::from_params("random", KernelParams::random(rng)).unwrap();
        worst = worst.max(a.check_admissible().traciality_residual);
    }
    line(worst <= 1e-9, format!("admissibility identity: max residual over 50 random (h, phi) = {worst:.2e} (tol 1e-9)"))
}

fn ac3(rng: &mut ChaCha8Rng) -> Line {
    let band = ModeBand::new(64).unwrap();
    let mut worst: f64 = 0.0;
    let mut worst_inf: f64 = 0.0;
    for _ in 0..100 {
        let a = SymbolFunction::from_params("random", KernelParams::random(rng)).unwrap();
        let g = random_group_element(rng);
        let u = random_point(rng);
        worst = worst.max(covariance_residual(&a, &g, &u, 1.0, band).unwrap());
        let om = omega_matrix(&a, &CylinderPoint::origin(), band).unwrap();
        worst_inf = worst_inf.max(infinitesimal_residual(&om));
    }
    line(
        worst <= 1e-6 && worst_inf <= 1e-9,
        format!("covariance: 100 random (g, u, a), N=64: max {worst:.2e} (tol 1e-6); infinitesimal at u0 {worst_inf:.2e} (tol 1e-9)"),
    )
}

fn ac4() -> Line {
    let sol = solve_covariance_recurrence(ModeBand::new(8).unwrap()).unwrap();
    let rep = sol.report();
    line(
        rep.pass,
        format!(
            "recurrence null space, N=8: dim {} (predicted {}), projection residual {:.2e} (tol 1e-8)",
            sol.dim(),
            sol.predicted_dim,
            sol.projection_residual
        ),
    )
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m: f64, &x| m.max(x))
}

fn ac5() -> Line {
    let a = builtin("sqrt-cos").unwrap();
    let rs = [0, 1, 2];
    let s40 = TracialitySettings::default();
    let r40 = max_of(&traciality_residuals(&a, &rs, &s40));
    let refined_ok = if r40 < 5e-3 {
        true
    } else {
        let r80 = max_of(&traciality_residuals(&a, &rs, &TracialitySettings { j_max: 80.0, ..s40 }));
        r80 <= 0.5 * r40
    };
    let taper = max_of(&traciality_residuals(&a, &rs, &TracialitySettings { weighting: JWeighting::Tapered, ..s40 }));
    line(
        r40 <= 1e-2 && refined_ok,
        format!(
            "traciality (sqrt-cos, r=0,1,2, J_max=40, dj=0.05, extrapolated taper): {r40:.2e} (tol 1e-2, refined ok: {refined_ok}); plain taper {taper:.2e}"
        ),
    )
}

fn ac6() -> Line {
    let a = builtin("parity").unwrap();
    let res = max_of(&traciality_residuals(&a, &[0, 1, 2], &TracialitySettings::default()));
    let reps = check_overlap_structure(&a, ModeBand::new(32).unwrap());
    let spread = reps[0].residual;
    let corr = reps[1].context.get("correlation").and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
    let constant = reps[1].context.get("fitted_constant").and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
    line(
        res > 0.1 && reps.iter().all(|r| r.pass),
        format!("traciality failure for a=1: residual {res:.3} (> 0.1); mode spread {spread:.2e} (tol 1e-3); J0 correlation {corr:.6} (>= 0.999), constant {constant:.4}"),
    )
}

fn ac7(rng: &mut ChaCha8Rng) -> Line {
    let band = ModeBand::new(24).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["twisted-h", "half-cos"] {
        let c = check_injectivity(&builtin(name).unwrap(), band, rng).unwrap();
        let d = c.min_pair_distance.unwrap_or(0.0);
        ok &= d > 1e-4 && c.pairs >= 200;
        parts.push(format!("{name} min distance {d:.3e} over {} pairs", c.pairs));
    }
    let c = check_injectivity(&builtin("collision").unwrap(), band, rng).unwrap();
    let w = c.witness.map_or(f64::INFINITY, |w| w.distance);
    ok &= w <= 1e-8;
    parts.push(format!("collision witness distance {w:.2e} (tol 1e-8)"));
    line(ok, format!("injectivity: {}", parts.join("; ")))
}

fn ac8() -> Line {
    let band = ModeBand::new(32).unwrap();
    let u = CylinderPoint::new(0.4, 0.7);
    let reps = check_trace(&builtin("parity").unwrap(), &u, band).unwrap();
    let unit = reps.iter().find(|r| r.name == "trace.parity.unit").expect("unit trace report");
    let mut others = Vec::new();
    for name in ["sqrt-cos", "twisted-h", "collision", "half-cos"] {
        let a = builtin(name).unwrap();
        let rep = a.check_admissible();
        others.push(format!("{name} {:.4}/{:.4}", rep.half_a0.re, rep.mean_a0_api.re));
    }
    line(
        unit.pass,
        format!("unit trace a=1: |KD - 1| = {:.2e} (tol 1e-10); a(0)/2 vs (a(0)+a(pi))/2: {}", unit.residual, others.join(", ")),
    )
}

fn ac9() -> Line {
    let reps = flat_suite(PhaseGrid::default()).unwrap();
    let wanted = ["flat.commutator", "flat.direct-quadrature", "flat.round-trip"];
    let picked: Vec<_> = reps.iter().filter(|r| wanted.contains(&r.name.as_str())).collect();
    line(
        picked.len() == 3 && picked.iter().all(|r| r.pass),
        format!(
            "flat Moyal: {} (tol 1e-3)",
            picked.iter().map(|r| format!("{} {:.2e}", r.name, r.residual)).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn random_operator(band: ModeBand, support: i64, rng: &mut ChaCha8Rng) -> FourierOperator {
    FourierOperator::from_fn(band, |m, n| {
        if m.abs() <= support && n.abs() <= support {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn ac10(rng: &mut ChaCha8Rng) -> Line {
    let a = builtin("half-cos").unwrap();
    let grid = CylinderGrid::new(64, 200.0, 0.05, JWeighting::Extrapolated).unwrap();
    let q = Quantizer::with_default_measure(&a, grid, ModeBand::new(8).unwrap()).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f = q.wigner(&random_operator(q.band(), 2, rng)).unwrap();
        let g = q.wigner(&random_operator(q.band(), 2, rng)).unwrap();
        let lhs = q.integrate(&q.star(&f, &g).unwrap()).unwrap();
        let rhs = q.integrate(&f.mul(&g).unwrap()).unwrap();
        worst = worst.max((lhs - rhs).norm());
    }
    let kappa = PI * q.measure() * (a.value(0.0) + a.value(PI)).re;
    line(
        worst <= 5e-3,
        format!("star trace identity (half-cos, J_max=200, N=8, |m|<=2, 20 pairs): max {worst:.2e} (tol 5e-3), kappa {kappa:.4}"),
    )
}

fn report(id: &str, failed: &mut usize, run: impl FnOnce() -> Line) {
    let t = Instant::now();
    let l = run();
    *failed += usize::from(!l.pass);
    println!("{id} {} {} [{:.1}s]", if l.pass { "PASS" } else { "FAIL" }, l.text, t.elapsed().as_secs_f64());
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut failed = 0;
    report("AC1", &mut failed, ac1);
    report("AC2", &mut failed, || ac2(&mut rng));
    report("AC3", &mut failed, || ac3(&mut rng));
    report("AC4", &mut failed, ac4);
    report("AC5", &mut failed, ac5);
    report("AC6", &mut failed, ac6);
    report("AC7", &mut failed, || ac7(&mut rng));
    report("AC8", &mut failed, ac8);
    report("AC9", &mut failed, ac9);
    report("AC10", &mut failed, || ac10(&mut rng));
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
