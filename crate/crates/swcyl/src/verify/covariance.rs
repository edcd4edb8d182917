use crate::circle::{FourierOperator, ModeBand};
use crate::error::Result;
use crate::euclid2::{act_on_cylinder, inverse, rep_matrix, CylinderPoint, GroupElement};
use crate::swkernel::{omega_matrix, SymbolFunction};

use super::report::PropertyReport;

pub const COVARIANCE_TOL: f64 = 1e-6;
pub const INFINITESIMAL_TOL: f64 = 1e-9;

/// `‖U_r(g) Ω(u) U_r(g)⁻¹ − Ω(g·u)‖_max` on the interior band.
pub fn covariance_residual(
    a: &SymbolFunction,
    g: &GroupElement,
    u: &CylinderPoint,
    r: f64,
    band: ModeBand,
) -> Result<f64> {
    let moved = act_on_cylinder(g, u, r);
    let lhs = rep_matrix(g, r, band)?
        .compose(&omega_matrix(a, u, band)?)?
        .compose(&rep_matrix(&inverse(g), r, band)?)?;
    let rhs = omega_matrix(a, &moved, band)?;
    lhs.distance_within(&rhs, band.interior())
}

pub fn check_covariance(
    a: &SymbolFunction,
    g: &GroupElement,
    u: &CylinderPoint,
    r: f64,
    band: ModeBand,
) -> Result<PropertyReport> {
    let res = covariance_residual(a, g, u, r, band)?;
    Ok(PropertyReport::new("covariance", res, COVARIANCE_TOL)
        .with("kernel", a.name())
        .with("g", g)
        .with("u", u)
        .with("r", r)
        .with("band", band.n()))
}

/// `max |A_{s,r+1} + A_{s,r−1} − A_{s+1,r} − A_{s−1,r}|` over `|r|, |s| ≤ N − 1`.
pub fn infinitesimal_residual(a: &FourierOperator) -> f64 {
    let n = a.band().n() as i64 - 1;
    let mut worst: f64 = 0.0;
    for r in -n..=n {
        for s in -n..=n {
            let v = a.get(s, r + 1) + a.get(s, r - 1) - a.get(s + 1, r) - a.get(s - 1, r);
            worst = worst.max(v.norm());
        }
    }
    worst
}

pub fn check_infinitesimal_covariance(a: &FourierOperator) -> PropertyReport {
    PropertyReport::new("covariance.infinitesimal", infinitesimal_residual(a), INFINITESIMAL_TOL)
        .with("band", a.band().n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::swkernel::builtin;

    #[test]
    fn identity_and_rotation() {
        let band = ModeBand::new(24).unwrap();
        let a = builtin("parity").unwrap();
        let u = CylinderPoint::new(0.4, 1.2);
        assert!(covariance_residual(&a, &GroupElement::identity(), &u, 1.0, band).unwrap() < 1e-14);
        assert!(covariance_residual(&a, &GroupElement::rotation(2.1), &u, 1.0, band).unwrap() < 1e-8);
    }

    #[test]
    fn random_translations_are_covariant() {
        let band = ModeBand::new(40).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for name in ["parity", "twisted-h", "collision"] {
            let a = builtin(name).unwrap();
            for _ in 0..3 {
                let g = GroupElement::new(0.0, [rng.gen_range(-1.4..1.4), rng.gen_range(-1.4..1.4)], rng.gen_range(0.0..std::f64::consts::TAU));
                let u = CylinderPoint::new(rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(-3.0..3.0));
                let res = covariance_residual(&a, &g, &u, 1.0, band).unwrap();
                assert!(res < 1e-6, "{name} {res}");
            }
        }
    }

    #[test]
    fn infinitesimal_examples() {
        let band = ModeBand::new(8).unwrap();
        assert_eq!(infinitesimal_residual(&FourierOperator::identity(band)), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let av: Vec<f64> = (0..33).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let bv: Vec<f64> = (0..33).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let op = FourierOperator::from_fn(band, |r, s| C64::new(av[(r + s + 16) as usize] + bv[(r - s + 16) as usize], 0.0));
        assert_eq!(infinitesimal_residual(&op), 0.0);
        let om = omega_matrix(&builtin("sqrt-cos").unwrap(), &CylinderPoint::origin(), ModeBand::new(20).unwrap()).unwrap();
        assert!(check_infinitesimal_covariance(&om).pass);
        let off = omega_matrix(&builtin("sqrt-cos").unwrap(), &CylinderPoint::new(0.7, 0.0), ModeBand::new(20).unwrap()).unwrap();
        assert!(!check_infinitesimal_covariance(&off).pass);
    }
}
