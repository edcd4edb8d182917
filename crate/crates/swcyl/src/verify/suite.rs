use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::ModeBand;
use crate::error::Result;
use crate::euclid2::{CylinderPoint, GroupElement};
use crate::swkernel::{omega_matrix, SymbolFunction, SymbolShape, HERMITIAN_TOL, TRACIAL_TOL};

use super::covariance::{check_infinitesimal_covariance, covariance_residual, COVARIANCE_TOL};
use super::injectivity::check_injectivity;
use super::overlap::check_overlap_structure;
use super::recurrence::solve_covariance_recurrence;
use super::report::PropertyReport;
use super::trace::check_trace;
use super::traciality::{traciality_residuals, TracialitySettings, TRACIALITY_TOL};

/// Largest translation length drawn for covariance cases.
pub const MAX_TRANSLATION: f64 = 2.0;
/// Cases draw `|j| ≤ SAMPLE_J`.
pub const SAMPLE_J: f64 = 3.0;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SuiteSettings {
    pub band: ModeBand,
    pub radius: f64,
    pub covariance_cases: usize,
    pub hermiticity_cases: usize,
    pub traciality: TracialitySettings,
    pub recurrence_band: ModeBand,
    pub injectivity_band: ModeBand,
    pub seed: u64,
}

impl Default for SuiteSettings {
    fn default() -> Self {
        Self {
            band: ModeBand::new(64).expect("positive"),
            radius: 1.0,
            covariance_cases: 20,
            hermiticity_cases: 8,
            traciality: TracialitySettings::default(),
            recurrence_band: ModeBand::new(8).expect("positive"),
            injectivity_band: ModeBand::new(24).expect("positive"),
            seed: 0,
        }
    }
}

pub fn random_group_element(rng: &mut impl Rng) -> GroupElement {
    let len = rng.gen_range(0.0..MAX_TRANSLATION);
    let dir = rng.gen_range(0.0..std::f64::consts::TAU);
    GroupElement::new(rng.gen_range(-1.0..1.0), [len * dir.cos(), len * dir.sin()], rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_point(rng: &mut impl Rng) -> CylinderPoint {
    CylinderPoint::new(rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(-SAMPLE_J..SAMPLE_J))
}

pub fn covariance_suite(a: &SymbolFunction, s: &SuiteSettings, rng: &mut impl Rng) -> Result<Vec<PropertyReport>> {
    let cases: Vec<(GroupElement, CylinderPoint)> =
        (0..s.covariance_cases).map(|_| (random_group_element(rng), random_point(rng))).collect();
    let residuals: Vec<f64> = cases
        .par_iter()
        .map(|(g, u)| covariance_residual(a, g, u, s.radius, s.band))
        .collect::<Result<_>>()?;
    let (worst, res) = residuals.iter().enumerate().fold((0, 0.0), |acc, (i, &r)| if r > acc.1 { (i, r) } else { acc });
    let mut out = vec![PropertyReport::new(format!("covariance.{}", a.name()), res, COVARIANCE_TOL)
        .with("kernel", a.name())
        .with("cases", s.covariance_cases)
        .with("band", s.band.n())
        .with("r", s.radius)];
    if let Some((g, u)) = cases.get(worst) {
        out[0].set("worst_g", g);
        out[0].set("worst_u", u);
    }
    let at_origin = omega_matrix(a, &CylinderPoint::origin(), s.band)?;
    out.push(
        check_infinitesimal_covariance(&at_origin)
            .with("kernel", a.name())
            .with("u", CylinderPoint::origin()),
    );
    out[1].name = format!("covariance.{}.infinitesimal", a.name());
    Ok(out)
}

pub fn hermiticity_suite(a: &SymbolFunction, s: &SuiteSettings, rng: &mut impl Rng) -> Result<Vec<PropertyReport>> {
    let adm = a.check_admissible();
    let pts: Vec<CylinderPoint> = (0..s.hermiticity_cases).map(|_| random_point(rng)).collect();
    let mut worst: f64 = 0.0;
    for u in &pts {
        let om = omega_matrix(a, u, s.band)?;
        worst = worst.max(om.sub(&om.adjoint())?.max_norm());
    }
    Ok(vec![
        PropertyReport::new(format!("hermiticity.{}.symbol", a.name()), adm.hermitian_residual, HERMITIAN_TOL)
            .with("kernel", a.name()),
        PropertyReport::new(format!("hermiticity.{}.matrix", a.name()), worst, HERMITIAN_TOL)
            .with("kernel", a.name())
            .with("cases", s.hermiticity_cases)
            .with("band", s.band.n()),
        PropertyReport::new(format!("traciality.{}.admissibility-identity", a.name()), adm.traciality_residual, TRACIAL_TOL)
            .with("kernel", a.name())
            .with("identity", "|a(t)|^2 + |a(t+pi)|^2 - 4|cos t|"),
    ])
}

pub fn traciality_suite(a: &SymbolFunction, s: &SuiteSettings) -> PropertyReport {
    let ts = s.traciality;
    let rs = [0, 1, 2];
    let res = traciality_residuals(a, &rs, &ts);
    PropertyReport::new(format!("traciality.{}", a.name()), res.iter().fold(0.0, |m: f64, &r| m.max(r)), TRACIALITY_TOL)
        .with("kernel", a.name())
        .with("r_values", rs)
        .with("residuals", &res)
        .with("bracket", "bilinear L2(dj), 2*pi*c*int L_p L_q dj")
        .with("measure", ts.measure.unwrap_or_else(|| a.default_measure()))
        .with("j_max", ts.j_max)
        .with("dj", ts.dj)
        .with("weighting", ts.weighting.to_string())
        .with("p_max", ts.p_max)
}

/// Every suite for one kernel, sorted by report name.
pub fn run_suites(a: &SymbolFunction, s: &SuiteSettings) -> Result<Vec<PropertyReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut out = covariance_suite(a, s, &mut rng)?;
    out.extend(hermiticity_suite(a, s, &mut rng)?);
    let u = random_point(&mut rng);
    out.extend(check_trace(a, &u, s.band)?);
    out.push(traciality_suite(a, s));
    out.push(check_injectivity(a, s.injectivity_band, &mut rng)?.report());
    out.push(solve_covariance_recurrence(s.recurrence_band)?.report());
    if matches!(a.shape(), SymbolShape::Constant(_)) {
        out.extend(check_overlap_structure(a, ModeBand::new(32).expect("positive")));
    }
    out.sort_by(|x, y| x.name.cmp(&y.name));
    Ok(out)
}
