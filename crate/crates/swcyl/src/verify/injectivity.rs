use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::Serialize;

use crate::circle::ModeBand;
use crate::error::Result;
use crate::euclid2::CylinderPoint;
use crate::swkernel::{omega_from_table, omega_matrix, Injective, LTable, SymbolFunction};

use super::report::PropertyReport;

pub const WITNESS_TOL: f64 = 1e-8;
/// Random pairs closer than this in matrix distance count as a collision.
pub const SEPARATION_FLOOR: f64 = 1e-4;
pub const SAMPLE_PAIRS: usize = 200;
pub const SAMPLE_J_RANGE: f64 = 3.0;

#[derive(Debug, Clone, Serialize)]
pub struct CollisionWitness {
    pub u: CylinderPoint,
    pub v: CylinderPoint,
    pub distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityCheck {
    pub kernel: String,
    pub verdict: Injective,
    /// `c` in `a(θ+π) = e^{2ic sin θ} a(θ)`, when a fit exists.
    pub antipodal_c: Option<f64>,
    pub fit_residual: Option<f64>,
    /// `Ω(u)` against `Ω(α+π, c−j)` for the fitted `c`.
    pub witness: Option<CollisionWitness>,
    pub min_pair_distance: Option<f64>,
    pub pairs: usize,
}

impl InjectivityCheck {
    /// No: the witness must collide. Yes: random pairs must stay separated.
    pub fn report(&self) -> PropertyReport {
        let (residual, tolerance) = match self.verdict {
            Injective::No => (self.witness.as_ref().map_or(f64::INFINITY, |w| w.distance), WITNESS_TOL),
            Injective::Yes => (SEPARATION_FLOOR / self.min_pair_distance.unwrap_or(0.0), 1.0),
            Injective::Boundary => (f64::INFINITY, 0.0),
        };
        let mut r = PropertyReport::new(format!("injectivity.{}", self.kernel), residual, tolerance)
            .with("kernel", &self.kernel)
            .with("verdict", self.verdict)
            .with("antipodal_c", self.antipodal_c)
            .with("fit_residual", self.fit_residual)
            .with("pairs", self.pairs);
        if let Some(w) = &self.witness {
            r.set("witness", w);
        }
        if let Some(d) = self.min_pair_distance {
            r.set("min_pair_distance", d);
        }
        r
    }
}

/// Witness `Ω(α, j)` against `Ω(α+π, c−j)` on the band.
pub fn antipodal_witness(a: &SymbolFunction, c: f64, u: &CylinderPoint, band: ModeBand) -> Result<CollisionWitness> {
    let v = CylinderPoint::new(u.alpha + PI, c - u.j);
    let d = omega_matrix(a, u, band)?.sub(&omega_matrix(a, &v, band)?)?.max_norm();
    Ok(CollisionWitness { u: *u, v, distance: d })
}

/// Smallest matrix distance among `pairs` random point pairs with
/// `α ∈ [0, 2π)`, `|j| ≤ 3`.
pub fn min_random_pair_distance(a: &SymbolFunction, pairs: usize, band: ModeBand, rng: &mut impl Rng) -> f64 {
    let pts: Vec<CylinderPoint> = (0..2 * pairs)
        .map(|_| CylinderPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(-SAMPLE_J_RANGE..SAMPLE_J_RANGE)))
        .collect();
    let js: Vec<f64> = pts.iter().map(|p| p.j).collect();
    let table = LTable::compute(a, 2 * band.n(), &js, 0);
    (0..pairs)
        .map(|i| {
            let x = omega_from_table(&table, 2 * i, &pts[2 * i], band);
            let y = omega_from_table(&table, 2 * i + 1, &pts[2 * i + 1], band);
            x.sub(&y).expect("same band").max_norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Injectivity verdict from the antipodal fit, confirmed numerically.
pub fn check_injectivity(a: &SymbolFunction, band: ModeBand, rng: &mut impl Rng) -> Result<InjectivityCheck> {
    let fit = a.antipodal_fit();
    let verdict = a.flags().injective;
    let probe = CylinderPoint::new(0.4, 0.3);
    let witness = match fit {
        Some(f) => Some(antipodal_witness(a, f.c, &probe, band)?),
        None => None,
    };
    let (min_pair_distance, pairs) = if verdict == Injective::Yes {
        (Some(min_random_pair_distance(a, SAMPLE_PAIRS, band, rng)), SAMPLE_PAIRS)
    } else {
        (None, 0)
    };
    Ok(InjectivityCheck {
        kernel: a.name().to_string(),
        verdict,
        antipodal_c: fit.map(|f| f.c),
        fit_residual: fit.map(|f| f.residual),
        witness,
        min_pair_distance,
        pairs,
    })
}
