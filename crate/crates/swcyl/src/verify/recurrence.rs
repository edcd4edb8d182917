use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::circle::{FourierOperator, ModeBand};
use crate::error::{Result, SwError};

use super::report::PropertyReport;

pub const PROJECTION_TOL: f64 = 1e-8;
/// Relative singular-value cut separating the null space.
pub const RANK_CUT: f64 = 1e-8;
/// Singular values in `[RANK_CUT/GAP, RANK_CUT·GAP]` make the rank ambiguous.
pub const RANK_GAP: f64 = 100.0;

/// Null space of the covariance recurrence on a band and its comparison with
/// the family `A_{r,s} = a_{r+s} + b_{r−s}`.
#[derive(Debug, Clone)]
pub struct RecurrenceSolution {
    pub band: ModeBand,
    pub basis: Vec<FourierOperator>,
    pub predicted_dim: usize,
    /// Worst distance of a null vector from the `a_{r+s} + b_{r−s}` span.
    pub projection_residual: f64,
    pub smallest_kept: f64,
    pub largest_dropped: f64,
}

impl RecurrenceSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn report(&self) -> PropertyReport {
        let dims_match = self.dim() == self.predicted_dim;
        let residual = if dims_match { self.projection_residual } else { f64::INFINITY };
        PropertyReport::new("recurrence.null-space", residual, PROJECTION_TOL)
            .with("band", self.band.n())
            .with("null_dim", self.dim())
            .with("predicted_dim", self.predicted_dim)
            .with("projection_residual", self.projection_residual)
            .with("smallest_kept_singular_value", self.smallest_kept)
            .with("largest_dropped_singular_value", self.largest_dropped)
    }
}

fn flat(band: ModeBand, r: i64, s: i64) -> usize {
    band.index(r) * band.dim() + band.index(s)
}

/// Matrix of `A ↦ (A_{s,r+1} + A_{s,r−1} − A_{s+1,r} − A_{s−1,r})_{|r|,|s| ≤ N−1}`,
/// padded with zero rows to a square matrix so the SVD yields a full right basis.
fn recurrence_matrix(band: ModeBand) -> DMatrix<f64> {
    let d = band.dim();
    let n = band.n() as i64 - 1;
    let mut t = DMatrix::zeros(d * d, d * d);
    let mut row = 0;
    for r in -n..=n {
        for s in -n..=n {
            t[(row, flat(band, s, r + 1))] += 1.0;
            t[(row, flat(band, s, r - 1))] += 1.0;
            t[(row, flat(band, s + 1, r))] -= 1.0;
            t[(row, flat(band, s - 1, r))] -= 1.0;
            row += 1;
        }
    }
    t
}

/// Orthonormal basis of the span of `{[r+s = k]} ∪ {[r−s = k]}` as columns.
fn family_basis(band: ModeBand) -> DMatrix<f64> {
    let d = band.dim();
    let two_n = 2 * band.n() as i64;
    let mut cols = Vec::new();
    for k in -two_n..=two_n {
        for diff in [false, true] {
            let mut v = vec![0.0; d * d];
            for r in band.modes() {
                for s in band.modes() {
                    if (if diff { r - s } else { r + s }) == k {
                        v[flat(band, r, s)] = 1.0;
                    }
                }
            }
            cols.push(v);
        }
    }
    let s = DMatrix::from_fn(d * d, cols.len(), |i, c| cols[c][i]);
    let svd = s.svd(true, false);
    let u = svd.u.expect("requested");
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > 1e-10 * smax).collect();
    DMatrix::from_fn(d * d, keep.len(), |i, c| u[(i, keep[c])])
}

/// Number of independent matrices `a_{r+s} + b_{r−s}` on the band.
pub fn predicted_dimension(band: ModeBand) -> usize {
    family_basis(band).ncols()
}

pub fn solve_covariance_recurrence(band: ModeBand) -> Result<RecurrenceSolution> {
    let d = band.dim();
    let t = recurrence_matrix(band);
    let svd = t.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let sv = &svd.singular_values;
    let smax = sv.max();
    let cut = RANK_CUT * smax;
    for &v in sv.iter() {
        if v > cut / RANK_GAP && v < cut * RANK_GAP {
            return Err(SwError::RankAmbiguous { value: v, cut });
        }
    }
    let null_idx: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] <= cut).collect();
    let smallest_kept = sv.iter().copied().filter(|&v| v > cut).fold(f64::INFINITY, f64::min);
    let largest_dropped = null_idx.iter().map(|&i| sv[i]).fold(0.0, f64::max);

    let fam = family_basis(band);
    let mut worst: f64 = 0.0;
    let mut basis = Vec::with_capacity(null_idx.len());
    for &i in &null_idx {
        let v: Vec<f64> = vt.row(i).iter().copied().collect();
        let vv = nalgebra::DVector::from_vec(v.clone());
        let proj = &fam * (fam.transpose() * &vv);
        worst = worst.max((&vv - proj).amax());
        basis.push(FourierOperator::from_fn(band, |r, s| C64::new(v[flat(band, r, s)], 0.0)));
    }
    let _ = d;
    Ok(RecurrenceSolution {
        band,
        basis,
        predicted_dim: fam.ncols(),
        projection_residual: worst,
        smallest_kept,
        largest_dropped,
    })
}

/// Distance of an operator from the `a_{r+s} + b_{r−s}` span (real and imaginary parts separately).
pub fn family_distance(a: &FourierOperator) -> f64 {
    let band = a.band();
    let fam = family_basis(band);
    let d = band.dim();
    let mut worst: f64 = 0.0;
    for part in 0..2 {
        let v = nalgebra::DVector::from_fn(d * d, |i, _| {
            let z = a.get(band.mode(i / d), band.mode(i % d));
            if part == 0 {
                z.re
            } else {
                z.im
            }
        });
        let proj = &fam * (fam.transpose() * &v);
        worst = worst.max((&v - proj).amax());
    }
    worst
}
