use swcyl::circle::{FourierOperator, ModeBand};
use swcyl::quadrature::JWeighting;
use swcyl::swkernel::{builtin, star_product, CylinderGrid, Quantizer};
use swcyl::SwError;

fn quantizer(name: &str) -> Quantizer {
    // J_max = 40 leaves 6e-3 of j-truncation error in Q(W(A)); 80 gives 2e-3
    let grid = CylinderGrid::new(64, 80.0, 0.05, JWeighting::Extrapolated).unwrap();
    Quantizer::with_default_measure(&builtin(name).unwrap(), grid, ModeBand::new(8).unwrap()).unwrap()
}

#[test]
fn projector_symbols_are_idempotent_and_orthogonal() {
    let q = quantizer("sqrt-cos");
    let band = q.band();
    let p0 = q.wigner(&FourierOperator::transition(band, 0, 0)).unwrap();
    let p1 = q.wigner(&FourierOperator::transition(band, 1, 1)).unwrap();
    let sq = q.star(&p0, &p0).unwrap();
    let idem = sq.max_distance(&p0).unwrap();
    let orth = q.star(&p0, &p1).unwrap().max_abs();
    assert!(idem <= 5e-3, "{idem}");
    assert!(orth <= 5e-3, "{orth}");
}

#[test]
fn non_reproducing_kernel_breaks_idempotence() {
    // twisted-h passes the pointwise identity but fails the reduced traciality sum
    let q = quantizer("twisted-h");
    let p0 = q.wigner(&FourierOperator::transition(q.band(), 0, 0)).unwrap();
    assert!(q.star(&p0, &p0).unwrap().max_distance(&p0).unwrap() > 0.1);
}

#[test]
fn mismatched_grids_name_both_descriptors() {
    let a = builtin("sqrt-cos").unwrap();
    let band = ModeBand::new(2).unwrap();
    let g1 = CylinderGrid::new(16, 4.0, 0.1, JWeighting::Plain).unwrap();
    let g2 = CylinderGrid::new(16, 5.0, 0.1, JWeighting::Plain).unwrap();
    let f = swcyl::swkernel::WignerSymbol::zeros(g1);
    let g = swcyl::swkernel::WignerSymbol::zeros(g2);
    match star_product(&f, &g, &a, band, 1.0) {
        Err(SwError::GridMismatch { left, right }) => {
            assert_eq!(left, g1.describe());
            assert_eq!(right, g2.describe());
        }
        other => panic!("{other:?}"),
    }
}
