mod covariance;
mod flat;
mod recurrence;
mod injectivity;
mod overlap;
mod report;
mod suite;
mod trace;
mod traciality;

pub use covariance::{
    check_covariance, check_infinitesimal_covariance, covariance_residual, infinitesimal_residual, COVARIANCE_TOL,
    INFINITESIMAL_TOL,
};
pub use recurrence::{
    family_distance, predicted_dimension, solve_covariance_recurrence, RecurrenceSolution, PROJECTION_TOL,
};
pub use flat::{flat_suite, skewed_gaussian, unit_gaussian, FLAT_COVARIANCE_TOL, FLAT_TOL, PROBES};
pub use report::PropertyReport;
pub use traciality::{check_traciality, traciality_residuals, TracialitySettings, TRACIALITY_TOL};
pub use overlap::{
    check_overlap_structure, check_reproducing, overlap_modes, overlap_profile, overlap_trace, reproducing_residual,
    OverlapProfile, OverlapTrace, J0_FIRST_ZERO, MODE_INDEPENDENCE_TOL, OVERLAP_TAIL_TOL, SHAPE_CORRELATION,
};
pub use injectivity::{
    antipodal_witness, check_injectivity, min_random_pair_distance, CollisionWitness, InjectivityCheck,
    SAMPLE_PAIRS, SEPARATION_FLOOR, WITNESS_TOL,
};
pub use trace::{check_trace, windowed_mode_trace};
pub use suite::{
    covariance_suite, hermiticity_suite, random_group_element, random_point, run_suites, traciality_suite, MAX_TRANSLATION, SAMPLE_J,
    SuiteSettings,
};
