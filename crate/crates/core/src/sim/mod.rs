//! Random-binning key agreement over a binary source: code generation,
//! maximum-likelihood reconciliation, exact error and leakage by
//! enumeration, and seeded Monte Carlo runs.

mod code;
mod decode;
mod exact;
mod leakage;
mod monte_carlo;

pub use code::{
    bin_count, derive_seed, sequence_from_str, sequence_to_string, BinningCode, MAX_CODE_LENGTH,
};
pub use decode::ml_decode;
pub use exact::{
    ensemble_error_check, ensemble_key_error, exact_error_probability, gallager_bound,
    EnsembleCheck, ExactError, MAX_EXACT_ERROR_LENGTH,
};
pub use leakage::{
    exact_leakage, key_entropy, public_leakage, MAX_EAVESDROPPER_LEAKAGE_LENGTH,
    MAX_PUBLIC_LEAKAGE_LENGTH,
};
pub use monte_carlo::{
    count_errors, leakage_computable, monte_carlo_run, onoff_equivalent, wilson_halfwidth,
    SimReport, Z_95,
};
