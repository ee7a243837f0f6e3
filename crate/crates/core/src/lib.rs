//! Summability norms and operator-ideal estimates on finite sections of `ℓ_p`.
//!
//! The crate works with truncated sequences in `ℓ_q^d`, optional power-log
//! tails, and dense matrices carrying their domain and codomain exponents.
//! Every reported number is tagged exact, lower or upper.

pub mod corpus;
pub mod counterexamples;
pub mod error;
pub mod estimate;
pub mod exponent;
pub mod operators;
pub mod oplimited;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod sequence;
pub mod space;
pub mod summing;
pub mod tail;
pub mod trend;

pub use error::{Error, Result};
pub use estimate::{Budget, EstimateKind, NormBracket, NormEstimate, EXACT_TOL, SEARCH_TOL};
pub use exponent::{dual_exponent, Exponent};
pub use operators::{adjoint, apply, make_ef_star, make_ex, op_norm, OpNorm, OperatorMat};
pub use sequence::{strong_norm, StrongNorm, VecSeq};
pub use space::{lp_norm, vec_norm, Space, Vector};
pub use tail::{tail_sum_bounds, ScalarSeq, TailModel, TailSum};
pub use counterexamples::{case1_kronecker, case2_construct, case3_construct, cor312_construct, holder_embedding_check};
pub use oplimited::{
    certificate_combine, certificate_pushforward, chain_check, limited_certificate, lt_p_lower, opsum_check, opsum_norm,
    seq_limited_check, Certificate, CombineMode, LtOptions, SummabilityReport, SummabilityVerdict,
};
pub use oracle::{brute_pi_p, grid_op_norm, signvec_pi1, GridSpec};
pub use summing::{pi_1_ealpha_exact, pi_2_hilbert_exact, pi_p_dual, pi_p_lower, SummingEstimate};
pub use trend::{TrendSeries, Verdict};
