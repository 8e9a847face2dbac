//! Scalars: exact cyclotomic numbers and q-combinatorics.

mod cyclotomic;
mod qcomb;

pub use cyclotomic::{
    conductor_limit, cyclotomic_polynomial, euler_phi, height, set_conductor_limit, Cyclotomic,
    DEFAULT_CONDUCTOR_LIMIT,
};
pub use qcomb::{
    identity_instances, q_binomial, q_binomial_identity_check, q_binomial_identity_sum,
    q_binomial_identity_sweep, q_binomial_table, q_factorial, q_factorial_nonzero, q_int,
    IdentityInstance, SweepSummary,
};
