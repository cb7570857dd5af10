//! Exact-arithmetic majorization toolkit.
//!
//! Decides majorization between rational vectors, builds strict
//! majorization chains of elementary transfers, evaluates G-symmetric
//! means of monomials (exactly over the rationals, or in binary64 for
//! fractional exponents), synthesizes the doubly stochastic matrix
//! carrying one vector to another and its Birkhoff decomposition, tests
//! membership in the convex hull of a group orbit by exact linear
//! programming, and turns separation certificates into positive points
//! where the mean inequality reverses.
//!
//! With the default `parallel` feature the exact summation over group
//! elements runs on rayon; disabling it falls back to the identical
//! sequential path.

pub mod chain;
pub mod error;
pub mod hull;
pub mod matrix;
pub mod means;
pub mod multiplicative;
pub mod perm;
pub mod rado;
pub mod rat;
mod simplex;
pub mod vector;

pub use chain::{
    build_chain, hlp_matrix, step_to_ttransform, t_transform_matrix, MajorizationChain,
    TransferStep,
};
pub use error::{Error, Result};
pub use hull::{
    membership, membership_unrestricted, membership_via_majorization, orbit, orbit_with_reps,
    MembershipCertificate, MembershipOutcome, SeparationCertificate,
};
pub use matrix::{birkhoff_decompose, BirkhoffDecomposition, DoublyStochastic, SquareMatrix};
pub use means::{
    amgm_certificate, arithmetic_exponents, compare_means, compare_means_with, geometric_exponents,
    monomial_eval, symmetric_mean, symmetric_mean_seq, AmGmCertificate, ExponentVector,
    FloatTolerance, MeanComparison, MeanMode, MeanValue,
};
pub use multiplicative::{
    augment, check_prefix_products, sum_dominance, Augmentation, MultiplicativePair,
    PrefixProductCheck, SumDominance,
};
pub use perm::{PermGroup, Permutation, DEFAULT_GROUP_CAP, MAX_SYMMETRIC_DEGREE};
pub use rado::{
    build_rado_witness, probe_constant, probe_step_vectors, smallest_power_base, ConstantProbe,
    RadoWitness, StepProbeRow,
};
pub use rat::{format_rat, parse_rat, rat, rat_int, Rat};
pub use vector::{MajorizationVerdict, RVector, Relation};
