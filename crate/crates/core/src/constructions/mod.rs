//! The non-reduced formally unramified examples and the checks around them.
//! Every check returns a [`VerificationReport`](crate::report::VerificationReport).

mod charp;
mod gabber;
mod graded;
mod local;
pub mod random;
mod twisted;

pub use charp::{charp_tower, truncated_root_algebra};
pub use gabber::{
    b_tensor_power, gabber_b, gabber_sequence, kill_all_differentials, killing_step, verify_preparatory, verify_tensor_power,
    GabberB, KillAll, KillingStep, Seed, TensorPower,
};
pub use graded::{euler_check, graded_algebra, graded_kernel_check, GRADED_CORPUS};
pub use local::{check_theorem_local_case, example_corpus, random_local_corpus, CorpusEntry};
pub use twisted::{phi, twisted_algebra, twisted_example};
