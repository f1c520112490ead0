//! Log embeddings, span membership, annihilator checks, decomposition of
//! systems and torsion enumeration.
//!
//! Numerics only propose: every positive verdict is confirmed by exact
//! arithmetic and every negative one carries an interval certificate.

mod annihilator;
mod decompose;
mod linalg;
mod logvec;
mod membership;
mod torsion;

pub use annihilator::{
    certify_nonkilling, regulator_rank_check, verify_annihilator, AnnihilatorOptions, AnnihilatorReport, RankOutcome,
    TrialRecord,
};
pub use decompose::{compose, decompose, decompose_with, DecomposeOutcome, Decomposition};
pub use logvec::{log_embedding, LogVector};
pub use membership::{
    qspan_membership, qspan_membership_with, Certificate, Membership, MembershipOptions, PlusContext,
    DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS,
};
pub use torsion::{coleman_span, torsion_enumerate, TorsionReport, MAX_TORSION_LEVEL};
