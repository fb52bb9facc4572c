//! Combinatorics of the conormal geometry of an ordered matroid.
//!
//! The library works with a loopless, coloopless matroid `M` on the ordered
//! ground set `E = {0, …, n}` and its dual `M⊥`. Around that pair it builds:
//!
//! * classical basis activities, the Tutte polynomial, and the f- and
//!   h-vectors of the broken-circuit complex ([`activity`]);
//! * biflats `F|G` (a flat of `M` paired with a flat of `M⊥` covering `E`)
//!   and biflags, the square-free monomials of the conormal Chow ring,
//!   together with the no-broken-circuit biflag attached to an NBC basis
//!   ([`biflag`]);
//! * the canonical expansion of powers of the diagonal class `δ`, exact
//!   multiplication by the girth class `γ`, and the resistant-table filter
//!   that ties `γᵏ δ^{n−k−1}` to the NBC bases of internal activity `k+1`
//!   ([`expansion`]);
//! * independent brute-force oracles used to cross-check all of the above
//!   ([`oracle`]).
//!
//! Ground sets are capped at 64 elements so subsets fit in a machine word.

pub mod activity;
pub mod biflag;
pub mod error;
pub mod eset;
pub mod expansion;
pub mod io;
pub mod matroid;
pub mod oracle;
pub mod report;

pub use activity::{
    activities, all_bases, broken_circuits, completion_avoiding_closure,
    completion_by_cocircuits, fh_vectors, greedy_completion, nbc_bases, set_activities, tutte,
    ActivityRecord, BrokenCircuitVectors, FhVector, TuttePolynomial,
};
pub use biflag::{
    compatible, extend_to_maximal, extended_nbc_biflag, gap_jump, is_biflag, is_biflat,
    nbc_biflag, Biflag, Biflat, ExtendedNbcBiflag, GapJumpData, NbcBiflag,
};
pub use error::{Error, Result};
pub use eset::{element_label, set_label, ESet, Element};
pub use expansion::{
    degree, delta_power, delta_step, eradicates, expected_extended, gamma_delta_power,
    gamma_from_level, gamma_step, resistant_filter, Census, DeltaExpansion, DeltaWalk,
    ExhaustiveOptions, ExpansionTable, GammaDeltaExpansion, GammaPivot, MonomialSum,
    ResistantCertificate, Strategy,
};
pub use io::{load_matroid, MatroidSource};
pub use matroid::{DualView, Matroid};
pub use oracle::{
    activity_bruteforce, activity_crosscheck, hvector_triple_check, logconcavity_check,
    random_graphic_matroid, step_lemma_bruteforce, CheckOutcome, CrossCheckReport,
};
pub use report::{
    BiflatEntry, CensusReport, ExpansionReport, HVectorCheck, HVectorPair, HVectorsReport,
    InfoReport, LogConcavityReport, LogConcavityRow, MatroidInfo, NbcBasisRow, NbcReport,
    TutteEntry, TutteReport, VerifyReport, VerifyRow,
};
