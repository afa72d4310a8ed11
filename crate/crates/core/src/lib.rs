//! Exact computer algebra over polynomial rings: Groebner bases, ideal
//! calculus, symmetric/Rees algebra presentations, bigraded minimal free
//! resolutions with x-/y-regularity, and deciders for the sequence classes
//! (regular, d-, c-, weak relative regular, almost regular, s-, M-,
//! interval-type, linear-type) that govern when an ideal is of linear type.

pub mod algebra;
pub mod error;
pub mod families;
pub mod groebner;
pub mod ideal;
pub mod resolve;
pub mod ring;
pub mod sequences;

pub use algebra::{is_linear_type, rees_ideal, sym_ideal, BigradedPresentation, Provenance};
pub use error::{Error, Result};
pub use families::{
    check_property, corpus, corpus_from_dir, cycle_path_ideal, evaluate_entry, pfaffian_sequence,
    CheckReport, CorpusEntry, EntryReport, Expected, Observed, PROPERTY_KEYS,
};
pub use groebner::{
    buchberger, buchberger_in, divide, divide_exact, ideal_equal, membership, syzygies,
    GroebnerBasis, SyzygyModule,
};
pub use ideal::IdealHandle;
pub use resolve::{
    betti, free_resolution, matrix_rank, minimalize, reg_xy, BettiEntry, BettiTable, Matrix,
    ResolutionData,
};
pub use ring::parse::{parse_polynomial, parse_ring, parse_session, parse_session_opts, Session};
pub use ring::{
    Bidegree, FieldElem, FieldSpec, Monomial, MonomialOrder, Polynomial, Ring, RingDescriptor,
};
pub use sequences::{
    c_sequence_bounded_direct,
    is_almost_regular, is_c_sequence, is_d_sequence, is_interval_type, is_m_sequence,
    is_regular_sequence, is_s_sequence, is_seq_linear_type, is_unconditioned_d, is_weak_rel_reg,
    msequence_c_criterion, SaturatingBlock, Verdict, Witnesses,
};
