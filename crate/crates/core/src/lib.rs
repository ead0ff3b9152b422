//! Exact arithmetic engine for ACM and Ulrich bundles on the Segre threefold
//! `P1 x P2` and on rational normal scrolls.
//!
//! Everything here is pure and allocation-only: numerical classes in the Chow
//! ring, Kunneth cohomology of the building-block sheaves, the Beilinson table
//! attached to the exceptional collection adapted to ACM sheaves, the rigid
//! Ulrich ladder, scroll cohomology and the wildness certificates.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod beilinson;
pub mod chow;
pub mod cohomology;
mod error;
mod linalg;
pub mod mutation;
pub mod scroll;
pub mod wildness;

pub use arith::{binomial, Poly, Rational};
pub use beilinson::{
    beilinson_table, beilinson_table_with, classify, dual_collection_check, normalize_twist,
    semistable_acm_types, AcmFamily, AcmType, BeilinsonTable, Classification, DualCheckReport,
    ExceptionalCollection,
};
pub use chow::{
    ch_line, ch_omega_pi, compare_reduced, euler_characteristic, euler_pairing, hilbert_poly,
    reduced_hilbert_poly, ChernCharacter, DivisorClass, HilbertPolynomial,
};
pub use cohomology::{
    coh_block, coh_extension, coh_formal, coh_p1, coh_p2_line, coh_p2_omega, coh_window,
    ext_blocks, ext_blocks_with, is_acm, ulrich_init, AcmCheck, BuildingBlock, CohInterval,
    CohVector, ExtMode, ExtensionSheaf, FormalSheaf, Sheaf, TwistInterval, TwistSet,
};
pub use error::{CoreError, CoreResult};
pub use mutation::{
    a_seq, c_seq, is_numerically_rigid, left_mutation_class, mutation_ladder_class,
    right_mutation_class, serre_involution, ulrich_class, UlrichDatum,
};
pub use scroll::{
    chi_l_dual, dimext_bound, scroll_chi, scroll_coh, scroll_ell, scroll_hilbert_poly,
    verify_wildness_cases, wildness_index, ScrollDescriptor, ScrollDivisor, WildnessCaseReport,
};
pub use wildness::{
    cm_wild_criterion, dp_family_dim, dp_kernel_chi, dp_nonulrich_check, quasi_minimal_ext_table,
    scroll_reference_polys, scroll_ulrich_init, scroll_wildness_input, CurveWindowCertificate,
    DelPezzoCase, DelPezzoDatum, QuasiMinimalExtTable, WildVerdict, WildnessInput,
};
