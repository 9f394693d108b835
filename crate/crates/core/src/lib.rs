//! Bent Boolean functions from triples of linearized permutations of
//! GF(2^n).
//!
//! A triple `(phi1, phi2, phi3)` whose sum `psi` is a permutation with
//! `psi^-1 = phi1^-1 + phi2^-1 + phi3^-1` (property (A_n)) yields the bent
//! function `g(x, y) = t1 t2 + t2 t3 + t1 t3` on GF(2^n) x GF(2^n), where
//! `t_i = Tr(x * phi_i(y))`. This crate builds five parametrized families
//! of such triples, checks (A_n) and the agreement-set criterion exactly,
//! and certifies bentness from exact Walsh spectra. Every closed form has a
//! brute-force counterpart in [`oracle`].

pub mod bentlab;
pub mod constructions;
pub mod error;
pub mod field;
pub mod linalg;
pub mod linpoly;
pub mod oracle;

pub use bentlab::{
    is_bent, mm_synthesize, nonlinearity, synthesize, walsh_spectrum, BooleanFunction,
    WalshSpectrum,
};
pub use constructions::{
    e_union, enumerate_params, family1, family2, family3, family4, family5,
    search_custom_triples, verify_an, AnReport, EUnionReport, FamilyParams, FamilyTag,
    PermutationTriple,
};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use linpoly::{
    binomial, binomial_inverse, involution_quadrinomial, trinomial, trinomial_inverse,
    LinearizedPoly, TrinomialInverseSolution,
};
