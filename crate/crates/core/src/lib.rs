//! Iterated wreath products `W(G, n)` of finite groups as permutation groups on
//! `G^n`, the complement `M_n ≅ Aut(G)^n` of `W(G, n)` in its normaliser, and
//! brute-force oracles that check both at small degree.
//!
//! All actions are right actions: `p.compose(q)` applies `p` first.

pub mod bsgs;
pub mod cli;
pub mod error;
pub mod group;
pub mod manifest;
pub mod normalizer;
pub mod oracle;
pub mod perm;
pub mod wreath;

pub use bsgs::StabilizerChain;
pub use error::{Error, Result};
pub use group::{
    aut_group_structure, automorphisms, automorphisms_with_cap, named_group, AutStructure,
    FiniteGroup, GroupAut,
};
pub use manifest::Manifest;
pub use normalizer::{
    gamma_embed, m_star, normalizer_complement, normalizer_complement_with_cap,
    predicted_normalizer_order, verify_theorem, NormalizerComplement, TheoremReport,
};
pub use oracle::{
    brute_force_normalizer, brute_force_normalizer_with_workers, enumerate_sym, sylow_check,
    verify_lemma_b, verify_lemma_c, OracleResult,
};
pub use perm::Perm;
pub use wreath::{
    block_image, block_partition, fiber_embed, iterated_wreath, iterated_wreath_with_cap,
    lambda_embed, wreath_product, BlockImage, BlockPartition, WreathTower,
};
