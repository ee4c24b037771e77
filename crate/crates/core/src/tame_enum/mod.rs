//! Indecomposable modules of the semi-dihedral algebra Lambda_l over GF(4) from words, strings
//! and bands, and the wild-type lower-bound family.

mod census;
pub mod klein;
mod quiver;
mod words;

pub use census::{
    class_bound, count_indecomposables, idempotent_pairs, wild_family, ClassCount, Collision, DimensionCensus,
    WildFamily, CERTIFY_MAX_DIM, CLASSES,
};
pub use quiver::{
    build_module, expand, materialize, module_dim, relation_violation, AuxChoice, Edge, EdgeLabel, ExpandedQuiver,
    Loop, SDModule, Space, LAMBDA, MU,
};
pub use words::{
    band_canonical, band_is_symmetric, classify_word, enumerate_words, inverse, word_cmp, word_string, Configuration,
    Letter, SDWord, WordClass,
};
