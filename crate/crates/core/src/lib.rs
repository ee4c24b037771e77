pub mod error;
pub mod gfq_linalg;
pub mod group_core;
pub mod perm_group;
pub mod rep_mod;
pub mod cohomology;
pub mod action_compat;
pub mod brute_oracle;

pub use error::{GpiError, Result};
pub mod pipeline;
pub mod tame_enum;
