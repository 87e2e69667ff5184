//! Hamilton cycles in bipartite Kneser graphs `H(n,k)`, long cycles in
//! Kneser graphs `K(n,k)` and level-saturating cycles in hypercube layers
//! `Q(n,k)`, built by induction on `n` inside the hypercube and checked by
//! an independent verifier.
//!
//! ```
//! use kneser::derive::bipartite_hamilton;
//! use kneser::middle_levels::SearchProvider;
//! use kneser::verify::verify_certificate;
//!
//! let c = bipartite_hamilton(4, 1, &SearchProvider::default()).unwrap();
//! assert_eq!(c.order[0].to_string(), "0010");
//! assert!(verify_certificate(&c).ok);
//! ```
//!
//! The `examples/` directory has one program per area: `bitstrings`,
//! `middle_levels_base`, `lemma_structure`, `induction_step`,
//! `bipartite_kneser`, `kneser_cycle`, `cube_levels`, `verify_certificate`
//! and `certificate_files`.

pub mod bitcore;
pub mod cli;
pub mod derive;
pub mod error;
pub mod format;
pub mod lemma;
pub mod middle_levels;
pub mod verify;
