//! Coxeter groups with exact arithmetic: reduced words, Cayley graphs,
//! maximal 2-cliques, and automorphisms of the half-graphs `Γ₁`, `Γ₂`.
//!
//! ```
//! use coxclique::cliques::{count_by_type, Scope};
//! use coxclique::system::parse_preset;
//!
//! let d4 = parse_preset("D4").unwrap();
//! let counts = count_by_type(&d4, Scope::full()).unwrap();
//! assert_eq!(counts.commuting_triple, 48);
//! ```

pub mod cayley;
pub mod cli;
pub mod cliques;
pub mod element;
pub mod error;
pub mod field;
pub mod half;
pub mod root;
pub mod system;

pub use element::{Element, Support};
pub use error::Error;
pub use field::{FieldElement, Sign};
pub use root::RootVector;
pub use system::{CoxeterSystem, Gen, Label};
