//! Skew and shifted Young tableaux: jeu de taquin, switching, crystal operators,
//! and local algorithms for coswitching and partial evacuation shuffling.

pub mod checks;
pub mod crystal;
pub mod entry;
pub mod enumerate;
pub mod error;
pub mod instances;
pub mod jdt;
pub mod localalg;
pub mod par;
pub mod partition;
pub mod shifted;
pub mod switching;
pub mod tableau;
pub mod word;

pub use entry::Entry;
pub use error::{Error, Result};
pub use partition::Partition;
pub use switching::{TableauChain, TableauPair};
pub use tableau::{Cell, SkewShape, Tableau};
pub use word::Word;
