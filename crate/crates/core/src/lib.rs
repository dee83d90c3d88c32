//! Jordan block structure of unipotent elements acting on irreducible
//! modules of classical groups in good characteristic.
//!
//! The crate is organised in layers:
//!
//! * [`rootdata`]: classical root systems, weights, Weyl orbits and dimensions.
//! * [`nilorbit`]: unipotent classes, weighted diagrams and the map τ.
//! * [`char0`]: characteristic-zero characters, Γ-characters and sl₂ Jordan types.
//! * [`modp`]: Steinberg digits, tensor products of blocks mod p, predictions.
//! * [`oracle`]: explicit matrices over GF(p) and their Jordan forms.

pub mod char0;
pub mod error;
pub mod modp;
pub mod nilorbit;
pub mod oracle;
pub mod rootdata;

pub use error::{Error, Result};
pub use rootdata::{Family, GroupType, RootSystem, Weight};
