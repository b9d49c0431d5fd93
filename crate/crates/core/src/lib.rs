//! Exact arithmetic for Verlinde numbers, Mukai-vector Euler characteristics,
//! duality pairings on exterior and symmetric powers, and theta classes on
//! elliptic K3 surfaces.

pub mod combinatorics;
pub mod cyclotomic;
pub mod elliptic_k3;
pub mod error;
pub mod linalg;
pub mod mukai;
pub mod power_duality;
pub mod precise;
mod serde_str;
pub mod verlinde;

pub use cyclotomic::{CycloElement, CycloField};
pub use error::{Error, ErrorKind, Result};
pub use mukai::{MukaiVector, NSClass, NSLattice, SurfaceKind};
pub use verlinde::{Verlinde, VerlindeQuery};
