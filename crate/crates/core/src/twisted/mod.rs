//! Twisted conjugacy `g ↦ h g φ(h)⁻¹` and the tools built on it.

mod automorphism;
pub mod ball;
mod certificate;
mod growth;
mod orbits;
mod quotient;

pub use automorphism::{images, Automorphism};
pub use certificate::{Certificate, CertificateKind, CertificateOutcome, NotFoundReason, FAMILY_SIZE};
pub use growth::ConjugateGrowthReport;
pub use orbits::{OrbitPartition, Witness};
pub use quotient::{FreeAutomorphism, FreeQuotientMap, FreeWord, InducedImage, NegativeControl, ProjectionReport};
