//! Generalized Baumslag–Solitar groups as graphs of infinite-cyclic groups.
//!
//! The crate solves the word problem, measures elements against the
//! Bass–Serre tree, evaluates the modular homomorphism, sorts groups into the
//! quasi-isometry trichotomy and produces checkable twisted-conjugacy
//! certificates for user-supplied automorphisms.

pub mod classifier;
pub mod error;
pub mod graph;
pub mod group;
pub mod modular;
pub mod normal_form;
pub mod tree_geometry;
pub mod twisted;
pub mod word;

pub use classifier::{classification_report, qi_class, reduce_graph, ClassificationReport, QiClass};
pub use error::{Error, ErrorClass, Result};
pub use graph::{parse_graph, parse_graph_lenient, spanning_tree, validate_graph, EdgeId, GbsGraph, ValidationReport, VertexId};
pub use group::{GbsGroup, Limits, Presentation};
pub use modular::{DeltaImage, Modulus};
pub use normal_form::{CanonicalWord, CyclicReduction};
pub use tree_geometry::{Commensuration, ElementClassification, ElementKind};
pub use twisted::{Automorphism, Certificate, FreeQuotientMap, FreeWord, OrbitPartition};
pub use word::{Generator, Letter, PathWord, UserWord};
