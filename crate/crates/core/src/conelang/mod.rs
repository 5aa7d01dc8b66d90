//! Cone types, the geodesic word acceptor, word-difference machines, and the
//! regular-language pipeline for minimal-length coset representatives.

pub mod acceptor;
pub mod cone_types;
pub mod extension;
pub mod ln;
pub mod pairs;
pub mod quadruples;
pub mod s_language;
pub mod word_difference;

pub use acceptor::geodesic_acceptor;
pub use cone_types::{compute_cone_types, ConeMove, ConeTypeTable};
pub use ln::{build_p, build_tower, LnTower, TowerParams};
pub use s_language::{build_s_language, SLanguage};
pub use word_difference::build_word_difference_machine;
