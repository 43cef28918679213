//! The combinatorial model of a flat augmented link: C-regions with cyclic
//! incidence lists, A-circles and B-circles.

pub mod classify;
pub mod model;

pub use classify::{classify, classify_detailed, ClassifyError};
pub use model::{
    ACircle, BCircle, CRegion, CircleType, FlatAugmentedLink, Incidence, RankCounts, SideLabel,
    Style, Violation,
};
