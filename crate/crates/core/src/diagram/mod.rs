//! Planar diagrams: parsing, face tracing, checkerboard coloring and the
//! statistics of the black surface.

pub mod faces;
pub mod pd;
pub mod surface;

pub use faces::{checkerboard, colored_faces, trace_faces, Color, Face};
pub use pd::{parse_pd, Crossing, Dart, DiagramError, EdgeLabel, PlanarDiagram};
pub use surface::{surface_stats, Side, SideAssignment, SurfaceStats};
