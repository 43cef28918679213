pub mod ald;
pub mod augment;
pub mod diagram;
pub mod fiber_graph;
pub mod moves;
pub mod stallings;
pub mod random;
pub mod pipeline;
pub mod cli;
