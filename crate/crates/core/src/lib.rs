pub mod geometry;
pub mod lift;
pub mod sssp;
pub mod exact;
pub mod approx;
pub mod instance_io;
pub mod cli;
