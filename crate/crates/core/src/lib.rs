pub mod algebra;
pub mod hpm;
pub mod report;
pub mod scalar;
pub mod wave;
