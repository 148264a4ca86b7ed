pub mod bits;
pub mod complex;
pub mod galg;
pub mod resolution;
