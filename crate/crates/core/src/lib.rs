pub mod degree;
pub mod dskp;
pub mod field;
pub mod geometry;
pub mod heights;
pub mod lattice;
pub mod octagon;
pub mod sample;
