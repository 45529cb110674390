pub mod bialgebra;
pub mod embed;
pub mod fixtures;
pub mod hopfdeform;
pub mod sklyanin;
pub mod format;
pub mod liealg;
pub mod symkernel;
