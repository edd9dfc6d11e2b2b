pub mod arc;
pub mod bar;
pub mod category;
pub mod chron;
pub mod cohomology;
pub mod complex;
pub mod graded;
pub mod hochschild;
pub mod homology;
pub mod link;
pub mod ring;
pub mod solve;
pub mod tangle;
pub mod topography;
