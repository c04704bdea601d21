//! Reductions from wireless resource-allocation and coding problems to clique
//! and independent-set searches.

pub mod noma;
pub mod coding;
pub mod rfid;
pub mod cran;
