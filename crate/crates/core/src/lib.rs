//! Exceptional sequences of type `C_n`, soft and exceptional sequences in
//! the rank `n` tube, oriented chord diagrams, augmented labeled forests,
//! and the maps and braid actions that tie them together.

pub mod bijections;
pub mod braid;
pub mod chord;
pub mod counting;
pub mod error;
pub mod forest;
pub mod hereditary;
pub mod io;
pub mod lattice;
pub mod render;
pub mod seq;
pub mod signed;
pub mod tube;
pub mod verify;

pub use error::{Error, Result};
