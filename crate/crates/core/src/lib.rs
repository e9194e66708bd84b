pub mod cli;
pub mod cryptanalysis;
pub mod error;
pub mod gabidulin;
pub mod gf2m;
pub mod linalg;
pub mod linpoly;
pub mod mcnie2;
pub mod params;
pub mod rank_metric;

pub use error::{Error, Result};
