pub mod bivariate;
pub mod dump;
pub mod pseries;

pub use bivariate::{Atom, BiFrac, BiSeries};
pub use pseries::{Mismatch, PSeries};
