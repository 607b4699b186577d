pub mod efficiency;
pub mod error;
pub mod extremality;
pub mod fixtures;
pub mod game;
pub mod geometry;
pub mod io;
pub mod numeric;
mod par;
pub mod random;

pub use error::{Error, Result};
