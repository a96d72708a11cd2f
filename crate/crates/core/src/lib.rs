pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod io;
pub mod kernel;
pub mod ode;
pub mod poincare;
pub mod profiles;
pub mod quad;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
