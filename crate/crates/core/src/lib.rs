pub mod cellular;
pub mod intertwiner;
pub mod nerves;
pub mod report;
pub mod verify;
pub mod error;
pub mod homotopy;
pub mod theta;

pub use error::{Error, Result};
pub use theta::{Theta, ThetaMorphism, Window};
