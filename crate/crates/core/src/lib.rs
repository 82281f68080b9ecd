pub mod center;
pub mod descriptor;
pub mod diagram;
pub mod error;
pub mod link;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod rho;
pub mod tables;
pub mod verify;
pub mod ring;

pub use error::{Error, Result};
