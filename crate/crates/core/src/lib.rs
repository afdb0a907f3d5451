pub mod algebra;
pub mod error;
pub mod linkage;
pub mod mf;
pub mod modcalc;
pub mod oracle;
pub mod script;

pub use error::{Error, Result};
