//! Additive geometric invariants of polyhedral sets and conic germs, and
//! symbolic zeta-function bookkeeping from resolution data.

pub mod crofton;
pub mod error;
pub mod geom;
pub mod io;
pub mod linalg;
pub mod local;
pub mod mc;
pub mod motivic;
pub mod tube;
pub mod cli;

pub use error::{Error, Result};
pub use mc::{Estimate, McConfig};
