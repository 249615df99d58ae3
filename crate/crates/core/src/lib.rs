pub mod charslopes;
pub mod checks;
pub mod error;
pub mod lens;
pub mod numtheory;
pub mod seifert;
pub mod surgeryfloer;
pub mod torusknot;

pub use error::{Error, Result};
