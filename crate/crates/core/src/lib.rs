//! Consistency checking and conjunctive query answering for description logic
//! knowledge bases through a set-theoretic encoding, Herbrand grounding and a
//! KE-tableau, plus a brute-force oracle for verification.

pub mod corpus;
pub mod cqa;
pub mod error;
pub mod ground;
pub mod model;
pub mod normalize;
pub mod oracle;
pub mod parser;
pub mod pipeline;
pub mod pretty;
pub mod tableau;
pub mod translate;

pub use error::{Error, Result};
pub use model::*;
