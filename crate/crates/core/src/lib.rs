//! Exact-arithmetic workbench for Yang-Baxter operators, WXZ-systems and
//! entwining structures over finite-dimensional (co)algebras.

pub mod entwining;
pub mod cli;
pub mod examples;
pub mod format;
pub mod gluing;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod tensor;
pub mod yang_baxter;
