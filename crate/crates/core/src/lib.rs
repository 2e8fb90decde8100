pub mod arith;
pub mod cli;
pub mod cone;
pub mod dd;
pub mod discrete;
pub mod disjoint;
pub mod error;
pub mod oracle;
pub mod order;
pub mod polyhedron;
pub mod simplex;

pub use arith::{QMatrix, QVector, Rational};
pub use cone::{build_space, ConeDocument, ConeRep, FaceHandle, OrderedSpace};
pub use error::{Error, Result};
