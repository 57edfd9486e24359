//! Exact computations with groupoid graded algebras over prime fields.
pub mod abelian;
pub mod action;
pub mod algebra;
pub mod cohomology;
pub mod corpus;
pub mod crossed;
pub mod finalg;
pub mod groupoid;
pub mod intmat;
pub mod io;
pub mod leavitt;
pub mod partialmaps;
pub mod skew;
pub mod zp;

pub use io::Error;
