//! Finite-dimensional pointed Hopf algebras over cyclotomic fields.

pub mod abelian;
pub mod classify;
pub mod cli;
pub mod cyclotomic;
pub mod exactla;
pub mod hopfcore;
pub mod lifting;
pub mod qls;
pub mod rational;
pub mod rewrite;
