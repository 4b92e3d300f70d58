pub mod algebra;
pub mod rational;
pub mod poset;
pub mod topology;
pub mod digraph;
pub mod fincat;
pub mod decomp;
pub mod arith;
