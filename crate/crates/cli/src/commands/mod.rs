pub mod credit;
pub mod mnist;
pub mod qubo;
