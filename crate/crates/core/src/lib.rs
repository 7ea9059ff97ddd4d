pub mod cyclotomic;
pub mod repring;
pub mod degree;
pub mod topology;
pub mod selftest;
pub mod cli;
