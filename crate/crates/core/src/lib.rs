pub mod arith;
pub mod cli;
pub mod correspondence;
pub mod groups;
pub mod linalg;
pub mod numberfield;
pub mod poly;
pub mod resolvent;
pub mod roots;
pub mod selftest;
pub mod sympoly;
