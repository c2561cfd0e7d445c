#![allow(dead_code)]

pub mod cubie;
pub mod oracles;
