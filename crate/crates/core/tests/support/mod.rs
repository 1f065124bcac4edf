//! Generators, oracles and property bodies shared by the property suites
//! and the acceptance run.
#![allow(dead_code)]

pub mod composer;
pub mod sim;

pub const CASES: u32 = 1000;
