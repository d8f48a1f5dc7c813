#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod geometry;
pub mod io;
pub mod operators;
pub mod poly;
pub mod roots;
pub mod svg;
