#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod covariant;
pub mod heisenberg;
pub mod hypercomplex;
pub mod ladder;
pub mod mechanics;
pub mod numerics;
pub mod reps;
pub mod sl2geom;
pub mod states;
