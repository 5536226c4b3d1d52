//! Singularity invariants of map germs `f: (X,0) -> (C^2,0)` on two-dimensional
//! isolated complete intersection singularities.

pub mod family;
pub mod invariants;
pub mod polyring;
pub mod seed;
pub mod stdbasis;
pub mod weighted;
