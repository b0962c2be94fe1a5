//! The obstruction bundle `T_X ⊠ E^∨` over `X × M̄_g` and degree 0 invariants.

mod euler;
mod gw;
mod ring;

pub use euler::{euler_class, euler_class_genus1};
pub use gw::{degree0_gw, obstruction_class, Target};
pub use ring::{
    chern_product_coefficient, lambda_degree_cap, mumford_reduce, ChernMonomial, LambdaMonomial,
    LambdaRingElem, Relative,
};
