//! Exact computation in the infinitesimal Hecke algebras `H_z` of `sl2` over
//! fields of odd characteristic: PBW normal forms, the center, and small
//! representations.

pub mod casimir;
pub mod center;
pub mod fields;
pub mod pbw;
pub mod repn;
