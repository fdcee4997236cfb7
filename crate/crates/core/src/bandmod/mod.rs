//! The band-module side: generator matrices of band modules, the hexagon
//! of maps over `k[t]`, truncated membership, and the resolution in the
//! degenerate case.

mod generators;
mod membership;
mod resolution;
mod theta;

pub use generators::{build_module_generators, minus, pi_x, pi_y, pi_z, plus, GenMatrix};
pub use membership::{
    macaulayfying_check, reduced_monomials, truncated_membership, MacaulayVerdict, Membership,
};
pub use resolution::{degenerate_resolution, DegenerateResolution};
pub use theta::{build_theta, TMatrix, TripleTheta};
