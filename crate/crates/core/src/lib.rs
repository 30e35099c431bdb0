pub mod graphs;
pub mod operators;
pub mod poisson;
pub mod polyalg;
pub mod verify;
pub mod weights;
