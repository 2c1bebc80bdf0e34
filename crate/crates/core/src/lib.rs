//! Exact computations for Calogero-Moser spaces of affine curves and the
//! ideals of differential operators they correspond to.

pub mod cmspace;
pub mod curve;
pub mod diffop;
pub mod exact;
pub mod forge;
pub mod lattice;
pub mod szego;
