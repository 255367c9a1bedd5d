//! Convex polyhedral meshing of triangle soups.
//!
//! The pipeline conditions the input, builds a Delaunay tetrahedrization of
//! its vertices, maps each input triangle to the tets whose interior it
//! meets, splits those tets by the triangle planes into convex cells whose
//! new vertices are exact implicit points, colors the facets that lie on the
//! input and labels cells inside or outside by a minimum cut.

pub mod bsp;
pub mod check;
pub mod classify;
pub mod cli;
pub mod coloring;
pub mod constraints;
pub mod delaunay;
pub mod error;
pub mod geom;
pub mod io;
pub mod mapping;
pub mod solid;
pub mod soup;

pub use polycell_predicates as predicates;

pub use error::{Error, Result};
pub use soup::{condition_input, Conditioned, Constraint, Origin, Soup};
