//! Helical deltahedra and helical star deltahedra.
//!
//! Strips of equilateral triangles glued side by side and closed with a
//! shift fold into infinite polyhedra whose vertices all lie on one helix.
//! This crate finds every such realization of a band by solving the unit
//! chord conditions of the screw orbit, classifies each branch
//! (self-intersection, vertex figure, star label), enumerates and names
//! them, and exports meshes, edge frames, unfolding nets and cut sheets.
//!
//! ```
//! use helistar::{band::BandSpec, solver::{solve_band, SolverOptions}};
//!
//! let band = BandSpec::new(3, 1).unwrap();
//! let branches = solve_band(&band, &SolverOptions::default()).unwrap();
//! assert_eq!(branches.len(), 1);
//! assert!((branches[0].params.twist - (-2.0f64 / 3.0).acos()).abs() < 1e-9);
//! ```

pub mod analysis;
pub mod band;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod export;
pub mod geometry;
pub mod realize;
pub mod solver;

pub use error::{Error, Result};
