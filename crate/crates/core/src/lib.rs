//! Exact construction, verification, classification and exhaustive search of
//! dissections of a triangle into congruent triangles.

pub mod boundary;
pub mod dissect;
pub mod exact;
pub mod geom;
pub mod relations;
pub mod search;
pub mod trispace;
