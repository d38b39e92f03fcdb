//! Exact Zariski decompositions, Minkowski bases and Okounkov-body polygons on
//! smooth projective surfaces with rational polyhedral effective cone.
//!
//! All arithmetic is over the rationals. A surface is described by its
//! intersection form on a Néron–Severi basis, generators of the effective cone,
//! the list of negative curves and a big nef flag curve `C`.
//!
//! ```
//! use okounkov_core::{area, body_direct, catalog, decompose, DivClass};
//!
//! let s = catalog::collinear_three();
//! let d = DivClass::from_ints(&[15, -3, -3, -1]);
//! let dec = decompose(&s, &d).unwrap();
//! assert_eq!(dec.terms.len(), 3);
//! let body = body_direct(&s, &d).unwrap();
//! assert_eq!(area(&body) * okounkov_core::rat::int(2), s.square(&d));
//! ```

pub mod basis;
pub mod batch;
pub mod body;
pub mod catalog;
pub mod cone;
mod dd;
pub mod decompose;
pub mod divisor;
pub mod error;
pub mod lattice;
mod linalg;
mod par;
pub mod rat;
pub mod zariski;

pub use basis::{
    basis_element_for_support, minkowski_basis, nef_boundary_rays, BasisElement, MinkowskiBasis,
};
pub use body::{
    area, body_direct, body_from_decomposition, minkowski_sum, mu, scale, simplex_body,
    BodyPolygon, Point, SimplexSpec,
};
pub use cone::{cone_contains, dual_cone, Cone};
pub use decompose::{decompose, decompose_big, tau_max, Decomposition, Term};
pub use divisor::DivClass;
pub use error::{Error, Result};
pub use lattice::{
    intersect, is_negative_definite, primitive_integral, IntersectionForm, SurfaceModel,
};
pub use par::is_parallel;
pub use rat::Rat;
pub use zariski::{
    enumerate_chamber_supports, neg_support, null_set, zariski_decompose, ChamberSupport,
    ZariskiPair,
};
