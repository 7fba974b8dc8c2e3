//! Exact computations on the metric polytope `m_n` and the cut polytope.
//!
//! `m_n` lives in dimension `C(n,2)` and is cut out by the triangle
//! inequalities `x_ij - x_ik - x_jk <= 0` and the perimeter inequalities
//! `x_ij + x_ik + x_jk <= 2`. Its integral vertices are exactly the cuts.
//! All coordinates are exact rationals; nothing here uses floating point.

pub mod arith;
pub mod cone;
pub mod dd;
pub mod enumeration;
pub mod error;
pub mod fixture;
pub mod polytope;
pub mod symmetry;

pub use arith::{Field, Matrix};
pub use cone::{adjacent_to_some_cut, neighbors, ray_shoot, tangent_cone, TangentCone};
pub use enumeration::{
    build_graph, check_domination, check_fractional_connectivity, diameter, enumerate_vertices,
    orbit_summary, VertexGraph, VertexSet,
};
pub use error::{Error, Result};
pub use polytope::{
    binomial, generate_facets, CutSet, Facet, FacetId, FacetKind, MetricPolytope, MetricVector,
    PairIndexer,
};
pub use fixture::EmbeddedFixture;
pub use symmetry::{
    apply_permutation, apply_switching, canonical_form, orbit, Permutation, SymmetryElement,
};

/// Arbitrary-precision rational, the scalar of every geometric computation.
pub type Rational = num_rational::BigRational;

/// Matrix over [`Rational`].
pub type RationalMatrix = Matrix<Rational>;
