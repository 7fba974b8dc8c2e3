//! Neighbors of a vertex: the tangent cone at the vertex, its extreme rays,
//! and ray shooting along each ray to the next facet.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::dd::{DoubleDescription, SparseRow};
use crate::error::{Error, Result};
use crate::polytope::{CutSet, FacetId, MetricPolytope, MetricVector};
use crate::Rational;

/// The cone of feasible directions at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCone {
    pub vertex: MetricVector,
    /// Facets tight at the vertex; the cone is `{y : normal . y <= 0}` over
    /// these.
    pub tight: Vec<FacetId>,
    /// Extreme rays as primitive integer vectors, sorted.
    pub rays: Vec<MetricVector>,
}

impl TangentCone {
    /// A vertex is quasi-simple when it has one more tight facet than the
    /// dimension.
    pub fn is_quasi_simple(&self) -> bool {
        self.tight.len() == self.vertex.dimension() + 1
    }
}

pub fn tangent_cone(poly: &MetricPolytope, v: &MetricVector) -> Result<TangentCone> {
    let tight = poly.vertex_incidence(v)?;
    let rows: Vec<SparseRow> = tight
        .iter()
        .map(|&id| {
            poly.facet(id)
                .terms()
                .iter()
                .map(|&(c, a)| (c, BigInt::from(a)))
                .collect()
        })
        .collect();
    let raw = DoubleDescription::new(poly.dimension(), rows).run()?;
    let mut rays: Vec<MetricVector> = raw
        .into_iter()
        .map(|r| {
            let coords = r.coords.into_iter().map(Rational::from_integer).collect();
            MetricVector::new(poly.n(), coords).expect("ray has the polytope dimension")
        })
        .collect();
    rays.sort();
    Ok(TangentCone {
        vertex: v.clone(),
        tight,
        rays,
    })
}

/// Moves from `v` along `direction` until the first facet not containing
/// `v` is pierced. For an extreme ray of the tangent cone this lands on the
/// neighboring vertex along that edge.
pub fn ray_shoot(
    poly: &MetricPolytope,
    v: &MetricVector,
    direction: &MetricVector,
) -> Result<MetricVector> {
    if v.n() != poly.n() || direction.n() != poly.n() {
        return Err(Error::Input("vertex and direction must live in m_n".into()));
    }
    let mut step: Option<Rational> = None;
    for f in poly.facets() {
        let rate = f.apply(direction.coords());
        if !rate.is_positive() {
            continue;
        }
        let slack = f.slack_unchecked(v.coords());
        if slack.is_negative() {
            return Err(Error::Infeasible {
                facet: f.kind().to_string(),
                slack: slack.to_string(),
            });
        }
        let t = slack / rate;
        if step.as_ref().is_none_or(|s| t < *s) {
            step = Some(t);
        }
    }
    let t = step.ok_or(Error::UnboundedRay)?;
    if t.is_zero() {
        return Err(Error::Input(
            "direction leaves the polytope immediately; not a tangent-cone ray".into(),
        ));
    }
    let coords = v
        .coords()
        .iter()
        .zip(direction.coords())
        .map(|(x, r)| x + &t * r)
        .collect();
    MetricVector::new(poly.n(), coords)
}

/// Neighbors reached from an already computed tangent cone, deduplicated
/// and sorted.
pub fn neighbors_from_cone(poly: &MetricPolytope, cone: &TangentCone) -> Result<Vec<MetricVector>> {
    let mut out = cone
        .rays
        .par_iter()
        .map(|r| ray_shoot(poly, &cone.vertex, r))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// All vertices adjacent to `v`, sorted lexicographically.
pub fn neighbors(poly: &MetricPolytope, v: &MetricVector) -> Result<Vec<MetricVector>> {
    neighbors_from_cone(poly, &tangent_cone(poly, v)?)
}

/// Every cut adjacent to `v`, found by the pairwise rank test against all
/// `2^(n-1)` cuts. `v` itself is skipped when it is a cut.
pub fn adjacent_cuts(poly: &MetricPolytope, v: &MetricVector) -> Result<Vec<CutSet>> {
    let tight = poly.vertex_incidence(v)?;
    let cuts = CutSet::all(poly.n())?;
    let hits = cuts
        .par_iter()
        .filter_map(|s| {
            let c = s.cut_vector();
            if &c == v {
                return None;
            }
            let ct = poly.incidence(&c).expect("cuts lie in m_n");
            poly.adjacent_by_incidence(&tight, &ct).then_some(*s)
        })
        .collect();
    Ok(hits)
}

/// Whether `v` has an edge to some cut.
pub fn adjacent_to_some_cut(poly: &MetricPolytope, v: &MetricVector) -> Result<bool> {
    let tight = poly.vertex_incidence(v)?;
    let cuts = CutSet::all(poly.n())?;
    Ok(cuts.par_iter().any(|s| {
        let c = s.cut_vector();
        if &c == v {
            return false;
        }
        let ct = poly.incidence(&c).expect("cuts lie in m_n");
        poly.adjacent_by_incidence(&tight, &ct)
    }))
}
