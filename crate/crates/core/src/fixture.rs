//! The built-in m_9 vertex that has no cut among its neighbors, with its
//! published incidence and adjacency lists.

use crate::error::{Error, Result};
use crate::polytope::{FacetKind, MetricVector};

const VERTEX: &str = include_str!("../data/counterexample_vertex.txt");
const INCIDENCE: &str = include_str!("../data/counterexample_incidence.txt");
const NEIGHBORS: &str = include_str!("../data/counterexample_neighbors.txt");

/// Fixture names accepted by [`EmbeddedFixture::by_name`].
pub const FIXTURE_NAMES: &[&str] = &[COUNTEREXAMPLE];

pub const COUNTEREXAMPLE: &str = "laurent-poljak-counterexample";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedFixture {
    pub name: &'static str,
    pub vertex: MetricVector,
    /// Tight facets, in the published order.
    pub expected_incidence: Vec<FacetKind>,
    /// Neighboring vertices, in the published order.
    pub expected_neighbors: Vec<MetricVector>,
}

impl EmbeddedFixture {
    /// The fractional vertex `1/9 (2, 2, 3, 3, 4, 4, 5, 5, 4, 3, 5, 6, ...)`
    /// of `m_9`.
    pub fn counterexample() -> Self {
        let vertex = MetricVector::parse_vertex_file(VERTEX).expect("embedded vertex parses");
        let expected_incidence = INCIDENCE
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.parse().expect("embedded facet name parses"))
            .collect();
        let (_, expected_neighbors) = crate::enumeration::parse_vertex_list(NEIGHBORS)
            .expect("embedded neighbor list parses");
        EmbeddedFixture {
            name: COUNTEREXAMPLE,
            vertex,
            expected_incidence,
            expected_neighbors,
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            COUNTEREXAMPLE => Ok(Self::counterexample()),
            other => Err(Error::Input(format!(
                "unknown fixture {other:?}; known: {}",
                FIXTURE_NAMES.join(", ")
            ))),
        }
    }
}
