//! Full vertex enumeration of `m_n` for small `n`, the vertex graph, and
//! checks run over it.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cone::adjacent_to_some_cut;
use crate::dd::{DoubleDescription, SparseRow};
use crate::error::{Error, Result};
use crate::polytope::{FacetId, MetricPolytope, MetricVector, PairIndexer};
use crate::symmetry::{self, group_order};
use crate::Rational;

/// Largest `n` enumerated without opting in to long runs.
pub const MAX_DEFAULT_NODES: usize = 6;
/// Largest `n` enumerated at all (expect hours at this size).
pub const MAX_LONG_NODES: usize = 7;

/// Deduplicated vertices of `m_n`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    vertices: Vec<MetricVector>,
}

impl VertexSet {
    /// Sorts and deduplicates `vertices`, checking each is a vertex of
    /// `poly`.
    pub fn new(poly: &MetricPolytope, mut vertices: Vec<MetricVector>) -> Result<Self> {
        vertices.sort();
        vertices.dedup();
        if let Some(bad) = vertices.par_iter().find_any(|v| !poly.is_vertex(v)) {
            poly.vertex_incidence(bad)?;
        }
        Ok(VertexSet {
            n: poly.n(),
            vertices,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[MetricVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn cut_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_integral()).count()
    }

    pub fn index_of(&self, v: &MetricVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Header line `n <n> count <k>`, then one vertex per line.
    pub fn to_file(&self) -> String {
        let mut s = format!("n {} count {}\n", self.n, self.vertices.len());
        for v in &self.vertices {
            s.push_str(&v.coords_line());
            s.push('\n');
        }
        s
    }

    pub fn parse(poly: &MetricPolytope, text: &str) -> Result<Self> {
        let (n, vertices) = parse_vertex_list(text)?;
        if n != poly.n() {
            return Err(Error::Parse(format!(
                "vertex set is for n = {n}, expected n = {}",
                poly.n()
            )));
        }
        Self::new(poly, vertices)
    }
}

/// Reads the vertex set format without sorting or checking vertexhood.
pub fn parse_vertex_list(text: &str) -> Result<(usize, Vec<MetricVector>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty vertex set file".into()))?;
    let bad_header = || Error::Parse(format!("bad header {header:?}, expected \"n <n> count <k>\""));
    let (n, count) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", n, "count", k] => (
            n.parse::<usize>().map_err(|_| bad_header())?,
            k.parse::<usize>().map_err(|_| bad_header())?,
        ),
        _ => return Err(bad_header()),
    };
    let vertices = lines
        .map(|l| MetricVector::parse_coords(n, l))
        .collect::<Result<Vec<_>>>()?;
    if vertices.len() != count {
        return Err(Error::Parse(format!(
            "header announces {count} vertices, found {}",
            vertices.len()
        )));
    }
    Ok((n, vertices))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerationOptions {
    /// Permit `n = 7`.
    pub allow_long: bool,
}

/// All vertices of `m_n`, `3 <= n <= 6`.
pub fn enumerate_vertices(n: usize) -> Result<VertexSet> {
    enumerate_vertices_with(n, EnumerationOptions::default())
}

/// Vertex enumeration by double description on the homogenized system.
///
/// Coordinates are `(t, x)`; each facet `a . x <= b` becomes
/// `a . x - b t <= 0`. The cone is seeded with the simplex
/// `x >= 0, sum x <= C(n,2)`, which contains `m_n` (every coordinate of a
/// point of `m_n` lies in `[0, 1]`), so every intermediate polytope is
/// bounded and every final ray has `t > 0`.
pub fn enumerate_vertices_with(n: usize, opts: EnumerationOptions) -> Result<VertexSet> {
    let limit = if opts.allow_long {
        MAX_LONG_NODES
    } else {
        MAX_DEFAULT_NODES
    };
    if !(3..=limit).contains(&n) {
        let hint = if n == MAX_LONG_NODES {
            " (n = 7 needs the long-run opt-in)"
        } else {
            ""
        };
        return Err(Error::Capability(format!(
            "vertex enumeration supports 3 <= n <= {limit}, got {n}{hint}"
        )));
    }
    let poly = MetricPolytope::new(n)?;
    let d = poly.dimension();

    let mut rows: Vec<SparseRow> = (0..d).map(|i| vec![(i + 1, BigInt::from(-1))]).collect();
    let mut sum: SparseRow = vec![(0, -BigInt::from(d))];
    sum.extend((0..d).map(|i| (i + 1, BigInt::from(1))));
    rows.push(sum);
    let seed: Vec<usize> = (0..=d).collect();
    for f in poly.facets() {
        let mut r: SparseRow = Vec::with_capacity(4);
        let rhs = f.rhs();
        if !rhs.is_zero() {
            r.push((0, -rhs.to_integer()));
        }
        r.extend(f.terms().iter().map(|&(c, a)| (c + 1, BigInt::from(a))));
        rows.push(r);
    }

    let rays = DoubleDescription::new(d + 1, rows).with_seed(seed).run()?;
    let vertices = rays
        .into_iter()
        .map(|r| {
            let t = &r.coords[0];
            debug_assert!(t.is_positive(), "bounded polytope has no rays at infinity");
            let coords = r.coords[1..]
                .iter()
                .map(|x| Rational::new(x.clone(), t.clone()))
                .collect();
            MetricVector::new(n, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    VertexSet::new(&poly, vertices)
}

/// The graph of vertices and edges of `m_n` restricted to a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGraph {
    vertex_set: VertexSet,
    /// sorted neighbor indices per vertex
    edges: Vec<Vec<usize>>,
}

impl VertexGraph {
    pub fn vertex_set(&self) -> &VertexSet {
        &self.vertex_set
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges[a].binary_search(&b).is_ok()
    }

    /// BFS distances from `start`, restricted to vertices where `keep` holds.
    fn distances(&self, start: usize, keep: &dyn Fn(usize) -> bool) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.edges.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.edges[u] {
                if dist[w].is_none() && keep(w) {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Pairwise adjacency over a vertex set by the rank test.
pub fn build_graph(poly: &MetricPolytope, vs: &VertexSet) -> Result<VertexGraph> {
    let incidences: Vec<Vec<FacetId>> = vs
        .vertices
        .par_iter()
        .map(|v| poly.incidence(v))
        .collect::<Result<_>>()?;
    let k = vs.len();
    let upper: Vec<Vec<usize>> = (0..k)
        .into_par_iter()
        .map(|i| {
            (i + 1..k)
                .filter(|&j| poly.adjacent_by_incidence(&incidences[i], &incidences[j]))
                .collect()
        })
        .collect();
    let mut edges = vec![Vec::new(); k];
    for (i, js) in upper.into_iter().enumerate() {
        for j in js {
            edges[i].push(j);
            edges[j].push(i);
        }
    }
    for e in &mut edges {
        e.sort_unstable();
    }
    Ok(VertexGraph {
        vertex_set: vs.clone(),
        edges,
    })
}

/// Largest BFS eccentricity. Fails on a disconnected graph, naming a pair
/// of vertex indices with no path between them.
pub fn diameter(g: &VertexGraph) -> Result<usize> {
    let k = g.edges.len();
    let ecc: Vec<Result<usize>> = (0..k)
        .into_par_iter()
        .map(|s| {
            let dist = g.distances(s, &|_| true);
            match dist.iter().position(Option::is_none) {
                Some(t) => Err(Error::Disconnected(s, t)),
                None => Ok(dist.into_iter().flatten().max().unwrap_or(0)),
            }
        })
        .collect();
    ecc.into_iter()
        .try_fold(0, |acc, e| e.map(|e| acc.max(e)))
}

/// Outcome of testing whether every fractional vertex has a cut neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationReport {
    pub n: usize,
    pub vertices: usize,
    pub fractional: usize,
    /// Fractional vertices with no adjacent cut.
    pub violators: Vec<MetricVector>,
}

impl DominationReport {
    pub fn holds(&self) -> bool {
        self.violators.is_empty()
    }
}

impl fmt::Display for DominationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            write!(
                f,
                "domination holds: all {} fractional vertices are adjacent to a cut",
                self.fractional
            )
        } else {
            write!(
                f,
                "domination fails: {} of {} fractional vertices have no adjacent cut",
                self.violators.len(),
                self.fractional
            )
        }
    }
}

/// Runs the adjacent-cut test on every fractional vertex.
pub fn check_domination(poly: &MetricPolytope, vs: &VertexSet) -> Result<DominationReport> {
    let fractional: Vec<&MetricVector> =
        vs.vertices.iter().filter(|v| !v.is_integral()).collect();
    let flags = fractional
        .par_iter()
        .map(|v| adjacent_to_some_cut(poly, v))
        .collect::<Result<Vec<bool>>>()?;
    let violators = fractional
        .iter()
        .zip(flags)
        .filter(|(_, ok)| !ok)
        .map(|(v, _)| (*v).clone())
        .collect();
    Ok(DominationReport {
        n: vs.n,
        vertices: vs.len(),
        fractional: fractional.len(),
        violators,
    })
}

/// Connectivity of the subgraph induced by the fractional vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub n: usize,
    pub fractional: usize,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
}

impl ConnectivityReport {
    pub fn components(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn verdict(&self) -> &'static str {
        match self.components() {
            0 => "empty",
            1 => "connected",
            _ => "disconnected",
        }
    }
}

impl fmt::Display for ConnectivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fractional subgraph: {} ({} vertices, {} components)",
            self.verdict(),
            self.fractional,
            self.components()
        )
    }
}

pub fn check_fractional_connectivity(g: &VertexGraph) -> ConnectivityReport {
    let verts = g.vertex_set.vertices();
    let keep = |i: usize| !verts[i].is_integral();
    let mut seen = vec![false; verts.len()];
    let mut sizes = Vec::new();
    for s in 0..verts.len() {
        if seen[s] || !keep(s) {
            continue;
        }
        let dist = g.distances(s, &keep);
        let mut size = 0;
        for (i, d) in dist.iter().enumerate() {
            if d.is_some() {
                seen[i] = true;
                size += 1;
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ConnectivityReport {
        n: g.vertex_set.n,
        fractional: verts.iter().filter(|v| !v.is_integral()).count(),
        component_sizes: sizes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    pub representative: MetricVector,
    pub size: usize,
}

/// Partition of a vertex set into symmetry orbits, ordered by canonical
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub n: usize,
    pub group_order: u128,
    pub orbits: Vec<OrbitInfo>,
}

impl fmt::Display for OrbitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.orbits.iter().map(|o| o.size.to_string()).collect();
        write!(f, "{} orbits (sizes {})", self.orbits.len(), sizes.join(", "))
    }
}

pub fn orbit_summary(vs: &VertexSet) -> Result<OrbitReport> {
    if vs.n > symmetry::MAX_ORBIT_NODES {
        return Err(Error::Capability(format!(
            "orbit summary needs n <= {}, got {}",
            symmetry::MAX_ORBIT_NODES,
            vs.n
        )));
    }
    let canon = vs
        .vertices
        .par_iter()
        .map(symmetry::canonical_form)
        .collect::<Result<Vec<_>>>()?;
    let mut counts: BTreeMap<MetricVector, usize> = BTreeMap::new();
    for c in canon {
        *counts.entry(c).or_default() += 1;
    }
    Ok(OrbitReport {
        n: vs.n,
        group_order: group_order(vs.n),
        orbits: counts
            .into_iter()
            .map(|(representative, size)| OrbitInfo {
                representative,
                size,
            })
            .collect(),
    })
}

/// Number of canonical cuts, `2^(n-1)`.
pub fn cut_count(n: usize) -> Result<usize> {
    PairIndexer::new(n)?;
    Ok(1 << (n - 1))
}
