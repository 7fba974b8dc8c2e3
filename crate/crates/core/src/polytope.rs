//! The metric polytope `m_n`: coordinates indexed by node pairs, the
//! triangle and perimeter facets, cut vectors, and the exact vertex and
//! edge tests built on them.
//!
//! Nodes are numbered `1..=n`. Pairs are ordered lexicographically:
//! `(1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{self, parse_rational, Matrix};
use crate::error::{Error, Result};
use crate::Rational;

/// Largest node count supported anywhere in the crate (cut sets are bit
/// masks over the nodes).
pub const MAX_NODES: usize = 63;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Bijection between node pairs `i < j` and coordinate indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairIndexer {
    n: usize,
}

impl PairIndexer {
    pub fn new(n: usize) -> Result<Self> {
        if !(3..=MAX_NODES).contains(&n) {
            return Err(Error::Input(format!(
                "node count must be in 3..={MAX_NODES}, got {n}"
            )));
        }
        Ok(PairIndexer { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C(n, 2)`.
    pub fn dimension(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i >= j || j > self.n {
            return Err(Error::Input(format!(
                "pair ({i},{j}) is not of the form 1 <= i < j <= {}",
                self.n
            )));
        }
        Ok(self.index_unchecked(i, j))
    }

    /// Index of the unordered pair `{a, b}`; `a != b` is assumed.
    #[inline]
    pub(crate) fn index_unordered(&self, a: usize, b: usize) -> usize {
        if a < b {
            self.index_unchecked(a, b)
        } else {
            self.index_unchecked(b, a)
        }
    }

    #[inline]
    fn index_unchecked(&self, i: usize, j: usize) -> usize {
        // pairs starting with 1..i-1 come first
        let before = (i - 1) * (2 * self.n - i) / 2;
        before + (j - i - 1)
    }

    pub fn pair(&self, index: usize) -> (usize, usize) {
        let mut rest = index;
        for i in 1..self.n {
            let row = self.n - i;
            if rest < row {
                return (i, i + 1 + rest);
            }
            rest -= row;
        }
        panic!("pair index {index} out of range for n = {}", self.n)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |i| (i + 1..=self.n).map(move |j| (i, j)))
    }
}

/// A point of `R^C(n,2)` with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetricVector {
    n: usize,
    coords: Vec<Rational>,
}

impl MetricVector {
    pub fn new(n: usize, coords: Vec<Rational>) -> Result<Self> {
        let dim = PairIndexer::new(n)?.dimension();
        if coords.len() != dim {
            return Err(Error::Input(format!(
                "n = {n} needs {dim} coordinates, got {}",
                coords.len()
            )));
        }
        Ok(MetricVector { n, coords })
    }

    pub(crate) fn from_vec_unchecked(n: usize, coords: Vec<Rational>) -> Self {
        debug_assert_eq!(coords.len(), n * (n - 1) / 2);
        MetricVector { n, coords }
    }

    pub fn constant(n: usize, value: Rational) -> Result<Self> {
        let dim = PairIndexer::new(n)?.dimension();
        Ok(MetricVector {
            n,
            coords: vec![value; dim],
        })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, Rational::zero())
    }

    /// `numerators / denominator`, as the coordinates are usually written.
    pub fn from_scaled(n: usize, denominator: i64, numerators: &[i64]) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        let coords = numerators
            .iter()
            .map(|&p| Rational::new(p.into(), denominator.into()))
            .collect();
        Self::new(n, coords)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn indexer(&self) -> PairIndexer {
        PairIndexer { n: self.n }
    }

    /// Coordinate `x_ij` for `i != j` in either order.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.coords[self.indexer().index_unordered(i, j)]
    }

    /// Every coordinate is 0 or 1.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero() || c.is_one())
    }

    /// Vertex file text: the node count on one line, then the coordinates.
    pub fn to_vertex_file(&self) -> String {
        format!("{}\n{}\n", self.n, self.coords_line())
    }

    pub fn coords_line(&self) -> String {
        self.coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_vertex_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty vertex file".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad node count line {header:?}")))?;
        let coords = lines
            .flat_map(str::split_whitespace)
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, coords).map_err(|e| match e {
            Error::Input(msg) => Error::Parse(msg),
            other => other,
        })
    }

    /// Parses one line of whitespace-separated coordinates for a known `n`.
    pub fn parse_coords(n: usize, line: &str) -> Result<Self> {
        let coords = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, coords).map_err(|e| match e {
            Error::Input(msg) => Error::Parse(msg),
            other => other,
        })
    }
}

impl fmt::Display for MetricVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords_line())
    }
}

/// Which inequality a facet is, in node terms.
///
/// `Triangle { apex: k, pair: (i, j) }` is `x_ij - x_ik - x_jk <= 0`;
/// `Perimeter { triple: (i, j, k) }` is `x_ij + x_ik + x_jk <= 2`.
/// Node tuples are always sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetKind {
    Triangle { apex: usize, pair: (usize, usize) },
    Perimeter { triple: (usize, usize, usize) },
}

impl FacetKind {
    pub fn triangle(apex: usize, a: usize, b: usize) -> Result<Self> {
        let (i, j) = (a.min(b), a.max(b));
        if i == 0 || i == j || apex == 0 || apex == i || apex == j {
            return Err(Error::Input(format!(
                "triangle needs three distinct positive nodes, got apex {apex} pair ({a},{b})"
            )));
        }
        Ok(FacetKind::Triangle { apex, pair: (i, j) })
    }

    pub fn perimeter(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == 0 || t[0] == t[1] || t[1] == t[2] {
            return Err(Error::Input(format!(
                "perimeter needs three distinct positive nodes, got ({a},{b},{c})"
            )));
        }
        Ok(FacetKind::Perimeter {
            triple: (t[0], t[1], t[2]),
        })
    }

    /// The three nodes involved, sorted.
    pub fn nodes(&self) -> [usize; 3] {
        match *self {
            FacetKind::Triangle { apex, pair: (i, j) } => {
                let mut t = [apex, i, j];
                t.sort_unstable();
                t
            }
            FacetKind::Perimeter { triple: (i, j, k) } => [i, j, k],
        }
    }

    /// Textbook name: the sorted triple with the apex of a triangle
    /// inequality overlined, e.g. `Δ_{5,8̄,9}`.
    pub fn delta_name(&self) -> String {
        let apex = match *self {
            FacetKind::Triangle { apex, .. } => Some(apex),
            FacetKind::Perimeter { .. } => None,
        };
        let parts: Vec<String> = self
            .nodes()
            .iter()
            .map(|&v| {
                if Some(v) == apex {
                    format!("{v}\u{0304}")
                } else {
                    v.to_string()
                }
            })
            .collect();
        format!("Δ_{{{}}}", parts.join(","))
    }
}

/// ASCII facet names: `"T i j / k"` for the triangle inequality with apex
/// `k`, `"P i j k"` for a perimeter inequality.
impl fmt::Display for FacetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FacetKind::Triangle { apex, pair: (i, j) } => write!(f, "T {i} {j} / {apex}"),
            FacetKind::Perimeter { triple: (i, j, k) } => write!(f, "P {i} {j} {k}"),
        }
    }
}

impl FromStr for FacetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad facet name {s:?}: {why}"));
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let node = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| bad("node must be a positive integer"))
        };
        let kind = match tokens.as_slice() {
            ["T", i, j, "/", k] => FacetKind::triangle(node(k)?, node(i)?, node(j)?),
            ["P", i, j, k] => FacetKind::perimeter(node(i)?, node(j)?, node(k)?),
            _ => return Err(bad("expected \"T i j / k\" or \"P i j k\"")),
        }
        .map_err(|_| bad("nodes must be distinct"))?;
        // only the canonical (sorted) spelling is accepted, so the
        // name <-> facet mapping is one-to-one
        if kind.to_string() != tokens.join(" ") {
            return Err(bad("nodes must be listed in increasing order"));
        }
        Ok(kind)
    }
}

/// Stable position of a facet in [`generate_facets`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetId(pub usize);

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One defining inequality `normal . x <= rhs` of `m_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet {
    id: FacetId,
    n: usize,
    kind: FacetKind,
    /// The three nonzero entries of the normal.
    terms: [(usize, i8); 3],
    rhs: i64,
}

impl Facet {
    fn new(id: usize, indexer: PairIndexer, kind: FacetKind) -> Self {
        let ix = |a, b| indexer.index_unordered(a, b);
        let (terms, rhs) = match kind {
            FacetKind::Triangle { apex, pair: (i, j) } => {
                ([(ix(i, j), 1), (ix(i, apex), -1), (ix(j, apex), -1)], 0)
            }
            FacetKind::Perimeter { triple: (i, j, k) } => {
                ([(ix(i, j), 1), (ix(i, k), 1), (ix(j, k), 1)], 2)
            }
        };
        Facet {
            id: FacetId(id),
            n: indexer.n(),
            kind,
            terms,
            rhs,
        }
    }

    pub fn id(&self) -> FacetId {
        self.id
    }

    pub fn kind(&self) -> FacetKind {
        self.kind
    }

    pub fn normal(&self) -> MetricVector {
        let mut coords = vec![Rational::zero(); self.n * (self.n - 1) / 2];
        for &(idx, c) in &self.terms {
            coords[idx] = Rational::from_integer(c.into());
        }
        MetricVector::from_vec_unchecked(self.n, coords)
    }

    pub fn rhs(&self) -> Rational {
        Rational::from_integer(self.rhs.into())
    }

    /// Nonzero normal entries as `(coordinate index, coefficient)`.
    pub fn terms(&self) -> &[(usize, i8); 3] {
        &self.terms
    }

    /// `normal . x`.
    pub fn apply(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for &(idx, c) in &self.terms {
            match c {
                1 => acc += &x[idx],
                -1 => acc -= &x[idx],
                _ => unreachable!("facet coefficients are +-1"),
            }
        }
        acc
    }

    /// `rhs - normal . x`; nonnegative iff `x` satisfies the facet.
    pub fn slack(&self, x: &MetricVector) -> Result<Rational> {
        if x.n != self.n {
            return Err(Error::Input(format!(
                "facet of m_{} evaluated at a point of dimension {}",
                self.n,
                x.dimension()
            )));
        }
        Ok(self.slack_unchecked(&x.coords))
    }

    pub(crate) fn slack_unchecked(&self, x: &[Rational]) -> Rational {
        self.rhs() - self.apply(x)
    }

    pub(crate) fn normal_row(&self, dim: usize) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); dim];
        for &(idx, c) in &self.terms {
            row[idx] = Rational::from_integer(c.into());
        }
        row
    }
}

/// All `4 C(n,3)` facets of `m_n`: triples in lexicographic order, and per
/// triple `(i,j,k)` the triangle inequalities with apex `i`, `j`, `k`
/// followed by the perimeter inequality.
pub fn generate_facets(n: usize) -> Result<Vec<Facet>> {
    let indexer = PairIndexer::new(n)?;
    let mut facets = Vec::with_capacity(4 * binomial(n, 3));
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let kinds = [
                    FacetKind::Triangle { apex: i, pair: (j, k) },
                    FacetKind::Triangle { apex: j, pair: (i, k) },
                    FacetKind::Triangle { apex: k, pair: (i, j) },
                    FacetKind::Perimeter { triple: (i, j, k) },
                ];
                for kind in kinds {
                    facets.push(Facet::new(facets.len(), indexer, kind));
                }
            }
        }
    }
    Ok(facets)
}

/// A node subset `S` naming the cut `δ(S)`. Since `δ(S) = δ(V \ S)`, the
/// canonical member of each pair never contains node 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutSet {
    n: usize,
    /// bit `v` set iff node `v` is in the set; bit 1 is never set
    mask: u64,
}

impl CutSet {
    /// Canonicalizes an arbitrary subset of `1..=n`.
    pub fn new(n: usize, nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        PairIndexer::new(n)?;
        let mut mask = 0u64;
        for v in nodes {
            if v == 0 || v > n {
                return Err(Error::Input(format!("node {v} outside 1..={n}")));
            }
            mask |= 1 << v;
        }
        Ok(Self::from_mask(n, mask))
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        let full = Self::full_mask(n);
        let mask = mask & full;
        let mask = if mask & 0b10 != 0 { full & !mask } else { mask };
        CutSet { n, mask }
    }

    fn full_mask(n: usize) -> u64 {
        // bits 1..=n
        ((1u128 << (n + 1)) - 2) as u64
    }

    /// Every canonical cut set, `2^(n-1)` of them, in increasing mask order.
    pub fn all(n: usize) -> Result<Vec<CutSet>> {
        PairIndexer::new(n)?;
        if n > 30 {
            return Err(Error::Capability(format!(
                "refusing to list 2^{} cuts",
                n - 1
            )));
        }
        Ok((0..1u64 << (n - 1))
            .map(|bits| CutSet { n, mask: bits << 2 })
            .collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.mask & (1 << v) != 0
    }

    pub fn members(&self) -> Vec<usize> {
        (2..=self.n).filter(|&v| self.contains(v)).collect()
    }

    /// True iff the pair `{i, j}` crosses the cut.
    #[inline]
    pub fn separates(&self, i: usize, j: usize) -> bool {
        self.contains(i) != self.contains(j)
    }

    pub fn symmetric_difference(&self, other: &CutSet) -> CutSet {
        Self::from_mask(self.n, self.mask ^ other.mask)
    }

    /// The 0/1 incidence vector `δ(S)`.
    pub fn cut_vector(&self) -> MetricVector {
        let indexer = PairIndexer { n: self.n };
        let coords = indexer
            .pairs()
            .map(|(i, j)| {
                if self.separates(i, j) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        MetricVector::from_vec_unchecked(self.n, coords)
    }
}

impl fmt::Display for CutSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

/// The metric polytope `m_n` with its facet list built once.
#[derive(Debug, Clone)]
pub struct MetricPolytope {
    indexer: PairIndexer,
    facets: Vec<Facet>,
    by_kind: HashMap<FacetKind, FacetId>,
}

impl MetricPolytope {
    pub fn new(n: usize) -> Result<Self> {
        let indexer = PairIndexer::new(n)?;
        let facets = generate_facets(n)?;
        let by_kind = facets.iter().map(|f| (f.kind, f.id)).collect();
        Ok(MetricPolytope {
            indexer,
            facets,
            by_kind,
        })
    }

    pub fn n(&self) -> usize {
        self.indexer.n()
    }

    pub fn dimension(&self) -> usize {
        self.indexer.dimension()
    }

    pub fn indexer(&self) -> PairIndexer {
        self.indexer
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, id: FacetId) -> &Facet {
        &self.facets[id.0]
    }

    pub fn facet_id(&self, kind: &FacetKind) -> Result<FacetId> {
        self.by_kind
            .get(kind)
            .copied()
            .ok_or_else(|| Error::Input(format!("{kind} is not a facet of m_{}", self.n())))
    }

    /// Looks a facet up by its ASCII name.
    pub fn parse_facet(&self, name: &str) -> Result<FacetId> {
        let kind: FacetKind = name.parse()?;
        self.facet_id(&kind).map_err(|e| Error::Parse(e.to_string()))
    }

    fn check_point(&self, x: &MetricVector) -> Result<()> {
        if x.n != self.n() {
            return Err(Error::Input(format!(
                "point has n = {}, polytope has n = {}",
                x.n,
                self.n()
            )));
        }
        Ok(())
    }

    pub fn slack(&self, id: FacetId, x: &MetricVector) -> Result<Rational> {
        self.facet(id).slack(x)
    }

    /// The first violated facet, if any.
    pub fn violated(&self, x: &MetricVector) -> Result<Option<(FacetId, Rational)>> {
        self.check_point(x)?;
        Ok(self.facets.iter().find_map(|f| {
            let s = f.slack_unchecked(&x.coords);
            s.is_negative().then_some((f.id, s))
        }))
    }

    pub fn contains(&self, x: &MetricVector) -> bool {
        matches!(self.violated(x), Ok(None))
    }

    /// The facets tight at `x`, in id order. Fails if `x` violates any
    /// facet.
    pub fn incidence(&self, x: &MetricVector) -> Result<Vec<FacetId>> {
        self.check_point(x)?;
        let mut tight = Vec::new();
        for f in &self.facets {
            let s = f.slack_unchecked(&x.coords);
            if s.is_negative() {
                return Err(Error::Infeasible {
                    facet: f.kind.to_string(),
                    slack: s.to_string(),
                });
            }
            if s.is_zero() {
                tight.push(f.id);
            }
        }
        Ok(tight)
    }

    pub fn normals_matrix(&self, ids: &[FacetId]) -> Matrix<Rational> {
        let dim = self.dimension();
        let rows: Vec<Vec<Rational>> = ids
            .iter()
            .map(|&id| self.facet(id).normal_row(dim))
            .collect();
        Matrix::from_rows(dim, &rows).expect("normal rows have the polytope dimension")
    }

    /// Rank of the normals of `ids`, capped at the dimension.
    pub fn rank_of(&self, ids: &[FacetId]) -> usize {
        arith::rank_capped(&self.normals_matrix(ids), self.dimension())
    }

    /// Checks `x` is a vertex and returns its tight facets.
    pub fn vertex_incidence(&self, x: &MetricVector) -> Result<Vec<FacetId>> {
        let tight = self.incidence(x)?;
        let dimension = self.dimension();
        if tight.len() < dimension {
            return Err(Error::NotAVertex {
                tight: tight.len(),
                rank: self.rank_of(&tight),
                dimension,
            });
        }
        let rank = self.rank_of(&tight);
        if rank < dimension {
            return Err(Error::NotAVertex {
                tight: tight.len(),
                rank,
                dimension,
            });
        }
        Ok(tight)
    }

    /// `x` lies in `m_n` and its tight normals span the whole space.
    pub fn is_vertex(&self, x: &MetricVector) -> bool {
        self.vertex_incidence(x).is_ok()
    }

    /// Adjacency given the (sorted) tight sets of two distinct vertices:
    /// the common tight normals must have rank exactly `dimension - 1`.
    pub fn adjacent_by_incidence(&self, a: &[FacetId], b: &[FacetId]) -> bool {
        let common = intersect_sorted(a, b);
        let target = self.dimension() - 1;
        common.len() >= target && self.rank_of(&common) == target
    }

    /// Whether two distinct vertices span an edge of `m_n`.
    pub fn are_adjacent(&self, u: &MetricVector, v: &MetricVector) -> Result<bool> {
        let a = self.vertex_incidence(u)?;
        let b = self.vertex_incidence(v)?;
        if u == v {
            return Err(Error::Input("a vertex is not adjacent to itself".into()));
        }
        Ok(self.adjacent_by_incidence(&a, &b))
    }
}

pub(crate) fn intersect_sorted(a: &[FacetId], b: &[FacetId]) -> Vec<FacetId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
