//! Symmetries of `m_n`: relabelings of the nodes composed with switching
//! reflections `x_ij -> 1 - x_ij` on the pairs of a cut.
//!
//! For `n >= 5` these generate the whole isometry group, of order
//! `n! 2^(n-1)`. Below that they form a subgroup, which is all this module
//! claims.

use std::collections::{BTreeSet, HashMap};

use num_traits::One;

use crate::error::{Error, Result};
use crate::polytope::{CutSet, MetricVector, PairIndexer};
use crate::Rational;

/// Largest `n` for which [`orbit`] enumerates the group.
pub const MAX_ORBIT_NODES: usize = 6;

/// A bijection of `1..=n`, stored as the image of each node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// `images[i - 1]` is the image of node `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Input(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.image(v)).collect())
    }

    /// Every permutation of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Moves the value at pair `(a, b)` to pair `(perm(a), perm(b))`.
pub fn apply_permutation(perm: &Permutation, x: &MetricVector) -> Result<MetricVector> {
    if perm.n() != x.n() {
        return Err(Error::Input(format!(
            "permutation of {} nodes applied to a point of m_{}",
            perm.n(),
            x.n()
        )));
    }
    let ix = x.indexer();
    let inv = perm.inverse();
    let coords = ix
        .pairs()
        .map(|(i, j)| x.get(inv.image(i), inv.image(j)).clone())
        .collect();
    MetricVector::new(x.n(), coords)
}

/// The switching reflection by `δ(S)`: `x_ij -> 1 - x_ij` on pairs crossing
/// the cut, other coordinates unchanged.
pub fn apply_switching(s: &CutSet, x: &MetricVector) -> Result<MetricVector> {
    if s.n() != x.n() {
        return Err(Error::Input(format!(
            "cut on {} nodes applied to a point of m_{}",
            s.n(),
            x.n()
        )));
    }
    let ix = x.indexer();
    let coords = ix
        .pairs()
        .zip(x.coords())
        .map(|((i, j), c)| {
            if s.separates(i, j) {
                Rational::one() - c
            } else {
                c.clone()
            }
        })
        .collect();
    MetricVector::new(x.n(), coords)
}

/// A group element: relabel by `perm`, then switch by `switch`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetryElement {
    pub perm: Permutation,
    pub switch: CutSet,
}

impl SymmetryElement {
    pub fn new(perm: Permutation, switch: CutSet) -> Result<Self> {
        if perm.n() != switch.n() {
            return Err(Error::Input("permutation and cut disagree on n".into()));
        }
        Ok(SymmetryElement { perm, switch })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(Permutation::identity(n), CutSet::empty(n)?)
    }

    pub fn apply(&self, x: &MetricVector) -> Result<MetricVector> {
        apply_switching(&self.switch, &apply_permutation(&self.perm, x)?)
    }
}

/// `n! 2^(n-1)`.
pub fn group_order(n: usize) -> u128 {
    (1..=n as u128).product::<u128>() << (n - 1)
}

/// All distinct images of `x` under the group. Enumerates the whole group,
/// so only `n <= 6` is accepted.
pub fn orbit(x: &MetricVector) -> Result<BTreeSet<MetricVector>> {
    let n = x.n();
    if n > MAX_ORBIT_NODES {
        return Err(Error::Capability(format!(
            "exhaustive orbit needs n <= {MAX_ORBIT_NODES}, got {n} (group order {})",
            group_order(n)
        )));
    }
    let switched: Vec<MetricVector> = CutSet::all(n)?
        .iter()
        .map(|s| apply_switching(s, x))
        .collect::<Result<_>>()?;
    let mut out = BTreeSet::new();
    for p in Permutation::all(n) {
        for y in &switched {
            out.insert(apply_permutation(&p, y)?);
        }
    }
    Ok(out)
}

/// Lexicographically least image of `x` over the group.
pub fn canonical_form(x: &MetricVector) -> Result<MetricVector> {
    Ok(canonicalize(x)?.0)
}

/// Like [`canonical_form`], also returning a group element that maps `x` to
/// it.
pub fn canonicalize(x: &MetricVector) -> Result<(MetricVector, SymmetryElement)> {
    let n = x.n();
    let ix = x.indexer();

    // rank every value that can appear after switching, so the search
    // compares small integers
    let mut values: Vec<Rational> = x
        .coords()
        .iter()
        .flat_map(|c| [c.clone(), Rational::one() - c])
        .collect();
    values.sort();
    values.dedup();
    let rank_of: HashMap<&Rational, u32> =
        values.iter().enumerate().map(|(k, v)| (v, k as u32)).collect();

    let mut search = Search {
        n,
        ix,
        best: None,
        z: Vec::new(),
    };
    for s in CutSet::all(n)? {
        let y = apply_switching(&s, x)?;
        let mut z = vec![vec![u32::MAX; n]; n];
        for (k, (i, j)) in ix.pairs().enumerate() {
            let r = rank_of[&y.coords()[k]];
            z[i - 1][j - 1] = r;
            z[j - 1][i - 1] = r;
        }
        search.z = z;
        search.run(s);
    }

    let (seq, order, s) = search.best.expect("the group is nonempty");
    let coords = seq.iter().map(|&r| values[r as usize].clone()).collect();
    let canon = MetricVector::new(n, coords)?;

    // slot a holds node order[a]; the relabeling sends order[a] to a + 1,
    // and π r_T = r_{π T} π moves the switch past it
    let mut images = vec![0; n];
    for (slot, &node) in order.iter().enumerate() {
        images[node] = slot + 1;
    }
    let perm = Permutation::new(images)?;
    let switch = CutSet::new(n, s.members().into_iter().map(|v| perm.image(v)))?;
    Ok((canon, SymmetryElement { perm, switch }))
}

/// Backtracking over node orders for one switched copy `z` of the point.
///
/// Slots are filled in order; the node placed in slot `a` contributes row
/// `a` of the output. Once slots `0..k` are fixed, any optimal completion
/// lists the remaining nodes sorted by their values against the fixed
/// nodes, which pins down output rows `0..k` entirely. That prefix is
/// compared against the best image found so far.
struct Search {
    n: usize,
    ix: PairIndexer,
    /// output sequence, node order and switch of the best image so far
    best: Option<(Vec<u32>, Vec<usize>, CutSet)>,
    z: Vec<Vec<u32>>,
}

impl Search {
    fn run(&mut self, s: CutSet) {
        let mut order = Vec::with_capacity(self.n);
        let remaining: Vec<usize> = (0..self.n).collect();
        self.descend(&mut order, remaining, s);
    }

    fn signature(&self, order: &[usize], u: usize) -> Vec<u32> {
        order.iter().map(|&a| self.z[a][u]).collect()
    }

    fn descend(&mut self, order: &mut Vec<usize>, mut remaining: Vec<usize>, s: CutSet) {
        if remaining.is_empty() {
            let seq: Vec<u32> = self
                .ix
                .pairs()
                .map(|(i, j)| self.z[order[i - 1]][order[j - 1]])
                .collect();
            if self.best.as_ref().is_none_or(|(b, _, _)| seq < *b) {
                self.best = Some((seq, order.clone(), s));
            }
            return;
        }

        let mut keyed: Vec<(Vec<u32>, usize)> = remaining
            .iter()
            .map(|&u| (self.signature(order, u), u))
            .collect();
        keyed.sort();
        remaining = keyed.iter().map(|(_, u)| *u).collect();

        if !order.is_empty() {
            let prefix = self.forced_prefix(order, &remaining);
            if let Some((best, _, _)) = &self.best {
                if prefix.as_slice() > &best[..prefix.len()] {
                    return;
                }
            }
        }

        let min_sig = keyed[0].0.clone();
        let candidates: Vec<usize> = keyed
            .iter()
            .take_while(|(sig, _)| *sig == min_sig)
            .map(|(_, u)| *u)
            .collect();
        let mut tried: Vec<usize> = Vec::new();
        for &u in &candidates {
            // swapping u with an already explored twin fixes z and every
            // placed node, so it yields the same images
            if tried.iter().any(|&t| self.twins(t, u, &remaining)) {
                continue;
            }
            tried.push(u);
            let rest: Vec<usize> = remaining.iter().copied().filter(|&w| w != u).collect();
            order.push(u);
            self.descend(order, rest, s);
            order.pop();
        }
    }

    /// Output rows `0..order.len()` under the sorted completion `rest`.
    fn forced_prefix(&self, order: &[usize], rest: &[usize]) -> Vec<u32> {
        let mut out = Vec::new();
        for (a, &u) in order.iter().enumerate() {
            out.extend(order[a + 1..].iter().map(|&w| self.z[u][w]));
            out.extend(rest.iter().map(|&w| self.z[u][w]));
        }
        out
    }

    fn twins(&self, u: usize, v: usize, remaining: &[usize]) -> bool {
        remaining
            .iter()
            .all(|&w| w == u || w == v || self.z[u][w] == self.z[v][w])
    }
}
