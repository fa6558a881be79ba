//! Finite simple graphs on at most 64 vertices.
//!
//! Vertices are 0-based indices in the API. The JSON file format and every
//! human-facing report use 1-based labels; [`VertexSet::labels`] and
//! [`Graph::edge_labels`] perform that shift.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertices stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Lexicographic comparison of the sorted vertex lists.
    pub fn lex_cmp(self, other: VertexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Size first, then lexicographic.
    pub fn shortlex_cmp(self, other: VertexSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.lex_cmp(other))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A finite simple graph with adjacency bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_labels())
            .finish()
    }
}

/// On-disk graph description with 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// The clique complex of a graph, recorded by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueComplex {
    /// Inclusion-maximal cliques in lexicographic order.
    pub maximal_cliques: Vec<VertexSet>,
    /// Largest clique size minus one; `-1` for the graph on no vertices.
    pub dim: i64,
}

impl CliqueComplex {
    pub fn max_clique_size(&self) -> usize {
        (self.dim + 1) as usize
    }

    pub fn is_pure(&self) -> bool {
        self.maximal_cliques
            .windows(2)
            .all(|w| w[0].len() == w[1].len())
    }
}

/// A connected component, relabeled `0..k` in increasing order of the
/// original vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// `vertices[i]` is the original index of the component's vertex `i`.
    pub vertices: Vec<usize>,
    pub dim: i64,
}

impl Graph {
    /// Builds a graph from 0-based edges. Loops, out-of-range endpoints and
    /// repeated pairs (in either orientation) are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the maximum of {MAX_VERTICES}"
            )));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge [{}, {}] has an endpoint outside 1..{n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge [{}, {}]",
                    u + 1,
                    v + 1
                )));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph from 1-based edge labels.
    pub fn from_labels(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let shifted = edges
            .iter()
            .map(|&(u, v)| {
                if u == 0 || v == 0 {
                    Err(Error::InvalidGraph("vertex labels start at 1".into()))
                } else {
                    Ok((u - 1, v - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::new(n, &shifted)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_labels(file.n, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::from_file(&file)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.n,
            edges: self
                .edge_labels()
                .into_iter()
                .map(|(u, v)| [u, v])
                .collect(),
        }
    }

    fn from_adjacency(n: usize, adj: Vec<u64>) -> Self {
        Graph { n, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_adjacency(n, vec![0; n])
    }

    pub fn complete(n: usize) -> Self {
        let full = VertexSet::full(n).bits();
        Graph::from_adjacency(n, (0..n).map(|v| full & !(1 << v)).collect())
    }

    /// The path `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, &edges).expect("cycle edges are valid")
    }

    /// Triangle `{0,1,2}` with the pendant edge `{2,3}`.
    pub fn paw() -> Self {
        Graph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).expect("paw edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, 0-based, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                VertexSet(self.adj[u])
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn edge_labels(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (u + 1, v + 1))
            .collect()
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.neighbors(v)))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).bits();
        Graph::from_adjacency(
            self.n,
            (0..self.n)
                .map(|v| full & !self.adj[v] & !(1 << v))
                .collect(),
        )
    }

    /// The subgraph induced on `s`, relabeled in increasing vertex order.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let verts: Vec<usize> = s.iter().collect();
        let adj = verts
            .iter()
            .map(|&u| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.adjacent(u, v))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Graph::from_adjacency(verts.len(), adj)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the maximum of {MAX_VERTICES}"
            )));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a << self.n));
        Ok(Graph::from_adjacency(n, adj))
    }

    /// Inclusion-maximal cliques, lexicographically ordered. An isolated
    /// vertex contributes its singleton.
    pub fn maximal_cliques(&self) -> CliqueComplex {
        let mut out = Vec::new();
        self.bron_kerbosch(
            VertexSet::EMPTY,
            self.vertices(),
            VertexSet::EMPTY,
            &mut out,
        );
        out.sort_by(|a, b| a.lex_cmp(*b));
        let dim = out.iter().map(|c| c.len() as i64).max().unwrap_or(0) - 1;
        CliqueComplex {
            maximal_cliques: out,
            dim,
        }
    }

    fn bron_kerbosch(
        &self,
        r: VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() {
            if x.is_empty() && !r.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| p.intersection(self.neighbors(u)).len())
            .expect("p is nonempty");
        for v in p.difference(self.neighbors(pivot)).iter() {
            let nv = self.neighbors(v);
            self.bron_kerbosch(r.with(v), p.intersection(nv), x.intersection(nv), out);
            p = p.without(v);
            x = x.with(v);
        }
    }

    pub fn clique_number(&self) -> usize {
        self.maximal_cliques()
            .maximal_cliques
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.maximal_cliques().is_pure()
    }

    /// Connected components ordered by clique-complex dimension, largest
    /// first; ties go to the component holding the smaller vertex.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut seen = VertexSet::EMPTY;
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.neighbors(v));
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            seen = seen.union(comp);
            let graph = self.induced(comp);
            let dim = graph.maximal_cliques().dim;
            comps.push(Component {
                graph,
                vertices: comp.iter().collect(),
                dim,
            });
        }
        // sort_by is stable, so ties keep discovery (smallest-vertex) order
        comps.sort_by_key(|c| std::cmp::Reverse(c.dim));
        comps
    }

    /// Every stable set including the empty one, ordered by size then
    /// lexicographically.
    pub fn stable_sets(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.extend_independent(0, VertexSet::EMPTY, VertexSet::EMPTY, &mut out);
        out.sort_by(|a, b| a.shortlex_cmp(*b));
        out
    }

    fn extend_independent(
        &self,
        from: usize,
        current: VertexSet,
        blocked: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        out.push(current);
        for v in from..self.n {
            if !blocked.contains(v) {
                self.extend_independent(
                    v + 1,
                    current.with(v),
                    blocked.union(self.neighbors(v)),
                    out,
                );
            }
        }
    }

    /// Every clique including the empty one, ordered by size then
    /// lexicographically.
    pub fn cliques(&self) -> Vec<VertexSet> {
        self.complement().stable_sets()
    }

    /// Smallest `k` admitting a proper `k`-colouring.
    pub fn chromatic_number(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let mut k = self.clique_number().max(1);
        loop {
            let mut colours = vec![usize::MAX; self.n];
            if self.colour_with(0, k, 0, &mut colours) {
                return k;
            }
            k += 1;
        }
    }

    fn colour_with(&self, v: usize, k: usize, used: usize, colours: &mut [usize]) -> bool {
        if v == self.n {
            return true;
        }
        // new colours are introduced in order to skip relabelled duplicates
        for c in 0..k.min(used + 1) {
            if VertexSet(self.adj[v]).iter().all(|u| colours[u] != c) {
                colours[v] = c;
                if self.colour_with(v + 1, k, used.max(c + 1), colours) {
                    return true;
                }
                colours[v] = usize::MAX;
            }
        }
        false
    }

    /// Perfection by exhaustive colouring of every induced subgraph, checked
    /// against the odd-hole/odd-antihole characterisation.
    pub fn is_perfect(&self, vertex_limit: usize) -> Result<bool> {
        if self.n > vertex_limit {
            return Err(Error::SizeLimit {
                what: "perfection test",
                size: self.n,
                limit: vertex_limit,
            });
        }
        let by_colouring = self.is_perfect_by_colouring();
        let by_holes = self.is_berge();
        if by_colouring != by_holes {
            return Err(Error::CrossCheck(format!(
                "perfection by colouring ({by_colouring}) disagrees with odd-hole test ({by_holes}) on {self:?}"
            )));
        }
        Ok(by_colouring)
    }

    pub fn is_perfect_by_colouring(&self) -> bool {
        (1..=VertexSet::full(self.n).bits()).all(|bits| {
            let h = self.induced(VertexSet(bits));
            h.chromatic_number() == h.clique_number()
        })
    }

    /// No induced odd cycle of length at least five in the graph or its
    /// complement.
    pub fn is_berge(&self) -> bool {
        self.odd_hole().is_none() && self.complement().odd_hole().is_none()
    }

    /// Some induced odd cycle of length at least five, if one exists.
    pub fn odd_hole(&self) -> Option<VertexSet> {
        (0..=VertexSet::full(self.n).bits())
            .map(VertexSet)
            .filter(|s| s.len() >= 5 && s.len() % 2 == 1)
            .find(|&s| self.is_induced_cycle(s))
    }

    fn is_induced_cycle(&self, s: VertexSet) -> bool {
        if !s
            .iter()
            .all(|v| self.neighbors(v).intersection(s).len() == 2)
        {
            return false;
        }
        let start = s.first().expect("nonempty");
        let mut reached = VertexSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.neighbors(v).intersection(s));
            }
            frontier = next.difference(reached);
            reached = reached.union(frontier);
        }
        reached == s
    }

    /// Edge bitmask over the pairs `(0,1), (0,2), .., (n-2,n-1)`.
    fn edge_mask(&self) -> u64 {
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    fn from_edge_mask(n: usize, mask: u64) -> Graph {
        let mut adj = vec![0u64; n];
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                bit += 1;
            }
        }
        Graph::from_adjacency(n, adj)
    }

    /// The isomorphism-invariant form: the relabeling with the smallest edge
    /// mask. Exponential in `n`; meant for `n <= 8`.
    pub fn canonical_form(&self) -> Graph {
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut mask = 0u64;
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if self.adjacent(p[u], p[v]) {
                        mask |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            best = best.min(mask);
        });
        Graph::from_edge_mask(n, if n == 0 { 0 } else { best })
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// each in canonical form, ordered by edge mask.
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n <= 8,
        "exhaustive graph enumeration is limited to 8 vertices"
    );
    let pairs = n * n.saturating_sub(1) / 2;
    let mut reps = Vec::new();
    for mask in 0..(1u64 << pairs) {
        let g = Graph::from_edge_mask(n, mask);
        if g.canonical_form().edge_mask() == mask {
            reps.push(g);
        }
    }
    reps
}
