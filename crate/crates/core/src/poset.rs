//! Finite posets stored as a transitive-closure bitmatrix.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `less[i]` has bit `j` set iff `i < j`.
    less: Vec<u64>,
}

/// On-disk poset description: element labels and generating relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolytopeKind {
    Order,
    Chain,
}

/// Five elements `a, b < x < y, z` with `a ‖ b` and `y ‖ z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XWitness {
    pub a: usize,
    pub b: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl Poset {
    /// Builds the order generated by `relations` (0-based `(smaller, larger)`
    /// pairs). Any generating set is accepted; the closure is stored.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::InvalidPoset(format!(
                "{n} elements exceeds the maximum of {MAX_VERTICES}"
            )));
        }
        let distinct: HashSet<&str> = labels.iter().map(String::as_str).collect();
        if distinct.len() != n {
            return Err(Error::InvalidPoset("duplicate element label".into()));
        }
        let mut less = vec![0u64; n];
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::InvalidPoset(format!(
                    "relation ({i}, {j}) out of range"
                )));
            }
            less[i] |= 1 << j;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if less[i] >> k & 1 == 1 {
                    less[i] |= less[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i] >> i & 1 == 1) {
            return Err(Error::InvalidPoset(format!(
                "relations contain a cycle through {}",
                labels[i]
            )));
        }
        Ok(Poset { labels, less })
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        let index = |l: &String| {
            file.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| Error::InvalidPoset(format!("unknown element {l:?}")))
        };
        let relations = file
            .covers
            .iter()
            .map(|[a, b]| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_relations(file.elements.clone(), &relations)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Poset::from_file(&file)
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.labels.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(i, j)| [self.labels[i].clone(), self.labels[j].clone()])
                .collect(),
        }
    }

    /// `0 < 1 < .. < k-1`, labeled `"1".."k"`.
    pub fn chain(k: usize) -> Self {
        let rel: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::from_relations(numeric_labels(k), &rel).expect("chain is a valid order")
    }

    pub fn antichain(k: usize) -> Self {
        Poset::from_relations(numeric_labels(k), &[]).expect("antichain is a valid order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_less(&self, i: usize, j: usize) -> bool {
        self.less[i] >> j & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.is_less(i, j) || self.is_less(j, i)
    }

    pub fn above(&self, i: usize) -> VertexSet {
        VertexSet::from_bits(self.less[i])
    }

    pub fn below(&self, j: usize) -> VertexSet {
        (0..self.len()).filter(|&i| self.is_less(i, j)).collect()
    }

    /// The transitive reduction, as 0-based `(lower, upper)` pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.above(i).iter() {
                if !self.above(i).iter().any(|k| self.is_less(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.above(i).iter().map(move |j| (i, j)))
            .collect()
    }

    /// `self` followed by `other` with no relations between them. Labels of
    /// `other` that collide with `self` get primes appended.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        let (labels, offset) = self.merged_labels(other);
        let mut rel = self.relations();
        rel.extend(
            other
                .relations()
                .into_iter()
                .map(|(i, j)| (i + offset, j + offset)),
        );
        Poset::from_relations(labels, &rel)
    }

    /// Every element of `self` below every element of `other`.
    pub fn ordinal_sum(&self, other: &Poset) -> Result<Poset> {
        let (labels, offset) = self.merged_labels(other);
        let mut rel = self.relations();
        rel.extend(
            other
                .relations()
                .into_iter()
                .map(|(i, j)| (i + offset, j + offset)),
        );
        for i in 0..self.len() {
            for j in 0..other.len() {
                rel.push((i, j + offset));
            }
        }
        Poset::from_relations(labels, &rel)
    }

    fn merged_labels(&self, other: &Poset) -> (Vec<String>, usize) {
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        (labels, self.len())
    }

    /// Adjoins a new minimum element, placed first.
    pub fn with_minimum(&self, label: &str) -> Result<Poset> {
        let bottom = Poset::from_relations(vec![label.to_string()], &[])?;
        bottom.ordinal_sum(self)
    }

    /// Graph on the elements (in list order) joining comparable pairs.
    pub fn comparability_graph(&self) -> Graph {
        let edges: Vec<_> = self.relations();
        Graph::new(self.len(), &edges).expect("strict order has no loops or repeats")
    }

    pub fn is_antichain(&self, s: VertexSet) -> bool {
        s.iter().all(|i| self.above(i).intersection(s).is_empty())
    }

    /// All antichains including the empty one, by size then lexicographically.
    pub fn antichains(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = (0..=VertexSet::full(self.len()).bits())
            .map(VertexSet::from_bits)
            .filter(|&s| self.is_antichain(s))
            .collect();
        out.sort_by(|a, b| a.shortlex_cmp(*b));
        out
    }

    pub fn x_subposet(&self) -> Option<XWitness> {
        let n = self.len();
        let incomparable_pair = |s: VertexSet| {
            s.iter().find_map(|u| {
                s.iter()
                    .find(|&v| v > u && !self.comparable(u, v))
                    .map(|v| (u, v))
            })
        };
        (0..n).find_map(|x| {
            let (a, b) = incomparable_pair(self.below(x))?;
            let (y, z) = incomparable_pair(self.above(x))?;
            Some(XWitness { a, b, x, y, z })
        })
    }

    pub fn has_x_subposet(&self) -> bool {
        self.x_subposet().is_some()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.below(j).is_empty())
            .collect()
    }

    /// Maximal chains, found by depth-first search along covers from the
    /// minimal elements; each chain is listed bottom-up.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let covers = self.covers();
        let mut out = Vec::new();
        for m in self.minimal_elements() {
            let mut stack = vec![m];
            self.extend_chain(&covers, &mut stack, &mut out);
        }
        out
    }

    fn extend_chain(
        &self,
        covers: &[(usize, usize)],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let top = *stack.last().expect("chain is nonempty");
        let mut extended = false;
        for &(_, up) in covers.iter().filter(|&&(lo, _)| lo == top) {
            extended = true;
            stack.push(up);
            self.extend_chain(covers, stack, out);
            stack.pop();
        }
        if !extended {
            out.push(stack.clone());
        }
    }

    /// A linear extension: elements sorted by the number of elements below.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&j| (self.below(j).len(), j));
        order
    }

    /// Lattice points in the `q`-th dilate of the order or chain polytope.
    pub fn polytope_point_count(&self, kind: PolytopeKind, q: u64) -> u64 {
        let order = self.linear_extension();
        let mut values = vec![0u64; self.len()];
        match kind {
            PolytopeKind::Order => self.count_order(&order, 0, q, &mut values),
            PolytopeKind::Chain => {
                let chains = self.maximal_chains();
                let mut chain_sums = vec![0u64; chains.len()];
                let membership: Vec<Vec<usize>> = (0..self.len())
                    .map(|e| {
                        (0..chains.len())
                            .filter(|&c| chains[c].contains(&e))
                            .collect()
                    })
                    .collect();
                count_chain(&order, &membership, 0, q, &mut chain_sums)
            }
        }
    }

    fn count_order(&self, order: &[usize], k: usize, q: u64, values: &mut [u64]) -> u64 {
        if k == order.len() {
            return 1;
        }
        let e = order[k];
        let lo = self.below(e).iter().map(|d| values[d]).max().unwrap_or(0);
        let mut total = 0;
        for y in lo..=q {
            values[e] = y;
            total += self.count_order(order, k + 1, q, values);
        }
        total
    }
}

fn count_chain(
    order: &[usize],
    membership: &[Vec<usize>],
    k: usize,
    q: u64,
    sums: &mut [u64],
) -> u64 {
    if k == order.len() {
        return 1;
    }
    let e = order[k];
    let used = membership[e].iter().map(|&c| sums[c]).max().unwrap_or(0);
    let mut total = 0;
    for y in 0..=q - used {
        for &c in &membership[e] {
            sums[c] += y;
        }
        total += count_chain(order, membership, k + 1, q, sums);
        for &c in &membership[e] {
            sums[c] -= y;
        }
    }
    total
}

/// The poset `P₁ ⊕ P̄₂` with `|P| = b - 1`: a chain of `b - a - 1` elements
/// below `P̄₂`, where `P̄₂` is a singleton `p` and a chain `c1 < .. < c(a-2)`
/// with a common minimum `m` adjoined.
pub fn hmp_poset(a: usize, b: usize) -> Result<Poset> {
    if a < 4 || a >= b {
        return Err(Error::Parameter(format!(
            "need 4 <= a < b, got a = {a}, b = {b}"
        )));
    }
    let lower_len = b - a - 1;
    let lower_labels: Vec<String> = (1..=lower_len).map(|i| format!("z{i}")).collect();
    let lower_rel: Vec<_> = (1..lower_len).map(|i| (i - 1, i)).collect();
    let lower = Poset::from_relations(lower_labels, &lower_rel)?;

    let chain_len = a - 2;
    let mut top_labels = vec!["p".to_string()];
    top_labels.extend((1..=chain_len).map(|i| format!("c{i}")));
    let top_rel: Vec<_> = (2..=chain_len).map(|i| (i - 1, i)).collect();
    let top = Poset::from_relations(top_labels, &top_rel)?;

    lower.ordinal_sum(&top.with_minimum("m")?)
}

/// One representative per isomorphism class of posets on `n` elements.
pub fn enumerate_posets(n: usize) -> Vec<Poset> {
    assert!(
        n <= 6,
        "exhaustive poset enumeration is limited to 6 elements"
    );
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // every poset has a natural labeling, so upper-triangular relations suffice
    for mask in 0..(1u64 << pairs.len()) {
        let rel: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let p =
            Poset::from_relations(numeric_labels(n), &rel).expect("upper triangular is acyclic");
        if p.relations().len() != rel.len() {
            continue; // not transitively closed
        }
        if seen.insert(p.canonical_key()) {
            out.push(p);
        }
    }
    out
}

impl Poset {
    fn canonical_key(&self) -> Vec<u64> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u64>> = None;
        heap_permutations(&mut perm, n, &mut |p| {
            let key: Vec<u64> = (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| self.is_less(p[i], p[j]))
                        .fold(0u64, |acc, j| acc | 1 << j)
                })
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap_or_default()
    }
}

fn heap_permutations(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(p);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(p, k - 1, f);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap_permutations(p, k - 1, f);
}
