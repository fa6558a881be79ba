//! Lattice-point model of the stable set ring of a perfect graph.
//!
//! For a perfect graph on `n` vertices the ring `R` is spanned by the
//! monomials `x^a t^q` with `a >= 0` and `sum_{i in C} a_i <= q` for every
//! maximal clique `C`. Shifting both families of inequalities by a threshold
//! `θ` (`a_i >= θ`, `sum_C a_i <= q - θ`) gives the canonical module at
//! `θ = 1` and the anticanonical module at `θ = -1`. The trace of the
//! canonical module is the set of sums `w + w'` with `w` canonical and `w'`
//! anticanonical.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::SizeLimits;

/// `x^exponents t^degree`, with exponents allowed to go negative for
/// elements of fractional ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<i64>,
    pub degree: i64,
}

impl Monomial {
    pub fn new(exponents: Vec<i64>, degree: i64) -> Self {
        Monomial { exponents, degree }
    }

    /// The unit monomial `1`.
    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n], 0)
    }

    /// `(prod_{i in s} x_i) t`.
    pub fn from_stable_set(n: usize, s: VertexSet) -> Self {
        Monomial::new((0..n).map(|i| i64::from(s.contains(i))).collect(), 1)
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exponents.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            self.degree + other.degree,
        )
    }

    pub fn sub(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
            self.degree - other.degree,
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ";{})", self.degree)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Which module of the cone a threshold describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Ring,
    Canonical,
    Anticanonical,
}

impl Region {
    pub fn threshold(self) -> i64 {
        match self {
            Region::Ring => 0,
            Region::Canonical => 1,
            Region::Anticanonical => -1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Region::Ring => "ring",
            Region::Canonical => "canonical module",
            Region::Anticanonical => "anticanonical module",
        }
    }
}

/// The inequalities `a_i >= 0` (indices `0..n`) and `sum_C a_i <= q` (index
/// `n + j` for the `j`-th maximal clique) cutting out the cone over the
/// stable set polytope.
#[derive(Clone, Debug)]
pub struct FacetSystem {
    n: usize,
    cliques: Vec<VertexSet>,
    delta: usize,
    stable_sets: Vec<VertexSet>,
    /// `clique_members[i]` lists the cliques through vertex `i`.
    clique_members: Vec<Vec<usize>>,
}

/// A face of the cone, recorded by the inequalities tight on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub tight: Vec<usize>,
    pub dim: usize,
    /// Indices into [`FacetSystem::stable_sets`] of the polytope vertices on
    /// the face.
    pub vertices: Vec<usize>,
}

impl FacetSystem {
    /// Fails on graphs that are not perfect, or too large to test.
    pub fn new(g: &Graph, limits: &SizeLimits) -> Result<Self> {
        if !g.is_perfect(limits.perfection_vertices)? {
            return Err(Error::NotPerfect);
        }
        if g.n() == 0 {
            return Err(Error::InvalidGraph("the graph has no vertices".into()));
        }
        let cc = g.maximal_cliques();
        let clique_members = (0..g.n())
            .map(|i| {
                (0..cc.maximal_cliques.len())
                    .filter(|&j| cc.maximal_cliques[j].contains(i))
                    .collect()
            })
            .collect();
        Ok(FacetSystem {
            n: g.n(),
            delta: cc.max_clique_size(),
            cliques: cc.maximal_cliques,
            stable_sets: g.stable_sets(),
            clique_members,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    /// Largest clique size.
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn clique_complex_dim(&self) -> i64 {
        self.delta as i64 - 1
    }

    /// Krull dimension of the ring, `n + 1`.
    pub fn ring_dim(&self) -> usize {
        self.n + 1
    }

    pub fn stable_sets(&self) -> &[VertexSet] {
        &self.stable_sets
    }

    /// The degree-1 algebra generators.
    pub fn ring_generators(&self) -> Vec<Monomial> {
        self.stable_sets
            .iter()
            .map(|&s| Monomial::from_stable_set(self.n, s))
            .collect()
    }

    pub fn inequality_count(&self) -> usize {
        self.n + self.cliques.len()
    }

    fn check_len(&self, m: &Monomial) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: m.n(),
            });
        }
        Ok(())
    }

    /// Value of inequality `k` at `m`, measured against threshold `θ`;
    /// nonnegative iff satisfied.
    fn slack(&self, k: usize, m: &Monomial, threshold: i64) -> i64 {
        if k < self.n {
            m.exponents[k] - threshold
        } else {
            let c = self.cliques[k - self.n];
            m.degree - threshold - c.iter().map(|i| m.exponents[i]).sum::<i64>()
        }
    }

    fn satisfies(&self, region: Region, m: &Monomial) -> bool {
        let t = region.threshold();
        (0..self.inequality_count()).all(|k| self.slack(k, m, t) >= 0)
    }

    pub fn contains(&self, region: Region, m: &Monomial) -> Result<bool> {
        self.check_len(m)?;
        Ok(self.satisfies(region, m))
    }

    pub fn in_ring(&self, m: &Monomial) -> Result<bool> {
        self.contains(Region::Ring, m)
    }

    pub fn in_canonical(&self, m: &Monomial) -> Result<bool> {
        self.contains(Region::Canonical, m)
    }

    /// Threshold description of `ω⁻¹`.
    pub fn in_anticanonical(&self, m: &Monomial) -> Result<bool> {
        self.contains(Region::Anticanonical, m)
    }

    /// `m + g ∈ R` for every listed generator `g` of the canonical module.
    pub fn in_anticanonical_by_definition(
        &self,
        m: &Monomial,
        canonical_generators: &[Monomial],
    ) -> Result<bool> {
        self.check_len(m)?;
        Ok(canonical_generators
            .iter()
            .all(|g| self.satisfies(Region::Ring, &m.add(g))))
    }

    /// Smallest degree in which `region` has a lattice point.
    pub fn min_degree(&self, region: Region) -> i64 {
        let t = region.threshold();
        // every a_i = t is optimal, so q >= t + t|C| for every clique
        self.cliques
            .iter()
            .map(|c| t + t * c.len() as i64)
            .max()
            .unwrap_or(0)
    }

    /// Lattice points of `region` in degree `q`, in lexicographic order.
    pub fn points_in_degree(&self, region: Region, q: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut a = vec![0i64; self.n];
        let mut sums = vec![0i64; self.cliques.len()];
        self.walk_degree(region.threshold(), q, 0, &mut a, &mut sums, &mut |a| {
            out.push(Monomial::new(a.to_vec(), q));
        });
        out
    }

    /// Basis monomials of `R_q`.
    pub fn degree_monomials(&self, q: u32) -> Vec<Monomial> {
        self.points_in_degree(Region::Ring, i64::from(q))
    }

    pub fn hilbert_function(&self, q: u32) -> u64 {
        let mut count = 0u64;
        let mut a = vec![0i64; self.n];
        let mut sums = vec![0i64; self.cliques.len()];
        self.walk_degree(0, i64::from(q), 0, &mut a, &mut sums, &mut |_| count += 1);
        count
    }

    fn walk_degree(
        &self,
        t: i64,
        q: i64,
        i: usize,
        a: &mut Vec<i64>,
        sums: &mut Vec<i64>,
        visit: &mut impl FnMut(&[i64]),
    ) {
        if i == self.n {
            visit(a);
            return;
        }
        // later vertices each contribute at least t to their cliques
        let hi = self.clique_members[i]
            .iter()
            .map(|&j| {
                let later = self.cliques[j].iter().filter(|&v| v > i).count() as i64;
                q - t - sums[j] - t * later
            })
            .min()
            .expect("every vertex lies in a maximal clique");
        let mut v = t;
        while v <= hi {
            a[i] = v;
            for &j in &self.clique_members[i] {
                sums[j] += v;
            }
            self.walk_degree(t, q, i + 1, a, sums, visit);
            for &j in &self.clique_members[i] {
                sums[j] -= v;
            }
            v += 1;
        }
    }

    /// Minimal generators of `region` as an `R`-module, scanning at most
    /// `layers` degrees upward from the first nonempty one. The scan stops
    /// once two consecutive degrees contribute nothing new; running out of
    /// layers first is reported as [`Error::Inconclusive`].
    pub fn minimal_generators(&self, region: Region, layers: usize) -> Result<Vec<Monomial>> {
        let ring_gens = self.ring_generators();
        let start = self.min_degree(region);
        let mut gens: Vec<Monomial> = Vec::new();
        let mut quiet = 0;
        for q in start..start + layers as i64 {
            let fresh: Vec<Monomial> = self
                .points_in_degree(region, q)
                .into_iter()
                .filter(|m| ring_gens.iter().all(|g| !self.satisfies(region, &m.sub(g))))
                .collect();
            if fresh.is_empty() {
                if !gens.is_empty() {
                    quiet += 1;
                    if quiet == 2 {
                        return Ok(gens);
                    }
                }
            } else {
                quiet = 0;
                gens.extend(fresh);
            }
        }
        Err(Error::Inconclusive {
            what: region.name(),
            degree: start + layers as i64 - 1,
        })
    }

    /// Default number of degrees scanned by generator searches:
    /// `2 (dim Δ + 3)`.
    pub fn default_layers(&self) -> usize {
        2 * (self.delta + 2)
    }

    /// Some `(w, w')` with `w ∈ ω`, `w' ∈ ω⁻¹` and `w + w' = m`, found by
    /// exhaustive search over a box that contains every such pair.
    pub fn trace_witness(&self, m: &Monomial) -> Result<Option<(Monomial, Monomial)>> {
        self.check_len(m)?;
        if m.exponents.iter().any(|&a| a < 0) {
            return Ok(None);
        }
        let q = m.degree;
        let hi_box: Vec<i64> = m.exponents.iter().map(|&a| a + 1).collect();
        let clique_sum: Vec<i64> = self
            .cliques
            .iter()
            .map(|c| c.iter().map(|i| m.exponents[i]).sum())
            .collect();
        // suffix bounds of the box restricted to each clique
        let suffix = |lo: bool| -> Vec<Vec<i64>> {
            self.cliques
                .iter()
                .map(|c| {
                    let mut s = vec![0i64; self.n + 1];
                    for i in (0..self.n).rev() {
                        let add = if !c.contains(i) {
                            0
                        } else if lo {
                            1
                        } else {
                            hi_box[i]
                        };
                        s[i] = s[i + 1] + add;
                    }
                    s
                })
                .collect()
        };
        let rest_min = suffix(true);
        let rest_max = suffix(false);

        for qw in self.min_degree(Region::Canonical)..=q + 1 + self.n as i64 {
            let lo: Vec<i64> = clique_sum.iter().map(|s| s - q - 1 + qw).collect();
            let hi = qw - 1;
            let mut w = vec![0i64; self.n];
            let mut sums = vec![0i64; self.cliques.len()];
            let search = BoxSearch {
                fs: self,
                hi_box: &hi_box,
                lo: &lo,
                hi,
                rest_min: &rest_min,
                rest_max: &rest_max,
            };
            if search.run(0, &mut w, &mut sums) {
                let w = Monomial::new(w, qw);
                let w_dual = m.sub(&w);
                return Ok(Some((w, w_dual)));
            }
        }
        Ok(None)
    }

    /// Trace membership by exhaustive decomposition search.
    pub fn in_trace(&self, m: &Monomial) -> Result<bool> {
        Ok(self.trace_witness(m)?.is_some())
    }

    /// Minimal generators of `tr(ω)`, from pairwise sums of the minimal
    /// generators of `ω` and `ω⁻¹`.
    pub fn trace_ideal(&self, layers: usize) -> Result<TraceIdeal> {
        let omega = self.minimal_generators(Region::Canonical, layers)?;
        let anti = self.minimal_generators(Region::Anticanonical, layers)?;
        let sums: BTreeSet<Monomial> = omega
            .iter()
            .flat_map(|w| anti.iter().map(move |v| w.add(v)))
            .collect();
        let sums: Vec<Monomial> = sums.into_iter().collect();
        let mut generators: Vec<Monomial> = sums
            .iter()
            .filter(|s| {
                !sums
                    .iter()
                    .any(|t| t != *s && self.satisfies(Region::Ring, &s.sub(t)))
            })
            .cloned()
            .collect();
        generators.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.cmp(b)));
        Ok(TraceIdeal {
            generators,
            canonical_generators: omega.len(),
            anticanonical_generators: anti.len(),
        })
    }

    /// All nonempty faces of the cone, deduplicated by the polytope vertices
    /// they contain, sorted by dimension then tight set.
    pub fn cone_faces(&self, limits: &SizeLimits) -> Result<Vec<Face>> {
        if self.ring_dim() > limits.face_dimension {
            return Err(Error::SizeLimit {
                what: "face enumeration (ring dimension)",
                size: self.ring_dim(),
                limit: limits.face_dimension,
            });
        }
        let points = self.ring_generators();
        let words = points.len().div_ceil(64);
        let facet_sets: Vec<Vec<u64>> = (0..self.inequality_count())
            .map(|k| {
                let mut bits = vec![0u64; words];
                for (p, m) in points.iter().enumerate() {
                    if self.slack(k, m, 0) == 0 {
                        bits[p / 64] |= 1 << (p % 64);
                    }
                }
                bits
            })
            .collect();

        let mut full = vec![0u64; words];
        for p in 0..points.len() {
            full[p / 64] |= 1 << (p % 64);
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(full.clone());
        queue.push_back(full);
        while let Some(face) = queue.pop_front() {
            for facet in &facet_sets {
                let meet: Vec<u64> = face.iter().zip(facet).map(|(a, b)| a & b).collect();
                if seen.insert(meet.clone()) {
                    queue.push_back(meet);
                }
            }
        }

        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|bits| {
                let vertices: Vec<usize> = (0..points.len())
                    .filter(|&p| bits[p / 64] >> (p % 64) & 1 == 1)
                    .collect();
                let tight = (0..self.inequality_count())
                    .filter(|&k| vertices.iter().all(|&p| self.slack(k, &points[p], 0) == 0))
                    .collect();
                let rows: Vec<Vec<i64>> = vertices
                    .iter()
                    .map(|&p| {
                        let mut r = points[p].exponents.clone();
                        r.push(points[p].degree);
                        r
                    })
                    .collect();
                Face {
                    tight,
                    dim: rank(rows),
                    vertices,
                }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| b.tight.cmp(&a.tight)));
        Ok(faces)
    }

    /// Whether the ring point `m` satisfies every equality defining `face`.
    pub fn on_face(&self, face: &Face, m: &Monomial) -> bool {
        face.tight.iter().all(|&k| self.slack(k, m, 0) == 0)
    }

    /// Lowest degree carrying a canonical-module monomial, found by scanning
    /// upward from degree 0.
    pub fn min_canonical_degree_by_scan(&self) -> i64 {
        (0..)
            .find(|&q| !self.points_in_degree(Region::Canonical, q).is_empty())
            .expect("the interior of a full-dimensional cone has lattice points")
    }
}

struct BoxSearch<'a> {
    fs: &'a FacetSystem,
    hi_box: &'a [i64],
    lo: &'a [i64],
    hi: i64,
    rest_min: &'a [Vec<i64>],
    rest_max: &'a [Vec<i64>],
}

impl BoxSearch<'_> {
    fn run(&self, i: usize, w: &mut Vec<i64>, sums: &mut Vec<i64>) -> bool {
        let fs = self.fs;
        if i == fs.n {
            return (0..fs.cliques.len()).all(|j| self.lo[j] <= sums[j] && sums[j] <= self.hi);
        }
        for v in 1..=self.hi_box[i] {
            w[i] = v;
            for &j in &fs.clique_members[i] {
                sums[j] += v;
            }
            let feasible = fs.clique_members[i].iter().all(|&j| {
                sums[j] + self.rest_min[j][i + 1] <= self.hi
                    && sums[j] + self.rest_max[j][i + 1] >= self.lo[j]
            });
            let found = feasible && self.run(i + 1, w, sums);
            for &j in &fs.clique_members[i] {
                sums[j] -= v;
            }
            if found {
                return true;
            }
        }
        false
    }
}

/// Rank over the rationals by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let f = rows[i][c];
            if f == 0 {
                continue;
            }
            let pivot = rows[r][c];
            let (head, tail) = rows.split_at_mut(i);
            let row = &mut tail[0];
            for (x, y) in row.iter_mut().zip(&head[r]) {
                *x = *x * pivot - y * f;
            }
            let g = row.iter().fold(0i64, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Minimal monomial generators of the trace of the canonical module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceIdeal {
    pub generators: Vec<Monomial>,
    pub canonical_generators: usize,
    pub anticanonical_generators: usize,
}

impl TraceIdeal {
    /// `tr(ω) = R`.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, fs: &FacetSystem, m: &Monomial) -> bool {
        self.generators
            .iter()
            .any(|g| fs.satisfies(Region::Ring, &m.sub(g)))
    }

    /// Whether some generator lies on `face`.
    pub fn meets(&self, fs: &FacetSystem, face: &Face) -> bool {
        self.generators.iter().any(|g| fs.on_face(face, g))
    }

    /// True iff the only face prime containing the trace is the maximal
    /// ideal. The unit ideal counts as primary.
    pub fn is_m_primary(&self, fs: &FacetSystem, faces: &[Face]) -> bool {
        self.is_unit()
            || faces
                .iter()
                .filter(|f| f.dim >= 1)
                .all(|f| self.meets(fs, f))
    }

    pub fn height(&self, fs: &FacetSystem, faces: &[Face]) -> TraceHeight {
        if self.is_unit() {
            return TraceHeight::Unit;
        }
        let widest_missed = faces
            .iter()
            .filter(|f| !self.meets(fs, f))
            .map(|f| f.dim)
            .max()
            .expect("the origin face misses a proper trace ideal");
        TraceHeight::Height(fs.ring_dim() - widest_missed)
    }
}

/// Height of the trace ideal, or `Unit` when it is the whole ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceHeight {
    Unit,
    Height(usize),
}

impl Serialize for TraceHeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TraceHeight::Unit => s.serialize_str("unit"),
            TraceHeight::Height(h) => s.serialize_u64(*h as u64),
        }
    }
}

impl fmt::Display for TraceHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceHeight::Unit => write!(f, "unit"),
            TraceHeight::Height(h) => write!(f, "{h}"),
        }
    }
}
