//! Numerical semigroups and their canonical, anticanonical and trace ideals.
//!
//! Every set here is shift-cofinite: bounded below and containing all
//! integers past some point. [`IntegerIdeal`] stores the finite window
//! before that point.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// `members[z]` for `0 <= z < conductor`.
    members: Vec<bool>,
    conductor: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(Error::Parameter(
                "generators must be a nonempty list of positive integers".into(),
            ));
        }
        if generators.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
            return Err(Error::Parameter(format!(
                "generators {generators:?} have gcd greater than 1"
            )));
        }
        let mut gens: Vec<u64> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let smallest = gens[0];
        let largest = *gens.last().expect("nonempty");
        // the Frobenius number is below max * min
        let bound = (2 * largest * smallest).max(2) as usize;
        let mut sieve = vec![false; bound];
        sieve[0] = true;
        for z in 1..bound {
            sieve[z] = gens
                .iter()
                .any(|&g| g as usize <= z && sieve[z - g as usize]);
        }
        let conductor = sieve.iter().rposition(|&m| !m).map_or(0, |f| f + 1);
        debug_assert!(conductor + smallest as usize <= bound);
        sieve.truncate(conductor);
        Ok(NumericalSemigroup {
            generators: gens,
            members: sieve,
            conductor: conductor as u64,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= 0 && (z as u64 >= self.conductor || self.members[z as usize])
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, `-1` for the semigroup of all nonnegative integers.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&z| !self.members[z as usize])
            .collect()
    }

    /// Members below the conductor.
    pub fn small_elements(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&z| self.members[z as usize])
            .collect()
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    /// Gaps `x` with `x + h ∈ H` for every nonzero `h ∈ H`. Checking the
    /// generators suffices.
    pub fn pseudo_frobenius(&self) -> Vec<u64> {
        self.gaps()
            .into_iter()
            .filter(|&x| {
                self.generators
                    .iter()
                    .all(|&g| self.contains((x + g) as i64))
            })
            .collect()
    }

    pub fn cm_type(&self) -> usize {
        self.pseudo_frobenius().len()
    }

    pub fn as_ideal(&self) -> IntegerIdeal {
        IntegerIdeal::from_predicate(0, self.conductor as i64, |z| self.contains(z))
    }

    /// `K(H) = {z : F - z ∉ H}`.
    pub fn canonical_ideal(&self) -> IntegerIdeal {
        let f = self.frobenius();
        IntegerIdeal::from_predicate(0, f + 1, |z| !self.contains(f - z))
    }

    /// `{z : z + I ⊆ H}`.
    pub fn ideal_dual(&self, ideal: &IntegerIdeal) -> IntegerIdeal {
        ideal.colon_into(&self.as_ideal())
    }

    /// `K(H) + K(H)⁻¹`.
    pub fn trace_ideal(&self) -> IntegerIdeal {
        let k = self.canonical_ideal();
        k.sum(&self.ideal_dual(&k))
    }

    /// `|H \ tr|`.
    pub fn residue(&self) -> usize {
        let tr = self.trace_ideal();
        (0..tr.full_from())
            .filter(|&z| self.contains(z) && !tr.contains(z))
            .count()
    }

    pub fn is_symmetric(&self) -> bool {
        self.canonical_ideal() == self.as_ideal()
    }
}

/// A set `I ⊂ Z` with `I + H ⊆ I` for the ambient semigroup `H`, stored as
/// a window `[min, full_from)` with everything from `full_from` on included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerIdeal {
    start: i64,
    window: Vec<bool>,
}

impl IntegerIdeal {
    /// Members in `[lo, hi)` chosen by `pred`; every `z >= hi` is a member.
    fn from_predicate(lo: i64, hi: i64, pred: impl Fn(i64) -> bool) -> Self {
        let hi = hi.max(lo);
        let window: Vec<bool> = (lo..hi).map(pred).collect();
        IntegerIdeal { start: lo, window }.normalized()
    }

    fn normalized(mut self) -> Self {
        let first = self
            .window
            .iter()
            .position(|&b| b)
            .unwrap_or(self.window.len());
        self.start += first as i64;
        self.window.drain(..first);
        while self.window.last() == Some(&true) {
            self.window.pop();
        }
        self
    }

    pub fn min(&self) -> i64 {
        self.start
    }

    /// Every integer from here on is a member.
    pub fn full_from(&self) -> i64 {
        self.start + self.window.len() as i64
    }

    pub fn contains(&self, z: i64) -> bool {
        if z < self.start {
            false
        } else if z >= self.full_from() {
            true
        } else {
            self.window[(z - self.start) as usize]
        }
    }

    /// Members below [`full_from`](Self::full_from).
    pub fn finite_part(&self) -> Vec<i64> {
        (self.start..self.full_from())
            .filter(|&z| self.contains(z))
            .collect()
    }

    /// `{z : z + self ⊆ target}`.
    pub fn colon_into(&self, target: &IntegerIdeal) -> IntegerIdeal {
        let lo = target.min() - self.min();
        // past this point every translate of self lies in target's full range
        let hi = target.full_from() - self.min();
        IntegerIdeal::from_predicate(lo, hi, |z| {
            (self.min()..self.full_from().max(target.full_from() - z))
                .filter(|&i| self.contains(i))
                .all(|i| target.contains(z + i))
        })
    }

    /// Elementwise sums `{x + y}`.
    pub fn sum(&self, other: &IntegerIdeal) -> IntegerIdeal {
        let lo = self.min() + other.min();
        let hi = (self.full_from() + other.min()).min(self.min() + other.full_from());
        let mut hits = BTreeSet::new();
        for x in self.min()..=hi - other.min() {
            if !self.contains(x) {
                continue;
            }
            for y in other.min()..=hi - x {
                if other.contains(y) {
                    hits.insert(x + y);
                }
            }
        }
        IntegerIdeal::from_predicate(lo, hi, |z| hits.contains(&z))
    }
}

/// `⟨a+1, b(a+1)+1, .., b(a+1)+a⟩`, with type `a` and residue `b`.
pub fn family(a: u64, b: u64) -> Result<NumericalSemigroup> {
    if a < 2 || b < 1 {
        return Err(Error::Parameter(format!(
            "need a >= 2 and b >= 1, got a = {a}, b = {b}"
        )));
    }
    let base = b * (a + 1);
    let mut gens = vec![a + 1];
    gens.extend((1..=a).map(|k| base + k));
    let h = NumericalSemigroup::new(&gens)?;
    let expected: Vec<u64> = (0..b).map(|i| i * (a + 1)).collect();
    if h.conductor() != base || h.small_elements() != expected {
        return Err(Error::CrossCheck(format!(
            "family({a},{b}) has small elements {:?} and conductor {}, expected {expected:?} and {base}",
            h.small_elements(),
            h.conductor()
        )));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn semigroup_examples() {
        let s = h(&[2, 3]);
        assert_eq!((s.gaps(), s.frobenius(), s.conductor()), (vec![1], 1, 2));
        let s = h(&[3, 4, 5]);
        assert_eq!((s.gaps(), s.frobenius(), s.conductor()), (vec![1, 2], 2, 3));
        let s = h(&[3, 7, 8]);
        assert_eq!(s.gaps(), vec![1, 2, 4, 5]);
        assert_eq!((s.frobenius(), s.conductor()), (5, 6));
        assert_eq!(s.small_elements(), vec![0, 3]);
        let s = h(&[1]);
        assert_eq!((s.frobenius(), s.conductor(), s.cm_type()), (-1, 0, 0));
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(NumericalSemigroup::new(&[2, 4]).is_err());
        assert!(NumericalSemigroup::new(&[]).is_err());
        assert!(NumericalSemigroup::new(&[0, 3]).is_err());
    }

    #[test]
    fn pseudo_frobenius_and_type() {
        assert_eq!(h(&[2, 3]).pseudo_frobenius(), vec![1]);
        assert_eq!(h(&[3, 4, 5]).pseudo_frobenius(), vec![1, 2]);
        assert_eq!(h(&[3, 7, 8]).pseudo_frobenius(), vec![4, 5]);
        assert_eq!(h(&[2, 3]).cm_type(), 1);
        assert_eq!(h(&[3, 4, 5]).cm_type(), 2);
        let f = family(5, 3).unwrap();
        assert_eq!(f.generators(), &[6, 19, 20, 21, 22, 23]);
        assert_eq!(f.cm_type(), 5);
    }

    #[test]
    fn canonical_ideal_examples() {
        let s = h(&[2, 3]);
        assert_eq!(s.canonical_ideal(), s.as_ideal());
        let k = h(&[3, 4, 5]).canonical_ideal();
        assert_eq!(
            (k.min(), k.finite_part(), k.full_from()),
            (0, vec![0, 1], 3)
        );
        // F = 5: z with 5 - z a gap or negative
        let k = h(&[3, 7, 8]).canonical_ideal();
        assert_eq!(k.finite_part(), vec![0, 1, 3, 4]);
        assert_eq!(k.full_from(), 6);
    }

    #[test]
    fn dual_examples() {
        let s = h(&[3, 4, 5]);
        assert_eq!(s.ideal_dual(&s.as_ideal()), s.as_ideal());
        let d = s.ideal_dual(&s.canonical_ideal());
        assert_eq!((d.min(), d.full_from()), (3, 3));
        let s = h(&[2, 3]);
        assert_eq!(s.ideal_dual(&s.canonical_ideal()), s.as_ideal());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(h(&[2, 3]).residue(), 0);
        let s = h(&[3, 4, 5]);
        assert_eq!(s.residue(), 1);
        let tr = s.trace_ideal();
        assert_eq!((tr.min(), tr.full_from()), (3, 3));
        assert_eq!(h(&[3, 7, 8]).residue(), 2);
    }

    #[test]
    fn family_examples() {
        assert_eq!(family(2, 1).unwrap().generators(), &[3, 4, 5]);
        assert_eq!(family(2, 2).unwrap().generators(), &[3, 7, 8]);
        let f = family(4, 3).unwrap();
        assert_eq!(f.generators(), &[5, 16, 17, 18, 19]);
        assert_eq!(f.conductor(), 15);
        assert!(family(1, 3).is_err());
        assert!(family(3, 0).is_err());
    }

    #[test]
    fn double_dual_into_the_semigroup_is_not_reflexive() {
        // H:(H:K) = N for <3,4,5>, strictly larger than K = {0,1,3,..}
        let s = h(&[3, 4, 5]);
        let dd = s.ideal_dual(&s.ideal_dual(&s.canonical_ideal()));
        assert_eq!((dd.min(), dd.full_from()), (0, 0));
        assert_ne!(dd, s.canonical_ideal());
        // symmetric semigroups are reflexive
        let s = h(&[3, 5]);
        assert_eq!(
            s.ideal_dual(&s.ideal_dual(&s.canonical_ideal())),
            s.canonical_ideal()
        );
    }

    #[test]
    fn ideal_sum_small() {
        let s = h(&[3, 4, 5]);
        let sum = s.as_ideal().sum(&s.canonical_ideal());
        assert_eq!(sum, s.canonical_ideal());
    }

    fn semigroup_strategy() -> impl Strategy<Value = NumericalSemigroup> {
        prop::collection::vec(2u64..20, 1..5).prop_filter_map("gcd must be 1", |mut g| {
            g.push(g[0] + 1);
            NumericalSemigroup::new(&g).ok()
        })
    }

    proptest! {
        #[test]
        fn semigroup_is_closed_under_addition(s in semigroup_strategy()) {
            let c = s.conductor() as i64;
            for x in 0..=c {
                for y in 0..=c {
                    if s.contains(x) && s.contains(y) {
                        prop_assert!(s.contains(x + y));
                    }
                }
            }
        }

        #[test]
        fn trace_sits_inside_the_semigroup(s in semigroup_strategy()) {
            let tr = s.trace_ideal();
            for z in tr.min()..tr.full_from() + 2 {
                if tr.contains(z) {
                    prop_assert!(s.contains(z));
                }
            }
            let symmetric = s.is_symmetric();
            prop_assert_eq!(s.residue() == 0, symmetric);
            prop_assert_eq!(s.cm_type() == 1, symmetric);
        }

        #[test]
        fn duality_into_the_canonical_ideal_is_reflexive(s in semigroup_strategy()) {
            let k = s.canonical_ideal();
            let h = s.as_ideal();
            let anti = s.ideal_dual(&k);
            for i in [&h, &anti] {
                prop_assert_eq!(&i.colon_into(&k).colon_into(&k), i);
            }
            prop_assert_eq!(h.colon_into(&k), k.clone());
            prop_assert_eq!(k.sum(&h), k);
        }

        #[test]
        fn residue_one_means_trace_is_the_maximal_ideal(s in semigroup_strategy()) {
            if s.residue() == 1 {
                let tr = s.trace_ideal();
                prop_assert!(!tr.contains(0));
                for z in 1..=s.conductor() as i64 + 1 {
                    prop_assert_eq!(tr.contains(z), s.contains(z));
                }
            }
        }
    }
}
