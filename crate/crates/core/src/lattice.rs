//! Finite bounded lattices given by an order matrix, with join/meet tables
//! obtained by least-upper-bound search.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::poset::{OrderViolation, Poset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("order relation is not a partial order: {0}")]
    NotAPartialOrder(#[from] OrderViolation),
    #[error("{a} and {b} have no least upper bound; minimal upper bounds {bounds:?}")]
    NoJoin { a: usize, b: usize, bounds: Vec<usize> },
    #[error("{a} and {b} have no greatest lower bound; maximal lower bounds {bounds:?}")]
    NoMeet { a: usize, b: usize, bounds: Vec<usize> },
    #[error("missing {0} element")]
    BoundViolation(&'static str),
    #[error("reconstruction has {found} elements and is not isomorphic to the {expected}-element source")]
    ReconstructionMismatch { expected: usize, found: usize },
}

impl LatticeError {
    /// The witness pair for a missing join or meet.
    pub fn witness(&self) -> Option<(BoundKind, usize, usize)> {
        match *self {
            LatticeError::NoJoin { a, b, .. } => Some((BoundKind::Upper, a, b)),
            LatticeError::NoMeet { a, b, .. } => Some((BoundKind::Lower, a, b)),
            _ => None,
        }
    }
}

/// A failed lattice identity with the elements instantiating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct BoundedLattice {
    order: Poset,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl BoundedLattice {
    /// Computes every join and meet of `order`, failing with the first pair
    /// lacking a least upper or greatest lower bound.
    pub fn from_order(order: Poset) -> Result<Self, LatticeError> {
        order.check_partial_order()?;
        let zero = order.least().ok_or(LatticeError::BoundViolation("bottom"))?;
        let one = order.greatest().ok_or(LatticeError::BoundViolation("top"))?;
        let n = order.len();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let mut ub = order.up_set(a).clone();
                ub.intersect_with(order.up_set(b));
                let j = extremum(&ub, |x| order.up_set(x)).ok_or_else(|| LatticeError::NoJoin {
                    a,
                    b,
                    bounds: extremes(&ub, |x| order.down_set(x)),
                })?;
                let mut lb = order.down_set(a).clone();
                lb.intersect_with(order.down_set(b));
                let m = extremum(&lb, |x| order.down_set(x)).ok_or_else(|| LatticeError::NoMeet {
                    a,
                    b,
                    bounds: extremes(&lb, |x| order.up_set(x)),
                })?;
                join[a][b] = j;
                join[b][a] = j;
                meet[a][b] = m;
                meet[b][a] = m;
            }
        }
        Ok(Self {
            order,
            join,
            meet,
            zero,
            one,
        })
    }

    /// Subsets ordered by inclusion.
    pub fn from_set_family(sets: &[FixedBitSet]) -> Result<Self, LatticeError> {
        Self::from_order(Poset::from_fn(sets.len(), |i, j| sets[i].is_subset(&sets[j])))
    }

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_order(Poset::chain(n)).expect("chains are lattices")
    }

    /// The powerset of a `k`-element set; element `i` is the bitmask `i`.
    pub fn boolean(k: usize) -> Self {
        Self::from_order(Poset::from_fn(1 << k, |i, j| i & !j == 0)).expect("powersets are lattices")
    }

    /// The diamond: `0`, three atoms `1,2,3`, top `4`.
    pub fn m3() -> Self {
        Self::from_order(Poset::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))
            .expect("M3 is a lattice")
    }

    /// The pentagon: `0 < 1 < 2 < 4` and `0 < 3 < 4`.
    pub fn n5() -> Self {
        Self::from_order(Poset::from_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))
            .expect("N5 is a lattice")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join_table(&self) -> &[Vec<usize>] {
        &self.join
    }

    pub fn meet_table(&self) -> &[Vec<usize>] {
        &self.meet
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Join of all given elements; `0` for none.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    /// Meet of all given elements; `1` for none.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.one, |acc, x| self.meet(acc, x))
    }

    /// Exhaustive check of the tables against the order and of the lattice
    /// identities (commutativity, associativity, absorption, idempotence).
    pub fn check_laws(&self) -> Result<(), LawViolation> {
        let n = self.len();
        let fail = |law, elements: &[usize]| {
            Err(LawViolation {
                law,
                elements: elements.to_vec(),
            })
        };
        for a in 0..n {
            if self.join(a, a) != a || self.meet(a, a) != a {
                return fail("idempotence", &[a]);
            }
            if !self.leq(self.zero, a) || !self.leq(a, self.one) {
                return fail("bounds", &[a]);
            }
            for b in 0..n {
                let (j, m) = (self.join(a, b), self.meet(a, b));
                if j != self.join(b, a) || m != self.meet(b, a) {
                    return fail("commutativity", &[a, b]);
                }
                if !(self.leq(a, j) && self.leq(b, j) && self.leq(m, a) && self.leq(m, b)) {
                    return fail("bound tables", &[a, b]);
                }
                if self.meet(a, j) != a || self.join(a, m) != a {
                    return fail("absorption", &[a, b]);
                }
                if self.leq(a, b) != (j == b) {
                    return fail("order consistency", &[a, b]);
                }
                for c in 0..n {
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                        || self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                    {
                        return fail("associativity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// A triple with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Elements with exactly one lower cover (so `0` is excluded).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.order.lower_covers(x).len() == 1)
            .collect()
    }

    /// Elements with exactly one upper cover (so `1` is excluded).
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.order.upper_covers(x).len() == 1)
            .collect()
    }

    /// Number of edges on a longest chain.
    pub fn length(&self) -> usize {
        self.order.height()
    }

    pub fn is_isomorphic(&self, other: &BoundedLattice) -> bool {
        self.order.is_isomorphic(&other.order)
    }

    /// `x^⊛ = max{a : a ∧ x = 0}`, when that set has a greatest element.
    pub fn pseudo_complement(&self, x: usize) -> Option<usize> {
        let annihilators: Vec<usize> = (0..self.len())
            .filter(|&a| self.meet(a, x) == self.zero)
            .collect();
        annihilators
            .iter()
            .copied()
            .find(|&g| annihilators.iter().all(|&a| self.leq(a, g)))
    }

    /// `x ⊕ y = ((x ∧ y^⊛)^⊛ ∧ (x^⊛ ∧ y)^⊛)^⊛`.
    pub fn xor_term(&self, x: usize, y: usize) -> Option<usize> {
        let pc = |v| self.pseudo_complement(v);
        let left = pc(self.meet(x, pc(y)?))?;
        let right = pc(self.meet(pc(x)?, y))?;
        pc(self.meet(left, right))
    }

    /// The order restricted to `elems`, reindexed.
    pub fn induced_order(&self, elems: &[usize]) -> Poset {
        self.order.induced(elems)
    }
}

/// The unique element `x` of `set` whose `cone(x)` contains all of `set`.
fn extremum<'a>(set: &FixedBitSet, cone: impl Fn(usize) -> &'a FixedBitSet) -> Option<usize> {
    let candidate = set.ones().max_by_key(|&x| cone(x).intersection(set).count())?;
    set.is_subset(cone(candidate)).then_some(candidate)
}

/// Members of `set` with nothing else of `set` in `cone(x)`, i.e. the
/// minimal (resp. maximal) elements.
fn extremes<'a>(set: &FixedBitSet, cone: impl Fn(usize) -> &'a FixedBitSet) -> Vec<usize> {
    set.ones()
        .filter(|&x| cone(x).intersection(set).count() == 1)
        .collect()
}

/// The lattice of down-closed subsets of `poset`, ordered by inclusion.
pub fn birkhoff_reconstruct(poset: &Poset) -> BoundedLattice {
    let sets = down_sets(poset);
    BoundedLattice::from_set_family(&sets).expect("down-sets form a lattice")
}

/// All down-sets, found by breadth-first growth from `∅` adding one minimal
/// element of the complement at a time.
pub fn down_sets(poset: &Poset) -> Vec<FixedBitSet> {
    let n = poset.len();
    let start = FixedBitSet::with_capacity(n);
    let mut seen: HashSet<FixedBitSet> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(set) = queue.pop_front() {
        for x in 0..n {
            if !set.contains(x) && poset.down_set(x).ones().all(|y| y == x || set.contains(y)) {
                let mut next = set.clone();
                next.insert(x);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        out.push(set);
    }
    out
}

/// Join- and meet-irreducibles of a lattice with the relation
/// `b ≺ a ⇔ b ≰ a` between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleContext {
    pub join_irreducibles: Vec<usize>,
    pub meet_irreducibles: Vec<usize>,
    /// `precedes[i][k]`: join-irreducible `i` is not below meet-irreducible `k`.
    pub precedes: Vec<Vec<bool>>,
}

impl IrreducibleContext {
    pub fn from_lattice(l: &BoundedLattice) -> Self {
        let join_irreducibles = l.join_irreducibles();
        let meet_irreducibles = l.meet_irreducibles();
        let precedes = join_irreducibles
            .iter()
            .map(|&b| meet_irreducibles.iter().map(|&a| !l.leq(b, a)).collect())
            .collect();
        Self {
            join_irreducibles,
            meet_irreducibles,
            precedes,
        }
    }
}

/// Rebuilds a lattice from its irreducibles: each join-irreducible `b`
/// contributes the set of meet-irreducibles it is not below; these sets,
/// closed under union and with `∅` added, ordered by inclusion.
pub fn irreducible_reconstruct(ctx: &IrreducibleContext) -> BoundedLattice {
    let m = ctx.meet_irreducibles.len();
    let generators: Vec<FixedBitSet> = ctx
        .precedes
        .iter()
        .map(|row| {
            let mut s = FixedBitSet::with_capacity(m);
            for (k, &p) in row.iter().enumerate() {
                s.set(k, p);
            }
            s
        })
        .collect();
    let empty = FixedBitSet::with_capacity(m);
    let mut seen: HashSet<FixedBitSet> = HashSet::from([empty.clone()]);
    let mut family = vec![empty];
    let mut i = 0;
    while i < family.len() {
        for g in &generators {
            let mut next = family[i].clone();
            next.union_with(g);
            if seen.insert(next.clone()) {
                family.push(next);
            }
        }
        i += 1;
    }
    BoundedLattice::from_set_family(&family).expect("union-closed families with ∅ are lattices")
}

/// Runs both reconstructions and checks each is isomorphic to `l`.
pub fn verify_reconstruction(l: &BoundedLattice) -> Result<(), LatticeError> {
    let ctx = IrreducibleContext::from_lattice(l);
    let from_irreducibles = irreducible_reconstruct(&ctx);
    if !from_irreducibles.is_isomorphic(l) {
        return Err(LatticeError::ReconstructionMismatch {
            expected: l.len(),
            found: from_irreducibles.len(),
        });
    }
    if l.is_distributive() {
        let j = l.induced_order(&ctx.join_irreducibles);
        let down = birkhoff_reconstruct(&j);
        if !down.is_isomorphic(l) {
            return Err(LatticeError::ReconstructionMismatch {
                expected: l.len(),
                found: down.len(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_lattices() {
        // two incomparable maximal elements: no top
        let err = BoundedLattice::from_order(Poset::from_pairs(3, &[(0, 1), (0, 2)])).unwrap_err();
        assert_eq!(err, LatticeError::BoundViolation("top"));
        // bowtie: 0 < a,b < c,d < 1 with a,b having two minimal upper bounds
        let bowtie = Poset::from_pairs(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]);
        let err = BoundedLattice::from_order(bowtie).unwrap_err();
        assert_eq!(err.witness(), Some((BoundKind::Upper, 1, 2)));
        assert!(matches!(err, LatticeError::NoJoin { ref bounds, .. } if bounds == &vec![3, 4]));
        let not_order = Poset::from_fn(2, |_, _| true);
        assert!(matches!(
            BoundedLattice::from_order(not_order),
            Err(LatticeError::NotAPartialOrder(_))
        ));
    }

    #[test]
    fn fixture_lattices_satisfy_laws() {
        for l in [
            BoundedLattice::chain(1),
            BoundedLattice::chain(4),
            BoundedLattice::boolean(3),
            BoundedLattice::m3(),
            BoundedLattice::n5(),
        ] {
            assert_eq!(l.check_laws(), Ok(()));
        }
    }

    #[test]
    fn distributivity() {
        assert!(BoundedLattice::chain(5).is_distributive());
        assert!(BoundedLattice::boolean(3).is_distributive());
        let (x, y, z) = BoundedLattice::m3().distributivity_witness().unwrap();
        let m3 = BoundedLattice::m3();
        assert_ne!(m3.meet(x, m3.join(y, z)), m3.join(m3.meet(x, y), m3.meet(x, z)));
        assert!(!BoundedLattice::n5().is_distributive());
    }

    #[test]
    fn irreducibles_and_length() {
        let c = BoundedLattice::chain(3);
        assert_eq!(c.join_irreducibles(), vec![1, 2]);
        assert_eq!(c.meet_irreducibles(), vec![0, 1]);
        assert_eq!(c.length(), 2);
        let b = BoundedLattice::boolean(2);
        assert_eq!(b.join_irreducibles(), vec![1, 2]);
        assert_eq!(b.meet_irreducibles(), vec![1, 2]);
        assert_eq!(b.length(), 2);
        let one = BoundedLattice::chain(1);
        assert!(one.join_irreducibles().is_empty() && one.meet_irreducibles().is_empty());
        assert_eq!(one.length(), 0);
    }

    #[test]
    fn birkhoff_examples() {
        assert!(birkhoff_reconstruct(&Poset::chain(2)).is_isomorphic(&BoundedLattice::chain(3)));
        assert!(birkhoff_reconstruct(&Poset::antichain(2)).is_isomorphic(&BoundedLattice::boolean(2)));
        assert_eq!(birkhoff_reconstruct(&Poset::antichain(0)).len(), 1);
        assert_eq!(down_sets(&Poset::antichain(3)).len(), 8);
    }

    #[test]
    fn irreducible_reconstruction_examples() {
        for l in [
            BoundedLattice::chain(1),
            BoundedLattice::chain(3),
            BoundedLattice::boolean(2),
            BoundedLattice::boolean(3),
            BoundedLattice::m3(),
            BoundedLattice::n5(),
        ] {
            let r = irreducible_reconstruct(&IrreducibleContext::from_lattice(&l));
            assert!(r.is_isomorphic(&l), "{l:?}");
            assert_eq!(verify_reconstruction(&l), Ok(()));
        }
    }

    #[test]
    fn cover_reading_of_the_relation_loses_the_chain() {
        // collecting join-irreducibles below each meet-irreducible does not
        // rebuild a 3-chain; the `≰` reading does
        let c = BoundedLattice::chain(3);
        let ctx = IrreducibleContext::from_lattice(&c);
        let below = IrreducibleContext {
            precedes: ctx
                .join_irreducibles
                .iter()
                .map(|&b| ctx.meet_irreducibles.iter().map(|&a| c.order().lt(b, a)).collect())
                .collect(),
            ..ctx.clone()
        };
        assert!(!irreducible_reconstruct(&below).is_isomorphic(&c));
        assert!(irreducible_reconstruct(&ctx).is_isomorphic(&c));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(BoundedLattice::chain(3).is_isomorphic(&BoundedLattice::chain(3)));
        assert!(!BoundedLattice::chain(3).is_isomorphic(&BoundedLattice::boolean(2)));
        assert!(!BoundedLattice::boolean(2).is_isomorphic(&BoundedLattice::chain(4)));
        assert!(!BoundedLattice::m3().is_isomorphic(&BoundedLattice::n5()));
    }

    #[test]
    fn pseudo_complements() {
        let c = BoundedLattice::chain(3);
        assert_eq!(c.pseudo_complement(0), Some(2));
        assert_eq!(c.pseudo_complement(1), Some(0));
        assert_eq!(c.pseudo_complement(2), Some(0));
        let b = BoundedLattice::boolean(2);
        assert_eq!(b.pseudo_complement(1), Some(2));
        let m3 = BoundedLattice::m3();
        assert_eq!(m3.pseudo_complement(1), None);
    }

    #[test]
    fn xor_examples() {
        let b = BoundedLattice::boolean(2);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(b.xor_term(x, y), Some(x ^ y));
            }
        }
        let c = BoundedLattice::chain(3);
        assert_eq!(c.xor_term(1, 2), Some(0));
        for x in 0..3 {
            let xx = c.pseudo_complement(c.pseudo_complement(x).unwrap());
            assert_eq!(c.xor_term(x, 0), xx);
        }
        assert_eq!(BoundedLattice::m3().xor_term(1, 2), None);
    }
}
