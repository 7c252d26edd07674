//! Maximal antichains of a finite poset and the order `⋖` between them.
//!
//! Maximal antichains are the maximal independent sets of the comparability
//! graph, i.e. the maximal cliques of the incomparability graph, which are
//! enumerated with Bron–Kerbosch and Tomita pivoting.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::lattice::{BoundedLattice, LatticeError};
use crate::poset::Poset;
use crate::quotient::QuotientPoset;

/// A set of poset elements kept as a sorted, duplicate-free index list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Antichain(Vec<usize>);

impl Antichain {
    pub fn new(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self(elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Antichain) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Antichain) -> Antichain {
        Antichain(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub fn to_bitset(&self, universe: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(universe);
        for &x in &self.0 {
            b.insert(x);
        }
        b
    }
}

/// All maximal antichains in canonical (lexicographic) order.
pub fn maximal_antichains(poset: &Poset) -> Vec<Antichain> {
    let all: Vec<usize> = (0..poset.len()).collect();
    maximal_antichains_within(poset, &all)
}

/// Maximal antichains of the subposet induced on `elems`, expressed in the
/// indices of `poset`.
pub fn maximal_antichains_within(poset: &Poset, elems: &[usize]) -> Vec<Antichain> {
    let n = poset.len();
    let mut candidates = FixedBitSet::with_capacity(n);
    for &e in elems {
        candidates.insert(e);
    }
    let adjacency: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut row = FixedBitSet::with_capacity(n);
            if candidates.contains(v) {
                for w in candidates.ones() {
                    if !poset.comparable(v, w) {
                        row.insert(w);
                    }
                }
            }
            row
        })
        .collect();
    let mut out = Vec::new();
    if candidates.is_clear() {
        out.push(Antichain::new(Vec::new()));
        return out;
    }
    let mut current = Vec::new();
    bron_kerbosch(
        &adjacency,
        &mut current,
        candidates,
        FixedBitSet::with_capacity(n),
        &mut out,
    );
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    current: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Antichain>,
) {
    if p.is_clear() {
        if x.is_clear() {
            out.push(Antichain::new(current.clone()));
        }
        return;
    }
    let pivot = p
        .union(&x)
        .max_by_key(|&u| adj[u].intersection(&p).count())
        .expect("p is nonempty");
    let branch: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in branch {
        let mut p_next = p.clone();
        p_next.intersect_with(&adj[v]);
        let mut x_next = x.clone();
        x_next.intersect_with(&adj[v]);
        current.push(v);
        bron_kerbosch(adj, current, p_next, x_next, out);
        current.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// `α ⋖ β`: every element of `α` lies below some element of `β`.
pub fn ac_leq(alpha: &Antichain, beta: &Antichain, poset: &Poset) -> bool {
    alpha
        .elements()
        .iter()
        .all(|&a| beta.elements().iter().any(|&b| poset.leq(a, b)))
}

/// Maximal antichains of largest cardinality.
pub fn maximum_sized_antichains(poset: &Poset) -> Vec<Antichain> {
    let all = maximal_antichains(poset);
    let width = all.iter().map(Antichain::len).max().unwrap_or(0);
    all.into_iter().filter(|a| a.len() == width).collect()
}

/// A family of antichains with `⋖` turned into a bounded lattice.
#[derive(Debug, Clone)]
pub struct AntichainLattice {
    antichains: Vec<Antichain>,
    lattice: BoundedLattice,
}

impl AntichainLattice {
    /// Orders `antichains` by `⋖` and computes all joins and meets.
    pub fn new(poset: &Poset, antichains: Vec<Antichain>) -> Result<Self, LatticeError> {
        let order = Poset::from_fn(antichains.len(), |i, j| {
            ac_leq(&antichains[i], &antichains[j], poset)
        });
        let lattice = BoundedLattice::from_order(order)?;
        Ok(Self {
            antichains,
            lattice,
        })
    }

    pub fn antichains(&self) -> &[Antichain] {
        &self.antichains
    }

    pub fn antichain(&self, i: usize) -> &Antichain {
        &self.antichains[i]
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    pub fn index_of(&self, a: &Antichain) -> Option<usize> {
        self.antichains.binary_search(a).ok()
    }

    pub fn len(&self) -> usize {
        self.antichains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.antichains.is_empty()
    }
}

/// All maximal antichains of the poset, ordered by `⋖`.
pub fn build_ac_lattice(poset: &Poset) -> Result<AntichainLattice, LatticeError> {
    AntichainLattice::new(poset, maximal_antichains(poset))
}

/// Maximum-sized antichains with the induced `⋖` order.
pub fn build_acm_lattice(poset: &Poset) -> Result<AntichainLattice, LatticeError> {
    AntichainLattice::new(poset, maximum_sized_antichains(poset))
}

/// The partial operation `L`: replace each object by the class of its lower
/// approximation. Undefined when the image is not a maximal antichain.
pub fn lower_shift(alpha: &Antichain, q: &QuotientPoset) -> Option<Antichain> {
    let image = Antichain::new(alpha.elements().iter().map(|&a| q.lower_class(a)).collect());
    q.order()
        .is_maximal_antichain(image.elements())
        .then_some(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quotient::build_quotient;

    /// Brute force: every subset that is a maximal antichain.
    fn brute_force(poset: &Poset) -> Vec<Antichain> {
        let n = poset.len();
        let mut out: Vec<Antichain> = (0u32..(1 << n))
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|s| poset.is_maximal_antichain(s))
            .map(Antichain::new)
            .collect();
        out.sort();
        out
    }

    fn vee() -> Poset {
        Poset::from_pairs(3, &[(0, 1), (0, 2)])
    }

    #[test]
    fn enumeration_examples() {
        let a = |v: &[usize]| Antichain::new(v.to_vec());
        assert_eq!(
            maximal_antichains(&Poset::chain(3)),
            vec![a(&[0]), a(&[1]), a(&[2])]
        );
        assert_eq!(maximal_antichains(&vee()), vec![a(&[0]), a(&[1, 2])]);
        assert_eq!(maximal_antichains(&Poset::antichain(2)), vec![a(&[0, 1])]);
        assert_eq!(maximal_antichains(&Poset::antichain(0)), vec![a(&[])]);
    }

    #[test]
    fn enumeration_matches_brute_force_on_e1() {
        let q = build_quotient(&fixtures::e1()).unwrap();
        assert_eq!(maximal_antichains(q.order()), brute_force(q.order()));
    }

    #[test]
    fn within_restricts_to_the_subposet() {
        let p = Poset::chain(4);
        let got = maximal_antichains_within(&p, &[1, 3]);
        assert_eq!(got, vec![Antichain::new(vec![1]), Antichain::new(vec![3])]);
    }

    #[test]
    fn ac_order_on_e0() {
        let q = build_quotient(&fixtures::e0()).unwrap();
        let l = build_ac_lattice(q.order()).unwrap();
        let (bottom, mid) = (l.antichain(0), l.antichain(1));
        assert!(ac_leq(bottom, mid, q.order()));
        assert!(ac_leq(mid, mid, q.order()));
        assert!(!ac_leq(mid, bottom, q.order()));
        assert!(l.lattice().order().is_isomorphic(&Poset::chain(3)));
        assert_eq!(l.antichain(l.lattice().zero()).elements(), &[0]);
        assert_eq!(l.antichain(l.lattice().one()).elements(), &[2]);
    }

    #[test]
    fn ac_lattice_of_vee_and_singleton() {
        let l = build_ac_lattice(&vee()).unwrap();
        assert_eq!(l.len(), 2);
        assert!(l.lattice().order().is_isomorphic(&Poset::chain(2)));
        let single = build_ac_lattice(&Poset::chain(1)).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.lattice().zero(), single.lattice().one());
    }

    #[test]
    fn maximum_sized_examples() {
        let a = |v: &[usize]| Antichain::new(v.to_vec());
        assert_eq!(maximum_sized_antichains(&Poset::chain(3)).len(), 3);
        assert_eq!(maximum_sized_antichains(&vee()), vec![a(&[1, 2])]);
        assert_eq!(maximum_sized_antichains(&Poset::antichain(2)), vec![a(&[0, 1])]);
    }

    #[test]
    fn lower_shift_examples() {
        let q = build_quotient(&fixtures::e0()).unwrap();
        let b = Antichain::new(vec![1]);
        assert_eq!(lower_shift(&b, &q), Some(Antichain::new(vec![0])));
        let bottom = Antichain::new(vec![0]);
        assert_eq!(lower_shift(&bottom, &q), Some(bottom));
    }

    #[test]
    fn lower_shift_is_partial_on_e1() {
        let q = build_quotient(&fixtures::e1()).unwrap();
        let all = maximal_antichains(q.order());
        let undefined: Vec<&Antichain> = all.iter().filter(|a| lower_shift(a, &q).is_none()).collect();
        assert!(!undefined.is_empty());
        // ({∅},{1,2}) next to ({3},{3}): the lowers ∅ and {3} are comparable
        let s = |n: &[&str]| q.space().subset_of(n);
        let x = q.class_of(s(&["1"])).unwrap();
        let y = q.class_of(s(&["3"])).unwrap();
        assert!(undefined.iter().any(|a| a.contains(x) && a.contains(y)));
    }
}
