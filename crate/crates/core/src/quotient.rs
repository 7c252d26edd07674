//! The quotient of the powerset by rough equality, ordered by the basic rough
//! order `⋐` (componentwise inclusion of approximation pairs).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::antichain::Antichain;
use crate::poset::{OrderViolation, Poset};
use crate::space::{GranularOperatorSpace, SpaceError, DEFAULT_UNIVERSE_CAP};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("rough order is not a partial order: {0}")]
    NotAPartialOrder(#[from] OrderViolation),
    #[error("rough order is not bounded (least: {least:?}, maximal objects: {maximal:?})")]
    NotBounded {
        least: Option<usize>,
        maximal: Vec<usize>,
    },
}

/// A maximal class of subsets sharing both approximations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoughObject {
    pub lower: Subset,
    pub upper: Subset,
    pub members: Vec<Subset>,
    /// Some member `X` has `X^l = X = X^u`.
    pub definite: bool,
    /// `lower^l = lower` and `upper^u = upper`.
    pub stable: bool,
}

#[derive(Debug, Clone)]
pub struct QuotientPoset {
    space: GranularOperatorSpace,
    objects: Vec<RoughObject>,
    order: Poset,
    bottom: Option<usize>,
    top: Option<usize>,
    by_pair: HashMap<(u64, u64), usize>,
    lower_class: Vec<usize>,
    upper_class: Vec<usize>,
}

pub fn build_quotient(space: &GranularOperatorSpace) -> Result<QuotientPoset, QuotientError> {
    build_quotient_with_cap(space, DEFAULT_UNIVERSE_CAP)
}

/// Scans the powerset, groups subsets by `(l, u)` and orders the classes by
/// `⋐`. Objects are listed by total approximation size, then by bitmask, so
/// the listing is a linear extension of the order.
pub fn build_quotient_with_cap(
    space: &GranularOperatorSpace,
    cap: usize,
) -> Result<QuotientPoset, QuotientError> {
    space.ensure_cap(cap)?;
    let n = space.size();
    let mut groups: HashMap<(u64, u64), Vec<Subset>> = HashMap::new();
    for a in Subset::powerset(n) {
        let l = space.lower_unchecked(a);
        let u = space.upper_unchecked(a);
        groups.entry((l.bits(), u.bits())).or_default().push(a);
    }
    let mut keys: Vec<(u64, u64)> = groups.keys().copied().collect();
    keys.sort_by_key(|&(l, u)| (l.count_ones() + u.count_ones(), l, u));

    let objects: Vec<RoughObject> = keys
        .iter()
        .map(|&(l, u)| {
            let lower = Subset::from_bits(n, l);
            let upper = Subset::from_bits(n, u);
            let members = groups.remove(&(l, u)).unwrap();
            let definite = members.iter().any(|&x| space.is_definite(x));
            let stable =
                space.lower_unchecked(lower) == lower && space.upper_unchecked(upper) == upper;
            RoughObject {
                lower,
                upper,
                members,
                definite,
                stable,
            }
        })
        .collect();
    let by_pair: HashMap<(u64, u64), usize> =
        keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let order = Poset::from_fn(objects.len(), |i, j| {
        objects[i].lower.is_subset(objects[j].lower) && objects[i].upper.is_subset(objects[j].upper)
    });
    order.check_partial_order()?;

    let class_of = |x: Subset| {
        by_pair[&(
            space.lower_unchecked(x).bits(),
            space.upper_unchecked(x).bits(),
        )]
    };
    let lower_class = objects.iter().map(|o| class_of(o.lower)).collect();
    let upper_class = objects.iter().map(|o| class_of(o.upper)).collect();

    let empty_class = class_of(Subset::empty(n));
    let bottom = order.least().filter(|&b| b == empty_class);
    let top = order.greatest();
    Ok(QuotientPoset {
        space: space.clone(),
        objects,
        order,
        bottom,
        top,
        by_pair,
        lower_class,
        upper_class,
    })
}

impl QuotientPoset {
    pub fn space(&self) -> &GranularOperatorSpace {
        &self.space
    }

    pub fn objects(&self) -> &[RoughObject] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &RoughObject {
        &self.objects[i]
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    /// `α ⋐ β`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    /// Class of `∅` when it is the least object.
    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    /// Bottom and top, or the witnesses that the order is not bounded.
    pub fn check_bounded(&self) -> Result<(usize, usize), QuotientError> {
        match (self.bottom, self.top) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(QuotientError::NotBounded {
                least: self.bottom,
                maximal: self.order.maximal_elements(),
            }),
        }
    }

    /// Index of the object containing `x`.
    pub fn class_of(&self, x: Subset) -> Result<usize, SpaceError> {
        let (l, u) = self.space.approximations(x)?;
        Ok(self.by_pair[&(l.bits(), u.bits())])
    }

    pub fn object_with(&self, lower: Subset, upper: Subset) -> Option<usize> {
        self.by_pair.get(&(lower.bits(), upper.bits())).copied()
    }

    /// Class of the set `lower` of object `i`, i.e. the rough object written
    /// `𝔸^l`.
    pub fn lower_class(&self, i: usize) -> usize {
        self.lower_class[i]
    }

    /// Class of the set `upper` of object `i` (`𝔸^u`).
    pub fn upper_class(&self, i: usize) -> usize {
        self.upper_class[i]
    }

    /// `u(u(x))` for any member `x` of object `i`.
    pub fn upper_upper(&self, i: usize) -> Subset {
        self.space.upper_unchecked(self.objects[i].upper)
    }

    pub fn label(&self, i: usize) -> String {
        let o = &self.objects[i];
        format!(
            "({}, {})",
            self.space.format_subset(o.lower),
            self.space.format_subset(o.upper)
        )
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }
}

pub fn definite_rough_objects(q: &QuotientPoset) -> Vec<usize> {
    (0..q.len()).filter(|&i| q.object(i).definite).collect()
}

/// The `(lower, upper)` pair of every set, in input order.
pub fn rough_interpretation(
    antichain: &[Subset],
    space: &GranularOperatorSpace,
) -> Result<Vec<(Subset, Subset)>, SpaceError> {
    antichain.iter().map(|&a| space.approximations(a)).collect()
}

/// Every rough object occurs in some antichain of `v`.
pub fn is_fluent(v: &[Antichain], q: &QuotientPoset) -> bool {
    let mut covered = vec![false; q.len()];
    for a in v {
        for &o in a.elements() {
            covered[o] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Fluent, and no proper subfamily is fluent. Fluency is monotone in the
/// family, so dropping single members is enough.
pub fn is_well_fluent(v: &[Antichain], q: &QuotientPoset) -> bool {
    if !is_fluent(v, q) {
        return false;
    }
    (0..v.len()).all(|skip| {
        let rest: Vec<Antichain> = v
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, a)| a.clone())
            .collect();
        !is_fluent(&rest, q)
    })
}

/// A maximal antichain that on its own is fluent. Exists exactly when the
/// objects are pairwise incomparable.
pub fn single_antichain_cover(q: &QuotientPoset) -> Option<Antichain> {
    let all: Vec<usize> = (0..q.len()).collect();
    q.order().is_antichain(&all).then(|| Antichain::new(all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antichain::maximal_antichains;
    use crate::fixtures;
    use crate::space::numbered_universe;

    /// Independent count of distinct `(l, u)` pairs, from granule unions
    /// computed straight off the granule list.
    fn pair_count_oracle(n: usize, granules: &[u64]) -> usize {
        let mut pairs = std::collections::HashSet::new();
        for a in 0..(1u64 << n) {
            let l = granules.iter().filter(|&&g| g & !a == 0).fold(0, |x, g| x | g);
            let u = granules.iter().filter(|&&g| g & a != 0).fold(0, |x, g| x | g);
            pairs.insert((l, u));
        }
        pairs.len()
    }

    #[test]
    fn e0_quotient_is_a_three_chain() {
        assert_eq!(pair_count_oracle(2, &[0b11]), 3);
        let q = build_quotient(&fixtures::e0()).unwrap();
        assert_eq!(q.len(), 3);
        assert!(q.order().is_isomorphic(&Poset::chain(3)));
        let (b, t) = q.check_bounded().unwrap();
        assert_eq!((b, t), (0, 2));
        let mid = q.object(1);
        assert!(mid.lower.is_empty());
        assert_eq!(mid.upper, q.space().full());
        assert_eq!(mid.members.len(), 2);
        assert_eq!(definite_rough_objects(&q), vec![0, 2]);
    }

    #[test]
    fn e1_quotient_has_twelve_objects() {
        assert_eq!(pair_count_oracle(4, &[0b0011, 0b0100, 0b1000]), 12);
        let q = build_quotient(&fixtures::e1()).unwrap();
        assert_eq!(q.len(), 12);
        assert_eq!(definite_rough_objects(&q).len(), 8);
        for i in definite_rough_objects(&q) {
            assert_eq!(q.object(i).lower, q.object(i).upper);
        }
        q.check_bounded().unwrap();
    }

    #[test]
    fn discrete_space_quotient_is_the_powerset() {
        let q = build_quotient(&fixtures::discrete(3)).unwrap();
        assert_eq!(q.len(), 8);
        assert_eq!(definite_rough_objects(&q).len(), 8);
        for i in 0..8 {
            for j in 0..8 {
                let (a, b) = (q.object(i).members[0], q.object(j).members[0]);
                assert_eq!(q.leq(i, j), a.is_subset(b));
            }
        }
    }

    #[test]
    fn members_partition_the_powerset() {
        let q = build_quotient(&fixtures::e1()).unwrap();
        let mut seen = std::collections::HashSet::new();
        for o in q.objects() {
            for m in &o.members {
                assert!(seen.insert(m.bits()));
                assert_eq!(q.space().approximations(*m).unwrap(), (o.lower, o.upper));
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn rough_interpretation_examples() {
        let e0 = fixtures::e0();
        assert_eq!(
            rough_interpretation(&[e0.subset_of(&["1"])], &e0).unwrap(),
            vec![(e0.empty(), e0.full())]
        );
        assert!(rough_interpretation(&[], &e0).unwrap().is_empty());
        let e1 = fixtures::e1();
        let s = |n: &[&str]| e1.subset_of(n);
        assert_eq!(
            rough_interpretation(&[s(&["1", "3"]), s(&["4"])], &e1).unwrap(),
            vec![(s(&["3"]), s(&["1", "2", "3"])), (s(&["4"]), s(&["4"]))]
        );
    }

    #[test]
    fn fluency_on_e0() {
        let q = build_quotient(&fixtures::e0()).unwrap();
        let all = maximal_antichains(q.order());
        assert_eq!(all.len(), 3);
        assert!(is_fluent(&all, &q));
        assert!(is_well_fluent(&all, &q));
        assert!(!is_fluent(&[Antichain::new(vec![1])], &q));
    }

    #[test]
    fn well_fluency_fails_with_a_redundant_family() {
        // discrete S = {1,2}: objects ∅, {1}, {2}, S
        let q = build_quotient(&fixtures::discrete(2)).unwrap();
        let one = q.class_of(q.space().subset_of(&["1"])).unwrap();
        let two = q.class_of(q.space().subset_of(&["2"])).unwrap();
        let mut v: Vec<Antichain> = (0..4).map(|i| Antichain::new(vec![i])).collect();
        v.push(Antichain::new(vec![one, two]));
        assert!(is_fluent(&v, &q));
        assert!(!is_well_fluent(&v, &q));
        // exhaustive oracle over subfamilies
        let proper_fluent = (0..(1u32 << v.len()) - 1).any(|mask| {
            let sub: Vec<Antichain> = (0..v.len())
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| v[k].clone())
                .collect();
            is_fluent(&sub, &q)
        });
        assert!(proper_fluent);
    }

    #[test]
    fn single_object_quotient_is_covered_by_one_antichain() {
        let q = build_quotient(&fixtures::single_object()).unwrap();
        assert_eq!(q.len(), 1);
        let cover = single_antichain_cover(&q).unwrap();
        assert_eq!(cover.elements(), &[0]);
        assert!(is_well_fluent(&[cover], &q));
    }

    #[test]
    fn single_cover_exists_iff_no_comparable_pair() {
        assert!(single_antichain_cover(&build_quotient(&fixtures::e0()).unwrap()).is_none());
        let q = build_quotient(&fixtures::incomparable_pair()).unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.check_bounded().is_err());
        assert_eq!(single_antichain_cover(&q).unwrap().elements(), &[0, 1]);
        // brute force: search every maximal antichain for one covering all
        for q in [
            build_quotient(&fixtures::e1()).unwrap(),
            build_quotient(&fixtures::incomparable_pair()).unwrap(),
            build_quotient(&fixtures::vee()).unwrap(),
        ] {
            let brute = maximal_antichains(q.order())
                .into_iter()
                .find(|a| a.len() == q.len());
            assert_eq!(brute, single_antichain_cover(&q));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let space = GranularOperatorSpace::granule_union(numbered_universe(5), vec![], 12).unwrap();
        assert!(matches!(
            build_quotient_with_cap(&space, 4),
            Err(QuotientError::Space(SpaceError::UniverseTooLarge { .. }))
        ));
    }
}
