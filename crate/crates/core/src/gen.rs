//! Seeded random spaces and posets for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::poset::Poset;
use crate::space::{numbered_universe, GranularOperatorSpace};
use crate::subset::Subset;

/// Granule-union space on `{1..n}` with between one and `n` distinct
/// nonempty granules drawn uniformly from the powerset.
pub fn random_granule_space<R: Rng>(rng: &mut R, n: usize) -> GranularOperatorSpace {
    assert!(n >= 1, "granules need a nonempty universe");
    let target = rng.gen_range(1..=n);
    let mut granules: Vec<Subset> = Vec::new();
    while granules.len() < target {
        let g = Subset::from_bits(n, rng.gen_range(1..(1u64 << n)));
        if !granules.contains(&g) {
            granules.push(g);
        }
    }
    GranularOperatorSpace::granule_union(numbered_universe(n), granules, n).expect("random granules are valid")
}

/// Granule-union space on `{1..n}` whose granules are the blocks of a
/// random partition.
pub fn random_partition_space<R: Rng>(rng: &mut R, n: usize) -> GranularOperatorSpace {
    let mut elems: Vec<usize> = (0..n).collect();
    elems.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for e in elems {
        let k = rng.gen_range(0..=blocks.len());
        if k == blocks.len() {
            blocks.push(vec![e]);
        } else {
            blocks[k].push(e);
        }
    }
    let granules = blocks.into_iter().map(|b| Subset::from_indices(n, b)).collect();
    GranularOperatorSpace::granule_union(numbered_universe(n), granules, n).expect("partition blocks are valid")
}

/// Transitive closure of a random DAG on `0..n` where each forward pair is
/// an edge with probability `p`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, p: f64) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(n, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=5 {
            let s = random_granule_space(&mut rng, n);
            assert!(!s.granulation().is_empty() && s.granulation().len() <= n);
            let p = random_partition_space(&mut rng, n);
            let cover = p
                .granulation()
                .granules()
                .iter()
                .fold(Subset::empty(n), |acc, &g| acc.union(g));
            assert_eq!(cover, Subset::full(n));
            assert_eq!(p.granulation().granules().iter().map(|g| g.count()).sum::<usize>(), n);
            assert_eq!(random_poset(&mut rng, n, 0.4).check_partial_order(), Ok(()));
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_granule_space(&mut ChaCha8Rng::seed_from_u64(9), 4);
        let b = random_granule_space(&mut ChaCha8Rng::seed_from_u64(9), 4);
        assert_eq!(a, b);
    }
}
