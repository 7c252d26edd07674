//! Small named spaces used throughout the tests and the verification suites.

use crate::space::{numbered_space, numbered_universe, GranularOperatorSpace};
use crate::subset::Subset;

/// `S = {1,2}` with the single granule `{1,2}`.
pub fn e0() -> GranularOperatorSpace {
    numbered_space(2, &[&[1, 2]]).expect("valid fixture")
}

/// `S = {1,2,3,4}` partitioned into `{1,2}`, `{3}`, `{4}`.
pub fn e1() -> GranularOperatorSpace {
    numbered_space(4, &[&[1, 2], &[3], &[4]]).expect("valid fixture")
}

/// Singleton granules over `{1..n}`.
pub fn discrete(n: usize) -> GranularOperatorSpace {
    let singles: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
    let refs: Vec<&[usize]> = singles.iter().map(|v| v.as_slice()).collect();
    numbered_space(n, &refs).expect("valid fixture")
}

/// Empty universe; the quotient has the single object `(∅, ∅)`.
pub fn single_object() -> GranularOperatorSpace {
    GranularOperatorSpace::granule_union(Vec::new(), Vec::new(), 0).expect("valid fixture")
}

fn table_space(rows: [(u64, u64); 4]) -> GranularOperatorSpace {
    let s = |b| Subset::from_bits(2, b);
    let table = rows.iter().map(|&(l, u)| (s(l), s(u))).collect();
    GranularOperatorSpace::from_table(numbered_universe(2), vec![s(0b01), s(0b10)], table, 2)
        .expect("valid fixture")
}

/// Table space on `{1,2}` whose quotient is two incomparable objects
/// `({1},{1})` and `({2},{2})`.
pub fn incomparable_pair() -> GranularOperatorSpace {
    table_space([(0b01, 0b01), (0b01, 0b01), (0b10, 0b10), (0b10, 0b10)])
}

/// Table space on `{1,2}` whose quotient is the "V" poset: `(∅,∅)` below the
/// incomparable `({1},{1})` and `({2},{2})`.
pub fn vee() -> GranularOperatorSpace {
    table_space([(0b00, 0b00), (0b01, 0b01), (0b10, 0b10), (0b10, 0b10)])
}
