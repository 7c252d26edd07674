//! Finite partial orders on `0..n`, stored as up-set and down-set bit rows.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OrderViolation {
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric: {0} and {1} are mutually below each other")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("len", &self.len())
            .field("covers", &self.covers())
            .finish()
    }
}

impl Poset {
    /// Relation `i <= j` given by `leq`. No order axioms are enforced here;
    /// see [`Poset::check_partial_order`].
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        Self { up, down }
    }

    pub fn from_matrix(m: &[Vec<bool>]) -> Self {
        Self::from_fn(m.len(), |i, j| m[i][j])
    }

    /// Reflexive-transitive closure of the given strict pairs `(below, above)`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            m[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(&m)
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i <= j)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// `{j : i <= j}`
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// `{j : j <= i}`
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    pub fn check_partial_order(&self) -> Result<(), OrderViolation> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(OrderViolation::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in self.up[i].ones() {
                if i != j && self.leq(j, i) {
                    return Err(OrderViolation::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in self.up[i].ones() {
                if !self.up[j].is_subset(&self.up[i]) {
                    let k = self.up[j].difference(&self.up[i]).next().unwrap();
                    return Err(OrderViolation::NotTransitive(i, j, k));
                }
            }
        }
        Ok(())
    }

    pub fn is_antichain(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .enumerate()
            .all(|(k, &a)| elems[k + 1..].iter().all(|&b| a != b && !self.comparable(a, b)))
    }

    /// Antichain to which no further element can be added.
    pub fn is_maximal_antichain(&self, elems: &[usize]) -> bool {
        if !self.is_antichain(elems) {
            return false;
        }
        (0..self.len()).all(|x| elems.iter().any(|&a| self.comparable(a, x)))
    }

    /// The order restricted to `elems`, reindexed `0..elems.len()`.
    pub fn induced(&self, elems: &[usize]) -> Poset {
        Poset::from_fn(elems.len(), |i, j| self.leq(elems[i], elems[j]))
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].count_ones(..) == self.len())
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].count_ones(..) == self.len())
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.down[i].count_ones(..) == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.up[i].count_ones(..) == 1)
            .collect()
    }

    /// Elements `j` covering `i`.
    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.up[i]
            .ones()
            .filter(|&j| j != i && self.is_cover(i, j))
            .collect()
    }

    /// Elements `j` covered by `i`.
    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.down[i]
            .ones()
            .filter(|&j| j != i && self.is_cover(j, i))
            .collect()
    }

    fn is_cover(&self, i: usize, j: usize) -> bool {
        let mut between = self.up[i].clone();
        between.intersect_with(&self.down[j]);
        between.count_ones(..) == 2
    }

    /// Edges of the Hasse diagram (transitive reduction), as `(below, above)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.upper_covers(i).into_iter().map(move |j| (i, j)))
            .collect()
    }

    /// Elements sorted so that `i < j` in the order implies `i` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count_ones(..), i));
        order
    }

    /// Number of edges on a longest chain.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.len()];
        for i in self.linear_extension() {
            depth[i] = self.down[i]
                .ones()
                .filter(|&j| j != i)
                .map(|j| depth[j] + 1)
                .max()
                .unwrap_or(0);
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Exact order-isomorphism test by backtracking over bijections that
    /// respect per-element degree signatures.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }

    /// A map `f` with `i <= j ⇔ f(i) <= f(j)`, if one exists.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig_a: Vec<_> = (0..n).map(|i| self.signature(i)).collect();
        let sig_b: Vec<_> = (0..n).map(|i| other.signature(i)).collect();
        let mut sorted_a = sig_a.clone();
        let mut sorted_b = sig_b.clone();
        sorted_a.sort();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return None;
        }
        let order = self.linear_extension();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            k: usize,
            order: &[usize],
            a: &Poset,
            b: &Poset,
            sig_a: &[(usize, usize, usize, usize)],
            sig_b: &[(usize, usize, usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let x = order[k];
            for y in 0..b.len() {
                if used[y] || sig_a[x] != sig_b[y] {
                    continue;
                }
                let consistent = order[..k].iter().all(|&p| {
                    let q = map[p];
                    a.leq(p, x) == b.leq(q, y) && a.leq(x, p) == b.leq(y, q)
                });
                if !consistent {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if go(k + 1, order, a, b, sig_a, sig_b, map, used) {
                    return true;
                }
                used[y] = false;
                map[x] = usize::MAX;
            }
            false
        }
        go(0, &order, self, other, &sig_a, &sig_b, &mut map, &mut used).then_some(map)
    }

    fn signature(&self, i: usize) -> (usize, usize, usize, usize) {
        (
            self.down[i].count_ones(..),
            self.up[i].count_ones(..),
            self.lower_covers(i).len(),
            self.upper_covers(i).len(),
        )
    }

    /// Graphviz rendering of the Hasse diagram, bottom to top.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for i in 0..self.len() {
            let label = labels.get(i).cloned().unwrap_or_else(|| i.to_string());
            let _ = writeln!(out, "  n{} [label=\"{}\"];", i, escape(&label));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
