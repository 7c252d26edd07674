//! AC-algebras as finite algebras, and the ternary-term conditions for
//! filters.

use super::finite::{FiniteAlgebra, Operation};
use crate::algebra::{AcAlgebra, FilterIdealKind};

/// The AC-algebra with operations `and`, `or`, `box`, `diamond`, `rho`,
/// `delta`, `zero`, `one`; elements are named `ac0`, `ac1`, ….
pub fn ac_finite_algebra(ac: &AcAlgebra) -> FiniteAlgebra {
    let n = ac.len();
    let elements = (0..n).map(|i| format!("ac{i}")).collect();
    let ops = vec![
        Operation::from_fn("and", 2, n, |a| ac.meet(a[0], a[1])),
        Operation::from_fn("or", 2, n, |a| ac.join(a[0], a[1])),
        Operation::from_fn("box", 1, n, |a| ac.box_op(a[0])),
        Operation::from_fn("diamond", 1, n, |a| ac.diamond(a[0])),
        Operation::from_fn("rho", 2, n, |a| ac.rho(a[0], a[1])),
        Operation::from_fn("delta", 2, n, |a| ac.delta(a[0], a[1])),
        Operation::from_fn("zero", 0, n, |_| ac.zero()),
        Operation::from_fn("one", 0, n, |_| ac.one()),
    ];
    FiniteAlgebra::new(elements, ops).expect("AC tables are total")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TernaryTheorem {
    /// `t(a,b,z) = a ∧ b ∧ z` on lattice filters.
    Meet,
    /// `t(a,b,z) = (a ∨ □b) ∧ z` on principal LD-filters `↑z`.
    BoxJoin,
}

/// One failed condition: `bullet` 1 is `a ∈ H ⟶ t(z,a,z) ∈ H`, 2 is
/// `t(a,b,z) ∈ H ⟶ t(σa,σb,z) ∈ H` with `σx = x ∧ z`, 3 is
/// `a, t(a,b,z) ∈ H ⟶ b ∈ H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TernaryFailure {
    pub theorem: TernaryTheorem,
    /// Generator of the filter `H`.
    pub filter: usize,
    pub z: usize,
    pub bullet: u8,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TernaryReport {
    pub meet_instances: usize,
    pub box_instances: usize,
    pub failures: Vec<TernaryFailure>,
}

impl TernaryReport {
    pub fn passes(&self, theorem: TernaryTheorem) -> bool {
        self.failures.iter().all(|f| f.theorem != theorem)
    }
}

/// Checks the three conditions for `t = a ∧ b ∧ z` on every lattice filter
/// and every `z` in it, and for `t = (a ∨ □b) ∧ z` on every principal
/// filter `↑z` that is an LD-filter. Reports the first failure of each
/// instance.
pub fn check_ternary_term_theorems(ac: &AcAlgebra) -> TernaryReport {
    let mut report = TernaryReport::default();
    for h in 0..ac.len() {
        let filter = ac.principal_filter(h);
        for &z in &filter {
            report.meet_instances += 1;
            let t = |a: usize, b: usize| ac.meet(ac.meet(a, b), z);
            if let Some((bullet, a, b)) = first_failure(ac, &filter, z, t) {
                report.failures.push(TernaryFailure {
                    theorem: TernaryTheorem::Meet,
                    filter: h,
                    z,
                    bullet,
                    a,
                    b,
                });
            }
        }
    }
    for z in 0..ac.len() {
        let filter = ac.principal_filter(z);
        if ac.classify_sublattice(&filter, FilterIdealKind::LDFilter).is_err() {
            continue;
        }
        report.box_instances += 1;
        let t = |a: usize, b: usize| ac.meet(ac.join(a, ac.box_op(b)), z);
        if let Some((bullet, a, b)) = first_failure(ac, &filter, z, t) {
            report.failures.push(TernaryFailure {
                theorem: TernaryTheorem::BoxJoin,
                filter: z,
                z,
                bullet,
                a,
                b,
            });
        }
    }
    report
}

fn first_failure(
    ac: &AcAlgebra,
    filter: &[usize],
    z: usize,
    t: impl Fn(usize, usize) -> usize,
) -> Option<(u8, usize, usize)> {
    let n = ac.len();
    let mut inside = vec![false; n];
    for &x in filter {
        inside[x] = true;
    }
    let sigma = |x: usize| ac.meet(x, z);
    for a in 0..n {
        if inside[a] && !inside[t(z, a)] {
            return Some((1, a, a));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let in_h = inside[t(a, b)];
            if in_h && !inside[t(sigma(a), sigma(b))] {
                return Some((2, a, b));
            }
            if in_h && inside[a] && !inside[b] {
                return Some((3, a, b));
            }
        }
    }
    None
}
