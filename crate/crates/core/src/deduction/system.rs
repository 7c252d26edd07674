//! Ternary deductive systems, the relation they induce, congruences and the
//! correspondence between the two.

use thiserror::Error;

use super::finite::FiniteAlgebra;
use super::term::Term;

/// Largest carrier for which congruences are enumerated.
pub const DEFAULT_CONGRUENCE_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeductionError {
    #[error("carrier of size {size} exceeds the congruence cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("not a difference system: {0}")]
    NotDifferenceSystem(DifferenceWitness),
}

/// `g`, `z`, `τ` and the candidate set `Δ` (as a membership mask).
#[derive(Debug, Clone)]
pub struct DeductionConfig {
    pub g: Term,
    pub z: usize,
    pub tau: Vec<Term>,
    pub delta: Vec<bool>,
}

impl DeductionConfig {
    pub fn new(g: Term, z: usize, tau: Vec<Term>, delta: Vec<bool>) -> Self {
        Self { g, z, tau, delta }
    }

    fn t(&self, alg: &FiniteAlgebra, k: usize, a: usize, b: usize) -> usize {
        self.tau[k].apply(alg, &[a, b, self.z])
    }

    fn gz(&self, alg: &FiniteAlgebra) -> usize {
        self.g.apply(alg, &[self.z])
    }
}

/// Membership mask of `members` in a carrier of size `n`.
pub fn subset_mask(n: usize, members: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &m in members {
        mask[m] = true;
    }
    mask
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeductionViolation {
    EmptyTau,
    /// `g(z) ∉ Δ`.
    GzNotInDelta { gz: usize },
    /// `a ∈ Δ`, `t(a,b,z) ∈ Δ`, `b ∉ Δ`.
    Detachment { term: usize, a: usize, b: usize },
    /// `b ∈ Δ` but `t(g(z),b,z) ∉ Δ`.
    Attachment { term: usize, b: usize },
    /// The three conditions hold yet `t(g(z),b,z) ∈ Δ` with `b ∉ Δ`; this
    /// is derivable from the conditions, so it signals an engine fault.
    SoundnessAlarm { term: usize, b: usize },
}

/// Checks the membership, detachment and re-attachment conditions.
pub fn is_deductive_system(alg: &FiniteAlgebra, cfg: &DeductionConfig) -> Result<(), DeductionViolation> {
    if cfg.tau.is_empty() {
        return Err(DeductionViolation::EmptyTau);
    }
    let n = alg.len();
    let d = &cfg.delta;
    let gz = cfg.gz(alg);
    if !d[gz] {
        return Err(DeductionViolation::GzNotInDelta { gz });
    }
    for k in 0..cfg.tau.len() {
        for a in (0..n).filter(|&a| d[a]) {
            for b in 0..n {
                if d[cfg.t(alg, k, a, b)] && !d[b] {
                    return Err(DeductionViolation::Detachment { term: k, a, b });
                }
            }
        }
        for b in (0..n).filter(|&b| d[b]) {
            if !d[cfg.t(alg, k, gz, b)] {
                return Err(DeductionViolation::Attachment { term: k, b });
            }
        }
    }
    for k in 0..cfg.tau.len() {
        for b in 0..n {
            if d[cfg.t(alg, k, gz, b)] && !d[b] {
                return Err(DeductionViolation::SoundnessAlarm { term: k, b });
            }
        }
    }
    Ok(())
}

/// An operation and argument tuples that are componentwise related while
/// their images are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityWitness {
    pub op: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// For every operation `f`: if `(a_i, b_i) ∈ Θ_{Δ,z}` for all `i` then
/// `(f(ā), f(b̄)) ∈ Θ_{Δ,z}`.
pub fn is_compatible(alg: &FiniteAlgebra, cfg: &DeductionConfig) -> Result<(), CompatibilityWitness> {
    let theta = theta_relation(alg, cfg);
    let related: Vec<(usize, usize)> = theta.pairs().collect();
    for (op_idx, op) in alg.operations().iter().enumerate() {
        let k = op.arity();
        if k > 0 && related.is_empty() {
            continue;
        }
        let mut choice = vec![0usize; k];
        loop {
            let left: Vec<usize> = choice.iter().map(|&c| related[c].0).collect();
            let right: Vec<usize> = choice.iter().map(|&c| related[c].1).collect();
            if !theta.contains(alg.apply(op_idx, &left), alg.apply(op_idx, &right)) {
                return Err(CompatibilityWitness {
                    op: op.name().to_string(),
                    left,
                    right,
                });
            }
            if !advance(&mut choice, related.len()) {
                break;
            }
        }
    }
    Ok(())
}

/// Odometer increment; false once every tuple has been visited.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// A binary relation on the carrier as a dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    m: Vec<Vec<bool>>,
}

impl Relation {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            m: (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.m[a][b]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.m[a][b]).map(move |b| (a, b)))
    }

    /// `{b : (x, b) ∈ R}`.
    pub fn class_of(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.m[x][b]).collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|a| self.m[a][a])
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(a, b)| self.m[b][a])
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        self.pairs().all(|(a, b)| (0..n).all(|c| !self.m[b][c] || self.m[a][c]))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// The partition, when this is an equivalence.
    pub fn to_congruence_candidate(&self) -> Option<Partition> {
        self.is_equivalence().then(|| Partition::from_relation(self))
    }
}

/// `Θ_{Δ,z}`: `(a,b)` related iff every `t(a,b,z)` lies in `Δ`.
pub fn theta_relation(alg: &FiniteAlgebra, cfg: &DeductionConfig) -> Relation {
    Relation::from_fn(alg.len(), |a, b| (0..cfg.tau.len()).all(|k| cfg.delta[cfg.t(alg, k, a, b)]))
}

/// `[g(z)]` under `Θ_{Δ,z}` compared with `Δ`.
pub fn gz_class_matches(alg: &FiniteAlgebra, cfg: &DeductionConfig) -> bool {
    let theta = theta_relation(alg, cfg);
    let class = subset_mask(alg.len(), &theta.class_of(cfg.gz(alg)));
    class == cfg.delta
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Whether every `t(a,b,c)` equals `g(c)`.
    pub all_equal_g: bool,
}

impl std::fmt::Display for DifferenceWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.all_equal_g {
            write!(f, "t({}, {}, {}) = g({}) with {} ≠ {}", self.a, self.b, self.c, self.c, self.a, self.b)
        } else {
            write!(f, "t({}, {}, {}) ≠ g({}) for some t", self.a, self.b, self.c, self.c)
        }
    }
}

/// `(∀t ∈ τ) t(a,b,c) = g(c)` holds exactly when `a = b`.
pub fn is_g_difference_system(alg: &FiniteAlgebra, g: &Term, tau: &[Term]) -> Result<(), DifferenceWitness> {
    let n = alg.len();
    for c in 0..n {
        let gc = g.apply(alg, &[c]);
        for a in 0..n {
            for b in 0..n {
                let all_equal_g = tau.iter().all(|t| t.apply(alg, &[a, b, c]) == gc);
                if all_equal_g != (a == b) {
                    return Err(DifferenceWitness { a, b, c, all_equal_g });
                }
            }
        }
    }
    Ok(())
}

/// An equivalence given by canonical block labels (restricted growth).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block: Vec<usize>,
}

impl Partition {
    fn from_relation(r: &Relation) -> Self {
        let n = r.len();
        let mut block = vec![usize::MAX; n];
        let mut next = 0;
        for a in 0..n {
            if block[a] == usize::MAX {
                for b in a..n {
                    if r.contains(a, b) {
                        block[b] = next;
                    }
                }
                next += 1;
            }
        }
        Self { block }
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn class_of(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.same(x, y)).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let count = self.block.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn to_relation(&self) -> Relation {
        Relation::from_fn(self.len(), |a, b| self.same(a, b))
    }

    /// Whether every operation maps related arguments to related values;
    /// changing one argument at a time suffices.
    pub fn is_compatible_with(&self, alg: &FiniteAlgebra) -> bool {
        let n = alg.len();
        alg.operations().iter().enumerate().all(|(op, o)| {
            let k = o.arity();
            let mut args = vec![0usize; k];
            if n == 0 && k > 0 {
                return true;
            }
            loop {
                let base = alg.apply(op, &args);
                for i in 0..k {
                    let keep = args[i];
                    for y in (0..n).filter(|&y| y != keep && self.same(keep, y)) {
                        args[i] = y;
                        let moved = alg.apply(op, &args);
                        args[i] = keep;
                        if !self.same(base, moved) {
                            return false;
                        }
                    }
                }
                if !advance(&mut args, n) {
                    return true;
                }
            }
        })
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in self.blocks() {
            let names: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", names.join(","))?;
        }
        Ok(())
    }
}

/// Every partition of the carrier compatible with all operations, in
/// restricted-growth order (identity first).
pub fn congruences(alg: &FiniteAlgebra, cap: usize) -> Result<Vec<Partition>, DeductionError> {
    let n = alg.len();
    if n > cap {
        return Err(DeductionError::CapExceeded { size: n, cap });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(i: usize, max: usize, rgs: &mut Vec<usize>, alg: &FiniteAlgebra, out: &mut Vec<Partition>) {
        if i == rgs.len() {
            let p = Partition { block: rgs.clone() };
            if p.is_compatible_with(alg) {
                out.push(p);
            }
            return;
        }
        for b in 0..=max + 1 {
            if i == 0 && b > 0 {
                break;
            }
            rgs[i] = b;
            go(i + 1, max.max(b), rgs, alg, out);
        }
    }
    if n == 0 {
        out.push(Partition { block: Vec::new() });
        return Ok(out);
    }
    go(0, 0, &mut rgs, alg, &mut out);
    out.sort_by_key(|p| std::cmp::Reverse(p.blocks().len()));
    Ok(out)
}

/// `[g(b)]_σ = [g(b)]_ρ` with `σ ≠ ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityWitness {
    pub b: usize,
    pub first: Partition,
    pub second: Partition,
}

/// Regularity of the algebra relative to `g`; `None` means regular.
pub fn check_regularity(alg: &FiniteAlgebra, g: &Term, cap: usize) -> Result<Option<RegularityWitness>, DeductionError> {
    let cons = congruences(alg, cap)?;
    for b in 0..alg.len() {
        let gb = g.apply(alg, &[b]);
        for (i, s) in cons.iter().enumerate() {
            for r in &cons[i + 1..] {
                if s.class_of(gb) == r.class_of(gb) {
                    return Ok(Some(RegularityWitness {
                        b,
                        first: s.clone(),
                        second: r.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Congruence to deductive system.
    Forward,
    /// Compatible deductive system to congruence.
    Converse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceFailure {
    pub direction: Direction,
    pub z: usize,
    /// The congruence (forward) or the deductive system (converse).
    pub subject: Vec<Vec<usize>>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub forward_checked: usize,
    pub converse_checked: usize,
    pub failures: Vec<CorrespondenceFailure>,
}

impl CorrespondenceReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

fn members(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect()
}

/// Both directions of the congruence / deductive-system correspondence at
/// every `z`, after checking that `τ` is a `g`-difference system.
pub fn check_correspondence(
    alg: &FiniteAlgebra,
    g: &Term,
    tau: &[Term],
    cap: usize,
) -> Result<CorrespondenceReport, DeductionError> {
    is_g_difference_system(alg, g, tau).map_err(DeductionError::NotDifferenceSystem)?;
    let cons = congruences(alg, cap)?;
    let n = alg.len();
    let mut report = CorrespondenceReport::default();
    for z in 0..n {
        let gz = g.apply(alg, &[z]);
        for con in &cons {
            report.forward_checked += 1;
            let cfg = DeductionConfig::new(g.clone(), z, tau.to_vec(), subset_mask(n, &con.class_of(gz)));
            let mut reasons = Vec::new();
            if theta_relation(alg, &cfg) != con.to_relation() {
                reasons.push("induced relation differs from the congruence".to_string());
            }
            if let Err(v) = is_deductive_system(alg, &cfg) {
                reasons.push(format!("class is not deductive: {v:?}"));
            }
            if let Err(w) = is_compatible(alg, &cfg) {
                reasons.push(format!("class is not compatible: {w:?}"));
            }
            if !reasons.is_empty() {
                report.failures.push(CorrespondenceFailure {
                    direction: Direction::Forward,
                    z,
                    subject: con.blocks(),
                    reason: reasons.join("; "),
                });
            }
        }
        for bits in 0u64..(1 << n) {
            let delta: Vec<bool> = (0..n).map(|i| bits & (1 << i) != 0).collect();
            let cfg = DeductionConfig::new(g.clone(), z, tau.to_vec(), delta);
            if is_deductive_system(alg, &cfg).is_err() || is_compatible(alg, &cfg).is_err() {
                continue;
            }
            report.converse_checked += 1;
            let theta = theta_relation(alg, &cfg);
            let is_congruence = theta
                .to_congruence_candidate()
                .is_some_and(|p| p.is_compatible_with(alg));
            let mut reasons = Vec::new();
            if !is_congruence {
                reasons.push("induced relation is not a congruence".to_string());
            }
            if !gz_class_matches(alg, &cfg) {
                reasons.push("class of g(z) differs from the system".to_string());
            }
            if !reasons.is_empty() {
                report.failures.push(CorrespondenceFailure {
                    direction: Direction::Converse,
                    z,
                    subject: vec![members(&cfg.delta)],
                    reason: reasons.join("; "),
                });
            }
        }
    }
    Ok(report)
}

/// Results of checking, over every `z` and every subset `K`, that deductive
/// systems equal the class of `g(z)`, and that `K` is deductive whenever
/// `Θ_{K,z}` is reflexive and transitive with `K` the class of `g(z)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThetaPropositionReport {
    pub class_checked: usize,
    pub class_failures: Vec<(usize, Vec<usize>)>,
    pub preorder_checked: usize,
    pub preorder_failures: Vec<(usize, Vec<usize>)>,
}

impl ThetaPropositionReport {
    pub fn passes(&self) -> bool {
        self.class_failures.is_empty() && self.preorder_failures.is_empty()
    }
}

pub fn check_theta_propositions(
    alg: &FiniteAlgebra,
    g: &Term,
    tau: &[Term],
    cap: usize,
) -> Result<ThetaPropositionReport, DeductionError> {
    let n = alg.len();
    if n > cap {
        return Err(DeductionError::CapExceeded { size: n, cap });
    }
    let mut report = ThetaPropositionReport::default();
    for z in 0..n {
        for bits in 0u64..(1 << n) {
            let delta: Vec<bool> = (0..n).map(|i| bits & (1 << i) != 0).collect();
            let cfg = DeductionConfig::new(g.clone(), z, tau.to_vec(), delta);
            let deductive = is_deductive_system(alg, &cfg).is_ok();
            let class_ok = gz_class_matches(alg, &cfg);
            if deductive {
                report.class_checked += 1;
                if !class_ok {
                    report.class_failures.push((z, members(&cfg.delta)));
                }
            }
            let theta = theta_relation(alg, &cfg);
            if theta.is_reflexive() && theta.is_transitive() && class_ok {
                report.preorder_checked += 1;
                if !deductive {
                    report.preorder_failures.push((z, members(&cfg.delta)));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::finite::{
        boolean_algebra, cyclic_group, meet_semilattice2, p_semilattice_chain3, FiniteAlgebra, Operation,
    };

    fn xor3(alg: &FiniteAlgebra) -> Vec<Term> {
        vec![Term::ternary(alg, "(xor (xor a b) z)").unwrap()]
    }

    fn group_term(alg: &FiniteAlgebra) -> Vec<Term> {
        vec![Term::ternary(alg, "(add (add a (neg b)) z)").unwrap()]
    }

    #[test]
    fn deductive_system_examples() {
        let b2 = boolean_algebra(1);
        let cfg = DeductionConfig::new(Term::identity(), 1, xor3(&b2), vec![false, true]);
        assert_eq!(is_deductive_system(&b2, &cfg), Ok(()));
        assert_eq!(is_compatible(&b2, &cfg), Ok(()));
        let cfg = DeductionConfig::new(Term::identity(), 1, xor3(&b2), vec![true, false]);
        assert_eq!(is_deductive_system(&b2, &cfg), Err(DeductionViolation::GzNotInDelta { gz: 1 }));
        let cfg = DeductionConfig::new(Term::identity(), 1, vec![], vec![true, true]);
        assert_eq!(is_deductive_system(&b2, &cfg), Err(DeductionViolation::EmptyTau));
    }

    #[test]
    fn carrier_is_always_compatible() {
        let b4 = boolean_algebra(2);
        let cfg = DeductionConfig::new(Term::identity(), 0, xor3(&b4), vec![true; 4]);
        assert_eq!(is_compatible(&b4, &cfg), Ok(()));
        assert!(theta_relation(&b4, &cfg).pairs().count() == 16);
    }

    #[test]
    fn broken_operation_is_caught() {
        // with Δ = {1, 3} at z = 3, Θ relates elements agreeing in the low
        // bit; `kink` swaps 0 and 1 but fixes 2
        let base = boolean_algebra(2);
        let mut ops = base.operations().to_vec();
        ops.push(Operation::from_table("kink", 1, vec![1, 0, 2, 3]));
        let alg = FiniteAlgebra::new(base.elements().to_vec(), ops).unwrap();
        let cfg = DeductionConfig::new(Term::identity(), 3, xor3(&alg), vec![false, true, false, true]);
        assert_eq!(is_deductive_system(&alg, &cfg), Ok(()));
        let w = is_compatible(&alg, &cfg).unwrap_err();
        assert_eq!(w.op, "kink");
        let theta = theta_relation(&alg, &cfg);
        assert!(w.left.iter().zip(&w.right).all(|(&a, &b)| theta.contains(a, b)));
        let (fa, fb) = (alg.apply(6, &w.left), alg.apply(6, &w.right));
        assert!(!theta.contains(fa, fb));
    }

    #[test]
    fn theta_examples() {
        let b2 = boolean_algebra(1);
        let cfg = DeductionConfig::new(Term::identity(), 1, xor3(&b2), vec![false, true]);
        let theta = theta_relation(&b2, &cfg);
        assert_eq!(theta, Relation::from_fn(2, |a, b| a == b));
        assert!(gz_class_matches(&b2, &cfg));
        let z3 = cyclic_group(3);
        let cfg = DeductionConfig::new(Term::identity(), 0, group_term(&z3), vec![true, false, false]);
        assert_eq!(theta_relation(&z3, &cfg), Relation::from_fn(3, |a, b| a == b));
    }

    #[test]
    fn difference_systems() {
        let b2 = boolean_algebra(1);
        assert_eq!(is_g_difference_system(&b2, &Term::identity(), &xor3(&b2)), Ok(()));
        let z3 = cyclic_group(3);
        assert_eq!(is_g_difference_system(&z3, &Term::identity(), &group_term(&z3)), Ok(()));
        let meet = vec![Term::ternary(&b2, "(and a b z)").unwrap()];
        let w = is_g_difference_system(&b2, &Term::identity(), &meet).unwrap_err();
        assert!(w.all_equal_g && w.a != w.b);
        assert_eq!(w, DifferenceWitness { a: 0, b: 1, c: 0, all_equal_g: true });
    }

    #[test]
    fn p_semilattice_xor_term_is_not_a_difference_system_on_the_3_chain() {
        let p = p_semilattice_chain3();
        let g = Term::unary(&p, "(star (star x))").unwrap();
        let w = is_g_difference_system(&p, &g, &xor3(&p)).unwrap_err();
        assert!(w.all_equal_g);
        assert_ne!(w.a, w.b);
    }

    #[test]
    fn congruence_counts() {
        assert_eq!(congruences(&boolean_algebra(1), 6).unwrap().len(), 2);
        assert_eq!(congruences(&boolean_algebra(2), 6).unwrap().len(), 4);
        assert_eq!(congruences(&cyclic_group(4), 6).unwrap().len(), 3);
        assert_eq!(congruences(&cyclic_group(5), 6).unwrap().len(), 2);
        let one = FiniteAlgebra::new(vec!["e".into()], vec![]).unwrap();
        assert_eq!(congruences(&one, 6).unwrap().len(), 1);
        assert_eq!(
            congruences(&boolean_algebra(3), 6),
            Err(DeductionError::CapExceeded { size: 8, cap: 6 })
        );
        // the bare 2-element semilattice has both partitions as congruences
        assert_eq!(congruences(&meet_semilattice2(), 6).unwrap().len(), 2);
    }

    #[test]
    fn regularity() {
        let b2 = boolean_algebra(1);
        assert_eq!(check_regularity(&b2, &Term::identity(), 6), Ok(None));
        let b4 = boolean_algebra(2);
        assert_eq!(check_regularity(&b4, &Term::identity(), 6), Ok(None));
        // identity and total partition differ at every class
        let s = meet_semilattice2();
        assert_eq!(check_regularity(&s, &Term::identity(), 6), Ok(None));
        // {0}{m,1} shares the class {0} of 0** with the identity
        let p = p_semilattice_chain3();
        let g = Term::unary(&p, "(star (star x))").unwrap();
        let w = check_regularity(&p, &g, 6).unwrap().unwrap();
        let gb = g.eval(&p, &[w.b]).unwrap();
        assert_eq!(w.first.class_of(gb), w.second.class_of(gb));
        assert_ne!(w.first, w.second);
        assert_eq!(w.second.to_string(), "{0}{1,2}");
    }

    #[test]
    fn correspondence_on_groups_and_boolean_algebras() {
        for n in 2..=4 {
            let z = cyclic_group(n);
            let r = check_correspondence(&z, &Term::identity(), &group_term(&z), 6).unwrap();
            assert!(r.passes(), "Z{n}: {:?}", r.failures);
            assert_eq!(r.forward_checked, n * congruences(&z, 6).unwrap().len());
        }
        for k in 1..=2 {
            let b = boolean_algebra(k);
            let r = check_correspondence(&b, &Term::identity(), &xor3(&b), 6).unwrap();
            assert!(r.passes());
            assert!(r.converse_checked > 0);
        }
        let one = FiniteAlgebra::new(vec!["e".into()], vec![]).unwrap();
        let tau = vec![Term::ternary(&one, "z").unwrap()];
        assert!(check_correspondence(&one, &Term::identity(), &tau, 6).unwrap().passes());
    }

    #[test]
    fn correspondence_requires_a_difference_system() {
        let p = p_semilattice_chain3();
        let g = Term::unary(&p, "(star (star x))").unwrap();
        assert!(matches!(
            check_correspondence(&p, &g, &xor3(&p), 6),
            Err(DeductionError::NotDifferenceSystem(_))
        ));
    }

    #[test]
    fn theta_propositions() {
        let z3 = cyclic_group(3);
        let r = check_theta_propositions(&z3, &Term::identity(), &group_term(&z3), 6).unwrap();
        assert!(r.passes());
        assert!(r.class_checked > 0 && r.preorder_checked > 0);
        let s = meet_semilattice2();
        let tau = vec![Term::ternary(&s, "(meet a b z)").unwrap()];
        assert!(check_theta_propositions(&s, &Term::identity(), &tau, 6).unwrap().passes());
    }
}
