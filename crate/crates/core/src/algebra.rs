//! The algebra of maximal antichains of a rough quotient: lattice operations
//! under `⋖`, the extension operations `δ` and `ρ`, the modal operators `□`
//! and `◇`, general complements, translations and filter classes.
//!
//! All operation tables are computed once on construction.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::antichain::{build_ac_lattice, maximal_antichains_within, Antichain, AntichainLattice};
use crate::lattice::{verify_reconstruction, BoundedLattice, LatticeError};
use crate::quotient::QuotientPoset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AcError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("rough object index {0} out of range")]
    UnknownObject(usize),
    #[error("x ⊕ y is undefined at ({0}, {1}): a needed pseudo complement does not exist")]
    UndefinedXor(usize, usize),
}

/// Which clause of the case definition produced a `δ` or `ρ` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionCase {
    /// `χ(α,β) = {α,β}`.
    TwoExtensions,
    /// Unique optimiser of `|ξ ∩ β|`.
    Unique,
    /// Unique optimiser of `(|ξ ∩ β|, |ξ ∩ α|)`.
    Lexicographic,
    /// No unique optimiser; the default argument is returned.
    Fallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplementKind {
    /// Objects not related to the member by `⋐` either way.
    ClassA,
    /// Objects differing from the member in lower or upper approximation.
    Light,
    /// Objects differing in lower approximation or in `uu`.
    UU,
}

impl ComplementKind {
    pub const ALL: [ComplementKind; 3] = [ComplementKind::ClassA, ComplementKind::Light, ComplementKind::UU];
}

/// Unary maps `σ` on the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Translation {
    Join(usize),
    Meet(usize),
    Rho(usize),
    Delta(usize),
    Box,
    Diamond,
    /// `(x ⊕ a) ⊕ b`
    T(usize, usize),
    /// `(a ⊕ b) ⊕ x`
    TPlus(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterIdealKind {
    LatticeFilter,
    LatticeIdeal,
    LDFilter,
    LDIdeal,
    VEFilter,
    VEIdeal,
}

impl FilterIdealKind {
    pub const ALL: [FilterIdealKind; 6] = [
        FilterIdealKind::LatticeFilter,
        FilterIdealKind::LatticeIdeal,
        FilterIdealKind::LDFilter,
        FilterIdealKind::LDIdeal,
        FilterIdealKind::VEFilter,
        FilterIdealKind::VEIdeal,
    ];

    fn is_filter(self) -> bool {
        matches!(
            self,
            FilterIdealKind::LatticeFilter | FilterIdealKind::LDFilter | FilterIdealKind::VEFilter
        )
    }
}

/// First reason a subset fails a filter/ideal class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SublatticeViolation {
    Empty,
    NotUpClosed { member: usize, above: usize },
    NotDownClosed { member: usize, below: usize },
    NotMeetClosed(usize, usize),
    NotJoinClosed(usize, usize),
    NotBoxClosed(usize),
    NotDiamondClosed(usize),
    NotRhoClosed { xi: usize, member: usize },
    NotDeltaClosed { xi: usize, member: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupoidIdentity {
    /// `δ(α,α) = α`
    DeltaIdempotent,
    /// `ρ(α,α) = α`
    RhoIdempotent,
    /// `δ(α,β) ∩ β ⊆ δ(δ(α,β),β) ∩ β`
    DeltaIntersectionGrows,
    /// `δ(δ(α,β),β) = δ(α,β)`
    DeltaAbsorbs,
    /// `ρ(ρ(α,β),β) ∩ β ⊆ ρ(α,β) ∩ β`
    RhoIntersectionShrinks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupoidViolation {
    pub identity: GroupoidIdentity,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModalLaw {
    BoxMonotone,
    DiamondMonotone,
    BoxBelow,
    DiamondAbove,
    BoxZero,
    DiamondOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModalViolation {
    pub law: ModalLaw,
    pub alpha: usize,
    pub beta: Option<usize>,
}

/// A range of `□` or `◇` with the order induced from the carrier.
#[derive(Debug, Clone)]
pub struct RangeLattice {
    pub elements: Vec<usize>,
    pub lattice: BoundedLattice,
}

/// Comparison of the irreducibles of `R(◇)` with the antichains built
/// directly from granules: `a_set` from merging two granules into the
/// upper approximation of their union, `c_set` the two-element maximal
/// antichains of upper approximations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeDecomposition {
    pub a_set: Vec<usize>,
    pub c_set: Vec<usize>,
    pub join_irreducibles: Vec<usize>,
    pub meet_irreducibles: Vec<usize>,
}

impl RangeDecomposition {
    pub fn matches(&self) -> bool {
        self.a_set == self.join_irreducibles && self.c_set == self.meet_irreducibles
    }
}

#[derive(Debug, Clone)]
pub struct AcAlgebra {
    quotient: QuotientPoset,
    carrier: AntichainLattice,
    members: Vec<FixedBitSet>,
    delta: Vec<Vec<usize>>,
    rho: Vec<Vec<usize>>,
    boxes: Vec<usize>,
    diamonds: Vec<usize>,
}

impl AcAlgebra {
    pub fn new(quotient: QuotientPoset) -> Result<Self, AcError> {
        let carrier = build_ac_lattice(quotient.order())?;
        let members = carrier
            .antichains()
            .iter()
            .map(|a| a.to_bitset(quotient.len()))
            .collect();
        let mut alg = Self {
            quotient,
            carrier,
            members,
            delta: Vec::new(),
            rho: Vec::new(),
            boxes: Vec::new(),
            diamonds: Vec::new(),
        };
        let m = alg.len();
        alg.delta = (0..m)
            .map(|a| (0..m).map(|b| alg.delta_case(a, b).0).collect())
            .collect();
        alg.rho = (0..m)
            .map(|a| (0..m).map(|b| alg.rho_case(a, b).0).collect())
            .collect();
        alg.boxes = (0..m).map(|a| alg.modal(a, true)).collect();
        alg.diamonds = (0..m).map(|a| alg.modal(a, false)).collect();
        Ok(alg)
    }

    pub fn quotient(&self) -> &QuotientPoset {
        &self.quotient
    }

    pub fn lattice(&self) -> &BoundedLattice {
        self.carrier.lattice()
    }

    pub fn antichains(&self) -> &[Antichain] {
        self.carrier.antichains()
    }

    pub fn antichain(&self, i: usize) -> &Antichain {
        self.carrier.antichain(i)
    }

    pub fn index_of(&self, a: &Antichain) -> Option<usize> {
        self.carrier.index_of(a)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn zero(&self) -> usize {
        self.lattice().zero()
    }

    pub fn one(&self) -> usize {
        self.lattice().one()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice().leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice().join(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice().meet(a, b)
    }

    pub fn delta(&self, a: usize, b: usize) -> usize {
        self.delta[a][b]
    }

    pub fn rho(&self, a: usize, b: usize) -> usize {
        self.rho[a][b]
    }

    pub fn box_op(&self, a: usize) -> usize {
        self.boxes[a]
    }

    pub fn diamond(&self, a: usize) -> usize {
        self.diamonds[a]
    }

    pub fn delta_table(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn rho_table(&self) -> &[Vec<usize>] {
        &self.rho
    }

    pub fn box_table(&self) -> &[usize] {
        &self.boxes
    }

    pub fn diamond_table(&self) -> &[usize] {
        &self.diamonds
    }

    /// Member list using the quotient's `(l, u)` labels.
    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self
            .antichain(i)
            .elements()
            .iter()
            .map(|&o| self.quotient.label(o))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    fn common(&self, a: usize, b: usize) -> usize {
        self.members[a].intersection(&self.members[b]).count()
    }

    /// `χ(α,β)`: maximal antichains containing `α ∩ β`.
    pub fn chi(&self, a: usize, b: usize) -> Vec<usize> {
        let mut core = self.members[a].clone();
        core.intersect_with(&self.members[b]);
        (0..self.len())
            .filter(|&x| core.is_subset(&self.members[x]))
            .collect()
    }

    /// `δ(α,β)` and the clause that produced it. Candidates are the
    /// extensions other than `β`; the first clause takes the unique maximiser
    /// of `|ξ ∩ β|`, the second the unique maximiser of `(|ξ ∩ β|, |ξ ∩ α|)`,
    /// otherwise `β`.
    pub fn delta_case(&self, a: usize, b: usize) -> (usize, ExtensionCase) {
        let candidates: Vec<usize> = self.chi(a, b).into_iter().filter(|&x| x != b).collect();
        if let Some(x) = unique_best(&candidates, |x| self.common(x, b), true) {
            return (x, ExtensionCase::Unique);
        }
        let lex = |x| (self.common(x, b), self.common(x, a));
        if let Some(x) = unique_best(&candidates, lex, true) {
            return (x, ExtensionCase::Lexicographic);
        }
        (b, ExtensionCase::Fallback)
    }

    /// `ρ(α,β)` and the clause that produced it: `α` when `χ(α,β) = {α,β}`,
    /// else the unique minimiser of `|ξ ∩ β|` over extensions other than `β`,
    /// else the unique minimiser of `(|ξ ∩ β|, |ξ ∩ α|)` over extensions
    /// other than `α, β`, else `α`.
    pub fn rho_case(&self, a: usize, b: usize) -> (usize, ExtensionCase) {
        let chi = self.chi(a, b);
        if chi.iter().all(|&x| x == a || x == b) {
            return (a, ExtensionCase::TwoExtensions);
        }
        let candidates: Vec<usize> = chi.iter().copied().filter(|&x| x != b).collect();
        if let Some(x) = unique_best(&candidates, |x| self.common(x, b), false) {
            return (x, ExtensionCase::Unique);
        }
        let rest: Vec<usize> = candidates.into_iter().filter(|&x| x != a).collect();
        let lex = |x| (self.common(x, b), self.common(x, a));
        if let Some(x) = unique_best(&rest, lex, false) {
            return (x, ExtensionCase::Lexicographic);
        }
        (a, ExtensionCase::Fallback)
    }

    /// `γ(α)`: the classes of the members' lower approximations.
    pub fn gamma(&self, a: usize) -> Antichain {
        self.image(a, true)
    }

    /// `π(α)`: the classes of the members' upper approximations.
    pub fn pi(&self, a: usize) -> Antichain {
        self.image(a, false)
    }

    fn image(&self, a: usize, lower: bool) -> Antichain {
        let q = &self.quotient;
        Antichain::new(
            self.antichain(a)
                .elements()
                .iter()
                .map(|&o| if lower { q.lower_class(o) } else { q.upper_class(o) })
                .collect(),
        )
    }

    /// `γ*(α)` (or `π*(α)`): the maximal antichains containing some maximal
    /// antichain of the subposet `γ(α)`.
    pub fn star(&self, a: usize, lower: bool) -> Vec<usize> {
        let image = self.image(a, lower);
        let plus = maximal_antichains_within(self.quotient.order(), image.elements());
        let plus: Vec<FixedBitSet> = plus.iter().map(|p| p.to_bitset(self.quotient.len())).collect();
        (0..self.len())
            .filter(|&x| plus.iter().any(|p| p.is_subset(&self.members[x])))
            .collect()
    }

    fn modal(&self, a: usize, lower: bool) -> usize {
        let star = self.star(a, lower);
        assert!(!star.is_empty(), "every antichain extends to a maximal one");
        if lower {
            self.lattice().meet_all(star)
        } else {
            self.lattice().join_all(star)
        }
    }

    pub fn is_lower_pure(&self, a: usize) -> bool {
        self.quotient.order().is_antichain(self.gamma(a).elements())
    }

    pub fn is_upper_pure(&self, a: usize) -> bool {
        self.quotient.order().is_antichain(self.pi(a).elements())
    }

    pub fn is_pure(&self, a: usize) -> bool {
        self.is_lower_pure(a) && self.is_upper_pure(a)
    }

    /// `X^c` for a single rough object, in ascending object order.
    pub fn member_complement(&self, x: usize, kind: ComplementKind) -> Vec<usize> {
        let q = &self.quotient;
        let ox = q.object(x);
        (0..q.len())
            .filter(|&w| {
                let ow = q.object(w);
                match kind {
                    ComplementKind::ClassA => !q.leq(x, w) && !q.leq(w, x),
                    ComplementKind::Light => ow.lower != ox.lower || ow.upper != ox.upper,
                    ComplementKind::UU => {
                        ow.lower != ox.lower || q.upper_upper(w) != q.upper_upper(x)
                    }
                }
            })
            .collect()
    }

    /// Member complements concatenated in sequence order, first occurrence
    /// kept.
    pub fn pooled_complement(&self, sequence: &[usize], kind: ComplementKind) -> Result<Vec<usize>, AcError> {
        let mut seen = vec![false; self.quotient.len()];
        let mut pool = Vec::new();
        for &x in sequence {
            if x >= self.quotient.len() {
                return Err(AcError::UnknownObject(x));
            }
            for w in self.member_complement(x, kind) {
                if !seen[w] {
                    seen[w] = true;
                    pool.push(w);
                }
            }
        }
        Ok(pool)
    }

    /// The maximal antichain containing the pooled complement, when the pool
    /// is an antichain with exactly one such extension.
    pub fn complement_partial(&self, a: usize, kind: ComplementKind) -> Option<usize> {
        let pool = self
            .pooled_complement(self.antichain(a).elements(), kind)
            .expect("antichain members are objects");
        if !self.quotient.order().is_antichain(&pool) {
            return None;
        }
        let mut ext = self.extensions(&pool).into_iter();
        match (ext.next(), ext.next()) {
            (Some(x), None) => Some(x),
            _ => None,
        }
    }

    fn extensions(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| set.iter().all(|&o| self.members[x].contains(o)))
            .collect()
    }

    /// Greedy split of the pool into antichain runs, in order.
    pub fn complement_runs(&self, sequence: &[usize], kind: ComplementKind) -> Result<Vec<Vec<usize>>, AcError> {
        let order = self.quotient.order();
        let mut runs: Vec<Vec<usize>> = Vec::new();
        for w in self.pooled_complement(sequence, kind)? {
            match runs.last_mut() {
                Some(run) if run.iter().all(|&v| !order.comparable(v, w)) => run.push(w),
                _ => runs.push(vec![w]),
            }
        }
        Ok(runs)
    }

    /// Totalised complement of a sequence of rough objects: pool the member
    /// complements, split into antichain runs, take every maximal antichain
    /// containing a run, and join them all (`0` for an empty pool).
    pub fn complement_total(&self, sequence: &[usize], kind: ComplementKind) -> Result<usize, AcError> {
        let ext = self.run_extensions(sequence, kind)?;
        Ok(self.lattice().join_all(ext))
    }

    /// As [`AcAlgebra::complement_total`], with the extensions joined in an
    /// order shuffled by `seed`.
    pub fn complement_total_shuffled(
        &self,
        sequence: &[usize],
        kind: ComplementKind,
        seed: u64,
    ) -> Result<usize, AcError> {
        let mut ext = self.run_extensions(sequence, kind)?;
        ext.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Ok(self.lattice().join_all(ext))
    }

    fn run_extensions(&self, sequence: &[usize], kind: ComplementKind) -> Result<Vec<usize>, AcError> {
        Ok(self
            .complement_runs(sequence, kind)?
            .iter()
            .flat_map(|run| self.extensions(run))
            .collect())
    }

    /// The full graph of `σ` over the carrier.
    pub fn translate(&self, t: Translation) -> Result<Vec<usize>, AcError> {
        let l = self.lattice();
        let xor = |x: usize, y: usize| l.xor_term(x, y).ok_or(AcError::UndefinedXor(x, y));
        (0..self.len())
            .map(|x| match t {
                Translation::Join(a) => Ok(self.join(a, x)),
                Translation::Meet(a) => Ok(self.meet(a, x)),
                Translation::Rho(a) => Ok(self.rho(a, x)),
                Translation::Delta(a) => Ok(self.delta(a, x)),
                Translation::Box => Ok(self.box_op(x)),
                Translation::Diamond => Ok(self.diamond(x)),
                Translation::T(a, b) => xor(xor(x, a)?, b),
                Translation::TPlus(a, b) => xor(xor(a, b)?, x),
            })
            .collect()
    }

    pub fn principal_filter(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq(a, x)).collect()
    }

    pub fn principal_ideal(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq(x, a)).collect()
    }

    /// Checks `k` against the lattice filter/ideal axioms and the closure
    /// conditions of `kind`.
    pub fn classify_sublattice(&self, k: &[usize], kind: FilterIdealKind) -> Result<(), SublatticeViolation> {
        let n = self.len();
        let mut inside = vec![false; n];
        for &x in k {
            inside[x] = true;
        }
        if k.is_empty() {
            return Err(SublatticeViolation::Empty);
        }
        for &a in k {
            for x in 0..n {
                if inside[x] {
                    continue;
                }
                if kind.is_filter() && self.leq(a, x) {
                    return Err(SublatticeViolation::NotUpClosed { member: a, above: x });
                }
                if !kind.is_filter() && self.leq(x, a) {
                    return Err(SublatticeViolation::NotDownClosed { member: a, below: x });
                }
            }
            for &b in k {
                if kind.is_filter() && !inside[self.meet(a, b)] {
                    return Err(SublatticeViolation::NotMeetClosed(a, b));
                }
                if !kind.is_filter() && !inside[self.join(a, b)] {
                    return Err(SublatticeViolation::NotJoinClosed(a, b));
                }
            }
        }
        match kind {
            FilterIdealKind::LDFilter | FilterIdealKind::LDIdeal => {
                for &a in k {
                    if !inside[self.box_op(a)] {
                        return Err(SublatticeViolation::NotBoxClosed(a));
                    }
                    if !inside[self.diamond(a)] {
                        return Err(SublatticeViolation::NotDiamondClosed(a));
                    }
                }
            }
            FilterIdealKind::VEFilter | FilterIdealKind::VEIdeal => {
                for xi in 0..n {
                    for &a in k {
                        if !inside[self.rho(xi, a)] {
                            return Err(SublatticeViolation::NotRhoClosed { xi, member: a });
                        }
                        if !inside[self.delta(xi, a)] {
                            return Err(SublatticeViolation::NotDeltaClosed { xi, member: a });
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Every lattice filter (all are principal in a finite lattice) that
    /// satisfies `kind`, as sorted member lists.
    pub fn filters_of_kind(&self, kind: FilterIdealKind) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|a| {
                if kind.is_filter() {
                    self.principal_filter(a)
                } else {
                    self.principal_ideal(a)
                }
            })
            .filter(|k| self.classify_sublattice(k, kind).is_ok())
            .collect()
    }

    /// Ranges of `□` and `◇` with the induced order.
    pub fn range_lattices(&self) -> Result<(RangeLattice, RangeLattice), LatticeError> {
        let build = |table: &[usize]| -> Result<RangeLattice, LatticeError> {
            let mut elements = table.to_vec();
            elements.sort_unstable();
            elements.dedup();
            let lattice = BoundedLattice::from_order(self.lattice().induced_order(&elements))?;
            Ok(RangeLattice { elements, lattice })
        };
        Ok((build(&self.boxes)?, build(&self.diamonds)?))
    }

    /// Both ranges, each checked to be rebuilt from its irreducibles.
    pub fn verify_range_reconstruction(&self) -> Result<(), LatticeError> {
        let (boxes, diamonds) = self.range_lattices()?;
        verify_reconstruction(&boxes.lattice)?;
        verify_reconstruction(&diamonds.lattice)
    }

    /// All failures of the groupoid identities for `δ` and `ρ`.
    pub fn groupoid_violations(&self) -> Vec<GroupoidViolation> {
        let mut out = Vec::new();
        let mut push = |identity, alpha, beta| out.push(GroupoidViolation { identity, alpha, beta });
        let meet_b = |x: usize, b: usize| self.members[x].intersection(&self.members[b]).collect::<FixedBitSet>();
        for a in 0..self.len() {
            if self.delta(a, a) != a {
                push(GroupoidIdentity::DeltaIdempotent, a, a);
            }
            if self.rho(a, a) != a {
                push(GroupoidIdentity::RhoIdempotent, a, a);
            }
            for b in 0..self.len() {
                let d = self.delta(a, b);
                let dd = self.delta(d, b);
                if !meet_b(d, b).is_subset(&meet_b(dd, b)) {
                    push(GroupoidIdentity::DeltaIntersectionGrows, a, b);
                }
                if dd != d {
                    push(GroupoidIdentity::DeltaAbsorbs, a, b);
                }
                let r = self.rho(a, b);
                if !meet_b(self.rho(r, b), b).is_subset(&meet_b(r, b)) {
                    push(GroupoidIdentity::RhoIntersectionShrinks, a, b);
                }
            }
        }
        out
    }

    /// All failures of monotonicity, the sandwich `□α ⋖ α ⋖ ◇α`, `□0 = 0`
    /// and `◇1 = 1`.
    pub fn modal_violations(&self) -> Vec<ModalViolation> {
        let mut out = Vec::new();
        let mut push = |law, alpha, beta| out.push(ModalViolation { law, alpha, beta });
        for a in 0..self.len() {
            if !self.leq(self.box_op(a), a) {
                push(ModalLaw::BoxBelow, a, None);
            }
            if !self.leq(a, self.diamond(a)) {
                push(ModalLaw::DiamondAbove, a, None);
            }
            for b in 0..self.len() {
                if self.leq(a, b) {
                    if !self.leq(self.box_op(a), self.box_op(b)) {
                        push(ModalLaw::BoxMonotone, a, Some(b));
                    }
                    if !self.leq(self.diamond(a), self.diamond(b)) {
                        push(ModalLaw::DiamondMonotone, a, Some(b));
                    }
                }
            }
        }
        if self.box_op(self.zero()) != self.zero() {
            push(ModalLaw::BoxZero, self.zero(), None);
        }
        if self.diamond(self.one()) != self.one() {
            push(ModalLaw::DiamondOne, self.one(), None);
        }
        out
    }

    /// A triple with `α ⋖ β`, `α ⋖ γ` but not `α ⋖ δ(β,γ)`.
    pub fn nonimplication_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| self.leq(a, b) && self.leq(a, c) && !self.leq(a, self.delta(b, c)))
    }

    /// Whether every element has a pseudo complement.
    pub fn pseudo_complement_witness(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.lattice().pseudo_complement(x).is_none())
    }

    /// Builds the granule-derived sets and the irreducibles of `R(◇)`, all as
    /// carrier indices.
    pub fn range_decomposition(&self) -> Result<RangeDecomposition, LatticeError> {
        let q = &self.quotient;
        let space = q.space();
        let granules = space.granulation().granules();
        let class = |s| q.class_of(s).expect("subsets of the universe");
        let mut a_set = Vec::new();
        for (i, &g1) in granules.iter().enumerate() {
            for &g2 in &granules[i + 1..] {
                let merged = space.upper(g1.union(g2)).expect("subsets of the universe");
                let mut objs: Vec<usize> = granules
                    .iter()
                    .filter(|&&g| g != g1 && g != g2)
                    .map(|&g| class(g))
                    .collect();
                objs.push(class(merged));
                let candidate = Antichain::new(objs);
                if let Some(k) = self.index_of(&candidate) {
                    a_set.push(k);
                }
            }
        }
        a_set.sort_unstable();
        a_set.dedup();
        let uppers: Vec<usize> = (0..q.len()).map(|o| q.upper_class(o)).collect();
        let c_set = (0..self.len())
            .filter(|&k| {
                let ac = self.antichain(k);
                ac.len() == 2 && ac.elements().iter().all(|o| uppers.contains(o))
            })
            .collect();
        let (_, diamonds) = self.range_lattices()?;
        let lift = |xs: Vec<usize>| xs.into_iter().map(|i| diamonds.elements[i]).collect();
        Ok(RangeDecomposition {
            a_set,
            c_set,
            join_irreducibles: lift(diamonds.lattice.join_irreducibles()),
            meet_irreducibles: lift(diamonds.lattice.meet_irreducibles()),
        })
    }
}

fn unique_best<K: Ord>(candidates: &[usize], key: impl Fn(usize) -> K, maximise: bool) -> Option<usize> {
    let keys: Vec<K> = candidates.iter().map(|&c| key(c)).collect();
    let best = if maximise { keys.iter().max()? } else { keys.iter().min()? };
    let mut winners = candidates.iter().zip(&keys).filter(|(_, k)| *k == best);
    match (winners.next(), winners.next()) {
        (Some((&c, _)), None) => Some(c),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quotient::build_quotient;

    fn algebra(space: crate::space::GranularOperatorSpace) -> AcAlgebra {
        AcAlgebra::new(build_quotient(&space).unwrap()).unwrap()
    }

    fn ac(alg: &AcAlgebra, members: &[usize]) -> usize {
        alg.index_of(&Antichain::new(members.to_vec())).unwrap()
    }

    // E0 objects: 0 = (∅,∅), 1 = B = (∅,{1,2}), 2 = (S,S); carrier is the
    // chain {0} < {B} < {S}.

    #[test]
    fn chi_examples() {
        let e0 = algebra(fixtures::e0());
        let (b, s) = (ac(&e0, &[1]), ac(&e0, &[2]));
        assert_eq!(e0.chi(b, s), vec![0, 1, 2]);
        assert_eq!(e0.chi(b, b), vec![b]);
        let v = algebra(fixtures::vee());
        assert_eq!(v.chi(0, 1), vec![0, 1]);
    }

    #[test]
    fn delta_and_rho_on_e0() {
        let e0 = algebra(fixtures::e0());
        let (zero, b, s) = (ac(&e0, &[0]), ac(&e0, &[1]), ac(&e0, &[2]));
        assert_eq!(e0.rho_case(b, s), (zero, ExtensionCase::Lexicographic));
        // the unique maximiser of |ξ ∩ β| is not available, the
        // lexicographic one picks the member sharing α
        assert_eq!(e0.delta_case(b, s), (b, ExtensionCase::Lexicographic));
        for a in 0..3 {
            assert_eq!(e0.delta(a, a), a);
            assert_eq!(e0.rho(a, a), a);
        }
        assert!(e0.groupoid_violations().is_empty());
    }

    #[test]
    fn groupoid_identities_hold_on_fixtures() {
        for space in [fixtures::e1(), fixtures::vee(), fixtures::discrete(3), fixtures::single_object()] {
            assert_eq!(algebra(space).groupoid_violations(), vec![]);
        }
    }

    #[test]
    fn box_and_diamond_on_e0() {
        let e0 = algebra(fixtures::e0());
        let b = ac(&e0, &[1]);
        assert_eq!(e0.box_op(b), e0.zero());
        assert_eq!(e0.diamond(b), e0.one());
        assert_eq!(e0.box_op(e0.one()), e0.one());
        assert!(e0.modal_violations().is_empty());
        assert!(e0.is_lower_pure(b));
        assert!(e0.is_pure(e0.one()));
    }

    #[test]
    fn modal_laws_and_purity_on_e1() {
        let e1 = algebra(fixtures::e1());
        assert!(e1.modal_violations().is_empty());
        let q = e1.quotient();
        let one = q.class_of(q.space().subset_of(&["1"])).unwrap();
        let three = q.class_of(q.space().subset_of(&["3"])).unwrap();
        // (∅,{1,2}) next to ({3},{3}): their lowers ∅ and {3} are comparable
        let impure = (0..e1.len())
            .find(|&k| e1.antichain(k).contains(one) && e1.antichain(k).contains(three))
            .unwrap();
        assert!(!e1.is_lower_pure(impure));
    }

    #[test]
    fn discrete_space_modalities_are_identity() {
        let d = algebra(fixtures::discrete(2));
        for a in 0..d.len() {
            assert_eq!(d.box_op(a), a);
            assert_eq!(d.diamond(a), a);
        }
        let (r_box, r_dia) = d.range_lattices().unwrap();
        assert_eq!(r_box.elements.len(), d.len());
        assert_eq!(r_dia.elements.len(), d.len());
    }

    #[test]
    fn complements_on_e0() {
        let e0 = algebra(fixtures::e0());
        let b = ac(&e0, &[1]);
        assert_eq!(e0.member_complement(1, ComplementKind::Light), vec![0, 2]);
        assert_eq!(e0.complement_partial(b, ComplementKind::Light), None);
        assert_eq!(e0.complement_runs(&[1], ComplementKind::Light).unwrap(), vec![vec![0], vec![2]]);
        assert_eq!(e0.complement_total(&[1], ComplementKind::Light), Ok(e0.one()));
        assert_eq!(e0.complement_total(&[], ComplementKind::Light), Ok(e0.zero()));
        assert_eq!(e0.complement_total(&[7], ComplementKind::Light), Err(AcError::UnknownObject(7)));
    }

    #[test]
    fn class_a_complement_under_rough_parthood() {
        let v = algebra(fixtures::vee());
        // o lies below both a and b, so nothing is unrelated to it
        assert!(v.member_complement(0, ComplementKind::ClassA).is_empty());
        assert_eq!(v.complement_partial(0, ComplementKind::ClassA), None);
        assert_eq!(v.complement_total(&[0], ComplementKind::ClassA), Ok(v.zero()));
        // a and b are unrelated to each other
        assert_eq!(v.member_complement(1, ComplementKind::ClassA), vec![2]);
        assert_eq!(v.complement_partial(1, ComplementKind::ClassA), Some(1));
    }

    #[test]
    fn complement_total_ignores_join_order() {
        let e1 = algebra(fixtures::e1());
        for kind in ComplementKind::ALL {
            for k in 0..e1.len() {
                let seq = e1.antichain(k).elements().to_vec();
                let base = e1.complement_total(&seq, kind).unwrap();
                for seed in 0..4 {
                    assert_eq!(e1.complement_total_shuffled(&seq, kind, seed).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn translations() {
        let e0 = algebra(fixtures::e0());
        let b = ac(&e0, &[1]);
        let join = e0.translate(Translation::Join(b)).unwrap();
        assert_eq!(join[e0.zero()], b);
        assert_eq!(join[e0.one()], e0.one());
        let mut range = join.clone();
        range.sort_unstable();
        range.dedup();
        assert_eq!(range, e0.principal_filter(b));
        let mut meet = e0.translate(Translation::Meet(b)).unwrap();
        meet.sort_unstable();
        meet.dedup();
        assert_eq!(meet, e0.principal_ideal(b));
        assert_eq!(e0.translate(Translation::Box).unwrap(), vec![0, 0, 2]);
        // the 3-chain is pseudo complemented, so ⊕ terms are total
        assert!(e0.translate(Translation::T(b, e0.one())).is_ok());
    }

    #[test]
    fn sublattice_classes_on_e0() {
        let e0 = algebra(fixtures::e0());
        let b = ac(&e0, &[1]);
        let k = e0.principal_filter(b);
        assert_eq!(e0.classify_sublattice(&k, FilterIdealKind::LatticeFilter), Ok(()));
        assert_eq!(
            e0.classify_sublattice(&k, FilterIdealKind::LDFilter),
            Err(SublatticeViolation::NotBoxClosed(b))
        );
        let all: Vec<usize> = (0..e0.len()).collect();
        for kind in FilterIdealKind::ALL {
            assert_eq!(e0.classify_sublattice(&all, kind), Ok(()));
        }
        assert_eq!(
            e0.classify_sublattice(&[b], FilterIdealKind::LatticeFilter),
            Err(SublatticeViolation::NotUpClosed { member: b, above: e0.one() })
        );
        assert_eq!(e0.classify_sublattice(&[], FilterIdealKind::LatticeIdeal), Err(SublatticeViolation::Empty));
    }

    #[test]
    fn ve_filters_are_diamond_closed() {
        for space in [fixtures::e0(), fixtures::e1(), fixtures::vee()] {
            let alg = algebra(space);
            for k in alg.filters_of_kind(FilterIdealKind::VEFilter) {
                assert!(k.iter().all(|&a| k.contains(&alg.diamond(a))));
            }
        }
    }

    #[test]
    fn ranges_on_e0_and_e1() {
        let e0 = algebra(fixtures::e0());
        let (r_box, r_dia) = e0.range_lattices().unwrap();
        assert_eq!(r_box.elements, vec![e0.zero(), e0.one()]);
        assert_eq!(r_dia.elements, vec![e0.zero(), e0.one()]);
        let e1 = algebra(fixtures::e1());
        assert_eq!(e1.verify_range_reconstruction(), Ok(()));
        let (_, r_dia) = e1.range_lattices().unwrap();
        assert_eq!(r_dia.elements.len(), 7);
    }

    #[test]
    fn pseudo_complements_exist_on_partition_spaces() {
        for space in [fixtures::e0(), fixtures::e1(), fixtures::discrete(3)] {
            assert_eq!(algebra(space).pseudo_complement_witness(), None);
        }
    }
}
