//! Finite granular operator spaces.
//!
//! A space is a finite universe together with a granulation and a pair of
//! approximation operators `l` and `u` on its powerset. The operators are
//! either derived from the granules (union of granules included in / meeting
//! a set), from a relation whose neighbourhoods become the granules, or given
//! as an explicit table. Every operator is tabulated once at construction, so
//! `lower` and `upper` are lookups afterwards.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::subset::{full_mask, Subset, MAX_UNIVERSE};

/// Default bound on the universe size; quotient construction scans the powerset.
pub const DEFAULT_UNIVERSE_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("universe has {size} elements, cap is {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
    #[error("duplicate universe element `{0}`")]
    DuplicateElement(String),
    #[error("subset belongs to a universe of size {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("granule #{0} is empty")]
    EmptyGranule(usize),
    #[error("granule #{0} duplicates an earlier granule")]
    DuplicateGranule(usize),
    #[error("relation is not a valid {kind}: {reason}")]
    InvalidRelation { kind: RelationKind, reason: String },
    #[error("relation pair ({0}, {1}) is out of range")]
    PairOutOfRange(usize, usize),
    #[error("approximation table has no row for {missing:?}")]
    IncompleteTable { missing: Subset },
    #[error("approximation table has {found} rows, expected {expected}")]
    TableSize { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// Reflexive, symmetric and transitive.
    Equivalence,
    /// Reflexive and symmetric.
    Tolerance,
    /// Reflexive.
    QuasiEquivalence,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Equivalence => "equivalence",
            RelationKind::Tolerance => "tolerance",
            RelationKind::QuasiEquivalence => "quasi-equivalence",
        })
    }
}

/// How the approximation operators were obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ApproximationMode {
    /// `l(A)` is the union of granules included in `A`, `u(A)` the union of
    /// granules meeting `A`.
    GranuleUnion,
    /// Granules are the successor neighbourhoods `R(x) = {y : x R y}` and the
    /// operators are the granule unions over them.
    RelationInduced {
        kind: RelationKind,
        pairs: Vec<(usize, usize)>,
    },
    /// `(l, u)` given for every subset, indexed by bitmask.
    ExplicitTable(Vec<(Subset, Subset)>),
}

/// A duplicate-free family of nonempty subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Granulation {
    granules: Vec<Subset>,
}

impl Granulation {
    pub fn new(universe: usize, granules: Vec<Subset>) -> Result<Self, SpaceError> {
        let mut seen = HashSet::new();
        for (i, g) in granules.iter().enumerate() {
            if g.universe_len() != universe {
                return Err(SpaceError::SizeMismatch {
                    expected: universe,
                    found: g.universe_len(),
                });
            }
            if g.is_empty() {
                return Err(SpaceError::EmptyGranule(i));
            }
            if !seen.insert(g.bits()) {
                return Err(SpaceError::DuplicateGranule(i));
            }
        }
        Ok(Self { granules })
    }

    pub fn granules(&self) -> &[Subset] {
        &self.granules
    }

    pub fn len(&self) -> usize {
        self.granules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.granules.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GranularOperatorSpace {
    universe: Vec<String>,
    granulation: Granulation,
    mode: ApproximationMode,
    lower_table: Vec<u64>,
    upper_table: Vec<u64>,
}

impl GranularOperatorSpace {
    pub fn granule_union(
        universe: Vec<String>,
        granules: Vec<Subset>,
        cap: usize,
    ) -> Result<Self, SpaceError> {
        let n = check_universe(&universe, cap)?;
        let granulation = Granulation::new(n, granules)?;
        Ok(Self::tabulate(universe, granulation, ApproximationMode::GranuleUnion))
    }

    pub fn from_relation(
        universe: Vec<String>,
        kind: RelationKind,
        pairs: Vec<(usize, usize)>,
        cap: usize,
    ) -> Result<Self, SpaceError> {
        let n = check_universe(&universe, cap)?;
        let mut rel = vec![vec![false; n]; n];
        for &(x, y) in &pairs {
            if x >= n || y >= n {
                return Err(SpaceError::PairOutOfRange(x, y));
            }
            rel[x][y] = true;
        }
        validate_relation(kind, &rel)?;
        let mut granules = Vec::new();
        let mut seen = HashSet::new();
        for row in &rel {
            let g = Subset::from_indices(n, (0..n).filter(|&y| row[y]));
            if seen.insert(g.bits()) {
                granules.push(g);
            }
        }
        let granulation = Granulation::new(n, granules)?;
        Ok(Self::tabulate(
            universe,
            granulation,
            ApproximationMode::RelationInduced { kind, pairs },
        ))
    }

    /// Builds a space from an explicit `(l, u)` table, indexed by subset
    /// bitmask. No axioms are inferred; see [`check_space_axioms`].
    pub fn from_table(
        universe: Vec<String>,
        granules: Vec<Subset>,
        table: Vec<(Subset, Subset)>,
        cap: usize,
    ) -> Result<Self, SpaceError> {
        let n = check_universe(&universe, cap)?;
        let granulation = Granulation::new(n, granules)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(SpaceError::TableSize {
                expected,
                found: table.len(),
            });
        }
        for (l, u) in &table {
            for s in [l, u] {
                if s.universe_len() != n {
                    return Err(SpaceError::SizeMismatch {
                        expected: n,
                        found: s.universe_len(),
                    });
                }
            }
        }
        Ok(Self::tabulate(
            universe,
            granulation,
            ApproximationMode::ExplicitTable(table),
        ))
    }

    fn tabulate(universe: Vec<String>, granulation: Granulation, mode: ApproximationMode) -> Self {
        let n = universe.len();
        let size = 1usize << n;
        let (lower_table, upper_table) = match &mode {
            ApproximationMode::ExplicitTable(rows) => (
                rows.iter().map(|(l, _)| l.bits()).collect(),
                rows.iter().map(|(_, u)| u.bits()).collect(),
            ),
            _ => {
                let gs: Vec<u64> = granulation.granules().iter().map(|g| g.bits()).collect();
                let mut lower = Vec::with_capacity(size);
                let mut upper = Vec::with_capacity(size);
                for a in 0..size as u64 {
                    let mut l = 0;
                    let mut u = 0;
                    for &g in &gs {
                        if g & !a == 0 {
                            l |= g;
                        }
                        if g & a != 0 {
                            u |= g;
                        }
                    }
                    lower.push(l);
                    upper.push(u);
                }
                (lower, upper)
            }
        };
        Self {
            universe,
            granulation,
            mode,
            lower_table,
            upper_table,
        }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn granulation(&self) -> &Granulation {
        &self.granulation
    }

    pub fn mode(&self) -> &ApproximationMode {
        &self.mode
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|e| e == name)
    }

    pub fn subset<I: IntoIterator<Item = usize>>(&self, indices: I) -> Subset {
        Subset::from_indices(self.size(), indices)
    }

    /// Subset from element names. Panics on an unknown name.
    pub fn subset_of(&self, names: &[&str]) -> Subset {
        self.subset(names.iter().map(|n| {
            self.element_index(n)
                .unwrap_or_else(|| panic!("unknown element `{n}`"))
        }))
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.size())
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    fn check(&self, a: Subset) -> Result<(), SpaceError> {
        if a.universe_len() == self.size() {
            Ok(())
        } else {
            Err(SpaceError::SizeMismatch {
                expected: self.size(),
                found: a.universe_len(),
            })
        }
    }

    pub fn lower(&self, a: Subset) -> Result<Subset, SpaceError> {
        self.check(a)?;
        Ok(self.lower_unchecked(a))
    }

    pub fn upper(&self, a: Subset) -> Result<Subset, SpaceError> {
        self.check(a)?;
        Ok(self.upper_unchecked(a))
    }

    #[inline]
    pub(crate) fn lower_unchecked(&self, a: Subset) -> Subset {
        Subset::from_bits(self.size(), self.lower_table[a.bits() as usize])
    }

    #[inline]
    pub(crate) fn upper_unchecked(&self, a: Subset) -> Subset {
        Subset::from_bits(self.size(), self.upper_table[a.bits() as usize])
    }

    /// `(l(a), u(a))`.
    pub fn approximations(&self, a: Subset) -> Result<(Subset, Subset), SpaceError> {
        self.check(a)?;
        Ok((self.lower_unchecked(a), self.upper_unchecked(a)))
    }

    /// `a ⊏ b`: both approximations of `a` are included in those of `b`.
    pub fn rough_leq(&self, a: Subset, b: Subset) -> Result<bool, SpaceError> {
        let (al, au) = self.approximations(a)?;
        let (bl, bu) = self.approximations(b)?;
        Ok(al.is_subset(bl) && au.is_subset(bu))
    }

    pub fn rough_equal(&self, a: Subset, b: Subset) -> Result<bool, SpaceError> {
        Ok(self.approximations(a)? == self.approximations(b)?)
    }

    /// `a^l = a = a^u`.
    pub fn is_definite(&self, a: Subset) -> bool {
        self.lower_unchecked(a) == a && self.upper_unchecked(a) == a
    }

    /// Errors if the universe is larger than `cap`.
    pub fn ensure_cap(&self, cap: usize) -> Result<(), SpaceError> {
        if self.size() > cap {
            Err(SpaceError::UniverseTooLarge {
                size: self.size(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// Element names of a subset, in universe order.
    pub fn names(&self, a: Subset) -> Vec<String> {
        a.iter().map(|i| self.universe[i].clone()).collect()
    }

    pub fn format_subset(&self, a: Subset) -> String {
        format!("{{{}}}", self.names(a).join(","))
    }
}

fn check_universe(universe: &[String], cap: usize) -> Result<usize, SpaceError> {
    let n = universe.len();
    let limit = cap.min(MAX_UNIVERSE);
    if n > limit {
        return Err(SpaceError::UniverseTooLarge { size: n, cap: limit });
    }
    let mut seen = HashSet::new();
    for e in universe {
        if !seen.insert(e.as_str()) {
            return Err(SpaceError::DuplicateElement(e.clone()));
        }
    }
    Ok(n)
}

fn validate_relation(kind: RelationKind, rel: &[Vec<bool>]) -> Result<(), SpaceError> {
    let n = rel.len();
    let fail = |reason: String| Err(SpaceError::InvalidRelation { kind, reason });
    for x in 0..n {
        if !rel[x][x] {
            return fail(format!("not reflexive at element #{x}"));
        }
    }
    if kind == RelationKind::QuasiEquivalence {
        return Ok(());
    }
    for x in 0..n {
        for y in 0..n {
            if rel[x][y] && !rel[y][x] {
                return fail(format!("not symmetric at (#{x}, #{y})"));
            }
        }
    }
    if kind == RelationKind::Tolerance {
        return Ok(());
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if rel[x][y] && rel[y][z] && !rel[x][z] {
                    return fail(format!("not transitive at (#{x}, #{y}, #{z})"));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Axiom and admissibility checks

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `A^l ⊆ A`
    LowerContraction,
    /// `A^ll = A^l`
    LowerIdempotence,
    /// `A^u ⊆ A^uu`
    UpperIteration,
    /// `A ⊆ B → A^l ⊆ B^l`
    LowerMonotone,
    /// `A ⊆ B → A^u ⊆ B^u`
    UpperMonotone,
    /// `∅^l = ∅`
    EmptyLower,
    /// `∅^u = ∅`
    EmptyUpper,
    /// `S^l ⊆ S`
    FullLower,
    /// `S^u ⊆ S`
    FullUpper,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::LowerContraction,
        Axiom::LowerIdempotence,
        Axiom::UpperIteration,
        Axiom::LowerMonotone,
        Axiom::UpperMonotone,
        Axiom::EmptyLower,
        Axiom::EmptyUpper,
        Axiom::FullLower,
        Axiom::FullUpper,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Set(Subset),
    /// A pair `A ⊆ B`.
    Pair(Subset, Subset),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub violation: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.violation.is_none())
    }

    pub fn violation(&self, axiom: Axiom) -> Option<Witness> {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .and_then(|c| c.violation)
    }
}

/// Exhaustively checks the operator axioms over the powerset.
///
/// Monotonicity is checked on covering pairs `A ⊂ A ∪ {i}`, which generate
/// the inclusion order.
pub fn check_space_axioms(space: &GranularOperatorSpace) -> AxiomReport {
    let n = space.size();
    let l = |a: Subset| space.lower_unchecked(a);
    let u = |a: Subset| space.upper_unchecked(a);
    let first = |pred: &dyn Fn(Subset) -> bool| Subset::powerset(n).find(|&a| !pred(a));

    let mut checks = Vec::with_capacity(9);
    let mut push = |axiom, violation| checks.push(AxiomCheck { axiom, violation });

    push(
        Axiom::LowerContraction,
        first(&|a| l(a).is_subset(a)).map(Witness::Set),
    );
    push(
        Axiom::LowerIdempotence,
        first(&|a| l(l(a)) == l(a)).map(Witness::Set),
    );
    push(
        Axiom::UpperIteration,
        first(&|a| u(a).is_subset(u(u(a)))).map(Witness::Set),
    );
    let monotone = |op: &dyn Fn(Subset) -> Subset| {
        for a in Subset::powerset(n) {
            for i in 0..n {
                if !a.contains(i) {
                    let b = a.with(i);
                    if !op(a).is_subset(op(b)) {
                        return Some(Witness::Pair(a, b));
                    }
                }
            }
        }
        None
    };
    push(Axiom::LowerMonotone, monotone(&l));
    push(Axiom::UpperMonotone, monotone(&u));
    let empty = Subset::empty(n);
    let full = Subset::full(n);
    push(
        Axiom::EmptyLower,
        (!l(empty).is_empty()).then_some(Witness::Set(empty)),
    );
    push(
        Axiom::EmptyUpper,
        (!u(empty).is_empty()).then_some(Witness::Set(empty)),
    );
    push(
        Axiom::FullLower,
        (!l(full).is_subset(full)).then_some(Witness::Set(full)),
    );
    push(
        Axiom::FullUpper,
        (!u(full).is_subset(full)).then_some(Witness::Set(full)),
    );
    AxiomReport { checks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdmissibilityFailure {
    /// `x^l` is not obtainable from granules by unions and intersections.
    LowerNotRepresentable { x: Subset, lower: Subset },
    UpperNotRepresentable { x: Subset, upper: Subset },
    /// Granule `y ⊆ x` but `y ⊄ x^l`.
    LowerStability { granule: Subset, x: Subset },
    /// Two distinct granules without a definite common strict superset.
    FullUnderlap { first: Subset, second: Subset },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub wra: Option<AdmissibilityFailure>,
    pub ls: Option<AdmissibilityFailure>,
    pub fu: Option<AdmissibilityFailure>,
}

impl AdmissibilityReport {
    pub fn all_pass(&self) -> bool {
        self.wra.is_none() && self.ls.is_none() && self.fu.is_none()
    }
}

/// Closure of the granules under binary union and intersection. The empty
/// set is included as the empty union.
pub fn granule_term_closure(space: &GranularOperatorSpace) -> HashSet<u64> {
    let mut closed: HashSet<u64> = HashSet::new();
    closed.insert(0);
    let mut frontier: Vec<u64> = Vec::new();
    for g in space.granulation().granules() {
        if closed.insert(g.bits()) {
            frontier.push(g.bits());
        }
    }
    while let Some(x) = frontier.pop() {
        let current: Vec<u64> = closed.iter().copied().collect();
        for y in current {
            for z in [x | y, x & y] {
                if closed.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    closed
}

pub fn check_admissibility(space: &GranularOperatorSpace) -> AdmissibilityReport {
    let n = space.size();
    let closure = granule_term_closure(space);
    let wra = Subset::powerset(n).find_map(|x| {
        let lower = space.lower_unchecked(x);
        let upper = space.upper_unchecked(x);
        if !closure.contains(&lower.bits()) {
            Some(AdmissibilityFailure::LowerNotRepresentable { x, lower })
        } else if !closure.contains(&upper.bits()) {
            Some(AdmissibilityFailure::UpperNotRepresentable { x, upper })
        } else {
            None
        }
    });

    let granules = space.granulation().granules();
    let ls = granules.iter().find_map(|&granule| {
        Subset::powerset(n)
            .filter(|x| granule.is_subset(*x))
            .find(|&x| !granule.is_subset(space.lower_unchecked(x)))
            .map(|x| AdmissibilityFailure::LowerStability { granule, x })
    });

    let definite: Vec<Subset> = Subset::powerset(n).filter(|&z| space.is_definite(z)).collect();
    let mut fu = None;
    'pairs: for (i, &first) in granules.iter().enumerate() {
        for &second in &granules[i + 1..] {
            let ok = definite
                .iter()
                .any(|&z| first.is_proper_subset(z) && second.is_proper_subset(z));
            if !ok {
                fu = Some(AdmissibilityFailure::FullUnderlap { first, second });
                break 'pairs;
            }
        }
    }
    AdmissibilityReport { wra, ls, fu }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GranulationProperties {
    /// A nonempty definite set strictly inside a definite granule.
    pub atomicity_violation: Option<(Subset, Subset)>,
    /// A granule with `g^l ≠ g` or `g^u ≠ g`.
    pub crispness_violation: Option<Subset>,
}

impl GranulationProperties {
    pub fn atomic_and_crisp(&self) -> bool {
        self.atomicity_violation.is_none() && self.crispness_violation.is_none()
    }
}

/// Mereological atomicity (no nonempty definite set is a proper part of a
/// definite granule) and absolute crispness (every granule is definite).
pub fn check_granulation_properties(space: &GranularOperatorSpace) -> GranulationProperties {
    let granules = space.granulation().granules();
    let crispness_violation = granules.iter().copied().find(|&g| !space.is_definite(g));
    let definite: Vec<Subset> = Subset::powerset(space.size())
        .filter(|&b| !b.is_empty() && space.is_definite(b))
        .collect();
    let atomicity_violation = granules
        .iter()
        .filter(|&&a| space.is_definite(a))
        .find_map(|&a| {
            definite
                .iter()
                .find(|&&b| b.is_proper_subset(a))
                .map(|&b| (a, b))
        });
    GranulationProperties {
        atomicity_violation,
        crispness_violation,
    }
}

/// Universe names `"1".."n"`.
pub fn numbered_universe(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Builds a granule-union space over `{1..n}` from 1-based element lists.
pub fn numbered_space(n: usize, granules: &[&[usize]]) -> Result<GranularOperatorSpace, SpaceError> {
    let gs = granules
        .iter()
        .map(|g| Subset::from_indices(n, g.iter().map(|&e| e - 1)))
        .collect();
    GranularOperatorSpace::granule_union(numbered_universe(n), gs, DEFAULT_UNIVERSE_CAP.max(n))
}

/// Mask of a universe of `n` elements.
pub fn universe_mask(n: usize) -> u64 {
    full_mask(n)
}
