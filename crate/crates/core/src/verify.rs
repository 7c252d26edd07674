//! The verification harness: named checks grouped into suites, each ending
//! in pass, fail with a witness, skipped with a reason, or a recorded
//! observation that is neither asserted nor refuted.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AcAlgebra, ComplementKind, FilterIdealKind};
use crate::antichain::{build_ac_lattice, build_acm_lattice, maximal_antichains, Antichain};
use crate::deduction::{
    ac_finite_algebra, check_correspondence, check_regularity, check_ternary_term_theorems, congruences,
    is_g_difference_system, p_semilattice_case, reference_cases, Term, TernaryTheorem,
};
use crate::gen::random_poset;
use crate::lattice::{birkhoff_reconstruct, irreducible_reconstruct, IrreducibleContext};
use crate::quotient::{build_quotient_with_cap, definite_rough_objects, single_antichain_cover, QuotientPoset};
use crate::space::{
    check_admissibility, check_granulation_properties, check_space_axioms, GranularOperatorSpace,
};
use crate::subset::Subset;

/// Quotients up to this many objects get the brute-force antichain oracle.
pub const ANTICHAIN_ORACLE_LIMIT: usize = 16;
/// Universes up to this size get the exhaustive rough-order checks.
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Space,
    Quotient,
    Lattice,
    Ac,
    Deduction,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 5] = [Suite::Space, Suite::Quotient, Suite::Lattice, Suite::Ac, Suite::Deduction];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Space => "space",
            Suite::Quotient => "quotient",
            Suite::Lattice => "lattice",
            Suite::Ac => "ac",
            Suite::Deduction => "deduction",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "space" => Ok(Suite::Space),
            "quotient" => Ok(Suite::Quotient),
            "lattice" => Ok(Suite::Lattice),
            "ac" => Ok(Suite::Ac),
            "deduction" => Ok(Suite::Deduction),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
    Recorded(String),
}

impl Status {
    fn from_check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail(witness())
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
    /// Instances examined.
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u128>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status.is_fail())
    }

    pub fn get(&self, suite: Suite, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.suite == suite && c.name == name)
    }

    /// Drops the timings, leaving output that depends on the input only.
    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.micros = None;
        }
    }

    /// One line per check; timings are left out unless asked for so that
    /// identical inputs give identical text.
    pub fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let (tag, detail) = match &c.status {
                Status::Pass => ("PASS", None),
                Status::Fail(d) => ("FAIL", Some(d)),
                Status::Skipped(d) => ("SKIP", Some(d)),
                Status::Recorded(d) => ("NOTE", Some(d)),
            };
            out.push_str(&format!("{tag}  {}/{} [n={}]", c.suite, c.name, c.count));
            if let (true, Some(us)) = (timings, c.micros) {
                out.push_str(&format!(" {us}us"));
            }
            if let Some(d) = detail {
                out.push_str(": ");
                out.push_str(d);
            }
            out.push('\n');
        }
        let fails = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), fails));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Seed for the randomized checks.
    pub seed: u64,
    /// Random posets for the maximum-antichain check and shuffles per
    /// complement.
    pub samples: usize,
    pub congruence_cap: usize,
    pub universe_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 50,
            congruence_cap: crate::deduction::DEFAULT_CONGRUENCE_CAP,
            universe_cap: crate::space::DEFAULT_UNIVERSE_CAP,
        }
    }
}

struct Runner {
    suite: Suite,
    report: VerificationReport,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> (Status, usize)) {
        let start = Instant::now();
        let (status, count) = f();
        self.report.checks.push(CheckResult {
            suite: self.suite,
            name: name.to_string(),
            status,
            count,
            micros: Some(start.elapsed().as_micros()),
        });
    }

    fn skip(&mut self, names: &[&str], reason: &str) {
        for name in names {
            self.check(name, || (Status::Skipped(reason.to_string()), 0));
        }
    }
}

const QUOTIENT_CHECKS: [&str; 6] = [
    "partial-order",
    "bounded",
    "member-partition",
    "object-count-oracle",
    "single-antichain-cover",
    "definite-objects",
];
const LATTICE_CHECKS: [&str; 9] = [
    "antichain-enumeration-oracle",
    "ac-lattice",
    "lattice-laws",
    "distributivity",
    "acm-distributive",
    "acm-random-posets",
    "length-equals-irreducibles",
    "birkhoff-reconstruction",
    "irreducible-reconstruction",
];
const AC_CHECKS: [&str; 12] = [
    "groupoid-identities",
    "modal-laws",
    "nonimplication",
    "purity",
    "complement-class-a",
    "complement-light",
    "complement-uu",
    "ve-filters-diamond-closed",
    "ld-filters",
    "range-reconstruction",
    "pseudo-complement",
    "range-decomposition",
];
const DEDUCTION_CHECKS: [&str; 5] = [
    "ternary-meet",
    "ternary-box-join",
    "ac-congruences",
    "reference-correspondence",
    "p-semilattice-difference",
];

/// Runs the checks of `suite` (every suite for [`Suite::All`]). Every check
/// of a selected suite appears exactly once, skipped if a prerequisite is
/// missing.
pub fn verify(space: &GranularOperatorSpace, suite: Suite, opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::default();
    let needs_quotient = suite != Suite::Space;
    let quotient = needs_quotient.then(|| build_quotient_with_cap(space, opts.universe_cap));
    let ac = match (&quotient, suite.includes(Suite::Ac) || suite.includes(Suite::Deduction)) {
        (Some(Ok(q)), true) => Some(AcAlgebra::new(q.clone()).map_err(|e| e.to_string())),
        _ => None,
    };

    for s in Suite::CONCRETE {
        if !suite.includes(s) {
            continue;
        }
        let mut r = Runner {
            suite: s,
            report: VerificationReport::default(),
        };
        match s {
            Suite::Space => space_suite(&mut r, space),
            Suite::Quotient => match quotient.as_ref().expect("built for this suite") {
                Ok(q) => quotient_suite(&mut r, q),
                Err(e) => {
                    let msg = e.to_string();
                    r.check("partial-order", || (Status::Fail(msg.clone()), 0));
                    r.skip(&QUOTIENT_CHECKS[1..], "quotient could not be built");
                }
            },
            Suite::Lattice => match quotient.as_ref().expect("built for this suite") {
                Ok(q) => lattice_suite(&mut r, q, opts),
                Err(_) => r.skip(&LATTICE_CHECKS, "quotient could not be built"),
            },
            Suite::Ac => match &ac {
                Some(Ok(a)) => ac_suite(&mut r, a, space, opts),
                Some(Err(e)) => r.skip(&AC_CHECKS, &format!("antichains do not form a lattice: {e}")),
                None => r.skip(&AC_CHECKS, "quotient could not be built"),
            },
            Suite::Deduction => match &ac {
                Some(Ok(a)) => deduction_suite(&mut r, a, opts),
                Some(Err(e)) => {
                    r.skip(&DEDUCTION_CHECKS[..3], &format!("antichains do not form a lattice: {e}"));
                    reference_checks(&mut r, opts);
                }
                None => {
                    r.skip(&DEDUCTION_CHECKS[..3], "quotient could not be built");
                    reference_checks(&mut r, opts);
                }
            },
            Suite::All => unreachable!(),
        }
        report.checks.extend(r.report.checks);
    }
    report
}

fn space_suite(r: &mut Runner, space: &GranularOperatorSpace) {
    let n = space.size();
    let axioms = check_space_axioms(space);
    for c in &axioms.checks {
        let name = format!("axiom:{}", serde_json::to_value(c.axiom).expect("axiom names serialize").as_str().unwrap_or("?"));
        r.check(&name, || {
            (
                Status::from_check(c.violation.is_none(), || format!("{:?}", c.violation)),
                1 << n,
            )
        });
    }
    let adm = check_admissibility(space);
    for (name, failure) in [("admissibility-wra", &adm.wra), ("admissibility-ls", &adm.ls), ("admissibility-fu", &adm.fu)] {
        r.check(name, || (Status::from_check(failure.is_none(), || format!("{failure:?}")), 1));
    }
    r.check("partition-approximations", || pawlak_cross_check(space));
    r.check("rough-order", || rough_order_check(space));
    r.check("granulation-properties", || {
        let p = check_granulation_properties(space);
        let yes = |b: bool| if b { "yes" } else { "no" };
        (
            Status::Recorded(format!(
                "mereologically atomic: {}, absolutely crisp: {}",
                yes(p.atomicity_violation.is_none()),
                yes(p.crispness_violation.is_none())
            )),
            space.granulation().len(),
        )
    });
}

/// For granulations that partition the universe, compares the operators with
/// the elementwise class definitions.
fn pawlak_cross_check(space: &GranularOperatorSpace) -> (Status, usize) {
    let n = space.size();
    let granules = space.granulation().granules();
    let mut block_of = vec![None; n];
    for g in granules {
        for x in g.iter() {
            if block_of[x].is_some() {
                return (Status::Skipped("granules overlap".into()), 0);
            }
            block_of[x] = Some(*g);
        }
    }
    if block_of.iter().any(Option::is_none) || space.granulation().is_empty() {
        return (Status::Skipped("granules do not cover the universe".into()), 0);
    }
    let block = |x: usize| block_of[x].expect("checked above");
    for a in Subset::powerset(n) {
        let l = Subset::from_indices(n, (0..n).filter(|&x| block(x).is_subset(a)));
        let u = Subset::from_indices(n, (0..n).filter(|&x| !block(x).intersection(a).is_empty()));
        let got = space.approximations(a).expect("subsets of the universe");
        if got != (l, u) {
            return (
                Status::Fail(format!(
                    "at {}: got l={} u={}, classes give l={} u={}",
                    space.format_subset(a),
                    space.format_subset(got.0),
                    space.format_subset(got.1),
                    space.format_subset(l),
                    space.format_subset(u)
                )),
                1 << n,
            );
        }
    }
    (Status::Pass, 1 << n)
}

/// `rough_leq` is a quasi-order and `rough_equal` its symmetric part.
fn rough_order_check(space: &GranularOperatorSpace) -> (Status, usize) {
    let n = space.size();
    if n > EXHAUSTIVE_ORDER_LIMIT {
        return (
            Status::Skipped(format!("universe larger than {EXHAUSTIVE_ORDER_LIMIT}")),
            0,
        );
    }
    let sets: Vec<Subset> = Subset::powerset(n).collect();
    let approx: Vec<(Subset, Subset)> = sets.iter().map(|&a| space.approximations(a).expect("in range")).collect();
    let leq = |i: usize, j: usize| approx[i].0.is_subset(approx[j].0) && approx[i].1.is_subset(approx[j].1);
    let m = sets.len();
    for i in 0..m {
        if !space.rough_leq(sets[i], sets[i]).expect("in range") {
            return (Status::Fail(format!("not reflexive at {}", space.format_subset(sets[i]))), m);
        }
        for j in 0..m {
            let ij = space.rough_leq(sets[i], sets[j]).expect("in range");
            if ij != leq(i, j) {
                return (Status::Fail(format!("order disagrees with approximations at ({i}, {j})")), m);
            }
            let eq = space.rough_equal(sets[i], sets[j]).expect("in range");
            if eq != (ij && leq(j, i)) {
                return (Status::Fail(format!("equality is not the symmetric part at ({i}, {j})")), m);
            }
            if !ij {
                continue;
            }
            for k in 0..m {
                if leq(j, k) && !leq(i, k) {
                    return (
                        Status::Fail(format!(
                            "not transitive: {} {} {}",
                            space.format_subset(sets[i]),
                            space.format_subset(sets[j]),
                            space.format_subset(sets[k])
                        )),
                        m,
                    );
                }
            }
        }
    }
    (Status::Pass, m)
}

fn quotient_suite(r: &mut Runner, q: &QuotientPoset) {
    let n = q.space().size();
    r.check("partial-order", || {
        let res = q.order().check_partial_order();
        (Status::from_check(res.is_ok(), || format!("{res:?}")), q.len())
    });
    r.check("bounded", || match q.check_bounded() {
        Ok(_) => (Status::Pass, q.len()),
        Err(e) => (Status::Fail(e.to_string()), q.len()),
    });
    r.check("member-partition", || {
        let mut seen = HashSet::new();
        for (i, o) in q.objects().iter().enumerate() {
            for m in &o.members {
                if !seen.insert(m.bits()) {
                    return (Status::Fail(format!("{} lies in two objects (second: {i})", q.space().format_subset(*m))), i);
                }
                let pair = q.space().approximations(*m).expect("in range");
                if pair != (o.lower, o.upper) {
                    return (Status::Fail(format!("{} has different approximations from object {i}", q.space().format_subset(*m))), i);
                }
            }
        }
        let total = 1usize << n;
        (
            Status::from_check(seen.len() == total, || format!("members cover {} of {total} subsets", seen.len())),
            total,
        )
    });
    r.check("object-count-oracle", || {
        let pairs: HashSet<(u64, u64)> = Subset::powerset(n)
            .map(|a| {
                let (l, u) = q.space().approximations(a).expect("in range");
                (l.bits(), u.bits())
            })
            .collect();
        (
            Status::from_check(pairs.len() == q.len(), || {
                format!("powerset scan finds {} classes, quotient has {}", pairs.len(), q.len())
            }),
            1 << n,
        )
    });
    r.check("single-antichain-cover", || {
        let comparable = (0..q.len()).any(|a| (0..q.len()).any(|b| a != b && q.leq(a, b)));
        let cover = single_antichain_cover(q);
        (
            Status::from_check(cover.is_none() == comparable, || {
                format!("cover {:?} but comparable pair present: {comparable}", cover)
            }),
            q.len(),
        )
    });
    r.check("definite-objects", || {
        let d = definite_rough_objects(q);
        let labels: Vec<String> = d.iter().map(|&i| q.label(i)).collect();
        (Status::Recorded(format!("{} definite: {}", d.len(), labels.join(" "))), q.len())
    });
}

fn brute_force_antichains(q: &QuotientPoset) -> Vec<Antichain> {
    let n = q.len();
    let mut out: Vec<Antichain> = (0u64..(1 << n))
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| q.order().is_maximal_antichain(s))
        .map(Antichain::new)
        .collect();
    out.sort();
    out
}

fn lattice_suite(r: &mut Runner, q: &QuotientPoset, opts: &VerifyOptions) {
    r.check("antichain-enumeration-oracle", || {
        if q.len() > ANTICHAIN_ORACLE_LIMIT {
            return (Status::Skipped(format!("more than {ANTICHAIN_ORACLE_LIMIT} objects")), 0);
        }
        let fast = maximal_antichains(q.order());
        let slow = brute_force_antichains(q);
        (
            Status::from_check(fast == slow, || format!("enumeration found {}, subset scan {}", fast.len(), slow.len())),
            1 << q.len(),
        )
    });
    let lattice = build_ac_lattice(q.order());
    r.check("ac-lattice", || match &lattice {
        Ok(l) => (Status::Pass, l.len()),
        Err(e) => (Status::Fail(e.to_string()), 0),
    });
    let lattice = match lattice {
        Ok(l) => l,
        Err(_) => {
            r.skip(&LATTICE_CHECKS[2..4], "antichains do not form a lattice");
            acm_checks(r, q, opts);
            r.skip(&LATTICE_CHECKS[6..], "antichains do not form a lattice");
            return;
        }
    };
    let l = lattice.lattice();
    r.check("lattice-laws", || {
        let res = l.check_laws();
        (Status::from_check(res.is_ok(), || format!("{res:?}")), l.len() * l.len() * l.len())
    });
    let distributive = l.is_distributive();
    r.check("distributivity", || match l.distributivity_witness() {
        None => (Status::Pass, l.len()),
        Some(w) => (Status::Recorded(format!("not distributive at {w:?}")), l.len()),
    });
    acm_checks(r, q, opts);
    let nondistributive = "lattice is not distributive";
    if distributive {
        r.check("length-equals-irreducibles", || {
            let (len, j, w) = (l.length(), l.join_irreducibles().len(), l.meet_irreducibles().len());
            (
                Status::from_check(len == j && j == w, || format!("length {len}, |J| {j}, |W| {w}")),
                l.len(),
            )
        });
        r.check("birkhoff-reconstruction", || {
            let j = l.join_irreducibles();
            let rebuilt = birkhoff_reconstruct(&l.induced_order(&j));
            (
                Status::from_check(rebuilt.is_isomorphic(l), || {
                    format!("down-set lattice has {} elements, expected {}", rebuilt.len(), l.len())
                }),
                l.len(),
            )
        });
    } else {
        r.skip(&LATTICE_CHECKS[6..8], nondistributive);
    }
    r.check("irreducible-reconstruction", || {
        let rebuilt = irreducible_reconstruct(&IrreducibleContext::from_lattice(l));
        (
            Status::from_check(rebuilt.is_isomorphic(l), || {
                format!("reconstruction has {} elements, expected {}", rebuilt.len(), l.len())
            }),
            l.len(),
        )
    });
}

fn acm_checks(r: &mut Runner, q: &QuotientPoset, opts: &VerifyOptions) {
    r.check("acm-distributive", || match build_acm_lattice(q.order()) {
        Ok(m) => (
            Status::from_check(m.lattice().is_distributive(), || {
                format!("witness {:?}", m.lattice().distributivity_witness())
            }),
            m.len(),
        ),
        Err(e) => (Status::Fail(e.to_string()), 0),
    });
    r.check("acm-random-posets", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for i in 0..opts.samples {
            let p = random_poset(&mut rng, 1 + i % 8, 0.35);
            match build_acm_lattice(&p) {
                Ok(m) if m.lattice().is_distributive() => {}
                Ok(m) => {
                    return (
                        Status::Fail(format!("sample {i}: witness {:?}", m.lattice().distributivity_witness())),
                        i + 1,
                    )
                }
                Err(e) => return (Status::Fail(format!("sample {i}: {e}")), i + 1),
            }
        }
        (Status::Pass, opts.samples)
    });
}

fn ac_suite(r: &mut Runner, ac: &AcAlgebra, space: &GranularOperatorSpace, opts: &VerifyOptions) {
    let n = ac.len();
    r.check("groupoid-identities", || {
        let v = ac.groupoid_violations();
        (Status::from_check(v.is_empty(), || format!("{} violations, first {:?}", v.len(), v[0])), n * n)
    });
    r.check("modal-laws", || {
        let v = ac.modal_violations();
        (Status::from_check(v.is_empty(), || format!("{} violations, first {:?}", v.len(), v[0])), n * n)
    });
    r.check("nonimplication", || match ac.nonimplication_witness() {
        Some((a, b, c)) => (
            Status::Recorded(format!("witness α={} β={} γ={}", ac.label(a), ac.label(b), ac.label(c))),
            n * n * n,
        ),
        None => (Status::Recorded("no witness on this carrier".into()), n * n * n),
    });
    r.check("purity", || {
        let lower = (0..n).filter(|&a| ac.is_lower_pure(a)).count();
        let upper = (0..n).filter(|&a| ac.is_upper_pure(a)).count();
        let pure = (0..n).filter(|&a| ac.is_pure(a)).count();
        (Status::Recorded(format!("lower-pure {lower}, upper-pure {upper}, pure {pure} of {n}")), n)
    });
    for (name, kind) in [
        ("complement-class-a", ComplementKind::ClassA),
        ("complement-light", ComplementKind::Light),
        ("complement-uu", ComplementKind::UU),
    ] {
        r.check(name, || complement_check(ac, kind, opts));
    }
    r.check("ve-filters-diamond-closed", || {
        let filters = ac.filters_of_kind(FilterIdealKind::VEFilter);
        let bad = filters
            .iter()
            .find_map(|k| k.iter().find(|&&a| !k.contains(&ac.diamond(a))).map(|&a| (k.clone(), a)));
        (
            Status::from_check(bad.is_none(), || format!("{bad:?}")),
            filters.len(),
        )
    });
    r.check("ld-filters", || {
        let ld = ac.filters_of_kind(FilterIdealKind::LDFilter);
        (Status::Recorded(format!("{} of {n} principal filters are LD-filters", ld.len())), n)
    });
    r.check("range-reconstruction", || {
        let res = ac.verify_range_reconstruction();
        (Status::from_check(res.is_ok(), || format!("{res:?}")), n)
    });
    let atomic_crisp = check_granulation_properties(space).atomic_and_crisp();
    r.check("pseudo-complement", || match ac.pseudo_complement_witness() {
        None => (Status::Pass, n),
        Some(x) if atomic_crisp => (Status::Fail(format!("{} has no pseudo complement", ac.label(x))), n),
        Some(x) => (
            Status::Recorded(format!("{} has no pseudo complement (granulation not atomic and crisp)", ac.label(x))),
            n,
        ),
    });
    r.check("range-decomposition", || match ac.range_decomposition() {
        Err(e) => (Status::Fail(e.to_string()), n),
        Ok(d) => {
            let summary = format!(
                "A={:?} C={:?} J={:?} W={:?}",
                d.a_set, d.c_set, d.join_irreducibles, d.meet_irreducibles
            );
            if d.matches() {
                (Status::Pass, n)
            } else {
                (Status::Recorded(summary), n)
            }
        }
    });
}

/// Totality and order-independence of the totalized complement, over every
/// carrier element used as a sequence and `samples` shuffled joins each.
fn complement_check(ac: &AcAlgebra, kind: ComplementKind, opts: &VerifyOptions) -> (Status, usize) {
    let shuffles = opts.samples.clamp(1, 8) as u64;
    let mut count = 0;
    for k in 0..ac.len() {
        let seq = ac.antichain(k).elements().to_vec();
        let base = match ac.complement_total(&seq, kind) {
            Ok(v) => v,
            Err(e) => return (Status::Fail(format!("undefined at {}: {e}", ac.label(k))), count),
        };
        if ac.complement_total(&seq, kind) != Ok(base) {
            return (Status::Fail(format!("re-run differs at {}", ac.label(k))), count);
        }
        for s in 0..shuffles {
            count += 1;
            match ac.complement_total_shuffled(&seq, kind, opts.seed.wrapping_add(s)) {
                Ok(v) if v == base => {}
                other => {
                    return (
                        Status::Fail(format!("shuffle {s} at {} gave {other:?}, expected {base}", ac.label(k))),
                        count,
                    )
                }
            }
        }
    }
    (Status::Pass, count)
}

fn deduction_suite(r: &mut Runner, ac: &AcAlgebra, opts: &VerifyOptions) {
    let report = check_ternary_term_theorems(ac);
    let describe = |theorem| {
        report
            .failures
            .iter()
            .filter(|f| f.theorem == theorem)
            .map(|f| {
                format!(
                    "filter ↑{} z={} condition {} at a={} b={}",
                    ac.label(f.filter),
                    ac.label(f.z),
                    f.bullet,
                    ac.label(f.a),
                    ac.label(f.b)
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    r.check("ternary-meet", || {
        (
            Status::from_check(report.passes(TernaryTheorem::Meet), || describe(TernaryTheorem::Meet)),
            report.meet_instances,
        )
    });
    r.check("ternary-box-join", || {
        (
            Status::from_check(report.passes(TernaryTheorem::BoxJoin), || describe(TernaryTheorem::BoxJoin)),
            report.box_instances,
        )
    });
    r.check("ac-congruences", || {
        let fa = ac_finite_algebra(ac);
        match congruences(&fa, opts.congruence_cap) {
            Err(e) => (Status::Skipped(e.to_string()), 0),
            Ok(cons) => {
                let regular = check_regularity(&fa, &Term::identity(), opts.congruence_cap)
                    .ok()
                    .flatten()
                    .map_or("regular".to_string(), |w| format!("not regular: {w:?}"));
                (Status::Recorded(format!("{} congruences; {regular}", cons.len())), cons.len())
            }
        }
    });
    reference_checks(r, opts);
}

/// Space-independent: the correspondence on the reference algebras, and the
/// difference-term status of the pseudo-complemented 3-chain.
fn reference_checks(r: &mut Runner, opts: &VerifyOptions) {
    r.check("reference-correspondence", || {
        let mut count = 0;
        for case in reference_cases() {
            match check_correspondence(&case.algebra, &case.g, &case.tau, opts.congruence_cap) {
                Ok(rep) if rep.passes() => count += rep.forward_checked + rep.converse_checked,
                Ok(rep) => return (Status::Fail(format!("{}: {:?}", case.name, rep.failures[0])), count),
                Err(e) => return (Status::Fail(format!("{}: {e}", case.name)), count),
            }
        }
        (Status::Pass, count)
    });
    r.check("p-semilattice-difference", || {
        let case = p_semilattice_case();
        match is_g_difference_system(&case.algebra, &case.g, &case.tau) {
            Ok(()) => (Status::Recorded("is a difference system".into()), 1),
            Err(w) => (Status::Recorded(format!("not a difference system: {w}")), 1),
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(report: &VerificationReport) -> Vec<(Suite, String)> {
        report.checks.iter().map(|c| (c.suite, c.name.clone())).collect()
    }

    #[test]
    fn every_check_appears_once() {
        let report = verify(&fixtures::e0(), Suite::All, &VerifyOptions::default());
        let all = names(&report);
        let unique: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        assert_eq!(
            all.len(),
            9 + 6 + QUOTIENT_CHECKS.len() + LATTICE_CHECKS.len() + AC_CHECKS.len() + DEDUCTION_CHECKS.len()
        );
        for s in Suite::CONCRETE {
            let single = verify(&fixtures::e0(), s, &VerifyOptions::default());
            assert!(single.checks.iter().all(|c| c.suite == s));
        }
    }

    #[test]
    fn e0_fails_only_the_box_join_theorem() {
        let report = verify(&fixtures::e0(), Suite::All, &VerifyOptions::default());
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["ternary-box-join"]);
        assert!(!report.passed());
    }

    #[test]
    fn e1_and_vee() {
        let e1 = verify(&fixtures::e1(), Suite::All, &VerifyOptions::default());
        let failed: Vec<&str> = e1.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.iter().all(|&n| n == "ternary-box-join"), "{failed:?}");
        let v = verify(&fixtures::vee(), Suite::Ac, &VerifyOptions::default());
        assert!(v.passed(), "{}", v.render(false));
    }

    #[test]
    fn render_is_deterministic() {
        let a = verify(&fixtures::e1(), Suite::Lattice, &VerifyOptions::default()).render(false);
        let b = verify(&fixtures::e1(), Suite::Lattice, &VerifyOptions::default()).render(false);
        assert_eq!(a, b);
        assert!(a.contains("PASS  lattice/acm-distributive"));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::CONCRETE.into_iter().chain([Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>(), Ok(s));
        }
        assert!("spaces".parse::<Suite>().is_err());
    }
}
