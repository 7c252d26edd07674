//! JSON and Graphviz output for quotients, antichain lattices and the
//! AC-algebra tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AcAlgebra;
use crate::lattice::{BoundedLattice, LatticeError};
use crate::poset::Poset;
use crate::quotient::QuotientPoset;

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{0} table does not match the order")]
    TableMismatch(&'static str),
    #[error("order matrix is not square")]
    NotSquare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectExport {
    pub label: String,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub members: Vec<Vec<String>>,
    pub definite: bool,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientExport {
    pub universe: Vec<String>,
    pub objects: Vec<ObjectExport>,
    /// `order[i][j]` iff object `i ⋐ j`.
    pub order: Vec<Vec<bool>>,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeExport {
    /// Each carrier element as a list of rough object indices.
    pub elements: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    pub order: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcExport {
    pub quotient: QuotientExport,
    pub lattice: LatticeExport,
    pub delta: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
    #[serde(rename = "box")]
    pub box_op: Vec<usize>,
    pub diamond: Vec<usize>,
}

fn matrix(p: &Poset) -> Vec<Vec<bool>> {
    (0..p.len()).map(|i| (0..p.len()).map(|j| p.leq(i, j)).collect()).collect()
}

pub fn export_quotient(q: &QuotientPoset) -> QuotientExport {
    let space = q.space();
    let objects = q
        .objects()
        .iter()
        .enumerate()
        .map(|(i, o)| ObjectExport {
            label: q.label(i),
            lower: space.names(o.lower),
            upper: space.names(o.upper),
            members: o.members.iter().map(|&m| space.names(m)).collect(),
            definite: o.definite,
            stable: o.stable,
        })
        .collect();
    QuotientExport {
        universe: space.universe().to_vec(),
        objects,
        order: matrix(q.order()),
        bottom: q.bottom(),
        top: q.top(),
    }
}

pub fn export_lattice(lattice: &BoundedLattice, elements: Vec<Vec<usize>>, labels: Vec<String>) -> LatticeExport {
    LatticeExport {
        elements,
        labels,
        order: matrix(lattice.order()),
        join: lattice.join_table().to_vec(),
        meet: lattice.meet_table().to_vec(),
        zero: lattice.zero(),
        one: lattice.one(),
    }
}

pub fn export_ac(ac: &AcAlgebra) -> AcExport {
    let elements = ac.antichains().iter().map(|a| a.elements().to_vec()).collect();
    AcExport {
        quotient: export_quotient(ac.quotient()),
        lattice: export_lattice(ac.lattice(), elements, ac.labels()),
        delta: ac.delta_table().to_vec(),
        rho: ac.rho_table().to_vec(),
        box_op: ac.box_table().to_vec(),
        diamond: ac.diamond_table().to_vec(),
    }
}

impl QuotientExport {
    pub fn to_poset(&self) -> Result<Poset, ImportError> {
        poset_from(&self.order)
    }
}

impl LatticeExport {
    /// Rebuilds the lattice from the order and checks that the stored
    /// tables agree with it.
    pub fn to_lattice(&self) -> Result<BoundedLattice, ImportError> {
        let lattice = BoundedLattice::from_order(poset_from(&self.order)?)?;
        if lattice.join_table() != self.join.as_slice() {
            return Err(ImportError::TableMismatch("join"));
        }
        if lattice.meet_table() != self.meet.as_slice() {
            return Err(ImportError::TableMismatch("meet"));
        }
        if lattice.zero() != self.zero || lattice.one() != self.one {
            return Err(ImportError::TableMismatch("bound"));
        }
        Ok(lattice)
    }
}

fn poset_from(m: &[Vec<bool>]) -> Result<Poset, ImportError> {
    if m.iter().any(|row| row.len() != m.len()) {
        return Err(ImportError::NotSquare);
    }
    let p = Poset::from_matrix(m);
    p.check_partial_order().map_err(LatticeError::from)?;
    Ok(p)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("export types serialize")
}

pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, ImportError> {
    Ok(serde_json::from_str(text)?)
}

/// Hasse diagram of the quotient, nodes labelled `(l, u)`.
pub fn quotient_dot(q: &QuotientPoset) -> String {
    q.order().to_dot("quotient", &q.labels())
}

/// Hasse diagram of the antichain lattice, nodes labelled by member lists.
pub fn lattice_dot(ac: &AcAlgebra) -> String {
    ac.lattice().order().to_dot("antichains", &ac.labels())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quotient::build_quotient;

    fn ac(space: crate::space::GranularOperatorSpace) -> AcAlgebra {
        AcAlgebra::new(build_quotient(&space).unwrap()).unwrap()
    }

    #[test]
    fn json_round_trip() {
        for space in [fixtures::e0(), fixtures::e1(), fixtures::vee()] {
            let a = ac(space);
            let exported = export_ac(&a);
            let back: AcExport = from_json(&to_json(&exported)).unwrap();
            assert_eq!(back, exported);
            let rebuilt = back.lattice.to_lattice().unwrap();
            assert_eq!(rebuilt.join_table(), a.lattice().join_table());
            assert!(back.quotient.to_poset().unwrap().is_isomorphic(a.quotient().order()));
        }
    }

    #[test]
    fn e0_quotient_export() {
        let q = build_quotient(&fixtures::e0()).unwrap();
        let e = export_quotient(&q);
        assert_eq!(e.objects.len(), 3);
        let json = to_json(&e);
        assert!(json.contains("\"universe\""));
        assert!(e.objects.iter().any(|o| o.lower.is_empty() && o.upper == ["1", "2"]));
    }

    #[test]
    fn tampered_tables_are_rejected() {
        let mut e = export_ac(&ac(fixtures::e1())).lattice;
        e.join[0][0] = e.one;
        assert!(matches!(e.to_lattice(), Err(ImportError::TableMismatch("join"))));
        let mut e = export_ac(&ac(fixtures::e0())).lattice;
        e.order[0].pop();
        assert!(matches!(e.to_lattice(), Err(ImportError::NotSquare)));
        assert!(matches!(from_json::<LatticeExport>("{"), Err(ImportError::Json(_))));
    }

    #[test]
    fn dot_output() {
        let a = ac(fixtures::e0());
        let q = quotient_dot(a.quotient());
        assert!(q.starts_with("digraph \"quotient\""));
        assert!(q.contains("({}, {1,2})"));
        let l = lattice_dot(&a);
        assert_eq!(l.matches("->").count(), 2);
    }
}
