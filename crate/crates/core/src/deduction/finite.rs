use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate element name {0:?}")]
    DuplicateElement(String),
    #[error("duplicate operation name {0:?}")]
    DuplicateOperation(String),
    #[error("operation {op:?} has {found} table entries, expected {expected}")]
    TableSize { op: String, expected: usize, found: usize },
    #[error("operation {op:?} produces {value}, outside the carrier")]
    ValueOutOfRange { op: String, value: usize },
}

/// A named operation stored as a full table in row-major argument order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    name: String,
    arity: usize,
    table: Vec<usize>,
}

impl Operation {
    pub fn from_table(name: &str, arity: usize, table: Vec<usize>) -> Self {
        Self {
            name: name.to_string(),
            arity,
            table,
        }
    }

    /// Tabulates `f` over every argument tuple of an `n`-element carrier.
    pub fn from_fn(name: &str, arity: usize, n: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let mut table = Vec::with_capacity(n.pow(arity as u32));
        let mut args = vec![0; arity];
        for idx in 0..n.pow(arity as u32) {
            let mut r = idx;
            for slot in args.iter_mut().rev() {
                *slot = r % n;
                r /= n;
            }
            table.push(f(&args));
        }
        Self::from_table(name, arity, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

/// A finite algebra: named carrier elements and total operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    elements: Vec<String>,
    ops: Vec<Operation>,
}

impl FiniteAlgebra {
    pub fn new(elements: Vec<String>, ops: Vec<Operation>) -> Result<Self, AlgebraError> {
        let n = elements.len();
        let mut names = HashSet::new();
        for e in &elements {
            if !names.insert(e.as_str()) {
                return Err(AlgebraError::DuplicateElement(e.clone()));
            }
        }
        let mut op_names = HashSet::new();
        for op in &ops {
            if !op_names.insert(op.name.as_str()) {
                return Err(AlgebraError::DuplicateOperation(op.name.clone()));
            }
            let expected = n.pow(op.arity as u32);
            if op.table.len() != expected {
                return Err(AlgebraError::TableSize {
                    op: op.name.clone(),
                    expected,
                    found: op.table.len(),
                });
            }
            if let Some(&value) = op.table.iter().find(|&&v| v >= n) {
                return Err(AlgebraError::ValueOutOfRange {
                    op: op.name.clone(),
                    value,
                });
            }
        }
        Ok(Self { elements, ops })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn operations(&self) -> &[Operation] {
        &self.ops
    }

    pub fn operation_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    /// `f(args)` for operation index `op`. Panics on an arity mismatch.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let o = &self.ops[op];
        assert_eq!(args.len(), o.arity, "arity mismatch for {}", o.name);
        let n = self.len();
        let idx = args.iter().fold(0, |acc, &a| acc * n + a);
        o.table[idx]
    }

    /// Member names of a subset given as a membership mask.
    pub fn format_subset(&self, members: &[bool]) -> String {
        let names: Vec<&str> = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.element_name(i))
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `Z_n` with `add`, `neg` and the constant `zero`.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(
        numbered(n),
        vec![
            Operation::from_fn("add", 2, n, |a| (a[0] + a[1]) % n),
            Operation::from_fn("neg", 1, n, |a| (n - a[0]) % n),
            Operation::from_fn("zero", 0, n, |_| 0),
        ],
    )
    .expect("valid group tables")
}

/// The Boolean algebra of subsets of a `k`-element set, elements being
/// bitmasks. `xor` is included as a term operation.
pub fn boolean_algebra(k: usize) -> FiniteAlgebra {
    let n = 1usize << k;
    let full = n - 1;
    FiniteAlgebra::new(
        numbered(n),
        vec![
            Operation::from_fn("and", 2, n, |a| a[0] & a[1]),
            Operation::from_fn("or", 2, n, |a| a[0] | a[1]),
            Operation::from_fn("not", 1, n, |a| full & !a[0]),
            Operation::from_fn("xor", 2, n, |a| a[0] ^ a[1]),
            Operation::from_fn("zero", 0, n, |_| 0),
            Operation::from_fn("one", 0, n, |_| full),
        ],
    )
    .expect("valid Boolean tables")
}

/// The 3-chain `0 < m < 1` as a pseudo-complemented meet-semilattice, with
/// `x ⊕ y = ((x ∧ y*)* ∧ (x* ∧ y)*)*` included as the term operation `xor`.
pub fn p_semilattice_chain3() -> FiniteAlgebra {
    let meet = |a: usize, b: usize| a.min(b);
    let star = |a: usize| if a == 0 { 2 } else { 0 };
    let xor = |x: usize, y: usize| star(meet(star(meet(x, star(y))), star(meet(star(x), y))));
    FiniteAlgebra::new(
        vec!["0".into(), "m".into(), "1".into()],
        vec![
            Operation::from_fn("meet", 2, 3, |a| meet(a[0], a[1])),
            Operation::from_fn("star", 1, 3, |a| star(a[0])),
            Operation::from_fn("zero", 0, 3, |_| 0),
            Operation::from_fn("xor", 2, 3, |a| xor(a[0], a[1])),
        ],
    )
    .expect("valid p-semilattice tables")
}

/// `{0, 1}` with `meet` only.
pub fn meet_semilattice2() -> FiniteAlgebra {
    FiniteAlgebra::new(numbered(2), vec![Operation::from_fn("meet", 2, 2, |a| a[0] & a[1])])
        .expect("valid semilattice table")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_row_major() {
        let z3 = cyclic_group(3);
        let add = z3.operation_index("add").unwrap();
        assert_eq!(z3.apply(add, &[2, 2]), 1);
        assert_eq!(z3.apply(z3.operation_index("neg").unwrap(), &[1]), 2);
        assert_eq!(z3.apply(z3.operation_index("zero").unwrap(), &[]), 0);
    }

    #[test]
    fn validation() {
        let bad = FiniteAlgebra::new(numbered(2), vec![Operation::from_table("f", 1, vec![0])]);
        assert!(matches!(bad, Err(AlgebraError::TableSize { expected: 2, found: 1, .. })));
        let bad = FiniteAlgebra::new(numbered(2), vec![Operation::from_table("f", 1, vec![0, 2])]);
        assert!(matches!(bad, Err(AlgebraError::ValueOutOfRange { value: 2, .. })));
        let dup = FiniteAlgebra::new(vec!["x".into(), "x".into()], vec![]);
        assert_eq!(dup, Err(AlgebraError::DuplicateElement("x".into())));
    }

    #[test]
    fn p_semilattice_xor() {
        let p = p_semilattice_chain3();
        let xor = p.operation_index("xor").unwrap();
        assert_eq!(p.apply(xor, &[1, 2]), 0);
        assert_eq!(p.apply(xor, &[2, 2]), 0);
        assert_eq!(p.apply(xor, &[0, 2]), 2);
    }
}
