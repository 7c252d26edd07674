//! Line-oriented text format for spaces.
//!
//! ```text
//! # comment
//! universe: 1 2 3 4
//! mode: granule-union          # or: relation, table
//! granule: 1 2
//! granule: 3
//! relation-kind: tolerance     # relation mode only
//! pair: 1 2                    # relation mode only
//! approx: {1} l={} u={1,2}     # table mode only, one row per subset
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::space::{ApproximationMode, GranularOperatorSpace, RelationKind, SpaceError};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line number, when the error is tied to a line.
    pub line: Option<usize>,
    pub kind: FormatErrorKind,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl FormatError {
    fn at(line: usize, kind: FormatErrorKind) -> Self {
        Self { line: Some(line), kind }
    }

    fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Self::at(line, FormatErrorKind::Syntax(msg.into()))
    }

    /// Whether the universe exceeded the configured cap.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self.kind, FormatErrorKind::Space(SpaceError::UniverseTooLarge { .. }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    GranuleUnion,
    Relation,
    Table,
}

/// Parses a space, reporting the first error with its line number.
pub fn parse_space(text: &str, cap: usize) -> Result<GranularOperatorSpace, FormatError> {
    let mut universe: Option<(usize, Vec<String>)> = None;
    let mut mode: Option<(usize, Mode)> = None;
    let mut kind: Option<(usize, RelationKind)> = None;
    let mut granules: Vec<(usize, Vec<String>)> = Vec::new();
    let mut pairs: Vec<(usize, String, String)> = Vec::new();
    let mut rows: Vec<(usize, String, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| FormatError::syntax(line, "expected `key: value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if key != "universe" && key != "mode" && key != "relation-kind" && universe.is_none() {
            return Err(FormatError::at(
                line,
                FormatErrorKind::Inconsistent(format!("`{key}` before `universe`")),
            ));
        }
        match key {
            "universe" => {
                if universe.is_some() {
                    return Err(FormatError::syntax(line, "duplicate `universe` line"));
                }
                let names: Vec<String> = value.split_whitespace().map(String::from).collect();
                universe = Some((line, names));
            }
            "mode" => {
                if mode.is_some() {
                    return Err(FormatError::syntax(line, "duplicate `mode` line"));
                }
                let m = match value {
                    "granule-union" => Mode::GranuleUnion,
                    "relation" => Mode::Relation,
                    "table" => Mode::Table,
                    other => return Err(FormatError::syntax(line, format!("unknown mode `{other}`"))),
                };
                mode = Some((line, m));
            }
            "relation-kind" => {
                let k = match value {
                    "equivalence" => RelationKind::Equivalence,
                    "tolerance" => RelationKind::Tolerance,
                    "quasi-equivalence" => RelationKind::QuasiEquivalence,
                    other => return Err(FormatError::syntax(line, format!("unknown relation kind `{other}`"))),
                };
                kind = Some((line, k));
            }
            "granule" => granules.push((line, value.split_whitespace().map(String::from).collect())),
            "pair" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [x, y] = parts[..] else {
                    return Err(FormatError::syntax(line, "`pair` takes exactly two elements"));
                };
                pairs.push((line, x.to_string(), y.to_string()));
            }
            "approx" => {
                let (set, rest) = split_braced(value).ok_or_else(|| FormatError::syntax(line, "expected `{…}`"))?;
                let rest = rest.trim();
                let rest = rest
                    .strip_prefix("l=")
                    .ok_or_else(|| FormatError::syntax(line, "expected `l={…}`"))?;
                let (l, rest) = split_braced(rest).ok_or_else(|| FormatError::syntax(line, "expected `l={…}`"))?;
                let u = rest
                    .trim()
                    .strip_prefix("u=")
                    .ok_or_else(|| FormatError::syntax(line, "expected `u={…}`"))?;
                let (u, tail) = split_braced(u).ok_or_else(|| FormatError::syntax(line, "expected `u={…}`"))?;
                if !tail.trim().is_empty() {
                    return Err(FormatError::syntax(line, "trailing text after `u={…}`"));
                }
                rows.push((line, set.to_string(), l.to_string(), u.to_string()));
            }
            other => return Err(FormatError::syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let (uline, names) = universe.ok_or(FormatError {
        line: None,
        kind: FormatErrorKind::Inconsistent("missing `universe` line".into()),
    })?;
    let mode_value = mode.map(|(_, m)| m).unwrap_or(Mode::GranuleUnion);
    let n = names.len();
    let lookup = |line: usize, name: &str| {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| FormatError::at(line, FormatErrorKind::UnknownElement(name.to_string())))
    };
    let subset = |line: usize, elems: &[&str]| -> Result<Subset, FormatError> {
        let mut bits = 0u64;
        for e in elems {
            bits |= 1 << lookup(line, e)?;
        }
        Ok(Subset::from_bits(n.min(crate::subset::MAX_UNIVERSE), bits))
    };
    let inconsistent = |line: usize, msg: &str| Err(FormatError::at(line, FormatErrorKind::Inconsistent(msg.into())));

    if let Some(&(line, ..)) = pairs.first() {
        if mode_value != Mode::Relation {
            return inconsistent(line, "`pair` lines require `mode: relation`");
        }
    }
    if let Some(&(line, ..)) = rows.first() {
        if mode_value != Mode::Table {
            return inconsistent(line, "`approx` lines require `mode: table`");
        }
    }
    if let Some((line, _)) = kind {
        if mode_value != Mode::Relation {
            return inconsistent(line, "`relation-kind` requires `mode: relation`");
        }
    }

    // cap and duplicate names are checked before any subset is built
    let probe = GranularOperatorSpace::granule_union(names.clone(), Vec::new(), cap);
    if let Err(e) = probe {
        return Err(FormatError::at(uline, e.into()));
    }

    let mut granule_sets = Vec::new();
    let mut granule_lines = Vec::new();
    for (line, elems) in &granules {
        let refs: Vec<&str> = elems.iter().map(String::as_str).collect();
        granule_sets.push(subset(*line, &refs)?);
        granule_lines.push(*line);
    }
    let granule_error = |e: SpaceError| {
        let line = match e {
            SpaceError::EmptyGranule(i) | SpaceError::DuplicateGranule(i) => granule_lines.get(i).copied(),
            _ => None,
        };
        FormatError { line, kind: e.into() }
    };

    match mode_value {
        Mode::GranuleUnion => GranularOperatorSpace::granule_union(names, granule_sets, cap).map_err(granule_error),
        Mode::Relation => {
            if let Some(&line) = granule_lines.first() {
                return inconsistent(line, "`granule` lines are not allowed in relation mode");
            }
            let (_, kind) = kind.ok_or(FormatError {
                line: mode.map(|(l, _)| l),
                kind: FormatErrorKind::Inconsistent("relation mode needs a `relation-kind` line".into()),
            })?;
            let mut idx_pairs = Vec::new();
            for (line, x, y) in &pairs {
                idx_pairs.push((lookup(*line, x)?, lookup(*line, y)?));
            }
            GranularOperatorSpace::from_relation(names, kind, idx_pairs, cap).map_err(|e| FormatError {
                line: mode.map(|(l, _)| l),
                kind: e.into(),
            })
        }
        Mode::Table => {
            let mut table: Vec<Option<(Subset, Subset)>> = vec![None; 1 << n];
            for (line, set, l, u) in &rows {
                let parse = |s: &str| subset(*line, &split_elements(s));
                let key = parse(set)?;
                if table[key.bits() as usize].is_some() {
                    return inconsistent(*line, "duplicate `approx` row");
                }
                table[key.bits() as usize] = Some((parse(l)?, parse(u)?));
            }
            let mut full = Vec::with_capacity(1 << n);
            for (bits, row) in table.into_iter().enumerate() {
                match row {
                    Some(r) => full.push(r),
                    None => {
                        return Err(FormatError {
                            line: None,
                            kind: SpaceError::IncompleteTable {
                                missing: Subset::from_bits(n, bits as u64),
                            }
                            .into(),
                        })
                    }
                }
            }
            GranularOperatorSpace::from_table(names, granule_sets, full, cap).map_err(granule_error)
        }
    }
}

/// `{…}` at the start of `s` (after whitespace): the inner text and the rest.
fn split_braced(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start().strip_prefix('{')?;
    let end = s.find('}')?;
    Some((&s[..end], &s[end + 1..]))
}

fn split_elements(s: &str) -> Vec<&str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect()
}

/// Renders a space in the text format; parsing the result gives back an
/// equal space.
pub fn format_space(space: &GranularOperatorSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "universe: {}", space.universe().join(" "));
    let words = |s: Subset| space.names(s).join(" ");
    let braced = |s: Subset| format!("{{{}}}", space.names(s).join(","));
    match space.mode() {
        ApproximationMode::GranuleUnion => {
            let _ = writeln!(out, "mode: granule-union");
            for &g in space.granulation().granules() {
                let _ = writeln!(out, "granule: {}", words(g));
            }
        }
        ApproximationMode::RelationInduced { kind, pairs } => {
            let _ = writeln!(out, "mode: relation");
            let _ = writeln!(out, "relation-kind: {kind}");
            for &(x, y) in pairs {
                let _ = writeln!(out, "pair: {} {}", space.universe()[x], space.universe()[y]);
            }
        }
        ApproximationMode::ExplicitTable(rows) => {
            let _ = writeln!(out, "mode: table");
            for &g in space.granulation().granules() {
                let _ = writeln!(out, "granule: {}", words(g));
            }
            for (bits, &(l, u)) in rows.iter().enumerate() {
                let a = Subset::from_bits(space.size(), bits as u64);
                let _ = writeln!(out, "approx: {} l={} u={}", braced(a), braced(l), braced(u));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const E0: &str = "# E0\nuniverse: 1 2\nmode: granule-union\ngranule: 1 2\n";

    #[test]
    fn parses_e0() {
        let s = parse_space(E0, 12).unwrap();
        assert_eq!(s, fixtures::e0());
        assert_eq!(s.granulation().len(), 1);
    }

    #[test]
    fn unknown_element_reports_line() {
        let err = parse_space("universe: 1 2\ngranule: 1\ngranule: 5\n", 12).unwrap_err();
        assert_eq!(err.line, Some(3));
        assert_eq!(err.kind, FormatErrorKind::UnknownElement("5".into()));
        assert_eq!(err.to_string(), "line 3: unknown element `5`");
    }

    #[test]
    fn incomplete_table() {
        let text = "universe: 1\nmode: table\napprox: {} l={} u={}\n";
        let err = parse_space(text, 12).unwrap_err();
        assert!(matches!(err.kind, FormatErrorKind::Space(SpaceError::IncompleteTable { .. })));
    }

    #[test]
    fn mode_consistency() {
        let err = parse_space("universe: 1 2\nmode: relation\nrelation-kind: tolerance\ngranule: 1\n", 12).unwrap_err();
        assert_eq!(err.line, Some(4));
        let err = parse_space("universe: 1 2\npair: 1 2\n", 12).unwrap_err();
        assert_eq!(err.line, Some(2));
        let err = parse_space("granule: 1\nuniverse: 1\n", 12).unwrap_err();
        assert_eq!(err.line, Some(1));
        let err = parse_space("universe: 1 2\nmode: relation\n", 12).unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_space("universe 1 2\n", 12).unwrap_err().line, Some(1));
        assert_eq!(parse_space("universe: 1\nmode: fuzzy\n", 12).unwrap_err().line, Some(2));
        let err = parse_space("universe: 1\nmode: table\napprox: {1} l={1}\n", 12).unwrap_err();
        assert_eq!(err.line, Some(3));
        assert_eq!(parse_space("", 12).unwrap_err().line, None);
    }

    #[test]
    fn granule_errors_carry_lines() {
        let err = parse_space("universe: 1 2\ngranule: 1\ngranule:\n", 12).unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_space("universe: 1 2\ngranule: 1\ngranule: 1\n", 12).unwrap_err();
        assert_eq!(err.line, Some(3));
    }

    #[test]
    fn cap_is_enforced() {
        let err = parse_space("universe: 1 2 3\ngranule: 1\n", 2).unwrap_err();
        assert!(err.is_cap_exceeded());
        assert_eq!(err.line, Some(1));
    }

    #[test]
    fn relation_mode() {
        let text = "universe: a b c\nmode: relation\nrelation-kind: equivalence\n\
                    pair: a a\npair: b b\npair: c c\npair: a b\npair: b a\n";
        let s = parse_space(text, 12).unwrap();
        assert_eq!(s.granulation().len(), 2);
        let bad = "universe: a b\nmode: relation\nrelation-kind: tolerance\npair: a a\npair: b b\npair: a b\n";
        let err = parse_space(bad, 12).unwrap_err();
        assert!(matches!(err.kind, FormatErrorKind::Space(SpaceError::InvalidRelation { .. })));
    }

    #[test]
    fn round_trips() {
        for s in [fixtures::e0(), fixtures::e1(), fixtures::vee(), fixtures::discrete(3)] {
            assert_eq!(parse_space(&format_space(&s), 12).unwrap(), s);
        }
        let text = "universe: a b\nmode: relation\nrelation-kind: quasi-equivalence\npair: a a\npair: b b\npair: a b\n";
        let s = parse_space(text, 12).unwrap();
        assert_eq!(parse_space(&format_space(&s), 12).unwrap(), s);
    }
}
