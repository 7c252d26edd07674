use std::fmt;

use thiserror::Error;

use super::finite::FiniteAlgebra;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("{op} takes {expected} arguments, got {found}")]
    Arity { op: String, expected: usize, found: usize },
    #[error("term uses {needed} variables but {given} values were supplied")]
    Assignment { needed: usize, given: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Var(usize),
    Elem(usize),
    App(usize, Vec<Node>),
}

/// A term over a fixed algebra's signature, with variables numbered by
/// their position in the variable list given at parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    node: Node,
    vars: Vec<String>,
    text: String,
}

impl Term {
    /// Parses a prefix s-expression such as `(and (or a (box b)) z)`.
    /// Symbols resolve to variables first, then element names, then
    /// operation names; a binary operation given more than two arguments
    /// folds to the left.
    pub fn parse(alg: &FiniteAlgebra, text: &str, vars: &[&str]) -> Result<Term, TermError> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let node = parse_node(alg, &tokens, &mut pos, vars)?;
        if let Some(&(at, _)) = tokens.get(pos) {
            return Err(TermError::Syntax {
                pos: at,
                msg: "trailing input".into(),
            });
        }
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let text = render(alg, &node, &vars);
        Ok(Term { node, vars, text })
    }

    /// A ternary term in the variables `a`, `b`, `z`.
    pub fn ternary(alg: &FiniteAlgebra, text: &str) -> Result<Term, TermError> {
        Self::parse(alg, text, &["a", "b", "z"])
    }

    /// A unary term in the variable `x`.
    pub fn unary(alg: &FiniteAlgebra, text: &str) -> Result<Term, TermError> {
        Self::parse(alg, text, &["x"])
    }

    /// The unary identity term.
    pub fn identity() -> Term {
        Term {
            node: Node::Var(0),
            vars: vec!["x".into()],
            text: "x".into(),
        }
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn eval(&self, alg: &FiniteAlgebra, assignment: &[usize]) -> Result<usize, TermError> {
        if assignment.len() < self.vars.len() {
            return Err(TermError::Assignment {
                needed: self.vars.len(),
                given: assignment.len(),
            });
        }
        Ok(eval_node(alg, &self.node, assignment))
    }

    /// Evaluation without the assignment length check.
    pub(crate) fn apply(&self, alg: &FiniteAlgebra, assignment: &[usize]) -> usize {
        eval_node(alg, &self.node, assignment)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn eval_node(alg: &FiniteAlgebra, node: &Node, env: &[usize]) -> usize {
    match node {
        Node::Var(i) => env[*i],
        Node::Elem(e) => *e,
        Node::App(op, args) => {
            let vals: Vec<usize> = args.iter().map(|a| eval_node(alg, a, env)).collect();
            alg.apply(*op, &vals)
        }
    }
}

fn render(alg: &FiniteAlgebra, node: &Node, vars: &[String]) -> String {
    match node {
        Node::Var(i) => vars[*i].clone(),
        Node::Elem(e) => alg.element_name(*e).to_string(),
        Node::App(op, args) if args.is_empty() => alg.operations()[*op].name().to_string(),
        Node::App(op, args) => {
            let parts: Vec<String> = args.iter().map(|a| render(alg, a, vars)).collect();
            format!("({} {})", alg.operations()[*op].name(), parts.join(" "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Symbol(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, TermError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '(' => {
                out.push((i, Token::Open));
                chars.next();
            }
            ')' => {
                out.push((i, Token::Close));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut sym = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c == '(' || c == ')' || c.is_whitespace() {
                        break;
                    }
                    sym.push(c);
                    chars.next();
                }
                out.push((i, Token::Symbol(sym)));
            }
        }
    }
    if out.is_empty() {
        return Err(TermError::Syntax {
            pos: 0,
            msg: "empty term".into(),
        });
    }
    Ok(out)
}

fn parse_node(
    alg: &FiniteAlgebra,
    tokens: &[(usize, Token)],
    pos: &mut usize,
    vars: &[&str],
) -> Result<Node, TermError> {
    let end = tokens.last().map(|(p, _)| p + 1).unwrap_or(0);
    let Some((at, tok)) = tokens.get(*pos) else {
        return Err(TermError::Syntax {
            pos: end,
            msg: "unexpected end of term".into(),
        });
    };
    *pos += 1;
    match tok {
        Token::Close => Err(TermError::Syntax {
            pos: *at,
            msg: "unexpected ')'".into(),
        }),
        Token::Symbol(s) => resolve_atom(alg, s, vars),
        Token::Open => {
            let head = match tokens.get(*pos) {
                Some((_, Token::Symbol(s))) => s.clone(),
                Some((p, _)) => {
                    return Err(TermError::Syntax {
                        pos: *p,
                        msg: "expected an operation name".into(),
                    })
                }
                None => {
                    return Err(TermError::Syntax {
                        pos: end,
                        msg: "unexpected end of term".into(),
                    })
                }
            };
            *pos += 1;
            let op = alg
                .operation_index(&head)
                .ok_or_else(|| TermError::UnknownSymbol(head.clone()))?;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some((_, Token::Close)) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_node(alg, tokens, pos, vars)?),
                    None => {
                        return Err(TermError::Syntax {
                            pos: end,
                            msg: "missing ')'".into(),
                        })
                    }
                }
            }
            build_app(alg, op, args)
        }
    }
}

fn resolve_atom(alg: &FiniteAlgebra, s: &str, vars: &[&str]) -> Result<Node, TermError> {
    if let Some(i) = vars.iter().position(|v| *v == s) {
        return Ok(Node::Var(i));
    }
    if let Some(e) = alg.element_index(s) {
        return Ok(Node::Elem(e));
    }
    match alg.operation_index(s) {
        Some(op) => build_app(alg, op, Vec::new()),
        None => Err(TermError::UnknownSymbol(s.to_string())),
    }
}

fn build_app(alg: &FiniteAlgebra, op: usize, args: Vec<Node>) -> Result<Node, TermError> {
    let o = &alg.operations()[op];
    if o.arity() == 2 && args.len() > 2 {
        let mut it = args.into_iter();
        let first = it.next().expect("more than two arguments");
        return Ok(it.fold(first, |acc, x| Node::App(op, vec![acc, x])));
    }
    if args.len() != o.arity() {
        return Err(TermError::Arity {
            op: o.name().to_string(),
            expected: o.arity(),
            found: args.len(),
        });
    }
    Ok(Node::App(op, args))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::finite::{boolean_algebra, cyclic_group};

    #[test]
    fn evaluation_examples() {
        let b2 = boolean_algebra(1);
        let t = Term::ternary(&b2, "(xor (xor a b) z)").unwrap();
        assert_eq!(t.eval(&b2, &[1, 1, 0]), Ok(0));
        let id = Term::unary(&b2, "x").unwrap();
        assert_eq!(id.eval(&b2, &[1]), Ok(1));
        let z3 = cyclic_group(3);
        let t = Term::ternary(&z3, "(add (add a (neg b)) z)").unwrap();
        assert_eq!(t.eval(&z3, &[1, 2, 0]), Ok(2));
    }

    #[test]
    fn variadic_binary_folds_left() {
        let b4 = boolean_algebra(2);
        let t = Term::ternary(&b4, "(and a b z)").unwrap();
        assert_eq!(t.to_string(), "(and (and a b) z)");
        assert_eq!(t.eval(&b4, &[3, 1, 3]), Ok(1));
    }

    #[test]
    fn constants_and_elements() {
        let b4 = boolean_algebra(2);
        let t = Term::unary(&b4, "(or x one)").unwrap();
        assert_eq!(t.eval(&b4, &[0]), Ok(3));
        let t = Term::unary(&b4, "(and x 2)").unwrap();
        assert_eq!(t.eval(&b4, &[3]), Ok(2));
    }

    #[test]
    fn errors() {
        let b2 = boolean_algebra(1);
        assert_eq!(Term::ternary(&b2, "(nand a b)"), Err(TermError::UnknownSymbol("nand".into())));
        assert!(matches!(Term::ternary(&b2, "(not a b)"), Err(TermError::Arity { .. })));
        assert!(matches!(Term::ternary(&b2, "(and a b"), Err(TermError::Syntax { .. })));
        assert!(matches!(Term::ternary(&b2, "a b"), Err(TermError::Syntax { .. })));
        assert!(matches!(Term::ternary(&b2, ""), Err(TermError::Syntax { .. })));
        let t = Term::ternary(&b2, "(and a z)").unwrap();
        assert_eq!(t.eval(&b2, &[1]), Err(TermError::Assignment { needed: 3, given: 1 }));
    }
}
