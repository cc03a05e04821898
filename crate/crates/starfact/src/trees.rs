//! Bicoloured plane rooted trees and their correspondence with valid words.
//!
//! A tree for a cycle type with lengths `ℓ_1, …, ℓ_m` has a white root
//! labelled 1, the remaining white vertices distinctly labelled `2, …, m`,
//! black vertices only as leaves, exactly `ℓ_i - 1` black children under the
//! white vertex labelled `i`, and `n` vertices in total.
//!
//! [`word_to_tree`] parses a word left to right with an *active* vertex,
//! initially the root:
//!
//! * the leftmost occurrence of a letter `j ≠ 1` appends a new white child
//!   labelled `j` to the active vertex and makes it active;
//! * the rightmost occurrence of `j ≠ 1` re-activates the parent;
//! * anything else (middle occurrences and every 1) appends a black leaf to
//!   the active vertex.
//!
//! [`tree_to_word`] is the inverse traversal.

use std::fmt::Write as _;

use crate::error::Error;
use crate::perm::CycleDecomposition;
use crate::words::{is_valid_word, Word};

/// A vertex of a bicoloured plane tree; children are ordered left to right.
///
/// Black vertices carry a child list so that malformed trees are
/// representable; validation rejects black vertices with children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    White { label: usize, children: Vec<Node> },
    Black { children: Vec<Node> },
}

impl Node {
    pub fn white(label: usize, children: Vec<Node>) -> Node {
        Node::White { label, children }
    }

    /// A black leaf.
    pub fn black() -> Node {
        Node::Black {
            children: Vec::new(),
        }
    }

    pub fn children(&self) -> &[Node] {
        match self {
            Node::White { children, .. } | Node::Black { children } => children,
        }
    }

    pub fn is_black(&self) -> bool {
        matches!(self, Node::Black { .. })
    }
}

/// A plane rooted tree; equality is structural (shape, colours, labels and
/// child order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicolouredTree {
    pub root: Node,
}

impl BicolouredTree {
    pub fn vertex_count(&self) -> usize {
        fn count(node: &Node) -> usize {
            1 + node.children().iter().map(count).sum::<usize>()
        }
        count(&self.root)
    }

    pub fn white_count(&self) -> usize {
        fn count(node: &Node) -> usize {
            let own = usize::from(!node.is_black());
            own + node.children().iter().map(count).sum::<usize>()
        }
        count(&self.root)
    }

    pub fn black_count(&self) -> usize {
        self.vertex_count() - self.white_count()
    }

    /// Compact nested-parenthesis form: a white vertex is its label,
    /// followed by its children in parentheses when it has any; a black
    /// leaf is `*`. Example: `1(5(*) * 3(* 2 * * 4) *)`.
    pub fn to_paren(&self) -> String {
        fn emit(node: &Node, out: &mut String) {
            match node {
                Node::White { label, children } => {
                    write!(out, "{label}").unwrap();
                    if !children.is_empty() {
                        out.push('(');
                        for (i, child) in children.iter().enumerate() {
                            if i > 0 {
                                out.push(' ');
                            }
                            emit(child, out);
                        }
                        out.push(')');
                    }
                }
                Node::Black { children } => {
                    out.push('*');
                    // Malformed black-internal nodes still print their
                    // children so the output stays faithful.
                    for child in children {
                        out.push('(');
                        emit(child, out);
                        out.push(')');
                    }
                }
            }
        }
        let mut out = String::new();
        emit(&self.root, &mut out);
        out
    }

    /// DOT digraph with child order preserved (`ordering=out`); node ids are
    /// assigned by preorder rank, white nodes show their label, black nodes
    /// are filled and unlabelled.
    pub fn to_dot(&self) -> String {
        fn emit(node: &Node, next_id: &mut usize, nodes: &mut String, edges: &mut String) -> usize {
            let id = *next_id;
            *next_id += 1;
            match node {
                Node::White { label, .. } => {
                    writeln!(nodes, "  n{id} [shape=circle, label=\"{label}\"];").unwrap();
                }
                Node::Black { .. } => {
                    writeln!(
                        nodes,
                        "  n{id} [shape=circle, style=filled, fillcolor=black, label=\"\"];"
                    )
                    .unwrap();
                }
            }
            for child in node.children() {
                let child_id = emit(child, next_id, nodes, edges);
                writeln!(edges, "  n{id} -> n{child_id};").unwrap();
            }
            id
        }
        let mut nodes = String::new();
        let mut edges = String::new();
        emit(&self.root, &mut 0, &mut nodes, &mut edges);
        format!("digraph tree {{\n  ordering=out;\n{nodes}{edges}}}\n")
    }
}

/// Builds the tree for a valid word.
pub fn word_to_tree(letters: &[usize], decomp: &CycleDecomposition) -> Result<BicolouredTree, Error> {
    if !is_valid_word(letters, decomp) {
        return Err(Error::InvalidWord {
            reason: "word is not valid for this cycle type".into(),
        });
    }
    let m = decomp.cycle_count();
    let mut remaining: Vec<usize> = vec![0; m + 1];
    for &x in letters {
        remaining[x] += 1;
    }
    let mut seen = vec![0usize; m + 1];

    // Stack of open white vertices; the bottom frame is the root.
    let mut stack: Vec<(usize, Vec<Node>)> = vec![(1, Vec::new())];
    for &x in letters {
        seen[x] += 1;
        if x == 1 {
            // The pattern exclusions pin the active vertex to the root here.
            assert!(stack.len() == 1, "letter 1 away from the root");
            stack.last_mut().unwrap().1.push(Node::black());
        } else if seen[x] == 1 {
            stack.push((x, Vec::new()));
        } else if seen[x] == remaining[x] {
            let (label, children) = stack.pop().expect("rightmost occurrence closes an open vertex");
            assert!(label == x, "rightmost occurrence away from its own vertex");
            let node = Node::white(label, children);
            stack
                .last_mut()
                .expect("the root frame is never popped")
                .1
                .push(node);
        } else {
            let &(label, _) = stack.last().unwrap();
            assert!(label == x, "middle occurrence away from its own vertex");
            stack.last_mut().unwrap().1.push(Node::black());
        }
    }
    assert!(stack.len() == 1, "every opened vertex is closed");
    let (_, children) = stack.pop().unwrap();
    Ok(BicolouredTree {
        root: Node::white(1, children),
    })
}

/// Reads the word back off a tree: depth-first, left to right, emitting a
/// non-root white label on arrival and on departure, and the parent's label
/// for every black leaf.
pub fn tree_to_word(tree: &BicolouredTree) -> Result<Word, Error> {
    check_structure(tree)?;
    fn emit(node: &Node, parent_label: usize, out: &mut Vec<usize>) {
        match node {
            Node::White { label, children } => {
                out.push(*label);
                for child in children {
                    emit(child, *label, out);
                }
                out.push(*label);
            }
            Node::Black { .. } => out.push(parent_label),
        }
    }
    let mut letters = Vec::new();
    if let Node::White { label, children } = &tree.root {
        for child in children {
            emit(child, *label, &mut letters);
        }
    }
    Ok(Word(letters))
}

/// Checks the colour and labelling rules that do not depend on a cycle
/// type: white root labelled 1, non-root whites distinctly labelled
/// `2..=m`, black vertices leaves.
fn check_structure(tree: &BicolouredTree) -> Result<(), Error> {
    let root_label = match &tree.root {
        Node::White { label, .. } => *label,
        Node::Black { .. } => {
            return Err(Error::InvalidTree {
                reason: "the root vertex must be white".into(),
            })
        }
    };
    if root_label != 1 {
        return Err(Error::InvalidTree {
            reason: format!("the root must have label 1, found {root_label}"),
        });
    }

    fn walk(node: &Node, labels: &mut Vec<usize>) -> Result<(), Error> {
        if node.is_black() && !node.children().is_empty() {
            return Err(Error::InvalidTree {
                reason: "every black vertex must be a leaf".into(),
            });
        }
        if let Node::White { label, .. } = node {
            labels.push(*label);
        }
        for child in node.children() {
            walk(child, labels)?;
        }
        Ok(())
    }
    let mut labels = Vec::new();
    walk(&tree.root, &mut labels)?;

    let m = labels.len();
    let mut sorted = labels;
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != m || sorted != (1..=m).collect::<Vec<_>>() {
        return Err(Error::InvalidTree {
            reason: format!("white vertices must be distinctly labelled 1..={m}"),
        });
    }
    Ok(())
}

/// Whether the tree satisfies every rule for the given cycle type.
pub fn validate_tree(tree: &BicolouredTree, decomp: &CycleDecomposition) -> bool {
    if check_structure(tree).is_err() {
        return false;
    }
    if tree.white_count() != decomp.cycle_count() {
        return false;
    }
    if tree.vertex_count() != decomp.degree() {
        return false;
    }
    fn black_children_match(node: &Node, decomp: &CycleDecomposition) -> bool {
        if let Node::White { label, children } = node {
            let blacks = children.iter().filter(|c| c.is_black()).count();
            if blacks != decomp.length_of(*label) - 1 {
                return false;
            }
        }
        node.children()
            .iter()
            .all(|child| black_children_match(child, decomp))
    }
    black_children_match(&tree.root, decomp)
}
