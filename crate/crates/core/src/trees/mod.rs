//! Relaxed and compacted trees, decorated Dyck paths and the bijection
//! between them.
//!
//! Nodes are named by 1-based postorder labels: the left-most leaf is 1 and
//! the internal nodes are `2..=n+1`, so the root of a size-`n` tree is
//! `n + 1`.

mod compaction;
mod decorated;
mod dot;
mod enumerate;
mod path;

pub use compaction::{is_compacted, is_compacted_by_cherries, is_compacted_by_hashing};
pub use decorated::{is_c_decorated, is_h_decorated, v_pairs};
pub use dot::tree_to_dot;
pub use enumerate::{enumerate_compacted, enumerate_paths, enumerate_relaxed, ENUMERATION_CAP};
pub use path::{DecoratedPath, Step};

use crate::{Error, Result};

/// One child slot of an internal node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Child {
    /// The left-most leaf (label 1).
    Leftmost,
    /// A spine edge to the internal node with this label.
    Node(u32),
    /// A pointer edge to the node with this label.
    Pointer(u32),
}

impl Child {
    /// Label of the node this slot leads to, following pointers.
    pub fn target(self) -> u32 {
        match self {
            Child::Leftmost => 1,
            Child::Node(l) | Child::Pointer(l) => l,
        }
    }
}

/// A plain binary tree shape, used to build relaxed trees by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spine {
    Leaf,
    Node(Box<Spine>, Box<Spine>),
}

impl Spine {
    pub fn node(left: Spine, right: Spine) -> Spine {
        Spine::Node(Box::new(left), Box::new(right))
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            Spine::Leaf => 0,
            Spine::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }
}

/// A relaxed tree: internal node with label `i + 2` has children
/// `children[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelaxedTree {
    children: Vec<[Child; 2]>,
}

impl RelaxedTree {
    /// The size-0 tree consisting of the left-most leaf alone.
    pub fn leaf() -> Self {
        RelaxedTree {
            children: Vec::new(),
        }
    }

    /// Validates a child table: labels must follow the postorder of the spine,
    /// the first leaf must be the left-most leaf, and every pointer must
    /// target a node already completed in postorder.
    pub fn from_children(children: Vec<[Child; 2]>) -> Result<Self> {
        let n = children.len();
        if n == 0 {
            return Ok(Self::leaf());
        }
        let mut walk = Walk {
            children: &children,
            next: 2,
            done: 0,
        };
        walk.visit(Child::Node(n as u32 + 1))?;
        if walk.done != 0 && walk.next != n as u32 + 2 {
            return Err(Error::Validation(format!(
                "spine reaches {} internal nodes, table has {n}",
                walk.next - 2
            )));
        }
        Ok(RelaxedTree { children })
    }

    /// Builds a tree from its spine and the pointer targets of the
    /// non-left-most leaves in postorder.
    pub fn from_spine(spine: &Spine, targets: &[u32]) -> Result<Self> {
        fn go(
            s: &Spine,
            targets: &mut std::slice::Iter<'_, u32>,
            first: &mut bool,
            out: &mut Vec<[Child; 2]>,
        ) -> Result<Child> {
            match s {
                Spine::Leaf if *first => {
                    *first = false;
                    Ok(Child::Leftmost)
                }
                Spine::Leaf => targets
                    .next()
                    .map(|&t| Child::Pointer(t))
                    .ok_or_else(|| Error::Validation("too few pointer targets".into())),
                Spine::Node(l, r) => {
                    let a = go(l, targets, first, out)?;
                    let b = go(r, targets, first, out)?;
                    out.push([a, b]);
                    Ok(Child::Node(out.len() as u32 + 1))
                }
            }
        }
        let mut it = targets.iter();
        let mut first = true;
        let mut out = Vec::new();
        go(spine, &mut it, &mut first, &mut out)?;
        if it.next().is_some() {
            return Err(Error::Validation("too many pointer targets".into()));
        }
        Self::from_children(out)
    }

    pub fn size(&self) -> usize {
        self.children.len()
    }

    /// Label of the root, or 1 for the size-0 tree.
    pub fn root(&self) -> u32 {
        self.children.len() as u32 + 1
    }

    pub fn children(&self, label: u32) -> Option<[Child; 2]> {
        label
            .checked_sub(2)
            .and_then(|i| self.children.get(i as usize))
            .copied()
    }

    /// All child slots, indexed by `label - 2`.
    pub fn child_table(&self) -> &[[Child; 2]] {
        &self.children
    }

    /// Pointer targets of the non-left-most leaves in postorder.
    pub fn pointer_targets(&self) -> Vec<u32> {
        self.to_path()
            .steps()
            .iter()
            .filter_map(|s| match s {
                Step::H(d) => Some(*d),
                Step::V => None,
            })
            .collect()
    }

    pub fn spine(&self) -> Spine {
        fn go(t: &RelaxedTree, c: Child) -> Spine {
            match c {
                Child::Node(l) => {
                    let [a, b] = t.children(l).unwrap();
                    Spine::node(go(t, a), go(t, b))
                }
                _ => Spine::Leaf,
            }
        }
        if self.size() == 0 {
            Spine::Leaf
        } else {
            go(self, Child::Node(self.root()))
        }
    }

    /// The decorated Dyck path of the tree: `Path(T1, T2) = Path(T1) Path(T2) V`,
    /// a pointer leaf gives `H` decorated with its target, and the left-most
    /// leaf contributes nothing.
    pub fn to_path(&self) -> DecoratedPath {
        let mut steps = Vec::with_capacity(2 * self.size());
        // Explicit stack: (slot, children already expanded).
        let mut stack = Vec::new();
        if self.size() > 0 {
            stack.push((Child::Node(self.root()), false));
        }
        while let Some((c, expanded)) = stack.pop() {
            match c {
                Child::Leftmost => {}
                Child::Pointer(t) => steps.push(Step::H(t)),
                Child::Node(_) if expanded => steps.push(Step::V),
                Child::Node(l) => {
                    let [a, b] = self.children[(l - 2) as usize];
                    stack.push((c, true));
                    stack.push((b, false));
                    stack.push((a, false));
                }
            }
        }
        DecoratedPath::from_valid_steps(steps)
    }

    /// Inverse of [`RelaxedTree::to_path`].
    pub fn from_path(path: &DecoratedPath) -> Result<Self> {
        if !path.is_complete() {
            return Err(Error::Validation(format!(
                "path ends at ({}, {}), not on the diagonal",
                path.end().0,
                path.end().1
            )));
        }
        let mut stack = vec![Child::Leftmost];
        let mut children = Vec::with_capacity(path.size());
        for s in path.steps() {
            match *s {
                Step::H(d) => stack.push(Child::Pointer(d)),
                Step::V => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    children.push([a, b]);
                    stack.push(Child::Node(children.len() as u32 + 1));
                }
            }
        }
        Ok(RelaxedTree { children })
    }
}

struct Walk<'a> {
    children: &'a [[Child; 2]],
    next: u32,
    done: u32,
}

impl Walk<'_> {
    fn visit(&mut self, c: Child) -> Result<()> {
        match c {
            Child::Leftmost => {
                if self.done != 0 {
                    return Err(Error::Validation(
                        "left-most leaf is not the first leaf in postorder".into(),
                    ));
                }
                self.done = 1;
            }
            Child::Pointer(t) => {
                if self.done == 0 {
                    return Err(Error::Validation(
                        "first leaf in postorder must be the left-most leaf".into(),
                    ));
                }
                if t == 0 || t > self.done {
                    return Err(Error::Validation(format!(
                        "pointer to {t} does not precede its leaf (last completed node is {})",
                        self.done
                    )));
                }
            }
            Child::Node(l) => {
                let [a, b] = *l
                    .checked_sub(2)
                    .and_then(|i| self.children.get(i as usize))
                    .ok_or_else(|| Error::Validation(format!("no internal node labelled {l}")))?;
                self.visit(a)?;
                self.visit(b)?;
                if l != self.next {
                    return Err(Error::Validation(format!(
                        "internal node labelled {l} is number {} in postorder",
                        self.next
                    )));
                }
                self.next += 1;
                self.done = l;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cherry() -> Spine {
        Spine::node(Spine::Leaf, Spine::Leaf)
    }

    #[test]
    fn size_one() {
        let t = RelaxedTree::from_spine(&cherry(), &[1]).unwrap();
        assert_eq!(t.to_path().to_string(), "H:1 V");
        let back = RelaxedTree::from_path(&"H:1 V".parse().unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.child_table(), &[[Child::Leftmost, Child::Pointer(1)]]);
    }

    #[test]
    fn size_two_paths() {
        let mut paths: Vec<String> = enumerate_relaxed(2)
            .unwrap()
            .iter()
            .map(|t| t.to_path().to_string())
            .collect();
        paths.sort();
        assert_eq!(paths, ["H:1 H:1 V V", "H:1 V H:1 V", "H:1 V H:2 V"]);
    }

    #[test]
    fn second_pointer_to_label_two() {
        let t = RelaxedTree::from_path(&"H:1 V H:2 V".parse().unwrap()).unwrap();
        assert_eq!(t.children(3), Some([Child::Node(2), Child::Pointer(2)]));
    }

    #[test]
    fn rejects_bad_tables() {
        let late = vec![[Child::Leftmost, Child::Pointer(2)]];
        assert!(RelaxedTree::from_children(late).is_err());
        let no_leftmost = vec![[Child::Pointer(1), Child::Pointer(1)]];
        assert!(RelaxedTree::from_children(no_leftmost).is_err());
        let swapped = vec![
            [Child::Leftmost, Child::Pointer(1)],
            [Child::Pointer(1), Child::Pointer(1)],
            [Child::Node(3), Child::Node(2)],
        ];
        assert!(RelaxedTree::from_children(swapped).is_err());
        assert!(RelaxedTree::from_spine(&cherry(), &[]).is_err());
        assert!(RelaxedTree::from_spine(&cherry(), &[1, 1]).is_err());
    }

    #[test]
    fn spine_and_targets_roundtrip() {
        for t in enumerate_relaxed(4).unwrap() {
            let again = RelaxedTree::from_spine(&t.spine(), &t.pointer_targets()).unwrap();
            assert_eq!(again, t);
        }
    }
}
