use std::collections::HashMap;

use super::{Child, RelaxedTree};

/// No two distinct nodes expand to the same binary tree.
pub fn is_compacted(tree: &RelaxedTree) -> bool {
    is_compacted_by_hashing(tree)
}

/// Interns every expanded subtree bottom-up as a pair of child ids; a repeated
/// pair means two nodes expand to the same binary tree.
pub fn is_compacted_by_hashing(tree: &RelaxedTree) -> bool {
    // Id 0 is the left-most leaf; node with label `l` gets `ids[l - 2]`.
    let mut ids: Vec<u32> = Vec::with_capacity(tree.size());
    let mut seen: HashMap<(u32, u32), u32> = HashMap::with_capacity(tree.size());
    let id_of = |ids: &[u32], c: Child| match c.target() {
        1 => 0,
        l => ids[(l - 2) as usize],
    };
    for [a, b] in tree.child_table() {
        let key = (id_of(&ids, *a), id_of(&ids, *b));
        let fresh = seen.len() as u32 + 1;
        if *seen.entry(key).or_insert(fresh) != fresh {
            return false;
        }
        ids.push(fresh);
    }
    true
}

/// Pairwise check that no two internal nodes have the same left and the same
/// right child once pointers are followed.
pub fn is_compacted_by_cherries(tree: &RelaxedTree) -> bool {
    let resolved: Vec<(u32, u32)> = tree
        .child_table()
        .iter()
        .map(|[a, b]| (a.target(), b.target()))
        .collect();
    resolved
        .iter()
        .enumerate()
        .all(|(i, u)| resolved[i + 1..].iter().all(|v| u != v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{enumerate_relaxed, Spine};

    fn figure_spine() -> Spine {
        let cherry = || Spine::node(Spine::Leaf, Spine::Leaf);
        Spine::node(cherry(), cherry())
    }

    #[test]
    fn repeated_cherry_is_not_compacted() {
        let bad = RelaxedTree::from_spine(&figure_spine(), &[1, 1, 1]).unwrap();
        assert!(!is_compacted_by_hashing(&bad));
        assert!(!is_compacted_by_cherries(&bad));
        let good = RelaxedTree::from_spine(&figure_spine(), &[1, 2, 1]).unwrap();
        assert!(is_compacted_by_hashing(&good));
        assert!(is_compacted_by_cherries(&good));
    }

    #[test]
    fn variants_agree_and_small_trees_compact() {
        for n in 0..=5 {
            for t in enumerate_relaxed(n).unwrap() {
                let a = is_compacted_by_hashing(&t);
                assert_eq!(a, is_compacted_by_cherries(&t), "{}", t.to_path());
                if n <= 2 {
                    assert!(a);
                }
            }
        }
    }
}
