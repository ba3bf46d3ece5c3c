//! Path-side characterisations of compaction.

use super::{DecoratedPath, Step};

/// Label of a step: an `H` step's decoration, or for a `V` step its final
/// height plus one.
fn labels_and_ends(path: &DecoratedPath) -> (Vec<u32>, Vec<(i64, i64)>) {
    let (mut x, mut y) = (0i64, 0i64);
    let mut labels = Vec::with_capacity(path.steps().len());
    let mut ends = Vec::with_capacity(path.steps().len());
    for s in path.steps() {
        match *s {
            Step::H(d) => {
                x += 1;
                labels.push(d);
            }
            Step::V => {
                y += 1;
                labels.push(y as u32 + 1);
            }
        }
        ends.push((x, y));
    }
    (labels, ends)
}

/// For every `V` step (by index), the labels `(v1, v2)` of the left and right
/// children of its internal node.
///
/// `v2` is the label of the preceding step. `v1` is the label of the last
/// earlier step ending on the south-west diagonal through the end of the `V`,
/// or 1 if the diagonal only meets the path at the origin.
pub fn v_pairs(path: &DecoratedPath) -> Vec<(usize, (u32, u32))> {
    let (labels, ends) = labels_and_ends(path);
    let mut out = Vec::new();
    for (i, s) in path.steps().iter().enumerate() {
        if *s != Step::V {
            continue;
        }
        let (x, y) = ends[i];
        let v2 = labels[i - 1];
        let v1 = (0..i)
            .rev()
            .find(|&j| ends[j].0 - ends[j].1 == x - y && ends[j].0 < x)
            .map_or(1, |j| labels[j]);
        out.push((i, (v1, v2)));
    }
    out
}

/// Every `H H V` pattern's decoration pair differs from `(v1, v2)` of every
/// earlier `V` step.
pub fn is_c_decorated(path: &DecoratedPath) -> bool {
    let steps = path.steps();
    let pairs = v_pairs(path);
    for (k, &(i, _)) in pairs.iter().enumerate() {
        if i < 2 {
            continue;
        }
        if let (Step::H(h1), Step::H(h2)) = (steps[i - 2], steps[i - 1]) {
            if pairs[..k].iter().any(|&(_, p)| p == (h1, h2)) {
                return false;
            }
        }
    }
    true
}

/// Every `H H V` pattern has distinct decorations unless both are 1.
pub fn is_h_decorated(path: &DecoratedPath) -> bool {
    path.steps().windows(3).all(|w| match *w {
        [Step::H(a), Step::H(b), Step::V] => a != b || a == 1,
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{enumerate_paths, is_compacted, RelaxedTree};

    #[test]
    fn v_pair_examples() {
        let p: DecoratedPath = "H:1 V H:1 H:2 V V".parse().unwrap();
        let pairs: Vec<_> = v_pairs(&p).into_iter().map(|(_, q)| q).collect();
        assert_eq!(pairs, [(1, 1), (1, 2), (2, 3)]);
        let t = RelaxedTree::from_path(&p).unwrap();
        for (k, [a, b]) in t.child_table().iter().enumerate() {
            assert_eq!((a.target(), b.target()), pairs[k]);
        }
    }

    #[test]
    fn counts_match_compacted_sequence() {
        let c = [1, 1, 3, 15, 111, 1119];
        for n in 0..=5 {
            let paths = enumerate_paths(n).unwrap();
            let cc = paths.iter().filter(|p| is_c_decorated(p)).count();
            let hh = paths.iter().filter(|p| is_h_decorated(p)).count();
            assert_eq!(cc, c[n], "C-decorated, n={n}");
            assert_eq!(hh, c[n], "H-decorated, n={n}");
        }
    }

    #[test]
    fn agrees_with_tree_predicate() {
        for n in 0..=4 {
            for p in enumerate_paths(n).unwrap() {
                let t = RelaxedTree::from_path(&p).unwrap();
                assert_eq!(is_c_decorated(&p), is_compacted(&t), "{p}");
            }
        }
    }

    #[test]
    fn h_rule() {
        assert!(!is_h_decorated(&"H:1 V H:2 H:2 V V".parse().unwrap()));
        assert!(is_h_decorated(&"H:1 V H:1 H:1 V V".parse().unwrap()));
        for n in 0..=2 {
            assert!(enumerate_paths(n).unwrap().iter().all(is_c_decorated));
        }
    }
}
