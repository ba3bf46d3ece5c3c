use std::fmt::Write;

use super::{Child, RelaxedTree};

/// Graphviz rendering: spine edges solid, pointer edges dashed, the left-most
/// leaf drawn as a box. Nodes are named by postorder label.
pub fn tree_to_dot(tree: &RelaxedTree) -> String {
    let mut out =
        String::from("digraph relaxed_tree {\n  node [shape=circle];\n  1 [shape=box];\n");
    for (i, pair) in tree.child_table().iter().enumerate() {
        let label = i + 2;
        writeln!(out, "  {label};").unwrap();
        for (side, c) in ["l", "r"].iter().zip(pair) {
            match c {
                Child::Leftmost => writeln!(out, "  {label} -> 1 [label={side}];"),
                Child::Node(t) => writeln!(out, "  {label} -> {t} [label={side}];"),
                Child::Pointer(t) => {
                    writeln!(out, "  {label} -> {t} [label={side}, style=dashed];")
                }
            }
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_dot() {
        let t = RelaxedTree::from_path(&"H:1 V".parse().unwrap()).unwrap();
        let dot = tree_to_dot(&t);
        assert!(dot.contains("2 -> 1 [label=l];"));
        assert!(dot.contains("2 -> 1 [label=r, style=dashed];"));
    }
}
