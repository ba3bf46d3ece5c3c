//! Minimal acyclic DFAs over `{a, b}` and their relation to compacted trees.
//!
//! A relaxed tree read as an automaton: internal nodes are transient states,
//! the left-most leaf is the sink, the root is initial, and the `a`/`b`
//! transitions follow the left/right child or pointer. State `i` corresponds
//! to postorder label `i + 1`, so the sink is state 0.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write;

use rug::Integer;

use crate::exact::{CountTable, StorageMode};
use crate::trees::{enumerate_relaxed, is_compacted, RelaxedTree};
use crate::{Error, Result};

/// Largest `n` accepted by [`brute_count_minimal`].
pub const BRUTE_FORCE_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    /// `delta[q] = [on a, on b]`.
    delta: Vec<[usize; 2]>,
    initial: usize,
    finals: Vec<bool>,
    sink: usize,
}

impl Dfa {
    /// Checks only that the tables are well formed.
    pub fn new(
        delta: Vec<[usize; 2]>,
        initial: usize,
        finals: Vec<bool>,
        sink: usize,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 || finals.len() != n || initial >= n || sink >= n {
            return Err(Error::Validation("inconsistent automaton tables".into()));
        }
        if delta.iter().flatten().any(|&t| t >= n) {
            return Err(Error::Validation("transition to a missing state".into()));
        }
        Ok(Dfa {
            delta,
            initial,
            finals,
            sink,
        })
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn step(&self, q: usize, letter: u8) -> usize {
        self.delta[q][(letter == b'b') as usize]
    }

    pub fn accepts(&self, word: &str) -> bool {
        let q = word.bytes().fold(self.initial, |q, c| self.step(q, c));
        self.finals[q]
    }

    /// Relabels states in breadth-first order from the initial state (`a`
    /// before `b`); two initially connected automata are isomorphic iff their
    /// canonical forms are equal. Unreachable states are dropped.
    pub fn canonical(&self) -> Dfa {
        let mut order = vec![usize::MAX; self.states()];
        let mut queue = VecDeque::from([self.initial]);
        let mut seen = Vec::new();
        order[self.initial] = 0;
        while let Some(q) = queue.pop_front() {
            seen.push(q);
            for t in self.delta[q] {
                if order[t] == usize::MAX {
                    order[t] = order.iter().filter(|&&o| o != usize::MAX).count();
                    queue.push_back(t);
                }
            }
        }
        let delta = seen
            .iter()
            .map(|&q| self.delta[q].map(|t| order[t]))
            .collect();
        let finals = seen.iter().map(|&q| self.finals[q]).collect();
        let sink = if order[self.sink] == usize::MAX {
            0
        } else {
            order[self.sink]
        };
        Dfa {
            delta,
            initial: 0,
            finals,
            sink,
        }
    }
}

/// The automaton of a relaxed tree with final states given by postorder
/// labels. No minimality requirement is checked.
pub fn structure_to_dfa(tree: &RelaxedTree, finals: &BTreeSet<u32>) -> Result<Dfa> {
    let n = tree.size();
    if finals.iter().any(|&l| l < 2 || l as usize > n + 1) {
        return Err(Error::Validation(
            "final states must be internal nodes (labels 2..=n+1)".into(),
        ));
    }
    let mut delta = vec![[0usize; 2]; n + 1];
    for (i, pair) in tree.child_table().iter().enumerate() {
        delta[i + 1] = pair.map(|c| c.target() as usize - 1);
    }
    let fin = (0..=n).map(|q| finals.contains(&(q as u32 + 1))).collect();
    Dfa::new(delta, n, fin, 0)
}

/// The minimal automaton of a compacted tree. The node whose two children
/// are the sink (label 2) must be final.
pub fn tree_to_dfa(tree: &RelaxedTree, finals: &BTreeSet<u32>) -> Result<Dfa> {
    if !is_compacted(tree) {
        return Err(Error::Validation("tree is not compacted".into()));
    }
    if tree.size() > 0 && !finals.contains(&2) {
        return Err(Error::Validation(
            "the node with both edges to the sink (label 2) must be final".into(),
        ));
    }
    structure_to_dfa(tree, finals)
}

/// The `2^(n-1)` legal final-state sets for a tree of size `n >= 1`.
pub fn legal_finals(n: usize) -> Vec<BTreeSet<u32>> {
    if n == 0 {
        return vec![BTreeSet::new()];
    }
    (0u64..1 << (n - 1))
        .map(|mask| {
            let mut s = BTreeSet::from([2u32]);
            s.extend(
                (0..n - 1)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| i as u32 + 3),
            );
            s
        })
        .collect()
}

fn has_unique_sink(dfa: &Dfa) -> bool {
    let is_sink = |q: usize| !dfa.finals[q] && dfa.delta[q] == [q, q];
    is_sink(dfa.sink) && (0..dfa.states()).filter(|&q| is_sink(q)).count() == 1
}

fn is_acyclic(dfa: &Dfa) -> bool {
    // 0 = unvisited, 1 = on stack, 2 = done.
    let mut mark = vec![0u8; dfa.states()];
    for start in 0..dfa.states() {
        if mark[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        mark[start] = 1;
        while let Some(&mut (q, ref mut next)) = stack.last_mut() {
            if *next == 2 {
                mark[q] = 2;
                stack.pop();
                continue;
            }
            let t = dfa.delta[q][*next];
            *next += 1;
            if t == q && q == dfa.sink {
                continue;
            }
            match mark[t] {
                0 => {
                    mark[t] = 1;
                    stack.push((t, 0));
                }
                1 => return false,
                _ => {}
            }
        }
    }
    true
}

fn is_initially_connected(dfa: &Dfa) -> bool {
    let mut seen = vec![false; dfa.states()];
    let mut stack = vec![dfa.initial];
    seen[dfa.initial] = true;
    while let Some(q) = stack.pop() {
        for t in dfa.delta[q] {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Moore partition refinement; returns the class of every state.
pub fn moore_classes(dfa: &Dfa) -> Vec<usize> {
    let mut class: Vec<usize> = dfa.finals.iter().map(|&f| f as usize).collect();
    let mut count = class.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let next: Vec<usize> = (0..dfa.states())
            .map(|q| {
                let key = (class[q], class[dfa.delta[q][0]], class[dfa.delta[q][1]]);
                let fresh = ids.len();
                *ids.entry(key).or_insert(fresh)
            })
            .collect();
        if ids.len() == count {
            return next;
        }
        count = ids.len();
        class = next;
    }
}

/// Right-language ids of an acyclic automaton, computed bottom-up by
/// interning `(final, id(a-successor), id(b-successor))`. States with an
/// empty right language share id 0.
pub fn right_language_ids(dfa: &Dfa) -> Option<Vec<usize>> {
    if !is_acyclic(dfa) {
        return None;
    }
    let n = dfa.states();
    let mut ids = vec![usize::MAX; n];
    let mut table: HashMap<(bool, usize, usize), usize> = HashMap::new();
    fn go(
        dfa: &Dfa,
        q: usize,
        ids: &mut [usize],
        table: &mut HashMap<(bool, usize, usize), usize>,
    ) -> usize {
        if ids[q] != usize::MAX {
            return ids[q];
        }
        let id = if q == dfa.sink && dfa.delta[q] == [q, q] && !dfa.finals[q] {
            0
        } else {
            let a = go(dfa, dfa.delta[q][0], ids, table);
            let b = go(dfa, dfa.delta[q][1], ids, table);
            if !dfa.finals[q] && a == 0 && b == 0 {
                0
            } else {
                let fresh = table.len() + 1;
                *table.entry((dfa.finals[q], a, b)).or_insert(fresh)
            }
        };
        ids[q] = id;
        id
    }
    for q in 0..n {
        go(dfa, q, &mut ids, &mut table);
    }
    Some(ids)
}

/// The four conditions for being the minimal automaton of a finite
/// language: unique sink, acyclic apart from the sink loops, every state
/// reachable, and no two states with the same right language.
pub fn is_minimal_finite(dfa: &Dfa) -> bool {
    has_unique_sink(dfa)
        && is_acyclic(dfa)
        && is_initially_connected(dfa)
        && moore_classes(dfa).iter().collect::<BTreeSet<_>>().len() == dfa.states()
}

/// Number of minimal automata with `n` transient states recognising a finite
/// language, by checking every relaxed transition structure against every
/// final-state set.
pub fn brute_count_minimal(n: usize) -> Result<Integer> {
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Capacity {
            what: "brute-force automaton count",
            requested: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut count = 0u64;
    for tree in enumerate_relaxed(n)? {
        for mask in 0u64..1 << n {
            let finals = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i as u32 + 2)
                .collect();
            if is_minimal_finite(&structure_to_dfa(&tree, &finals)?) {
                count += 1;
            }
        }
    }
    Ok(Integer::from(count))
}

/// `(2^(n-1) c_n, 2^(n-1) r_n)` for `n >= 1`.
pub fn dfa_bounds(n: usize) -> Result<(Integer, Integer)> {
    let c = CountTable::compacted(n, StorageMode::RollingRow)?;
    let r = CountTable::relaxed(n, StorageMode::RollingRow)?;
    bounds_from(&c, &r, n)
}

/// Bounds for `n` read from precomputed diagonals.
pub fn bounds_from(
    compacted: &CountTable,
    relaxed: &CountTable,
    n: usize,
) -> Result<(Integer, Integer)> {
    if n == 0 {
        return Err(Error::Domain("automaton bounds need n >= 1".into()));
    }
    let shift = n as u32 - 1;
    Ok((
        Integer::from(&compacted.diagonal()[n] << shift),
        Integer::from(&relaxed.diagonal()[n] << shift),
    ))
}

/// Accepted words of length at most `max_len`, in lexicographic order.
pub fn language_of(dfa: &Dfa, max_len: usize) -> Vec<String> {
    fn go(dfa: &Dfa, q: usize, word: &mut String, max_len: usize, out: &mut Vec<String>) {
        if dfa.finals[q] {
            out.push(word.clone());
        }
        if word.len() == max_len {
            return;
        }
        for (c, t) in [('a', dfa.delta[q][0]), ('b', dfa.delta[q][1])] {
            if t == dfa.sink && !dfa.finals[t] && dfa.delta[t] == [t, t] {
                continue;
            }
            word.push(c);
            go(dfa, t, word, max_len, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    go(dfa, dfa.initial, &mut String::new(), max_len, &mut out);
    out
}

/// Graphviz rendering; final states are double circles, the sink is a box.
pub fn dfa_to_dot(dfa: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
    for q in 0..dfa.states() {
        let shape = if q == dfa.sink {
            "box"
        } else if dfa.finals[q] {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  q{q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  start -> q{};", dfa.initial).unwrap();
    for (q, [a, b]) in dfa.delta.iter().enumerate() {
        if a == b {
            writeln!(out, "  q{q} -> q{a} [label=\"a,b\"];").unwrap();
        } else {
            writeln!(out, "  q{q} -> q{a} [label=a];").unwrap();
            writeln!(out, "  q{q} -> q{b} [label=b];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// `n,lower,m2n,upper` rows for `1..=max_n`; `m2n` is filled only up to
/// the brute-force cap.
pub fn bounds_csv(max_n: usize, brute: bool) -> Result<String> {
    let c = CountTable::compacted(max_n, StorageMode::RollingRow)?;
    let r = CountTable::relaxed(max_n, StorageMode::RollingRow)?;
    let mut out = String::from("n,lower,m2n,upper\n");
    for n in 1..=max_n {
        let (lo, hi) = bounds_from(&c, &r, n)?;
        let m = if brute && n <= BRUTE_FORCE_CAP {
            brute_count_minimal(n)?.to_string()
        } else {
            String::new()
        };
        writeln!(out, "{n},{lo},{m},{hi}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::enumerate_compacted;

    fn figure_tree() -> RelaxedTree {
        RelaxedTree::from_path(&"H:1 H:1 V V H:2 V H:3 V".parse().unwrap()).unwrap()
    }

    #[test]
    fn five_state_example() {
        let t = figure_tree();
        assert!(is_compacted(&t));
        let dfa = tree_to_dfa(&t, &BTreeSet::from([2, 3])).unwrap();
        assert_eq!(dfa.states(), 5);
        assert!(is_minimal_finite(&dfa));
        assert_eq!(language_of(&dfa, 10), ["aa", "aab", "ab", "b", "bb"]);
    }

    #[test]
    fn size_one_accepts_empty_word() {
        let t = RelaxedTree::from_path(&"H:1 V".parse().unwrap()).unwrap();
        let dfa = tree_to_dfa(&t, &BTreeSet::from([2])).unwrap();
        assert_eq!(dfa.states(), 2);
        assert!(is_minimal_finite(&dfa));
        assert_eq!(language_of(&dfa, 5), [""]);
        assert!(tree_to_dfa(&t, &BTreeSet::new()).is_err());
    }

    #[test]
    fn sink_only_language_is_empty() {
        let dfa = Dfa::new(vec![[0, 0]], 0, vec![false], 0).unwrap();
        assert!(language_of(&dfa, 4).is_empty());
    }

    #[test]
    fn equivalent_finals_are_not_reduced() {
        // Two final states whose transitions both go to the sink.
        let dfa = Dfa::new(
            vec![[0, 0], [0, 0], [0, 0], [1, 2]],
            3,
            vec![false, true, true, false],
            0,
        )
        .unwrap();
        assert!(!is_minimal_finite(&dfa));
        let cyclic = Dfa::new(vec![[0, 0], [2, 0], [1, 0]], 1, vec![false, true, true], 0).unwrap();
        assert!(!is_minimal_finite(&cyclic));
    }

    #[test]
    fn brute_counts() {
        assert_eq!(brute_count_minimal(1).unwrap(), 1);
        assert_eq!(brute_count_minimal(2).unwrap(), 6);
        let m3 = brute_count_minimal(3).unwrap();
        assert!((60..=64).contains(&m3));
        assert!(brute_count_minimal(5).is_err());
        assert_eq!(
            dfa_bounds(3).unwrap(),
            (Integer::from(60), Integer::from(64))
        );
        assert_eq!(dfa_bounds(1).unwrap(), (Integer::from(1), Integer::from(1)));
    }

    #[test]
    fn compacted_trees_give_distinct_minimal_automata() {
        for n in 1..=4 {
            let mut canon = BTreeSet::new();
            let mut count = 0;
            for t in enumerate_compacted(n).unwrap() {
                for f in legal_finals(n) {
                    let dfa = tree_to_dfa(&t, &f).unwrap();
                    assert!(is_minimal_finite(&dfa));
                    let ids = right_language_ids(&dfa).unwrap();
                    assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), dfa.states());
                    canon.insert(format!("{:?}", dfa.canonical()));
                    count += 1;
                }
            }
            let c = [1, 1, 3, 15, 111][n];
            assert_eq!(count, c << (n - 1));
            assert_eq!(canon.len(), count);
        }
    }

    #[test]
    fn moore_agrees_with_signatures() {
        for n in 1..=3 {
            for t in enumerate_relaxed(n).unwrap() {
                for mask in 0u64..1 << n {
                    let f = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| i as u32 + 2)
                        .collect();
                    let dfa = structure_to_dfa(&t, &f).unwrap();
                    let moore = moore_classes(&dfa);
                    let sig = right_language_ids(&dfa).unwrap();
                    for p in 0..dfa.states() {
                        for q in 0..dfa.states() {
                            assert_eq!(moore[p] == moore[q], sig[p] == sig[q]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_pairs_have_distinct_languages() {
        for n in 1..=3 {
            let mut langs = BTreeSet::new();
            let mut count = 0;
            for t in enumerate_compacted(n).unwrap() {
                for f in legal_finals(n) {
                    langs.insert(language_of(&tree_to_dfa(&t, &f).unwrap(), n + 1));
                    count += 1;
                }
            }
            assert_eq!(langs.len(), count);
        }
    }

    #[test]
    fn dot_marks_states() {
        let dfa = tree_to_dfa(&figure_tree(), &BTreeSet::from([2, 3])).unwrap();
        let dot = dfa_to_dot(&dfa);
        assert!(dot.contains("q0 [shape=box]"));
        assert!(dot.contains("q1 [shape=doublecircle]"));
        assert!(dot.contains("start -> q4"));
    }
}
