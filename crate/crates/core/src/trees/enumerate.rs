//! Exhaustive generation, used as ground truth for small sizes.
//!
//! Order: spines by their undecorated step word (`H` before `V`), then
//! pointer targets lexicographically in postorder.

use super::{is_compacted, DecoratedPath, RelaxedTree, Step};
use crate::{Error, Result};

/// Largest size accepted by the enumerators.
pub const ENUMERATION_CAP: usize = 6;

fn dyck_words(n: usize) -> Vec<Vec<bool>> {
    fn go(n: usize, h: usize, v: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if h == n && v == n {
            out.push(cur.clone());
            return;
        }
        // `true` is H.
        if h < n {
            cur.push(true);
            go(n, h + 1, v, cur, out);
            cur.pop();
        }
        if v < h {
            cur.push(false);
            go(n, h, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Every decorated Dyck path with `n` steps of each kind.
pub fn enumerate_paths(n: usize) -> Result<Vec<DecoratedPath>> {
    if n > ENUMERATION_CAP {
        return Err(Error::Capacity {
            what: "exhaustive enumeration",
            requested: n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out = Vec::new();
    for word in dyck_words(n) {
        // Decoration bound of each H step: height + 1.
        let mut bounds = Vec::with_capacity(n);
        let mut y = 0u32;
        for &h in &word {
            if h {
                bounds.push(y + 1);
            } else {
                y += 1;
            }
        }
        let mut decs = vec![1u32; n];
        loop {
            let mut it = decs.iter();
            let steps = word
                .iter()
                .map(|&h| {
                    if h {
                        Step::H(*it.next().unwrap())
                    } else {
                        Step::V
                    }
                })
                .collect();
            out.push(DecoratedPath::from_valid_steps(steps));
            // Odometer with the last position fastest.
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if decs[k] < bounds[k] {
                    decs[k] += 1;
                    decs[k + 1..].fill(1);
                    break;
                }
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX || n == 0 {
                break;
            }
        }
    }
    Ok(out)
}

/// Every relaxed tree of size `n`.
pub fn enumerate_relaxed(n: usize) -> Result<Vec<RelaxedTree>> {
    Ok(enumerate_paths(n)?
        .iter()
        .map(|p| RelaxedTree::from_path(p).expect("complete path"))
        .collect())
}

/// Every compacted tree of size `n`.
pub fn enumerate_compacted(n: usize) -> Result<Vec<RelaxedTree>> {
    Ok(enumerate_relaxed(n)?
        .into_iter()
        .filter(is_compacted)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn relaxed_counts() {
        let r = [1, 1, 3, 16, 127, 1363];
        for n in 0..=5 {
            let all = enumerate_relaxed(n).unwrap();
            assert_eq!(all.len(), r[n]);
            assert_eq!(all.iter().collect::<HashSet<_>>().len(), r[n]);
        }
        assert_eq!(enumerate_relaxed(0).unwrap(), [RelaxedTree::leaf()]);
        assert!(matches!(
            enumerate_relaxed(7),
            Err(Error::Capacity { cap: 6, .. })
        ));
    }

    #[test]
    fn order_is_sorted_by_word_then_targets() {
        let paths = enumerate_paths(2).unwrap();
        let s: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["H:1 H:1 V V", "H:1 V H:1 V", "H:1 V H:2 V"]);
    }
}
