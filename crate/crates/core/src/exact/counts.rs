use rug::Integer;

use crate::{Error, Result, TreeKind};

/// Largest `max_n` accepted for a full triangle unless the caller raises it.
pub const DEFAULT_FULL_TRIANGLE_CAP: usize = 300;

static ZERO: Integer = Integer::ZERO;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StorageMode {
    /// Every row `0..=max_n` is kept.
    FullTriangle,
    /// Only the last row and the diagonal survive the build.
    RollingRow,
}

/// Triangle of path counts `t[n][m]`, `0 <= m <= n <= max_n`.
///
/// For the relaxed kind `t[n][m]` counts horizontally decorated paths from
/// the origin to `(n, m)`; for the compacted kind it counts C-decorated ones.
/// The diagonal `t[n][n]` is the number of trees of size `n`.
#[derive(Clone, Debug)]
pub struct CountTable {
    kind: TreeKind,
    mode: StorageMode,
    max_n: usize,
    cutoff: Option<usize>,
    first_row: usize,
    rows: Vec<Vec<Integer>>,
    diagonal: Vec<Integer>,
}

impl CountTable {
    pub fn relaxed(max_n: usize, mode: StorageMode) -> Result<Self> {
        Self::build(TreeKind::Relaxed, max_n, mode, DEFAULT_FULL_TRIANGLE_CAP)
    }

    pub fn compacted(max_n: usize, mode: StorageMode) -> Result<Self> {
        Self::build(TreeKind::Compacted, max_n, mode, DEFAULT_FULL_TRIANGLE_CAP)
    }

    pub fn new(kind: TreeKind, max_n: usize, mode: StorageMode) -> Result<Self> {
        Self::build(kind, max_n, mode, DEFAULT_FULL_TRIANGLE_CAP)
    }

    /// Builds a table with an explicit full-triangle cap.
    pub fn build(kind: TreeKind, max_n: usize, mode: StorageMode, cap: usize) -> Result<Self> {
        Self::fill(kind, max_n, mode, cap, None)
    }

    /// Relaxed counts restricted to paths that avoid every cell `(a, b)` whose
    /// meander coordinates `x = a + b`, `y = a - b` satisfy `x > cutoff` and
    /// `y^4 > x^3`. Cells are removed as they are built, so a removed cell
    /// also removes every path through it.
    pub fn truncated_relaxed(max_n: usize, mode: StorageMode, cutoff: usize) -> Result<Self> {
        Self::fill(
            TreeKind::Relaxed,
            max_n,
            mode,
            DEFAULT_FULL_TRIANGLE_CAP,
            Some(cutoff),
        )
    }

    fn fill(
        kind: TreeKind,
        max_n: usize,
        mode: StorageMode,
        cap: usize,
        cutoff: Option<usize>,
    ) -> Result<Self> {
        if mode == StorageMode::FullTriangle && max_n > cap {
            return Err(Error::Capacity {
                what: "full count triangle",
                requested: max_n,
                cap,
            });
        }
        let keep_all = mode == StorageMode::FullTriangle;
        let mut rows: Vec<Vec<Integer>> = Vec::new();
        let mut diagonal = Vec::with_capacity(max_n + 1);
        // Rolling mode still needs two rows back for the compacted recurrence.
        let mut prev2: Vec<Integer> = Vec::new();
        let mut prev: Vec<Integer> = Vec::new();
        for n in 0..=max_n {
            let (p1, p2) = if keep_all {
                (
                    if n >= 1 {
                        rows[n - 1].as_slice()
                    } else {
                        &[][..]
                    },
                    if n >= 2 {
                        rows[n - 2].as_slice()
                    } else {
                        &[][..]
                    },
                )
            } else {
                (prev.as_slice(), prev2.as_slice())
            };
            let row = next_row(kind, n, p1, p2, cutoff);
            diagonal.push(row[n].clone());
            if keep_all {
                rows.push(row);
            } else {
                prev2 = std::mem::replace(&mut prev, row);
            }
        }
        let (rows, first_row) = if keep_all {
            (rows, 0)
        } else {
            (vec![prev], max_n)
        };
        Ok(CountTable {
            kind,
            mode,
            max_n,
            cutoff,
            first_row,
            rows,
            diagonal,
        })
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn mode(&self) -> StorageMode {
        self.mode
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    /// `t[n][n]` for `n = 0..=max_n`.
    pub fn diagonal(&self) -> &[Integer] {
        &self.diagonal
    }

    pub fn row(&self, n: usize) -> Option<&[Integer]> {
        n.checked_sub(self.first_row)
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    /// `t[n][m]`, with `m > n` read as zero. `None` when row `n` is not stored.
    pub fn get(&self, n: usize, m: usize) -> Option<&Integer> {
        if n <= self.max_n && m > n {
            return Some(&ZERO);
        }
        if m == n && n <= self.max_n {
            return Some(&self.diagonal[n]);
        }
        self.row(n).map(|r| &r[m])
    }

    /// Re-evaluates the defining recurrence at a stored cell.
    pub fn recurrence_holds(&self, n: usize, m: usize) -> Option<bool> {
        let value = self.get(n, m)?;
        if m > n {
            return Some(*value == 0);
        }
        if self.cutoff.is_some_and(|c| truncated_cell(n, m, c)) {
            return Some(*value == 0);
        }
        if m == 0 {
            return Some(*value == 1);
        }
        let at = |a: usize, b: usize| -> Option<Integer> {
            if b > a {
                Some(Integer::new())
            } else {
                self.get(a, b).cloned()
            }
        };
        let mut expect = at(n, m - 1)?;
        if n >= 1 {
            expect += at(n - 1, m)? * Integer::from(m + 1);
        }
        if self.kind == TreeKind::Compacted && n >= 2 {
            expect -= at(n - 2, m - 1)? * Integer::from(m - 1);
        }
        Some(*value == expect)
    }
}

/// Whether the cutoff removes cell `(a, b)` of the count triangle.
pub(crate) fn truncated_cell(a: usize, b: usize, cutoff: usize) -> bool {
    let x = (a + b) as u128;
    let y = (a - b) as u128;
    x > cutoff as u128 && y.pow(4) > x.pow(3)
}

fn next_row(
    kind: TreeKind,
    n: usize,
    prev: &[Integer],
    prev2: &[Integer],
    cutoff: Option<usize>,
) -> Vec<Integer> {
    let mut row: Vec<Integer> = Vec::with_capacity(n + 1);
    row.push(Integer::from(1));
    for m in 1..=n {
        let mut v = row[m - 1].clone();
        if let Some(up) = prev.get(m) {
            v += up * Integer::from(m + 1);
        }
        if kind == TreeKind::Compacted && m >= 2 {
            if let Some(back) = prev2.get(m - 1) {
                v -= back * Integer::from(m - 1);
            }
        }
        if cutoff.is_some_and(|c| truncated_cell(n, m, c)) {
            v = Integer::new();
        }
        row.push(v);
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relaxed_diagonal_prefix() {
        let t = CountTable::relaxed(9, StorageMode::RollingRow).unwrap();
        let want = [1u64, 1, 3, 16, 127, 1363, 18628, 311250, 6173791, 142190703];
        assert_eq!(t.diagonal(), &want.map(Integer::from)[..]);
    }

    #[test]
    fn compacted_diagonal_prefix() {
        let t = CountTable::compacted(9, StorageMode::FullTriangle).unwrap();
        let want = [1u64, 1, 3, 15, 111, 1119, 14487, 230943, 4395855, 97608831];
        assert_eq!(t.diagonal(), &want.map(Integer::from)[..]);
        assert_eq!(*t.get(3, 3).unwrap(), 15);
    }

    #[test]
    fn hand_evaluated_cells() {
        let t = CountTable::relaxed(4, StorageMode::FullTriangle).unwrap();
        assert_eq!(*t.get(3, 1).unwrap(), 7);
        assert_eq!(*t.get(2, 1).unwrap(), 3);
        for n in 0..=4 {
            assert_eq!(*t.get(n, 0).unwrap(), 1);
        }
        assert_eq!(*t.get(2, 3).unwrap(), 0);
    }

    #[test]
    fn rolling_matches_full() {
        for kind in [TreeKind::Relaxed, TreeKind::Compacted] {
            let full = CountTable::new(kind, 40, StorageMode::FullTriangle).unwrap();
            let roll = CountTable::new(kind, 40, StorageMode::RollingRow).unwrap();
            assert_eq!(full.diagonal(), roll.diagonal());
            assert_eq!(full.row(40), roll.row(40));
            assert!(roll.row(39).is_none());
        }
    }

    #[test]
    fn full_triangle_cap() {
        let err = CountTable::relaxed(301, StorageMode::FullTriangle).unwrap_err();
        assert!(matches!(err, Error::Capacity { cap: 300, .. }));
        assert!(CountTable::build(TreeKind::Relaxed, 301, StorageMode::FullTriangle, 400).is_ok());
        assert!(CountTable::relaxed(301, StorageMode::RollingRow).is_ok());
    }

    #[test]
    fn untriggered_cutoff_changes_nothing() {
        let plain = CountTable::relaxed(30, StorageMode::FullTriangle).unwrap();
        let cut = CountTable::truncated_relaxed(30, StorageMode::FullTriangle, 60).unwrap();
        assert_eq!(plain.diagonal(), cut.diagonal());
    }
}
