//! Weighted path sums over exact rationals.
//!
//! Meander weights are indexed `(n, m)` with `n` the length of an up/down
//! path and `m` its final height. An up step from height `b` at abscissa `a`
//! carries weight `(a - b + 2) / (a + b + 2)`. Suffix tables are indexed
//! `(l, m)`: the weight of all completions from `(l, m)` to `(2n, 0)`.

use rug::{Integer, Rational};

use super::counts::{CountTable, StorageMode};
use crate::{Error, Result, TreeKind};

/// Largest row index of an exact rational table unless the caller raises it.
pub const DEFAULT_RATIONAL_CAP: usize = 60;

fn zero() -> &'static Rational {
    static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
    ZERO.get_or_init(Rational::new)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// `d[n][m]`, relaxed meander weights.
    MeanderD,
    /// `e[n][m]`, compacted meander weights.
    MeanderE,
    /// Relaxed suffix weights towards `(2n, 0)`.
    SuffixP,
    /// Five-step suffix weights towards `(2n, 0)`.
    SuffixQ,
    /// Positive five-term majorant of `e`.
    Ehat,
    /// `d` with the cutoff region removed.
    DTilde,
    /// `ehat` with the cutoff region removed.
    ETilde,
}

/// A triangle of exact rationals; row `i` holds columns `0..=i`.
#[derive(Clone, Debug)]
pub struct RationalTable {
    kind: WeightKind,
    rows: Vec<Vec<Rational>>,
    target: Option<usize>,
    cutoff: Option<usize>,
}

impl RationalTable {
    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Highest row index.
    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    /// End abscissa `2n` of a suffix table.
    pub fn target(&self) -> Option<usize> {
        self.target
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    pub fn row(&self, i: usize) -> Option<&[Rational]> {
        self.rows.get(i).map(Vec::as_slice)
    }

    /// Entry `(i, m)`; anything outside the stored triangle, including
    /// negative `m`, is zero.
    pub fn at(&self, i: i64, m: i64) -> &Rational {
        if i < 0 || m < 0 {
            return zero();
        }
        self.rows
            .get(i as usize)
            .and_then(|r| r.get(m as usize))
            .unwrap_or(zero())
    }

    pub fn get(&self, i: usize, m: usize) -> &Rational {
        self.rows.get(i).and_then(|r| r.get(m)).unwrap_or(zero())
    }

    /// Iterates `(i, m, value)` over the stored triangle.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(m, v)| (i, m, v)))
    }
}

fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        return Err(Error::Capacity {
            what,
            requested,
            cap,
        });
    }
    Ok(())
}

pub(crate) fn factorials(n: usize) -> Vec<Integer> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(Integer::from(1));
    for i in 1..=n {
        let next = Integer::from(&f[i - 1] * i as u64);
        f.push(next);
    }
    f
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Maps a count triangle to meander weights:
/// `w[n][m] = t[(n+m)/2][(n-m)/2] / ((n+m)/2)!`, zero off parity.
fn transform(counts: &CountTable, max_n: usize, kind: WeightKind) -> RationalTable {
    let fact = factorials(max_n);
    let rows = (0..=max_n)
        .map(|n| {
            (0..=n)
                .map(|m| {
                    if (n + m) % 2 != 0 {
                        return Rational::new();
                    }
                    let a = (n + m) / 2;
                    let b = (n - m) / 2;
                    let t = counts.get(a, b).expect("count row stored");
                    Rational::from((t.clone(), fact[a].clone()))
                })
                .collect()
        })
        .collect();
    RationalTable {
        kind,
        rows,
        target: None,
        cutoff: counts.cutoff(),
    }
}

fn counts_for(kind: TreeKind, max_n: usize) -> Result<CountTable> {
    CountTable::build(kind, max_n, StorageMode::FullTriangle, usize::MAX)
}

/// `d[n][m]` (relaxed) or `e[n][m]` (compacted) for `0 <= m <= n <= max_n`.
pub fn meander_table(kind: TreeKind, max_n: usize) -> Result<RationalTable> {
    meander_table_with_cap(kind, max_n, DEFAULT_RATIONAL_CAP)
}

pub fn meander_table_with_cap(kind: TreeKind, max_n: usize, cap: usize) -> Result<RationalTable> {
    check_cap("meander table", max_n, cap)?;
    let wk = match kind {
        TreeKind::Relaxed => WeightKind::MeanderD,
        TreeKind::Compacted => WeightKind::MeanderE,
    };
    Ok(transform(&counts_for(kind, max_n)?, max_n, wk))
}

fn single_weight(kind: TreeKind, n: usize, m: usize) -> Rational {
    if m > n || !(n + m).is_multiple_of(2) {
        return Rational::new();
    }
    let a = (n + m) / 2;
    let b = (n - m) / 2;
    let counts =
        CountTable::new(kind, a, StorageMode::RollingRow).expect("rolling rows are uncapped");
    let fact = factorials(a);
    Rational::from((counts.get(a, b).unwrap().clone(), fact[a].clone()))
}

/// `d[n][m]`, read off the relaxed count triangle.
pub fn meander_weight(n: usize, m: usize) -> Rational {
    single_weight(TreeKind::Relaxed, n, m)
}

/// `e[n][m]`, read off the compacted count triangle.
pub fn compacted_meander_weight(n: usize, m: usize) -> Rational {
    single_weight(TreeKind::Compacted, n, m)
}

/// Relaxed suffix weights `p[l][m]` for the end point `(2n, 0)`.
pub fn suffix_weight_table(n: usize) -> Result<RationalTable> {
    suffix_weight_table_with_cap(n, DEFAULT_RATIONAL_CAP)
}

pub fn suffix_weight_table_with_cap(n: usize, cap: usize) -> Result<RationalTable> {
    if n == 0 {
        return Err(Error::Domain("suffix tables need n >= 1".into()));
    }
    let two_n = 2 * n;
    check_cap("suffix table", two_n, cap)?;
    let mut rows: Vec<Vec<Rational>> = (0..=two_n).map(|l| vec![Rational::new(); l + 1]).collect();
    rows[two_n][0] = Rational::from(1);
    for l in (0..two_n).rev() {
        for m in 0..=l {
            let mut v = Rational::new();
            if m >= 1 {
                v += &rows[l + 1][m - 1];
            }
            let up = &rows[l + 1][m + 1];
            if *up != 0 {
                v += up * ratio((l - m + 2) as i64, (l + m + 2) as i64);
            }
            rows[l][m] = v;
        }
    }
    Ok(RationalTable {
        kind: WeightKind::SuffixP,
        rows,
        target: Some(two_n),
        cutoff: None,
    })
}

/// Five-step suffix weights `q[l][m]` for the end point `(2n, 0)`.
///
/// Steps and weights from `(l, m)`:
/// `(1,-1)`: `(l-m)/(l-m+2)`, `(1,1)`: `(l-m+2)/(l+m+2)`, `(2,-2)`: `2/(l-m+4)`,
/// `(3,-1)`: `2/(l+m+2)`, `(3,1)`: `4/((l+m+4)(l+m+2))`.
/// The down step `(1,1) -> (2,0)` has weight 1 so that `q[0][0] = ehat[2n][0]`.
pub fn compacted_suffix_weight_table(n: usize) -> Result<RationalTable> {
    compacted_suffix_weight_table_with_cap(n, DEFAULT_RATIONAL_CAP)
}

pub fn compacted_suffix_weight_table_with_cap(n: usize, cap: usize) -> Result<RationalTable> {
    if n == 0 {
        return Err(Error::Domain("suffix tables need n >= 1".into()));
    }
    let two_n = 2 * n;
    check_cap("suffix table", two_n, cap)?;
    let mut rows: Vec<Vec<Rational>> = (0..=two_n).map(|l| vec![Rational::new(); l + 1]).collect();
    rows[two_n][0] = Rational::from(1);
    for l in (0..two_n).rev() {
        for m in 0..=l {
            let q = |a: usize, b: usize| -> &Rational {
                rows.get(a).and_then(|r| r.get(b)).unwrap_or(zero())
            };
            let (li, mi) = (l as i64, m as i64);
            let mut v = Rational::new();
            let mut add = |w: Rational, t: &Rational| {
                if *t != 0 {
                    v += w * t;
                }
            };
            if m >= 1 {
                let w = if l == 1 && m == 1 {
                    Rational::from(1)
                } else {
                    ratio(li - mi, li - mi + 2)
                };
                add(w, q(l + 1, m - 1));
                add(ratio(2, li + mi + 2), q(l + 3, m - 1));
            }
            add(ratio(li - mi + 2, li + mi + 2), q(l + 1, m + 1));
            if m >= 2 {
                add(ratio(2, li - mi + 4), q(l + 2, m - 2));
            }
            add(ratio(4, (li + mi + 4) * (li + mi + 2)), q(l + 3, m + 1));
            rows[l][m] = v;
        }
    }
    Ok(RationalTable {
        kind: WeightKind::SuffixQ,
        rows,
        target: Some(two_n),
        cutoff: None,
    })
}

/// The five positive terms shared by `ehat` and the upper sandwich bound,
/// evaluated on `t` at `(n, m)`.
fn five_term(t: &RationalTable, n: i64, m: i64) -> Rational {
    let mut v = Rational::new();
    let mut add = |w: Rational, x: &Rational| {
        if *x != 0 {
            v += w * x;
        }
    };
    add(ratio(n - m + 2, n + m), t.at(n - 1, m - 1));
    add(ratio(n - m - 2, n - m), t.at(n - 1, m + 1));
    add(ratio(2, n - m), t.at(n - 2, m + 2));
    add(ratio(2, n + m), t.at(n - 3, m + 1));
    add(ratio(4, (n + m) * (n + m - 2)), t.at(n - 3, m - 1));
    v
}

fn ehat_rows(max_n: usize, cutoff: Option<usize>) -> Result<RationalTable> {
    let e = transform(
        &counts_for(TreeKind::Compacted, max_n)?,
        max_n,
        WeightKind::MeanderE,
    );
    let mut out = RationalTable {
        kind: if cutoff.is_some() {
            WeightKind::ETilde
        } else {
            WeightKind::Ehat
        },
        rows: Vec::with_capacity(max_n + 1),
        target: None,
        cutoff,
    };
    for n in 0..=max_n {
        let mut row = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let v = if cutoff.is_some_and(|c| meander_cut(n, m, c)) {
                Rational::new()
            } else if n < 3 || m == n {
                e.get(n, m).clone()
            } else {
                // Row `n` is not yet in `out.rows`; the recurrence only looks back.
                five_term(&out, n as i64, m as i64)
            };
            row.push(v);
        }
        out.rows.push(row);
    }
    Ok(out)
}

/// Positive majorant `ehat[n][m]` of the compacted meander weights.
pub fn ehat_table(max_n: usize) -> Result<RationalTable> {
    check_cap("ehat table", max_n, DEFAULT_RATIONAL_CAP)?;
    ehat_rows(max_n, None)
}

/// Meander-indexed cutoff: the cell `(n, m)` is removed when `n > cutoff`
/// and `m^4 > n^3`.
pub fn meander_cut(n: usize, m: usize, cutoff: usize) -> bool {
    n > cutoff && (m as u128).pow(4) > (n as u128).pow(3)
}

/// `d` (relaxed) or `ehat` (compacted) with the cutoff region removed along
/// every path.
pub fn truncated_meander_table(
    max_n: usize,
    cutoff: usize,
    kind: TreeKind,
) -> Result<RationalTable> {
    check_cap("truncated meander table", max_n, DEFAULT_RATIONAL_CAP)?;
    match kind {
        TreeKind::Relaxed => {
            let counts = CountTable::truncated_relaxed(max_n, StorageMode::FullTriangle, cutoff)?;
            Ok(transform(&counts, max_n, WeightKind::DTilde))
        }
        TreeKind::Compacted => ehat_rows(max_n, Some(cutoff)),
    }
}

fn sandwich_domain(n: usize, m: usize) -> Result<()> {
    if n < 3 || m >= n {
        return Err(Error::Domain(format!(
            "sandwich bounds need n >= 3 and m < n, got n={n}, m={m}"
        )));
    }
    Ok(())
}

/// Lower sandwich bound for `e[n][m]` evaluated on `e`.
pub fn sandwich_lower(e: &RationalTable, n: usize, m: usize) -> Result<Rational> {
    sandwich_domain(n, m)?;
    let (n, m) = (n as i64, m as i64);
    let mut v = ratio(n - m + 2, n + m) * e.at(n - 1, m - 1);
    v += ratio(n - m - 2, n - m) * e.at(n - 1, m + 1);
    // At n - m = 2 the prefactor is 0/0 but both bracketed weights are zero.
    if n - m != 2 {
        let inner = ratio(2, n - m) * e.at(n - 2, m + 2) + ratio(2, n + m) * e.at(n - 3, m + 1);
        v += ratio(n - m - 4, n - m - 2) * inner;
    }
    Ok(v)
}

/// Upper sandwich bound evaluated on `t` (either the `e` or the `d` table).
pub fn sandwich_upper(t: &RationalTable, n: usize, m: usize) -> Result<Rational> {
    sandwich_domain(n, m)?;
    Ok(five_term(t, n as i64, m as i64))
}

/// `(lower, upper)` bracketing `e[n][m]`.
pub fn sandwich_bounds(n: usize, m: usize) -> Result<(Rational, Rational)> {
    sandwich_domain(n, m)?;
    let e = meander_table_with_cap(TreeKind::Compacted, n, usize::MAX)?;
    Ok((sandwich_lower(&e, n, m)?, sandwich_upper(&e, n, m)?))
}

/// Share of the total weight `d[2n][0]` carried by paths through `(2x, 2y)`,
/// given the `d` table (rows up to `2n`) and the suffix table for `n`.
pub fn passage_proportion_in(
    d: &RationalTable,
    p: &RationalTable,
    x: usize,
    y: usize,
) -> Result<Rational> {
    let two_n = p
        .target()
        .ok_or_else(|| Error::Domain("expected a suffix table".into()))?;
    if y > x || 2 * x > two_n {
        return Err(Error::Domain(format!(
            "passage point needs y <= x <= n, got x={x}, y={y}, n={}",
            two_n / 2
        )));
    }
    let total = d.get(two_n, 0);
    assert!(*total != 0, "total meander weight is positive");
    Ok(Rational::from(d.get(2 * x, 2 * y) * p.get(2 * x, 2 * y)) / total)
}

pub fn passage_proportion(x: usize, y: usize, n: usize) -> Result<Rational> {
    let p = suffix_weight_table(n)?;
    let d = meander_table(TreeKind::Relaxed, 2 * n)?;
    passage_proportion_in(&d, &p, x, y)
}
