//! Exhaustive exact checks of the inequalities that feed the asymptotic
//! arguments. Each check returns every violating cell rather than stopping
//! at the first one.

use rug::{Integer, Rational};
use serde::Serialize;

use super::counts::{CountTable, StorageMode};
use super::weights::{
    compacted_suffix_weight_table, ehat_table, meander_table, passage_proportion_in,
    sandwich_lower, sandwich_upper, suffix_weight_table, RationalTable,
};
use crate::{Result, TreeKind};

#[derive(Clone, Debug, Serialize)]
pub struct ExactCheck {
    pub name: String,
    /// Number of inequalities evaluated.
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ExactCheck {
    fn new(name: &str) -> Self {
        ExactCheck {
            name: name.to_string(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }
}

/// `t[l][j]/(j+1) >= t[l][k]/(k+1)` for `j < k <= l`, `k - j` even.
fn monotone_rows(t: &RationalTable, report: &mut ExactCheck) {
    let two_n = t.target().expect("suffix table");
    for l in 0..=two_n {
        let row = t.row(l).unwrap();
        let scaled: Vec<Rational> = row
            .iter()
            .enumerate()
            .map(|(j, v)| Rational::from(v / (j as u32 + 1)))
            .collect();
        for j in 0..scaled.len() {
            for k in (j + 2..scaled.len()).step_by(2) {
                report.expect(scaled[j] >= scaled[k], || {
                    format!("2n={two_n} l={l} j={j} k={k}")
                });
            }
        }
    }
}

/// Suffix monotonicity of the relaxed weights for every `2n <= max_two_n`.
pub fn check_suffix_monotone(max_two_n: usize) -> Result<ExactCheck> {
    let mut report = ExactCheck::new("suffix-monotone");
    for n in 1..=max_two_n / 2 {
        monotone_rows(&suffix_weight_table(n)?, &mut report);
    }
    Ok(report)
}

/// Suffix monotonicity of the five-step weights for `n >= min_n`,
/// `2n <= max_two_n`.
pub fn check_compacted_suffix_monotone(min_n: usize, max_two_n: usize) -> Result<ExactCheck> {
    let mut report = ExactCheck::new("compacted-suffix-monotone");
    for n in min_n.max(1)..=max_two_n / 2 {
        monotone_rows(&compacted_suffix_weight_table(n)?, &mut report);
    }
    Ok(report)
}

/// `lower <= e <= upper(e) <= upper(d) <= d` for `3 <= n <= max_n`, `m < n`.
pub fn check_sandwich(max_n: usize) -> Result<ExactCheck> {
    let mut report = ExactCheck::new("sandwich");
    let e = meander_table(TreeKind::Compacted, max_n)?;
    let d = meander_table(TreeKind::Relaxed, max_n)?;
    for n in 3..=max_n {
        for m in 0..n {
            let lo = sandwich_lower(&e, n, m)?;
            let up_e = sandwich_upper(&e, n, m)?;
            let up_d = sandwich_upper(&d, n, m)?;
            let ev = e.get(n, m);
            let dv = d.get(n, m);
            report.expect(lo <= *ev, || format!("lower > e at ({n},{m})"));
            report.expect(*ev <= up_e, || format!("e > upper at ({n},{m})"));
            report.expect(up_e <= up_d, || format!("upper(e) > upper(d) at ({n},{m})"));
            report.expect(up_d <= *dv, || format!("upper(d) > d at ({n},{m})"));
        }
    }
    Ok(report)
}

/// `e <= ehat <= d` cellwise for `n <= max_n`.
pub fn check_ehat_between(max_n: usize) -> Result<ExactCheck> {
    let mut report = ExactCheck::new("ehat-between");
    let e = meander_table(TreeKind::Compacted, max_n)?;
    let d = meander_table(TreeKind::Relaxed, max_n)?;
    let eh = ehat_table(max_n)?;
    for (n, m, v) in eh.cells() {
        report.expect(e.get(n, m) <= v && v <= d.get(n, m), || {
            format!("({n},{m}): e={} ehat={v} d={}", e.get(n, m), d.get(n, m))
        });
    }
    Ok(report)
}

/// `s(x,y,n) <= (2y+1) d[2x][2y] / d[2x][0]` for every `2n <= max_two_n`.
pub fn check_passage_bound(max_two_n: usize) -> Result<ExactCheck> {
    let mut report = ExactCheck::new("passage-bound");
    let d = meander_table(TreeKind::Relaxed, max_two_n)?;
    for n in 1..=max_two_n / 2 {
        let p = suffix_weight_table(n)?;
        for x in 0..=n {
            for y in 0..=x {
                let s = passage_proportion_in(&d, &p, x, y)?;
                let bound =
                    Rational::from(d.get(2 * x, 2 * y) * (2 * y as u32 + 1)) / d.get(2 * x, 0);
                report.expect(s <= bound, || format!("n={n} x={x} y={y}"));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct CutoffRow {
    pub n: usize,
    /// `1 - dtilde[2n][0] / d[2n][0]` as a fixed-point decimal string.
    pub lost: String,
    pub lost_f64: f64,
}

/// Weight share removed by the cutoff, for every `n <= max_n`.
///
/// Uses the integer route: `dtilde[2n][0]/d[2n][0]` equals the ratio of the
/// truncated and untruncated diagonal counts.
pub fn cutoff_losses(cutoff: usize, max_n: usize) -> Result<Vec<CutoffRow>> {
    let full = CountTable::relaxed(max_n, StorageMode::RollingRow)?;
    let cut = CountTable::truncated_relaxed(max_n, StorageMode::RollingRow, cutoff)?;
    Ok((0..=max_n)
        .map(|n| {
            let total = &full.diagonal()[n];
            let lost = Rational::from((Integer::from(total - &cut.diagonal()[n]), total.clone()));
            CutoffRow {
                n,
                lost: fixed_decimal(&lost, 20),
                lost_f64: lost.to_f64(),
            }
        })
        .collect())
}

/// Renders a nonnegative rational with `digits` decimals, truncated.
pub fn fixed_decimal(x: &Rational, digits: u32) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, digits));
    let scaled = Integer::from(x.numer() * &scale) / x.denom();
    let neg = scaled < 0;
    let s = Integer::from(scaled.abs_ref()).to_string();
    let s = format!("{s:0>width$}", width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}
