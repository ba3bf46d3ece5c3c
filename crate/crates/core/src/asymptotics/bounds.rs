//! The four Airy-profile bound families and interval certification of
//! their one-step inequalities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use super::airy::{airy_root_a1, Airy};
use super::interval::Interval;
use crate::{Error, Result, TreeKind};

/// Lowest precision accepted by [`check_inequality`].
pub const MIN_CERT_PREC: u32 = 128;

/// Violations kept verbatim in a certificate; the rest are only counted.
pub const VIOLATION_LIST_CAP: usize = 200;

const ROW_BLOCK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFamily {
    LowerRelaxed,
    UpperRelaxed,
    LowerCompacted,
    UpperCompacted,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 4] = [
        BoundFamily::LowerRelaxed,
        BoundFamily::UpperRelaxed,
        BoundFamily::LowerCompacted,
        BoundFamily::UpperCompacted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::LowerRelaxed => "lower-relaxed",
            BoundFamily::UpperRelaxed => "upper-relaxed",
            BoundFamily::LowerCompacted => "lower-compacted",
            BoundFamily::UpperCompacted => "upper-compacted",
        }
    }

    pub fn is_lower(self) -> bool {
        matches!(
            self,
            BoundFamily::LowerRelaxed | BoundFamily::LowerCompacted
        )
    }

    pub fn kind(self) -> TreeKind {
        match self {
            BoundFamily::LowerRelaxed | BoundFamily::UpperRelaxed => TreeKind::Relaxed,
            _ => TreeKind::Compacted,
        }
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown bound family {s:?}")))
    }
}

/// Profile
/// `(1 + (tau2 m^2 + tau1 m)/n + eta m^4/n^2) Ai(a1 + 2^(1/3)(m+1)/n^(1/3))`
/// and step ratio `2 + 2^(2/3) a1 n^(-2/3) + sigma3/n + sigma4 n^(-7/6)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundFamilyParams {
    pub family: BoundFamily,
    pub tau1: Rational,
    pub tau2: Rational,
    pub eta: Rational,
    pub sigma3: Rational,
    pub sigma4: Rational,
    /// The m-rule is `m < n^(2/3 - eps)` for lower families and
    /// `m < n^(1 - eps)` for upper ones.
    pub eps: Rational,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

impl BoundFamilyParams {
    pub fn default_for(family: BoundFamily) -> Self {
        let (tau1, sigma3) = match family.kind() {
            TreeKind::Relaxed => (q(1, 2), q(8, 3)),
            TreeKind::Compacted => (q(1, 4), q(13, 6)),
        };
        let lower = family.is_lower();
        BoundFamilyParams {
            family,
            tau1,
            tau2: q(-2, 3),
            eta: if lower { q(0, 1) } else { q(1, 4) },
            sigma3,
            sigma4: if lower { q(-1, 1) } else { q(1, 1) },
            eps: q(1, 12),
        }
    }

    /// Negative control: the `n^(-7/6)` term of the ratio with its sign flipped.
    pub fn with_flipped_sigma4(mut self) -> Self {
        self.sigma4 = -self.sigma4;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.family.is_lower() && self.eta <= q(2, 9) {
            return Err(Error::Validation(format!(
                "eta must exceed 2/9 for {}, got {}",
                self.family, self.eta
            )));
        }
        let top = if self.family == BoundFamily::LowerRelaxed {
            q(1, 6)
        } else if self.family.is_lower() {
            q(2, 3)
        } else {
            q(1, 1)
        };
        if self.eps <= 0 || self.eps >= top {
            return Err(Error::Validation(format!(
                "eps must lie in (0, {top}) for {}, got {}",
                self.family, self.eps
            )));
        }
        Ok(())
    }

    /// Exponent `e` of the m-rule `m < n^e`.
    pub fn m_exponent(&self) -> Rational {
        let base = if self.family.is_lower() {
            q(2, 3)
        } else {
            q(1, 1)
        };
        base - &self.eps
    }

    pub fn m_rule(&self) -> String {
        format!("m < n^({})", self.m_exponent())
    }

    /// Whether `m < n^e`.
    pub fn in_range(&self, n: usize, m: usize) -> bool {
        if m == 0 {
            return true;
        }
        let e = self.m_exponent();
        let gap = e.to_f64() * (n as f64).ln() - (m as f64).ln();
        if gap.abs() > 1e-9 {
            return gap > 0.0;
        }
        let (p, d) = (e.numer().to_u32().unwrap(), e.denom().to_u32().unwrap());
        Integer::from(Integer::u_pow_u(m as u32, d)) < Integer::from(Integer::u_pow_u(n as u32, p))
    }

    /// Largest `m` admitted by the m-rule at `n`.
    pub fn m_max(&self, n: usize) -> usize {
        let guess = ((n as f64).powf(self.m_exponent().to_f64()) as usize).saturating_sub(2);
        let mut m = guess;
        while self.in_range(n, m + 1) {
            m += 1;
        }
        while m > 0 && !self.in_range(n, m) {
            m -= 1;
        }
        m
    }

    /// The rational prefactor of the profile.
    pub fn profile_factor(&self, n: usize, m: i64) -> Rational {
        let (n, m) = (Integer::from(n), Integer::from(m));
        let m2 = Integer::from(m.square_ref());
        let mut v = Rational::from(1);
        v += Rational::from((
            Integer::from(self.tau2.numer() * &m2),
            Integer::from(self.tau2.denom() * &n),
        ));
        v += Rational::from((
            Integer::from(self.tau1.numer() * &m),
            Integer::from(self.tau1.denom() * &n),
        ));
        if self.eta != 0 {
            let m4 = Integer::from(m2.square_ref());
            let n2 = Integer::from(n.square_ref());
            v += Rational::from((
                Integer::from(self.eta.numer() * &m4),
                Integer::from(self.eta.denom() * &n2),
            ));
        }
        v
    }

    /// Lower families are clamped to zero where the prefactor is `<= 0`.
    pub fn is_clamped(&self, n: usize, m: usize) -> bool {
        self.family.is_lower() && self.profile_factor(n, m as i64) <= 0
    }

    pub fn record(&self) -> ParamsRecord {
        ParamsRecord {
            tau1: self.tau1.to_string(),
            tau2: self.tau2.to_string(),
            eta: self.eta.to_string(),
            sigma3: self.sigma3.to_string(),
            sigma4: self.sigma4.to_string(),
            eps: self.eps.to_string(),
        }
    }
}

/// Closed-form clamp test for the default lower families:
/// `m >= (sqrt(96n+9)+3)/8` (relaxed) or `m >= (sqrt(384n+9)+3)/16` (compacted).
pub fn clamp_threshold_reached(kind: TreeKind, n: usize, m: usize) -> bool {
    let (a, b) = match kind {
        TreeKind::Relaxed => (8i128, 96i128),
        TreeKind::Compacted => (16, 384),
    };
    let t = a * m as i128 - 3;
    t >= 0 && t * t >= b * n as i128 + 9
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub tau1: String,
    pub tau2: String,
    pub eta: String,
    pub sigma3: String,
    pub sigma4: String,
    pub eps: String,
}

/// Shared constants for profile and ratio evaluation at one precision.
pub struct ProfileEvaluator {
    params: BoundFamilyParams,
    prec: u32,
    airy: Airy,
    a1: Interval,
    cbrt2: Interval,
    c23: Interval,
}

impl ProfileEvaluator {
    pub fn new(params: BoundFamilyParams, prec: u32) -> Result<Self> {
        // Arguments are formed well beyond `prec` so that their width is
        // negligible next to the Airy values.
        let wp = prec + 160;
        let a1 = airy_root_a1(wp)?;
        let cbrt2 = Interval::from_i64(wp, 2).cbrt();
        let c23 = cbrt2.square();
        Ok(ProfileEvaluator {
            params,
            prec,
            airy: Airy::new(prec),
            a1,
            cbrt2,
            c23,
        })
    }

    pub fn params(&self) -> &BoundFamilyParams {
        &self.params
    }

    fn cbrt_n(&self, n: usize) -> Interval {
        Interval::from_integer(self.prec + 160, &Integer::from(n)).cbrt()
    }

    /// The profile without clamping. `m = -1` gives exactly zero since
    /// the Airy factor sits at its zero `a1`.
    pub fn raw(&self, n: usize, m: i64) -> Result<Interval> {
        self.raw_with_cbrt(n, m, &self.cbrt_n(n))
    }

    fn raw_with_cbrt(&self, n: usize, m: i64, cbrt_n: &Interval) -> Result<Interval> {
        if m == -1 {
            return Ok(Interval::zero(self.prec));
        }
        let shift = self.cbrt2.mul_i64(m + 1).div(cbrt_n);
        let ai = self.airy.ai(&(&self.a1 + &shift))?;
        let factor = Interval::from_rational(self.prec, &self.params.profile_factor(n, m));
        Ok(&factor * &ai)
    }

    /// The profile, clamped at zero for the lower families.
    pub fn clamped(&self, n: usize, m: usize) -> Result<Interval> {
        if self.params.is_clamped(n, m) {
            return Ok(Interval::zero(self.prec));
        }
        self.raw(n, m as i64)
    }

    /// `2 + 2^(2/3) a1 n^(-2/3) + sigma3/n + sigma4 n^(-7/6)`.
    pub fn ratio(&self, n: usize) -> Interval {
        let p = self.prec + 32;
        let c = self.cbrt_n(n);
        let ni = Interval::from_i64(p, n as i64);
        let mut s = Interval::from_i64(p, 2);
        s = &s + &(&self.c23 * &self.a1).div(&c.square());
        s = &s + &Interval::from_rational(p, &(self.params.sigma3.clone() / n as u64));
        let n76 = &ni * &c.sqrt();
        s = &s + &Interval::from_rational(p, &self.params.sigma4).div(&n76);
        s.with_prec(self.prec)
    }
}

/// Profile value for `family` at `(n, m)`; lower families are clamped.
pub fn bound_profile(
    params: &BoundFamilyParams,
    n: usize,
    m: usize,
    prec: u32,
) -> Result<Interval> {
    if n == 0 {
        return Err(Error::Domain("profiles need n >= 1".into()));
    }
    ProfileEvaluator::new(params.clone(), prec)?.clamped(n, m)
}

/// Profile value without clamping.
pub fn raw_profile(params: &BoundFamilyParams, n: usize, m: usize, prec: u32) -> Result<Interval> {
    if n == 0 {
        return Err(Error::Domain("profiles need n >= 1".into()));
    }
    ProfileEvaluator::new(params.clone(), prec)?.raw(n, m as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: usize,
    pub m: usize,
    pub outcome: Outcome,
    /// Decimal endpoints of the residual `rhs - lhs`; empty for a singular
    /// coefficient.
    pub residual: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginRecord {
    pub n: usize,
    pub m: usize,
    /// Enclosure of the signed margin (positive means the inequality holds).
    pub margin: [String; 2],
    /// Margin divided by the larger side, as a float.
    pub relative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub family: BoundFamily,
    pub params: ParamsRecord,
    pub n_min: usize,
    pub n_max: usize,
    pub m_rule: String,
    pub precision_bits: u32,
    pub points: u64,
    pub n0: Option<usize>,
    pub verdict: Verdict,
    /// Smallest margin on `[n0, n_max]`.
    pub min_margin: Option<MarginRecord>,
    /// Smallest relative margin on `[n0, n_max]`.
    pub min_relative_margin: Option<f64>,
    pub violation_count: u64,
    pub undecided_count: u64,
    /// Failed and undecided points, in grid order, capped.
    pub violations: Vec<GridPoint>,
}

impl BoundCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

struct Cell {
    n: usize,
    m: usize,
    outcome: Outcome,
    residual: Option<Interval>,
    scale: Option<Interval>,
}

fn coeff(num: i64, den: i64, prec: u32) -> Option<Interval> {
    (den != 0).then(|| Interval::from_ratio(prec, num, den))
}

/// Residual `rhs - lhs` and the magnitude of `lhs`; `None` on a singular
/// coefficient.
fn residual(
    family: BoundFamily,
    n: usize,
    m: usize,
    x: &impl Fn(usize, i64) -> Interval,
    s: &impl Fn(usize) -> Interval,
    prec: u32,
) -> Option<(Interval, Interval)> {
    let (ni, mi) = (n as i64, m as i64);
    let lin = |a: usize, b: i64| x(a, b);
    match family.kind() {
        TreeKind::Relaxed => {
            let lhs = &lin(n, mi) * &s(n);
            let c = coeff(ni - mi + 2, ni + mi, prec)?;
            let rhs = &(&c * &lin(n - 1, mi - 1)) + &lin(n - 1, mi + 1);
            Some((&rhs - &lhs, lhs))
        }
        TreeKind::Compacted => {
            let (s0, s1, s2) = (s(n), s(n - 1), s(n - 2));
            let s12 = &s1 * &s2;
            let lhs = &(&lin(n, mi) * &s0) * &s12;
            let a = coeff(ni - mi + 2, ni + mi, prec)?;
            let b = coeff(ni - mi - 2, ni - mi, prec)?;
            let c = coeff(2, ni - mi, prec)?;
            let d = coeff(2, ni + mi, prec)?;
            let mut rhs = &(&(&a * &lin(n - 1, mi - 1)) + &(&b * &lin(n - 1, mi + 1))) * &s12;
            let tail = &(&(&c * &lin(n - 2, mi + 2)) * &s2) + &(&d * &lin(n - 3, mi + 1));
            if family.is_lower() {
                let e = coeff(ni - mi - 4, ni - mi - 2, prec)?;
                rhs = &rhs + &(&e * &tail);
            } else {
                let e = coeff(4, (ni + mi) * (ni + mi - 2), prec)?;
                rhs = &(&rhs + &tail) + &(&e * &lin(n - 3, mi - 1));
            }
            Some((&rhs - &lhs, lhs))
        }
    }
}

/// Evaluates the family's inequality at every `(n, m)` with
/// `n_min <= n <= n_max` under its m-rule, using interval arithmetic at
/// `prec` bits. Grid points run on the current rayon pool.
pub fn check_inequality(
    params: &BoundFamilyParams,
    n_min: usize,
    n_max: usize,
    prec: u32,
) -> Result<BoundCertificate> {
    params.validate()?;
    if n_min < 4 || n_min > n_max {
        return Err(Error::Domain(format!(
            "need 4 <= n_min <= n_max, got [{n_min}, {n_max}]"
        )));
    }
    if prec < MIN_CERT_PREC {
        return Err(Error::Validation(format!(
            "certification needs at least {MIN_CERT_PREC} bits, got {prec}"
        )));
    }
    let family = params.family;
    let eval = ProfileEvaluator::new(params.clone(), prec)?;
    let back = if family.kind() == TreeKind::Relaxed {
        1
    } else {
        3
    };
    let m_max: Vec<usize> = (0..=n_max)
        .map(|n| if n >= n_min { params.m_max(n) } else { 0 })
        .collect();
    // Row j is read by n = j..=j+back at column offsets up to +2.
    let row_len = |j: usize| -> usize {
        (0..=back)
            .map(|t| j + t)
            .filter(|&n| n >= n_min && n <= n_max)
            .map(|n| m_max[n] + (n - j) + 1)
            .max()
            .unwrap_or(0)
    };

    let mut rows: BTreeMap<usize, Vec<Interval>> = BTreeMap::new();
    let mut ratios: BTreeMap<usize, Interval> = BTreeMap::new();
    let mut cells: Vec<Cell> = Vec::new();
    let mut block_start = n_min;
    while block_start <= n_max {
        let block_end = (block_start + ROW_BLOCK - 1).min(n_max);
        let first_row = block_start.saturating_sub(back).max(1);
        let wanted: Vec<(usize, usize)> = (first_row..=block_end)
            .filter(|j| !rows.contains_key(j))
            .flat_map(|j| (0..row_len(j)).map(move |m| (j, m)))
            .collect();
        let cbrts: BTreeMap<usize, Interval> = wanted
            .iter()
            .map(|&(j, _)| j)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|j| (j, eval.cbrt_n(j)))
            .collect();
        let values: Vec<Result<Interval>> = wanted
            .par_iter()
            .map(|&(j, m)| eval.raw_with_cbrt(j, m as i64, &cbrts[&j]))
            .collect();
        for (&(j, _), v) in wanted.iter().zip(values) {
            rows.entry(j).or_default().push(v?);
        }
        for j in first_row..=block_end {
            ratios.entry(j).or_insert_with(|| eval.ratio(j));
        }
        let x = |a: usize, b: i64| -> Interval {
            if b < 0 {
                Interval::zero(prec)
            } else {
                rows[&a][b as usize].clone()
            }
        };
        let s = |a: usize| ratios[&a].clone();
        let points: Vec<(usize, usize)> = (block_start..=block_end)
            .flat_map(|n| (0..=m_max[n]).map(move |m| (n, m)))
            .collect();
        let lower = family.is_lower();
        let mut block: Vec<Cell> = points
            .par_iter()
            .map(|&(n, m)| match residual(family, n, m, &x, &s, prec) {
                None => Cell {
                    n,
                    m,
                    outcome: Outcome::Fail,
                    residual: None,
                    scale: None,
                },
                Some((r, lhs)) => {
                    let margin = if lower { r } else { -r };
                    let outcome = if margin.is_nonnegative() {
                        Outcome::Pass
                    } else if margin.is_negative() {
                        Outcome::Fail
                    } else {
                        Outcome::Undecided
                    };
                    Cell {
                        n,
                        m,
                        outcome,
                        residual: Some(if lower { margin } else { -margin }),
                        scale: Some(lhs.abs()),
                    }
                }
            })
            .collect();
        cells.append(&mut block);
        let keep_from = (block_end + 1).saturating_sub(back);
        rows.retain(|&j, _| j >= keep_from);
        ratios.retain(|&j, _| j + 2 >= keep_from);
        block_start = block_end + 1;
    }
    summarize(params, n_min, n_max, prec, cells)
}

fn summarize(
    params: &BoundFamilyParams,
    n_min: usize,
    n_max: usize,
    prec: u32,
    cells: Vec<Cell>,
) -> Result<BoundCertificate> {
    let lower = params.family.is_lower();
    let last_fail = cells
        .iter()
        .filter(|c| c.outcome == Outcome::Fail)
        .map(|c| c.n)
        .max();
    let n0 = match last_fail {
        None => Some(n_min),
        Some(n) if n < n_max => Some(n + 1),
        Some(_) => None,
    };
    if let Some(n0) = n0 {
        if let Some(c) = cells
            .iter()
            .find(|c| c.n >= n0 && c.outcome == Outcome::Undecided)
        {
            return Err(Error::Precision(format!(
                "{}: residual sign undecided at (n, m) = ({}, {}) with {prec} bits; retry with higher precision",
                params.family, c.n, c.m
            )));
        }
    }
    let decimals = |i: &Interval| {
        let (lo, hi) = i.to_decimal_pair(20);
        [lo, hi]
    };
    let mut min_margin: Option<(Float, MarginRecord)> = None;
    let mut min_rel: Option<f64> = None;
    if let Some(n0) = n0 {
        for c in cells.iter().filter(|c| c.n >= n0) {
            let (Some(r), Some(scale)) = (&c.residual, &c.scale) else {
                continue;
            };
            let margin = if lower { r.clone() } else { -r };
            let rel = margin.lo().to_f64() / scale.hi().to_f64().max(f64::MIN_POSITIVE);
            let rel = if rel.is_finite() { rel } else { 0.0 };
            if min_rel.is_none_or(|v| rel < v) {
                min_rel = Some(rel);
            }
            if min_margin.as_ref().is_none_or(|(lo, _)| margin.lo() < lo) {
                min_margin = Some((
                    margin.lo().clone(),
                    MarginRecord {
                        n: c.n,
                        m: c.m,
                        margin: decimals(&margin),
                        relative: rel,
                    },
                ));
            }
        }
    }
    let violation_count = cells.iter().filter(|c| c.outcome == Outcome::Fail).count() as u64;
    let undecided_count = cells
        .iter()
        .filter(|c| c.outcome == Outcome::Undecided)
        .count() as u64;
    let violations = cells
        .iter()
        .filter(|c| c.outcome != Outcome::Pass)
        .take(VIOLATION_LIST_CAP)
        .map(|c| GridPoint {
            n: c.n,
            m: c.m,
            outcome: c.outcome,
            residual: c.residual.as_ref().map(decimals).unwrap_or_default(),
        })
        .collect();
    Ok(BoundCertificate {
        family: params.family,
        params: params.record(),
        n_min,
        n_max,
        m_rule: params.m_rule(),
        precision_bits: prec,
        points: cells.len() as u64,
        n0,
        verdict: if n0.is_some() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        min_margin: min_margin.map(|v| v.1),
        min_relative_margin: min_rel,
        violation_count,
        undecided_count,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamp_matches_closed_form() {
        for (fam, kind) in [
            (BoundFamily::LowerRelaxed, TreeKind::Relaxed),
            (BoundFamily::LowerCompacted, TreeKind::Compacted),
        ] {
            let p = BoundFamilyParams::default_for(fam);
            for n in 1..400 {
                for m in 0..60 {
                    assert_eq!(
                        p.is_clamped(n, m),
                        clamp_threshold_reached(kind, n, m),
                        "{fam} {n} {m}"
                    );
                }
            }
        }
        let up = BoundFamilyParams::default_for(BoundFamily::UpperRelaxed);
        assert!(!up.is_clamped(10, 9));
    }

    #[test]
    fn m_rule_exact() {
        let p = BoundFamilyParams::default_for(BoundFamily::LowerRelaxed);
        // 2^12 = 4096 = 2^(7*12/7): m = 2^7 sits exactly on n^(7/12) at n = 2^12.
        assert!(!p.in_range(4096, 128));
        assert!(p.in_range(4096, 127));
        assert_eq!(p.m_max(4096), 127);
        assert_eq!(p.m_max(4), 2);
        let u = BoundFamilyParams::default_for(BoundFamily::UpperCompacted);
        assert_eq!(u.m_max(2000), 1061);
    }

    #[test]
    fn validation() {
        let mut p = BoundFamilyParams::default_for(BoundFamily::UpperRelaxed);
        p.eta = q(2, 9);
        assert!(p.validate().is_err());
        let mut l = BoundFamilyParams::default_for(BoundFamily::LowerRelaxed);
        l.eps = q(1, 5);
        assert!(l.validate().is_err());
        assert!(check_inequality(
            &BoundFamilyParams::default_for(BoundFamily::LowerRelaxed),
            3,
            10,
            128
        )
        .is_err());
    }

    #[test]
    fn profile_at_m_zero_is_positive_airy() {
        let p = BoundFamilyParams::default_for(BoundFamily::LowerRelaxed);
        let v = bound_profile(&p, 8, 0, 128).unwrap();
        // a1 + 2^(1/3)/2
        let want = Float::with_val(128, -2.338107410459767 + 0.6299605249474366).ai();
        assert!((v.to_f64() - want.to_f64()).abs() < 1e-14);
        assert!(v.is_positive());
        assert_eq!(
            bound_profile(&p, 100, 30, 128).unwrap().sign(),
            Some(std::cmp::Ordering::Equal)
        );
        assert!(raw_profile(&p, 100, 30, 128).unwrap().is_negative());
    }

    #[test]
    fn small_certificates() {
        let p = BoundFamilyParams::default_for(BoundFamily::LowerRelaxed);
        let c = check_inequality(&p, 4, 160, 128).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.n0, Some(111));
        let broken = check_inequality(&p.clone().with_flipped_sigma4(), 4, 160, 128).unwrap();
        assert_eq!(broken.verdict, Verdict::Fail);
        assert!(broken.violation_count > 0);
        let json: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(json["family"], "lower-relaxed");
        assert_eq!(json["verdict"], "PASS");
    }
}
