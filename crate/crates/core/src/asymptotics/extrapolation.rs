//! Normalized counts `u_n` and the order-`k` extrapolation of their limit.
//!
//! `u_n = t_n / (n! 4^n exp(3 a1 n^(1/3)) n^kappa)` with `kappa = 1` for
//! relaxed and `3/4` for compacted counts. Fitting
//! `u_m = sum_{j<k} delta_j m^(-j/3)` on `m = n..n+k` gives `v_n = delta_0`.

use std::fmt::Write as _;

use rug::float::Round;
use rug::{Float, Integer};
use serde::{Serialize, Serializer};

use super::airy::airy_root_a1;
use crate::{Error, Result, TreeKind};

/// Windows used for the stability indicator.
pub const STABILITY_WINDOWS: usize = 10;

/// Smallest precision accepted for an order-`k` fit.
pub fn min_extrapolation_prec(k: usize) -> u32 {
    96 + 32 * k as u32
}

fn kappa(kind: TreeKind) -> (u32, u32) {
    match kind {
        TreeKind::Relaxed => (1, 1),
        TreeKind::Compacted => (3, 4),
    }
}

/// `u_n` for `n = 1..counts.len()`.
#[derive(Clone, Debug)]
pub struct USequence {
    kind: TreeKind,
    prec: u32,
    values: Vec<Float>,
}

impl USequence {
    /// Wraps precomputed values; `values[0]` is `u_1`.
    pub fn from_values(kind: TreeKind, prec: u32, values: Vec<Float>) -> Self {
        USequence { kind, prec, values }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<&Float> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Float)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    /// `n,u` with `digits` significant digits.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("n,u\n");
        for (n, v) in self.iter() {
            writeln!(out, "{n},{}", decimal(v, digits)).unwrap();
        }
        out
    }
}

/// Plain decimal rendering with `digits` significant digits, no exponent.
pub fn decimal(x: &Float, digits: usize) -> String {
    let (neg, s, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    let Some(exp) = exp else { return s };
    let sign = if neg { "-" } else { "" };
    let s = s.trim_start_matches('-');
    let out = if exp <= 0 {
        format!("0.{}{}", "0".repeat((-exp) as usize), s)
    } else if exp as usize >= s.len() {
        format!("{s}{}", "0".repeat(exp as usize - s.len()))
    } else {
        let (a, b) = s.split_at(exp as usize);
        format!("{a}.{b}")
    };
    format!("{sign}{out}")
}

/// Computes `u_n` from the diagonal `counts[0..=max_n]` in log space.
pub fn u_sequence(kind: TreeKind, counts: &[Integer], prec: u32) -> Result<USequence> {
    let wp = prec + 32;
    let a1 = airy_root_a1(wp)?.mid();
    let ln4 = Float::with_val(wp, 4).ln();
    let (kn, kd) = kappa(kind);
    let mut values = Vec::with_capacity(counts.len().saturating_sub(1));
    for (n, t) in counts.iter().enumerate().skip(1) {
        if *t <= 0 {
            return Err(Error::Domain(format!("count at n = {n} is not positive")));
        }
        let nf = Float::with_val(wp, n);
        let mut l = Float::with_val(wp, t).ln();
        l -= Float::with_val(wp, n + 1).ln_gamma();
        l -= Float::with_val(wp, &ln4 * n as u64);
        l -= Float::with_val(wp, nf.cbrt_ref()) * &a1 * 3u32;
        l -= Float::with_val(wp, nf.ln_ref()) * kn / kd;
        values.push(Float::with_val(prec, l.exp_ref()));
    }
    Ok(USequence { kind, prec, values })
}

fn serialize_float<S: Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&decimal(x, 30))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtrapolationEstimate {
    pub kind: TreeKind,
    pub k: usize,
    /// First index of the fitting window.
    pub n: usize,
    /// Last index of the fitting window.
    pub window_top: usize,
    pub precision_bits: u32,
    #[serde(serialize_with = "serialize_float")]
    pub gamma: Float,
    /// Relative spread of `v` over the windows starting at
    /// `n - 9, ..., n`; absent when fewer windows fit.
    pub stability: Option<f64>,
}

/// Solves `sum_{j<k} delta_j m^(-j/3) = u_m`, `m = n..n+k`, returning `delta_0`.
fn solve_delta0(u: &USequence, k: usize, n: usize, prec: u32) -> Result<Float> {
    let mut a: Vec<Vec<Float>> = Vec::with_capacity(k);
    for i in 0..k {
        let m = n + i;
        let y = u.get(m).ok_or_else(|| {
            Error::Range(format!(
                "u_{m} is not available (sequence ends at {})",
                u.max_n()
            ))
        })?;
        let r = Float::with_val(prec, m).cbrt().recip();
        let mut row = Vec::with_capacity(k + 1);
        let mut p = Float::with_val(prec, 1);
        for _ in 0..k {
            row.push(p.clone());
            p *= &r;
        }
        row.push(Float::with_val(prec, y));
        a.push(row);
    }
    let scale = Float::with_val(prec, 1) >> (prec as i32 / 2);
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&x, &y| {
                a[x][col]
                    .clone()
                    .abs()
                    .partial_cmp(&a[y][col].clone().abs())
                    .unwrap()
            })
            .unwrap();
        a.swap(col, piv);
        if Float::with_val(prec, a[col][col].abs_ref()) < scale {
            return Err(Error::Precision(format!(
                "order-{k} system is singular at {prec} bits; raise the precision"
            )));
        }
        for r in col + 1..k {
            let f = Float::with_val(prec, &a[r][col] / &a[col][col]);
            for c in col..=k {
                let t = Float::with_val(prec, &f * &a[col][c]);
                a[r][c] -= t;
            }
        }
    }
    let mut x = vec![Float::new(prec); k];
    for i in (0..k).rev() {
        let mut s = a[i][k].clone();
        for j in i + 1..k {
            s -= Float::with_val(prec, &a[i][j] * &x[j]);
        }
        x[i] = s / &a[i][i];
    }
    Ok(x.swap_remove(0))
}

/// `v_n` for one window, checked against a re-solve with 64 more bits.
pub fn extrapolate_v(u: &USequence, k: usize, n: usize, prec: u32) -> Result<Float> {
    if k == 0 || n == 0 {
        return Err(Error::Domain("need k >= 1 and n >= 1".into()));
    }
    let min = min_extrapolation_prec(k);
    if prec < min {
        return Err(Error::Precision(format!(
            "order {k} needs at least {min} bits, got {prec}"
        )));
    }
    let v = solve_delta0(u, k, n, prec)?;
    let check = solve_delta0(u, k, n, prec + 64)?;
    let diff = Float::with_val(prec, &v - &check).abs();
    let tol = Float::with_val(prec, v.abs_ref()) >> (prec as i32 / 4);
    if diff > tol {
        return Err(Error::Precision(format!(
            "order-{k} fit at n = {n} lost too many digits at {prec} bits; raise the precision"
        )));
    }
    Ok(v)
}

/// The estimate `v_n` plus its stability over the preceding windows.
pub fn extrapolate_gamma(
    u: &USequence,
    k: usize,
    n: usize,
    prec: u32,
) -> Result<ExtrapolationEstimate> {
    let gamma = extrapolate_v(u, k, n, prec)?;
    let stability = if n >= STABILITY_WINDOWS {
        let vs = (n + 1 - STABILITY_WINDOWS..=n)
            .map(|w| extrapolate_v(u, k, w, prec).map(|v| v.to_f64()))
            .collect::<Result<Vec<f64>>>()?;
        let lo = vs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Some((hi - lo) / gamma.to_f64().abs())
    } else {
        None
    };
    Ok(ExtrapolationEstimate {
        kind: u.kind(),
        k,
        n,
        window_top: n + k - 1,
        precision_bits: prec,
        gamma,
        stability,
    })
}

/// `v_n` for every window start in `from..=to`.
pub fn v_sequence(
    u: &USequence,
    k: usize,
    from: usize,
    to: usize,
    prec: u32,
) -> Result<Vec<(usize, Float)>> {
    (from..=to)
        .map(|n| extrapolate_v(u, k, n, prec).map(|v| (n, v)))
        .collect()
}

/// `n,v` with `digits` significant digits.
pub fn v_csv(vs: &[(usize, Float)], digits: usize) -> String {
    let mut out = String::from("n,v\n");
    for (n, v) in vs {
        writeln!(out, "{n},{}", decimal(v, digits)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{CountTable, StorageMode};

    fn synthetic(deltas: &[f64], len: usize, prec: u32) -> USequence {
        let values = (1..=len)
            .map(|m| {
                let r = Float::with_val(prec, m).cbrt().recip();
                let mut p = Float::with_val(prec, 1);
                let mut s = Float::new(prec);
                for d in deltas {
                    s += Float::with_val(prec, &p * *d);
                    p *= &r;
                }
                s
            })
            .collect();
        USequence {
            kind: TreeKind::Relaxed,
            prec,
            values,
        }
    }

    #[test]
    fn recovers_synthetic_delta0() {
        let deltas = [166.5, -3.25, 7.0, 0.5, -11.0, 2.0];
        let prec = min_extrapolation_prec(6);
        let u = synthetic(&deltas, 60, prec);
        let v = extrapolate_v(&u, 6, 40, prec).unwrap();
        assert!((v - 166.5f64).abs() < 1e-40);
    }

    #[test]
    fn k2_closed_form() {
        let prec = 256;
        let u = synthetic(&[3.0, 1.0], 40, prec);
        let n = 20;
        let v = extrapolate_v(&u, 2, n, prec).unwrap();
        let (un, un1) = (u.get(n).unwrap(), u.get(n + 1).unwrap());
        let a = Float::with_val(prec, n).cbrt();
        let b = Float::with_val(prec, n + 1).cbrt();
        let want = (Float::with_val(prec, &b * un1) - Float::with_val(prec, &a * un))
            / Float::with_val(prec, &b - &a);
        let diff = Float::with_val(prec, &v - &want).abs();
        assert!(diff < Float::with_val(prec, 1) >> 240, "{diff}");
        assert!(Float::with_val(prec, &v - 3.0f64).abs() < Float::with_val(prec, 1) >> 240);
        // With u_n and u_(n+1) exchanged the n^(-1/3) term survives.
        let swapped = (Float::with_val(prec, &b * un) - Float::with_val(prec, &a * un1))
            / Float::with_val(prec, &b - &a);
        assert!(Float::with_val(prec, &swapped - 3.0f64).abs() > 0.1);
    }

    #[test]
    fn precision_floor_and_range() {
        let u = synthetic(&[1.0], 30, 200);
        assert!(matches!(
            extrapolate_v(&u, 4, 5, 200),
            Err(Error::Precision(_))
        ));
        assert!(matches!(
            extrapolate_v(&u, 4, 28, 256),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn u_values_are_positive_and_known_small() {
        let t = CountTable::relaxed(30, StorageMode::RollingRow).unwrap();
        let u = u_sequence(TreeKind::Relaxed, t.diagonal(), 128).unwrap();
        assert_eq!(u.max_n(), 30);
        assert!(u.iter().all(|(_, v)| *v > 0));
        // u_1 = 1 / (4 e^{3 a1})
        let want = (-3.0 * -2.338107410459767f64).exp() / 4.0;
        assert!((u.get(1).unwrap().to_f64() / want - 1.0).abs() < 1e-13);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&Float::with_val(64, 166.25), 6), "166.250");
        assert_eq!(decimal(&Float::with_val(64, -0.00125), 3), "-0.00125");
        assert_eq!(decimal(&Float::with_val(64, 12000), 3), "12000");
    }
}
