//! Consecutive-count ratios against `4n + 4 a1 n^(1/3) + beta`.

use std::fmt::Write as _;

use rug::{Float, Integer, Rational};

use super::airy::airy_root_a1;
use super::extrapolation::decimal;
use crate::{Error, Result, TreeKind};

/// Constant term of the ratio expansion: `4 kappa`, with the polynomial
/// exponent `kappa` of the count asymptotics.
pub fn ratio_constant(kind: TreeKind) -> i64 {
    match kind {
        TreeKind::Relaxed => 4,
        TreeKind::Compacted => 3,
    }
}

#[derive(Clone, Debug)]
pub struct RatioRow {
    pub n: usize,
    /// `t_n / t_(n-1)`, exact.
    pub rho: Rational,
    /// `rho - (4n + 4 a1 n^(1/3) + beta)`.
    pub remainder: Float,
    /// `remainder * n^(1/3)`.
    pub scaled: Float,
}

/// One row per `n >= 2` of the diagonal `counts`.
pub fn ratio_diagnostics(kind: TreeKind, counts: &[Integer], prec: u32) -> Result<Vec<RatioRow>> {
    let a1 = airy_root_a1(prec + 32)?.mid();
    let beta = ratio_constant(kind);
    let mut rows = Vec::new();
    for n in 2..counts.len() {
        if counts[n - 1] == 0 {
            return Err(Error::Domain(format!("zero count at n = {}", n - 1)));
        }
        let rho = Rational::from((counts[n].clone(), counts[n - 1].clone()));
        let c = Float::with_val(prec, n).cbrt();
        let mut model = Float::with_val(prec, &c * &a1) * 4u32;
        model += (4 * n as i64 + beta) as f64;
        let remainder = Float::with_val(prec, &rho) - model;
        let scaled = Float::with_val(prec, &remainder * &c);
        rows.push(RatioRow {
            n,
            rho,
            remainder,
            scaled,
        });
    }
    Ok(rows)
}

/// `n,rho,remainder,remainder_scaled` with `digits` significant digits.
pub fn ratio_csv(rows: &[RatioRow], digits: usize) -> String {
    let mut out = String::from("n,rho,remainder,remainder_scaled\n");
    for r in rows {
        let rho = Float::with_val(r.remainder.prec(), &r.rho);
        writeln!(
            out,
            "{},{},{},{}",
            r.n,
            decimal(&rho, digits),
            decimal(&r.remainder, digits),
            decimal(&r.scaled, digits)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{CountTable, StorageMode};

    #[test]
    fn first_ratios() {
        let t = CountTable::relaxed(5, StorageMode::RollingRow).unwrap();
        let rows = ratio_diagnostics(TreeKind::Relaxed, t.diagonal(), 96).unwrap();
        assert_eq!(rows[0].n, 2);
        assert_eq!(rows[0].rho, 3);
        assert_eq!(rows[1].rho, Rational::from((16, 3)));
        let c = CountTable::compacted(5, StorageMode::RollingRow).unwrap();
        let rows = ratio_diagnostics(TreeKind::Compacted, c.diagonal(), 96).unwrap();
        assert_eq!(rows[1].rho, 5);
        assert!(ratio_csv(&rows, 8).starts_with("n,rho,remainder,remainder_scaled\n2,3.0000000,"));
    }
}
