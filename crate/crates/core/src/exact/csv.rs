//! Plain CSV renderings of tables. Integers are written in full decimal,
//! rationals as `p/q`.

use std::fmt::Write;

use super::checks::CutoffRow;
use super::counts::CountTable;
use super::weights::RationalTable;

/// `n,value` for the diagonal of a count table.
pub fn diagonal_csv(t: &CountTable) -> String {
    let mut out = String::from("n,value\n");
    for (n, v) in t.diagonal().iter().enumerate() {
        writeln!(out, "{n},{v}").unwrap();
    }
    out
}

/// `n,relaxed,compacted` for two diagonals of equal length.
pub fn paired_diagonal_csv(relaxed: &CountTable, compacted: &CountTable) -> String {
    let mut out = String::from("n,relaxed,compacted\n");
    for (n, (r, c)) in relaxed
        .diagonal()
        .iter()
        .zip(compacted.diagonal())
        .enumerate()
    {
        writeln!(out, "{n},{r},{c}").unwrap();
    }
    out
}

/// `n,m,value` over every stored row of a count table.
pub fn triangle_csv(t: &CountTable) -> String {
    let mut out = String::from("n,m,value\n");
    for n in 0..=t.max_n() {
        if let Some(row) = t.row(n) {
            for (m, v) in row.iter().enumerate() {
                writeln!(out, "{n},{m},{v}").unwrap();
            }
        }
    }
    out
}

/// `n,m,value` with `value` as `p/q`.
pub fn rational_csv(t: &RationalTable) -> String {
    let mut out = String::from("n,m,value\n");
    for (n, m, v) in t.cells() {
        writeln!(out, "{n},{m},{}/{}", v.numer(), v.denom()).unwrap();
    }
    out
}

/// `n,lost` for the cutoff losses.
pub fn cutoff_csv(rows: &[CutoffRow]) -> String {
    let mut out = String::from("n,lost\n");
    for r in rows {
        writeln!(out, "{},{}", r.n, r.lost).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{meander_table, StorageMode};
    use crate::TreeKind;

    #[test]
    fn formats() {
        let t = CountTable::relaxed(2, StorageMode::FullTriangle).unwrap();
        assert_eq!(diagonal_csv(&t), "n,value\n0,1\n1,1\n2,3\n");
        assert_eq!(
            triangle_csv(&t),
            "n,m,value\n0,0,1\n1,0,1\n1,1,1\n2,0,1\n2,1,3\n2,2,3\n"
        );
        let d = meander_table(TreeKind::Relaxed, 2).unwrap();
        assert_eq!(
            rational_csv(&d),
            "n,m,value\n0,0,1/1\n1,0,0/1\n1,1,1/1\n2,0,1/1\n2,1,0/1\n2,2,1/2\n"
        );
    }
}
