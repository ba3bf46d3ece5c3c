//! Unranking and uniform sampling of decorated Dyck paths.
//!
//! Ranks are assigned by walking backwards from `(n, n)`: at `(a, b)` the
//! first `t[a][b-1]` ranks end with a `V` step, the rest are split into
//! `b + 1` equal blocks of size `t[a-1][b]`, one per decoration of a final
//! `H` step.

use std::sync::Arc;

use rand::RngCore;
use rug::integer::Order;
use rug::Integer;

use crate::exact::{CountTable, StorageMode};
use crate::trees::{is_compacted, DecoratedPath, RelaxedTree, Step};
use crate::{Error, Result, TreeKind};

fn check_table(table: &CountTable, n: usize) -> Result<()> {
    if table.kind() != TreeKind::Relaxed || table.mode() != StorageMode::FullTriangle {
        return Err(Error::Domain(
            "unranking needs a full relaxed count triangle".into(),
        ));
    }
    if n > table.max_n() {
        return Err(Error::Capacity {
            what: "unranking size",
            requested: n,
            cap: table.max_n(),
        });
    }
    Ok(())
}

/// The path of rank `index` among the `r[n][n]` decorated Dyck paths of
/// size `n`.
pub fn unrank_relaxed(table: &CountTable, n: usize, index: &Integer) -> Result<DecoratedPath> {
    check_table(table, n)?;
    let total = &table.diagonal()[n];
    if *index < 0 || index >= total {
        return Err(Error::Range(format!(
            "index {index} outside [0, {total}) for size {n}"
        )));
    }
    let mut rest = index.clone();
    let mut rev = Vec::with_capacity(2 * n);
    let (mut a, mut b) = (n, n);
    while a > 0 {
        let via_v = if b > 0 {
            table.get(a, b - 1).unwrap()
        } else {
            &Integer::ZERO
        };
        if b > 0 && rest < *via_v {
            rev.push(Step::V);
            b -= 1;
            continue;
        }
        rest -= via_v;
        let block = table.get(a - 1, b).unwrap();
        let (q, r) = rest.div_rem_ref(block).into();
        let q: Integer = q;
        rest = r;
        rev.push(Step::H(q.to_u32().unwrap() + 1));
        a -= 1;
    }
    rev.reverse();
    Ok(DecoratedPath::new(rev).expect("unranked path is valid"))
}

/// Inverse of [`unrank_relaxed`].
pub fn rank_relaxed(table: &CountTable, path: &DecoratedPath) -> Result<Integer> {
    if !path.is_complete() {
        return Err(Error::Validation(
            "path does not end on the diagonal".into(),
        ));
    }
    let n = path.size();
    check_table(table, n)?;
    let mut rank = Integer::new();
    let (mut a, mut b) = (n, n);
    for s in path.steps().iter().rev() {
        match *s {
            Step::V => b -= 1,
            Step::H(d) => {
                if b > 0 {
                    rank += table.get(a, b - 1).unwrap();
                }
                rank += Integer::from(d - 1) * table.get(a - 1, b).unwrap();
                a -= 1;
            }
        }
    }
    Ok(rank)
}

/// Uniform integer in `[0, bound)` by rejection on fixed-width random words.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &Integer) -> Integer {
    assert!(*bound > 0, "empty range");
    let bits = bound.significant_bits();
    let words = bits.div_ceil(64) as usize;
    let top_mask = if bits.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (bits % 64)) - 1
    };
    let mut buf = vec![0u64; words];
    loop {
        for w in buf.iter_mut() {
            *w = rng.next_u64();
        }
        buf[words - 1] &= top_mask;
        let x = Integer::from_digits(&buf, Order::Lsf);
        if x < *bound {
            return x;
        }
    }
}

/// A shared count table plus a private random stream.
pub struct SamplerContext<R> {
    table: Arc<CountTable>,
    rng: R,
}

impl<R: RngCore> SamplerContext<R> {
    /// Builds a relaxed full triangle up to `max_n`.
    pub fn new(max_n: usize, rng: R) -> Result<Self> {
        let table = CountTable::relaxed(max_n, StorageMode::FullTriangle)?;
        Ok(SamplerContext {
            table: Arc::new(table),
            rng,
        })
    }

    /// Shares an existing table; several contexts may use one table.
    pub fn with_table(table: Arc<CountTable>, rng: R) -> Result<Self> {
        check_table(&table, table.max_n())?;
        Ok(SamplerContext { table, rng })
    }

    pub fn table(&self) -> &Arc<CountTable> {
        &self.table
    }

    pub fn max_n(&self) -> usize {
        self.table.max_n()
    }

    pub fn unrank(&self, n: usize, index: &Integer) -> Result<DecoratedPath> {
        unrank_relaxed(&self.table, n, index)
    }

    /// Uniform over the decorated Dyck paths of size `n`.
    pub fn sample_relaxed(&mut self, n: usize) -> Result<DecoratedPath> {
        check_table(&self.table, n)?;
        let index = uniform_below(&mut self.rng, &self.table.diagonal()[n]);
        unrank_relaxed(&self.table, n, &index)
    }

    /// Uniform over compacted trees of size `n` by rejection; also returns
    /// the number of relaxed trees drawn.
    pub fn sample_compacted(&mut self, n: usize) -> Result<(RelaxedTree, u64)> {
        let mut attempts = 0;
        loop {
            attempts += 1;
            let path = self.sample_relaxed(n)?;
            let tree = RelaxedTree::from_path(&path)?;
            if is_compacted(&tree) {
                return Ok((tree, attempts));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::enumerate_paths;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table(n: usize) -> CountTable {
        CountTable::relaxed(n, StorageMode::FullTriangle).unwrap()
    }

    #[test]
    fn unrank_examples() {
        let t = table(4);
        assert_eq!(
            unrank_relaxed(&t, 1, &Integer::ZERO).unwrap().to_string(),
            "H:1 V"
        );
        assert!(matches!(
            unrank_relaxed(&t, 2, &Integer::from(3)),
            Err(Error::Range(_))
        ));
        assert!(unrank_relaxed(&t, 5, &Integer::ZERO).is_err());
    }

    #[test]
    fn unrank_is_bijective_and_ranks_back() {
        let t = table(4);
        for n in 0..=4 {
            let mut seen: Vec<DecoratedPath> = (0..t.diagonal()[n].to_u32().unwrap())
                .map(|i| {
                    let p = unrank_relaxed(&t, n, &Integer::from(i)).unwrap();
                    assert_eq!(rank_relaxed(&t, &p).unwrap(), i);
                    p
                })
                .collect();
            seen.sort();
            let mut all = enumerate_paths(n).unwrap();
            all.sort();
            assert_eq!(seen, all);
        }
    }

    #[test]
    fn seeded_contexts_agree() {
        let shared = Arc::new(table(20));
        let mut a =
            SamplerContext::with_table(shared.clone(), ChaCha8Rng::seed_from_u64(7)).unwrap();
        let mut b = SamplerContext::with_table(shared, ChaCha8Rng::seed_from_u64(7)).unwrap();
        for _ in 0..20 {
            assert_eq!(a.sample_relaxed(20).unwrap(), b.sample_relaxed(20).unwrap());
        }
        assert_eq!(a.sample_relaxed(1).unwrap().to_string(), "H:1 V");
    }

    #[test]
    fn compacted_samples_are_compacted() {
        let mut ctx = SamplerContext::new(10, ChaCha8Rng::seed_from_u64(3)).unwrap();
        for _ in 0..50 {
            let (t, attempts) = ctx.sample_compacted(10).unwrap();
            assert!(is_compacted(&t));
            assert!(attempts >= 1);
        }
    }

    #[test]
    fn uniform_below_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let bound = Integer::from(Integer::u_pow_u(2, 64)) + 5;
        for _ in 0..1000 {
            let x = uniform_below(&mut rng, &bound);
            assert!(x >= 0 && x < bound);
        }
        assert_eq!(uniform_below(&mut rng, &Integer::from(1)), 0);
    }
}
