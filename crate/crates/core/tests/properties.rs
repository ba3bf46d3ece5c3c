//! Property tests against independent oracles.

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::{Float, Integer, Rational};

use ctrees::asymptotics::{airy_ai, extrapolate_v, min_extrapolation_prec, phi, psi, USequence};
use ctrees::exact::{meander_table, CountTable, StorageMode};
use ctrees::sampling::{rank_relaxed, unrank_relaxed, SamplerContext};
use ctrees::trees::{is_compacted, DecoratedPath, RelaxedTree};
use ctrees::TreeKind;

/// Forward walk over meanders: an up step from `(a, b)` has weight
/// `(a - b + 2) / (a + b + 2)`, a down step weight 1.
fn meander_oracle(max_n: usize) -> Vec<Vec<Rational>> {
    let mut d = vec![vec![Rational::new(); max_n + 2]; max_n + 1];
    d[0][0] = Rational::from(1);
    for a in 0..max_n {
        for b in 0..=a {
            if d[a][b] == 0 {
                continue;
            }
            let v = d[a][b].clone();
            let w = Rational::from(((a - b + 2) as i64, (a + b + 2) as i64));
            d[a + 1][b + 1] += Rational::from(&v * &w);
            if b > 0 {
                d[a + 1][b - 1] += v;
            }
        }
    }
    d
}

/// The compacted weights in meander coordinates, straight from their own
/// three-term rational recurrence.
fn compacted_oracle(max_n: usize) -> Vec<Vec<Rational>> {
    let mut e: Vec<Vec<Rational>> = Vec::new();
    for n in 0..=max_n {
        let mut row = vec![Rational::new(); n + 1];
        for m in 0..=n {
            if (n + m) % 2 != 0 {
                continue;
            }
            if m == n {
                let mut f = Integer::from(1);
                for i in 2..=n as u32 {
                    f *= i;
                }
                row[m] = Rational::from((Integer::from(1), f));
                continue;
            }
            let at = |e: &Vec<Vec<Rational>>, i: i64, j: i64| -> Rational {
                if i < 0 || j < 0 || j > i {
                    Rational::new()
                } else {
                    e[i as usize][j as usize].clone()
                }
            };
            let (ni, mi) = (n as i64, m as i64);
            let mut v = at(&e, ni - 1, mi + 1);
            v += at(&e, ni - 1, mi - 1) * Rational::from((ni - mi + 2, ni + mi));
            if ni + mi > 2 {
                let w = Rational::from((2 * (ni - mi - 2), (ni + mi) * (ni + mi - 2)));
                v -= at(&e, ni - 3, mi - 1) * w;
            }
            row[m] = v;
        }
        e.push(row);
    }
    e
}

#[test]
fn meander_weights_match_the_step_walk() {
    let oracle = meander_oracle(40);
    let d = meander_table(TreeKind::Relaxed, 40).unwrap();
    for n in 0..=40 {
        for m in 0..=n {
            assert_eq!(*d.get(n, m), oracle[n][m], "d[{n}][{m}]");
        }
    }
}

#[test]
fn compacted_weights_match_their_recurrence() {
    let oracle = compacted_oracle(40);
    let e = meander_table(TreeKind::Compacted, 40).unwrap();
    for n in 0..=40 {
        for m in 0..=n {
            assert_eq!(*e.get(n, m), oracle[n][m], "e[{n}][{m}]");
        }
    }
}

#[test]
fn factorial_times_weight_is_the_count() {
    let r = CountTable::relaxed(30, StorageMode::RollingRow).unwrap();
    let c = CountTable::compacted(30, StorageMode::RollingRow).unwrap();
    let d = meander_table(TreeKind::Relaxed, 60).unwrap();
    let e = meander_table(TreeKind::Compacted, 60).unwrap();
    let mut f = Integer::from(1);
    for n in 0..=30 {
        if n > 0 {
            f *= n as u32;
        }
        assert_eq!(Rational::from(d.get(2 * n, 0) * &f), r.diagonal()[n]);
        assert_eq!(Rational::from(e.get(2 * n, 0) * &f), c.diagonal()[n]);
        assert!(c.diagonal()[n] <= r.diagonal()[n]);
    }
}

fn tables() -> &'static (CountTable, CountTable) {
    static T: std::sync::OnceLock<(CountTable, CountTable)> = std::sync::OnceLock::new();
    T.get_or_init(|| {
        (
            CountTable::relaxed(120, StorageMode::FullTriangle).unwrap(),
            CountTable::compacted(120, StorageMode::FullTriangle).unwrap(),
        )
    })
}

fn random_index(bound: &Integer, seed: u64) -> Integer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ctrees::sampling::uniform_below(&mut rng, bound)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn recurrences_hold_on_random_cells(n in 0usize..=120, frac in 0.0f64..=1.0) {
        let m = (n as f64 * frac).round() as usize;
        let (r, c) = tables();
        let at = |t: &CountTable, a: i64, b: i64| -> Integer {
            if a < 0 || b < 0 || b > a {
                Integer::new()
            } else {
                t.get(a as usize, b as usize).unwrap().clone()
            }
        };
        if m > 0 {
            let (ni, mi) = (n as i64, m as i64);
            let rel = at(r, ni, mi - 1) + at(r, ni - 1, mi) * (mi + 1);
            prop_assert_eq!(&rel, r.get(n, m).unwrap());
            let cmp = at(c, ni, mi - 1) + at(c, ni - 1, mi) * (mi + 1) - at(c, ni - 2, mi - 1) * (mi - 1);
            prop_assert_eq!(&cmp, c.get(n, m).unwrap());
        }
        prop_assert_eq!(r.recurrence_holds(n, m), Some(true));
        prop_assert_eq!(c.recurrence_holds(n, m), Some(true));
        prop_assert_eq!(r.get(n, 0).unwrap(), &Integer::from(1));
        if n > 0 {
            prop_assert!(r.get(n, m).unwrap() >= r.get(n - 1, m.min(n - 1)).unwrap());
        }
    }

    #[test]
    fn bijection_roundtrips_at_fifty(seed in any::<u64>()) {
        let (r, _) = tables();
        let index = random_index(&r.diagonal()[50], seed);
        let path = unrank_relaxed(r, 50, &index).unwrap();
        let tree = RelaxedTree::from_path(&path).unwrap();
        prop_assert_eq!(tree.size(), 50);
        prop_assert_eq!(&tree.to_path(), &path);
        prop_assert_eq!(rank_relaxed(r, &path).unwrap(), index);
        let reparsed: DecoratedPath = path.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, path);
    }

    #[test]
    fn synthetic_sequences_are_recovered(
        k in 2usize..=8,
        deltas in proptest::collection::vec(-50.0f64..50.0, 8),
        n in 30usize..60,
    ) {
        let prec = min_extrapolation_prec(k);
        let values = (1..=n + k)
            .map(|m| {
                let r = Float::with_val(prec, m).cbrt().recip();
                let mut p = Float::with_val(prec, 1);
                let mut s = Float::new(prec);
                for d in &deltas[..k] {
                    s += Float::with_val(prec, &p * *d);
                    p *= &r;
                }
                s
            })
            .collect();
        let u = USequence::from_values(TreeKind::Relaxed, prec, values);
        let v = extrapolate_v(&u, k, n, prec).unwrap();
        prop_assert!(Float::with_val(prec, &v - deltas[0]).abs() < 1e-30);
    }

    #[test]
    fn airy_is_stable_under_more_precision(x in -40.0f64..60.0, prec in 64u32..256) {
        let x = Float::with_val(64, x);
        let a = airy_ai(&x, prec).unwrap();
        let b = airy_ai(&x, prec + 64).unwrap();
        let diff = Float::with_val(prec + 64, a.mid() - b.mid()).abs();
        let tol = Float::with_val(prec + 64, 1) >> (prec - 8);
        prop_assert!(diff < tol, "x={} diff={}", x, diff);
        prop_assert!(a.lo() <= b.hi() && b.lo() <= a.hi());
    }
}

#[test]
fn sampled_paths_are_valid() {
    let mut ctx = SamplerContext::new(100, ChaCha8Rng::seed_from_u64(2024)).unwrap();
    for _ in 0..10_000 {
        let p = ctx.sample_relaxed(100).unwrap();
        assert!(p.is_complete() && p.size() == 100);
        DecoratedPath::new(p.steps().to_vec()).unwrap();
    }
}

#[test]
fn compacted_rejection_cost() {
    let mut ctx = SamplerContext::new(50, ChaCha8Rng::seed_from_u64(5)).unwrap();
    let mut attempts = 0;
    for _ in 0..100 {
        let (t, a) = ctx.sample_compacted(50).unwrap();
        assert!(is_compacted(&t));
        attempts += a;
    }
    let mean = attempts as f64 / 100.0;
    assert!((1.0..=10.0).contains(&mean), "mean attempts {mean}");
}

#[test]
fn phi_and_psi_decrease_with_one_sign_change() {
    let prec = 128;
    let grid: Vec<Float> = (1..=100)
        .map(|i| Float::with_val(prec, i) / 10u32)
        .collect();
    let psis: Vec<_> = grid.iter().map(|x| psi(x, prec).unwrap()).collect();
    let phis: Vec<_> = grid.iter().map(|x| phi(x, prec).unwrap()).collect();
    for w in psis.windows(2).chain(phis.windows(2)) {
        assert!(w[1].hi() < w[0].lo());
    }
    let signs: Vec<_> = psis
        .iter()
        .map(|p| p.sign().expect("conclusive sign"))
        .collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(changes, 1);
    assert_eq!(phi(&Float::with_val(prec, 0), prec).unwrap().to_f64(), 1.0);
}
