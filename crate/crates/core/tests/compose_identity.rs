use monomul_core::{plan_partial_products, split_operand, ArithMode};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn expected(a: u64, b: u64, n: u32, mode: ArithMode) -> u128 {
    let p = u128::from(a) * u128::from(b);
    match mode {
        ArithMode::FullWidth => p,
        ArithMode::LowHalf => p % (1u128 << n),
    }
}

fn reduce(v: u128, n: u32, mode: ArithMode) -> u128 {
    match mode {
        ArithMode::FullWidth => v,
        ArithMode::LowHalf => v % (1u128 << n),
    }
}

#[test]
fn exhaustive_up_to_twelve_bits() {
    for n in 2..=12 {
        // Every group width up to 10 bits; the widths used in practice above.
        let widths: Vec<u32> = if n <= 10 { (2..=n.min(8)).collect() } else { vec![3, 4, 5] };
        for m in widths {
            for mode in [ArithMode::FullWidth, ArithMode::LowHalf] {
                let plan = plan_partial_products(n, m, mode).unwrap();
                for a in 0u64..1 << n {
                    for b in 0u64..1 << n {
                        assert_eq!(
                            reduce(plan.sum_terms(a, b), n, mode),
                            expected(a, b, n, mode),
                            "n={n} m={m} {mode} a={a} b={b}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn random_trials_up_to_thirty_two_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in (14..=32).step_by(2) {
        for m in [4, 5] {
            for mode in [ArithMode::FullWidth, ArithMode::LowHalf] {
                let plan = plan_partial_products(n, m, mode).unwrap();
                let top = (1u64 << n) - 1;
                for _ in 0..50_000 {
                    let (a, b) = (rng.gen_range(0..=top), rng.gen_range(0..=top));
                    assert_eq!(
                        reduce(plan.sum_terms(a, b), n, mode),
                        expected(a, b, n, mode)
                    );
                }
            }
        }
    }
}

#[test]
fn million_trials_thirty_two_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for mode in [ArithMode::FullWidth, ArithMode::LowHalf] {
        let plan = plan_partial_products(32, 4, mode).unwrap();
        for _ in 0..1_000_000 {
            let (a, b) = (rng.gen::<u32>() as u64, rng.gen::<u32>() as u64);
            assert_eq!(
                reduce(plan.sum_terms(a, b), 32, mode),
                expected(a, b, 32, mode)
            );
        }
    }
}

#[test]
fn term_count_formulas() {
    for n in 2u32..=32 {
        for m in 2..=n.min(8) {
            let k = n.div_ceil(m) as usize;
            let full = plan_partial_products(n, m, ArithMode::FullWidth).unwrap();
            assert_eq!(full.terms().len(), k * k);
            let low = plan_partial_products(n, m, ArithMode::LowHalf).unwrap();
            let kept = (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .filter(|(i, j)| m as usize * (i + j) < n as usize)
                .count();
            assert_eq!(low.terms().len(), kept);
            if n % m == 0 {
                assert_eq!(low.dropped().len(), k * (k - 1) / 2);
            }
            for t in low.terms() {
                assert!(t.shift < n);
                assert_eq!(t.eff_width, (t.w_i + t.w_j).min(n - t.shift));
            }
        }
    }
}

#[test]
fn low_half_thirty_two_has_thirty_six_terms() {
    let plan = plan_partial_products(32, 4, ArithMode::LowHalf).unwrap();
    assert_eq!(plan.terms().len(), 36);
}

proptest! {
    #[test]
    fn split_then_join_is_identity(n in 2u32..=32, m in 2u32..=8, x in any::<u64>()) {
        prop_assume!(m <= n);
        let s = split_operand(n, m).unwrap();
        let x = x & ((1u64 << n) - 1);
        prop_assert_eq!(s.join(&s.split(x)), x);
        prop_assert_eq!(s.group_widths().iter().sum::<u32>(), n);
        prop_assert_eq!(s.k(), n.div_ceil(m));
        let (last, rest) = s.group_widths().split_last().unwrap();
        prop_assert!(rest.iter().all(|w| *w == m));
        prop_assert!(*last <= m && *last >= 1);
    }
}
