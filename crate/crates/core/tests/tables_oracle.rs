use monomul_core::{dnf_disjunction_count, gen_truth_table, ArithMode};

/// Independent count: popcount of every product, accumulated in u128.
fn popcount_sum(w: u32, low_half: bool) -> u128 {
    let mut total = 0u128;
    for a in 0u128..1 << w {
        for b in 0u128..1 << w {
            let mut p = a * b;
            if low_half {
                p %= 1 << w;
            }
            total += u128::from(p.count_ones());
        }
    }
    total
}

#[test]
fn dnf_count_matches_popcount_oracle() {
    for w in 2..=8 {
        for (mode, low) in [(ArithMode::FullWidth, false), (ArithMode::LowHalf, true)] {
            let f = gen_truth_table(w, w, mode).unwrap();
            assert_eq!(
                u128::from(dnf_disjunction_count(&f)),
                popcount_sum(w, low),
                "{w}x{w} {mode}"
            );
        }
    }
}

#[test]
fn onsets_reconstruct_the_product() {
    for wa in 1..=8 {
        for wb in 1..=8 {
            let f = gen_truth_table(wa, wb, ArithMode::FullWidth).unwrap();
            for a in 0u32..1 << wa {
                for b in 0u32..1 << wb {
                    let x = a | b << wa;
                    let r = (0..f.n_out()).fold(0, |acc, t| acc | u32::from(f.is_on(x, t)) << t);
                    assert_eq!(r, a * b);
                }
            }
        }
    }
    for w in 1..=8 {
        let f = gen_truth_table(w, w, ArithMode::LowHalf).unwrap();
        for x in 0u32..1 << (2 * w) {
            let (a, b) = (x & ((1 << w) - 1), x >> w);
            assert_eq!(f.row(x), (a * b) % (1 << w));
        }
    }
}

#[test]
fn onset_members_are_in_range() {
    let f = gen_truth_table(3, 5, ArithMode::FullWidth).unwrap();
    for t in 0..f.n_out() {
        assert!(f.onset(t).all(|x| x < 1 << f.n_in()));
    }
}
