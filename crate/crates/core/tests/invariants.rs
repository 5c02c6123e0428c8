//! Cross-cutting invariants: moment log-convexity, translation-dilation
//! over a grid of progressions, and monotone growth in the box height.

use num_bigint::BigUint;
use vmvt_core::mean_values::*;
use vmvt_core::ComputeConfig;

fn j(s: u32, k: u32, x: u64, cfg: &ComputeConfig) -> BigUint {
    let params = SystemParams::new(s, k, x).unwrap();
    count_mean_value(&params, Strategy::MeetInMiddle, cfg).unwrap()
}

#[test]
fn moment_sequence_is_log_convex() {
    // Cauchy-Schwarz on the moments of |f|^2: J_s^2 <= J_{s-1} J_{s+1}
    let cfg = ComputeConfig::default();
    for k in 2..=3u32 {
        for s in 2..=3u32 {
            for x in [5u64, 9, 12] {
                let mid = j(s, k, x, &cfg);
                let lo = j(s - 1, k, x, &cfg);
                let hi = j(s + 1, k, x, &cfg);
                assert!(
                    &mid * &mid <= lo * hi,
                    "log-convexity fails at s={s} k={k} X={x}"
                );
            }
        }
    }
}

#[test]
fn progression_counts_match_contracted_ranges_on_a_grid() {
    // count_in_progression verifies the translation-dilation identity
    // internally and errors on mismatch, so success is the assertion.
    let cfg = ComputeConfig::default();
    for q in 1..=5u64 {
        for xi in -(q as i64)..=(q as i64) {
            for x in [7u64, 18, 30] {
                let params = SystemParams::new(2, 2, x).unwrap();
                count_in_progression(&params, q, xi, &cfg).unwrap();
            }
        }
    }
    // one higher-degree spot check
    let params = SystemParams::new(1, 3, 25).unwrap();
    for xi in [-3i64, 0, 2] {
        count_in_progression(&params, 3, xi, &cfg).unwrap();
    }
}

#[test]
fn counts_grow_with_box_height_and_dominate_diagonal() {
    let cfg = ComputeConfig::default();
    for k in 1..=3u32 {
        for s in 1..=3u32 {
            let mut prev = BigUint::ZERO;
            for x in 1..=12u64 {
                let current = j(s, k, x, &cfg);
                assert!(current >= prev, "J must not drop at s={s} k={k} X={x}");
                let diag = count_diagonal(s, x).unwrap();
                assert!(current >= diag, "diagonal exceeds J at s={s} k={k} X={x}");
                prev = current;
            }
        }
    }
}

#[test]
fn exact_pigeonhole_inequality_holds_everywhere_tested() {
    // X^{2s} <= J * prod_j (2 s X^j + 1), as exact integers
    let cfg = ComputeConfig::default();
    for k in 1..=3u32 {
        for s in 1..=3u32 {
            for x in [4u64, 11, 19] {
                let _params = SystemParams::new(s, k, x).unwrap();
                let count = j(s, k, x, &cfg);
                let mut product = count.clone();
                let mut xj = BigUint::from(1u32);
                for _ in 0..k {
                    xj *= BigUint::from(x);
                    product *= BigUint::from(2 * s as u64) * &xj + 1u32;
                }
                assert!(
                    product >= BigUint::from(x).pow(2 * s),
                    "pigeonhole inequality fails at s={s} k={k} X={x}"
                );
            }
        }
    }
}
