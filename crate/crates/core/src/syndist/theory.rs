/// Probability that more than `t` of `n` independent bits flip, each with
/// probability `q`: `1 - sum_{i<=t} C(n,i) q^i (1-q)^(n-i)`.
///
/// The upper tail is summed directly in log space, so small values are not
/// lost to cancellation.
pub fn p_fail_theory(n: usize, t: usize, q: f64) -> f64 {
    assert!((0.0..=1.0).contains(&q), "q must be a probability");
    if t >= n || q == 0.0 {
        return 0.0;
    }
    if q == 1.0 {
        return 1.0;
    }
    let ln_q = q.ln();
    let ln_1mq = (-q).ln_1p();
    // ln C(n, i), updated incrementally.
    let mut ln_c = 0.0f64;
    for i in 0..=t {
        ln_c += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    let mut total = 0.0f64;
    for i in t + 1..=n {
        total += (ln_c + i as f64 * ln_q + (n - i) as f64 * ln_1mq).exp();
        if i < n {
            ln_c += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
        }
    }
    total.min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        for &q in &[1e-6f64, 1e-3, 0.01, 0.3] {
            let direct = 1.0 - (1.0 - q).powi(21);
            assert!((p_fail_theory(21, 0, q) - direct).abs() < 1e-12 * direct.max(1e-300) + 1e-15);
        }
        assert_eq!(p_fail_theory(21, 1, 0.0), 0.0);
        assert_eq!(p_fail_theory(5, 5, 0.4), 0.0);
        assert_eq!(p_fail_theory(5, 2, 1.0), 1.0);
        let expected = 1.0 - 0.99f64.powi(21) - 21.0 * 0.01 * 0.99f64.powi(20);
        assert!((p_fail_theory(21, 1, 0.01) - expected).abs() < 1e-12);
        assert!((p_fail_theory(21, 1, 0.01) - 0.018_511_67).abs() < 1e-8);
    }

    #[test]
    fn small_q_is_not_cancelled() {
        // Leading term C(63, 5) q^5 dominates for tiny q.
        let q = 1e-6f64;
        let lead = 7_028_847.0 * q.powi(5);
        let v = p_fail_theory(63, 4, q);
        assert!((v / lead - 1.0).abs() < 1e-3, "{v} vs {lead}");
    }

    #[test]
    fn monotone_on_grid() {
        let qs = [1e-5, 1e-4, 1e-3, 3e-3, 1e-2, 3e-2, 0.1];
        for n in [7usize, 15, 21, 63] {
            for t in 0..4 {
                for w in qs.windows(2) {
                    assert!(p_fail_theory(n, t, w[0]) <= p_fail_theory(n, t, w[1]));
                }
                for &q in &qs {
                    assert!(p_fail_theory(n, t + 1, q) <= p_fail_theory(n, t, q));
                    assert!(p_fail_theory(n, t, q) <= p_fail_theory(n + 2, t, q));
                }
            }
        }
    }
}
