//! Lexicographic k-subset enumeration and binomial counting.
//!
//! Enumeration is exposed as internal iteration over a reusable index buffer,
//! so the hot solver loops never allocate per subset. Subsets are visited in
//! lexicographic order of their sorted index tuples, which is what the
//! lowest-tuple tie-breaking rules of the solvers rely on.

/// C(n, k), saturating at `u128::MAX` on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - k + i + 1) is always divisible by (i + 1) here
        let num = (n - k + i + 1) as u128;
        acc = match acc.checked_mul(num) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Visits every k-subset of `0..n` in lexicographic order.
///
/// The callback returns `false` to stop early; the function returns `false`
/// iff enumeration was stopped.
pub fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    if k == 0 {
        return f(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    visit_from(&mut idx, n, 0, &mut f)
}

/// Visits every k-subset of `0..n` whose smallest element is `first`,
/// in lexicographic order. Used to partition an enumeration into
/// deterministic chunks for parallel scanning.
pub fn for_each_k_subset_with_first(
    n: usize,
    k: usize,
    first: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    debug_assert!(k >= 1);
    if first + k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).map(|i| first + i).collect();
    visit_from(&mut idx, n, 1, &mut f)
}

/// Successor-based enumeration with positions below `min_pos` held fixed.
fn visit_from(idx: &mut [usize], n: usize, min_pos: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    let k = idx.len();
    loop {
        if !f(idx) {
            return false;
        }
        // advance to the lexicographic successor
        let mut i = k;
        loop {
            if i == min_pos {
                return true;
            }
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_k_subset(n, k, |s| {
            out.push(s.to_vec());
            true
        });
        out
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(60, 3), 34_220);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(200, 100), u128::MAX); // saturates
    }

    #[test]
    fn lexicographic_order_and_count() {
        for n in 0..=8 {
            for k in 0..=n {
                let subs = collect(n, k);
                assert_eq!(subs.len() as u128, binomial(n, k), "count for C({n},{k})");
                for w in subs.windows(2) {
                    assert!(w[0] < w[1], "not lexicographic: {:?} then {:?}", w[0], w[1]);
                }
                for s in &subs {
                    assert!(s.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn chunks_by_first_element_cover_everything() {
        let n = 7;
        let k = 3;
        let full = collect(n, k);
        let mut chunked = Vec::new();
        for first in 0..=n - k {
            for_each_k_subset_with_first(n, k, first, |s| {
                chunked.push(s.to_vec());
                true
            });
        }
        assert_eq!(full, chunked);
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let finished = for_each_k_subset(6, 2, |_| {
            seen += 1;
            seen < 4
        });
        assert!(!finished);
        assert_eq!(seen, 4);
    }

    #[test]
    fn single_subset_when_k_equals_n() {
        assert_eq!(collect(5, 5), vec![vec![0, 1, 2, 3, 4]]);
    }
}
