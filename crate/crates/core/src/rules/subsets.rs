//! Sub-multiset enumeration over exponent notation.

/// Calls `visit` with per-value counts for every sub-multiset of `powers`
/// whose sum lies in `lo..=hi`. At most `cap` complete assignments are
/// inspected; returns `false` if the enumeration was cut short.
pub(crate) fn for_each_submultiset(
    powers: &[(u32, u32)],
    lo: u64,
    hi: u64,
    cap: usize,
    mut visit: impl FnMut(&[u32]),
) -> bool {
    let mut counts = vec![0u32; powers.len()];
    let mut budget = cap;
    rec(powers, 0, 0, lo, hi, &mut counts, &mut budget, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    powers: &[(u32, u32)],
    i: usize,
    sum: u64,
    lo: u64,
    hi: u64,
    counts: &mut [u32],
    budget: &mut usize,
    visit: &mut impl FnMut(&[u32]),
) -> bool {
    if i == powers.len() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if sum >= lo {
            visit(counts);
        }
        return true;
    }
    let (v, mult) = powers[i];
    for c in 0..=mult {
        let s = sum + c as u64 * v as u64;
        if s > hi {
            break;
        }
        counts[i] = c;
        if !rec(powers, i + 1, s, lo, hi, counts, budget, visit) {
            counts[i] = 0;
            return false;
        }
    }
    counts[i] = 0;
    true
}

/// Expands counts back into an ascending value list.
pub(crate) fn expand(powers: &[(u32, u32)], counts: &[u32]) -> Vec<u32> {
    powers
        .iter()
        .zip(counts)
        .flat_map(|(&(v, _), &c)| std::iter::repeat_n(v, c as usize))
        .collect()
}

/// Entries left after removing the selected counts.
pub(crate) fn remainder(powers: &[(u32, u32)], counts: &[u32]) -> Vec<u32> {
    powers
        .iter()
        .zip(counts)
        .flat_map(|(&(v, m), &c)| std::iter::repeat_n(v, (m - c) as usize))
        .collect()
}

/// Finds a sub-multiset of `values` with at least `min_len` elements
/// summing to `target`, by dynamic programming over (sum, count) with the
/// count capped at `min_len`.
pub(crate) fn subset_with_sum(values: &[u32], target: u64, min_len: usize) -> Option<Vec<u32>> {
    let t = target as usize;
    if t == 0 {
        return None;
    }
    let m = min_len.max(1);
    let cell = |s: usize, c: usize| s * (m + 1) + c;
    // reach[i] holds the states reachable using the first i values
    let mut reach = vec![vec![false; (t + 1) * (m + 1)]];
    reach[0][cell(0, 0)] = true;
    for &v in values {
        let prev = reach.last().expect("nonempty");
        let mut next = prev.clone();
        let v = v as usize;
        for s in v..=t {
            for c in 0..=m {
                if prev[cell(s - v, c)] {
                    next[cell(s, (c + 1).min(m))] = true;
                }
            }
        }
        reach.push(next);
    }
    if !reach[values.len()][cell(t, m)] {
        return None;
    }
    // walk back, preferring to skip a value when the state stays reachable
    let (mut s, mut c) = (t, m);
    let mut out = Vec::new();
    for i in (0..values.len()).rev() {
        if reach[i][cell(s, c)] {
            continue;
        }
        let v = values[i] as usize;
        let pc = if c == m && reach[i][cell(s - v, m)] { m } else { c - 1 };
        out.push(values[i]);
        s -= v;
        c = pc;
    }
    debug_assert!(s == 0 && c == 0);
    out.sort_unstable();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_submultisets() {
        let powers = [(1, 2), (2, 1)];
        let mut seen = Vec::new();
        assert!(for_each_submultiset(&powers, 0, 100, 100, |c| seen
            .push(expand(&powers, c))));
        assert_eq!(seen.len(), 6);
        assert!(seen.contains(&vec![1, 1, 2]));
    }

    #[test]
    fn respects_sum_window_and_cap() {
        let powers = [(1, 3), (3, 2)];
        let mut seen = Vec::new();
        for_each_submultiset(&powers, 3, 3, 100, |c| seen.push(expand(&powers, c)));
        assert_eq!(seen, vec![vec![3], vec![1, 1, 1]]);
        let mut count = 0;
        assert!(!for_each_submultiset(&powers, 0, 100, 2, |_| count += 1));
        assert_eq!(count, 2);
    }

    #[test]
    fn subset_sum_witness() {
        let w = subset_with_sum(&[5, 5, 4, 3, 2], 12, 1).unwrap();
        assert_eq!(w.iter().sum::<u32>(), 12);
        assert!(subset_with_sum(&[5, 5, 4, 3, 2], 12, 4).is_none());
        let w = subset_with_sum(&[1, 1, 2, 3, 3, 4], 12, 4).unwrap();
        assert_eq!(w.iter().sum::<u32>(), 12);
        assert!(w.len() >= 4);
        assert!(subset_with_sum(&[1, 1, 1], 4, 1).is_none());
        // a single entry is never used twice
        assert!(subset_with_sum(&[4, 1], 8, 1).is_none());
    }
}
