//! Deliberately naive reference implementations. Slow, obvious, and
//! independent of the index, the set calculus and the pruned searches; the
//! property suites compare the real implementations against these.

use crate::colorings::{Color, Coloring};
use crate::error::Result;
use crate::index::FactorIndex;
use crate::verifier::Constraints;
use crate::words::{zimin_letter_at, Word};

/// Least start of `u` in `text`, by scanning.
pub fn first_occurrence(text: &[u32], u: &[u32]) -> Option<usize> {
    if u.is_empty() {
        return Some(0);
    }
    if u.len() > text.len() {
        return None;
    }
    (0..=text.len() - u.len()).find(|&i| &text[i..i + u.len()] == u)
}

pub fn is_factor(text: &[u32], u: &[u32]) -> bool {
    first_occurrence(text, u).is_some()
}

/// `L(u)` by trying every cut set (2^{|u|-1} of them).
pub fn consecutive_length(text: &[u32], u: &[u32]) -> Option<usize> {
    let a = first_occurrence(text, u)?;
    let n = u.len();
    let mut best = 0;
    for mask in 0u64..1 << (n - 1) {
        let mut start = 0;
        let mut ok = true;
        let mut parts = 0;
        for end in 1..=n {
            if end == n || mask >> (end - 1) & 1 == 1 {
                if first_occurrence(text, &u[start..end]) != Some(a + start) {
                    ok = false;
                    break;
                }
                parts += 1;
                start = end;
            }
        }
        if ok {
            best = best.max(parts);
        }
    }
    Some(best)
}

/// Longest square, by comparing every pair of halves.
pub fn largest_square(s: &[u32]) -> usize {
    let mut best = 0;
    for i in 0..s.len() {
        for half in 1..=(s.len() - i) / 2 {
            if s[i..i + half] == s[i + half..i + 2 * half] {
                best = best.max(2 * half);
            }
        }
    }
    best
}

/// Zimin prefix straight from `Z_{n+1} = Z_n x_{n+1} Z_n`.
pub fn zimin_prefix(n: usize) -> Vec<u32> {
    let mut z = vec![1u32];
    let mut k = 1;
    while z.len() < n {
        k += 1;
        let mut next = z.clone();
        next.push(k);
        next.extend_from_slice(&z);
        z = next;
    }
    z.truncate(n);
    z
}

/// Period-doubling prefix from `0 → 01, 1 → 00`.
pub fn period_doubling_prefix(n: usize) -> Vec<u32> {
    let mut d = vec![0u32];
    while d.len() < n {
        d = d.iter().flat_map(|&c| if c == 0 { [0, 1] } else { [0, 0] }).collect();
    }
    d.truncate(n);
    d
}

/// Letters of `Z` from position `k`, checked against the closed form.
pub fn zimin_slice(k: usize, n: usize) -> Vec<u32> {
    (k..k + n).map(|p| zimin_letter_at(p as u64)).collect()
}

/// Lexicographically least finite-sums witness by plain enumeration of
/// `r`-subsets of `[1, n]`, with pairwise distinct subset sums.
pub fn finite_sums(color: &dyn Fn(u64) -> Color, r: usize, n: u64) -> Option<Vec<u64>> {
    fn rec(color: &dyn Fn(u64) -> Color, r: usize, n: u64, from: u64, cur: &mut Vec<u64>) -> Option<Vec<u64>> {
        if cur.len() == r {
            let sums: Vec<u64> = (1u64..1 << r)
                .map(|m| (0..r).filter(|i| m >> i & 1 == 1).map(|i| cur[i]).sum())
                .collect();
            let mut sorted = sums.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let ok = sorted.len() == sums.len()
                && sums.iter().all(|&s| s <= n)
                && sums.iter().all(|&s| color(s) == color(sums[0]));
            return ok.then(|| cur.clone());
        }
        for m in from..=n {
            cur.push(m);
            if let Some(w) = rec(color, r, n, m + 1, cur) {
                return Some(w);
            }
            cur.pop();
        }
        None
    }
    rec(color, r, n, 1, &mut Vec::new())
}

/// Every way to cut `text` into `d` nonempty leading parts (end points).
pub fn cut_sets(len: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, d: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for c in from..=len {
            cur.push(c);
            rec(len, d, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, d, 1, &mut Vec::new(), &mut out);
    out
}

/// Surviving cut sets per depth for `T^k` of the indexed word, by plain
/// enumeration with no pruning. Constraints are checked by scanning the
/// window text; only the coloring itself is shared with the prober.
pub fn survivor_histogram(
    idx: &FactorIndex,
    coloring: &dyn Coloring,
    k: usize,
    m_max: usize,
    len_max: usize,
    constraints: Constraints,
) -> Result<Vec<u64>> {
    let text = idx.text().letters();
    let alphabet = idx.text().alphabet();
    let mut hist = vec![0; m_max];
    for d in 1..=m_max {
        'cuts: for cuts in cut_sets(len_max, d) {
            let mut bounds = vec![k];
            bounds.extend(cuts.iter().map(|c| k + c));
            let parts: Vec<&[u32]> = bounds.windows(2).map(|w| &text[w[0]..w[1]]).collect();
            if constraints.consecutive && bounds.windows(2).any(|w| first_occurrence(text, &text[w[0]..w[1]]) != Some(w[0])) {
                continue;
            }
            if constraints.suffix_property && (1..d).any(|n| !parts[n].ends_with(&text[k..bounds[n]])) {
                continue;
            }
            let mut colors = Vec::new();
            for mask in 1u64..1 << d {
                let w: Vec<u32> = (0..d).filter(|i| mask >> i & 1 == 1).flat_map(|i| parts[i].iter().copied()).collect();
                if constraints.factor_closed && !is_factor(text, &w) {
                    continue 'cuts;
                }
                colors.push(coloring.color(idx, &Word::new(alphabet, w)?)?);
            }
            if colors.iter().all(|c| *c == colors[0]) {
                hist[d - 1] += 1;
            }
        }
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_basics() {
        assert_eq!(zimin_prefix(8), vec![1, 2, 1, 3, 1, 2, 1, 4]);
        assert_eq!(zimin_slice(0, 8), zimin_prefix(8));
        assert_eq!(period_doubling_prefix(8), vec![0, 1, 0, 0, 0, 1, 0, 1]);
        assert_eq!(first_occurrence(&zimin_prefix(16), &[3, 1, 2]), Some(3));
        assert_eq!(consecutive_length(&zimin_prefix(16), &[1, 2, 1]), Some(2));
        assert_eq!(largest_square(&[0, 0, 1, 0, 0]), 2);
        assert_eq!(finite_sums(&|_| Color::Red, 3, 10), Some(vec![1, 2, 4]));
        assert_eq!(cut_sets(4, 2).len(), 6);
    }
}
