//! Fixed points of the two non-erasing morphisms used by the generators,
//! with an exact factor test.
//!
//! Every factor `w` of a fixed point `x = σ(x)` with `|w| ≤ min_c |σ^j(c)|`
//! lies inside `σ^j(ab)` for some two-letter factor `ab` of `x`, and the set of
//! two-letter factors is the closure of `{x_0 x_1}` under "two-letter factors
//! of `σ(a)σ(b)`". Both facts make membership decidable on a finite prefix.

use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub(crate) struct FixedPoint {
    images: Vec<Vec<u32>>,
    seed: u32,
}

impl FixedPoint {
    /// a→abc, b→ac, c→b, fixed point from `a` (letters 0, 1, 2).
    pub(crate) fn thue_ternary() -> Self {
        FixedPoint { images: vec![vec![0, 1, 2], vec![0, 2], vec![1]], seed: 0 }
    }

    /// 0→01, 1→00, fixed point from `0`.
    pub(crate) fn period_doubling() -> Self {
        FixedPoint { images: vec![vec![0, 1], vec![0, 0]], seed: 0 }
    }

    fn apply(&self, w: &[u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &c in w {
            out.extend_from_slice(&self.images[c as usize]);
        }
        out
    }

    pub(crate) fn prefix(&self, n: usize) -> Vec<u32> {
        let mut w = vec![self.seed];
        while w.len() < n {
            w = self.apply(&w);
        }
        w.truncate(n);
        w
    }

    fn two_factors(&self) -> BTreeSet<(u32, u32)> {
        let start = self.prefix(2);
        let mut seen = BTreeSet::new();
        let mut stack = vec![(start[0], start[1])];
        while let Some((a, b)) = stack.pop() {
            if !seen.insert((a, b)) {
                continue;
            }
            let img = self.apply(&[a, b]);
            for win in img.windows(2) {
                let pair = (win[0], win[1]);
                if !seen.contains(&pair) {
                    stack.push(pair);
                }
            }
        }
        seen
    }

    pub(crate) fn is_factor(&self, w: &[u32]) -> bool {
        if w.is_empty() {
            return true;
        }
        if w.iter().any(|&c| c as usize >= self.images.len()) {
            return false;
        }
        let pairs = self.two_factors();
        let letters: BTreeSet<u32> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        // Powers σ^j(c) for every letter until the shortest reaches |w|.
        let mut powers: Vec<Vec<u32>> = (0..self.images.len() as u32).map(|c| vec![c]).collect();
        let mut guard = 0;
        while letters.iter().map(|&c| powers[c as usize].len()).min().unwrap_or(0) < w.len() {
            powers = powers.iter().map(|p| self.apply(p)).collect();
            guard += 1;
            assert!(guard < 64, "morphism does not grow");
        }
        pairs.iter().any(|&(a, b)| {
            let mut block = powers[a as usize].clone();
            block.extend_from_slice(&powers[b as usize]);
            block.windows(w.len()).any(|win| win == w)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_prefixes() {
        let t = FixedPoint::thue_ternary();
        assert_eq!(t.prefix(6), vec![0, 1, 2, 0, 2, 1]);
        let d = FixedPoint::period_doubling();
        assert_eq!(d.prefix(8), vec![0, 1, 0, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn decider_agrees_with_long_prefix_scan() {
        for fp in [FixedPoint::thue_ternary(), FixedPoint::period_doubling()] {
            let long = fp.prefix(1 << 14);
            let k = fp.images.len() as u32;
            // every word of length <= 7 over the alphabet
            for len in 1..=7u32 {
                let total = k.pow(len);
                for code in 0..total {
                    let mut w = Vec::new();
                    let mut c = code;
                    for _ in 0..len {
                        w.push(c % k);
                        c /= k;
                    }
                    let scanned = long.windows(w.len()).any(|win| win == w.as_slice());
                    assert_eq!(fp.is_factor(&w), scanned, "{w:?}");
                }
            }
        }
    }
}
