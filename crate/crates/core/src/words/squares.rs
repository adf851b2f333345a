use super::Word;

/// Total length `2L` of the longest square `ww` (with `|w| = L`) occurring in
/// `w`, or 0 when `w` is squarefree.
///
/// For each half-length `L` the scan counts runs of positions `j` with
/// `w[j] == w[j + L]`; a run of length `L` is exactly a square. Quadratic.
pub fn largest_square_in(w: &Word) -> usize {
    let s = w.letters();
    let n = s.len();
    for half in (1..=n / 2).rev() {
        if square_with_half(s, half).is_some() {
            return 2 * half;
        }
    }
    0
}

pub fn has_square(w: &Word) -> bool {
    let s = w.letters();
    (1..=s.len() / 2).any(|half| square_with_half(s, half).is_some())
}

/// Start position of the first square with the given half-length.
pub(crate) fn square_with_half(s: &[u32], half: usize) -> Option<usize> {
    let mut run = 0;
    for j in 0..s.len().saturating_sub(half) {
        if s[j] == s[j + half] {
            run += 1;
            if run == half {
                return Some(j + 1 - half);
            }
        } else {
            run = 0;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(largest_square_in(&Word::binary("0101")), 4);
        assert_eq!(largest_square_in(&Word::ternary("abcacbabcbac")), 0);
        assert_eq!(largest_square_in(&Word::binary("00100")), 2);
        assert_eq!(largest_square_in(&Word::binary("")), 0);
        assert_eq!(square_with_half(&[0, 1, 2, 1, 2], 2), Some(1));
    }
}
