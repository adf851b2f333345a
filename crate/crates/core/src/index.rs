//! First-occurrence queries over a materialized window of an infinite word.
//!
//! A [`FactorIndex`] holds the first `window` letters of a source and a suffix
//! automaton over them. Every state remembers where its first occurrence
//! ends, so `A(u)` costs `O(|u|)`. Answers only ever concern occurrences that
//! lie entirely inside the window; "no" is reported only when the source has
//! an exact membership decider.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Word, WordSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No,
    UnknownBeyondWindow,
}

#[derive(Clone, Debug)]
struct State {
    len: u32,
    link: Option<u32>,
    /// End position (inclusive) of the first occurrence of this state's words.
    first_end: u32,
    next: Vec<(u32, u32)>,
}

impl State {
    fn go(&self, c: u32) -> Option<u32> {
        self.next.iter().find(|&&(l, _)| l == c).map(|&(_, t)| t)
    }

    fn set(&mut self, c: u32, t: u32) {
        match self.next.iter_mut().find(|(l, _)| *l == c) {
            Some(slot) => slot.1 = t,
            None => self.next.push((c, t)),
        }
    }
}

#[derive(Clone, Debug)]
struct SuffixAutomaton {
    states: Vec<State>,
}

impl SuffixAutomaton {
    fn build(text: &[u32]) -> Self {
        let mut st = vec![State { len: 0, link: None, first_end: 0, next: Vec::new() }];
        let mut last = 0u32;
        for (i, &c) in text.iter().enumerate() {
            let cur = st.len() as u32;
            st.push(State {
                len: st[last as usize].len + 1,
                link: None,
                first_end: i as u32,
                next: Vec::new(),
            });
            let mut p = Some(last);
            while let Some(pi) = p {
                if st[pi as usize].go(c).is_some() {
                    break;
                }
                st[pi as usize].set(c, cur);
                p = st[pi as usize].link;
            }
            match p {
                None => st[cur as usize].link = Some(0),
                Some(pi) => {
                    let q = st[pi as usize].go(c).unwrap();
                    if st[pi as usize].len + 1 == st[q as usize].len {
                        st[cur as usize].link = Some(q);
                    } else {
                        let clone = st.len() as u32;
                        let mut cl = st[q as usize].clone();
                        cl.len = st[pi as usize].len + 1;
                        st.push(cl);
                        let mut p = Some(pi);
                        while let Some(pj) = p {
                            if st[pj as usize].go(c) != Some(q) {
                                break;
                            }
                            st[pj as usize].set(c, clone);
                            p = st[pj as usize].link;
                        }
                        st[q as usize].link = Some(clone);
                        st[cur as usize].link = Some(clone);
                    }
                }
            }
            last = cur;
        }
        SuffixAutomaton { states: st }
    }

    fn walk(&self, u: &[u32]) -> Option<u32> {
        let mut s = 0u32;
        for &c in u {
            s = self.states[s as usize].go(c)?;
        }
        Some(s)
    }
}

/// Windowed first-occurrence engine. Immutable after [`FactorIndex::build`];
/// queries are safe to share across threads.
#[derive(Clone, Debug)]
pub struct FactorIndex {
    source: WordSource,
    text: Word,
    sam: SuffixAutomaton,
}

impl FactorIndex {
    pub fn build(source: &WordSource, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::PreconditionViolated("window must be at least 1".into()));
        }
        let text = source.prefix(window)?;
        let sam = SuffixAutomaton::build(text.letters());
        Ok(FactorIndex { source: source.clone(), text, sam })
    }

    /// Consumes the index and rebuilds it over a different window.
    pub fn rebuild(self, window: usize) -> Result<Self> {
        FactorIndex::build(&self.source, window)
    }

    pub fn source(&self) -> &WordSource {
        &self.source
    }

    pub fn window(&self) -> usize {
        self.text.len()
    }

    /// The materialized prefix of the source.
    pub fn text(&self) -> &Word {
        &self.text
    }

    /// `A(u)` restricted to occurrences inside the window, `None` if absent.
    pub fn find(&self, u: &[u32]) -> Option<usize> {
        if u.is_empty() {
            return Some(0);
        }
        let s = self.sam.walk(u)?;
        Some(self.sam.states[s as usize].first_end as usize + 1 - u.len())
    }

    /// `A` of every nonempty prefix of `u`, stopping at the first prefix that
    /// does not occur in the window.
    pub fn prefix_first_occurrences(&self, u: &[u32]) -> Vec<usize> {
        let mut out = Vec::with_capacity(u.len());
        let mut s = 0u32;
        for (i, &c) in u.iter().enumerate() {
            match self.sam.states[s as usize].go(c) {
                Some(t) => {
                    s = t;
                    out.push(self.sam.states[s as usize].first_end as usize - i);
                }
                None => break,
            }
        }
        out
    }

    /// `A(u)`: least start of an occurrence of `u` lying inside the window.
    pub fn first_occurrence(&self, u: &Word) -> Result<usize> {
        if u.is_empty() {
            return Err(Error::PreconditionViolated("first occurrence of the empty word".into()));
        }
        if u.alphabet() != self.text.alphabet() {
            return Err(Error::NotAFactorInWindow { window: self.window() });
        }
        self.find(u.letters()).ok_or(Error::NotAFactorInWindow { window: self.window() })
    }

    /// `B(u) = A(u) + |u|`.
    pub fn end_of_first_occurrence(&self, u: &Word) -> Result<usize> {
        Ok(self.first_occurrence(u)? + u.len())
    }

    pub fn is_factor(&self, u: &Word) -> Membership {
        if u.alphabet() == self.text.alphabet() && self.find(u.letters()).is_some() {
            return Membership::Yes;
        }
        match self.source.decide_factor(u) {
            Some(true) => Membership::Yes,
            Some(false) => Membership::No,
            None => Membership::UnknownBeyondWindow,
        }
    }

    /// Starts of the first `limit` occurrences of `u` inside the window.
    pub fn occurrences_up_to(&self, u: &Word, limit: usize) -> Vec<usize> {
        let Some(first) = (u.alphabet() == self.text.alphabet())
            .then(|| self.find(u.letters()))
            .flatten()
        else {
            return Vec::new();
        };
        let t = self.text.letters();
        let n = u.len();
        (first..=t.len() - n)
            .filter(|&p| &t[p..p + n] == u.letters())
            .take(limit)
            .collect()
    }

    /// Least `N ≤ n_max` with `A(P_n(T^k(x))) = k` for every `n` in `N..=n_max`.
    pub fn pinned_prefix_length(&self, k: usize, n_max: usize) -> Result<usize> {
        if n_max == 0 {
            return Err(Error::PreconditionViolated("n_max must be at least 1".into()));
        }
        if k + n_max > self.window() {
            return Err(Error::WindowInsufficient(format!(
                "offset {k} + length {n_max} exceeds window {}",
                self.window()
            )));
        }
        let firsts = self.prefix_first_occurrences(&self.text.letters()[k..k + n_max]);
        debug_assert_eq!(firsts.len(), n_max);
        match firsts.iter().rposition(|&a| a != k) {
            None => Ok(1),
            Some(i) if i + 1 < n_max => Ok(i + 2),
            Some(_) => Err(Error::NotPinnedWithinBound { offset: k, n_max }),
        }
    }

    /// Least split point `p` such that `u[..p]` and `u[p..]` are both factors,
    /// for a word `u` that is not itself a factor.
    pub fn two_factor_split(&self, u: &Word) -> Result<Option<usize>> {
        if u.is_empty() {
            return Err(Error::PreconditionViolated("empty word".into()));
        }
        match self.is_factor(u) {
            Membership::Yes => {
                return Err(Error::PreconditionViolated(format!("{u} is a factor")));
            }
            Membership::UnknownBeyondWindow => {
                return Err(Error::WindowInsufficient(format!(
                    "cannot certify that {u} is not a factor"
                )));
            }
            Membership::No => {}
        }
        for p in 1..u.len() {
            let left = self.is_factor(&u.slice(0..p));
            let right = self.is_factor(&u.slice(p..u.len()));
            match (left, right) {
                (Membership::Yes, Membership::Yes) => return Ok(Some(p)),
                (Membership::No, _) | (_, Membership::No) => {}
                _ => {
                    return Err(Error::WindowInsufficient(format!(
                        "factor status of a half of {u} at split {p} is unknown"
                    )))
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::ZiminDefinition;

    fn zidx(window: usize) -> FactorIndex {
        FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), window).unwrap()
    }

    fn didx(window: usize) -> FactorIndex {
        FactorIndex::build(&WordSource::period_doubling(), window).unwrap()
    }

    #[test]
    fn first_occurrence_examples() {
        let idx = zidx(64);
        assert_eq!(idx.first_occurrence(&Word::zimin(&[2])).unwrap(), 1);
        assert_eq!(idx.first_occurrence(&Word::zimin(&[1])).unwrap(), 0);
        assert_eq!(idx.first_occurrence(&Word::zimin(&[3, 1, 2])).unwrap(), 3);
        assert_eq!(idx.end_of_first_occurrence(&Word::zimin(&[3, 1, 2])).unwrap(), 6);
        assert_eq!(
            idx.first_occurrence(&Word::zimin(&[9])),
            Err(Error::NotAFactorInWindow { window: 64 })
        );
    }

    #[test]
    fn membership_examples() {
        assert_eq!(zidx(255).is_factor(&Word::zimin(&[1, 1])), Membership::No);
        assert_eq!(zidx(255).is_factor(&Word::zimin(&[1])), Membership::Yes);
        assert_eq!(didx(64).is_factor(&Word::binary("11")), Membership::No);
        let opaque = {
            let dir = std::env::temp_dir().join(format!("rw-idx-{}", std::process::id()));
            std::fs::create_dir_all(&dir).unwrap();
            let p = dir.join("w.txt");
            std::fs::write(&p, "0110").unwrap();
            let s = WordSource::from_file(&p, crate::words::RepeatPolicy::None).unwrap();
            FactorIndex::build(&s, 4).unwrap()
        };
        assert_eq!(opaque.is_factor(&Word::binary("11")), Membership::Yes);
        assert_eq!(opaque.is_factor(&Word::binary("00")), Membership::UnknownBeyondWindow);
    }

    #[test]
    fn occurrences_examples() {
        let idx = zidx(15);
        assert_eq!(idx.occurrences_up_to(&Word::zimin(&[1]), 4), vec![0, 2, 4, 6]);
        assert_eq!(idx.occurrences_up_to(&Word::zimin(&[4]), 4), vec![7]);
        assert!(idx.occurrences_up_to(&Word::zimin(&[5]), 4).is_empty());
    }

    #[test]
    fn pinned_examples() {
        let idx = zidx(64);
        assert_eq!(idx.pinned_prefix_length(1, 8).unwrap(), 1);
        assert_eq!(idx.pinned_prefix_length(2, 8).unwrap(), 2);
        let per = FactorIndex::build(&WordSource::periodic(Word::binary("01")).unwrap(), 64).unwrap();
        assert_eq!(
            per.pinned_prefix_length(2, 32),
            Err(Error::NotPinnedWithinBound { offset: 2, n_max: 32 })
        );
        assert!(matches!(idx.pinned_prefix_length(60, 8), Err(Error::WindowInsufficient(_))));
    }

    #[test]
    fn split_examples() {
        let idx = zidx(255);
        assert_eq!(idx.two_factor_split(&Word::zimin(&[1, 1])).unwrap(), Some(1));
        assert_eq!(idx.two_factor_split(&Word::zimin(&[1, 1, 2, 2])).unwrap(), None);
        assert!(matches!(
            idx.two_factor_split(&Word::zimin(&[1, 2])),
            Err(Error::PreconditionViolated(_))
        ));
        assert_eq!(didx(64).two_factor_split(&Word::binary("111")).unwrap(), None);
    }

    #[test]
    fn automaton_matches_naive_scan() {
        let idx = zidx(200);
        let t = idx.text().letters().to_vec();
        for start in 0..60 {
            for len in 1..12 {
                let u = &t[start..start + len];
                let naive = t.windows(len).position(|w| w == u);
                assert_eq!(idx.find(u), naive);
            }
        }
    }
}
