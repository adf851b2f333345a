//! Exact set calculus for the factors of the Zimin word.
//!
//! Every factor of `Z` is `u_A x_k v_B` for a unique triple `(A, k, B)` with
//! `A, B ⊆ [1, k)`. Factor, concatenation and suffix questions reduce to
//! arithmetic on these sets, which are stored as 64-bit masks (element `i`
//! is bit `i - 1`), so letters are capped at `x64`.
//!
//! `|u_A| = Σ_{i∈A} 2^{i-1}` is exactly the mask value, which is why a
//! length determines the set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::words::{zimin_letter_at, Alphabet, Word};

/// Largest letter index the set calculus can represent.
pub const KMAX: u32 = 64;

/// Longest word the builders will materialize.
pub const MAX_BUILD_LEN: u128 = 1 << 26;

/// Finite set of positive integers in `[1, 64]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSet(u64);

impl FinSet {
    pub const EMPTY: FinSet = FinSet(0);

    pub fn from_bits(bits: u64) -> Self {
        FinSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_elems<I: IntoIterator<Item = u32>>(elems: I) -> Result<Self> {
        let mut s = 0u64;
        for e in elems {
            if e == 0 || e > KMAX {
                return Err(Error::CapExceeded(format!("set element {e} outside [1, {KMAX}]")));
            }
            s |= 1 << (e - 1);
        }
        Ok(FinSet(s))
    }

    /// `[lo, hi)`; empty when `hi <= lo`.
    pub fn range(lo: u32, hi: u32) -> Self {
        let lo = lo.max(1);
        if hi <= lo {
            return FinSet::EMPTY;
        }
        FinSet(FinSet::below(hi).0 & !FinSet::below(lo).0)
    }

    /// `[1, k)`.
    pub fn below(k: u32) -> Self {
        match k {
            0 | 1 => FinSet::EMPTY,
            k if k > KMAX => FinSet(u64::MAX),
            k => FinSet((1u64 << (k - 1)) - 1),
        }
    }

    pub fn singleton(e: u32) -> Self {
        FinSet::from_elems([e]).expect("element in range")
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=KMAX).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn union(self, o: FinSet) -> FinSet {
        FinSet(self.0 | o.0)
    }

    pub fn intersection(self, o: FinSet) -> FinSet {
        FinSet(self.0 & o.0)
    }

    pub fn difference(self, o: FinSet) -> FinSet {
        FinSet(self.0 & !o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, o: FinSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Nonempty and of the form `[a, b]`.
    pub fn is_interval(self) -> bool {
        if self.0 == 0 {
            return false;
        }
        let shifted = self.0 >> self.0.trailing_zeros();
        shifted & shifted.wrapping_add(1) == 0
    }

    /// `A < B`: `max A < min B` (both nonempty).
    pub fn precedes(self, o: FinSet) -> bool {
        matches!((self.max(), o.min()), (Some(a), Some(b)) if a < b)
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (1..=KMAX).filter(move |&e| self.contains(e))
    }

    /// `|u_A| = Σ 2^{i-1}`.
    pub fn weight(self) -> u128 {
        self.0 as u128
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for FinSet {
    type Err = Error;

    /// `{1,3,4}`, `1,3,4` or `{}`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let elems = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad set element {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        FinSet::from_elems(elems)
    }
}

impl Serialize for FinSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for FinSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        FinSet::from_elems(v).map_err(serde::de::Error::custom)
    }
}

/// The triple `(A, k, B)` denoting `u_A x_k v_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalFactor {
    a: FinSet,
    k: u32,
    b: FinSet,
}

impl CanonicalFactor {
    pub fn new(a: FinSet, k: u32, b: FinSet) -> Result<Self> {
        if k == 0 || k > KMAX {
            return Err(Error::CapExceeded(format!("k = {k} outside [1, {KMAX}]")));
        }
        let below = FinSet::below(k);
        if !a.is_subset(below) || !b.is_subset(below) {
            return Err(Error::PreconditionViolated(format!("{a} and {b} must lie in [1,{k})")));
        }
        Ok(CanonicalFactor { a, k, b })
    }

    pub fn a(&self) -> FinSet {
        self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn b(&self) -> FinSet {
        self.b
    }

    pub fn len(&self) -> u128 {
        self.a.weight() + 1 + self.b.weight()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn build(&self) -> Result<Word> {
        check_build_len(self.len())?;
        let mut w = build_u(self.a)?;
        w.push(self.k);
        Ok(w.concat(&build_v(self.b)?))
    }

    /// `u_A` as a canonical factor: `(A \ {max A}, max A, [1, max A))`.
    pub fn of_u(a: FinSet) -> Result<Self> {
        let k = a.max().ok_or_else(|| Error::PreconditionViolated("u_∅ is empty".into()))?;
        CanonicalFactor::new(a.difference(FinSet::singleton(k)), k, FinSet::below(k))
    }
}

impl fmt::Display for CanonicalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.k, self.b)
    }
}

fn check_build_len(len: u128) -> Result<()> {
    if len > MAX_BUILD_LEN {
        return Err(Error::CapExceeded(format!("word of length {len} is too long to build")));
    }
    Ok(())
}

/// `u_1, ..., u_n` from `u_1 = x1`, `u_{n+1} = x_{n+1} u_1 u_2 ... u_n`.
fn u_words(n: u32) -> Vec<Vec<u32>> {
    let mut us: Vec<Vec<u32>> = Vec::with_capacity(n as usize);
    let mut prod: Vec<u32> = Vec::new();
    for i in 1..=n {
        let mut u = vec![i];
        u.extend_from_slice(&prod);
        prod.extend_from_slice(&u);
        us.push(u);
    }
    us
}

/// `v_1, ..., v_n` from `v_1 = x1`, `v_{n+1} = v_n v_{n-1} ... v_1 x_{n+1}`.
fn v_words(n: u32) -> Vec<Vec<u32>> {
    let mut vs: Vec<Vec<u32>> = Vec::with_capacity(n as usize);
    let mut rev_prod: Vec<u32> = Vec::new();
    for i in 1..=n {
        let mut v = rev_prod.clone();
        v.push(i);
        let mut next = v.clone();
        next.extend_from_slice(&rev_prod);
        rev_prod = next;
        vs.push(v);
    }
    vs
}

pub fn build_un(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::PreconditionViolated("u_n needs n >= 1".into()));
    }
    build_u(FinSet::from_elems([n])?)
}

pub fn build_vn(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::PreconditionViolated("v_n needs n >= 1".into()));
    }
    build_v(FinSet::from_elems([n])?)
}

/// `Z_n`, from `Z_1 = x1` and `Z_{n+1} = Z_n x_{n+1} Z_n`.
pub fn build_zn(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::PreconditionViolated("Z_n needs n >= 1".into()));
    }
    if n > KMAX {
        return Err(Error::CapExceeded(format!("Z_{n} exceeds kmax")));
    }
    check_build_len((1u128 << n) - 1)?;
    let mut z = vec![1u32];
    for i in 2..=n {
        let mut next = Vec::with_capacity(2 * z.len() + 1);
        next.extend_from_slice(&z);
        next.push(i);
        next.extend_from_slice(&z);
        z = next;
    }
    Ok(Word::from_raw(Alphabet::Zimin, z))
}

/// `u_A = u_{i_1} u_{i_2} ...` in increasing order of `i`.
pub fn build_u(a: FinSet) -> Result<Word> {
    check_build_len(a.weight())?;
    let us = u_words(a.max().unwrap_or(0));
    let mut out = Vec::with_capacity(a.weight() as usize);
    for i in a.iter() {
        out.extend_from_slice(&us[i as usize - 1]);
    }
    Ok(Word::from_raw(Alphabet::Zimin, out))
}

/// `v_B = v_{j_k} ... v_{j_1}` in decreasing order of `j`.
pub fn build_v(b: FinSet) -> Result<Word> {
    check_build_len(b.weight())?;
    let vs = v_words(b.max().unwrap_or(0));
    let mut out = Vec::with_capacity(b.weight() as usize);
    let elems: Vec<u32> = b.iter().collect();
    for &j in elems.iter().rev() {
        out.extend_from_slice(&vs[j as usize - 1]);
    }
    Ok(Word::from_raw(Alphabet::Zimin, out))
}

/// The unique `(A, k, B)` with `w = u_A x_k v_B`.
///
/// `k` is the largest letter and must occur once. The part before it must
/// be the suffix of `Z_{k-1}` of its length (that suffix is `u_A` with `A`
/// read off the binary expansion of the length), and the part after it the
/// prefix of `Z_{k-1}` of its length (which is `v_B`). Linear time.
pub fn parse_factor(w: &Word) -> Result<CanonicalFactor> {
    if w.alphabet() != Alphabet::Zimin {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Zimin.to_string(),
            found: w.alphabet().to_string(),
        });
    }
    let s = w.letters();
    let k = *s.iter().max().ok_or_else(|| Error::PreconditionViolated("empty word".into()))?;
    if k > KMAX {
        return Err(Error::CapExceeded(format!("letter x{k} exceeds kmax = {KMAX}")));
    }
    let mut hits = s.iter().enumerate().filter(|&(_, &l)| l == k).map(|(i, _)| i);
    let pos = hits.next().expect("max letter occurs");
    if let Some(second) = hits.next() {
        return Err(Error::NotAZiminFactor(format!(
            "x{k} occurs at {pos} and {second} with no larger letter between"
        )));
    }
    let (pre, post) = (&s[..pos], &s[pos + 1..]);
    // |Z_{k-1}| = 2^{k-1} - 1; A, B ⊆ [1, k) bounds both parts by that.
    let zk1: u64 = if k == 64 { u64::MAX >> 1 } else { (1u64 << (k - 1)) - 1 };
    if pre.len() as u64 > zk1 || post.len() as u64 > zk1 {
        return Err(Error::NotAZiminFactor(format!("a side of x{k} is longer than Z_{}", k - 1)));
    }
    let base = zk1 - pre.len() as u64;
    for (i, &l) in pre.iter().enumerate() {
        if zimin_letter_at(base + i as u64) != l {
            return Err(Error::NotAZiminFactor(format!("prefix before x{k} is not a u_A")));
        }
    }
    for (i, &l) in post.iter().enumerate() {
        if zimin_letter_at(i as u64) != l {
            return Err(Error::NotAZiminFactor(format!("suffix after x{k} is not a v_B")));
        }
    }
    CanonicalFactor::new(FinSet::from_bits(pre.len() as u64), k, FinSet::from_bits(post.len() as u64))
}

fn require_increasing(c1: &CanonicalFactor, c2: &CanonicalFactor) -> Result<()> {
    if c1.k >= c2.k {
        return Err(Error::HypothesisViolated(format!(
            "need k(u) < k(v), got {} and {}",
            c1.k, c2.k
        )));
    }
    Ok(())
}

/// Whether `uv` is a factor of `Z`, for `k(u) < k(v)`:
/// `k(u) ∉ A_2` and `B_1 = [1,k(u)) \ (A_2 ∩ [1,k(u)))`.
pub fn concat_is_factor(c1: &CanonicalFactor, c2: &CanonicalFactor) -> Result<bool> {
    require_increasing(c1, c2)?;
    let below = FinSet::below(c1.k);
    Ok(!c2.a.contains(c1.k) && c1.b == below.difference(c2.a.intersection(below)))
}

/// Canonical form of `uv`: `(A_1 ∪ {k(u)} ∪ (A_2 ∩ (k(u), k(v))), k(v), B_2)`.
pub fn concat_canonical(c1: &CanonicalFactor, c2: &CanonicalFactor) -> Result<CanonicalFactor> {
    if !concat_is_factor(c1, c2)? {
        return Err(Error::HypothesisViolated(format!("{c1}·{c2} is not a factor of Z")));
    }
    let a = c1
        .a
        .union(FinSet::singleton(c1.k))
        .union(c2.a.intersection(FinSet::range(c1.k + 1, c2.k)));
    CanonicalFactor::new(a, c2.k, c2.b)
}

/// Whether `u` is a suffix of `v`, for `k(u) < k(v)`:
/// `k(u) ∈ B_2` and `B_2 ∩ [1,k(u)) = B_1`.
pub fn suffix_test(c1: &CanonicalFactor, c2: &CanonicalFactor) -> Result<bool> {
    require_increasing(c1, c2)?;
    Ok(c2.b.contains(c1.k) && c2.b.intersection(FinSet::below(c1.k)) == c1.b)
}

/// `max([1,k) \ A)`, or 0 when `A = [1,k)`.
pub fn eta(c: &CanonicalFactor) -> u32 {
    FinSet::below(c.k).difference(c.a).max().unwrap_or(0)
}

/// The red condition of the two-coloring of `Z`:
/// `A ∩ [1,η) = [1,η) \ (B ∩ [1,η))`.
pub fn cz_is_red(c: &CanonicalFactor) -> bool {
    let low = FinSet::below(eta(c));
    c.a.intersection(low) == low.difference(c.b.intersection(low))
}

/// The first `depth` indices `m_1 < m_2 < ...` with
/// `T^k(Z) = u_{m_1} u_{m_2} ...`, peeled greedily by leading letter.
pub fn suffix_decomposition_m(k: u64, depth: usize) -> Result<Vec<u32>> {
    if depth == 0 {
        return Err(Error::PreconditionViolated("depth must be at least 1".into()));
    }
    let mut pos = k;
    let mut out = Vec::with_capacity(depth);
    for _ in 0..depth {
        let m = zimin_letter_at(pos);
        debug_assert!(out.last().is_none_or(|&prev| prev < m));
        out.push(m);
        pos = pos
            .checked_add(1u64 << (m - 1))
            .ok_or_else(|| Error::CapExceeded(format!("suffix decomposition passes x{KMAX}")))?;
    }
    Ok(out)
}

/// `W(u)`: the preimage under the parity morphism of the binary factor `u`
/// that occurs first in `Z`. It is the Zimin slice at `A_D(u)`.
pub fn lift_w(u: &Word, idx_d: &FactorIndex) -> Result<CanonicalFactor> {
    if !idx_d.source().is_period_doubling() {
        return Err(Error::PreconditionViolated("lift needs an index over the period-doubling word".into()));
    }
    let a = idx_d.first_occurrence(u)? + idx_d.source().offset();
    let letters: Vec<u32> = (a..a + u.len()).map(|p| zimin_letter_at(p as u64)).collect();
    parse_factor(&Word::from_raw(Alphabet::Zimin, letters))
}

/// `Π u_{A_n}` over a list of sets.
pub fn product_u(sets: &[FinSet]) -> Result<Word> {
    let mut out = Word::empty(Alphabet::Zimin);
    for &s in sets {
        out = out.concat(&build_u(s)?);
    }
    Ok(out)
}
