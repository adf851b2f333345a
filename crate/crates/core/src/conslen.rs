//! Consecutive decompositions and the consecutive length `L(u)`.
//!
//! Everything is relative to the first occurrence of `u` in the indexed
//! prefix: a chunk `u[p..q)` is in its slot when its own first occurrence is
//! `A(u) + p`. A decomposition is consecutive iff every chunk is in its slot.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::words::Word;

/// `valid[p][q - p - 1]` is true iff `u[p..q)` has its first occurrence at `A(u) + p`.
struct SlotTable {
    a: usize,
    valid: Vec<Vec<bool>>,
}

impl SlotTable {
    fn build(idx: &FactorIndex, u: &Word) -> Result<Self> {
        let a = idx.first_occurrence(u)?;
        let s = u.letters();
        let valid = (0..s.len())
            .map(|p| {
                let firsts = idx.prefix_first_occurrences(&s[p..]);
                debug_assert_eq!(firsts.len(), s.len() - p);
                firsts.into_iter().map(|f| f == a + p).collect()
            })
            .collect();
        Ok(SlotTable { a, valid })
    }

    fn n(&self) -> usize {
        self.valid.len()
    }

    fn ok(&self, p: usize, q: usize) -> bool {
        self.valid[p][q - p - 1]
    }

    /// `suf[p]` = most chunks tiling `u[p..)`; `None` when no tiling exists.
    fn suffix_best(&self) -> Vec<Option<usize>> {
        let n = self.n();
        let mut suf = vec![None; n + 1];
        suf[n] = Some(0);
        for p in (0..n).rev() {
            suf[p] = (p + 1..=n)
                .filter(|&q| self.ok(p, q))
                .filter_map(|q| suf[q].map(|b| b + 1))
                .max();
        }
        suf
    }
}

fn check_cuts(u: &Word, cuts: &[usize]) -> Result<()> {
    let mut prev = 0;
    for &c in cuts {
        if c <= prev || c >= u.len() {
            return Err(Error::PreconditionViolated(format!(
                "cuts must be strictly increasing interior positions of a word of length {}",
                u.len()
            )));
        }
        prev = c;
    }
    Ok(())
}

fn bounds(u: &Word, cuts: &[usize]) -> Vec<usize> {
    let mut b = Vec::with_capacity(cuts.len() + 2);
    b.push(0);
    b.extend_from_slice(cuts);
    b.push(u.len());
    b
}

pub fn is_consecutive(idx: &FactorIndex, u: &Word, cuts: &[usize]) -> Result<bool> {
    check_cuts(u, cuts)?;
    let a = idx.first_occurrence(u)?;
    let b = bounds(u, cuts);
    for w in b.windows(2) {
        if idx.first_occurrence(&u.slice(w[0]..w[1]))? != a + w[0] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three-condition form: `A(v_1) = A(u)`, `B(v_l) = B(u)`, `B(v_i) = A(v_{i+1})`.
pub fn is_consecutive_three(idx: &FactorIndex, u: &Word, cuts: &[usize]) -> Result<bool> {
    check_cuts(u, cuts)?;
    let b = bounds(u, cuts);
    let chunks: Vec<Word> = b.windows(2).map(|w| u.slice(w[0]..w[1])).collect();
    let first = idx.first_occurrence(&chunks[0])? == idx.first_occurrence(u)?;
    let last = idx.end_of_first_occurrence(chunks.last().unwrap())? == idx.end_of_first_occurrence(u)?;
    let mut linked = true;
    for pair in chunks.windows(2) {
        linked &= idx.end_of_first_occurrence(&pair[0])? == idx.first_occurrence(&pair[1])?;
    }
    Ok(first && last && linked)
}

/// `L(u)`, by the forward slot dynamic program.
pub fn consecutive_length(idx: &FactorIndex, u: &Word) -> Result<usize> {
    let t = SlotTable::build(idx, u)?;
    let n = t.n();
    let mut best: Vec<Option<usize>> = vec![None; n + 1];
    best[0] = Some(0);
    for q in 1..=n {
        best[q] = (0..q)
            .filter(|&p| t.ok(p, q))
            .filter_map(|p| best[p].map(|b| b + 1))
            .max();
    }
    Ok(best[n].expect("the one-chunk decomposition is always consecutive"))
}

pub fn is_irreducible(idx: &FactorIndex, u: &Word) -> Result<bool> {
    Ok(consecutive_length(idx, u)? == 1)
}

/// Whether `u = v_1 v_2` with `A(v_1) = A(u)` and `B(v_2) = B(u)`.
pub fn has_first_occurrence_split(idx: &FactorIndex, u: &Word) -> Result<Option<usize>> {
    let a = idx.first_occurrence(u)?;
    let b = a + u.len();
    for p in 1..u.len() {
        let left = idx.first_occurrence(&u.slice(0..p))?;
        let right = idx.end_of_first_occurrence(&u.slice(p..u.len()))?;
        if left == a && right == b {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsecutiveDecomposition {
    pub base: Word,
    /// First occurrence of `base` in the index.
    pub start: usize,
    /// Interior cut offsets.
    pub cuts: Vec<usize>,
    /// Per chunk: `L(chunk) = 1` was checked.
    pub certified: Vec<bool>,
}

impl ConsecutiveDecomposition {
    pub fn chunks(&self) -> Vec<Word> {
        bounds(&self.base, &self.cuts)
            .windows(2)
            .map(|w| self.base.slice(w[0]..w[1]))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.cuts.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for ConsecutiveDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chunks().iter().map(Word::to_string).collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}

/// A decomposition with `L(u)` chunks; ties go to the shortest first chunk.
pub fn maximal_decomposition(idx: &FactorIndex, u: &Word) -> Result<ConsecutiveDecomposition> {
    let t = SlotTable::build(idx, u)?;
    let suf = t.suffix_best();
    let n = t.n();
    let mut cuts = Vec::new();
    let mut p = 0;
    while p < n {
        let want = suf[p].expect("reachable position has a tiling") - 1;
        let q = (p + 1..=n)
            .find(|&q| t.ok(p, q) && suf[q] == Some(want))
            .expect("traceback follows an optimal edge");
        if q < n {
            cuts.push(q);
        }
        p = q;
    }
    let mut dec = ConsecutiveDecomposition { base: u.clone(), start: t.a, cuts, certified: Vec::new() };
    for c in dec.chunks() {
        let irreducible = is_irreducible(idx, &c)?;
        assert!(irreducible, "chunk {c} of a maximal decomposition is reducible");
        dec.certified.push(irreducible);
    }
    Ok(dec)
}

/// A factor `u` with `A(u) = k` and `L(u) = l`: take ever longer prefixes of
/// `T^k(x)` whose first occurrence is `k`, and once one has `L ≥ l`, keep the
/// first `l` chunks of its maximal decomposition.
pub fn find_factor_with_length(idx: &FactorIndex, k: usize, l: usize) -> Result<Word> {
    if l == 0 {
        return Err(Error::PreconditionViolated("target length must be at least 1".into()));
    }
    let window = idx.window();
    if k >= window {
        return Err(Error::WindowExhausted { window });
    }
    let text = idx.text();
    let mut n = 1;
    loop {
        let len = n.min(window - k);
        let u = text.slice(k..k + len);
        if idx.first_occurrence(&u)? == k {
            let dec = maximal_decomposition(idx, &u)?;
            if dec.len() >= l {
                let end = if l == dec.len() { u.len() } else { dec.cuts[l - 1] };
                let w = u.slice(0..end);
                debug_assert_eq!(consecutive_length(idx, &w)?, l);
                return Ok(w);
            }
        }
        if len == window - k {
            return Err(Error::WindowExhausted { window });
        }
        n *= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundarySet {
    #[serde(rename = "lambda+")]
    LambdaPlus,
    #[serde(rename = "lambda-")]
    LambdaMinus,
    #[serde(rename = "rho+")]
    RhoPlus,
    #[serde(rename = "rho-")]
    RhoMinus,
}

impl BoundarySet {
    pub const ALL: [BoundarySet; 4] =
        [BoundarySet::LambdaPlus, BoundarySet::LambdaMinus, BoundarySet::RhoPlus, BoundarySet::RhoMinus];

    fn plus(self) -> bool {
        matches!(self, BoundarySet::LambdaPlus | BoundarySet::RhoPlus)
    }
}

impl fmt::Display for BoundarySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundarySet::LambdaPlus => "lambda+",
            BoundarySet::LambdaMinus => "lambda-",
            BoundarySet::RhoPlus => "rho+",
            BoundarySet::RhoMinus => "rho-",
        })
    }
}

impl FromStr for BoundarySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lambda+" | "λ+" | "l+" => BoundarySet::LambdaPlus,
            "lambda-" | "λ-" | "λ−" | "l-" => BoundarySet::LambdaMinus,
            "rho+" | "ρ+" | "r+" => BoundarySet::RhoPlus,
            "rho-" | "ρ-" | "ρ−" | "r-" => BoundarySet::RhoMinus,
            _ => return Err(Error::Parse(format!("unknown boundary set {s:?}"))),
        })
    }
}

/// λ±: irreducible `v` with `B(vu) = B(u)` and `B(v) = A(u)` (+) or `< A(u)` (−).
/// ρ±: irreducible suffixes `v` of `u` with the same `B(v)` comparison.
///
/// For λ, `B(vu) = B(u)` pins `vu` at `A(u) - |v|`, so `v` is the slice of the
/// indexed prefix just before `u`; only those slices are tried.
pub fn boundary_sets(idx: &FactorIndex, u: &Word, which: BoundarySet) -> Result<BTreeSet<Word>> {
    let a = idx.first_occurrence(u)?;
    let b = a + u.len();
    let mut out = BTreeSet::new();
    let keep = |bv: usize| if which.plus() { bv == a } else { bv < a };
    match which {
        BoundarySet::LambdaPlus | BoundarySet::LambdaMinus => {
            let text = idx.text();
            for l in 1..=a {
                let v = text.slice(a - l..a);
                let vu = v.concat(u);
                // Once vu has an earlier occurrence, every longer extension does too.
                if idx.end_of_first_occurrence(&vu)? != b {
                    break;
                }
                if keep(idx.end_of_first_occurrence(&v)?) && is_irreducible(idx, &v)? {
                    out.insert(v);
                }
            }
        }
        BoundarySet::RhoPlus | BoundarySet::RhoMinus => {
            for p in 0..u.len() {
                let v = u.slice(p..u.len());
                if keep(idx.end_of_first_occurrence(&v)?) && is_irreducible(idx, &v)? {
                    out.insert(v);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{WordSource, ZiminDefinition};

    fn zidx(window: usize) -> FactorIndex {
        FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), window).unwrap()
    }

    #[test]
    fn consecutive_examples() {
        let idx = zidx(64);
        let u = Word::zimin(&[1, 2, 1]);
        assert!(is_consecutive(&idx, &u, &[1]).unwrap());
        assert!(!is_consecutive(&idx, &u, &[1, 2]).unwrap());
        assert!(is_consecutive(&idx, &u, &[]).unwrap());
        assert!(is_consecutive(&idx, &u, &[0]).is_err());
    }

    #[test]
    fn length_examples() {
        let idx = zidx(64);
        assert_eq!(consecutive_length(&idx, &Word::zimin(&[1])).unwrap(), 1);
        assert_eq!(consecutive_length(&idx, &Word::zimin(&[1, 2, 1])).unwrap(), 2);
        assert_eq!(consecutive_length(&idx, &Word::zimin(&[2, 1])).unwrap(), 1);
        assert!(is_irreducible(&idx, &Word::zimin(&[2, 1])).unwrap());
        assert!(!is_irreducible(&idx, &Word::zimin(&[1, 2, 1])).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let idx = zidx(64);
        let d = maximal_decomposition(&idx, &Word::zimin(&[1, 2, 1])).unwrap();
        assert_eq!(d.cuts, vec![1]);
        assert_eq!(d.to_string(), "[x1 | x2 x1]");
        assert_eq!(maximal_decomposition(&idx, &Word::zimin(&[1])).unwrap().cuts, Vec::<usize>::new());
        let u = Word::zimin(&[1, 2, 1, 3]);
        let d = maximal_decomposition(&idx, &u).unwrap();
        assert_eq!(d.len(), consecutive_length(&idx, &u).unwrap());
        assert!(d.certified.iter().all(|&c| c));
    }

    #[test]
    fn find_with_length() {
        let idx = zidx(256);
        assert_eq!(find_factor_with_length(&idx, 0, 1).unwrap(), Word::zimin(&[1]));
        let w = find_factor_with_length(&idx, 0, 2).unwrap();
        assert_eq!(consecutive_length(&idx, &w).unwrap(), 2);
        assert_eq!(idx.first_occurrence(&w).unwrap(), 0);
        let p = FactorIndex::build(&WordSource::periodic(Word::binary("01")).unwrap(), 128).unwrap();
        assert!(matches!(find_factor_with_length(&p, 0, 5), Err(Error::WindowExhausted { .. })));
    }

    #[test]
    fn boundary_examples() {
        let idx = zidx(64);
        let u = Word::zimin(&[2, 1]);
        let one: BTreeSet<Word> = [Word::zimin(&[1])].into();
        assert_eq!(boundary_sets(&idx, &u, BoundarySet::LambdaPlus).unwrap(), one);
        assert_eq!(boundary_sets(&idx, &u, BoundarySet::RhoPlus).unwrap(), one);
        assert!(boundary_sets(&idx, &u, BoundarySet::LambdaMinus).unwrap().is_empty());
        assert!(boundary_sets(&idx, &u, BoundarySet::RhoMinus).unwrap().is_empty());
        let at0 = Word::zimin(&[1, 2]);
        assert!(boundary_sets(&idx, &at0, BoundarySet::LambdaPlus).unwrap().is_empty());
        assert!(boundary_sets(&idx, &at0, BoundarySet::LambdaMinus).unwrap().is_empty());
    }
}
