//! Bounded finite-sums searches and the two super-monochromatic
//! constructions (eventually periodic words, suffix chains in a recurrent word).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colorings::{Color, Coloring};
use crate::error::{Error, Result};
use crate::index::{FactorIndex, Membership};
use crate::verifier::subset_concats;
use crate::words::{Alphabet, Word};
use crate::zimin::FinSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found { witness: T },
    NotFoundWithinBound { bound: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found { witness } => Some(witness),
            SearchOutcome::NotFoundWithinBound { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IPWitness {
    pub elements: Vec<u64>,
    pub color: Color,
}

impl IPWitness {
    /// All `2^r - 1` sums of nonempty subsets, in binary-counting order.
    pub fn sums(&self) -> Vec<u64> {
        let r = self.elements.len();
        (1u64..1 << r)
            .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).map(|i| self.elements[i]).sum())
            .collect()
    }

    pub fn verify(&self, color: impl Fn(u64) -> Color) -> bool {
        self.elements.windows(2).all(|w| w[0] < w[1]) && self.sums().into_iter().all(|s| color(s) == self.color)
    }
}

/// Extend `chosen` (whose subset sums are `sums`) up to `r` elements.
fn extend_ip(colors: &[Color], target: &Color, chosen: &mut Vec<u64>, sums: &mut Vec<u64>, r: usize) -> bool {
    if chosen.len() == r {
        return true;
    }
    let n = colors.len() as u64 - 1;
    let last = *chosen.last().unwrap();
    for m in last + 1..=n {
        // m plus every old sum (and m alone) must stay in range, stay distinct
        // from old sums, and keep the color.
        let old = sums.len();
        let mut ok = true;
        for i in 0..=old {
            let t = if i == 0 { m } else { sums[i - 1] + m };
            if t > n || &colors[t as usize] != target || sums.contains(&t) {
                ok = false;
                break;
            }
            sums.push(t);
        }
        if ok {
            chosen.push(m);
            if extend_ip(colors, target, chosen, sums, r) {
                return true;
            }
            chosen.pop();
        }
        sums.truncate(old);
    }
    false
}

/// Lexicographically least `m_1 < ... < m_r` whose `2^r - 1` subset sums
/// are pairwise distinct, at most `n`, and share one color.
pub fn find_finite_sums_mono(color: impl Fn(u64) -> Color + Sync, r: usize, n: u64) -> SearchOutcome<IPWitness> {
    if r == 0 || n < r as u64 {
        return SearchOutcome::NotFoundWithinBound { bound: n };
    }
    // colors[0] is a placeholder; sums are 1-based.
    let colors: Vec<Color> = (0..=n).map(|i| if i == 0 { Color::Index(u64::MAX) } else { color(i) }).collect();
    let hit = (1..=n).into_par_iter().find_map_first(|m1| {
        let target = colors[m1 as usize].clone();
        let mut chosen = vec![m1];
        let mut sums = vec![m1];
        extend_ip(&colors, &target, &mut chosen, &mut sums, r).then_some(IPWitness { elements: chosen, color: target })
    });
    match hit {
        Some(witness) => SearchOutcome::Found { witness },
        None => SearchOutcome::NotFoundWithinBound { bound: n },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicConstruction {
    /// Length of the preperiod: the factorised suffix is `T^offset(x) = v^ω`.
    pub offset: usize,
    pub exponents: Vec<u64>,
    pub parts: Vec<Word>,
    pub color: Color,
}

/// For `x = u v^ω`: color exponents by `i ↦ C(v^i)` and take a finite-sums
/// witness `m_1 < ... < m_r`; the parts `v^{m_i}` are then re-verified on
/// every subset concatenation.
pub fn build_periodic_super_mono(
    idx: &FactorIndex,
    u: &Word,
    v: &Word,
    coloring: &dyn Coloring,
    r: usize,
    n: u64,
) -> Result<SearchOutcome<PeriodicConstruction>> {
    if v.is_empty() {
        return Err(Error::PreconditionViolated("the period must be nonempty".into()));
    }
    let colors = (1..=n).map(|i| coloring.color(idx, &v.repeat(i as usize))).collect::<Result<Vec<_>>>()?;
    let outcome = find_finite_sums_mono(|i| colors[i as usize - 1].clone(), r, n);
    let Some(w) = outcome.found() else {
        return Ok(SearchOutcome::NotFoundWithinBound { bound: n });
    };
    let parts: Vec<Word> = w.elements.iter().map(|&m| v.repeat(m as usize)).collect();
    for c in subset_concats(&parts)? {
        let got = coloring.color(idx, &c)?;
        assert_eq!(got, w.color, "subset concatenation {c} breaks the witness");
    }
    Ok(SearchOutcome::Found {
        witness: PeriodicConstruction { offset: u.len(), exponents: w.elements, parts, color: w.color },
    })
}

/// `u_1, ..., u_depth` with `u_1 ... u_n` a suffix of `u_{n+1}`: if `P` is the
/// current product at position `a`, the next occurrence of `P` at
/// `b > a + |P|` gives `v = x[a+|P|..b)` and `u_{n+1} = v P`.
pub fn build_suffix_chain(idx: &FactorIndex, u1: &Word, depth: usize) -> Result<Vec<Word>> {
    if depth == 0 {
        return Err(Error::PreconditionViolated("depth must be at least 1".into()));
    }
    let a = idx.first_occurrence(u1)?;
    let text = idx.text().letters();
    let mut chain = vec![u1.clone()];
    let mut prod = u1.letters().to_vec();
    while chain.len() < depth {
        let p = prod.len();
        let next = (a + p + 1..=text.len().saturating_sub(p)).find(|&b| text[b..b + p] == prod[..]);
        let Some(b) = next else {
            return Err(Error::WindowExhausted { window: idx.window() });
        };
        let mut un = text[a + p..b].to_vec();
        un.extend_from_slice(&prod);
        prod.extend_from_slice(&un);
        chain.push(Word::new(u1.alphabet(), un)?);
    }
    for n in 1..chain.len() {
        let head = Word::concat_all(u1.alphabet(), &chain[..n]);
        assert!(head.is_suffix_of(&chain[n]), "suffix property fails at {n}");
    }
    assert!(idx.find(&prod).is_some(), "chain product is not a factor");
    Ok(chain)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubshiftWitness {
    /// Blocks of chain indices (1-based), `A_1 < A_2 < ...`.
    pub blocks: Vec<FinSet>,
    /// `u_{A_i}` for each block.
    pub parts: Vec<Word>,
    pub color: Color,
}

fn chain_product(chain: &[Word], alphabet: Alphabet, set: FinSet) -> Word {
    Word::concat_all(alphabet, set.iter().map(|i| &chain[i as usize - 1]))
}

struct BlockSearch<'a> {
    idx: &'a FactorIndex,
    coloring: &'a dyn Coloring,
    chain: &'a [Word],
    alphabet: Alphabet,
    r: usize,
}

impl BlockSearch<'_> {
    /// Union of every subset of `blocks` (including none) with `fresh`.
    fn new_unions(blocks: &[FinSet], fresh: FinSet) -> Vec<FinSet> {
        (0u64..1 << blocks.len())
            .map(|mask| {
                (0..blocks.len()).filter(|i| mask >> i & 1 == 1).fold(fresh, |acc, i| acc.union(blocks[i]))
            })
            .collect()
    }

    fn admissible(&self, set: FinSet, target: &mut Option<Color>) -> Result<bool> {
        let w = chain_product(self.chain, self.alphabet, set);
        if self.idx.is_factor(&w) != Membership::Yes {
            return Ok(false);
        }
        let c = self.coloring.color(self.idx, &w)?;
        match target {
            Some(t) => Ok(*t == c),
            None => {
                *target = Some(c);
                Ok(true)
            }
        }
    }

    fn run(&self, blocks: &mut Vec<FinSet>, target: &mut Option<Color>) -> Result<bool> {
        if blocks.len() == self.r {
            return Ok(true);
        }
        let d = self.chain.len() as u32;
        let floor = blocks.last().and_then(|&b| FinSet::max(b)).unwrap_or(0);
        let allowed = FinSet::range(floor + 1, d + 1);
        // Nonempty subsets of `allowed`, ascending as bitmasks.
        let mut sub = allowed.bits();
        let mut masks = Vec::new();
        while sub != 0 {
            masks.push(sub);
            sub = (sub - 1) & allowed.bits();
        }
        masks.reverse();
        for bits in masks {
            let fresh = FinSet::from_bits(bits);
            let saved = target.clone();
            let mut ok = true;
            for u in Self::new_unions(blocks, fresh) {
                if !self.admissible(u, target)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                blocks.push(fresh);
                if self.run(blocks, target)? {
                    return Ok(true);
                }
                blocks.pop();
            }
            *target = saved;
        }
        Ok(false)
    }
}

/// Blocks `A_1 < ... < A_r` of chain indices such that every product
/// `u_{A_{n_1} ∪ ... ∪ A_{n_j}}` is a factor and all share one color.
/// Products of chain words over an index set are concatenated in increasing
/// order.
pub fn subshift_super_mono(
    idx: &FactorIndex,
    coloring: &dyn Coloring,
    chain: &[Word],
    r: usize,
) -> Result<SearchOutcome<SubshiftWitness>> {
    let bound = chain.len() as u64;
    if chain.is_empty() || chain.len() > 64 || r == 0 {
        return Err(Error::PreconditionViolated("need 1..=64 chain words and r >= 1".into()));
    }
    let alphabet = chain[0].alphabet();
    let search = BlockSearch { idx, coloring, chain, alphabet, r };
    let mut blocks = Vec::new();
    let mut target = None;
    if !search.run(&mut blocks, &mut target)? {
        return Ok(SearchOutcome::NotFoundWithinBound { bound });
    }
    let parts: Vec<Word> = blocks.iter().map(|&b| chain_product(chain, alphabet, b)).collect();
    let color = target.expect("found blocks carry a color");
    for w in subset_concats(&parts)? {
        assert_eq!(idx.is_factor(&w), Membership::Yes, "{w} is not a factor");
        assert_eq!(coloring.color(idx, &w)?, color, "{w} breaks the witness");
    }
    Ok(SearchOutcome::Found { witness: SubshiftWitness { blocks, parts, color } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{ColoringSpec, FnColoring};
    use crate::words::{WordSource, ZiminDefinition};

    #[test]
    fn ip_examples() {
        let w = find_finite_sums_mono(|_| Color::Red, 3, 10).found().unwrap();
        assert_eq!(w.elements, vec![1, 2, 4]);
        let parity = |i: u64| Color::Index(i % 2);
        let w = find_finite_sums_mono(parity, 2, 9).found().unwrap();
        assert_eq!(w.elements, vec![2, 4]);
        assert!(w.verify(parity));
        assert!(!find_finite_sums_mono(Color::Index, 2, 50).is_found());
    }

    #[test]
    fn periodic_examples() {
        let v = Word::binary("01");
        let src = WordSource::periodic(v.clone()).unwrap();
        let idx = FactorIndex::build(&src, 64).unwrap();
        let e = Word::empty(Alphabet::Binary);
        let c = build_periodic_super_mono(&idx, &e, &v, &ColoringSpec::Constant, 3, 10).unwrap().found().unwrap();
        assert_eq!(c.exponents, vec![1, 2, 4]);
        let parity = ColoringSpec::LengthClass { divisor: 2, modulus: 2 };
        let c = build_periodic_super_mono(&idx, &e, &v, &parity, 2, 9).unwrap().found().unwrap();
        assert_eq!(c.parts, vec![v.repeat(2), v.repeat(4)]);
    }

    #[test]
    fn chain_on_zimin() {
        let idx = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 256).unwrap();
        let chain = build_suffix_chain(&idx, &Word::zimin(&[1]), 3).unwrap();
        assert_eq!(chain, vec![Word::zimin(&[1]), Word::zimin(&[2, 1]), Word::zimin(&[3, 1, 2, 1])]);
        assert_eq!(build_suffix_chain(&idx, &Word::zimin(&[5]), 1).unwrap().len(), 1);
    }

    #[test]
    fn chain_on_periodic() {
        let idx = FactorIndex::build(&WordSource::periodic(Word::binary("01")).unwrap(), 64).unwrap();
        let chain = build_suffix_chain(&idx, &Word::binary("0"), 4).unwrap();
        assert_eq!(chain[1], Word::binary("10"));
    }

    #[test]
    fn subshift_examples() {
        let idx = FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 1024).unwrap();
        let chain = build_suffix_chain(&idx, &Word::zimin(&[1]), 5).unwrap();
        let w = subshift_super_mono(&idx, &ColoringSpec::Constant, &chain, 3).unwrap().found().unwrap();
        let singles: Vec<FinSet> = (1..=3).map(FinSet::singleton).collect();
        assert_eq!(w.blocks, singles);
        let parity = ColoringSpec::LengthClass { divisor: 1, modulus: 2 };
        assert!(subshift_super_mono(&idx, &parity, &chain, 2).unwrap().is_found());
        let injective = FnColoring(|w: &Word| Color::Index(w.len() as u64 * 1000 + w.letters()[0] as u64));
        assert!(!subshift_super_mono(&idx, &injective, &chain, 2).unwrap().is_found());
    }
}
