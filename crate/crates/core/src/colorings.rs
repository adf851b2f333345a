//! Colorings of finite words, as pure functions of a word and an index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conslen::{boundary_sets, consecutive_length, has_first_occurrence_split, BoundarySet};
use crate::error::{Error, Result};
use crate::index::{FactorIndex, Membership};
use crate::words::{Alphabet, Word};
use crate::zimin::{cz_is_red, lift_w, parse_factor};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
    Green,
    Index(u64),
    Tuple(Vec<Color>),
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Red => f.write_str("red"),
            Color::Blue => f.write_str("blue"),
            Color::Green => f.write_str("green"),
            Color::Index(i) => write!(f, "c{i}"),
            Color::Tuple(parts) => {
                f.write_str("(")?;
                for (i, c) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (c, rest) = parse_color(s.trim())?;
        if !rest.trim().is_empty() {
            return Err(Error::Parse(format!("trailing input in color {s:?}")));
        }
        Ok(c)
    }
}

fn parse_color(s: &str) -> Result<(Color, &str)> {
    let s = s.trim_start();
    if let Some(mut rest) = s.strip_prefix('(') {
        let mut parts = Vec::new();
        loop {
            let (c, r) = parse_color(rest)?;
            parts.push(c);
            let r = r.trim_start();
            if let Some(r) = r.strip_prefix(',') {
                rest = r;
            } else if let Some(r) = r.strip_prefix(')') {
                return Ok((Color::Tuple(parts), r));
            } else {
                return Err(Error::Parse(format!("unterminated color tuple near {r:?}")));
            }
        }
    }
    let end = s.find([',', ')']).unwrap_or(s.len());
    let (tok, rest) = s.split_at(end);
    let c = match tok.trim() {
        "red" => Color::Red,
        "blue" => Color::Blue,
        "green" => Color::Green,
        t => match t.strip_prefix('c').and_then(|n| n.parse().ok()) {
            Some(i) => Color::Index(i),
            None => return Err(Error::Parse(format!("unknown color {t:?}"))),
        },
    };
    Ok((c, rest))
}

impl Serialize for Color {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Anything that colors finite words relative to an index.
pub trait Coloring: Sync {
    fn color(&self, idx: &FactorIndex, u: &Word) -> Result<Color>;
}

/// Adapter for ad hoc colorings that ignore the index.
pub struct FnColoring<F>(pub F);

impl<F: Fn(&Word) -> Color + Sync> Coloring for FnColoring<F> {
    fn color(&self, _idx: &FactorIndex, u: &Word) -> Result<Color> {
        Ok((self.0)(u))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColoringSpec {
    /// Red on factors with fewer than `threshold` occurrences inside the
    /// first `window` letters, blue otherwise.
    Recurrence { window: usize, threshold: usize },
    /// Non-factors: blue if they split into two factors, red otherwise.
    /// Factors get the `inner` color.
    NonfactorNf { inner: Box<ColoringSpec> },
    /// Red iff the factor splits as `v_1 v_2` with `A(v_1) = A(u)`, `B(v_2) = B(u)`.
    FirstoccSplit,
    ZiminCz,
    PeriodDoublingCw,
    /// Green on irreducible factors; on `L ≥ 2` red iff `λ± = ρ±`.
    Squarefree3 { search_window: usize },
    Product { parts: Vec<ColoringSpec> },
    Constant,
    /// `c((|u| / divisor) mod modulus)`.
    LengthClass { divisor: usize, modulus: u64 },
}

impl ColoringSpec {
    pub fn nonfactor_nf(inner: ColoringSpec) -> Self {
        ColoringSpec::NonfactorNf { inner: Box::new(inner) }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ColoringSpec::Recurrence { .. } => "recurrence",
            ColoringSpec::NonfactorNf { .. } => "nonfactor_nf",
            ColoringSpec::FirstoccSplit => "firstocc_split",
            ColoringSpec::ZiminCz => "zimin_cz",
            ColoringSpec::PeriodDoublingCw => "period_doubling_cw",
            ColoringSpec::Squarefree3 { .. } => "squarefree3",
            ColoringSpec::Product { .. } => "product",
            ColoringSpec::Constant => "constant",
            ColoringSpec::LengthClass { .. } => "length_class",
        }
    }

    /// Every color the spec can produce.
    pub fn palette(&self) -> Vec<Color> {
        use Color::*;
        let mut p = match self {
            ColoringSpec::Recurrence { .. }
            | ColoringSpec::FirstoccSplit
            | ColoringSpec::ZiminCz
            | ColoringSpec::PeriodDoublingCw => vec![Red, Blue],
            ColoringSpec::NonfactorNf { inner } => {
                let mut p = inner.palette();
                p.extend([Red, Blue]);
                p
            }
            ColoringSpec::Squarefree3 { .. } => vec![Red, Blue, Green],
            ColoringSpec::Constant => vec![Red],
            ColoringSpec::LengthClass { modulus, .. } => (0..*modulus).map(Index).collect(),
            ColoringSpec::Product { parts } => {
                let mut acc: Vec<Vec<Color>> = vec![Vec::new()];
                for part in parts {
                    let pal = part.palette();
                    acc = acc
                        .iter()
                        .flat_map(|prefix| {
                            pal.iter().map(move |c| {
                                let mut t = prefix.clone();
                                t.push(c.clone());
                                t
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(Tuple).collect()
            }
        };
        p.sort();
        p.dedup();
        p
    }

    /// Minimum index window the spec needs.
    pub fn required_window(&self) -> usize {
        match self {
            ColoringSpec::Recurrence { window, .. } => *window,
            ColoringSpec::Squarefree3 { search_window } => *search_window,
            ColoringSpec::NonfactorNf { inner } => inner.required_window(),
            ColoringSpec::Product { parts } => parts.iter().map(Self::required_window).max().unwrap_or(0),
            _ => 0,
        }
    }
}

/// Componentwise product coloring.
pub fn product(parts: Vec<ColoringSpec>) -> Result<ColoringSpec> {
    if parts.len() < 2 {
        return Err(Error::PreconditionViolated("a product needs at least two colorings".into()));
    }
    Ok(ColoringSpec::Product { parts })
}

fn nf_color(u: &Word, is_factor: impl Fn(&Word) -> Result<bool>) -> Result<Color> {
    for p in 1..u.len() {
        if is_factor(&u.slice(0..p))? && is_factor(&u.slice(p..u.len()))? {
            return Ok(Color::Blue);
        }
    }
    Ok(Color::Red)
}

fn membership(idx: &FactorIndex, u: &Word) -> Result<bool> {
    match idx.is_factor(u) {
        Membership::Yes => Ok(true),
        Membership::No => Ok(false),
        Membership::UnknownBeyondWindow => {
            Err(Error::WindowInsufficient(format!("factor status of {u} is unknown within window {}", idx.window())))
        }
    }
}

fn zimin_membership(u: &Word) -> Result<bool> {
    match parse_factor(u) {
        Ok(_) => Ok(true),
        Err(Error::NotAZiminFactor(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn need_window(idx: &FactorIndex, w: usize) -> Result<()> {
    if idx.window() < w {
        return Err(Error::WindowInsufficient(format!("coloring needs window {w}, index has {}", idx.window())));
    }
    Ok(())
}

/// The first occurrence of a factor must lie inside the window for any
/// verdict built on `A`, `B` or `L`.
fn need_in_window(idx: &FactorIndex, u: &Word) -> Result<()> {
    match idx.first_occurrence(u) {
        Ok(_) => Ok(()),
        Err(Error::NotAFactorInWindow { window }) => {
            Err(Error::WindowInsufficient(format!("{u} is a factor but not within window {window}")))
        }
        Err(e) => Err(e),
    }
}

fn red_if(b: bool) -> Color {
    if b {
        Color::Red
    } else {
        Color::Blue
    }
}

impl FromStr for ColoringSpec {
    type Err = Error;

    /// A JSON object, or a short form: `zimin_cz`, `firstocc_split`,
    /// `period_doubling_cw`, `constant`, `squarefree3[:window]`,
    /// `recurrence[:window:threshold]`, `length_class:divisor:modulus`,
    /// `nf:<inner>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(format!("coloring spec: {e}")));
        }
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<usize>> {
            rest.split(':')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number {t:?} in coloring {s:?}"))))
                .collect()
        };
        let spec = match kind.replace('-', "_").as_str() {
            "nf" | "nonfactor_nf" => ColoringSpec::nonfactor_nf(rest.parse()?),
            "zimin_cz" | "cz" => ColoringSpec::ZiminCz,
            "firstocc_split" => ColoringSpec::FirstoccSplit,
            "period_doubling_cw" | "cw" => ColoringSpec::PeriodDoublingCw,
            "constant" => ColoringSpec::Constant,
            "squarefree3" => match nums()?[..] {
                [] => ColoringSpec::Squarefree3 { search_window: 1024 },
                [w] => ColoringSpec::Squarefree3 { search_window: w },
                _ => return Err(Error::Parse("squarefree3 takes one window".into())),
            },
            "recurrence" => match nums()?[..] {
                [] => ColoringSpec::Recurrence { window: 4096, threshold: 2 },
                [window, threshold] => ColoringSpec::Recurrence { window, threshold },
                _ => return Err(Error::Parse("recurrence takes window:threshold".into())),
            },
            "length_class" => match nums()?[..] {
                [divisor, modulus] if divisor > 0 && modulus > 0 => {
                    ColoringSpec::LengthClass { divisor, modulus: modulus as u64 }
                }
                _ => return Err(Error::Parse("length_class takes divisor:modulus, both positive".into())),
            },
            _ => return Err(Error::Parse(format!("unknown coloring {s:?}"))),
        };
        Ok(spec)
    }
}

impl Coloring for ColoringSpec {
    fn color(&self, idx: &FactorIndex, u: &Word) -> Result<Color> {
        if u.is_empty() {
            return Err(Error::PreconditionViolated("colorings are defined on nonempty words".into()));
        }
        match self {
            ColoringSpec::Constant => Ok(Color::Red),
            ColoringSpec::LengthClass { divisor, modulus } => {
                if *divisor == 0 || *modulus == 0 {
                    return Err(Error::PreconditionViolated("divisor and modulus must be positive".into()));
                }
                Ok(Color::Index((u.len() / divisor) as u64 % modulus))
            }
            ColoringSpec::Product { parts } => {
                parts.iter().map(|p| p.color(idx, u)).collect::<Result<Vec<_>>>().map(Color::Tuple)
            }
            ColoringSpec::Recurrence { window, threshold } => {
                need_window(idx, *window)?;
                if !membership(idx, u)? {
                    return Ok(Color::Blue);
                }
                let hits = idx
                    .occurrences_up_to(u, usize::MAX)
                    .into_iter()
                    .filter(|&p| p + u.len() <= *window)
                    .take(*threshold)
                    .count();
                if hits == 0 {
                    return Err(Error::WindowInsufficient(format!("{u} does not occur in the first {window} letters")));
                }
                Ok(red_if(hits < *threshold))
            }
            ColoringSpec::NonfactorNf { inner } => {
                if membership(idx, u)? {
                    inner.color(idx, u)
                } else {
                    nf_color(u, |w| membership(idx, w))
                }
            }
            ColoringSpec::FirstoccSplit => {
                if !membership(idx, u)? {
                    return Err(Error::OutsideDomain(format!("{u} is not a factor")));
                }
                need_in_window(idx, u)?;
                Ok(red_if(has_first_occurrence_split(idx, u)?.is_some()))
            }
            ColoringSpec::ZiminCz => {
                if u.alphabet() != Alphabet::Zimin {
                    return Err(Error::AlphabetMismatch {
                        expected: Alphabet::Zimin.to_string(),
                        found: u.alphabet().to_string(),
                    });
                }
                match parse_factor(u) {
                    Ok(c) => Ok(red_if(cz_is_red(&c))),
                    Err(Error::NotAZiminFactor(_)) => nf_color(u, zimin_membership),
                    Err(e) => Err(e),
                }
            }
            ColoringSpec::PeriodDoublingCw => {
                if !idx.source().is_period_doubling() {
                    return Err(Error::PreconditionViolated("period_doubling_cw needs an index over D".into()));
                }
                if !membership(idx, u)? {
                    return nf_color(u, |w| membership(idx, w));
                }
                need_in_window(idx, u)?;
                Ok(red_if(cz_is_red(&lift_w(u, idx)?)))
            }
            ColoringSpec::Squarefree3 { search_window } => {
                need_window(idx, *search_window)?;
                if !membership(idx, u)? {
                    return nf_color(u, |w| membership(idx, w));
                }
                need_in_window(idx, u)?;
                if consecutive_length(idx, u)? == 1 {
                    return Ok(Color::Green);
                }
                let set = |w| boundary_sets(idx, u, w);
                let red = set(BoundarySet::LambdaPlus)? == set(BoundarySet::RhoPlus)?
                    && set(BoundarySet::LambdaMinus)? == set(BoundarySet::RhoMinus)?;
                Ok(red_if(red))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{WordSource, ZiminDefinition};
    use crate::zimin::{build_u, FinSet};

    fn zidx() -> FactorIndex {
        FactorIndex::build(&WordSource::zimin(ZiminDefinition::Limit), 256).unwrap()
    }

    #[test]
    fn color_strings_round_trip() {
        for s in ["red", "blue", "green", "c3", "(red,blue)", "(c0,(red,green))"] {
            assert_eq!(s.parse::<Color>().unwrap().to_string(), s);
        }
        assert!("purple".parse::<Color>().is_err());
        let json = serde_json::to_string(&Color::Tuple(vec![Color::Red, Color::Index(2)])).unwrap();
        assert_eq!(json, "\"(red,c2)\"");
    }

    #[test]
    fn spec_json() {
        let spec = ColoringSpec::nonfactor_nf(ColoringSpec::Squarefree3 { search_window: 100 });
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"nonfactor_nf","inner":{"kind":"squarefree3","search_window":100}}"#);
        assert_eq!(serde_json::from_str::<ColoringSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn zimin_examples() {
        let idx = zidx();
        let u23 = build_u("{2,3}".parse::<FinSet>().unwrap()).unwrap();
        let u13 = build_u("{1,3}".parse::<FinSet>().unwrap()).unwrap();
        assert_eq!(ColoringSpec::ZiminCz.color(&idx, &u23).unwrap(), Color::Red);
        assert_eq!(ColoringSpec::ZiminCz.color(&idx, &u13).unwrap(), Color::Blue);
        // x1x1 = x1 · x1 is a two-factor split
        assert_eq!(ColoringSpec::ZiminCz.color(&idx, &Word::zimin(&[1, 1])).unwrap(), Color::Blue);
        assert_eq!(ColoringSpec::ZiminCz.color(&idx, &Word::zimin(&[1, 1, 2, 2])).unwrap(), Color::Red);
    }

    #[test]
    fn firstocc_examples() {
        let idx = zidx();
        assert_eq!(ColoringSpec::FirstoccSplit.color(&idx, &Word::zimin(&[1, 2, 1])).unwrap(), Color::Red);
        assert_eq!(ColoringSpec::FirstoccSplit.color(&idx, &Word::zimin(&[2, 1])).unwrap(), Color::Blue);
    }

    #[test]
    fn squarefree_single_letter_is_green() {
        let idx = FactorIndex::build(&WordSource::squarefree(), 200).unwrap();
        let spec = ColoringSpec::Squarefree3 { search_window: 200 };
        assert_eq!(spec.color(&idx, &Word::ternary("a")).unwrap(), Color::Green);
        assert!(matches!(
            ColoringSpec::Squarefree3 { search_window: 400 }.color(&idx, &Word::ternary("a")),
            Err(Error::WindowInsufficient(_))
        ));
    }

    #[test]
    fn products_and_palettes() {
        let idx = zidx();
        let u = Word::zimin(&[1, 2, 1]);
        let p = product(vec![ColoringSpec::FirstoccSplit, ColoringSpec::FirstoccSplit]).unwrap();
        let c = ColoringSpec::FirstoccSplit.color(&idx, &u).unwrap();
        assert_eq!(p.color(&idx, &u).unwrap(), Color::Tuple(vec![c.clone(), c]));
        assert_eq!(p.palette().len(), 4);
        let p = product(vec![ColoringSpec::FirstoccSplit, ColoringSpec::Squarefree3 { search_window: 1 }]).unwrap();
        assert_eq!(p.palette().len(), 6);
        assert!(product(vec![ColoringSpec::Constant]).is_err());
    }

    #[test]
    fn recurrence_on_zimin() {
        let idx = zidx();
        let spec = ColoringSpec::Recurrence { window: 256, threshold: 2 };
        assert_eq!(spec.color(&idx, &Word::zimin(&[1, 2])).unwrap(), Color::Blue);
        assert_eq!(spec.color(&idx, &Word::zimin(&[1, 1])).unwrap(), Color::Blue);
        // x8 occurs once in the first 256 letters
        assert_eq!(spec.color(&idx, &Word::zimin(&[8])).unwrap(), Color::Red);
    }

    #[test]
    fn nonfactor_wrapper() {
        let idx = zidx();
        let spec = ColoringSpec::nonfactor_nf(ColoringSpec::Constant);
        assert_eq!(spec.color(&idx, &Word::zimin(&[1, 2])).unwrap(), Color::Red);
        assert_eq!(spec.color(&idx, &Word::zimin(&[1, 1])).unwrap(), Color::Blue);
        assert_eq!(spec.color(&idx, &Word::zimin(&[1, 1, 2, 2])).unwrap(), Color::Red);
    }
}
