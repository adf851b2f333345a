use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use super::morphic::FixedPoint;
use super::{zimin_letter_at, Alphabet, Word};
use crate::error::{Error, Result};

/// Default cap on Zimin letter indices.
pub const DEFAULT_KMAX: u32 = 64;

/// The three equivalent constructions of the Zimin word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZiminDefinition {
    /// Limit of `Z_1 = x1`, `Z_{n+1} = Z_n x_{n+1} Z_n`.
    Limit,
    /// Letter `n` (1-based) is `x_{v2(n)+1}`.
    Valuation,
    /// Fixed point of `x_i -> x_1 x_{i+1}`.
    Morphism,
}

impl ZiminDefinition {
    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(ZiminDefinition::Limit),
            2 => Ok(ZiminDefinition::Valuation),
            3 => Ok(ZiminDefinition::Morphism),
            _ => Err(Error::Parse(format!("zimin definition must be 1, 2 or 3, got {id}"))),
        }
    }

    pub fn id(self) -> u8 {
        match self {
            ZiminDefinition::Limit => 1,
            ZiminDefinition::Valuation => 2,
            ZiminDefinition::Morphism => 3,
        }
    }
}

/// How a file-backed word continues past the end of the file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepeatPolicy {
    /// The word ends with the file; longer prefixes fail.
    None,
    /// The first `u_len` letters are a preperiod, the rest is repeated forever.
    CycleSuffix(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceKind {
    /// `u v v v ...`
    UltimatelyPeriodic { prefix: Word, period: Word },
    Zimin(ZiminDefinition),
    PeriodDoubling,
    SquarefreeTernary,
    FromFile { path: PathBuf, data: Arc<Word>, repeat: RepeatPolicy },
}

/// A deterministic infinite word together with a shift offset.
///
/// `prefix(n)` of a source with offset `k` is `P_n(T^k(x))`. Sources are
/// immutable and cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSource {
    kind: SourceKind,
    offset: usize,
    kmax: u32,
}

impl WordSource {
    fn of(kind: SourceKind) -> Self {
        WordSource { kind, offset: 0, kmax: DEFAULT_KMAX }
    }

    pub fn ultimately_periodic(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::PreconditionViolated("period word must be nonempty".into()));
        }
        if !prefix.is_empty() && prefix.alphabet() != period.alphabet() {
            return Err(Error::AlphabetMismatch {
                expected: period.alphabet().to_string(),
                found: prefix.alphabet().to_string(),
            });
        }
        let prefix = if prefix.is_empty() { Word::empty(period.alphabet()) } else { prefix };
        Ok(Self::of(SourceKind::UltimatelyPeriodic { prefix, period }))
    }

    /// The purely periodic word `v v v ...`.
    pub fn periodic(period: Word) -> Result<Self> {
        let alphabet = period.alphabet();
        Self::ultimately_periodic(Word::empty(alphabet), period)
    }

    pub fn zimin(definition: ZiminDefinition) -> Self {
        Self::of(SourceKind::Zimin(definition))
    }

    pub fn period_doubling() -> Self {
        Self::of(SourceKind::PeriodDoubling)
    }

    /// Fixed point of a→abc, b→ac, c→b: a squarefree ternary word.
    pub fn squarefree() -> Self {
        Self::of(SourceKind::SquarefreeTernary)
    }

    pub fn from_file(path: impl AsRef<Path>, repeat: RepeatPolicy) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let data = parse_word_file(&text)?;
        if let RepeatPolicy::CycleSuffix(u_len) = repeat {
            if u_len >= data.len() {
                return Err(Error::PreconditionViolated(format!(
                    "cycle_suffix({u_len}) leaves an empty period in a {}-letter file",
                    data.len()
                )));
            }
        }
        Ok(Self::of(SourceKind::FromFile { path: path.to_path_buf(), data: Arc::new(data), repeat }))
    }

    pub fn with_kmax(mut self, kmax: u32) -> Self {
        self.kmax = kmax;
        self
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    /// The same word at offset zero.
    pub fn base(&self) -> WordSource {
        WordSource { offset: 0, ..self.clone() }
    }

    pub fn alphabet(&self) -> Alphabet {
        match &self.kind {
            SourceKind::UltimatelyPeriodic { period, .. } => period.alphabet(),
            SourceKind::Zimin(_) => Alphabet::Zimin,
            SourceKind::PeriodDoubling => Alphabet::Binary,
            SourceKind::SquarefreeTernary => Alphabet::Ternary,
            SourceKind::FromFile { data, .. } => data.alphabet(),
        }
    }

    pub fn is_zimin(&self) -> bool {
        matches!(self.kind, SourceKind::Zimin(_))
    }

    pub fn is_period_doubling(&self) -> bool {
        matches!(self.kind, SourceKind::PeriodDoubling)
    }

    /// `T^k` of this source; offsets add up.
    pub fn suffix_view(&self, k: usize) -> WordSource {
        WordSource { offset: self.offset + k, ..self.clone() }
    }

    /// `P_n(T^k(x))` where `k` is this source's offset.
    pub fn prefix(&self, n: usize) -> Result<Word> {
        let start = self.offset;
        let end = start
            .checked_add(n)
            .ok_or_else(|| Error::CapExceeded(format!("prefix end {start}+{n} overflows")))?;
        let letters = match &self.kind {
            SourceKind::UltimatelyPeriodic { prefix, period } => {
                periodic_slice(prefix.letters(), period.letters(), start, end)
            }
            SourceKind::Zimin(def) => zimin_slice(*def, start, end),
            SourceKind::PeriodDoubling => {
                (start..end).map(|p| 1 - (zimin_letter_at(p as u64) & 1)).collect()
            }
            SourceKind::SquarefreeTernary => FixedPoint::thue_ternary().prefix(end)[start..].to_vec(),
            SourceKind::FromFile { data, repeat, .. } => match repeat {
                RepeatPolicy::None => {
                    if end > data.len() {
                        return Err(Error::InsufficientData { available: data.len(), requested: end });
                    }
                    data.letters()[start..end].to_vec()
                }
                RepeatPolicy::CycleSuffix(u_len) => {
                    let (u, v) = data.letters().split_at(*u_len);
                    periodic_slice(u, v, start, end)
                }
            },
        };
        if self.alphabet() == Alphabet::Zimin {
            if let Some(&m) = letters.iter().max() {
                if m > self.kmax {
                    return Err(Error::CapExceeded(format!(
                        "letter x{m} exceeds kmax = {}",
                        self.kmax
                    )));
                }
            }
        }
        Ok(Word::from_raw(self.alphabet(), letters))
    }

    /// `(u, v)` with `T^k(x) = u v^ω`, when this source is known to be
    /// ultimately periodic.
    pub fn periodic_parts(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let (u, v): (&[u32], &[u32]) = match &self.kind {
            SourceKind::UltimatelyPeriodic { prefix, period } => (prefix.letters(), period.letters()),
            SourceKind::FromFile { data, repeat: RepeatPolicy::CycleSuffix(u_len), .. } => {
                data.letters().split_at(*u_len)
            }
            _ => return None,
        };
        let k = self.offset;
        if k < u.len() {
            Some((u[k..].to_vec(), v.to_vec()))
        } else {
            let r = (k - u.len()) % v.len();
            let mut rot = v[r..].to_vec();
            rot.extend_from_slice(&v[..r]);
            Some((Vec::new(), rot))
        }
    }

    /// Exact factor membership in `T^k(x)` when a decision procedure exists
    /// for this kind of source; `None` for opaque sources.
    pub fn decide_factor(&self, w: &Word) -> Option<bool> {
        if w.alphabet() != self.alphabet() {
            return Some(false);
        }
        if w.is_empty() {
            return Some(true);
        }
        if let Some((u, v)) = self.periodic_parts() {
            // Occurrences starting at or after |u| repeat with period |v|.
            let horizon = u.len() + v.len() + w.len() - 1;
            let text = periodic_slice(&u, &v, 0, horizon);
            return Some(text.windows(w.len()).any(|win| win == w.letters()));
        }
        match &self.kind {
            // The next three words are recurrent, so every suffix has the same factors.
            SourceKind::Zimin(_) => match crate::zimin::parse_factor(w) {
                Ok(c) => Some(c.k() <= self.kmax),
                Err(Error::NotAZiminFactor(_)) => Some(false),
                Err(_) => None,
            },
            SourceKind::PeriodDoubling => Some(FixedPoint::period_doubling().is_factor(w.letters())),
            SourceKind::SquarefreeTernary => Some(FixedPoint::thue_ternary().is_factor(w.letters())),
            _ => None,
        }
    }

    /// Source label without the offset, e.g. `zimin:2` or `periodic:1:0`.
    pub fn label(&self) -> String {
        match &self.kind {
            SourceKind::UltimatelyPeriodic { prefix, period } => {
                format!("periodic:{}:{}", compact(prefix), compact(period))
            }
            SourceKind::Zimin(def) => format!("zimin:{}", def.id()),
            SourceKind::PeriodDoubling => "period-doubling".to_string(),
            SourceKind::SquarefreeTernary => "squarefree".to_string(),
            SourceKind::FromFile { path, repeat, .. } => match repeat {
                RepeatPolicy::None => format!("file:{}", path.display()),
                RepeatPolicy::CycleSuffix(n) => format!("file:{}:cycle={n}", path.display()),
            },
        }
    }
}

fn compact(w: &Word) -> String {
    if w.alphabet() == Alphabet::Zimin {
        w.to_string().replace(' ', "")
    } else {
        w.to_string()
    }
}

impl fmt::Display for WordSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())?;
        if self.offset > 0 {
            write!(f, "@{}", self.offset)?;
        }
        Ok(())
    }
}

impl FromStr for WordSource {
    type Err = Error;

    /// `zimin[:1|2|3]`, `period-doubling` (or `pd`), `squarefree`,
    /// `periodic:<u>:<v>`, `file:<path>[:cycle=<n>]`, each optionally
    /// followed by `@<offset>`.
    fn from_str(s: &str) -> Result<Self> {
        let (body, offset) = match s.rsplit_once('@') {
            Some((b, k)) if !k.is_empty() && k.chars().all(|c| c.is_ascii_digit()) => {
                (b, k.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?)
            }
            _ => (s, 0),
        };
        let src = if let Some(rest) = body.strip_prefix("file:") {
            match rest.rsplit_once(":cycle=") {
                Some((path, n)) => {
                    let n = n.parse().map_err(|_| Error::Parse(format!("bad cycle length {n:?}")))?;
                    WordSource::from_file(path, RepeatPolicy::CycleSuffix(n))?
                }
                None => WordSource::from_file(rest, RepeatPolicy::None)?,
            }
        } else if let Some(rest) = body.strip_prefix("periodic:") {
            let (u, v) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse("periodic source is periodic:<u>:<v>".into()))?;
            let joint = Word::parse(&format!("{u}{v}"))?;
            let u = Word::parse_as(u, joint.alphabet())?;
            let v = Word::parse_as(v, joint.alphabet())?;
            WordSource::ultimately_periodic(u, v)?
        } else {
            match body {
                "zimin" => WordSource::zimin(ZiminDefinition::Limit),
                "zimin:1" | "zimin:2" | "zimin:3" => {
                    WordSource::zimin(ZiminDefinition::from_id(body.as_bytes()[6] - b'0')?)
                }
                "period-doubling" | "pd" => WordSource::period_doubling(),
                "squarefree" => WordSource::squarefree(),
                _ => return Err(Error::Parse(format!("unknown word source {s:?}"))),
            }
        };
        Ok(src.suffix_view(offset))
    }
}

/// Parses the contents of a word file: whitespace-separated integer (or
/// `x<i>`) tokens, or one contiguous string over `{0,1,2,a,b,c}`.
pub fn parse_word_file(text: &str) -> Result<Word> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() <= 1 {
        return Word::parse(tokens.first().copied().unwrap_or(""));
    }
    if tokens.iter().any(|t| t.starts_with('x')) {
        return Word::parse_as(&tokens.join(" "), Alphabet::Zimin);
    }
    let nums = tokens
        .iter()
        .map(|t| t.parse::<u32>().map_err(|_| Error::InvalidWord(format!("bad token {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let max = nums.iter().copied().max().unwrap_or(0);
    let alphabet = match max {
        0 | 1 => Alphabet::Binary,
        2 => Alphabet::Ternary,
        _ => Alphabet::Zimin,
    };
    Word::new(alphabet, nums)
}

fn periodic_slice(u: &[u32], v: &[u32], start: usize, end: usize) -> Vec<u32> {
    (start..end)
        .map(|p| if p < u.len() { u[p] } else { v[(p - u.len()) % v.len()] })
        .collect()
}

fn zimin_slice(def: ZiminDefinition, start: usize, end: usize) -> Vec<u32> {
    match def {
        ZiminDefinition::Valuation => (start..end).map(|p| zimin_letter_at(p as u64)).collect(),
        ZiminDefinition::Limit => {
            let mut z = vec![1u32];
            let mut n = 1;
            while z.len() < end {
                n += 1;
                let mut next = Vec::with_capacity(2 * z.len() + 1);
                next.extend_from_slice(&z);
                next.push(n);
                next.extend_from_slice(&z);
                z = next;
            }
            z[start..end].to_vec()
        }
        ZiminDefinition::Morphism => {
            let mut z = vec![1u32];
            while z.len() < end {
                z = z.iter().flat_map(|&i| [1, i + 1]).collect();
            }
            z[start..end].to_vec()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> WordSource {
        WordSource::zimin(ZiminDefinition::Limit)
    }

    #[test]
    fn zimin_prefix_examples() {
        assert_eq!(z().prefix(8).unwrap(), Word::zimin(&[1, 2, 1, 3, 1, 2, 1, 4]));
        assert_eq!(z().prefix(0).unwrap(), Word::empty(Alphabet::Zimin));
        assert_eq!(
            WordSource::zimin(ZiminDefinition::Limit).prefix(7).unwrap(),
            Word::zimin(&[1, 2, 1, 3, 1, 2, 1])
        );
        let v = WordSource::zimin(ZiminDefinition::Valuation).prefix(4).unwrap();
        assert_eq!(v.letters()[3], 3);
    }

    #[test]
    fn period_doubling_prefix() {
        let d = WordSource::period_doubling().prefix(23).unwrap();
        assert_eq!(d.to_string(), "01000101010001000100010");
    }

    #[test]
    fn squarefree_prefix() {
        assert_eq!(WordSource::squarefree().prefix(6).unwrap().to_string(), "abcacb");
        assert_eq!(WordSource::squarefree().prefix(12).unwrap().to_string(), "abcacbabcbac");
    }

    #[test]
    fn suffix_views() {
        assert_eq!(z().suffix_view(0).prefix(50).unwrap(), z().prefix(50).unwrap());
        assert_eq!(z().suffix_view(1).prefix(3).unwrap(), Word::zimin(&[2, 1, 3]));
        let a = z().suffix_view(2).suffix_view(3);
        assert_eq!(a, z().suffix_view(5));
    }

    #[test]
    fn kmax_cap_is_loud() {
        let capped = z().with_kmax(3);
        assert!(capped.prefix(7).is_ok());
        assert!(matches!(capped.prefix(8), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn periodic_parts_under_shift() {
        let s = WordSource::ultimately_periodic(Word::binary("1"), Word::binary("01")).unwrap();
        assert_eq!(s.prefix(5).unwrap().to_string(), "10101");
        assert_eq!(s.suffix_view(2).periodic_parts(), Some((vec![], vec![1, 0])));
        assert_eq!(s.decide_factor(&Word::binary("11")), Some(false));
        assert_eq!(s.decide_factor(&Word::binary("1010")), Some(true));
        let p = WordSource::ultimately_periodic(Word::binary("11"), Word::binary("0")).unwrap();
        assert_eq!(p.decide_factor(&Word::binary("110")), Some(true));
        assert_eq!(p.suffix_view(1).decide_factor(&Word::binary("11")), Some(false));
        assert!(WordSource::periodic(Word::empty(Alphabet::Binary)).is_err());
    }

    #[test]
    fn deciders() {
        assert_eq!(z().decide_factor(&Word::zimin(&[1, 1])), Some(false));
        assert_eq!(z().decide_factor(&Word::zimin(&[1, 3, 1])), Some(true));
        assert_eq!(WordSource::period_doubling().decide_factor(&Word::binary("11")), Some(false));
        assert_eq!(WordSource::squarefree().decide_factor(&Word::ternary("aa")), Some(false));
        assert_eq!(z().decide_factor(&Word::binary("0")), Some(false));
    }

    #[test]
    fn file_sources() {
        let dir = std::env::temp_dir().join(format!("rw-src-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("w.txt");
        std::fs::write(&p, "0 1 1\n").unwrap();
        let none = WordSource::from_file(&p, RepeatPolicy::None).unwrap();
        assert_eq!(none.prefix(3).unwrap().to_string(), "011");
        assert_eq!(none.prefix(4), Err(Error::InsufficientData { available: 3, requested: 4 }));
        assert_eq!(none.decide_factor(&Word::binary("00")), None);
        let cyc = WordSource::from_file(&p, RepeatPolicy::CycleSuffix(1)).unwrap();
        assert_eq!(cyc.prefix(7).unwrap().to_string(), "0111111");
        std::fs::write(&p, "abcacb").unwrap();
        let t = WordSource::from_file(&p, RepeatPolicy::None).unwrap();
        assert_eq!(t.alphabet(), Alphabet::Ternary);
        std::fs::write(&p, "1 2 1 3").unwrap();
        let zf = WordSource::from_file(&p, RepeatPolicy::None).unwrap();
        assert_eq!(zf.prefix(4).unwrap(), Word::zimin(&[1, 2, 1, 3]));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn spec_strings() {
        let s: WordSource = "zimin:3@4".parse().unwrap();
        assert_eq!(s.offset(), 4);
        assert_eq!(s.to_string(), "zimin:3@4");
        let p: WordSource = "periodic::01".parse().unwrap();
        assert_eq!(p.prefix(4).unwrap().to_string(), "0101");
        let q: WordSource = "periodic:x1:x2x1".parse().unwrap();
        assert_eq!(q.prefix(3).unwrap(), Word::zimin(&[1, 2, 1]));
        assert_eq!(q.to_string(), "periodic:x1:x2x1");
        assert!("nope".parse::<WordSource>().is_err());
    }
}
